#pragma once

#include "flowweb/lazy_family.hpp"
#include "flowweb/residual.hpp"

namespace flowweb {

// Closed-form edge rule for flows on lazily generated networks.
using FlowRule = std::function<Rational(const Edge&)>;

// Rule backed by explicit per-edge values; strict lookup so inconsistent or
// incomplete flow data surfaces as an error instead of a silent zero.
FlowRule rule_from_edge_values(std::map<std::string, Rational> values);

enum class CutStatus { kBalanced, kViolated, kSkippedInfinite, kSatisfied };
enum class EndVerdict { kFcrConsistent, kFcrViolated, kScrViolated };

struct CutCheck {
  std::string label;
  CutStatus status;
  Rational imbalance;  // balance gap (fcr) or inequality slack deficit (scr)
  std::string detail;
  std::vector<std::string> forward_keys;
  std::vector<std::string> backward_keys;
};

struct EndFlowReport {
  std::vector<std::pair<int, Rational>> values_by_radius;
  std::vector<CutCheck> cut_checks;
  EndVerdict verdict = EndVerdict::kFcrConsistent;
  std::size_t degree_bound = 0;  // largest vertex degree seen in the window
  int window_radius = 0;
  Rational flow_value;  // d+(s) under the rule
};

// Delta_i of the sigma_w = tau_w proof: contract-mode truncation at radius i,
// with the local-finiteness degree profile checked along the way.
Network contraction(const LazyFamily& fam, int i);

// Verifies the finite-cut Kirchhoff condition on every ball boundary up to
// r_max and on the supplied/named cuts.
EndFlowReport check_fcr(const LazyFamily& fam, const FlowRule& rule, int r_max,
                        const std::vector<NamedCut>& extra_cuts = {});

// Additionally verifies both cut-respecting inequalities on each supplied
// s-t cut; a forward side without a closed-form capacity is summed over the
// generated window.
EndFlowReport check_scr(const LazyFamily& fam, const FlowRule& rule, int r_max,
                        const std::vector<NamedCut>& cuts);

struct ApproxTwReport {
  std::vector<Rational> sigma;  // sigma_i = |f_i| per step
  std::vector<int> steps;
  std::map<std::string, Rational> stable_edges;  // final-third stabilized values
  std::map<std::string, std::pair<Rational, Rational>> unstable_edges;  // [min, max]
  bool candidate_complete = false;
  std::optional<EndFlowReport> candidate_fcr;
  Network window;  // delete-mode truncation the candidate lives on
};

// sigma_i = |f_i| on the contractions Delta_i, plus the edge-wise stabilized
// limit candidate over the final third of the schedule.
ApproxTwReport approx_tw(const LazyFamily& fam, int i_max);

// Exact min-cut capacities of the contract-mode truncations: an upper-bound
// sequence for sigma_w.
std::vector<std::pair<int, Rational>> sigma_w_bound(const LazyFamily& fam, int k_max);

struct ApproxTsReport {
  std::vector<Rational> values;  // mundane max-flow values per step
  Rational final_value;
  StabilizedCut cut;
  std::map<std::string, Rational> stable_edges;
  std::map<std::string, std::pair<Rational, Rational>> unstable_edges;
  bool cut_saturated = false;   // stable candidate saturates the cut (in window)
  bool reverse_zero = false;    // nothing flows back across the cut
  std::vector<std::string> unchecked_cut_keys;  // cut edges outside the window
};

// Mundane max flows on delete-mode truncations, the stabilized cut, and the
// edge-wise limit candidate with its orthogonality evidence.
ApproxTsReport approx_ts_orthogonal(const LazyFamily& fam, int i_max);

}  // namespace flowweb
