#pragma once

#include "flowweb/lazy_family.hpp"
#include "flowweb/network.hpp"
#include "flowweb/solver.hpp"

namespace flowweb {

// RES(Delta, f): forward caps c - f, reverse edges (cap f) for every original
// edge outside OUT(s) u IN(t). The residual is itself a Network, so flows on
// it reuse the whole core machinery.
struct ResidualNetwork {
  Network base;
  Flow base_flow;
  Network graph;
  std::vector<EdgeId> forward_id;                 // base edge -> forward edge in graph
  std::vector<std::optional<EdgeId>> reverse_id;  // base edge -> reverse edge in graph
};

ResidualNetwork residual(const Network& net, const Flow& f);

// f + g - g(reversed): returns a flow h on the base network with
// |h| = |f| + |g| (asserted). g must be a valid flow on res.graph.
Flow oplus(const ResidualNetwork& res, const Flow& g);

// Flow h <= g with |h| = |g|, acyclic support and d-(x) <= |h| everywhere.
// At finite scale the paper's fair-scheduling iteration collapses to
// repeated cancellation of support cycles.
Flow cleanup(const Network& net, const Flow& g);

struct RadiusSchedule {
  int r0 = 0;    // 0 means "length of the core path"
  int step = 1;
  int at(int i, int core_len) const { return (r0 > 0 ? r0 : core_len) + step * i; }
};

struct AttainResult {
  Network truncation;  // final delete-mode truncation
  Flow flow;           // on `truncation`
  Rational value;      // (1 - 2^-i_max) * alpha, exactly
  Rational alpha;      // sup estimate from the contract-mode truncation
  int radius = 0;
  std::vector<Rational> step_values;
};

// Halving iteration toward the value supremum: f_i = f_{i-1} (+) k_i with
// k_i a cleaned residual flow of value (alpha - |f_{i-1}|)/2. The truncation
// radius grows adaptively until each step's target value is feasible.
AttainResult attain_sup(const LazyFamily& fam, int i_max);

struct StabilizedCut {
  std::vector<std::string> cut_keys;  // stable edge keys of the reported cut
  std::vector<EdgeId> cut_edges;      // ids in final_truncation
  Rational capacity;                  // exact capacity (original c, not rounded)
  std::optional<int> stabilized_at;   // first round of the agreeing suffix
  std::set<VertexId> side;            // stabilized source side inside the window
  Network final_truncation;
  std::vector<std::vector<std::string>> window_cuts_per_round;
};

// Capacity-rounding cut stabilization: round capacities to i decimal digits,
// solve an orthogonal pair per round on a growing truncation, and report the
// longest suffix of rounds whose cuts agree inside the first window.
StabilizedCut stabilized_min_cut(const LazyFamily& fam, int i_max,
                                 RadiusSchedule schedule = {});

// floor(10^i * c) / 10^i applied to every capacity.
Network round_capacities(const Network& net, int digits);

}  // namespace flowweb
