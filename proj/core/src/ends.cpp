#include "flowweb/ends.hpp"

#include <algorithm>
#include <deque>

#include "flowweb/solver.hpp"

namespace flowweb {

namespace {

std::string edge_key(const Network& net, EdgeId e) {
  return net.edge(e).key.empty() ? net.edge_label(e) : net.edge(e).key;
}

// Undirected distances from the core path, inside a generated window.
std::map<VertexId, int> window_distances(const Network& net, const std::vector<VertexId>& core) {
  std::map<VertexId, int> dist;
  std::deque<VertexId> queue;
  for (const VertexId& v : core) {
    if (net.has_vertex(v) && dist.emplace(v, 0).second) queue.push_back(v);
  }
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    int d = dist.at(v);
    auto visit = [&](const VertexId& o) {
      if (dist.emplace(o, d + 1).second) queue.push_back(o);
    };
    for (EdgeId e : net.out_edges(v)) visit(net.edge(e).to);
    for (EdgeId e : net.in_edges(v)) visit(net.edge(e).from);
  }
  return dist;
}

struct BoundarySums {
  Rational forward_flow, backward_flow, forward_cap, backward_cap;
  std::vector<std::string> forward_keys, backward_keys;
};

BoundarySums boundary_sums(const Network& net, const FlowRule& rule,
                           const std::function<bool(const VertexId&)>& side) {
  BoundarySums s;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& ed = net.edge(e);
    bool fi = side(ed.from), ti = side(ed.to);
    if (fi && !ti) {
      s.forward_flow += rule(ed);
      s.forward_cap += ed.cap;
      s.forward_keys.push_back(edge_key(net, e));
    } else if (!fi && ti) {
      s.backward_flow += rule(ed);
      s.backward_cap += ed.cap;
      s.backward_keys.push_back(edge_key(net, e));
    }
  }
  return s;
}

Rational rule_value_at_source(const Network& net, const FlowRule& rule) {
  Rational v;
  for (EdgeId e : net.out_edges(net.source())) v += rule(net.edge(e));
  return v;
}

int leveled_check_radius(const LazyFamily& fam, int window_step) {
  // ball(r) sits inside the level-k window when r + 1 <= k.
  return fam.has_levels() ? std::max(0, window_step - 2) : std::max(0, window_step - 1);
}

Network window_truncation(const LazyFamily& fam, int step, TruncateMode mode) {
  return fam.has_levels() ? truncate_by_level(fam, std::max(1, step), mode)
                          : truncate(fam, step, mode);
}

}  // namespace

FlowRule rule_from_edge_values(std::map<std::string, Rational> values) {
  auto shared = std::make_shared<std::map<std::string, Rational>>(std::move(values));
  return [shared](const Edge& e) -> Rational {
    auto it = shared->find(e.key);
    if (it == shared->end())
      throw validation_error("flow values do not cover generated edge " + e.key +
                             " (inconsistent across truncations)");
    return it->second;
  };
}

Network contraction(const LazyFamily& fam, int i) {
  Network net = truncate(fam, i, TruncateMode::kContract);
  if (max_degree(net) == 0 && net.edge_count() > 0)
    throw generation_error("contraction produced inconsistent degrees");
  return net;
}

EndFlowReport check_fcr(const LazyFamily& fam, const FlowRule& rule, int r_max,
                        const std::vector<NamedCut>& extra_cuts) {
  if (r_max < 0) throw domain_error("check_fcr needs r_max >= 0");
  EndFlowReport rep;
  rep.window_radius = r_max + 1;
  Network w = truncate(fam, r_max + 1, TruncateMode::kDelete);
  rep.degree_bound = max_degree(w);
  rep.flow_value = rule_value_at_source(w, rule);
  std::map<VertexId, int> dist = window_distances(w, fam.core_path);

  for (int r = 0; r <= r_max; ++r) {
    auto side = [&](const VertexId& v) {
      auto it = dist.find(v);
      return it != dist.end() && it->second <= r;
    };
    BoundarySums s = boundary_sums(w, rule, side);
    CutCheck check;
    check.label = "ball r=" + std::to_string(r);
    check.forward_keys = s.forward_keys;
    check.backward_keys = s.backward_keys;
    // The ball contains both s and t, so the balanced form applies.
    check.imbalance = s.forward_flow - s.backward_flow;
    check.status = (check.imbalance == 0) ? CutStatus::kBalanced : CutStatus::kViolated;
    if (check.status == CutStatus::kViolated) {
      check.detail = "f[E(S,T)] = " + rat_str(s.forward_flow) +
                     " but f[E(T,S)] = " + rat_str(s.backward_flow);
      rep.verdict = EndVerdict::kFcrViolated;
    }
    rep.cut_checks.push_back(std::move(check));
    rep.values_by_radius.push_back({r, rep.flow_value});
  }

  std::vector<NamedCut> cuts = fam.named_cuts;
  cuts.insert(cuts.end(), extra_cuts.begin(), extra_cuts.end());
  for (const NamedCut& cut : cuts) {
    CutCheck check;
    check.label = cut.name;
    if (!cut.finite_boundary) {
      check.status = CutStatus::kSkippedInfinite;
      check.detail = "not a finite cut; outside the fcr condition";
      rep.cut_checks.push_back(std::move(check));
      continue;
    }
    BoundarySums s = boundary_sums(w, rule, cut.side);
    check.forward_keys = s.forward_keys;
    check.backward_keys = s.backward_keys;
    bool t_inside = cut.side(fam.sink);
    Rational want_forward = t_inside ? s.backward_flow : s.backward_flow + rep.flow_value;
    check.imbalance = s.forward_flow - want_forward;
    check.status = (check.imbalance == 0) ? CutStatus::kBalanced : CutStatus::kViolated;
    if (check.status == CutStatus::kViolated) {
      check.detail = "f[E(S,T)] = " + rat_str(s.forward_flow) + " but " +
                     (t_inside ? "f[E(T,S)] = " + rat_str(s.backward_flow)
                               : "f[E(T,S)] + |f| = " + rat_str(want_forward));
      rep.verdict = EndVerdict::kFcrViolated;
    }
    rep.cut_checks.push_back(std::move(check));
  }
  return rep;
}

EndFlowReport check_scr(const LazyFamily& fam, const FlowRule& rule, int r_max,
                        const std::vector<NamedCut>& cuts) {
  EndFlowReport rep = check_fcr(fam, rule, r_max, cuts);
  if (rep.verdict == EndVerdict::kFcrViolated) return rep;

  Network w = truncate(fam, r_max + 1, TruncateMode::kDelete);
  std::vector<NamedCut> all = fam.named_cuts;
  all.insert(all.end(), cuts.begin(), cuts.end());
  for (const NamedCut& cut : all) {
    if (!cut.side(fam.source) || cut.side(fam.sink)) continue;  // scr wants s-t cuts
    BoundarySums s = boundary_sums(w, rule, cut.side);
    Rational fwd_cap = cut.forward_capacity ? *cut.forward_capacity : s.forward_cap;
    std::string cap_note = cut.forward_capacity ? "" : " (capacity summed over the window)";

    CutCheck first;
    first.label = cut.name + " [|f| + f[E(T,S)] <= c[E(S,T)]]";
    first.forward_keys = s.forward_keys;
    first.backward_keys = s.backward_keys;
    Rational lhs = rep.flow_value + s.backward_flow;
    if (lhs <= fwd_cap) {
      first.status = CutStatus::kSatisfied;
      first.imbalance = 0;
    } else {
      first.status = CutStatus::kViolated;
      first.imbalance = lhs - fwd_cap;
      first.detail = rat_str(lhs) + " <= " + rat_str(fwd_cap) + " fails" + cap_note;
      rep.verdict = EndVerdict::kScrViolated;
    }
    rep.cut_checks.push_back(std::move(first));

    CutCheck second;
    second.label = cut.name + " [f[E(S,T)] <= c[E(T,S)] + |f|]";
    Rational rhs = s.backward_cap + rep.flow_value;
    if (s.forward_flow <= rhs) {
      second.status = CutStatus::kSatisfied;
      second.imbalance = 0;
    } else {
      second.status = CutStatus::kViolated;
      second.imbalance = s.forward_flow - rhs;
      second.detail = rat_str(s.forward_flow) + " <= " + rat_str(rhs) +
                      " fails (backward capacity summed over the window)";
      rep.verdict = EndVerdict::kScrViolated;
    }
    rep.cut_checks.push_back(std::move(second));
  }
  return rep;
}

ApproxTwReport approx_tw(const LazyFamily& fam, int i_max) {
  if (i_max < 1) throw domain_error("approx_tw needs i_max >= 1");
  ApproxTwReport rep;
  std::vector<std::map<std::string, Rational>> flows_by_key;
  for (int i = 1; i <= i_max; ++i) {
    Network d_i = fam.has_levels() ? truncate_by_level(fam, i, TruncateMode::kContract)
                                   : contraction(fam, i);
    Flow f_i = max_flow(d_i);
    Rational sigma_i = flow_value(d_i, f_i);
    CutWitness cut = min_cut(d_i, f_i);
    if (cut_capacity(d_i, cut) != sigma_i)
      throw validation_error("approx_tw: |f_i| != sigma_i (internal duality failure)");
    rep.sigma.push_back(sigma_i);
    rep.steps.push_back(i);
    std::map<std::string, Rational> by_key;
    for (EdgeId e = 0; e < d_i.edge_count(); ++e) by_key[edge_key(d_i, e)] = f_i[e];
    flows_by_key.push_back(std::move(by_key));
  }

  int i0 = std::max(1, i_max - i_max / 3);  // final third of the schedule
  rep.window = window_truncation(fam, i0, TruncateMode::kDelete);
  rep.candidate_complete = true;
  for (EdgeId e = 0; e < rep.window.edge_count(); ++e) {
    std::string key = edge_key(rep.window, e);
    Rational lo, hi;
    bool first = true, stable = true;
    for (int i = i0; i <= i_max; ++i) {
      const auto& by_key = flows_by_key[i - 1];
      auto it = by_key.find(key);
      Rational v = (it == by_key.end()) ? Rational(0) : it->second;
      if (first) {
        lo = hi = v;
        first = false;
      } else {
        if (v != lo) stable = false;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    if (stable)
      rep.stable_edges[key] = lo;
    else {
      rep.unstable_edges[key] = {lo, hi};
      rep.candidate_complete = false;
    }
  }

  if (rep.candidate_complete) {
    int r_check = leveled_check_radius(fam, i0);
    rep.candidate_fcr = check_fcr(fam, rule_from_edge_values(rep.stable_edges), r_check);
  }
  return rep;
}

std::vector<std::pair<int, Rational>> sigma_w_bound(const LazyFamily& fam, int k_max) {
  if (k_max < 1) throw domain_error("sigma_w_bound needs k_max >= 1");
  std::vector<std::pair<int, Rational>> bounds;
  for (int k = 1; k <= k_max; ++k) {
    Network d_k = window_truncation(fam, k, TruncateMode::kContract);
    auto [flow, cut] = orthogonal_pair(d_k);
    Rational cap = cut_capacity(d_k, cut);
    if (cap != flow_value(d_k, flow))
      throw validation_error("sigma_w_bound: duality failure (internal)");
    bounds.push_back({k, cap});
  }
  return bounds;
}

ApproxTsReport approx_ts_orthogonal(const LazyFamily& fam, int i_max) {
  if (i_max < 1) throw domain_error("approx_ts_orthogonal needs i_max >= 1");
  ApproxTsReport rep;
  int core_len = std::max<int>(1, static_cast<int>(fam.core_path.size()) - 1);
  std::vector<std::map<std::string, Rational>> flows_by_key;
  for (int i = 1; i <= i_max; ++i) {
    Network net = fam.has_levels() ? truncate_by_level(fam, i, TruncateMode::kDelete)
                                   : truncate(fam, core_len + i, TruncateMode::kDelete);
    Flow f = cleanup(net, max_flow(net));
    PathDecomposition dec = decompose_mundane(net, f);  // mundane witness
    (void)dec;
    rep.values.push_back(flow_value(net, f));
    std::map<std::string, Rational> by_key;
    for (EdgeId e = 0; e < net.edge_count(); ++e) by_key[edge_key(net, e)] = f[e];
    flows_by_key.push_back(std::move(by_key));
  }
  rep.final_value = rep.values.back();

  int i0 = std::max(1, i_max - i_max / 3);
  Network window = fam.has_levels() ? truncate_by_level(fam, i0, TruncateMode::kDelete)
                                    : truncate(fam, core_len + i0, TruncateMode::kDelete);
  for (EdgeId e = 0; e < window.edge_count(); ++e) {
    std::string key = edge_key(window, e);
    Rational lo, hi;
    bool first = true, stable = true;
    for (int i = i0; i <= i_max; ++i) {
      auto it = flows_by_key[i - 1].find(key);
      Rational v = (it == flows_by_key[i - 1].end()) ? Rational(0) : it->second;
      if (first) {
        lo = hi = v;
        first = false;
      } else {
        if (v != lo) stable = false;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    if (stable)
      rep.stable_edges[key] = lo;
    else
      rep.unstable_edges[key] = {lo, hi};
  }

  rep.cut = stabilized_min_cut(fam, i_max);
  rep.cut_saturated = true;
  rep.reverse_zero = true;
  std::map<std::string, Rational> caps;
  for (EdgeId e = 0; e < rep.cut.final_truncation.edge_count(); ++e)
    caps[edge_key(rep.cut.final_truncation, e)] = rep.cut.final_truncation.edge(e).cap;
  for (const std::string& key : rep.cut.cut_keys) {
    auto it = rep.stable_edges.find(key);
    if (it == rep.stable_edges.end()) {
      rep.unchecked_cut_keys.push_back(key);
      continue;
    }
    if (it->second != caps.at(key)) rep.cut_saturated = false;
  }
  // Reverse side: edges of the window crossing back into the stabilized side.
  for (EdgeId e = 0; e < window.edge_count(); ++e) {
    const Edge& ed = window.edge(e);
    bool fi = rep.cut.side.count(ed.from) != 0, ti = rep.cut.side.count(ed.to) != 0;
    if (!fi && ti) {
      auto it = rep.stable_edges.find(edge_key(window, e));
      if (it != rep.stable_edges.end() && it->second != 0) rep.reverse_zero = false;
    }
  }
  return rep;
}

}  // namespace flowweb
