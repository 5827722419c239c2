#include "flowweb/residual.hpp"

#include <algorithm>

namespace flowweb {

namespace {

Flow restrict_by_key(const Network& from_net, const Flow& from, const Network& to_net) {
  std::map<std::string, Rational> by_key;
  for (EdgeId e = 0; e < from_net.edge_count(); ++e) {
    const std::string& k = from_net.edge(e).key;
    by_key[k.empty() ? from_net.edge_label(e) : k] = from[e];
  }
  Flow out = Flow::zeros(to_net);
  for (EdgeId e = 0; e < to_net.edge_count(); ++e) {
    const std::string& k = to_net.edge(e).key;
    auto it = by_key.find(k.empty() ? to_net.edge_label(e) : k);
    if (it != by_key.end()) out[e] = it->second;
  }
  return out;
}

}  // namespace

ResidualNetwork residual(const Network& net, const Flow& f) {
  require_flow_shape(net, f);
  FlowReport rep = validate_flow(net, f);
  if (!rep.ok()) throw validation_error("residual network requires a valid flow");

  std::set<std::pair<VertexId, VertexId>> pairs;
  for (const Edge& e : net.edges()) pairs.insert({e.from, e.to});
  for (const Edge& e : net.edges()) {
    if (pairs.count({e.to, e.from}))
      throw domain_error("antiparallel edge pair (" + e.from + "," + e.to +
                         "): subdivide one direction before taking residuals");
  }

  ResidualNetwork res;
  res.base = net;
  res.base_flow = f;
  std::vector<Edge> edges;
  res.forward_id.resize(net.edge_count());
  res.reverse_id.resize(net.edge_count());
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& ed = net.edge(e);
    std::string key = ed.key.empty() ? net.edge_label(e) : ed.key;
    res.forward_id[e] = edges.size();
    edges.push_back({ed.from, ed.to, ed.cap - f[e], key});
  }
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& ed = net.edge(e);
    if (ed.from == net.source() || ed.to == net.sink()) continue;
    std::string key = ed.key.empty() ? net.edge_label(e) : ed.key;
    res.reverse_id[e] = edges.size();
    edges.push_back({ed.to, ed.from, f[e], "rev:" + key});
  }
  res.graph = Network(net.vertices(), std::move(edges), net.source(), net.sink());
  return res;
}

Flow oplus(const ResidualNetwork& res, const Flow& g) {
  require_flow_shape(res.graph, g);
  FlowReport grep = validate_flow(res.graph, g);
  if (!grep.ok()) {
    std::string what = "oplus: g is not a flow on the residual network";
    if (!grep.capacity_violations.empty())
      what += " (capacity violated on " +
              res.graph.edge_label(grep.capacity_violations.front().edge) + ")";
    else if (!grep.kirchhoff_violations.empty())
      what += " (Kirchhoff fails at " + grep.kirchhoff_violations.front().vertex + ")";
    throw validation_error(what);
  }
  const Network& net = res.base;
  Flow h = Flow::zeros(net);
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    Rational v = res.base_flow[e] + g[res.forward_id[e]];
    if (res.reverse_id[e]) v -= g[*res.reverse_id[e]];
    h[e] = v;
  }
  FlowReport hrep = validate_flow(net, h);
  if (!hrep.ok()) throw validation_error("oplus produced an invalid flow (internal)");
  Rational want = flow_value(net, res.base_flow) + flow_value(res.graph, g);
  if (flow_value(net, h) != want)
    throw validation_error("oplus value law |f (+) g| = |f| + |g| violated (internal)");
  return h;
}

Flow cleanup(const Network& net, const Flow& g) {
  require_flow_shape(net, g);
  FlowReport rep = validate_flow(net, g);
  if (!rep.ok()) throw validation_error("cleanup requires a valid flow");
  Flow h = g;
  while (auto cycle = find_support_cycle(net, h)) {
    Rational m = h[cycle->front()];
    for (EdgeId e : *cycle) m = std::min(m, h[e]);
    for (EdgeId e : *cycle) h[e] -= m;
  }
  return h;
}

Network round_capacities(const Network& net, int digits) {
  Rational scale = pow_int(10, digits);
  std::vector<Edge> edges = net.edges();
  for (Edge& e : edges) e.cap = Rational(rat_floor(e.cap * scale)) / scale;
  Network out(net.vertices(), std::move(edges), net.source(), net.sink());
  for (const VertexId& c : net.contracted()) out.mark_contracted(c);
  return out;
}

AttainResult attain_sup(const LazyFamily& fam, int i_max) {
  if (i_max < 1) throw domain_error("attain_sup needs i_max >= 1");
  int core_len = static_cast<int>(fam.core_path.size()) - 1;
  if (core_len < 1) core_len = 1;

  Network contract = truncate(fam, core_len + i_max, TruncateMode::kContract);
  Rational alpha = flow_value(contract, max_flow(contract));

  AttainResult result;
  result.alpha = alpha;
  int radius = core_len;
  int radius_cap = core_len + 2 * i_max + 32;
  Network trunc_net = truncate(fam, radius, TruncateMode::kDelete);
  Flow f = Flow::zeros(trunc_net);

  for (int i = 1; i <= i_max; ++i) {
    Rational target = (Rational(1) - pow2(-i)) * alpha;
    // Grow the window until the step target is feasible in delete mode.
    while (flow_value(trunc_net, max_flow(trunc_net)) < target) {
      if (++radius > radius_cap)
        throw generation_error("attain_sup: delete-mode truncations cannot reach value " +
                               rat_str(target) + " within the radius cap");
      Network bigger = truncate(fam, radius, TruncateMode::kDelete);
      f = restrict_by_key(trunc_net, f, bigger);
      trunc_net = std::move(bigger);
    }

    // Super-source transformation: OUT(s') is a single edge of capacity
    // alpha, so a flow of value `target` yields the residual flow g_i.
    VertexId super = "__s'";
    std::vector<VertexId> verts = trunc_net.vertices();
    verts.push_back(super);
    std::vector<Edge> edges;
    edges.push_back({super, trunc_net.source(), alpha, "super"});
    for (const Edge& e : trunc_net.edges()) edges.push_back(e);
    Network aug(verts, edges, super, trunc_net.sink());

    Flow f_aug = Flow::zeros(aug);
    f_aug[0] = flow_value(trunc_net, f);
    for (EdgeId e = 0; e < trunc_net.edge_count(); ++e) f_aug[e + 1] = f[e];
    Flow h_aug = max_flow_limited(aug, f_aug, target);
    Flow h = Flow::zeros(trunc_net);
    for (EdgeId e = 0; e < trunc_net.edge_count(); ++e) h[e] = h_aug[e + 1];

    // g_i = h (-) f as a flow on RES(trunc, f); augmentation never shrinks
    // flow on OUT(s) or IN(t), so the difference is residual-representable.
    ResidualNetwork res = residual(trunc_net, f);
    Flow g = Flow::zeros(res.graph);
    for (EdgeId e = 0; e < trunc_net.edge_count(); ++e) {
      Rational d = h[e] - f[e];
      if (d >= 0) {
        g[res.forward_id[e]] = d;
      } else {
        if (!res.reverse_id[e])
          throw validation_error("attain_sup: step flow shrank a source/sink edge (internal)");
        g[*res.reverse_id[e]] = -d;
      }
    }
    Flow k = cleanup(res.graph, g);
    f = oplus(res, k);
    result.step_values.push_back(flow_value(trunc_net, f));
  }

  result.value = flow_value(trunc_net, f);
  if (result.value != (Rational(1) - pow2(-i_max)) * alpha)
    throw validation_error("attain_sup: value drifted from (1 - 2^-i) * alpha (internal)");
  result.flow = std::move(f);
  result.truncation = std::move(trunc_net);
  result.radius = radius;
  return result;
}

StabilizedCut stabilized_min_cut(const LazyFamily& fam, int i_max, RadiusSchedule schedule) {
  if (i_max < 1) throw domain_error("stabilized_min_cut needs i_max >= 1");
  int core_len = static_cast<int>(fam.core_path.size()) - 1;
  if (core_len < 1) core_len = 1;

  Network window_net = truncate(fam, schedule.at(1, core_len), TruncateMode::kDelete);
  std::set<VertexId> window(window_net.vertices().begin(), window_net.vertices().end());

  StabilizedCut out;
  std::vector<std::set<VertexId>> sides;
  for (int i = 1; i <= i_max; ++i) {
    Network net_i = truncate(fam, schedule.at(i, core_len), TruncateMode::kDelete);
    Network rounded = round_capacities(net_i, i);
    auto [flow_i, cut_i] = orthogonal_pair(rounded);
    sides.push_back(cut_i.side);
    std::vector<std::string> window_cut;
    for (EdgeId e : cut_i.forward) {
      const Edge& ed = rounded.edge(e);
      if (window.count(ed.from) && window.count(ed.to)) window_cut.push_back(ed.key);
    }
    std::sort(window_cut.begin(), window_cut.end());
    out.window_cuts_per_round.push_back(std::move(window_cut));
    if (i == i_max) out.final_truncation = std::move(net_i);
  }

  int suffix_start = i_max;
  while (suffix_start > 1 &&
         out.window_cuts_per_round[suffix_start - 2] == out.window_cuts_per_round[i_max - 1])
    --suffix_start;
  if (suffix_start == i_max && i_max > 1)
    out.stabilized_at = std::nullopt;  // only the last round agrees with itself
  else
    out.stabilized_at = suffix_start;

  // Read the cut off as the boundary, in the deepest truncation, of the
  // stabilized source side restricted to the window.
  std::set<VertexId> side;
  for (const VertexId& v : sides.back())
    if (window.count(v)) side.insert(v);
  CutWitness cut = cut_witness(out.final_truncation, side);
  out.side = std::move(side);
  out.cut_edges = cut.forward;
  for (EdgeId e : cut.forward) {
    const Edge& ed = out.final_truncation.edge(e);
    out.cut_keys.push_back(ed.key.empty() ? out.final_truncation.edge_label(e) : ed.key);
  }
  std::sort(out.cut_keys.begin(), out.cut_keys.end());
  out.capacity = cut_capacity(out.final_truncation, cut);
  return out;
}

}  // namespace flowweb
