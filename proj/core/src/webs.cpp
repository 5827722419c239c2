#include "flowweb/webs.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "flowweb/solver.hpp"

namespace flowweb {

namespace {
constexpr std::size_t kOracleLimit = 15;  // exhaustive separator search bound
}

WeightedWeb::WeightedWeb(std::vector<VertexId> vertices, std::vector<WebEdge> edges,
                         std::set<VertexId> a_side, std::set<VertexId> b_side,
                         std::map<VertexId, Rational> weights)
    : vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      a_(std::move(a_side)),
      b_(std::move(b_side)),
      weights_(std::move(weights)) {
  std::set<VertexId> seen;
  for (const VertexId& v : vertices_) {
    if (!seen.insert(v).second) throw domain_error("duplicate web vertex: " + v);
    auto it = weights_.find(v);
    if (it == weights_.end()) throw domain_error("web vertex without weight: " + v);
    if (it->second < 0) throw domain_error("negative weight at " + v);
  }
  for (const VertexId& a : a_)
    if (!seen.count(a)) throw domain_error("A-vertex not in web: " + a);
  for (const VertexId& b : b_)
    if (!seen.count(b)) throw domain_error("B-vertex not in web: " + b);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const WebEdge& e = edges_[i];
    if (!seen.count(e.from) || !seen.count(e.to))
      throw domain_error("web edge endpoint unknown: " + e.from + "->" + e.to);
    if (e.from == e.to) throw domain_error("web loop at " + e.from);
    out_[e.from].push_back(i);
    in_[e.to].push_back(i);
  }
}

const Rational& WeightedWeb::weight(const VertexId& v) const {
  auto it = weights_.find(v);
  if (it == weights_.end()) throw domain_error("unknown web vertex: " + v);
  return it->second;
}

const std::vector<EdgeId>& WeightedWeb::out_edges(const VertexId& v) const {
  static const std::vector<EdgeId> kEmpty;
  if (!has_vertex(v)) throw domain_error("unknown web vertex: " + v);
  auto it = out_.find(v);
  return it == out_.end() ? kEmpty : it->second;
}

const std::vector<EdgeId>& WeightedWeb::in_edges(const VertexId& v) const {
  static const std::vector<EdgeId> kEmpty;
  if (!has_vertex(v)) throw domain_error("unknown web vertex: " + v);
  auto it = in_.find(v);
  return it == in_.end() ? kEmpty : it->second;
}

bool WeightedWeb::bipartite() const {
  for (const VertexId& v : vertices_)
    if (!in_a(v) && !in_b(v)) return false;
  for (const WebEdge& e : edges_)
    if (!in_a(e.from) || !in_b(e.to)) return false;
  return true;
}

std::string WeightedWeb::edge_label(EdgeId e) const {
  return "(" + edges_.at(e).from + "->" + edges_.at(e).to + ")";
}

Rational web_outdeg(const WeightedWeb& web, const Current& f, const VertexId& v) {
  Rational d;
  for (EdgeId e : web.out_edges(v)) d += f[e];
  return d;
}

Rational web_indeg(const WeightedWeb& web, const Current& f, const VertexId& v) {
  Rational d;
  for (EdgeId e : web.in_edges(v)) d += f[e];
  return d;
}

std::optional<std::string> current_violation(const WeightedWeb& web, const Current& f) {
  if (f.size() != web.edge_count()) return "current defined on wrong edge set";
  for (EdgeId e = 0; e < web.edge_count(); ++e)
    if (f[e] < 0) return "negative value on " + web.edge_label(e);
  for (const VertexId& v : web.vertices()) {
    Rational dp = web_outdeg(web, f, v), dm = web_indeg(web, f, v);
    if (dp > web.weight(v)) return "d+(" + v + ") exceeds w";
    if (dm > web.weight(v)) return "d-(" + v + ") exceeds w";
    if (!web.in_a(v) && dp > dm) return "d+(" + v + ") > d-(" + v + ") off A";
    if (web.in_a(v) && dm != 0) return "inflow into A-vertex " + v;
    if (web.in_b(v) && dp != 0) return "outflow from B-vertex " + v;
  }
  return std::nullopt;
}

void require_current(const WeightedWeb& web, const Current& f) {
  if (auto why = current_violation(web, f))
    throw validation_error("not a current: " + *why);
}

std::set<VertexId> sat_set(const WeightedWeb& web, const Current& f) {
  std::set<VertexId> s;
  for (const VertexId& v : web.vertices())
    if (web.in_a(v) || web_indeg(web, f, v) == web.weight(v)) s.insert(v);
  return s;
}

std::set<VertexId> sink_set(const WeightedWeb& web, const Current& f) {
  std::set<VertexId> s;
  for (const VertexId& v : web.vertices())
    if (web_outdeg(web, f, v) == 0) s.insert(v);
  return s;
}

std::set<VertexId> ter_set(const WeightedWeb& web, const Current& f) {
  std::set<VertexId> sat = sat_set(web, f), sink = sink_set(web, f), ter;
  std::set_intersection(sat.begin(), sat.end(), sink.begin(), sink.end(),
                        std::inserter(ter, ter.begin()));
  return ter;
}

bool is_web_flow(const WeightedWeb& web, const Current& f) {
  if (current_violation(web, f)) return false;
  for (const VertexId& v : web.vertices()) {
    if (web.in_a(v) || web.in_b(v)) continue;
    if (web_outdeg(web, f, v) != web_indeg(web, f, v)) return false;
  }
  return true;
}

namespace {

// Vertices with an S-free directed path to B (zero-length paths count).
std::set<VertexId> can_reach_b_avoiding(const WeightedWeb& web, const std::set<VertexId>& s) {
  std::set<VertexId> reach;
  std::deque<VertexId> queue;
  for (const VertexId& b : web.b_side()) {
    if (!s.count(b) && reach.insert(b).second) queue.push_back(b);
  }
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (EdgeId e : web.in_edges(v)) {
      const VertexId& u = web.edge(e).from;
      if (s.count(u)) continue;
      if (reach.insert(u).second) queue.push_back(u);
    }
  }
  return reach;
}

std::vector<VertexId> witness_ab_path(const WeightedWeb& web, const std::set<VertexId>& s) {
  // Lexicographically least start in A \ S with an S-free path to B.
  std::set<VertexId> reach = can_reach_b_avoiding(web, s);
  for (const VertexId& a : web.a_side()) {
    if (s.count(a) || !reach.count(a)) continue;
    std::vector<VertexId> path{a};
    VertexId v = a;
    while (!web.in_b(v)) {
      for (EdgeId e : web.out_edges(v)) {
        const VertexId& w = web.edge(e).to;
        if (!s.count(w) && reach.count(w)) {
          path.push_back(w);
          v = w;
          break;
        }
      }
    }
    return path;
  }
  return {};
}

}  // namespace

SeparatorReport separator_report(const WeightedWeb& web, const std::set<VertexId>& s) {
  SeparatorReport rep;
  std::set<VertexId> reach = can_reach_b_avoiding(web, s);
  bool separated = true;
  for (const VertexId& a : web.a_side())
    if (!s.count(a) && reach.count(a)) separated = false;
  rep.separating = separated;
  if (!separated) rep.witness_path = witness_ab_path(web, s);

  // RF(S): every path to B meets S; complement of the S-free coreach of B.
  for (const VertexId& v : web.vertices())
    if (!reach.count(v)) rep.rf.insert(v);

  // Essential: x in S not separated from B by S \ {x}.
  for (const VertexId& x : s) {
    std::set<VertexId> without = s;
    without.erase(x);
    if (can_reach_b_avoiding(web, without).count(x)) rep.essential_subset.insert(x);
  }
  for (const VertexId& v : rep.rf)
    if (!rep.essential_subset.count(v)) rep.rf_strict.insert(v);
  return rep;
}

WaveCheck validate_wave(const WeightedWeb& web, const Current& f) {
  require_current(web, f);
  WaveCheck check;
  std::set<VertexId> ter = ter_set(web, f);
  check.ter_report = separator_report(web, ter);
  if (!check.ter_report.separating) {
    check.reason = "TER(f) is not A-B-separating";
    return check;
  }
  for (const VertexId& v : web.vertices()) {
    if (!check.ter_report.rf.count(v) && web_outdeg(web, f, v) != 0) {
      check.reason = "positive outflow at " + v + " outside RF(f)";
      return check;
    }
  }
  check.wave = true;
  return check;
}

void require_wave(const WeightedWeb& web, const Current& f) {
  WaveCheck c = validate_wave(web, f);
  if (!c.wave) throw validation_error("not a wave: " + c.reason);
}

Quotient quotient(const WeightedWeb& web, const Current& wave) {
  WaveCheck check = validate_wave(web, wave);
  if (!check.wave) throw validation_error("quotient requires a wave: " + check.reason);
  const std::set<VertexId>& rf_strict = check.ter_report.rf_strict;

  std::vector<VertexId> verts;
  std::map<VertexId, Rational> weights;
  for (const VertexId& v : web.vertices()) {
    if (rf_strict.count(v)) continue;
    verts.push_back(v);
    weights[v] = web.weight(v);
  }
  std::set<VertexId> kept(verts.begin(), verts.end());
  std::set<VertexId> a_new = check.ter_report.essential_subset;
  std::set<VertexId> b_new;
  for (const VertexId& b : web.b_side())
    if (kept.count(b)) b_new.insert(b);

  std::vector<WebEdge> edges;
  Quotient q;
  for (EdgeId e = 0; e < web.edge_count(); ++e) {
    const WebEdge& ed = web.edge(e);
    if (kept.count(ed.from) && kept.count(ed.to)) {
      q.parent_edge.push_back(e);
      edges.push_back(ed);
    }
  }
  q.web = WeightedWeb(std::move(verts), std::move(edges), std::move(a_new), std::move(b_new),
                      std::move(weights));
  return q;
}

Current compose(const WeightedWeb& web, const Current& wave, const Current& g) {
  if (g.size() != web.edge_count())
    throw validation_error("compose: g must be given on the web's edge set");
  Quotient q = quotient(web, wave);
  Current result = wave;
  for (std::size_t qe = 0; qe < q.parent_edge.size(); ++qe)
    result[q.parent_edge[qe]] += g[q.parent_edge[qe]];
  require_current(web, result);
  return result;
}

namespace {

struct SaturationProblem {
  Network net;
  std::vector<std::optional<EdgeId>> web_edge_to_net;  // web edge -> net edge
  Rational demands;                                    // sum of w over T \ A
  std::vector<EdgeId> demand_edges;
  std::map<VertexId, EdgeId> source_edge;  // a -> src edge id
};

// Flow network whose feasible flows are currents with support inside RF(T),
// no outflow from T, and d-(t) routed into per-vertex demand edges.
SaturationProblem saturation_problem(const WeightedWeb& web, const std::set<VertexId>& t_set,
                                     const std::set<VertexId>& rf, bool with_dump) {
  SaturationProblem p;
  std::vector<VertexId> verts{"__src", "__snk"};
  std::vector<Edge> edges;
  auto in_name = [](const VertexId& v) { return "i:" + v; };
  auto out_name = [](const VertexId& v) { return "o:" + v; };

  for (const VertexId& v : web.vertices()) {
    if (!rf.count(v)) continue;
    if (web.in_a(v) && !t_set.count(v)) {
      verts.push_back(out_name(v));
    } else if (t_set.count(v) && !web.in_a(v)) {
      verts.push_back(in_name(v));
    } else if (!t_set.count(v)) {
      verts.push_back(in_name(v));
      verts.push_back(out_name(v));
    }
    // A-vertices inside T contribute nothing: no inflow, outflow forced 0.
  }
  std::set<VertexId> present(verts.begin(), verts.end());

  for (const VertexId& v : web.vertices()) {
    if (!rf.count(v)) continue;
    if (web.in_a(v) && !t_set.count(v)) {
      p.source_edge[v] = edges.size();
      edges.push_back({"__src", out_name(v), web.weight(v), ""});
    } else if (t_set.count(v) && !web.in_a(v)) {
      p.demands += web.weight(v);
      p.demand_edges.push_back(edges.size());
      edges.push_back({in_name(v), "__snk", web.weight(v), ""});
    } else if (!t_set.count(v)) {
      edges.push_back({in_name(v), out_name(v), web.weight(v), ""});
      if (with_dump && web.weight(v) > 0)
        edges.push_back({out_name(v), "__snk", web.weight(v), "dump:" + v});
    }
  }
  p.web_edge_to_net.resize(web.edge_count());
  for (EdgeId e = 0; e < web.edge_count(); ++e) {
    const WebEdge& ed = web.edge(e);
    if (!rf.count(ed.from) || !rf.count(ed.to)) continue;
    if (t_set.count(ed.from) || web.in_b(ed.from)) continue;  // no outflow from T or B
    if (web.in_a(ed.to)) continue;                            // no inflow into A
    if (!present.count(out_name(ed.from)) || !present.count(in_name(ed.to))) continue;
    p.web_edge_to_net[e] = edges.size();
    edges.push_back({out_name(ed.from), in_name(ed.to),
                     std::min(web.weight(ed.from), web.weight(ed.to)), ""});
  }
  p.net = Network(std::move(verts), std::move(edges), "__src", "__snk");
  return p;
}

Current extract_current(const WeightedWeb& web, const SaturationProblem& p, const Flow& flow) {
  Current f = Current::zeros(web);
  for (EdgeId e = 0; e < web.edge_count(); ++e)
    if (p.web_edge_to_net[e]) f[e] = flow[*p.web_edge_to_net[e]];
  return f;
}

bool demands_saturated(const SaturationProblem& p, const Flow& flow) {
  for (EdgeId e : p.demand_edges)
    if (flow[e] != p.net.edge(e).cap) return false;
  return true;
}

// Wave saturating T \ A, or nullopt. When `without` is set, that A-vertex
// supplies nothing.
std::optional<Current> saturating_wave(const WeightedWeb& web, const std::set<VertexId>& t_set,
                                       const std::set<VertexId>& rf,
                                       const std::optional<VertexId>& without = std::nullopt) {
  SaturationProblem p = saturation_problem(web, t_set, rf, /*with_dump=*/false);
  if (without) {
    auto it = p.source_edge.find(*without);
    if (it != p.source_edge.end()) {
      // Zero out that source's capacity by rebuilding with cap 0.
      std::vector<Edge> edges = p.net.edges();
      edges[it->second].cap = 0;
      p.net = Network(p.net.vertices(), std::move(edges), "__src", "__snk");
    }
  }
  Flow flow = max_flow(p.net);
  if (!demands_saturated(p, flow)) return std::nullopt;
  return extract_current(web, p, flow);
}

void enumerate_essential_separators(const WeightedWeb& web,
                                    const std::function<bool(const std::set<VertexId>&,
                                                             const SeparatorReport&)>& visit) {
  if (web.vertex_count() > kOracleLimit)
    throw size_error("web has " + std::to_string(web.vertex_count()) +
                     " vertices; the exhaustive separator oracle is capped at " +
                     std::to_string(kOracleLimit));
  const std::vector<VertexId>& verts = web.vertices();
  std::uint32_t limit = 1u << verts.size();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    std::set<VertexId> t_set;
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (mask & (1u << i)) t_set.insert(verts[i]);
    SeparatorReport rep = separator_report(web, t_set);
    if (!rep.separating || rep.essential_subset != t_set) continue;
    if (visit(t_set, rep)) return;
  }
}

}  // namespace

std::optional<Current> find_nonzero_wave(const WeightedWeb& web) {
  std::optional<Current> found;
  enumerate_essential_separators(web, [&](const std::set<VertexId>& t_set,
                                          const SeparatorReport& rep) {
    Rational demands;
    for (const VertexId& t : t_set)
      if (!web.in_a(t)) demands += web.weight(t);
    if (demands > 0) {
      if (auto f = saturating_wave(web, t_set, rep.rf)) {
        if (!f->is_zero()) {
          require_wave(web, *f);
          found = std::move(*f);
          return true;
        }
      }
      return false;
    }
    // All demands are zero-weight: look for a positive current roofed by T.
    SaturationProblem p = saturation_problem(web, t_set, rep.rf, /*with_dump=*/true);
    Flow flow = max_flow(p.net);
    if (flow_value(p.net, flow) > 0 && demands_saturated(p, flow)) {
      Current f = extract_current(web, p, flow);
      if (!f.is_zero()) {
        require_wave(web, f);
        found = std::move(f);
        return true;
      }
    }
    return false;
  });
  return found;
}

Current max_wave(const WeightedWeb& web) {
  Current f = Current::zeros(web);
  std::size_t cap = 4 * web.vertex_count() + 16;
  for (std::size_t it = 0; it < cap; ++it) {
    Quotient q = quotient(web, f);
    std::optional<Current> g = find_nonzero_wave(q.web);
    if (!g) return f;
    Current lifted = Current::zeros(web);
    for (std::size_t qe = 0; qe < q.parent_edge.size(); ++qe)
      lifted[q.parent_edge[qe]] = (*g)[qe];
    f = compose(web, f, lifted);
    require_wave(web, f);
  }
  throw validation_error("max_wave failed to converge (internal)");
}

std::optional<Hindrance> find_hindrance(const WeightedWeb& web, const Rational& epsilon) {
  if (epsilon < 0) throw domain_error("negative epsilon");
  if (web.vertex_count() > kOracleLimit)
    throw size_error("web too large for the exhaustive hindrance search");

  // The zero wave first: a in A outside E(TER(0)) with w(a) > epsilon.
  {
    Current zero = Current::zeros(web);
    SeparatorReport rep = separator_report(web, ter_set(web, zero));
    for (const VertexId& a : web.a_side()) {
      if (rep.essential_subset.count(a)) continue;
      if (web.weight(a) > epsilon) return Hindrance{zero, a, web.weight(a)};
    }
  }

  std::optional<Hindrance> found;
  enumerate_essential_separators(web, [&](const std::set<VertexId>& t_set,
                                          const SeparatorReport& rep) {
    Rational demands;
    for (const VertexId& t : t_set)
      if (!web.in_a(t)) demands += web.weight(t);
    if (demands == 0) return false;  // zero-wave case already handled
    SaturationProblem p = saturation_problem(web, t_set, rep.rf, /*with_dump=*/false);
    Flow full = max_flow(p.net);
    if (!demands_saturated(p, full)) return false;
    for (const VertexId& a : web.a_side()) {
      if (t_set.count(a) || !rep.rf.count(a)) continue;
      auto it = p.source_edge.find(a);
      if (it == p.source_edge.end()) continue;
      // Route as much as possible around a, then top up through it.
      std::vector<Edge> edges = p.net.edges();
      Rational save_cap = edges[it->second].cap;
      edges[it->second].cap = 0;
      Network without(p.net.vertices(), edges, "__src", "__snk");
      Flow f0 = max_flow(without);
      Rational required = demands - flow_value(without, f0);
      Rational margin = web.weight(a) - required;
      if (margin <= epsilon) continue;
      Flow f0_full = f0;  // same edge ids; restore a's capacity and top up
      Flow topped = max_flow_limited(p.net, f0_full, demands);
      Current wave = extract_current(web, p, topped);
      require_wave(web, wave);
      std::set<VertexId> essential = separator_report(web, ter_set(web, wave)).essential_subset;
      if (essential.count(a)) continue;
      found = Hindrance{std::move(wave), a, margin};
      return true;
    }
    return false;
  });
  return found;
}

bool is_loose(const WeightedWeb& web) {
  Current zero = Current::zeros(web);
  SeparatorReport rep = separator_report(web, ter_set(web, zero));
  for (const VertexId& a : web.a_side())
    if (!rep.essential_subset.count(a) && web.weight(a) > 0) return false;  // zero wave hinders
  return !find_nonzero_wave(web).has_value();
}

std::optional<Current> linkage(const WeightedWeb& web) {
  if (!web.bipartite()) throw domain_error("linkage needs a bipartite web");
  std::vector<VertexId> verts{"__src", "__snk"};
  std::vector<Edge> edges;
  for (const VertexId& v : web.vertices()) {
    if (web.in_a(v)) verts.push_back("o:" + v);
    if (web.in_b(v)) verts.push_back("i:" + v);
  }
  Rational want;
  for (const VertexId& a : web.a_side()) {
    edges.push_back({"__src", "o:" + a, web.weight(a), ""});
    want += web.weight(a);
  }
  for (const VertexId& b : web.b_side()) edges.push_back({"i:" + b, "__snk", web.weight(b), ""});
  std::vector<std::optional<EdgeId>> web_to_net(web.edge_count());
  for (EdgeId e = 0; e < web.edge_count(); ++e) {
    const WebEdge& ed = web.edge(e);
    web_to_net[e] = edges.size();
    edges.push_back({"o:" + ed.from, "i:" + ed.to,
                     std::min(web.weight(ed.from), web.weight(ed.to)), ""});
  }
  Network net(std::move(verts), std::move(edges), "__src", "__snk");
  Flow flow = max_flow(net);
  if (flow_value(net, flow) != want) return std::nullopt;
  Current link = Current::zeros(web);
  for (EdgeId e = 0; e < web.edge_count(); ++e)
    if (web_to_net[e]) link[e] = flow[*web_to_net[e]];
  require_current(web, link);
  return link;
}

Current trim(const WeightedWeb& web, const Current& wave) {
  WaveCheck check = validate_wave(web, wave);
  if (!check.wave) throw validation_error("trim requires a wave: " + check.reason);

  std::set<VertexId> ter = ter_set(web, wave);
  SeparatorReport rep = separator_report(web, ter);
  const std::set<VertexId>& essential = rep.essential_subset;

  // Fixpoint: already a trimming of itself.
  {
    bool trimmed = true;
    for (const VertexId& v : rep.rf_strict) {
      if (web.in_a(v)) continue;
      if (web_outdeg(web, wave, v) != web_indeg(web, wave, v)) trimmed = false;
    }
    if (trimmed) {
      std::set<VertexId> lhs, rhs;
      for (const VertexId& v : ter)
        if (!web.in_a(v)) lhs.insert(v);
      for (const VertexId& v : essential)
        if (!web.in_a(v)) rhs.insert(v);
      if (lhs == rhs) return wave;
    }
  }

  // Cancel circulations. TER vertices emit nothing, so their saturation
  // survives; the terminal structure is untouched.
  Current h = wave;
  while (true) {
    std::optional<std::vector<EdgeId>> cycle;
    std::map<VertexId, int> state;
    std::vector<EdgeId> stack_edges;
    std::vector<VertexId> stack_vertices;
    std::function<bool(const VertexId&)> dfs = [&](const VertexId& v) -> bool {
      state[v] = 1;
      stack_vertices.push_back(v);
      for (EdgeId e : web.out_edges(v)) {
        if (h[e] <= 0) continue;
        const VertexId& w = web.edge(e).to;
        int s = state.count(w) ? state[w] : 0;
        if (s == 1) {
          auto it = std::find(stack_vertices.begin(), stack_vertices.end(), w);
          std::vector<EdgeId> cyc(stack_edges.begin() + (it - stack_vertices.begin()),
                                  stack_edges.end());
          cyc.push_back(e);
          cycle = cyc;
          return true;
        }
        if (s == 0) {
          stack_edges.push_back(e);
          if (dfs(w)) return true;
          stack_edges.pop_back();
        }
      }
      stack_vertices.pop_back();
      state[v] = 2;
      return false;
    };
    for (const VertexId& v : web.vertices())
      if ((state.count(v) ? state[v] : 0) == 0 && dfs(v)) break;
    if (!cycle) break;
    Rational m = h[cycle->front()];
    for (EdgeId e : *cycle) m = std::min(m, h[e]);
    for (EdgeId e : *cycle) h[e] -= m;
  }

  // Peel the acyclic current into path terms from A, then keep only terms
  // terminating at essential terminals. Excess anywhere else is exactly the
  // inflow the trimming lemma removes.
  std::map<VertexId, Rational> excess;
  for (const VertexId& v : web.vertices()) {
    if (web.in_a(v)) continue;
    excess[v] = web_indeg(web, h, v) - web_outdeg(web, h, v);
  }
  Current g = Current::zeros(web);
  for (const VertexId& a : web.a_side()) {
    while (web_outdeg(web, h, a) > 0) {
      std::vector<EdgeId> path;
      VertexId v = a;
      while (true) {
        if (!web.in_a(v) && excess[v] > 0) break;
        EdgeId next = web.edge_count();
        for (EdgeId e : web.out_edges(v))
          if (h[e] > 0) {
            next = e;
            break;
          }
        if (next == web.edge_count())
          throw validation_error("trim: stuck while peeling (internal)");
        path.push_back(next);
        v = web.edge(next).to;
      }
      Rational theta = excess[v];
      for (EdgeId e : path) theta = std::min(theta, h[e]);
      for (EdgeId e : path) h[e] -= theta;
      excess[v] -= theta;
      if (essential.count(v))
        for (EdgeId e : path) g[e] += theta;
    }
  }

  WaveCheck out = validate_wave(web, g);
  if (!out.wave) throw validation_error("trim produced a non-wave (internal): " + out.reason);
  for (EdgeId e = 0; e < web.edge_count(); ++e)
    if (g[e] > wave[e]) throw validation_error("trim exceeded the input wave (internal)");
  return g;
}

WeightedWeb network_to_web(const Network& net) {
  std::vector<VertexId> verts;
  std::map<VertexId, Rational> weights;
  std::set<VertexId> a_side, b_side;
  std::vector<VertexId> label(net.edge_count());
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    label[e] = net.edge(e).key.empty() ? net.edge_label(e) : net.edge(e).key;
    verts.push_back(label[e]);
    weights[label[e]] = net.edge(e).cap;
    if (net.edge(e).from == net.source()) a_side.insert(label[e]);
    if (net.edge(e).to == net.sink()) b_side.insert(label[e]);
  }
  std::vector<WebEdge> edges;
  for (const VertexId& y : net.vertices())
    for (EdgeId e : net.in_edges(y))
      for (EdgeId e2 : net.out_edges(y)) edges.push_back({label[e], label[e2]});
  return WeightedWeb(std::move(verts), std::move(edges), std::move(a_side), std::move(b_side),
                     std::move(weights));
}

Flow web_flow_to_flow(const Network& net, const Current& web_flow) {
  WeightedWeb web = network_to_web(net);
  require_current(web, web_flow);
  if (!is_web_flow(web, web_flow))
    throw validation_error("web_flow_to_flow: Kirchhoff fails off A u B (not a web-flow)");
  Flow g = Flow::zeros(net);
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    VertexId v = net.edge(e).key.empty() ? net.edge_label(e) : net.edge(e).key;
    g[e] = std::max(web_outdeg(web, web_flow, v), web_indeg(web, web_flow, v));
  }
  FlowReport rep = validate_flow(net, g);
  if (!rep.ok()) throw validation_error("web_flow_to_flow produced an invalid flow (internal)");
  return g;
}

WeightedWeb web_to_bipartite(const WeightedWeb& web) {
  std::vector<VertexId> verts;
  std::map<VertexId, Rational> weights;
  std::set<VertexId> a_side, b_side;
  for (const VertexId& v : web.vertices()) {
    bool has_a = !web.in_b(v), has_b = !web.in_a(v);
    if (has_a) {
      verts.push_back(v + "_A");
      weights[v + "_A"] = web.weight(v);
      a_side.insert(v + "_A");
    }
    if (has_b) {
      verts.push_back(v + "_B");
      weights[v + "_B"] = web.weight(v);
      b_side.insert(v + "_B");
    }
  }
  std::vector<WebEdge> edges;
  for (const WebEdge& e : web.edges()) {
    // Edges out of B or into A are unusable by any current; drop them.
    if (web.in_b(e.from) || web.in_a(e.to)) continue;
    edges.push_back({e.from + "_A", e.to + "_B"});
  }
  for (const VertexId& v : web.vertices())
    if (!web.in_a(v) && !web.in_b(v)) edges.push_back({v + "_A", v + "_B"});
  return WeightedWeb(std::move(verts), std::move(edges), std::move(a_side), std::move(b_side),
                     std::move(weights));
}

ProjectedWave project_wave(const WeightedWeb& web, const Current& bip_wave) {
  for (const VertexId& v : web.vertices())
    if (web.in_a(v) && web.in_b(v))
      throw domain_error("project_wave: vertices in both A and B are not supported");
  WeightedWeb bip = web_to_bipartite(web);
  require_wave(bip, bip_wave);

  // Match parent edges to their (u_A, v_B) images by construction order.
  std::map<std::pair<VertexId, VertexId>, EdgeId> bip_index;
  for (EdgeId e = 0; e < bip.edge_count(); ++e)
    bip_index[{bip.edge(e).from, bip.edge(e).to}] = e;

  ProjectedWave out;
  out.wave = Current::zeros(web);
  for (EdgeId e = 0; e < web.edge_count(); ++e) {
    const WebEdge& ed = web.edge(e);
    if (web.in_b(ed.from) || web.in_a(ed.to)) continue;
    auto it = bip_index.find({ed.from + "_A", ed.to + "_B"});
    if (it != bip_index.end()) out.wave[e] = bip_wave[it->second];
  }

  std::set<VertexId> s = ter_set(bip, bip_wave);
  std::set<VertexId> a_s, b_s;
  for (const VertexId& v : web.vertices()) {
    if (s.count(v + "_A")) a_s.insert(v);
    if (s.count(v + "_B")) b_s.insert(v);
  }
  for (const VertexId& v : web.vertices()) {
    bool in_as = a_s.count(v) != 0, in_bs = b_s.count(v) != 0;
    if ((in_as && in_bs) || (web.in_a(v) && in_as) || (web.in_b(v) && in_bs))
      out.s_prime.insert(v);
  }
  require_wave(web, out.wave);
  out.ter = ter_set(web, out.wave);
  if (out.ter != out.s_prime)
    throw validation_error("project_wave: TER(f') differs from S' (internal)");
  return out;
}

WeightedWeb web_minus_current(const WeightedWeb& web, const Current& f) {
  require_current(web, f);
  // d_f here is the undirected incident sum, matching the bipartite usage
  // (outflow at A-vertices, inflow at B-vertices).
  std::map<VertexId, Rational> w;
  for (const VertexId& v : web.vertices()) {
    Rational d = web_outdeg(web, f, v) + web_indeg(web, f, v);
    w[v] = web.weight(v) - d;
    if (w[v] < 0) throw domain_error("web_minus_current: negative weight at " + v);
  }
  return WeightedWeb(web.vertices(), web.edges(), web.a_side(), web.b_side(), std::move(w));
}

WeightedWeb web_minus_vertex_function(const WeightedWeb& web,
                                      const std::map<VertexId, Rational>& g) {
  std::map<VertexId, Rational> w;
  for (const VertexId& v : web.vertices()) {
    auto it = g.find(v);
    w[v] = web.weight(v) - (it == g.end() ? Rational(0) : it->second);
    if (w[v] < 0) throw domain_error("web minus vertex function: negative weight at " + v);
  }
  return WeightedWeb(web.vertices(), web.edges(), web.a_side(), web.b_side(), std::move(w));
}

}  // namespace flowweb
