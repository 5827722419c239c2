#include "flowweb/solver.hpp"

#include <algorithm>
#include <deque>

namespace flowweb {

namespace {

// Residual arc: forward copy of edge e (residual c - f) or its reverse
// (residual f). Arc ids: 2e for forward, 2e+1 for reverse.
struct AugmentContext {
  const Network& net;
  Flow& f;

  explicit AugmentContext(const Network& net, Flow& f) : net(net), f(f) {}

  Rational residual(std::size_t arc) const {
    EdgeId e = arc / 2;
    return (arc % 2 == 0) ? net.edge(e).cap - f[e] : f[e];
  }
  VertexId head(std::size_t arc) const {
    EdgeId e = arc / 2;
    return (arc % 2 == 0) ? net.edge(e).to : net.edge(e).from;
  }

  // Shortest residual s-t path; among shortest paths the one reached by
  // scanning arcs in id order (deterministic). Returns arcs in path order.
  std::optional<std::vector<std::size_t>> find_path() const {
    std::map<VertexId, std::size_t> via;  // vertex -> arc that discovered it
    std::deque<VertexId> queue{net.source()};
    via[net.source()] = static_cast<std::size_t>(-1);
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      std::vector<std::size_t> arcs;
      for (EdgeId e : net.out_edges(v)) arcs.push_back(2 * e);
      for (EdgeId e : net.in_edges(v)) arcs.push_back(2 * e + 1);
      std::sort(arcs.begin(), arcs.end());
      for (std::size_t arc : arcs) {
        if (residual(arc) <= 0) continue;
        VertexId h = head(arc);
        if (via.count(h)) continue;
        via[h] = arc;
        if (h == net.sink()) {
          std::vector<std::size_t> path;
          for (VertexId x = net.sink(); x != net.source();) {
            std::size_t a = via.at(x);
            path.push_back(a);
            x = (a % 2 == 0) ? net.edge(a / 2).from : net.edge(a / 2).to;
          }
          std::reverse(path.begin(), path.end());
          return path;
        }
        queue.push_back(h);
      }
    }
    return std::nullopt;
  }

  void push(const std::vector<std::size_t>& path, const Rational& amount) {
    for (std::size_t arc : path) {
      EdgeId e = arc / 2;
      if (arc % 2 == 0)
        f[e] += amount;
      else
        f[e] -= amount;
    }
  }

  Rational bottleneck(const std::vector<std::size_t>& path) const {
    Rational b = residual(path.front());
    for (std::size_t arc : path) b = std::min(b, residual(arc));
    return b;
  }
};

}  // namespace

Flow max_flow(const Network& net) {
  Flow f = Flow::zeros(net);
  AugmentContext ctx(net, f);
  while (auto path = ctx.find_path()) {
    Rational b = ctx.bottleneck(*path);
    ctx.push(*path, b);
  }
  return f;
}

Flow max_flow_limited(const Network& net, const Flow& start, const Rational& target) {
  require_flow_shape(net, start);
  Flow f = start;
  Rational value = flow_value(net, f);
  if (target < value)
    throw domain_error("target value " + rat_str(target) + " below starting value " + rat_str(value));
  AugmentContext ctx(net, f);
  while (value < target) {
    auto path = ctx.find_path();
    if (!path)
      throw domain_error("network maximum " + rat_str(value) + " below target " + rat_str(target));
    Rational b = std::min(ctx.bottleneck(*path), target - value);
    ctx.push(*path, b);
    value += b;
  }
  return f;
}

CutWitness min_cut(const Network& net, const Flow& f) {
  require_flow_shape(net, f);
  FlowReport rep = validate_flow(net, f);
  if (!rep.ok()) throw validation_error("min_cut requires a valid flow");
  Flow copy = f;
  AugmentContext ctx(net, copy);
  if (ctx.find_path())
    throw validation_error("flow is not maximum: residual augmenting path exists");
  // Residual reachability from s.
  std::set<VertexId> side{net.source()};
  std::deque<VertexId> queue{net.source()};
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    std::vector<std::size_t> arcs;
    for (EdgeId e : net.out_edges(v)) arcs.push_back(2 * e);
    for (EdgeId e : net.in_edges(v)) arcs.push_back(2 * e + 1);
    for (std::size_t arc : arcs) {
      if (ctx.residual(arc) <= 0) continue;
      VertexId h = ctx.head(arc);
      if (side.insert(h).second) queue.push_back(h);
    }
  }
  return cut_witness(net, side);
}

std::optional<std::vector<EdgeId>> find_support_cycle(const Network& net, const Flow& f) {
  require_flow_shape(net, f);
  std::map<VertexId, int> state;  // 0 unseen, 1 on stack, 2 done
  std::vector<EdgeId> stack_edges;
  std::vector<VertexId> stack_vertices;
  std::optional<std::vector<EdgeId>> found;

  std::function<bool(const VertexId&)> dfs = [&](const VertexId& v) -> bool {
    state[v] = 1;
    stack_vertices.push_back(v);
    for (EdgeId e : net.out_edges(v)) {
      if (f[e] <= 0) continue;
      const VertexId& w = net.edge(e).to;
      int s = state.count(w) ? state[w] : 0;
      if (s == 1) {
        auto it = std::find(stack_vertices.begin(), stack_vertices.end(), w);
        std::size_t offset = static_cast<std::size_t>(it - stack_vertices.begin());
        std::vector<EdgeId> cycle(stack_edges.begin() + offset, stack_edges.end());
        cycle.push_back(e);
        found = cycle;
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

  for (const VertexId& v : net.vertices()) {
    if ((state.count(v) ? state[v] : 0) == 0 && dfs(v)) return found;
  }
  return std::nullopt;
}

PathDecomposition decompose_mundane(const Network& net, const Flow& f) {
  require_flow_shape(net, f);
  for (EdgeId e = 0; e < net.edge_count(); ++e)
    if (f[e] < 0) throw validation_error("negative flow value on " + net.edge_label(e));
  if (auto cycle = find_support_cycle(net, f)) {
    std::string names;
    for (EdgeId e : *cycle) names += net.edge_label(e);
    throw Error(Error::Kind::decomposition, "flow support contains a directed cycle: " + names);
  }

  PathDecomposition dec;
  Flow rest = f;
  while (true) {
    // Lexicographically first s-t path in the support: DFS preferring the
    // smallest edge id at every step. Support is acyclic, so this terminates.
    std::vector<EdgeId> path;
    VertexId v = net.source();
    bool reached = false;
    std::function<bool(const VertexId&)> walk = [&](const VertexId& u) -> bool {
      if (u == net.sink()) return true;
      for (EdgeId e : net.out_edges(u)) {
        if (rest[e] <= 0) continue;
        path.push_back(e);
        if (walk(net.edge(e).to)) return true;
        path.pop_back();
      }
      return false;
    };
    reached = walk(v);
    if (!reached) break;
    Rational theta = rest[path.front()];
    for (EdgeId e : path) theta = std::min(theta, rest[e]);
    for (EdgeId e : path) rest[e] -= theta;
    dec.terms.push_back({theta, path});
  }
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (rest[e] != 0)
      throw Error(Error::Kind::decomposition,
                  "residue left on " + net.edge_label(e) + " after path extraction: " +
                      rat_str(rest[e]) + " (flow conservation violated?)");
  }
  return dec;
}

Flow sum_decomposition(const Network& net, const PathDecomposition& d) {
  Flow f = Flow::zeros(net);
  for (const PathTerm& t : d.terms)
    for (EdgeId e : t.path) f[e] += t.theta;
  return f;
}

std::pair<Flow, CutWitness> orthogonal_pair(const Network& net) {
  Flow f = max_flow(net);
  CutWitness cut = min_cut(net, f);
  return {std::move(f), std::move(cut)};
}

}  // namespace flowweb
