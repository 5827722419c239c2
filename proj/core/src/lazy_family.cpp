#include "flowweb/lazy_family.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace flowweb {

namespace {

constexpr std::size_t kMaxExplored = 500000;

struct Exploration {
  std::map<VertexId, int> dist;
  std::vector<VertexId> order;                 // BFS discovery order
  std::map<std::string, Edge> edges_by_key;    // every edge seen between explored vertices
};

// BFS over the undirected adjacency up to the given bound. `admit` filters
// which vertices may be entered at all (used by level truncation).
Exploration explore(const LazyFamily& fam, int bound,
                    const std::function<bool(const VertexId&)>& admit) {
  if (!fam.incident) throw generation_error("family '" + fam.name + "' has no oracle");
  Exploration ex;
  std::deque<VertexId> queue;
  for (const VertexId& v : fam.core_path) {
    if (ex.dist.emplace(v, 0).second) {
      ex.order.push_back(v);
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    int d = ex.dist.at(v);
    std::vector<Edge> inc = fam.incident(v);
    for (const Edge& e : inc) {
      const VertexId& other = (e.from == v) ? e.to : e.from;
      if (e.from != v && e.to != v)
        throw generation_error("oracle returned edge not incident to " + v);
      if (d + 1 <= bound && (!admit || admit(other))) {
        auto [it, fresh] = ex.dist.emplace(other, d + 1);
        if (fresh) {
          ex.order.push_back(other);
          queue.push_back(other);
          if (ex.order.size() > kMaxExplored)
            throw generation_error("truncation exceeds exploration limit");
        }
      }
      if (ex.dist.count(e.from) && ex.dist.count(e.to)) {
        std::string key = e.key.empty() ? e.from + "->" + e.to : e.key;
        Edge copy = e;
        copy.key = key;
        ex.edges_by_key.emplace(key, copy);
      }
    }
  }
  return ex;
}

// Canonical edge order: by endpoints, then key (parallel edges).
std::vector<Edge> sorted_edges(const std::map<std::string, Edge>& by_key) {
  std::vector<Edge> edges;
  edges.reserve(by_key.size());
  for (const auto& [k, e] : by_key) edges.push_back(e);
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.from, a.to, a.key) < std::tie(b.from, b.to, b.key);
  });
  return edges;
}

Network assemble(const LazyFamily& fam, const Exploration& ex,
                 const std::function<bool(const VertexId&)>& inside, TruncateMode mode) {
  std::vector<VertexId> keep;
  for (const VertexId& v : ex.order)
    if (inside(v)) keep.push_back(v);
  std::sort(keep.begin(), keep.end());
  std::set<VertexId> kept(keep.begin(), keep.end());

  std::map<std::string, Edge> edges;
  for (const auto& [key, e] : ex.edges_by_key)
    if (kept.count(e.from) && kept.count(e.to)) edges.emplace(key, e);

  std::vector<VertexId> contracted_names;
  if (mode == TruncateMode::kContract) {
    // Components of the explored complement, via union-find over edges whose
    // endpoints are both outside the kept set.
    std::map<VertexId, VertexId> parent;
    std::function<VertexId(const VertexId&)> find = [&](const VertexId& v) -> VertexId {
      auto it = parent.find(v);
      if (it == parent.end() || it->second == v) return v;
      VertexId root = find(it->second);
      parent[v] = root;
      return root;
    };
    auto unite = [&](const VertexId& a, const VertexId& b) {
      VertexId ra = find(a), rb = find(b);
      if (ra == rb) return;
      if (rb < ra) std::swap(ra, rb);  // lexicographically least member becomes the root
      parent[rb] = ra;
    };
    for (const auto& [v, d] : ex.dist)
      if (!kept.count(v)) parent.emplace(v, v);
    for (const auto& [key, e] : ex.edges_by_key)
      if (!kept.count(e.from) && !kept.count(e.to)) unite(e.from, e.to);

    // Reattach boundary edges to one vertex per component.
    std::map<VertexId, VertexId> comp_name;  // root -> contracted vertex id
    for (const auto& [key, e] : ex.edges_by_key) {
      bool fi = kept.count(e.from) != 0, ti = kept.count(e.to) != 0;
      if (fi == ti) continue;
      const VertexId& outside = fi ? e.to : e.from;
      VertexId root = find(outside);
      auto it = comp_name.find(root);
      if (it == comp_name.end())
        it = comp_name.emplace(root, "C[" + root + "]").first;
      Edge copy = e;
      (fi ? copy.to : copy.from) = it->second;
      edges.emplace(key, copy);
    }
    for (const auto& [root, cname] : comp_name) contracted_names.push_back(cname);
    std::sort(contracted_names.begin(), contracted_names.end());
    keep.insert(keep.end(), contracted_names.begin(), contracted_names.end());
  }

  Network net(keep, sorted_edges(edges), fam.source, fam.sink);
  for (const VertexId& c : contracted_names) net.mark_contracted(c);
  return net;
}

}  // namespace

Network truncate(const LazyFamily& fam, int radius, TruncateMode mode) {
  if (radius < 0) throw generation_error("negative truncation radius");
  int bound = (mode == TruncateMode::kContract) ? radius + std::max(1, fam.merge_horizon) : radius;
  Exploration ex = explore(fam, bound, nullptr);
  auto inside = [&](const VertexId& v) { return ex.dist.at(v) <= radius; };
  return assemble(fam, ex, inside, mode);
}

Network truncate_by_level(const LazyFamily& fam, int k, TruncateMode mode) {
  if (!fam.has_levels())
    throw generation_error("family '" + fam.name + "' has no level structure");
  if (k < 1) throw generation_error("level truncation needs k >= 1");
  int horizon_levels = (mode == TruncateMode::kContract) ? 2 : 0;
  auto admit = [&](const VertexId& v) { return fam.level(v) <= k + horizon_levels; };
  Exploration ex = explore(fam, std::numeric_limits<int>::max() - 1, admit);
  auto inside = [&](const VertexId& v) { return fam.level(v) <= k; };
  return assemble(fam, ex, inside, mode);
}

std::size_t max_degree(const Network& net) {
  std::size_t best = 0;
  for (const VertexId& v : net.vertices())
    best = std::max(best, net.out_edges(v).size() + net.in_edges(v).size());
  return best;
}

LazyFamily LazyFamily::from_network(const Network& net, std::string name) {
  auto shared = std::make_shared<Network>(net);
  LazyFamily fam;
  fam.name = std::move(name);
  fam.source = shared->source();
  fam.sink = shared->sink();
  fam.merge_horizon = static_cast<int>(shared->vertex_count()) + 1;
  fam.incident = [shared](const VertexId& v) {
    std::vector<Edge> out;
    for (EdgeId e : shared->out_edges(v)) {
      Edge copy = shared->edge(e);
      if (copy.key.empty()) copy.key = shared->edge_label(e);
      out.push_back(copy);
    }
    for (EdgeId e : shared->in_edges(v)) {
      Edge copy = shared->edge(e);
      if (copy.key.empty()) copy.key = shared->edge_label(e);
      out.push_back(copy);
    }
    return out;
  };
  // Undirected s-t path for the core.
  std::map<VertexId, VertexId> prev;
  std::deque<VertexId> queue{shared->source()};
  prev[shared->source()] = shared->source();
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    auto visit = [&](const VertexId& o) {
      if (!prev.count(o)) {
        prev[o] = v;
        queue.push_back(o);
      }
    };
    for (EdgeId e : shared->out_edges(v)) visit(shared->edge(e).to);
    for (EdgeId e : shared->in_edges(v)) visit(shared->edge(e).from);
  }
  if (!prev.count(shared->sink()))
    throw generation_error("from_network: sink not connected to source");
  std::vector<VertexId> path;
  for (VertexId v = shared->sink();; v = prev.at(v)) {
    path.push_back(v);
    if (v == shared->source()) break;
  }
  std::reverse(path.begin(), path.end());
  fam.core_path = std::move(path);
  return fam;
}

}  // namespace flowweb
