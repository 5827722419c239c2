#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "flowweb/network.hpp"

namespace flowweb {

enum class TruncateMode { kDelete, kContract };

// A cut of a lazily generated network, described by a side predicate so it
// stays meaningful at every truncation radius. Closed-form capacities let
// tests and the ends module reason about infinite cuts exactly.
struct NamedCut {
  std::string name;
  std::function<bool(const VertexId&)> side;
  std::optional<Rational> forward_capacity;  // exact c[E(S,T)] when known in closed form
  bool finite_boundary = true;               // whether E(S,T) u E(T,S) is a finite edge set
};

struct NamedEdgeSet {
  std::string name;
  std::function<bool(const Edge&)> contains;
  std::optional<Rational> total_capacity;  // exact sum over the whole (infinite) set
};

// Deterministic generator of finite truncations of a countable network.
// The neighborhood oracle lists every edge incident to a vertex; truncation
// explores undirected balls around the core path. Generation is pure: the
// same (radius, mode) always yields the same network.
class LazyFamily {
 public:
  std::string name;
  std::map<std::string, std::string> params;
  VertexId source;
  VertexId sink;
  std::vector<VertexId> core_path;  // finite s-t path, the contraction center
  std::function<std::vector<Edge>(const VertexId&)> incident;

  // Extra exploration depth used by contract mode to identify components of
  // the ball complement. Must be at least the distance within which any two
  // boundary vertices of one component reconnect.
  int merge_horizon = 4;

  // Structural level, when the family has one (counterexample63 / siw73).
  std::function<int(const VertexId&)> level;          // may be empty
  std::function<int(int)> level_radius;               // radius containing levels <= k; may be empty
  std::function<Rational(const Edge&)> canonical_flow;  // closed-form flow rule; may be empty

  std::vector<NamedCut> named_cuts;
  std::vector<NamedEdgeSet> named_edge_sets;

  bool has_levels() const { return static_cast<bool>(level); }

  // Wraps a finite network as a (constant beyond its diameter) family.
  static LazyFamily from_network(const Network& net, std::string name = "finite");
};

// Ball of undirected radius r around the core path. Delete mode induces the
// subnetwork; contract mode adds one vertex per component of the complement,
// reattaching boundary edges at original capacities.
Network truncate(const LazyFamily& fam, int radius, TruncateMode mode);

// Same, but collecting vertices by structural level (<= k) instead of
// distance. Requires the family to define levels.
Network truncate_by_level(const LazyFamily& fam, int k, TruncateMode mode);

// Largest vertex degree seen in the radius-r truncation (local finiteness
// evidence for the ends module).
std::size_t max_degree(const Network& net);

}  // namespace flowweb
