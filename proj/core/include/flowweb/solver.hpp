#pragma once

#include "flowweb/network.hpp"

namespace flowweb {

// One theta * chi(E(P)) term of a mundane decomposition.
struct PathTerm {
  Rational theta;
  std::vector<EdgeId> path;  // directed s-t path, in order
};

struct PathDecomposition {
  std::vector<PathTerm> terms;
};

// Maximum flow via augmenting paths (BFS, ties broken by edge id). Exact
// rationals; deterministic for a fixed edge order.
Flow max_flow(const Network& net);

// Augments `start` (a feasible flow) to a flow of value exactly `target`.
// Throws if target is below |start| or above the maximum value.
Flow max_flow_limited(const Network& net, const Flow& start, const Rational& target);

// Source side of the residual graph under a maximum flow f. Errors if f is
// not maximum (witnessed by an augmenting path).
CutWitness min_cut(const Network& net, const Flow& f);

// Decomposes a flow with acyclic support into at most |E| path terms summing
// to f edge-wise. Errors on cyclic support, naming a cycle.
PathDecomposition decompose_mundane(const Network& net, const Flow& f);

Flow sum_decomposition(const Network& net, const PathDecomposition& d);

// (max flow, min cut) with check_orthogonal holding for the pair.
std::pair<Flow, CutWitness> orthogonal_pair(const Network& net);

// Directed cycle inside the support of f, if any (vertex-path of edge ids).
std::optional<std::vector<EdgeId>> find_support_cycle(const Network& net, const Flow& f);

}  // namespace flowweb
