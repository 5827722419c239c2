#pragma once

#include "flowweb/lazy_family.hpp"

namespace flowweb {

// Built-in example families:
//   counterexample63       binary tree of paths Q_i, capacities 1/2^k
//   siw73                  same digraph, middle edges 0, others 1/4^k
//   double_ray_circulation flow vanishing into one end and returning
//                          from the other (not finite-cut-respecting)
//   ladder_wcr             flow through a single end (finite-cut-respecting)
//   no_finite_path         value-1 fcr flow with no finite directed s-t path
LazyFamily builtin(const std::string& name,
                   const std::map<std::string, std::string>& params = {});

std::vector<std::string> builtin_names();

// Level k of path Q_i in the counterexample tree: 2^(k-1) <= i <= 2^k - 1.
int tree_level(long long i);

}  // namespace flowweb
