#pragma once

#include <variant>

#include "flowweb/lazy_family.hpp"

namespace flowweb {

// Parsed network specification: either a finite network or a builtin family.
using ParsedSpec = std::variant<Network, LazyFamily>;

// JSON spec: {"vertices": [...], "edges": [{"from","to","cap"}], "source",
// "sink"} or {"builtin": {"name": ..., "params": {...}}}. Capacities are
// "p/q" strings, so exactness survives serialization.
ParsedSpec parse_spec(const std::string& text);

// Canonical emission; emit(parse(emit(x))) is byte-identical to emit(x).
std::string emit_spec(const Network& net);
std::string emit_spec(const LazyFamily& fam);
std::string emit_spec(const ParsedSpec& spec);

// {"values": ["p/q", ...]} aligned with the network's edge order.
Flow parse_flow_file(const Network& net, const std::string& text);
std::string emit_flow(const Network& net, const Flow& f);

// {"cuts": [{"side": ["v", ...]} | {"named": "cut_name"}]}
struct CutSelector {
  std::optional<std::set<VertexId>> side;
  std::optional<std::string> named;
};
std::vector<CutSelector> parse_cuts_file(const std::string& text);

// {"side": ["v", ...]}
std::set<VertexId> parse_side_file(const std::string& text);

}  // namespace flowweb
