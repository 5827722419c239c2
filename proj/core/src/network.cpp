#include "flowweb/network.hpp"

#include <algorithm>

namespace flowweb {

std::optional<Rational> rat_parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  auto slash = text.find('/');
  auto is_int = [](std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  try {
    if (slash == std::string_view::npos) {
      if (!is_int(text)) return std::nullopt;
      return Rational(BigInt(std::string(text)));
    }
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    BigInt d{std::string(den)};
    if (d <= 0) return std::nullopt;
    return Rational(BigInt(std::string(num)), d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

Network::Network(std::vector<VertexId> vertices, std::vector<Edge> edges,
                 VertexId source, VertexId sink)
    : vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      source_(std::move(source)),
      sink_(std::move(sink)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index_.emplace(vertices_[i], i).second)
      throw domain_error("duplicate vertex id: " + vertices_[i]);
  }
  if (!has_vertex(source_)) throw domain_error("source not among vertices: " + source_);
  if (!has_vertex(sink_)) throw domain_error("sink not among vertices: " + sink_);
  if (source_ == sink_) throw domain_error("source equals sink");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (!has_vertex(e.from)) throw domain_error("edge endpoint unknown: " + e.from);
    if (!has_vertex(e.to)) throw domain_error("edge endpoint unknown: " + e.to);
    if (e.from == e.to) throw domain_error("loop edge at vertex " + e.from);
    if (e.cap < 0) throw domain_error("negative capacity on edge " + edge_label(i));
    if (e.to == source_) throw domain_error("IN(s) must be empty, found edge into source: " + e.from);
    if (e.from == sink_) throw domain_error("OUT(t) must be empty, found edge out of sink: " + e.to);
    out_[e.from].push_back(i);
    in_[e.to].push_back(i);
  }
}

const std::vector<EdgeId>& Network::out_edges(const VertexId& v) const {
  static const std::vector<EdgeId> kEmpty;
  if (!has_vertex(v)) throw domain_error("unknown vertex id: " + v);
  auto it = out_.find(v);
  return it == out_.end() ? kEmpty : it->second;
}

const std::vector<EdgeId>& Network::in_edges(const VertexId& v) const {
  static const std::vector<EdgeId> kEmpty;
  if (!has_vertex(v)) throw domain_error("unknown vertex id: " + v);
  auto it = in_.find(v);
  return it == in_.end() ? kEmpty : it->second;
}

void Network::mark_contracted(const VertexId& v) {
  if (!has_vertex(v)) throw domain_error("unknown vertex id: " + v);
  contracted_.insert(v);
}

std::string Network::edge_label(EdgeId e) const {
  const Edge& ed = edges_.at(e);
  std::size_t slot = 0;
  for (EdgeId i = 0; i < e; ++i)
    if (edges_[i].from == ed.from && edges_[i].to == ed.to) ++slot;
  std::string s = "(" + ed.from + "," + ed.to + ")";
  if (slot > 0) s += "#" + std::to_string(slot);
  return s;
}

void require_flow_shape(const Network& net, const Flow& f) {
  if (f.size() != net.edge_count())
    throw domain_error("flow defined on " + std::to_string(f.size()) + " edges, network has " +
                       std::to_string(net.edge_count()));
}

Degrees degrees(const Network& net, const Flow& f, const VertexId& v) {
  require_flow_shape(net, f);
  if (!net.has_vertex(v)) throw domain_error("unknown vertex id: " + v);
  Degrees d;
  for (EdgeId e : net.out_edges(v)) d.dplus += f[e];
  for (EdgeId e : net.in_edges(v)) d.dminus += f[e];
  d.net = d.dplus - d.dminus;
  return d;
}

Rational flow_value(const Network& net, const Flow& f) {
  return degrees(net, f, net.source()).dplus;
}

FlowReport validate_flow(const Network& net, const Flow& f) {
  require_flow_shape(net, f);
  FlowReport report;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (f[e] < 0) report.negative_edges.push_back(e);
    if (f[e] > net.edge(e).cap)
      report.capacity_violations.push_back({e, f[e], net.edge(e).cap});
  }
  for (const VertexId& v : net.vertices()) {
    if (v == net.source() || v == net.sink()) continue;
    Degrees d = degrees(net, f, v);
    if (d.net != 0) report.kirchhoff_violations.push_back({v, d.net});
  }
  return report;
}

CutWitness cut_witness(const Network& net, const std::set<VertexId>& side) {
  for (const VertexId& v : side)
    if (!net.has_vertex(v)) throw domain_error("cut side contains unknown vertex: " + v);
  CutWitness cut;
  cut.side = side;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    bool from_in = side.count(net.edge(e).from) != 0;
    bool to_in = side.count(net.edge(e).to) != 0;
    if (from_in && !to_in) cut.forward.push_back(e);
    if (!from_in && to_in) cut.backward.push_back(e);
  }
  cut.is_st_cut = side.count(net.source()) != 0 && side.count(net.sink()) == 0;
  return cut;
}

Rational cut_capacity(const Network& net, const CutWitness& cut) {
  Rational c;
  for (EdgeId e : cut.forward) c += net.edge(e).cap;
  return c;
}

OrthogonalityReport check_orthogonal(const Network& net, const Flow& f,
                                     const std::set<VertexId>& side) {
  require_flow_shape(net, f);
  CutWitness cut = cut_witness(net, side);
  if (!cut.is_st_cut) throw domain_error("side set is not an s-t cut (needs s in S, t outside)");
  OrthogonalityReport r;
  for (EdgeId e : cut.forward) {
    if (f[e] != net.edge(e).cap) {
      r.offending_edge = e;
      r.reason = "forward edge " + net.edge_label(e) + " not saturated: " + rat_str(f[e]) +
                 " < " + rat_str(net.edge(e).cap);
      return r;
    }
  }
  for (EdgeId e : cut.backward) {
    if (f[e] != 0) {
      r.offending_edge = e;
      r.reason = "backward edge " + net.edge_label(e) + " carries " + rat_str(f[e]);
      return r;
    }
  }
  r.orthogonal = true;
  return r;
}

Network reverse_network(const Network& net) {
  std::vector<Edge> edges;
  edges.reserve(net.edge_count());
  for (const Edge& e : net.edges()) edges.push_back({e.to, e.from, e.cap, e.key});
  return Network(net.vertices(), std::move(edges), net.sink(), net.source());
}

}  // namespace flowweb
