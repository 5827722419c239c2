#pragma once

#include <optional>

#include "flowweb/network.hpp"

namespace flowweb {

struct WebEdge {
  VertexId from;
  VertexId to;
};

// Digraph with vertex sets A, B and nonnegative vertex weights; the carrier
// for currents and waves. Network-derived webs never have edges into A or
// out of B, and the random generators used in tests keep that shape.
class WeightedWeb {
 public:
  WeightedWeb() = default;
  WeightedWeb(std::vector<VertexId> vertices, std::vector<WebEdge> edges,
              std::set<VertexId> a_side, std::set<VertexId> b_side,
              std::map<VertexId, Rational> weights);

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<WebEdge>& edges() const { return edges_; }
  const WebEdge& edge(EdgeId e) const { return edges_.at(e); }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::set<VertexId>& a_side() const { return a_; }
  const std::set<VertexId>& b_side() const { return b_; }
  const Rational& weight(const VertexId& v) const;
  bool has_vertex(const VertexId& v) const { return weights_.count(v) != 0; }
  const std::vector<EdgeId>& out_edges(const VertexId& v) const;
  const std::vector<EdgeId>& in_edges(const VertexId& v) const;
  bool in_a(const VertexId& v) const { return a_.count(v) != 0; }
  bool in_b(const VertexId& v) const { return b_.count(v) != 0; }
  bool bipartite() const;

  std::string edge_label(EdgeId e) const;

 private:
  std::vector<VertexId> vertices_;
  std::vector<WebEdge> edges_;
  std::set<VertexId> a_;
  std::set<VertexId> b_;
  std::map<VertexId, Rational> weights_;
  std::map<VertexId, std::vector<EdgeId>> out_;
  std::map<VertexId, std::vector<EdgeId>> in_;
};

struct Current {
  std::vector<Rational> values;
  static Current zeros(const WeightedWeb& web) {
    return Current{std::vector<Rational>(web.edge_count())};
  }
  const Rational& operator[](EdgeId e) const { return values.at(e); }
  Rational& operator[](EdgeId e) { return values.at(e); }
  std::size_t size() const { return values.size(); }
  bool is_zero() const {
    for (const Rational& v : values)
      if (v != 0) return false;
    return true;
  }
};

struct SeparatorReport {
  bool separating = false;
  std::set<VertexId> essential_subset;          // E(S)
  std::set<VertexId> rf;                        // RF(S)
  std::set<VertexId> rf_strict;                 // RF(S) \ E(S)
  std::optional<std::vector<VertexId>> witness_path;  // A-B path missing S
};

Rational web_outdeg(const WeightedWeb& web, const Current& f, const VertexId& v);
Rational web_indeg(const WeightedWeb& web, const Current& f, const VertexId& v);

// Violated current axiom, or nullopt when f is a current.
std::optional<std::string> current_violation(const WeightedWeb& web, const Current& f);
void require_current(const WeightedWeb& web, const Current& f);

std::set<VertexId> sat_set(const WeightedWeb& web, const Current& f);   // A u {d- = w}
std::set<VertexId> sink_set(const WeightedWeb& web, const Current& f);  // {d+ = 0}
std::set<VertexId> ter_set(const WeightedWeb& web, const Current& f);   // SAT n SINK

bool is_web_flow(const WeightedWeb& web, const Current& f);  // KIR off A u B

SeparatorReport separator_report(const WeightedWeb& web, const std::set<VertexId>& s);

struct WaveCheck {
  bool wave = false;
  SeparatorReport ter_report;
  std::string reason;
};
WaveCheck validate_wave(const WeightedWeb& web, const Current& f);
void require_wave(const WeightedWeb& web, const Current& f);

// Trimming: g <= f, RF0(f) in KIR(g) u A, TER(g)\A = E(TER(f))\A, g a wave.
Current trim(const WeightedWeb& web, const Current& wave);

struct Quotient {
  WeightedWeb web;                    // Gamma / f
  std::vector<EdgeId> parent_edge;    // quotient edge id -> parent edge id
};
Quotient quotient(const WeightedWeb& web, const Current& wave);

// f followed-by g: f + (g restricted to E(Gamma/f)). g is given on the
// parent web's edge set and restricted internally.
Current compose(const WeightedWeb& web, const Current& wave, const Current& g);

// Exhaustive desk-scale search for a non-zero wave: enumerate essential
// separating sets and solve a saturation feasibility flow for each.
std::optional<Current> find_nonzero_wave(const WeightedWeb& web);

// Iterates f := f followed-by g over non-zero waves of the quotient until
// the quotient is wave-free.
Current max_wave(const WeightedWeb& web);

struct Hindrance {
  Current wave;
  VertexId vertex;   // a in A \ E(TER(wave))
  Rational margin;   // w(a) - d+(a)
};
// A (>epsilon)-hindrance if one exists; epsilon = 0 means plain hindrance.
std::optional<Hindrance> find_hindrance(const WeightedWeb& web, const Rational& epsilon);

// No non-zero wave and the zero wave is not a hindrance.
bool is_loose(const WeightedWeb& web);

// Web-flow saturating every A-vertex, via a vertex-capacitated max flow.
std::optional<Current> linkage(const WeightedWeb& web);

// Section 3 transformation: web vertices are the network's edges.
WeightedWeb network_to_web(const Network& net);

// Back-translation g(e) = max(d+_f(e), d-_f(e)) of a web-flow on
// network_to_web(net).
Flow web_flow_to_flow(const Network& net, const Current& web_flow);

// Section 5 transformation to a bipartite web (vertices split into _A/_B
// copies). Vertices in A n B carry no copies and vanish.
WeightedWeb web_to_bipartite(const WeightedWeb& web);

struct ProjectedWave {
  Current wave;                 // on the parent web
  std::set<VertexId> ter;       // TER of the projection, equals s_prime
  std::set<VertexId> s_prime;   // (A_S n B_S) u (A n A_S) u (B n B_S)
};
// Projects a wave on web_to_bipartite(web) back onto web.
ProjectedWave project_wave(const WeightedWeb& web, const Current& bip_wave);

// (D, A, B, w - d_f) and (D, A, B, w - g).
WeightedWeb web_minus_current(const WeightedWeb& web, const Current& f);
WeightedWeb web_minus_vertex_function(const WeightedWeb& web,
                                      const std::map<VertexId, Rational>& g);

}  // namespace flowweb
