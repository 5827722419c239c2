#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowweb/rational.hpp"

namespace flowweb {

using VertexId = std::string;
using EdgeId = std::size_t;

struct Error : std::runtime_error {
  enum class Kind { domain, validation, generation, size, decomposition, usage };
  Kind kind;
  Error(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

inline Error domain_error(const std::string& w) { return Error(Error::Kind::domain, w); }
inline Error validation_error(const std::string& w) { return Error(Error::Kind::validation, w); }
inline Error generation_error(const std::string& w) { return Error(Error::Kind::generation, w); }
inline Error size_error(const std::string& w) { return Error(Error::Kind::size, w); }

struct Edge {
  VertexId from;
  VertexId to;
  Rational cap;
  // Stable structural key for edges of generated families; survives
  // truncation radius changes and endpoint renaming under contraction.
  // Empty for plain finite networks.
  std::string key;
};

// Directed network (D, c, s, t): no loops, IN(s) and OUT(t) empty,
// nonnegative capacities, parallel edges allowed.
class Network {
 public:
  Network() = default;
  Network(std::vector<VertexId> vertices, std::vector<Edge> edges,
          VertexId source, VertexId sink);

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const VertexId& source() const { return source_; }
  const VertexId& sink() const { return sink_; }

  bool has_vertex(const VertexId& v) const { return index_.count(v) != 0; }
  const std::vector<EdgeId>& out_edges(const VertexId& v) const;
  const std::vector<EdgeId>& in_edges(const VertexId& v) const;

  // Vertices created by contraction-mode truncation (drawn as boxes in DOT).
  const std::set<VertexId>& contracted() const { return contracted_; }
  void mark_contracted(const VertexId& v);

  std::string edge_label(EdgeId e) const;  // "(from,to)" or "(from,to)#k" for parallels

 private:
  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
  VertexId source_;
  VertexId sink_;
  std::map<VertexId, std::size_t> index_;
  std::map<VertexId, std::vector<EdgeId>> out_;
  std::map<VertexId, std::vector<EdgeId>> in_;
  std::set<VertexId> contracted_;
};

// Edge function, defined on exactly the edge set of one network.
struct Flow {
  std::vector<Rational> values;

  static Flow zeros(const Network& net) { return Flow{std::vector<Rational>(net.edge_count())}; }
  const Rational& operator[](EdgeId e) const { return values.at(e); }
  Rational& operator[](EdgeId e) { return values.at(e); }
  std::size_t size() const { return values.size(); }
};

struct Degrees {
  Rational dplus;   // sum of f over OUT(v)
  Rational dminus;  // sum of f over IN(v)
  Rational net;     // dplus - dminus
};

struct FlowReport {
  struct CapacityViolation {
    EdgeId edge;
    Rational flow, cap;
  };
  struct KirchhoffViolation {
    VertexId vertex;
    Rational imbalance;  // dplus - dminus
  };
  std::vector<CapacityViolation> capacity_violations;
  std::vector<KirchhoffViolation> kirchhoff_violations;
  std::vector<EdgeId> negative_edges;
  bool ok() const {
    return capacity_violations.empty() && kirchhoff_violations.empty() && negative_edges.empty();
  }
};

// Side set S with its two directed boundaries.
struct CutWitness {
  std::set<VertexId> side;
  std::vector<EdgeId> forward;   // E(S, V \ S)
  std::vector<EdgeId> backward;  // E(V \ S, S)
  bool is_st_cut = false;        // s in S and t not in S
};

struct OrthogonalityReport {
  bool orthogonal = false;
  std::optional<EdgeId> offending_edge;
  std::string reason;
};

Degrees degrees(const Network& net, const Flow& f, const VertexId& v);
Rational flow_value(const Network& net, const Flow& f);
FlowReport validate_flow(const Network& net, const Flow& f);
CutWitness cut_witness(const Network& net, const std::set<VertexId>& side);
Rational cut_capacity(const Network& net, const CutWitness& cut);
OrthogonalityReport check_orthogonal(const Network& net, const Flow& f,
                                     const std::set<VertexId>& side);

// Network with every edge reversed and source/sink roles swapped.
Network reverse_network(const Network& net);

void require_flow_shape(const Network& net, const Flow& f);

}  // namespace flowweb
