#include "flowweb/builtins.hpp"

#include <charconv>

namespace flowweb {

namespace {

std::string xname(int j, long long i) { return "x" + std::to_string(j) + "^" + std::to_string(i); }

// "x2^37" -> (2, 37)
std::optional<std::pair<int, long long>> parse_x(const VertexId& v) {
  if (v.size() < 4 || v[0] != 'x' || v[2] != '^') return std::nullopt;
  int j = v[1] - '0';
  if (j < 0 || j > 3) return std::nullopt;
  long long i = 0;
  auto res = std::from_chars(v.data() + 3, v.data() + v.size(), i);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size() || i < 1) return std::nullopt;
  return std::make_pair(j, i);
}

std::string ekey(const VertexId& from, const VertexId& to) { return "(" + from + "," + to + ")"; }

Edge mk(const VertexId& from, const VertexId& to, Rational cap) {
  return Edge{from, to, std::move(cap), ekey(from, to)};
}

constexpr long long kMaxPathIndex = 1LL << 56;

// Shared incident structure of the two tree counterexamples; `qcap(i, j)`
// prices edge j of Q_i, `acap(i)` the four attachment edges hung from Q_i.
std::vector<Edge> tree_incident(const VertexId& v,
                                const std::function<Rational(long long, int)>& qcap,
                                const std::function<Rational(long long)>& acap) {
  auto parsed = parse_x(v);
  if (!parsed) throw generation_error("unknown vertex of the tree family: " + v);
  auto [j, i] = *parsed;
  if (i > kMaxPathIndex) throw generation_error("path index overflow at " + v);
  std::vector<Edge> out;
  auto qedge = [&](int slot, long long path) {
    return mk(xname(slot, path), xname(slot + 1, path), qcap(path, slot));
  };
  switch (j) {
    case 0:
      out.push_back(qedge(0, i));
      out.push_back(mk(xname(0, i), xname(0, 2 * i), acap(i)));
      if (i % 2 == 0) out.push_back(mk(xname(0, i / 2), v, acap(i / 2)));
      if (i % 2 == 1 && i > 1) out.push_back(mk(xname(1, i / 2), v, acap(i / 2)));
      break;
    case 1:
      out.push_back(qedge(0, i));
      out.push_back(qedge(1, i));
      out.push_back(mk(xname(1, i), xname(0, 2 * i + 1), acap(i)));
      break;
    case 2:
      out.push_back(qedge(1, i));
      out.push_back(qedge(2, i));
      out.push_back(mk(xname(3, 2 * i), xname(2, i), acap(i)));
      break;
    case 3:
      out.push_back(qedge(2, i));
      out.push_back(mk(xname(3, 2 * i + 1), xname(3, i), acap(i)));
      if (i % 2 == 0) out.push_back(mk(v, xname(2, i / 2), acap(i / 2)));
      if (i % 2 == 1 && i > 1) out.push_back(mk(v, xname(3, i / 2), acap(i / 2)));
      break;
    default:
      break;
  }
  return out;
}

bool in_subtree_of_2(long long i) {
  while (i > 3) i /= 2;
  return i == 2;
}

bool is_middle_key(const std::string& key) {
  // "(x1^i,x2^i)"
  return key.size() > 6 && key.rfind("(x1^", 0) == 0 && key.find(",x2^") != std::string::npos;
}

LazyFamily tree_family(const std::string& name,
                       const std::function<Rational(long long, int)>& qcap,
                       const std::function<Rational(long long)>& acap) {
  LazyFamily fam;
  fam.name = name;
  fam.source = xname(0, 1);
  fam.sink = xname(3, 1);
  fam.core_path = {xname(0, 1), xname(1, 1), xname(2, 1), xname(3, 1)};
  fam.merge_horizon = 5;
  fam.incident = [qcap, acap](const VertexId& v) { return tree_incident(v, qcap, acap); };
  fam.level = [](const VertexId& v) {
    auto p = parse_x(v);
    if (!p) throw generation_error("unknown vertex of the tree family: " + v);
    return tree_level(p->second);
  };
  fam.level_radius = [](int k) { return 2 * (k - 1); };
  return fam;
}

LazyFamily make_counterexample63() {
  auto qcap = [](long long i, int) { return pow2(-tree_level(i)); };
  auto acap = [](long long i) { return pow2(-tree_level(i)); };
  LazyFamily fam = tree_family("counterexample63", qcap, acap);
  // Edge-wise limit of the mundane flows f_k: capacity off the middle
  // edges, zero on them.
  fam.canonical_flow = [](const Edge& e) {
    return is_middle_key(e.key) ? Rational(0) : e.cap;
  };
  fam.named_cuts.push_back(NamedCut{
      "middles_cut",
      [](const VertexId& v) {
        auto p = parse_x(v);
        return p && (p->first == 0 || p->first == 1);
      },
      std::nullopt,  // capacity diverges
      false,
  });
  fam.named_cuts.push_back(NamedCut{
      "paper_F_side",
      [](const VertexId& v) {
        auto p = parse_x(v);
        if (!p) return false;
        auto [j, i] = *p;
        if (i == 1) return j <= 2;  // x0^1, x1^1, x2^1
        return in_subtree_of_2(i);
      },
      Rational(1),
      true,
  });
  fam.named_edge_sets.push_back(NamedEdgeSet{
      "middles", [](const Edge& e) { return is_middle_key(e.key); }, std::nullopt});
  return fam;
}

LazyFamily make_siw73() {
  auto qcap = [](long long i, int slot) {
    return slot == 1 ? Rational(0) : pow_int(4, -tree_level(i));
  };
  auto acap = [](long long i) { return pow_int(4, -tree_level(i)); };
  LazyFamily fam = tree_family("siw73", qcap, acap);
  fam.named_cuts.push_back(NamedCut{
      "middles_cut",
      [](const VertexId& v) {
        auto p = parse_x(v);
        return p && (p->first == 0 || p->first == 1);
      },
      Rational(0),  // every middle edge has capacity zero
      false,
  });
  fam.named_edge_sets.push_back(
      NamedEdgeSet{"middles", [](const Edge& e) { return is_middle_key(e.key); }, Rational(0)});
  return fam;
}

std::optional<long long> parse_indexed(const VertexId& v, char prefix) {
  if (v.size() < 2 || v[0] != prefix) return std::nullopt;
  long long i = 0;
  auto res = std::from_chars(v.data() + 1, v.data() + v.size(), i);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) return std::nullopt;
  return i;
}

LazyFamily make_double_ray() {
  LazyFamily fam;
  fam.name = "double_ray_circulation";
  fam.source = "s";
  fam.sink = "t";
  fam.core_path = {"s", "c0", "c-1", "t"};
  fam.merge_horizon = 2;
  auto cname = [](long long i) { return "c" + std::to_string(i); };
  fam.incident = [cname](const VertexId& v) -> std::vector<Edge> {
    if (v == "s") return {mk("s", "c0", 1)};
    if (v == "t") return {mk("c-1", "t", 1)};
    auto i = parse_indexed(v, 'c');
    if (!i) throw generation_error("unknown vertex of double_ray_circulation: " + v);
    std::vector<Edge> out{mk(cname(*i - 1), cname(*i), 1), mk(cname(*i), cname(*i + 1), 1)};
    if (*i == 0) out.push_back(mk("s", "c0", 1));
    if (*i == -1) out.push_back(mk("c-1", "t", 1));
    return out;
  };
  // Value-1 flow: down the left ray into t, off to infinity on the right.
  fam.canonical_flow = [](const Edge& e) {
    return e.key == "(c-1,c0)" ? Rational(0) : Rational(1);
  };
  fam.named_cuts.push_back(NamedCut{
      "left_half",
      [](const VertexId& v) {
        if (v == "s" || v == "t") return true;
        auto i = parse_indexed(v, 'c');
        return i && *i <= 0;
      },
      Rational(1),  // E(S,T) = {(c0,c1)}
      true,
  });
  return fam;
}

LazyFamily make_ladder(bool directed_rungs_down) {
  LazyFamily fam;
  fam.name = directed_rungs_down ? "ladder_wcr" : "no_finite_path";
  fam.source = "s";
  fam.sink = "t";
  const char top = directed_rungs_down ? 'u' : 'a';
  auto tname = [top](long long i) { return std::string(1, top) + std::to_string(i); };
  auto bname = [](long long i) { return "b" + std::to_string(i); };
  fam.core_path = {"s", tname(0), bname(0), "t"};
  fam.merge_horizon = 2;
  fam.incident = [=](const VertexId& v) -> std::vector<Edge> {
    auto rung = [&](long long i) {
      return directed_rungs_down ? mk(tname(i), bname(i), 1) : mk(bname(i), tname(i), 1);
    };
    if (v == "s") return {mk("s", tname(0), 1)};
    if (v == "t") return {mk(bname(0), "t", 1)};
    if (auto i = parse_indexed(v, top)) {
      std::vector<Edge> out{mk(tname(*i), tname(*i + 1), 1), rung(*i)};
      out.push_back(*i == 0 ? mk("s", tname(0), 1) : mk(tname(*i - 1), tname(*i), 1));
      return out;
    }
    if (auto i = parse_indexed(v, 'b')) {
      if (*i < 0) throw generation_error("unknown vertex: " + v);
      std::vector<Edge> out{mk(bname(*i + 1), bname(*i), 1), rung(*i)};
      out.push_back(*i == 0 ? mk(bname(0), "t", 1) : mk(bname(*i), bname(*i - 1), 1));
      return out;
    }
    throw generation_error("unknown vertex of " + std::string(1, top) + "-ladder: " + v);
  };
  // Value-1 flow out along the top rail and back along the bottom one.
  fam.canonical_flow = [top](const Edge& e) {
    bool rung = (e.from[0] == top && e.to[0] == 'b' && e.from.substr(1) == e.to.substr(1)) ||
                (e.from[0] == 'b' && e.to[0] == top && e.from.substr(1) == e.to.substr(1));
    return rung ? Rational(0) : Rational(1);
  };
  if (!directed_rungs_down) {
    fam.named_cuts.push_back(NamedCut{
        "a_side",
        [top](const VertexId& v) { return v == "s" || v[0] == top; },
        Rational(0),  // no edge leaves {s} u a-ray
        false,        // the reverse boundary (all rungs) is infinite
    });
  }
  return fam;
}

}  // namespace

int tree_level(long long i) {
  int k = 0;
  while (i > 0) {
    i /= 2;
    ++k;
  }
  return k;
}

std::vector<std::string> builtin_names() {
  return {"counterexample63", "siw73", "double_ray_circulation", "ladder_wcr", "no_finite_path"};
}

LazyFamily builtin(const std::string& name, const std::map<std::string, std::string>& params) {
  if (!params.empty())
    throw Error(Error::Kind::usage, "builtin '" + name + "' takes no parameters");
  if (name == "counterexample63") return make_counterexample63();
  if (name == "siw73") return make_siw73();
  if (name == "double_ray_circulation") return make_double_ray();
  if (name == "ladder_wcr") return make_ladder(true);
  if (name == "no_finite_path") return make_ladder(false);
  throw Error(Error::Kind::usage, "unknown builtin '" + name + "'");
}

}  // namespace flowweb
