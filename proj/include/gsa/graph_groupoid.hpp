#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gsa/graph.hpp"
#include "gsa/groupoid.hpp"
#include "gsa/partial_action.hpp"
#include "gsa/steinberg.hpp"

namespace gsa {

enum class GraphGrading { Free, Weights };

// An acyclic graph with its boundary path space enumerated.
struct ExplicitGraph {
  Graph graph;
  GroupPtr free;      // on the edge names
  GroupPtr integers;
  std::vector<Path> points;
  SpacePtr space;
  std::map<Path, std::size_t> point_index;

  std::optional<std::size_t> find(const Path& p) const {
    auto it = point_index.find(p);
    if (it == point_index.end()) return std::nullopt;
    return it->second;
  }
};

inline ExplicitGraph explicit_graph(const Graph& g) {
  ExplicitGraph eg;
  eg.graph = g;
  std::vector<std::string> names;
  for (auto& e : g.edges()) names.push_back(e.name);
  eg.free = Group::free_group(names);
  eg.integers = Group::integers();
  eg.points = boundary::finite_space(g);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < eg.points.size(); ++i) {
    labels.push_back(path::label(g, eg.points[i]));
    eg.point_index[eg.points[i]] = i;
  }
  eg.space = FiniteSpace::make(labels);
  return eg;
}

inline GroupElem path_word(const ExplicitGraph& eg, const Path& p) {
  GroupElem::Word w;
  for (auto e : p.edges) w.push_back(int(e) + 1);
  return eg.free->word(w);
}

inline GroupPtr grading_group(const ExplicitGraph& eg, GraphGrading kind) {
  return kind == GraphGrading::Free ? eg.free : eg.integers;
}

// w(mu) w(nu)^-1
inline GroupElem pair_grade(const ExplicitGraph& eg, GraphGrading kind, const Path& mu, const Path& nu) {
  if (kind == GraphGrading::Free) return eg.free->mul(path_word(eg, mu), eg.free->inv(path_word(eg, nu)));
  return eg.integers->integer(path::weight(eg.graph, mu) - path::weight(eg.graph, nu));
}

struct GraphGroupoid {
  GraphGrading kind;
  FiniteGroupoid groupoid;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> arrow;  // (range point, source point) -> arrow

  std::size_t at(std::size_t y, std::size_t z) const {
    auto it = arrow.find({y, z});
    require(it != arrow.end(), ErrorKind::IllFormed, "no arrow between these boundary paths");
    return it->second;
  }
};

// Arrows (y, w(y)w(z)^-1, z) for boundary paths y, z ending at the same sink.
inline GraphGroupoid graph_groupoid(const ExplicitGraph& eg, GraphGrading kind) {
  const Graph& g = eg.graph;
  GroupPtr G = grading_group(eg, kind);
  std::vector<std::string> labels;
  std::vector<std::size_t> r, d;
  std::vector<GroupElem> grades;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> idx;
  for (std::size_t y = 0; y < eg.points.size(); ++y)
    for (std::size_t z = 0; z < eg.points.size(); ++z) {
      if (path::range(g, eg.points[y]) != path::range(g, eg.points[z])) continue;
      GroupElem k = pair_grade(eg, kind, eg.points[y], eg.points[z]);
      idx[{y, z}] = labels.size();
      labels.push_back("(" + eg.space->label(y) + "," + G->format(k) + "," + eg.space->label(z) + ")");
      r.push_back(y);
      d.push_back(z);
      grades.push_back(k);
    }
  return GraphGroupoid{kind, FiniteGroupoid(G, eg.space, labels, r, d, grades), idx};
}

// Reduced pairs (a, b): r(a) = r(b), not both trivial, distinct last edges when both are nontrivial.
inline std::vector<std::pair<Path, Path>> reduced_pairs(const Graph& g, std::size_t max_len) {
  auto ps = path::enumerate(g, max_len);
  std::vector<std::pair<Path, Path>> out;
  for (auto& a : ps)
    for (auto& b : ps) {
      if (path::range(g, a) != path::range(g, b)) continue;
      if (a.trivial() && b.trivial()) continue;
      if (!a.trivial() && !b.trivial() && a.edges.back() == b.edges.back()) continue;
      out.emplace_back(a, b);
    }
  return out;
}

// theta_{ab^-1} : X_{ba^-1} -> X_{ab^-1}, bx' -> ax', with X_{ab^-1} the paths beginning with a.
inline SetPartialAction theta_action(const ExplicitGraph& eg) {
  const Graph& g = eg.graph;
  std::map<GroupElem, IndexSet> domains;
  std::map<GroupElem, PointMap> maps;
  for (auto& [a, b] : reduced_pairs(g, g.num_edges())) {
    GroupElem c = eg.free->mul(path_word(eg, a), eg.free->inv(path_word(eg, b)));
    IndexSet dom;
    PointMap m;
    for (std::size_t x = 0; x < eg.points.size(); ++x) {
      const Path& p = eg.points[x];
      if (path::is_prefix(a, p)) dom.push_back(x);
      if (path::is_prefix(b, p)) {
        Path img = path::concat(g, a, path::drop_prefix(g, b, p));
        auto y = eg.find(img);
        require(y.has_value(), ErrorKind::IllFormed, "theta image is not a boundary path");
        m[x] = *y;
      }
    }
    if (dom.empty()) continue;
    domains[c] = dom;
    maps[c] = m;
  }
  return SetPartialAction(eg.free, eg.space, domains, maps);
}

// X_c as a cylinder complex, for any graph.
inline CylinderComplex theta_domain(const Graph& g, const GroupPtr& F, const GroupElem& c) {
  if (F->is_identity(c)) return cyl::whole(g);
  const auto& w = c.word();
  std::size_t k = 0;
  while (k < w.size() && w[k] > 0) ++k;
  for (std::size_t i = k; i < w.size(); ++i)
    if (w[i] > 0) return {};
  auto as_path = [&](std::vector<std::size_t> es) -> std::optional<Path> {
    if (es.empty()) return std::nullopt;
    for (std::size_t i = 1; i < es.size(); ++i)
      if (g.edge(es[i - 1]).dst != g.edge(es[i]).src) return std::nullopt;
    return Path{g.edge(es.front()).src, es};
  };
  std::vector<std::size_t> ae, be;
  for (std::size_t i = 0; i < k; ++i) ae.push_back(std::size_t(w[i] - 1));
  for (std::size_t i = w.size(); i > k; --i) be.push_back(std::size_t(-w[i - 1] - 1));
  auto a = as_path(ae), b = as_path(be);
  if ((!ae.empty() && !a) || (!be.empty() && !b)) return {};
  if (a && b && path::range(g, *a) != path::range(g, *b)) return {};
  if (a) return cyl::cylinder(g, *a);
  return cyl::cylinder(g, path::vertex(path::range(g, *b)));
}

// ---- symbolic bisections Z(mu, nu), integer grading by weights

struct BisectionSymbol {
  Path mu, nu;
  friend bool operator<(const BisectionSymbol& a, const BisectionSymbol& b) {
    return std::tie(a.mu, a.nu) < std::tie(b.mu, b.nu);
  }
  friend bool operator==(const BisectionSymbol& a, const BisectionSymbol& b) { return a.mu == b.mu && a.nu == b.nu; }
};

inline BisectionSymbol bisection_symbol(const Graph& g, const Path& mu, const Path& nu) {
  require(path::range(g, mu) == path::range(g, nu), ErrorKind::IllFormed, "Z(mu,nu) needs r(mu) = r(nu)");
  return {mu, nu};
}

// Z(mu,nu) Z(gamma,delta) by cancelling nu against gamma.
inline std::optional<BisectionSymbol> bisection_product(const Graph& g, const BisectionSymbol& s,
                                                        const BisectionSymbol& t) {
  if (path::is_prefix(s.nu, t.mu)) return BisectionSymbol{path::concat(g, s.mu, path::drop_prefix(g, s.nu, t.mu)), t.nu};
  if (path::is_prefix(t.mu, s.nu)) return BisectionSymbol{s.mu, path::concat(g, t.nu, path::drop_prefix(g, t.mu, s.nu))};
  return std::nullopt;
}

inline BisectionSymbol bisection_inverse(const BisectionSymbol& s) { return {s.nu, s.mu}; }

struct GraphArrow {
  BoundaryPath y;
  long long k = 0;
  BoundaryPath z;
  friend bool operator<(const GraphArrow& a, const GraphArrow& b) { return std::tie(a.y, a.k, a.z) < std::tie(b.y, b.k, b.z); }
  friend bool operator==(const GraphArrow& a, const GraphArrow& b) { return a.y == b.y && a.k == b.k && a.z == b.z; }
};

inline bool arrow_in(const Graph& g, const BisectionSymbol& s, const GraphArrow& a) {
  if (!boundary::starts_with(g, a.y, s.mu) || !boundary::starts_with(g, a.z, s.nu)) return false;
  if (a.k != path::weight(g, s.mu) - path::weight(g, s.nu)) return false;
  return boundary::drop(g, a.y, s.mu.length()) == boundary::drop(g, a.z, s.nu.length());
}

// Arrows (alpha x, w(alpha)-w(beta), beta x) from witness boundary paths x and |alpha|, |beta| <= max_len.
inline std::vector<GraphArrow> witness_arrows(const Graph& g, std::size_t max_prefix, std::size_t max_cycle,
                                              std::size_t max_len) {
  auto ps = path::enumerate(g, max_len);
  std::map<std::size_t, std::vector<Path>> ending;
  for (auto& p : ps) ending[path::range(g, p)].push_back(p);
  std::set<GraphArrow> out;
  for (auto& x : boundary::witnesses(g, max_prefix, max_cycle))
    for (auto& a : ending[x.start])
      for (auto& b : ending[x.start])
        out.insert({boundary::prepend(g, a, x), path::weight(g, a) - path::weight(g, b), boundary::prepend(g, b, x)});
  return {out.begin(), out.end()};
}

using SymbolicElem = std::map<BisectionSymbol, Scalar>;

inline Scalar symbolic_eval(const Graph& g, const Ring& ring, const SymbolicElem& f, const GraphArrow& a) {
  Scalar s = ring.zero();
  for (auto& [b, c] : f)
    if (arrow_in(g, b, a)) s = s + c;
  return s;
}

inline SymbolicElem symbolic_mul(const Graph& g, const SymbolicElem& f, const SymbolicElem& h) {
  SymbolicElem out;
  for (auto& [s, c] : f)
    for (auto& [t, d] : h)
      if (auto p = bisection_product(g, s, t)) {
        Scalar v = c * d;
        auto it = out.find(*p);
        if (it == out.end())
          out.emplace(*p, v);
        else
          it->second = it->second + v;
      }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

// (f * h)(y,k,z) computed from the definition of convolution: the unique factorization through Z(mu,nu).
inline Scalar convolution_at(const Graph& g, const Ring& ring, const SymbolicElem& f, const SymbolicElem& h,
                             const GraphArrow& a) {
  Scalar s = ring.zero();
  for (auto& [b1, c1] : f) {
    if (!boundary::starts_with(g, a.y, b1.mu)) continue;
    BoundaryPath x = boundary::drop(g, a.y, b1.mu.length());
    GraphArrow first{a.y, path::weight(g, b1.mu) - path::weight(g, b1.nu), boundary::prepend(g, b1.nu, x)};
    GraphArrow second{first.z, a.k - first.k, a.z};
    for (auto& [b2, c2] : h)
      if (arrow_in(g, b2, second)) s = s + c1 * c2;
  }
  return s;
}

// ---- star injectivity of the degree functor

inline std::optional<std::size_t> degree_witness(const Graph& g) {
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (g.in(v).size() > 1) return v;
  return std::nullopt;
}

// Two distinct arrows into x with the same degree, searched over witness boundary paths.
inline std::optional<std::string> star_collision_search(const Graph& g, std::size_t max_prefix = 3,
                                                        std::size_t max_cycle = 3, std::size_t max_len = 2) {
  auto ps = path::enumerate(g, max_len);
  std::map<std::size_t, std::vector<Path>> ending;
  for (auto& p : ps) ending[path::range(g, p)].push_back(p);
  for (auto& x : boundary::witnesses(g, max_prefix, max_cycle)) {
    std::map<long long, std::set<BoundaryPath>> by_degree;
    for (std::size_t j = 0; j <= max_len && boundary::has_length_at_least(x, j); ++j) {
      BoundaryPath z = boundary::drop(g, x, j);
      for (auto& a : ending[z.start]) {
        BoundaryPath y = boundary::prepend(g, a, z);
        long long k = (long long)a.length() - (long long)j;
        auto& ys = by_degree[k];
        ys.insert(y);
        if (ys.size() > 1)
          return "Star(" + boundary::label(g, x) + ") has " + boundary::label(g, *ys.begin()) + " and " +
                 boundary::label(g, *ys.rbegin()) + " in degree " + std::to_string(k);
      }
    }
  }
  return std::nullopt;
}

// Exact search on the explicit groupoid with unit weights.
inline std::optional<std::string> star_collision_explicit(const ExplicitGraph& eg) {
  GraphGroupoid gg = graph_groupoid(eg, GraphGrading::Weights);
  const FiniteGroupoid& G = gg.groupoid;
  for (std::size_t x = 0; x < eg.points.size(); ++x) {
    std::map<GroupElem, std::size_t> seen;
    for (std::size_t a = 0; a < G.size(); ++a) {
      if (G.d(a) != x) continue;
      auto [it, fresh] = seen.emplace(G.grade(a), a);
      if (!fresh) return "Star(" + eg.space->label(x) + ") has " + G.label(it->second) + " and " + G.label(a);
    }
  }
  return std::nullopt;
}

struct StarReport {
  bool star_injective = true;
  std::optional<std::size_t> witness_vertex;
  std::string mode;  // "explicit" or "witness-search"
  bool brute_force_injective = true;
  std::string brute_force_witness;
  bool agree = true;
};

inline StarReport check_star_injective(const Graph& g) {
  StarReport rep;
  auto wv = degree_witness(g);
  rep.star_injective = !wv;
  rep.witness_vertex = wv;
  std::optional<std::string> col;
  if (g.is_acyclic()) {
    rep.mode = "explicit";
    col = star_collision_explicit(explicit_graph(g.with_weights(std::vector<long long>(g.num_edges(), 1))));
  } else {
    rep.mode = "witness-search";
    col = star_collision_search(g);
  }
  rep.brute_force_injective = !col;
  rep.brute_force_witness = col.value_or("");
  rep.agree = rep.brute_force_injective == rep.star_injective;
  return rep;
}

// ---- groupoid isomorphisms given on arrows

inline std::vector<Check> groupoid_map_checks(const FiniteGroupoid& G, const FiniteGroupoid& H,
                                              const std::vector<std::size_t>& f,
                                              const std::function<GroupElem(const GroupElem&)>& grade_map) {
  Check bij{"bijective on arrows", f.size() == G.size() && G.size() == H.size(), ""};
  std::vector<bool> hit(H.size(), false);
  for (auto a : f) {
    if (a >= H.size() || hit[a]) bij.pass = false;
    if (a < H.size()) hit[a] = true;
  }
  Check func{"preserves composition", true, ""};
  for (std::size_t a = 0; a < G.size() && func.pass; ++a)
    for (std::size_t b = 0; b < G.size() && func.pass; ++b) {
      auto ab = G.compose(a, b);
      if (!ab) continue;
      auto img = H.compose(f[a], f[b]);
      if (!img || *img != f[*ab]) {
        func.pass = false;
        func.detail = G.label(a) + " * " + G.label(b);
      }
    }
  Check grade{"preserves degree", true, ""};
  for (std::size_t a = 0; a < G.size() && grade.pass; ++a)
    if (grade_map(G.grade(a)) != H.grade(f[a])) {
      grade.pass = false;
      grade.detail = G.label(a);
    }
  return {bij, func, grade};
}

// e_a -> e_{f(a)}
inline GradedHom algebra_map_from_arrows(const std::string& name, const AlgebraPtr& A, const AlgebraPtr& B,
                                         const std::vector<std::size_t>& f,
                                         std::function<GroupElem(const GroupElem&)> grade_map = nullptr) {
  GradedHom h{name, A, B, {}, std::move(grade_map)};
  for (auto a : f) h.images.push_back(B->basis(a));
  return h;
}

}  // namespace gsa
