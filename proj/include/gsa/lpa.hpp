#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gsa/algebra.hpp"
#include "gsa/graph_groupoid.hpp"

namespace gsa {

// mu nu* with r(mu) = r(nu)
struct Monomial {
  Path mu, nu;
  friend bool operator<(const Monomial& a, const Monomial& b) { return std::tie(a.mu, a.nu) < std::tie(b.mu, b.nu); }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.mu == b.mu && a.nu == b.nu; }
};

using LPAElem = std::map<Monomial, Scalar>;

namespace lpa {

inline Monomial monomial(const Graph& g, const Path& mu, const Path& nu) {
  require(path::range(g, mu) == path::range(g, nu), ErrorKind::IllFormed, "mu nu* needs r(mu) = r(nu)");
  return {mu, nu};
}

inline std::string label(const Graph& g, const Monomial& m) {
  if (m.nu.trivial()) return path::label(g, m.mu);
  if (m.mu.trivial()) return path::label(g, m.nu) + "*";
  return path::label(g, m.mu) + " " + path::label(g, m.nu) + "*";
}

inline std::string format(const Graph& g, const LPAElem& x) {
  if (x.empty()) return "0";
  std::string out;
  for (auto& [m, c] : x) {
    if (!out.empty()) out += " + ";
    out += (c.is_one() ? "" : c.str() + "*") + label(g, m);
  }
  return out;
}

inline void accumulate(LPAElem& x, const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = x.find(m);
  if (it == x.end()) {
    x.emplace(m, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) x.erase(it);
}

inline LPAElem term(const Ring& ring, const Monomial& m) { return {{m, ring.one()}}; }
inline LPAElem vertex(const Graph&, const Ring& ring, std::size_t v) {
  return term(ring, {path::vertex(v), path::vertex(v)});
}
inline LPAElem edge(const Graph& g, const Ring& ring, std::size_t e) {
  return term(ring, {path::edge(g, e), path::vertex(g.edge(e).dst)});
}
inline LPAElem ghost(const Graph& g, const Ring& ring, std::size_t e) {
  return term(ring, {path::vertex(g.edge(e).dst), path::edge(g, e)});
}

// Both paths end in the special edge of the same regular vertex.
inline bool is_normal(const Graph& g, const Monomial& m) {
  if (m.mu.trivial() || m.nu.trivial()) return true;
  std::size_t e = m.mu.edges.back();
  return e != m.nu.edges.back() || e != g.special_edge(g.edge(e).src);
}

// mu' gamma gamma* nu'* -> mu' nu'* - sum_{f != gamma} mu' f f* nu'*; rng picks the redex order.
inline LPAElem normalize(const Graph& g, LPAElem x, std::mt19937_64* rng = nullptr) {
  while (true) {
    std::vector<Monomial> bad;
    for (auto& [m, c] : x)
      if (!is_normal(g, m)) bad.push_back(m);
    if (bad.empty()) return x;
    Monomial m = rng ? bad[(*rng)() % bad.size()] : bad.front();
    Scalar c = x.at(m);
    x.erase(m);
    Path mu = path::parent(g, m.mu), nu = path::parent(g, m.nu);
    std::size_t gamma = m.mu.edges.back();
    accumulate(x, {mu, nu}, c);
    for (auto f : g.out(g.edge(gamma).src))
      if (f != gamma) accumulate(x, {path::extend(g, mu, f), path::extend(g, nu, f)}, -c);
  }
}

// (mu nu*)(gamma delta*) by cancelling nu* against gamma.
inline std::optional<Monomial> mul_monomials(const Graph& g, const Monomial& a, const Monomial& b) {
  if (path::is_prefix(a.nu, b.mu)) return Monomial{path::concat(g, a.mu, path::drop_prefix(g, a.nu, b.mu)), b.nu};
  if (path::is_prefix(b.mu, a.nu)) return Monomial{a.mu, path::concat(g, b.nu, path::drop_prefix(g, b.mu, a.nu))};
  return std::nullopt;
}

inline LPAElem add(const LPAElem& x, const LPAElem& y) {
  LPAElem out = x;
  for (auto& [m, c] : y) accumulate(out, m, c);
  return out;
}

inline LPAElem scale(const LPAElem& x, const Scalar& c) {
  LPAElem out;
  for (auto& [m, d] : x) accumulate(out, m, d * c);
  return out;
}

inline LPAElem mul(const Graph& g, const LPAElem& x, const LPAElem& y, std::mt19937_64* rng = nullptr) {
  LPAElem out;
  for (auto& [a, c] : x)
    for (auto& [b, d] : y)
      if (auto m = mul_monomials(g, a, b)) accumulate(out, *m, c * d);
  return normalize(g, out, rng);
}

inline std::vector<Monomial> normal_basis(const Graph& g) {
  require(g.is_acyclic(), ErrorKind::IllFormed, "finite normal basis needs an acyclic graph");
  auto ps = path::enumerate(g, g.num_edges());
  std::sort(ps.begin(), ps.end());
  std::vector<Monomial> out;
  for (auto& a : ps)
    for (auto& b : ps)
      if (path::range(g, a) == path::range(g, b) && is_normal(g, {a, b})) out.push_back({a, b});
  return out;
}

}  // namespace lpa

struct LPAAlgebra {
  AlgebraPtr algebra;
  std::vector<Monomial> basis;
  std::map<Monomial, std::size_t> index;

  Vec to_vec(const LPAElem& x) const {
    Vec v = algebra->zero();
    for (auto& [m, c] : x) v[index.at(m)] = c;
    return v;
  }
};

inline LPAAlgebra lpa_algebra(const ExplicitGraph& eg, GraphGrading kind, const Ring& ring) {
  const Graph& g = eg.graph;
  LPAAlgebra L;
  L.basis = lpa::normal_basis(g);
  std::vector<std::string> labels;
  std::vector<GroupElem> grades;
  for (std::size_t i = 0; i < L.basis.size(); ++i) {
    L.index[L.basis[i]] = i;
    labels.push_back(lpa::label(g, L.basis[i]));
    grades.push_back(pair_grade(eg, kind, L.basis[i].mu, L.basis[i].nu));
  }
  auto product = [&](std::size_t i, std::size_t j) {
    Sparse s;
    auto m = lpa::mul_monomials(g, L.basis[i], L.basis[j]);
    if (!m) return s;
    for (auto& [t, c] : lpa::normalize(g, lpa::term(ring, *m))) s.emplace_back(L.index.at(t), c);
    return s;
  };
  L.algebra = std::make_shared<FiniteAlgebra>(ring, grading_group(eg, kind), labels, grades, product);
  return L;
}

// pi_E(mu nu*) = 1_{Z(mu,nu)} = sum over x starting at r(mu) of the arrow (mu x, nu x).
inline Vec pi_E(const ExplicitGraph& eg, const GraphGroupoid& gg, const AlgebraPtr& A, const Monomial& m) {
  const Graph& g = eg.graph;
  Vec v = A->zero();
  for (std::size_t x = 0; x < eg.points.size(); ++x) {
    const Path& p = eg.points[x];
    if (p.start != path::range(g, m.mu)) continue;
    auto y = eg.find(path::concat(g, m.mu, p)), z = eg.find(path::concat(g, m.nu, p));
    require(y && z, ErrorKind::IllFormed, "pi_E: extension is not a boundary path");
    v[gg.at(*y, *z)] = A->ring().one();
  }
  return v;
}

inline GradedHom pi_E_hom(const ExplicitGraph& eg, const LPAAlgebra& L, const GraphGroupoid& gg, const AlgebraPtr& A) {
  GradedHom h{"pi_E", L.algebra, A, {}, nullptr};
  for (auto& m : L.basis) h.images.push_back(pi_E(eg, gg, A, m));
  return h;
}

// Symbolic pi_E for any graph: mu nu* -> Z(mu, nu).
inline SymbolicElem pi_E_symbolic(const LPAElem& x) {
  SymbolicElem out;
  for (auto& [m, c] : x) out[{m.mu, m.nu}] = c;
  return out;
}

// ---- generalised graded uniqueness

struct GeneratorImages {
  std::vector<Vec> vertex, edge, ghost;
};

inline GeneratorImages canonical_images(const ExplicitGraph& eg, const GraphGroupoid& gg, const AlgebraPtr& A) {
  const Graph& g = eg.graph;
  GeneratorImages im;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) im.vertex.push_back(pi_E(eg, gg, A, {path::vertex(v), path::vertex(v)}));
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    Path r = path::vertex(g.edge(e).dst);
    im.edge.push_back(pi_E(eg, gg, A, {path::edge(g, e), r}));
    im.ghost.push_back(pi_E(eg, gg, A, {r, path::edge(g, e)}));
  }
  return im;
}

struct UniquenessReport {
  bool relations = true;
  std::string relation_witness;
  bool hypothesis = true;
  std::optional<std::size_t> witness_vertex;
  std::optional<std::size_t> kernel_dim;  // finite-dimensional case only
  bool pass = false;
};

// Rank of integer rows modulo a large prime; a lower bound for the rational rank.
inline std::size_t rank_mod_prime(const std::vector<Vec>& rows, std::size_t n, long long p = 1000003) {
  std::vector<std::vector<long long>> m;
  for (auto& r : rows) {
    std::vector<long long> row(n);
    for (std::size_t j = 0; j < n; ++j) {
      mpz_class num = r[j].rational().get_num() % mpz_class(long(p));
      long long x = num.get_si();
      row[j] = (x % p + p) % p;
    }
    m.push_back(row);
  }
  auto pw = [&](long long b, long long e) {
    long long out = 1;
    for (b %= p; e; e >>= 1, b = b * b % p)
      if (e & 1) out = out * b % p;
    return out;
  };
  std::size_t rk = 0;
  for (std::size_t c = 0; c < n && rk < m.size(); ++c) {
    std::size_t piv = rk;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[rk], m[piv]);
    long long inv = pw(m[rk][c], p - 2);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == rk || m[i][c] == 0) continue;
      long long f = m[i][c] * inv % p;
      for (std::size_t j = c; j < n; ++j) m[i][j] = ((m[i][j] - f * m[rk][j]) % p + p) % p;
    }
    ++rk;
  }
  return rk;
}

inline bool integral(const std::vector<Vec>& rows) {
  for (auto& r : rows)
    for (auto& c : r)
      if (!c.ring().is_rational() || c.rational().get_den() != 1) return false;
  return true;
}

// Graded homomorphism check on generators, the hypothesis pi(v) != 0, and the kernel of pi on L_R(E) by rank.
inline UniquenessReport graded_uniqueness_check(const ExplicitGraph& eg, const FiniteAlgebra& A,
                                                const GeneratorImages& im) {
  const Graph& g = eg.graph;
  const Group& Z = *A.grading();
  require(A.grading()->kind() == GroupKind::Integers, ErrorKind::InstanceMismatch, "target must be Z-graded");
  require(im.vertex.size() == g.num_vertices() && im.edge.size() == g.num_edges() && im.ghost.size() == g.num_edges(),
          ErrorKind::IllFormed, "one image per generator");
  auto homog = [&](const Vec& x, long long k, const std::string& what) {
    if (is_zero(x)) return;
    auto gr = A.grade_of(x);
    if (!gr || *gr != Z.integer(k)) fail(ErrorKind::NotGraded, what + " is not in degree " + std::to_string(k));
  };
  for (std::size_t v = 0; v < g.num_vertices(); ++v) homog(im.vertex[v], 0, g.vertex(v));
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    homog(im.edge[e], g.weight(e), g.edge(e).name);
    homog(im.ghost[e], -g.weight(e), g.edge(e).name + "*");
  }
  UniquenessReport rep;
  auto rel = [&](bool ok, const std::string& what) {
    if (!ok && rep.relations) {
      rep.relations = false;
      rep.relation_witness = what;
    }
  };
  Vec zero = A.zero();
  for (std::size_t u = 0; u < g.num_vertices(); ++u)
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      rel(A.mul(im.vertex[u], im.vertex[v]) == (u == v ? im.vertex[u] : zero), g.vertex(u) + g.vertex(v));
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& E = g.edge(e);
    rel(A.mul(im.vertex[E.src], im.edge[e]) == im.edge[e] && A.mul(im.edge[e], im.vertex[E.dst]) == im.edge[e],
        "s(e)e = e = e r(e) at " + E.name);
    rel(A.mul(im.vertex[E.dst], im.ghost[e]) == im.ghost[e] && A.mul(im.ghost[e], im.vertex[E.src]) == im.ghost[e],
        "r(e)e* = e* = e* s(e) at " + E.name);
    for (std::size_t f = 0; f < g.num_edges(); ++f)
      rel(A.mul(im.ghost[e], im.edge[f]) == (e == f ? im.vertex[E.dst] : zero),
          "CK1 at " + E.name + "*" + g.edge(f).name);
  }
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (!g.is_regular(v)) continue;
    Vec s = zero;
    for (auto e : g.out(v)) s = add(s, A.mul(im.edge[e], im.ghost[e]));
    rel(s == im.vertex[v], "CK2 at " + g.vertex(v));
  }
  for (std::size_t v = 0; v < g.num_vertices() && rep.hypothesis; ++v)
    if (is_zero(im.vertex[v])) {
      rep.hypothesis = false;
      rep.witness_vertex = v;
    }
  if (g.is_acyclic() && rep.relations) {
    auto basis = lpa::normal_basis(g);
    std::vector<Vec> rows;
    for (auto& m : basis) {
      auto word = [&](const Path& p, bool star) {
        Vec acc = im.vertex[star ? path::range(g, p) : p.start];
        for (std::size_t i = 0; i < p.length(); ++i) {
          std::size_t e = star ? p.edges[p.length() - 1 - i] : p.edges[i];
          acc = A.mul(acc, star ? im.ghost[e] : im.edge[e]);
        }
        return acc;
      };
      rows.push_back(A.mul(word(m.mu, false), word(m.nu, true)));
    }
    std::size_t rk = 0;
    if (integral(rows) && rank_mod_prime(rows, A.dim()) == rows.size())
      rk = rows.size();
    else
      rk = rank(A.ring(), rows);
    rep.kernel_dim = rows.size() - rk;
  }
  rep.pass = rep.relations && (!rep.hypothesis || !rep.kernel_dim || *rep.kernel_dim == 0);
  return rep;
}

}  // namespace gsa
