#pragma once

#include <map>
#include <string>
#include <vector>

#include "gsa/isomorphisms.hpp"
#include "gsa/skew_ring.hpp"

namespace gsa {

// Element of the algebra on symbols P_E, E ⊆ G, with P_E P_F = P_{E∪F}. Bit i of a mask is element(i).
struct PEElem {
  GroupPtr group;
  Vec coeffs;  // indexed by mask

  std::size_t n() const { return group->order(); }
};

inline std::size_t pe_cap() { return 6; }

inline PEElem pe_zero(const GroupPtr& G, const Ring& ring) {
  require(G->is_finite() && G->order() <= pe_cap(), ErrorKind::OracleBudget, "P_E algebra needs |G| <= 6");
  return PEElem{G, zero_vec(ring, std::size_t(1) << G->order())};
}

inline std::uint64_t pe_mask(const Group& G, const std::vector<GroupElem>& E) {
  std::uint64_t m = 0;
  for (auto& g : E) m |= std::uint64_t(1) << G.index(g);
  return m;
}

inline PEElem pe_symbol(const GroupPtr& G, const Ring& ring, std::uint64_t mask) {
  PEElem p = pe_zero(G, ring);
  p.coeffs.at(mask) = ring.one();
  return p;
}

inline PEElem pe_mul(const PEElem& a, const PEElem& b) {
  require(a.group->id() == b.group->id(), ErrorKind::InstanceMismatch, "P_E elements over different groups");
  PEElem out{a.group, zero_vec(a.coeffs.front().ring(), a.coeffs.size())};
  for (std::size_t e = 0; e < a.coeffs.size(); ++e) {
    if (a.coeffs[e].is_zero()) continue;
    for (std::size_t f = 0; f < b.coeffs.size(); ++f)
      if (!b.coeffs[f].is_zero()) out.coeffs[e | f] += a.coeffs[e] * b.coeffs[f];
  }
  return out;
}

inline std::uint64_t translate_mask(const Group& G, const GroupElem& g, std::uint64_t mask) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < G.order(); ++i)
    if (mask >> i & 1) out |= std::uint64_t(1) << G.index(G.mul(g, G.element(i)));
  return out;
}

// D_g = span{P_E : ε, g in E}
inline bool in_D(const Group& G, const GroupElem& g, std::uint64_t mask) {
  std::uint64_t need = pe_mask(G, {G.identity(), g});
  return (mask & need) == need;
}

// alpha_g(P_E) = P_{gE} on D_{g^-1}
inline PEElem alpha_apply(const GroupElem& g, const PEElem& x) {
  const Group& G = *x.group;
  PEElem out{x.group, zero_vec(x.coeffs.front().ring(), x.coeffs.size())};
  for (std::size_t e = 0; e < x.coeffs.size(); ++e) {
    if (x.coeffs[e].is_zero()) continue;
    require(in_D(G, G.inv(g), e), ErrorKind::IllFormed, "alpha_" + G.format(g) + " applied outside D_g^-1");
    out.coeffs[translate_mask(G, g, e)] += x.coeffs[e];
  }
  return out;
}

inline std::string pe_format(const PEElem& x) {
  const Group& G = *x.group;
  std::string out;
  for (std::size_t e = 0; e < x.coeffs.size(); ++e) {
    if (x.coeffs[e].is_zero()) continue;
    std::string set;
    for (std::size_t i = 0; i < G.order(); ++i)
      if (e >> i & 1) set += (set.empty() ? "" : ",") + G.format(G.element(i));
    out += (out.empty() ? "" : " + ") + x.coeffs[e].str() + "*P{" + set + "}";
  }
  return out.empty() ? "0" : out;
}

// Y = {0,1}^G; a point is a mask, labelled by its bits in element order.
inline SpacePtr y_space(const Group& G) {
  std::vector<std::string> labels;
  for (std::uint64_t y = 0; y < (std::uint64_t(1) << G.order()); ++y) {
    std::string s;
    for (std::size_t i = 0; i < G.order(); ++i) s += (y >> i & 1) ? '1' : '0';
    labels.push_back(s);
  }
  return FiniteSpace::make(labels);
}

// Psi(P_E) = Q_E, Q_E(y) = 1 iff E ⊆ ones(y)
inline FnElem psi_map(const PEElem& a, const SpacePtr& Y) {
  FnElem f(Y, a.coeffs.front().ring());
  for (std::size_t y = 0; y < Y->size(); ++y) {
    Scalar v = f.ring().zero();
    for (std::size_t e = 0; e < a.coeffs.size(); ++e)
      if (!a.coeffs[e].is_zero() && (e & y) == e) v += a.coeffs[e];
    f.set(y, v);
  }
  return f;
}

// 1_y = sum over D ⊆ zeros(y) of (-1)^|D| Q_{ones(y) ∪ D}
inline PEElem psi_inverse(const GroupPtr& G, const FnElem& f) {
  const Ring& ring = f.ring();
  PEElem out = pe_zero(G, ring);
  std::uint64_t full = (std::uint64_t(1) << G->order()) - 1;
  for (auto& [y, v] : f.coeffs()) {
    std::uint64_t zeros = full & ~std::uint64_t(y);
    for (std::uint64_t D = zeros;; D = (D - 1) & zeros) {
      Scalar c = (__builtin_popcountll(D) % 2) ? -v : v;
      out.coeffs[y | D] += c;
      if (D == 0) break;
    }
  }
  return out;
}

struct PartialGroupRing {
  GroupPtr group;
  SpacePtr Y, Y_eps;
  std::vector<std::uint64_t> a_eps;  // masks E with ε in E, the basis of A_ε
  AlgebraicPartialAction alpha;      // on A_ε
  SkewRing PG;                       // A_ε ⋊_α G
  SetPartialAction phi;              // on Y_ε
  SkewRing CY;                       // C_R(Y_ε) ⋊_φ G
  GradedHom iso;
  std::vector<Check> checks;
  bool pass = false;
};

inline PartialGroupRing build_PG(const GroupPtr& Gp, const Ring& ring) {
  const Group& G = *Gp;
  require(G.is_finite(), ErrorKind::IllFormed, "partial group ring of an infinite group");
  require(G.is_abelian(), ErrorKind::NonAbelian, "partial group ring realization needs an abelian group");
  pe_zero(Gp, ring);
  std::size_t n = G.order();
  std::uint64_t eps_bit = std::uint64_t(1) << G.index(G.identity());
  std::vector<Check> checks;

  // A_ε with basis P_E, ε in E
  std::vector<std::uint64_t> basis;
  std::map<std::uint64_t, std::size_t> pos;
  for (std::uint64_t m = 0; m < (std::uint64_t(1) << n); ++m)
    if (m & eps_bit) {
      pos[m] = basis.size();
      basis.push_back(m);
    }
  std::vector<std::string> labels;
  for (auto m : basis) labels.push_back(pe_format(pe_symbol(Gp, ring, m)).substr(2));
  auto A = std::make_shared<const FiniteAlgebra>(ring, Gp, labels, std::vector<GroupElem>(basis.size(), G.identity()),
                                                 [&](std::size_t i, std::size_t j) {
                                                   return Sparse{{pos.at(basis[i] | basis[j]), ring.one()}};
                                                 });
  AlgebraicPartialAction alpha{A, Gp, {}, {}};
  for (auto& g : G.elements()) {
    IndexSet d;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (in_D(G, g, basis[i])) d.push_back(i);
    alpha.ideals[g] = d;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (in_D(G, G.inv(g), basis[i]))
        alpha.alpha[g][i] = unit_vec(ring, basis.size(), pos.at(translate_mask(G, g, basis[i])));
  }
  auto av = alpha.verify();
  for (auto& c : av) checks.push_back({"alpha " + c.name, c.pass, c.detail});
  SkewRing PG = build_skew_ring(alpha);

  // Y_ε and phi_g(x)_h = x_{g^-1 h}
  SpacePtr Y = y_space(G);
  std::vector<std::string> ylabels;
  std::map<std::uint64_t, std::size_t> ypos;
  for (std::uint64_t y = 0; y < Y->size(); ++y)
    if (y & eps_bit) {
      ypos[y] = ylabels.size();
      ylabels.push_back(Y->label(y));
    }
  SpacePtr Ye = FiniteSpace::make(ylabels);
  std::map<GroupElem, IndexSet> domains;
  std::map<GroupElem, PointMap> maps;
  for (auto& g : G.elements()) {
    GroupElem gi = G.inv(g);
    std::uint64_t gbit = std::uint64_t(1) << G.index(g), gibit = std::uint64_t(1) << G.index(gi);
    for (auto& [y, i] : ypos) {
      if (y & gbit) domains[g].push_back(i);
      if (!(y & gibit)) continue;
      std::uint64_t z = 0;
      for (std::size_t h = 0; h < n; ++h) {
        std::size_t src = G.index(G.mul(gi, G.element(h)));
        if (y >> src & 1) z |= std::uint64_t(1) << h;
      }
      maps[g][i] = ypos.at(z);
    }
  }
  SetPartialAction phi(Gp, Ye, domains, maps);
  auto vr = validate_group_action(phi);
  checks.push_back({"phi is a partial action", vr.pass, vr.axiom + " " + vr.witness});
  SkewRing CY = skew_group_ring(phi, ring);

  // Psi on A and on the skew rings
  std::vector<Vec> full_images;
  for (std::uint64_t m = 0; m < (std::uint64_t(1) << n); ++m) full_images.push_back(to_vec(psi_map(pe_symbol(Gp, ring, m), Y)));
  std::size_t full_rank = rank(ring, full_images);
  checks.push_back({"Psi bijective on the full P_E algebra", full_rank == (std::size_t(1) << n),
                    "rank " + std::to_string(full_rank)});
  auto restrict_to_eps = [&](const FnElem& f) {
    FnElem out(Ye, ring);
    for (auto& [y, v] : f.coeffs()) {
      require(ypos.count(y), ErrorKind::IllFormed, "image leaves Y_eps");
      out.set(ypos.at(y), v);
    }
    return out;
  };
  Check restricts{"Psi(D_g) = C(Y_g)", true, ""};
  Check square{"Psi alpha_g = phi_g Psi", true, ""};
  AlgPartialAction phiA(phi, ring);
  for (auto& g : G.elements()) {
    std::vector<Vec> imgs;
    for (auto i : alpha.ideal(g)) {
      FnElem f = restrict_to_eps(psi_map(pe_symbol(Gp, ring, basis[i]), Y));
      if (!sets::subset(f.support(), phi.domain(g))) restricts.pass = false;
      imgs.push_back(to_vec(f));
    }
    if (rank(ring, imgs) != phi.domain(g).size()) {
      restricts.pass = false;
      restricts.detail = "grade " + G.format(g);
    }
    for (auto i : alpha.ideal(G.inv(g))) {
      PEElem p = pe_symbol(Gp, ring, basis[i]);
      FnElem lhs = restrict_to_eps(psi_map(alpha_apply(g, p), Y));
      FnElem rhs = phiA.apply(g, restrict_to_eps(psi_map(p, Y)));
      if (lhs != rhs) {
        square.pass = false;
        square.detail = "g=" + G.format(g) + " on " + A->label(i);
      }
    }
  }
  checks.push_back(restricts);
  checks.push_back(square);

  GradedHom iso{"Psi x G", PG.algebra, CY.algebra, {}, nullptr};
  for (auto& [g, i] : PG.terms) {
    FnElem f = restrict_to_eps(psi_map(pe_symbol(Gp, ring, basis[i]), Y));
    Vec v = CY.algebra->zero();
    for (auto& [y, c] : f.coeffs()) {
      auto k = CY.find(g, y);
      require(k.has_value(), ErrorKind::IllFormed, "image of D_g leaves C(Y_g)");
      v[*k] = c;
    }
    iso.images.push_back(v);
  }
  append_iso_checks(checks, "P(G) -> C(Y_eps)xG", verify_graded_iso(iso));
  PartialGroupRing out{Gp, Y, Ye, basis, alpha, PG, phi, CY, iso, checks, false};
  out.pass = all_pass(out.checks);
  return out;
}

}  // namespace gsa
