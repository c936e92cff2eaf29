#pragma once

#include <map>
#include <string>
#include <vector>

#include "gsa/groupoid.hpp"
#include "gsa/skew_ring.hpp"
#include "gsa/steinberg.hpp"

namespace gsa {

inline void append_iso_checks(std::vector<Check>& out, const std::string& prefix, const IsoReport& r) {
  for (auto& c : r.checks()) out.push_back({prefix + " " + c.name, c.pass, c.detail});
}

inline bool all_pass(const std::vector<Check>& cs) {
  for (auto& c : cs)
    if (!c.pass) return false;
  return true;
}

inline std::map<GroupElem, std::size_t> graded_dims(const FiniteAlgebra& A) {
  std::map<GroupElem, std::size_t> out;
  for (auto& g : A.grades_present()) out[g] = A.component(g).size();
  return out;
}

// ---- C_R(U) ⋊_pi G^(h), raw pairs (B, x) with x in r(B) ∩ U

struct BisectionQuotient {
  std::shared_ptr<const FiniteGroupoid> groupoid;
  IsrQuotient q;
  std::vector<Bisection> bisections;
  std::vector<std::pair<std::size_t, std::size_t>> raw;  // (bisection index, unit)
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> raw_index;
  std::map<Bisection, std::size_t> bis_index;

  std::optional<std::size_t> find(const Bisection& b, std::size_t x) const {
    auto it = bis_index.find(b);
    if (it == bis_index.end()) return std::nullopt;
    auto jt = raw_index.find({it->second, x});
    if (jt == raw_index.end()) return std::nullopt;
    return jt->second;
  }
};

inline std::shared_ptr<BisectionQuotient> bisection_quotient(const FiniteGroupoid& g, const IndexSet& U,
                                                             const Ring& ring, std::vector<Bisection> family) {
  require(g.is_invariant(U), ErrorKind::NotInvariant, "unit set " + g.units()->format(U) + " is not invariant");
  auto bq = std::make_shared<BisectionQuotient>();
  bq->groupoid = std::make_shared<const FiniteGroupoid>(g);
  bq->bisections = std::move(family);
  for (std::size_t i = 0; i < bq->bisections.size(); ++i) bq->bis_index[bq->bisections[i]] = i;
  std::vector<std::string> labels;
  std::vector<GroupElem> grades;
  for (std::size_t i = 0; i < bq->bisections.size(); ++i) {
    const Bisection& B = bq->bisections[i];
    if (B.empty()) continue;
    for (auto x : sets::intersect(g.r_image(B), U)) {
      bq->raw_index[{i, x}] = bq->raw.size();
      bq->raw.emplace_back(i, x);
      labels.push_back("1_" + g.units()->label(x) + "d_" + bisection::format(g, B));
      grades.push_back(*bisection::grade_of(g, B));
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t k = 0; k < bq->raw.size(); ++k) {
    auto [i, x] = bq->raw[k];
    const Bisection& C = bq->bisections[i];
    for (auto a : C) {
      Bisection B = sets::minus(C, {a});
      if (B.empty() || !sets::contains(g.r_image(B), x)) continue;
      auto lo = bq->find(B, x);
      require(lo.has_value(), ErrorKind::IllFormed, "bisection family not closed under removal");
      pairs.emplace_back(*lo, k);
    }
  }
  BisectionQuotient* self = bq.get();
  const FiniteGroupoid* gp = self->groupoid.get();
  auto mul = [gp, self](std::size_t p, std::size_t q) -> std::optional<std::size_t> {
    auto [i, x] = self->raw[p];
    auto [j, y] = self->raw[q];
    const Bisection& B = self->bisections[i];
    auto b = bisection::at_range(*gp, B, x);
    if (gp->d(*b) != y) return std::nullopt;
    auto k = self->find(bisection::product(*gp, B, self->bisections[j]), x);
    require(k.has_value(), ErrorKind::IllFormed, "product left the raw basis");
    return *k;
  };
  bq->q = build_isr_quotient(ring, g.grading(), labels, grades, mul, pairs);
  return bq;
}

// ---- A_R(G_U) ≅ C_R(U) ⋊_pi G^(h)

struct Thm26Result {
  std::shared_ptr<FiniteGroupoid> restricted;
  AlgebraPtr steinberg;
  std::shared_ptr<BisectionQuotient> skew;
  GradedHom f, g;
  std::vector<Check> checks;
  bool pass = false;
};

inline Thm26Result thm26(const FiniteGroupoid& gpd, const IndexSet& U, const Ring& ring,
                         std::size_t cap_bisections = 20000, std::uint64_t seed = 1) {
  require(ring.is_field(), ErrorKind::NeedsField, "isomorphism certificates over " + ring.name());
  Thm26Result res;
  res.restricted = std::make_shared<FiniteGroupoid>(restrict_groupoid(gpd, U));
  const FiniteGroupoid& GU = *res.restricted;
  std::map<std::size_t, std::size_t> to_gu;
  for (std::size_t a = 0; a < GU.size(); ++a) to_gu[GU.origin(a)] = a;
  res.steinberg = steinberg_algebra(GU, ring);
  auto family = bisection::enumerate_graded(gpd, cap_bisections);
  res.skew = bisection_quotient(gpd, U, ring, family);
  const BisectionQuotient& S = *res.skew;
  const AlgebraPtr K = S.q.algebra;

  res.checks.push_back(isr_well_defined(S.q, 40000, seed));
  // f: 1_c -> [({c}, r(c))]
  res.f = GradedHom{"f", res.steinberg, K, {}, nullptr};
  for (std::size_t a = 0; a < GU.size(); ++a) {
    std::size_t p = GU.origin(a);
    auto k = S.find({p}, gpd.r(p));
    require(k.has_value(), ErrorKind::IllFormed, "singleton bisection missing");
    res.f.images.push_back(K->basis(S.q.class_of[*k]));
  }
  // g: (B, x) -> 1_b with b in B, r(b) = x
  auto g_raw = [&](std::size_t k) {
    auto [i, x] = S.raw[k];
    return to_gu.at(*bisection::at_range(gpd, S.bisections[i], x));
  };
  Check constant{"g constant on classes", true, ""};
  for (std::size_t k = 0; k < S.q.raw_size(); ++k)
    if (g_raw(k) != g_raw(S.q.rep[S.q.class_of[k]])) {
      constant.pass = false;
      constant.detail = S.q.raw_labels[k];
    }
  res.checks.push_back(constant);
  res.g = GradedHom{"g", K, res.steinberg, {}, nullptr};
  for (std::size_t c = 0; c < K->dim(); ++c) res.g.images.push_back(res.steinberg->basis(g_raw(S.q.rep[c])));

  res.checks.push_back(
      {"dimensions", K->dim() == GU.size(), std::to_string(GU.size()) + " vs " + std::to_string(K->dim())});
  append_iso_checks(res.checks, "f", verify_graded_iso(res.f));
  append_iso_checks(res.checks, "g", verify_graded_iso(res.g));
  res.checks.push_back({"g o f = id", composes_to_identity(res.f, res.g), ""});
  res.checks.push_back({"f o g = id", composes_to_identity(res.g, res.f), ""});
  // t_D = 1_{r(D)} d_D is a representation
  auto t = [&](const Bisection& D) {
    Vec v = K->zero();
    for (auto x : sets::intersect(gpd.r_image(D), U)) v[S.q.class_of[*S.find(D, x)]] += ring.one();
    return v;
  };
  auto rep = check_representation(gpd, family, *K, t, 4000, seed);
  res.checks.push_back({"t is a representation", rep.pass, rep.witness});
  res.pass = all_pass(res.checks);
  return res;
}

// Function on G_U arrows: a_B d_B -> (c -> a_B(r(c))) for c in B.
inline SteinbergElem canonicalize_bisection_terms(const FiniteGroupoid& gpd, const FiniteGroupoid& GU,
                                                  const std::vector<std::pair<Bisection, FnElem>>& terms) {
  std::map<std::size_t, std::size_t> to_gu;
  for (std::size_t a = 0; a < GU.size(); ++a) to_gu[GU.origin(a)] = a;
  Ring ring = terms.empty() ? Ring::rationals() : terms.front().second.ring();
  SteinbergElem out(GU.arrow_space(), ring);
  IndexSet U;
  for (std::size_t a = 0; a < GU.size(); ++a) U.push_back(gpd.r(GU.origin(a)));
  U = sets::normalized(U);
  for (auto& [B, a] : terms) {
    require(bisection::is_bisection(gpd, B), ErrorKind::IllFormed, "term over a non-bisection");
    IndexSet allowed = sets::intersect(gpd.r_image(B), U);
    for (auto& [x, v] : a.coeffs()) {
      require(sets::contains(allowed, x), ErrorKind::IllFormed,
              "coefficient outside C_R(U_B) at " + gpd.units()->label(x));
      std::size_t c = to_gu.at(*bisection::at_range(gpd, B, x));
      out.set(c, out.at(c) + v);
    }
  }
  return out;
}

// ---- C_R(U) ⋊ S(G), raw pairs (s, x) with x in D_s

struct SGQuotient {
  std::shared_ptr<const SetPartialAction> action;
  IsrQuotient q;
  std::vector<SGElem> elements;
  std::vector<std::pair<std::size_t, std::size_t>> raw;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> raw_index;
  std::map<SGElem, std::size_t> elem_index;

  std::optional<std::size_t> find(const SGElem& s, std::size_t x) const {
    auto it = elem_index.find(s);
    if (it == elem_index.end()) return std::nullopt;
    auto jt = raw_index.find({it->second, x});
    if (jt == raw_index.end()) return std::nullopt;
    return jt->second;
  }
};

inline std::shared_ptr<SGQuotient> sg_quotient(const SetPartialAction& a, const Ring& ring) {
  const Group& G = *a.group();
  auto sq = std::make_shared<SGQuotient>();
  sq->action = std::make_shared<const SetPartialAction>(a);
  sq->elements = sg_support_elements(a);
  auto act = induce_sg_action(a, sq->elements);
  for (std::size_t i = 0; i < sq->elements.size(); ++i) sq->elem_index[sq->elements[i]] = i;
  std::vector<std::string> labels;
  std::vector<GroupElem> grades;
  for (std::size_t i = 0; i < sq->elements.size(); ++i)
    for (auto x : act.domain(sq->elements[i])) {
      sq->raw_index[{i, x}] = sq->raw.size();
      sq->raw.emplace_back(i, x);
      labels.push_back("1_" + a.space()->label(x) + "d_" + sg_format(G, sq->elements[i]));
      grades.push_back(sq->elements[i].g);
    }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t k = 0; k < sq->raw.size(); ++k) {
    auto [i, x] = sq->raw[k];
    const SGElem& s = sq->elements[i];
    for (std::size_t l = 0; l < s.eps.size(); ++l) {
      SGElem t = s;
      t.eps.erase(t.eps.begin() + std::ptrdiff_t(l));
      auto hi = sq->find(t, x);
      require(hi.has_value(), ErrorKind::IllFormed, "S(G) family not closed under dropping eps");
      pairs.emplace_back(k, *hi);
    }
  }
  SGQuotient* self = sq.get();
  const SetPartialAction* ap = self->action.get();
  auto mul = [ap, self](std::size_t p, std::size_t q) -> std::optional<std::size_t> {
    const Group& G = *ap->group();
    auto [i, x] = self->raw[p];
    auto [j, y] = self->raw[q];
    const SGElem& s = self->elements[i];
    auto back = ap->apply(G.inv(s.g), x);
    if (!back || *back != y) return std::nullopt;
    auto k = self->find(sg_mul(G, s, self->elements[j]), x);
    require(k.has_value(), ErrorKind::IllFormed, "product left the raw basis");
    return *k;
  };
  sq->q = build_isr_quotient(ring, a.group(), labels, grades, mul, pairs);
  return sq;
}

// aδ_{ε_L[g]} -> aδ_g
inline SkewRingElem canonicalize_sg_terms(const AlgPartialAction& act,
                                          const std::vector<std::pair<SGElem, FnElem>>& terms) {
  const SetPartialAction& a = act.base();
  SkewRingElem out;
  for (auto& [s, f] : terms) {
    IndexSet dom = a.domain(s.g);
    for (auto& l : s.eps) dom = sets::intersect(dom, a.domain(l));
    require(sets::subset(f.support(), dom), ErrorKind::IllFormed,
            "coefficient outside the ideal of " + sg_format(*a.group(), s));
    out = skew_add(out, skew_term(act, s.g, f));
  }
  return out;
}

// ---- the chain A_R(G_U) ≅ C_R(U)⋊_pi G_X^(h) ≅ C_R(U)⋊ S(G) ≅ C_R(U)⋊ G

struct Prop36Result {
  SetPartialAction restricted;
  Thm26Result thm;
  std::shared_ptr<SGQuotient> sg;
  SkewRing skew;
  GradedHom phi, Psi, Theta;
  std::vector<Check> checks;
  bool pass = false;
};

inline Prop36Result prop36(const SetPartialAction& a, const IndexSet& U, const Ring& ring,
                           std::size_t cap_bisections = 20000, std::uint64_t seed = 1) {
  const Group& G = *a.group();
  SetPartialAction ra = restrict_action(a, U);
  FiniteGroupoid gx = transformation_groupoid(a);
  Prop36Result res{ra, thm26(gx, U, ring, cap_bisections, seed), sg_quotient(ra, ring), skew_group_ring(ra, ring),
                   {}, {}, {}, {}, false};
  const BisectionQuotient& K1 = *res.thm.skew;
  const SGQuotient& K2 = *res.sg;
  const AlgebraPtr A1 = K1.q.algebra, A2 = K2.q.algebra, A3 = res.skew.algebra, A0 = res.thm.steinberg;
  for (auto& c : res.thm.checks) res.checks.push_back({"thm26 " + c.name, c.pass, c.detail});
  res.checks.push_back(isr_well_defined(K2.q, 40000, seed));

  auto d0 = graded_dims(*A0), d1 = graded_dims(*A1), d2 = graded_dims(*A2), d3 = graded_dims(*A3);
  res.checks.push_back({"graded dimensions agree", d0 == d1 && d1 == d2 && d2 == d3,
                        std::to_string(A0->dim()) + "/" + std::to_string(A1->dim()) + "/" +
                            std::to_string(A2->dim()) + "/" + std::to_string(A3->dim())});

  // phi: 1_x d_g -> [1_x d_[g]]
  res.phi = GradedHom{"phi", A3, A2, {}, nullptr};
  for (auto& [g, x] : res.skew.terms) {
    auto k = K2.find(sg_bracket(G, g), x);
    require(k.has_value(), ErrorKind::IllFormed, "bracket element missing");
    res.phi.images.push_back(A2->basis(K2.q.class_of[*k]));
  }
  // Psi: [1_x d_s] -> [1_x d_{g x U_g}]
  auto grade_bisection = [&](const GroupElem& g) {
    Bisection B;
    for (auto x : sets::intersect(a.domain(g), U)) B.push_back(*transformation_arrow(gx, g, x));
    return sets::normalized(B);
  };
  auto psi_raw = [&](std::size_t k) {
    auto [i, x] = K2.raw[k];
    const SGElem& s = K2.elements[i];
    auto p = K1.find(grade_bisection(s.g), U[x]);
    require(p.has_value(), ErrorKind::IllFormed, "g x U_g missing from the bisection family");
    return K1.q.class_of[*p];
  };
  Check psi_const{"Psi constant on classes", true, ""};
  for (std::size_t k = 0; k < K2.q.raw_size(); ++k)
    if (psi_raw(k) != psi_raw(K2.q.rep[K2.q.class_of[k]])) {
      psi_const.pass = false;
      psi_const.detail = K2.q.raw_labels[k];
    }
  res.checks.push_back(psi_const);
  res.Psi = GradedHom{"Psi", A2, A1, {}, nullptr};
  for (std::size_t c = 0; c < A2->dim(); ++c) res.Psi.images.push_back(A1->basis(psi_raw(K2.q.rep[c])));

  // Theta: [1_x d_B] -> [1_x d_[grade B]]
  std::map<std::size_t, std::size_t> to_new;
  for (std::size_t i = 0; i < U.size(); ++i) to_new[U[i]] = i;
  auto theta_raw = [&](std::size_t k) {
    auto [i, x] = K1.raw[k];
    GroupElem g = *bisection::grade_of(gx, K1.bisections[i]);
    auto p = K2.find(sg_bracket(G, g), to_new.at(x));
    require(p.has_value(), ErrorKind::IllFormed, "bracket element missing");
    return K2.q.class_of[*p];
  };
  Check theta_const{"Theta constant on classes", true, ""};
  for (std::size_t k = 0; k < K1.q.raw_size(); ++k)
    if (theta_raw(k) != theta_raw(K1.q.rep[K1.q.class_of[k]])) {
      theta_const.pass = false;
      theta_const.detail = K1.q.raw_labels[k];
    }
  res.checks.push_back(theta_const);
  res.Theta = GradedHom{"Theta", A1, A2, {}, nullptr};
  for (std::size_t c = 0; c < A1->dim(); ++c) res.Theta.images.push_back(A2->basis(theta_raw(K1.q.rep[c])));

  append_iso_checks(res.checks, "phi", verify_graded_iso(res.phi));
  append_iso_checks(res.checks, "Psi", verify_graded_iso(res.Psi));
  append_iso_checks(res.checks, "Theta", verify_graded_iso(res.Theta));
  res.checks.push_back({"Theta o Psi = id", composes_to_identity(res.Psi, res.Theta), ""});
  res.checks.push_back({"associativity of the skew ring", associativity_check(*A3).pass, ""});
  res.pass = all_pass(res.checks);
  return res;
}

}  // namespace gsa
