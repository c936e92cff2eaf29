#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gsa/algebra.hpp"
#include "gsa/partial_action.hpp"

namespace gsa {

// ---- partial skew group ring over C_R(X), sparse form

struct SkewRingElem {
  std::map<GroupElem, FnElem> terms;  // g -> a_g in C_R(X_g), zero terms dropped

  bool is_zero() const { return terms.empty(); }

  friend bool operator==(const SkewRingElem& a, const SkewRingElem& b) { return a.terms == b.terms; }
  friend bool operator!=(const SkewRingElem& a, const SkewRingElem& b) { return !(a == b); }
};

inline SkewRingElem skew_term(const AlgPartialAction& act, const GroupElem& g, const FnElem& a) {
  require(act.in_ideal(g, a), ErrorKind::IllFormed,
          "coefficient outside C_R(X_" + act.base().group()->format(g) + ")");
  SkewRingElem out;
  if (!a.is_zero()) out.terms.emplace(g, a);
  return out;
}

inline SkewRingElem skew_add(const SkewRingElem& x, const SkewRingElem& y) {
  SkewRingElem out = x;
  for (auto& [g, b] : y.terms) {
    auto it = out.terms.find(g);
    if (it == out.terms.end()) {
      out.terms.emplace(g, b);
      continue;
    }
    it->second = it->second + b;
    if (it->second.is_zero()) out.terms.erase(it);
  }
  return out;
}

// (a_g d_g)(b_h d_h) = phi_g(phi_{g^-1}(a_g) b_h) d_gh
inline SkewRingElem skew_mul(const AlgPartialAction& act, const SkewRingElem& x, const SkewRingElem& y) {
  const Group& G = *act.base().group();
  SkewRingElem out;
  for (auto& [g, a] : x.terms)
    for (auto& [h, b] : y.terms) {
      FnElem c = act.apply(g, act.apply(G.inv(g), a) * b);
      if (c.is_zero()) continue;
      SkewRingElem t;
      t.terms.emplace(G.mul(g, h), c);
      out = skew_add(out, t);
    }
  return out;
}

inline std::string skew_format(const Group& G, const SkewRingElem& x) {
  if (x.terms.empty()) return "0";
  std::string out;
  for (auto& [g, a] : x.terms) out += (out.empty() ? "" : " + ") + ("(" + a.str() + ")d_" + G.format(g));
  return out;
}

// ---- algebraic partial actions with coordinate ideals

// D_g spanned by a subset of the base basis; alpha_g given on the basis of D_{g^-1}.
struct AlgebraicPartialAction {
  AlgebraPtr base;
  GroupPtr group;
  std::map<GroupElem, IndexSet> ideals;
  std::map<GroupElem, std::map<std::size_t, Vec>> alpha;

  const IndexSet& ideal(const GroupElem& g) const {
    static const IndexSet none;
    auto it = ideals.find(g);
    return it == ideals.end() ? none : it->second;
  }

  std::vector<GroupElem> support() const {
    std::vector<GroupElem> out;
    for (auto& [g, d] : ideals)
      if (!d.empty()) out.push_back(g);
    return out;
  }

  bool in_ideal(const GroupElem& g, const Vec& v) const {
    const IndexSet& d = ideal(g);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero() && !sets::contains(d, i)) return false;
    return true;
  }

  Vec apply(const GroupElem& g, const Vec& v) const {
    require(in_ideal(group->inv(g), v), ErrorKind::IllFormed,
            "alpha_" + group->format(g) + " applied outside its domain");
    Vec out = base->zero();
    if (v.empty() || is_zero(v)) return out;
    const auto& m = alpha.at(g);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) out = add(out, scale(m.at(i), v[i]));
    return out;
  }

  std::vector<Check> verify() const {
    const Group& G = *group;
    const FiniteAlgebra& A = *base;
    std::vector<Check> out;
    Check iso{"ideal isomorphisms", true, ""}, ii{"(ii)", true, ""}, iii{"(iii)", true, ""};
    Check id{"(i)", ideal(G.identity()) == sets::range(A.dim()), ""};
    for (auto i : ideal(G.identity()))
      if (apply(G.identity(), A.basis(i)) != A.basis(i)) id.pass = false;
    auto supp = support();
    for (auto& g : supp) {
      GroupElem gi = G.inv(g);
      const IndexSet& dom = ideal(gi);
      std::vector<Vec> imgs;
      for (auto i : dom) {
        Vec v = apply(g, A.basis(i));
        imgs.push_back(v);
        if (!in_ideal(g, v) || apply(gi, v) != A.basis(i)) {
          iso.pass = false;
          iso.detail = "alpha_" + G.format(g) + " on " + A.label(i);
        }
        for (auto j : dom)
          if (apply(g, A.mul(A.basis(i), A.basis(j))) != A.mul(imgs.back(), apply(g, A.basis(j)))) {
            iso.pass = false;
            iso.detail = "alpha_" + G.format(g) + " not multiplicative";
          }
      }
      if (rank(A.ring(), imgs) != ideal(g).size()) {
        iso.pass = false;
        iso.detail = "alpha_" + G.format(g) + " not onto";
      }
      for (auto& h : supp) {
        // alpha_g(D_{g^-1} ∩ D_h) = D_g ∩ D_gh for coordinate ideals, checked via spans
        IndexSet src = sets::intersect(dom, ideal(h));
        std::vector<Vec> lhs;
        for (auto i : src) lhs.push_back(apply(g, A.basis(i)));
        IndexSet tgt = sets::intersect(ideal(g), ideal(G.mul(g, h)));
        std::vector<Vec> rhs;
        for (auto i : tgt) rhs.push_back(A.basis(i));
        Subspace L = Subspace::span(A.ring(), A.dim(), lhs), R = Subspace::span(A.ring(), A.dim(), rhs);
        if (!(L == R)) {
          ii.pass = false;
          ii.detail = "g=" + G.format(g) + ", h=" + G.format(h);
        }
        GroupElem hi = G.inv(h);
        for (auto i : sets::intersect(ideal(hi), ideal(G.mul(hi, gi)))) {
          Vec v = A.basis(i);
          if (apply(g, apply(h, v)) != apply(G.mul(g, h), v)) {
            iii.pass = false;
            iii.detail = "g=" + G.format(g) + ", h=" + G.format(h) + " at " + A.label(i);
          }
        }
      }
    }
    out.push_back(id);
    out.push_back(iso);
    out.push_back(ii);
    out.push_back(iii);
    return out;
  }
};

// A ⋊ G as a finite graded algebra with basis (g, i), i in the basis of D_g.
struct SkewRing {
  AlgebraPtr algebra;
  std::vector<std::pair<GroupElem, std::size_t>> terms;
  std::map<std::pair<GroupElem, std::size_t>, std::size_t> index;

  std::optional<std::size_t> find(const GroupElem& g, std::size_t i) const {
    auto it = index.find({g, i});
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

inline SkewRing build_skew_ring(const AlgebraicPartialAction& act,
                                const std::function<std::string(const GroupElem&, std::size_t)>& label = nullptr) {
  const Group& G = *act.group;
  const FiniteAlgebra& A = *act.base;
  SkewRing out;
  std::vector<std::string> labels;
  std::vector<GroupElem> grades;
  for (auto& g : act.support())
    for (auto i : act.ideal(g)) {
      out.index[{g, i}] = out.terms.size();
      out.terms.emplace_back(g, i);
      labels.push_back(label ? label(g, i) : A.label(i) + "d_" + G.format(g));
      grades.push_back(g);
    }
  const auto* terms = &out.terms;
  const auto* index = &out.index;
  auto product = [&, terms, index](std::size_t p, std::size_t q) {
    auto& [g, i] = (*terms)[p];
    auto& [h, j] = (*terms)[q];
    Vec u = act.apply(G.inv(g), A.basis(i));
    Vec v = A.mul(u, A.basis(j));
    Vec w = act.apply(g, v);
    GroupElem gh = G.mul(g, h);
    Sparse s;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k].is_zero()) continue;
      auto it = index->find({gh, k});
      require(it != index->end(), ErrorKind::IllFormed, "product leaves D_" + G.format(gh));
      s.emplace_back(it->second, w[k]);
    }
    return s;
  };
  out.algebra = std::make_shared<const FiniteAlgebra>(A.ring(), act.group, labels, grades, product);
  return out;
}

// C_R(X) with point indicators as basis, acted on by phi_g(1_x) = 1_{phi_g(x)}.
inline AlgebraicPartialAction function_action(const SetPartialAction& a, const Ring& ring) {
  const FiniteSpace& X = *a.space();
  std::vector<std::string> labels;
  for (auto& l : X.labels()) labels.push_back("1_" + l);
  auto base = std::make_shared<const FiniteAlgebra>(
      ring, a.group(), labels, std::vector<GroupElem>(X.size(), a.group()->identity()),
      [ring](std::size_t i, std::size_t j) {
        Sparse s;
        if (i == j) s.emplace_back(i, ring.one());
        return s;
      });
  AlgebraicPartialAction act{base, a.group(), {}, {}};
  for (auto& g : relevant_elements(a)) {
    act.ideals[g] = a.domain(g);
    auto& m = act.alpha[g];
    for (auto& [x, y] : a.map(g)) m[x] = unit_vec(ring, X.size(), y);
  }
  return act;
}

inline SkewRing skew_group_ring(const SetPartialAction& a, const Ring& ring) {
  const SpacePtr X = a.space();
  const GroupPtr G = a.group();
  return build_skew_ring(function_action(a, ring), [X, G](const GroupElem& g, std::size_t x) {
    return "1_" + X->label(x) + "d_" + G->format(g);
  });
}

inline Vec skew_to_vec(const SkewRing& R, const SkewRingElem& x) {
  Vec v = R.algebra->zero();
  for (auto& [g, a] : x.terms)
    for (auto& [p, c] : a.coeffs()) {
      auto k = R.find(g, p);
      require(k.has_value(), ErrorKind::IllFormed, "term outside the skew ring basis");
      v[*k] = c;
    }
  return v;
}

inline SkewRingElem skew_from_vec(const SkewRing& R, const SpacePtr& X, const Vec& v) {
  SkewRingElem out;
  const Ring& ring = R.algebra->ring();
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    auto& [g, x] = R.terms[k];
    auto [it, fresh] = out.terms.try_emplace(g, X, ring);
    it->second.set(x, v[k]);
  }
  return out;
}

// ---- regularity

// b in span(ideal) with a b a = a, or none.
inline std::optional<Vec> regular_in_ideal(const FiniteAlgebra& A, const IndexSet& ideal, const Vec& a) {
  require(A.ring().is_field(), ErrorKind::NeedsField, "regularity over " + A.ring().name());
  std::vector<Vec> cols;
  for (auto j : ideal) cols.push_back(A.mul(A.mul(a, A.basis(j)), a));
  auto y = solve(A.ring(), cols, a);
  if (!y) return std::nullopt;
  Vec b = A.zero();
  for (std::size_t t = 0; t < ideal.size(); ++t) b[ideal[t]] = (*y)[t];
  return b;
}

// ---- partial skew inverse semigroup rings, materialized as L modulo N

// Raw basis a_s d_s with a a point indicator; N identifies raw elements along covering pairs.
struct IsrQuotient {
  AlgebraPtr algebra;  // basis = classes
  std::vector<std::string> raw_labels;
  std::vector<GroupElem> raw_grades;
  std::vector<std::size_t> class_of;
  std::vector<std::size_t> rep;
  std::function<std::optional<std::size_t>(std::size_t, std::size_t)> raw_mul;

  std::size_t raw_size() const { return raw_labels.size(); }
};

inline IsrQuotient build_isr_quotient(const Ring& ring, const GroupPtr& grading, std::vector<std::string> raw_labels,
                                      std::vector<GroupElem> raw_grades,
                                      std::function<std::optional<std::size_t>(std::size_t, std::size_t)> raw_mul,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::size_t n = raw_labels.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto& [a, b] : pairs) {
    require(raw_grades[a] == raw_grades[b], ErrorKind::IllFormed, "identified raw elements of different grade");
    std::size_t ra = find(a), rb = find(b);
    if (ra == rb) continue;
    if (ra < rb)
      parent[rb] = ra;
    else
      parent[ra] = rb;
  }
  IsrQuotient q;
  q.class_of.assign(n, 0);
  std::map<std::size_t, std::size_t> root_class;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, fresh] = root_class.try_emplace(find(i), q.rep.size());
    if (fresh) q.rep.push_back(i);
    q.class_of[i] = it->second;
  }
  std::vector<std::string> labels;
  std::vector<GroupElem> grades;
  for (auto r : q.rep) {
    labels.push_back("[" + raw_labels[r] + "]");
    grades.push_back(raw_grades[r]);
  }
  q.raw_labels = std::move(raw_labels);
  q.raw_grades = std::move(raw_grades);
  q.raw_mul = raw_mul;
  const auto* qp = &q;
  q.algebra = std::make_shared<const FiniteAlgebra>(ring, grading, labels, grades, [&, qp](std::size_t c, std::size_t d) {
    Sparse s;
    if (auto p = raw_mul(qp->rep[c], qp->rep[d])) s.emplace_back(qp->class_of[*p], ring.one());
    return s;
  });
  return q;
}

// Products of raw elements depend only on their classes; exhaustive within budget, else sampled.
inline Check isr_well_defined(const IsrQuotient& q, std::size_t budget = 40000, std::uint64_t seed = 7) {
  Check c{"quotient well defined", true, ""};
  std::size_t n = q.raw_size();
  auto one = [&](std::size_t i, std::size_t j) {
    auto p = q.raw_mul(i, j);
    auto r = q.raw_mul(q.rep[q.class_of[i]], q.rep[q.class_of[j]]);
    bool ok = p.has_value() == r.has_value() && (!p || q.class_of[*p] == q.class_of[*r]);
    if (!ok && c.pass) {
      c.pass = false;
      c.detail = q.raw_labels[i] + " * " + q.raw_labels[j];
    }
  };
  if (n * n <= budget) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) one(i, j);
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < budget; ++k) one(rng() % n, rng() % n);
  }
  return c;
}

}  // namespace gsa
