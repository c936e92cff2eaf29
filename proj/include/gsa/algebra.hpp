#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gsa/group.hpp"
#include "gsa/linalg.hpp"

namespace gsa {

using Sparse = std::vector<std::pair<std::size_t, Scalar>>;

inline Sparse to_sparse(const Vec& v) {
  Sparse s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.emplace_back(i, v[i]);
  return s;
}

// Finite-dimensional G-graded algebra given by homogeneous basis and structure constants.
class FiniteAlgebra {
 public:
  using ProductFn = std::function<Sparse(std::size_t, std::size_t)>;

  FiniteAlgebra(Ring ring, GroupPtr grading, std::vector<std::string> labels,
                std::vector<GroupElem> grades, const ProductFn& product)
      : ring_(ring), grading_(std::move(grading)), labels_(std::move(labels)), grades_(std::move(grades)) {
    require(labels_.size() == grades_.size(), ErrorKind::IllFormed, "one grade per basis element");
    std::size_t n = labels_.size();
    table_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Sparse s;
        for (auto& [k, c] : product(i, j))
          if (!c.is_zero()) s.emplace_back(k, c);
        table_[i * n + j] = std::move(s);
      }
    for (std::size_t i = 0; i < n; ++i) components_[grades_[i]].push_back(i);
  }

  const Ring& ring() const { return ring_; }
  const GroupPtr& grading() const { return grading_; }
  std::size_t dim() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  const GroupElem& grade(std::size_t i) const { return grades_.at(i); }
  const Sparse& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }

  Vec basis(std::size_t i) const { return unit_vec(ring_, dim(), i); }
  Vec zero() const { return zero_vec(ring_, dim()); }

  const std::vector<std::size_t>& component(const GroupElem& g) const {
    static const std::vector<std::size_t> none;
    auto it = components_.find(g);
    return it == components_.end() ? none : it->second;
  }

  std::vector<GroupElem> grades_present() const {
    std::vector<GroupElem> out;
    for (auto& [g, _] : components_) out.push_back(g);
    return out;
  }

  Vec mul(const Vec& a, const Vec& b) const {
    Vec out = zero();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (b[j].is_zero()) continue;
        Scalar c = a[i] * b[j];
        for (auto& [k, v] : product(i, j)) out[k] += c * v;
      }
    }
    return out;
  }

  std::map<GroupElem, Vec> decompose(const Vec& x) const {
    std::map<GroupElem, Vec> out;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].is_zero()) continue;
      auto [it, fresh] = out.try_emplace(grades_[i], zero());
      it->second[i] = x[i];
    }
    return out;
  }

  // Grade of a nonzero homogeneous element.
  std::optional<GroupElem> grade_of(const Vec& x) const {
    auto parts = decompose(x);
    if (parts.size() != 1) return std::nullopt;
    return parts.begin()->first;
  }

  std::string format(const Vec& x) const {
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += (x[i].is_one() ? "" : x[i].str() + "*") + labels_[i];
    }
    return out.empty() ? "0" : out;
  }

 private:
  Ring ring_;
  GroupPtr grading_;
  std::vector<std::string> labels_;
  std::vector<GroupElem> grades_;
  std::vector<Sparse> table_;
  std::map<GroupElem, std::vector<std::size_t>> components_;
};

using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
};

// Linear map given on the source basis, with a grade map between grading groups.
struct GradedHom {
  std::string name;
  AlgebraPtr source, target;
  std::vector<Vec> images;
  std::function<GroupElem(const GroupElem&)> grade_map;

  Vec apply(const Vec& x) const {
    Vec out = target->zero();
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!x[i].is_zero()) out = add(out, scale(images[i], x[i]));
    return out;
  }

  GroupElem map_grade(const GroupElem& g) const { return grade_map ? grade_map(g) : g; }
};

struct IsoReport {
  bool pass = false;
  bool additive = true;
  bool multiplicative = true;
  bool graded = true;
  bool injective = false;
  bool surjective = false;
  std::size_t rank = 0;
  std::string witness;
  std::vector<Check> checks() const {
    return {{"additive", additive, ""},
            {"multiplicative", multiplicative, multiplicative ? "" : witness},
            {"graded", graded, graded ? "" : witness},
            {"injective", injective, "rank " + std::to_string(rank)},
            {"surjective", surjective, "rank " + std::to_string(rank)}};
  }
};

// Homomorphism and grade checks on all basis pairs; bijectivity by exact rank.
inline IsoReport verify_graded_hom(const GradedHom& h, bool want_bijection) {
  IsoReport rep;
  const auto& S = *h.source;
  const auto& T = *h.target;
  require(h.images.size() == S.dim(), ErrorKind::IllFormed, h.name + ": one image per basis element");
  require(S.ring() == T.ring(), ErrorKind::InstanceMismatch, h.name + ": rings differ");
  for (std::size_t i = 0; i < S.dim() && rep.graded; ++i) {
    auto g = T.grade_of(h.images[i]);
    if (!is_zero(h.images[i]) && (!g || *g != h.map_grade(S.grade(i)))) {
      rep.graded = false;
      rep.witness = "grade of image of " + S.label(i);
    }
  }
  for (std::size_t i = 0; i < S.dim() && rep.multiplicative; ++i)
    for (std::size_t j = 0; j < S.dim() && rep.multiplicative; ++j) {
      Vec lhs = T.zero();
      for (auto& [k, c] : S.product(i, j)) lhs = add(lhs, scale(h.images[k], c));
      if (lhs != T.mul(h.images[i], h.images[j])) {
        rep.multiplicative = false;
        rep.witness = "(" + S.label(i) + ", " + S.label(j) + ")";
      }
      if (i < j && h.apply(add(S.basis(i), S.basis(j))) != add(h.images[i], h.images[j]))
        rep.additive = false;
    }
  rep.rank = rank(T.ring(), h.images.empty() ? std::vector<Vec>{} : h.images);
  rep.injective = rep.rank == S.dim();
  rep.surjective = rep.rank == T.dim();
  rep.pass = rep.additive && rep.multiplicative && rep.graded &&
             (!want_bijection || (rep.injective && rep.surjective));
  return rep;
}

inline IsoReport verify_graded_iso(const GradedHom& h) {
  require(h.source->ring().is_field(), ErrorKind::NeedsField, "isomorphism check over a non-field");
  return verify_graded_hom(h, true);
}

inline GradedHom identity_hom(const AlgebraPtr& a) {
  GradedHom h{"id", a, a, {}, nullptr};
  for (std::size_t i = 0; i < a->dim(); ++i) h.images.push_back(a->basis(i));
  return h;
}

// g after f, on the basis of f's source.
inline bool composes_to_identity(const GradedHom& f, const GradedHom& g) {
  for (std::size_t i = 0; i < f.source->dim(); ++i)
    if (g.apply(f.images[i]) != f.source->basis(i)) return false;
  return true;
}

struct AssocReport {
  bool pass = true;
  std::size_t triples = 0;
  std::string witness;
};

inline AssocReport associativity_check(const FiniteAlgebra& a) {
  AssocReport rep;
  std::size_t n = a.dim();
  std::vector<std::vector<Vec>> prod(n, std::vector<Vec>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec v = a.zero();
      for (auto& [k, c] : a.product(i, j)) v[k] += c;
      prod[i][j] = std::move(v);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        ++rep.triples;
        if (a.mul(prod[i][j], a.basis(k)) != a.mul(a.basis(i), prod[j][k])) {
          rep.pass = false;
          rep.witness = "(" + a.label(i) + ", " + a.label(j) + ", " + a.label(k) + ")";
          return rep;
        }
      }
  return rep;
}

// y of grade g^-1 with x y x = x for homogeneous x of grade g; none if no such y.
inline std::optional<Vec> graded_quasi_inverse(const FiniteAlgebra& a, const Vec& x) {
  require(a.ring().is_field(), ErrorKind::NeedsField, "quasi-inverse over " + a.ring().name());
  if (is_zero(x)) return a.zero();
  auto g = a.grade_of(x);
  require(g.has_value(), ErrorKind::NotGraded, "quasi-inverse of a non-homogeneous element");
  const auto& comp = a.component(a.grading()->inv(*g));
  std::vector<Vec> cols;
  for (auto j : comp) cols.push_back(a.mul(a.mul(x, a.basis(j)), x));
  auto y = solve(a.ring(), cols, x);
  if (!y) return std::nullopt;
  Vec out = a.zero();
  for (std::size_t t = 0; t < comp.size(); ++t) out[comp[t]] = (*y)[t];
  return out;
}

}  // namespace gsa
