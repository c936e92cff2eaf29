#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "gsa/isomorphisms.hpp"
#include "gsa/skew_ring.hpp"

namespace gsa {

// Two-sided ideal of a finite algebra, stored as an echelonized subspace.
struct Ideal {
  Subspace space;

  std::size_t dim() const { return space.dim(); }
  bool contains(const Ideal& o) const { return o.space.subset_of(space); }
  friend bool operator==(const Ideal& a, const Ideal& b) { return a.space == b.space; }
};

// First basis product that leaves the span, if any.
inline std::optional<std::string> ideal_violation(const FiniteAlgebra& A, const Subspace& S) {
  for (auto& v : S.basis())
    for (std::size_t i = 0; i < A.dim(); ++i) {
      if (!S.contains(A.mul(A.basis(i), v))) return A.label(i) + " * (" + A.format(v) + ")";
      if (!S.contains(A.mul(v, A.basis(i)))) return "(" + A.format(v) + ") * " + A.label(i);
    }
  return std::nullopt;
}

inline bool is_graded_subspace(const FiniteAlgebra& A, const Subspace& S) {
  for (auto& v : S.basis())
    for (auto& [g, part] : A.decompose(v))
      if (!S.contains(part)) return false;
  return true;
}

inline Ideal ideal_closure(const FiniteAlgebra& A, const std::vector<Vec>& gens) {
  Subspace S(A.ring(), A.dim());
  std::vector<Vec> queue;
  for (auto& g : gens)
    if (S.add(g)) queue.push_back(g);
  while (!queue.empty()) {
    Vec v = queue.back();
    queue.pop_back();
    for (std::size_t i = 0; i < A.dim(); ++i)
      for (auto& w : {A.mul(A.basis(i), v), A.mul(v, A.basis(i))})
        if (S.add(w)) queue.push_back(w);
  }
  require(!ideal_violation(A, S), ErrorKind::IllFormed, "ideal saturation did not reach a fixed point");
  return Ideal{S};
}

// C_K(V) ⋊ G inside C_K(X) ⋊ G: basis 1_x d_g with x in V ∩ X_g.
inline Ideal ideal_from_invariant_subset(const SetPartialAction& a, const SkewRing& R, const IndexSet& V) {
  if (auto w = invariance_witness(a, V))
    fail(ErrorKind::NotInvariant, "phi_" + a.group()->format(w->first) + " moves " + a.space()->label(w->second) +
                                      " out of " + a.space()->format(V));
  const FiniteAlgebra& A = *R.algebra;
  Subspace S(A.ring(), A.dim());
  for (std::size_t k = 0; k < R.terms.size(); ++k)
    if (sets::contains(V, R.terms[k].second)) S.add(A.basis(k));
  if (auto v = ideal_violation(A, S)) fail(ErrorKind::IllFormed, "not an ideal: " + *v);
  return Ideal{S};
}

// Union of supports of the identity-graded part.
inline IndexSet extract_VI(const SetPartialAction& a, const SkewRing& R, const Subspace& I) {
  const FiniteAlgebra& A = *R.algebra;
  if (auto v = ideal_violation(A, I)) fail(ErrorKind::NotAnIdeal, *v);
  GroupElem e = a.group()->identity();
  std::vector<bool> keep(A.dim(), false);
  for (auto k : A.component(e)) keep[k] = true;
  Subspace eps = I.restricted_to(keep);
  IndexSet V;
  for (auto& v : eps.basis())
    for (std::size_t k = 0; k < v.size(); ++k)
      if (!v[k].is_zero()) V.push_back(R.terms[k].second);
  V = sets::normalized(V);
  require(is_invariant(a, V), ErrorKind::NotInvariant, "V_I is not invariant");
  return V;
}

// All graded ideals, by enumerating subspaces grade by grade (finite fields only).
inline std::vector<Ideal> enumerate_graded_ideals(const FiniteAlgebra& A, std::size_t budget = 2000000) {
  require(!A.ring().is_rational() && A.ring().is_field(), ErrorKind::NeedsField,
          "graded ideal enumeration needs a finite field");
  auto grades = A.grades_present();
  std::vector<std::vector<Subspace>> per_grade;
  std::uint64_t total = 1;
  for (auto& g : grades) {
    const auto& comp = A.component(g);
    std::uint64_t cnt = count_subspaces(A.ring().modulus(), comp.size());
    total *= cnt;
    if (total > budget) fail(ErrorKind::OracleBudget, "too many graded subspaces to enumerate");
    std::vector<Subspace> subs;
    for_each_subspace(A.ring(), comp.size(), [&](const std::vector<Vec>& rows) {
      Subspace S(A.ring(), A.dim());
      for (auto& r : rows) {
        Vec v = A.zero();
        for (std::size_t t = 0; t < comp.size(); ++t) v[comp[t]] = r[t];
        S.add(v);
      }
      subs.push_back(S);
      return true;
    });
    per_grade.push_back(std::move(subs));
  }
  std::vector<Ideal> out;
  std::vector<std::size_t> pick(grades.size(), 0);
  while (true) {
    Subspace S(A.ring(), A.dim());
    for (std::size_t i = 0; i < grades.size(); ++i)
      for (auto& v : per_grade[i][pick[i]].basis()) S.add(v);
    if (!ideal_violation(A, S)) out.push_back(Ideal{S});
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == per_grade[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

// Graded ideals generated by sets of basis elements (every field; complete up to the generator budget).
inline std::vector<Ideal> graded_ideals_from_basis_generators(const FiniteAlgebra& A, std::size_t max_dim = 16) {
  require(A.dim() <= max_dim, ErrorKind::OracleBudget, "too many basis generators");
  std::vector<Ideal> out;
  for (std::uint64_t m = 0; m < (std::uint64_t(1) << A.dim()); ++m) {
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < A.dim(); ++i)
      if (m >> i & 1) gens.push_back(A.basis(i));
    Ideal I = ideal_closure(A, gens);
    bool seen = false;
    for (auto& J : out)
      if (J == I) seen = true;
    if (!seen) out.push_back(I);
  }
  return out;
}

struct CorrespondenceReport {
  std::vector<IndexSet> invariant_subsets;
  std::vector<Ideal> graded_ideals;
  std::vector<std::size_t> matching;  // invariant subset i -> graded ideal matching[i]
  std::vector<Check> checks;
  bool pass = false;
};

inline CorrespondenceReport correspondence_check(const SetPartialAction& a, const Ring& ring,
                                                 std::size_t samples = 20, std::uint64_t seed = 1) {
  CorrespondenceReport rep;
  SkewRing R = skew_group_ring(a, ring);
  const FiniteAlgebra& A = *R.algebra;
  rep.invariant_subsets = enumerate_invariant_subsets(a);
  rep.graded_ideals =
      ring.is_rational() ? graded_ideals_from_basis_generators(A) : enumerate_graded_ideals(A);
  Check injective{"V -> C_K(V)xG injective", true, ""}, onto{"every graded ideal is hit", true, ""};
  Check round{"V_(C_K(V)xG) = V", true, ""};
  std::vector<bool> hit(rep.graded_ideals.size(), false);
  for (auto& V : rep.invariant_subsets) {
    Ideal I = ideal_from_invariant_subset(a, R, V);
    std::size_t k = 0;
    while (k < rep.graded_ideals.size() && !(rep.graded_ideals[k] == I)) ++k;
    if (k == rep.graded_ideals.size()) {
      onto.pass = false;
      onto.detail = "ideal of " + a.space()->format(V) + " missing from the enumeration";
      rep.matching.push_back(k);
      continue;
    }
    if (hit[k]) {
      injective.pass = false;
      injective.detail = a.space()->format(V);
    }
    hit[k] = true;
    rep.matching.push_back(k);
    if (extract_VI(a, R, I.space) != V) {
      round.pass = false;
      round.detail = a.space()->format(V);
    }
  }
  for (std::size_t k = 0; k < hit.size(); ++k)
    if (!hit[k]) {
      onto.pass = false;
      onto.detail = "graded ideal of dimension " + std::to_string(rep.graded_ideals[k].dim()) + " has no V";
    }
  Check counts{"counts", rep.invariant_subsets.size() == rep.graded_ideals.size(),
               std::to_string(rep.invariant_subsets.size()) + " invariant subsets, " +
                   std::to_string(rep.graded_ideals.size()) + " graded ideals"};
  rep.checks = {counts, injective, onto, round};

  // Maximality: for sampled ideals I, C_K(V_I)xG ⊆ I and contains every graded ideal inside I.
  Check maximal{"C_K(V_I)xG is the largest graded ideal in I", true, ""};
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples && A.dim() > 0; ++s) {
    std::vector<Vec> gens;
    std::size_t ng = 1 + rng() % 2;
    for (std::size_t t = 0; t < ng; ++t) {
      Vec v = A.zero();
      for (std::size_t i = 0; i < A.dim(); ++i)
        if (rng() % 3 == 0) v[i] = ring.from_int((long long)(rng() % 5));
      gens.push_back(v);
    }
    Ideal I = ideal_closure(A, gens);
    IndexSet V = extract_VI(a, R, I.space);
    Ideal J = ideal_from_invariant_subset(a, R, V);
    if (!I.contains(J)) {
      maximal.pass = false;
      maximal.detail = "C_K(V_I)xG not inside I for V_I=" + a.space()->format(V);
    }
    for (auto& K : rep.graded_ideals)
      if (I.contains(K) && !J.contains(K)) {
        maximal.pass = false;
        maximal.detail = "a graded ideal inside I escapes C_K(V_I)xG";
      }
  }
  rep.checks.push_back(maximal);
  rep.pass = all_pass(rep.checks);
  return rep;
}

}  // namespace gsa
