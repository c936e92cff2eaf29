#include <random>

#include <gtest/gtest.h>

#include "gsa/gsa.hpp"

using namespace gsa;

namespace {

SetPartialAction z2swap() {
  GroupPtr G = Group::cyclic(2);
  return SetPartialAction(G, FiniteSpace::make({"1", "2", "3"}), {}, {{G->element(1), PointMap{{0, 1}, {1, 0}}}});
}

SetPartialAction z_shift() {
  GroupPtr Z = Group::integers();
  return SetPartialAction(Z, FiniteSpace::make({"1", "2"}), {}, {{Z->integer(1), PointMap{{0, 1}}}});
}

// Graded ideals found by scanning every subspace of the whole algebra.
std::vector<Subspace> brute_graded_ideals(const FiniteAlgebra& A) {
  std::vector<Subspace> out;
  for_each_subspace(A.ring(), A.dim(), [&](const std::vector<Vec>& rows) {
    Subspace S(A.ring(), A.dim());
    for (auto& r : rows) S.add(r);
    bool ok = true;
    for (auto& v : rows) {
      for (std::size_t i = 0; i < A.dim() && ok; ++i)
        ok = S.contains(A.mul(A.basis(i), v)) && S.contains(A.mul(v, A.basis(i)));
      for (std::size_t i = 0; i < A.dim() && ok; ++i) {
        Vec part = A.zero();
        for (std::size_t j = 0; j < A.dim(); ++j)
          if (A.grade(j) == A.grade(i)) part[j] = v[j];
        ok = S.contains(part);
      }
      if (!ok) break;
    }
    if (ok) out.push_back(S);
    return true;
  });
  return out;
}

// Actions with isotropy give group-algebra blocks, where non-graded ideals exist.
std::vector<SetPartialAction> maximality_family(std::mt19937_64& rng) {
  GroupPtr G = Group::cyclic(2), C3 = Group::cyclic(3);
  std::vector<SetPartialAction> out{
      z2swap(),
      SetPartialAction(G, FiniteSpace::make({"p"}), {}, {{G->element(1), PointMap{{0, 0}}}}),
      SetPartialAction(G, FiniteSpace::make({"p", "q"}), {}, {{G->element(1), PointMap{{0, 0}}}}),
      SetPartialAction(C3, FiniteSpace::make({"p"}), {},
                       {{C3->element(1), PointMap{{0, 0}}}, {C3->element(2), PointMap{{0, 0}}}}),
      SetPartialAction(G, FiniteSpace::make({"p", "q", "r"}), {}, {{G->element(1), PointMap{{0, 0}, {1, 2}, {2, 1}}}}),
  };
  while (out.size() < 10) {
    SetPartialAction a = random_partial_action(rng, 5, 3).action;
    if (enumerate_invariant_subsets(a).size() >= 3 && skew_group_ring(a, Ring::integers_mod(2)).algebra->dim() <= 9)
      out.push_back(a);
  }
  return out;
}

std::vector<PointMap> involutions(std::size_t n) {
  std::vector<PointMap> out;
  for (std::uint64_t m = 0; m < (std::uint64_t(1) << n); ++m) {
    std::vector<std::size_t> pts;
    for (std::size_t x = 0; x < n; ++x)
      if (m >> x & 1) pts.push_back(x);
    std::vector<PointMap> partial{PointMap{}};
    for (auto x : pts) {
      std::vector<PointMap> next;
      for (auto& p : partial) {
        if (p.count(x)) {
          next.push_back(p);
          continue;
        }
        for (auto y : pts)
          if (!p.count(y)) {
            PointMap q = p;
            q[x] = y;
            q[y] = x;
            next.push_back(q);
          }
      }
      partial = next;
    }
    out.insert(out.end(), partial.begin(), partial.end());
  }
  return out;
}

}  // namespace

TEST(IdealLattice, SwapDimensionsPerInvariantSubset) {
  SetPartialAction a = z2swap();
  SkewRing R = skew_group_ring(a, Ring::rationals());
  const std::map<std::string, std::size_t> frozen{{"{}", 0}, {"{3}", 1}, {"{1,2}", 4}, {"{1,2,3}", 5}};
  for (auto& V : enumerate_invariant_subsets(a)) {
    Ideal I = ideal_from_invariant_subset(a, R, V);
    // one basis element 1_x d_g for each x in V with x in X_g
    std::size_t expect = 0;
    for (auto& g : a.support())
      for (auto x : V) expect += sets::contains(a.domain(g), x);
    EXPECT_EQ(I.dim(), expect);
    EXPECT_EQ(I.dim(), frozen.at(a.space()->format(V)));
    EXPECT_EQ(extract_VI(a, R, I.space), V);
  }
}

TEST(IdealLattice, ZeroAndWholeRing) {
  SetPartialAction a = z2swap();
  SkewRing R = skew_group_ring(a, Ring::integers_mod(5));
  const FiniteAlgebra& A = *R.algebra;
  EXPECT_EQ(extract_VI(a, R, Subspace(A.ring(), A.dim())), IndexSet{});
  Subspace all(A.ring(), A.dim());
  for (std::size_t i = 0; i < A.dim(); ++i) all.add(A.basis(i));
  EXPECT_EQ(extract_VI(a, R, all), a.space()->all());
}

TEST(IdealLattice, ClosureOfGenerators) {
  SetPartialAction a = z2swap();
  SkewRing R = skew_group_ring(a, Ring::rationals());
  const FiniteAlgebra& A = *R.algebra;
  GroupElem e = a.group()->identity();
  auto basis_of = [&](std::size_t x) {
    for (std::size_t k = 0; k < R.terms.size(); ++k)
      if (R.terms[k].first == e && R.terms[k].second == x) return A.basis(k);
    ADD_FAILURE();
    return A.zero();
  };
  EXPECT_EQ(ideal_closure(A, {basis_of(2)}), ideal_from_invariant_subset(a, R, {2}));
  Ideal I = ideal_closure(A, {basis_of(0)});
  EXPECT_TRUE(I.contains(ideal_from_invariant_subset(a, R, {0, 1})));
  EXPECT_EQ(extract_VI(a, R, I.space), (IndexSet{0, 1}));
}

TEST(IdealLattice, NonIdealsAreRejected) {
  SetPartialAction a = z2swap();
  SkewRing R = skew_group_ring(a, Ring::rationals());
  const FiniteAlgebra& A = *R.algebra;
  GroupElem e = a.group()->identity();
  Subspace S(A.ring(), A.dim());
  for (std::size_t k = 0; k < R.terms.size(); ++k)
    if (R.terms[k].first == e && R.terms[k].second == 0) S.add(A.basis(k));
  try {
    extract_VI(a, R, S);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::NotAnIdeal);
  }
  try {
    ideal_from_invariant_subset(a, R, {0});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::NotInvariant);
  }
}

TEST(IdealLattice, GradedEnumerationMatchesFullSubspaceScan) {
  std::mt19937_64 rng(81);
  std::vector<SetPartialAction> family{z2swap(), z_shift()};
  while (family.size() < 10) {
    SetPartialAction a = random_partial_action(rng, 4, 3).action;
    if (skew_group_ring(a, Ring::integers_mod(2)).algebra->dim() <= 6) family.push_back(a);
  }
  for (auto& a : family) {
    SkewRing R = skew_group_ring(a, Ring::integers_mod(2));
    auto fast = enumerate_graded_ideals(*R.algebra);
    auto brute = brute_graded_ideals(*R.algebra);
    ASSERT_EQ(fast.size(), brute.size()) << a.describe();
    for (auto& S : brute) {
      bool found = false;
      for (auto& I : fast) found |= I.space == S;
      EXPECT_TRUE(found);
    }
  }
}

TEST(Correspondence, SwapOverTwoFields) {
  for (Ring r : {Ring::integers_mod(2), Ring::integers_mod(5)}) {
    CorrespondenceReport rep = correspondence_check(z2swap(), r, 20, 3);
    EXPECT_EQ(rep.invariant_subsets.size(), 4u);
    EXPECT_EQ(rep.graded_ideals.size(), 4u);
    for (auto& c : rep.checks) {
      EXPECT_TRUE(c.pass) << c.name << " " << c.detail;
    }
  }
}

TEST(Correspondence, TrivialGroupAndShift) {
  GroupPtr T = Group::cyclic(1);
  SetPartialAction triv(T, FiniteSpace::make({"1", "2"}), {}, {});
  CorrespondenceReport rep = correspondence_check(triv, Ring::integers_mod(2));
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.graded_ideals.size(), 4u);
  CorrespondenceReport sh = correspondence_check(z_shift(), Ring::integers_mod(3));
  EXPECT_TRUE(sh.pass);
  EXPECT_EQ(sh.invariant_subsets.size(), 2u);
  EXPECT_EQ(sh.graded_ideals.size(), 2u);
}

TEST(Correspondence, ExhaustiveZ2OnThreePoints) {
  GroupPtr G = Group::cyclic(2);
  std::size_t runs = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<std::string> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(std::to_string(i + 1));
    SpacePtr X = FiniteSpace::make(pts);
    for (auto& m : involutions(n)) {
      SetPartialAction a(G, X, {}, {{G->element(1), m}});
      CorrespondenceReport rep = correspondence_check(a, Ring::integers_mod(2), 5, n);
      for (auto& c : rep.checks) {
        EXPECT_TRUE(c.pass) << c.name << " " << c.detail << "\n" << a.describe();
      }
      ++runs;
    }
  }
  EXPECT_EQ(runs, 21u);
}

TEST(Correspondence, LargestGradedIdealInsideRandomIdeals) {
  std::mt19937_64 rng(82);
  std::size_t sets = 0, strict = 0;
  for (auto& a : maximality_family(rng)) {
    SkewRing R = skew_group_ring(a, Ring::integers_mod(2));
    const FiniteAlgebra& A = *R.algebra;
    auto graded = enumerate_graded_ideals(A);
    for (int k = 0; k < 8; ++k, ++sets) {
      Vec v = A.zero();
      for (std::size_t j = 1 + rng() % 3; j > 0; --j) v[rng() % A.dim()] = A.ring().one();
      Ideal I = ideal_closure(A, {v});
      IndexSet V = extract_VI(a, R, I.space);
      EXPECT_TRUE(is_invariant(a, V));
      Ideal J = ideal_from_invariant_subset(a, R, V);
      EXPECT_TRUE(I.contains(J));
      strict += J.dim() < I.dim();
      for (auto& K : graded) {
        if (I.contains(K)) {
          EXPECT_TRUE(J.contains(K)) << a.describe();
        }
      }
    }
  }
  EXPECT_GE(sets, 50u);
  EXPECT_GT(strict, 0u);
}
