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

SkewRingElem random_skew(std::mt19937_64& rng, const AlgPartialAction& act) {
  const SetPartialAction& a = act.base();
  SkewRingElem x;
  for (auto& g : a.support()) {
    FnElem f(a.space(), act.ring());
    for (auto p : a.domain(g))
      if (rng() % 2) f.set(p, act.ring().from_int((long long)(rng() % 5) - 2));
    x = skew_add(x, skew_term(act, g, f));
  }
  return x;
}

// K[t]/(t^2) with the trivial action of G: every coefficient ideal is the whole algebra.
AlgebraicPartialAction dual_numbers(const GroupPtr& G, const Ring& r) {
  auto base = std::make_shared<const FiniteAlgebra>(
      r, G, std::vector<std::string>{"1", "t"}, std::vector<GroupElem>(2, G->identity()),
      [r](std::size_t i, std::size_t j) {
        Sparse s;
        if (i + j <= 1) s.emplace_back(i + j, r.one());
        return s;
      });
  AlgebraicPartialAction act{base, G, {}, {}};
  for (auto& g : G->elements()) {
    act.ideals[g] = {0, 1};
    act.alpha[g] = {{0, unit_vec(r, 2, 0)}, {1, unit_vec(r, 2, 1)}};
  }
  return act;
}

}  // namespace

TEST(SkewMul, WorkedExamples) {
  SetPartialAction a = z2swap();
  Ring q = Ring::rationals();
  AlgPartialAction act = induce_on_functions(a, q);
  const Group& G = *a.group();
  GroupElem g = G.element(1), e = G.identity();
  FnElem Xg = act.indicator(a.domain(g));
  // (1_{X_g} d_g)(1_{X_g^-1} d_g^-1) = 1_{X_g} d_e
  EXPECT_EQ(skew_mul(act, skew_term(act, g, Xg), skew_term(act, G.inv(g), act.indicator(a.domain(G.inv(g))))),
            skew_term(act, e, Xg));
  // (1_{1} d_g)(1_{1} d_g) = 0
  FnElem one = act.indicator({0});
  EXPECT_TRUE(skew_mul(act, skew_term(act, g, one), skew_term(act, g, one)).is_zero());
  // (1_{2} d_g)(1_{1} d_g) = 1_{2} d_e
  EXPECT_EQ(skew_mul(act, skew_term(act, g, act.indicator({1})), skew_term(act, g, one)),
            skew_term(act, e, act.indicator({1})));
  // the identity component is C_R(X)
  FnElem f = act.indicator({0, 2}), h = act.indicator({2});
  EXPECT_EQ(skew_mul(act, skew_term(act, e, f), skew_term(act, e, h)), skew_term(act, e, f * h));
}

TEST(SkewMul, CoefficientsOutsideTheIdealAreRejected) {
  SetPartialAction a = z2swap();
  AlgPartialAction act = induce_on_functions(a, Ring::rationals());
  try {
    skew_term(act, a.group()->element(1), act.indicator({2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IllFormed);
  }
}

TEST(SkewMul, AgreesWithTheStructureConstants) {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 30; ++t) {
    SetPartialAction a = random_partial_action(rng).action;
    Ring r = t % 2 ? Ring::rationals() : Ring::integers_mod(5);
    AlgPartialAction act = induce_on_functions(a, r);
    SkewRing R = skew_group_ring(a, r);
    for (int k = 0; k < 10; ++k) {
      SkewRingElem x = random_skew(rng, act), y = random_skew(rng, act);
      EXPECT_EQ(skew_to_vec(R, skew_mul(act, x, y)), R.algebra->mul(skew_to_vec(R, x), skew_to_vec(R, y)));
      EXPECT_EQ(skew_from_vec(R, a.space(), skew_to_vec(R, x)), x);
    }
  }
}

TEST(SkewRing, AssociativeAndGraded) {
  std::mt19937_64 rng(72);
  for (int t = 0; t < 20; ++t) {
    SetPartialAction a = random_partial_action(rng, 5, 4).action;
    SkewRing R = skew_group_ring(a, Ring::rationals());
    EXPECT_TRUE(associativity_check(*R.algebra).pass);
    const FiniteAlgebra& A = *R.algebra;
    for (std::size_t i = 0; i < A.dim(); ++i)
      for (std::size_t j = 0; j < A.dim(); ++j) {
        Vec p = A.mul(A.basis(i), A.basis(j));
        if (!is_zero(p)) {
          EXPECT_EQ(*A.grade_of(p), A.grading()->mul(A.grade(i), A.grade(j)));
        }
      }
  }
  EXPECT_TRUE(associativity_check(*skew_group_ring(z2swap(), Ring::rationals()).algebra).pass);
}

TEST(SkewRing, FunctionActionVerifies) {
  std::mt19937_64 rng(73);
  for (int t = 0; t < 20; ++t) {
    SetPartialAction a = random_partial_action(rng).action;
    EXPECT_TRUE(all_pass(function_action(a, Ring::integers_mod(3)).verify()));
  }
}

TEST(Prop36, SwapAndShift) {
  SetPartialAction a = z2swap();
  for (auto& U : enumerate_invariant_subsets(a))
    for (Ring r : {Ring::rationals(), Ring::integers_mod(5)}) {
      Prop36Result res = prop36(a, U, r);
      for (auto& c : res.checks) {
        EXPECT_TRUE(c.pass) << c.name << " " << c.detail;
      }
    }
  SetPartialAction s = z_shift();
  Prop36Result res = prop36(s, s.space()->all(), Ring::rationals());
  EXPECT_TRUE(res.pass);
  EXPECT_EQ(res.skew.algebra->dim(), 4u);
  std::vector<std::size_t> dims;
  for (auto& [g, d] : graded_dims(*res.skew.algebra)) dims.push_back(d);
  std::sort(dims.begin(), dims.end());
  EXPECT_EQ(dims, (std::vector<std::size_t>{1, 1, 2}));
}

TEST(Prop36, RandomInstances) {
  std::mt19937_64 rng(74);
  for (int t = 0; t < 8; ++t) {
    SetPartialAction a = random_partial_action(rng, 4, 4).action;
    for (auto& U : enumerate_invariant_subsets(a)) {
      Prop36Result res = prop36(a, U, Ring::rationals(), 20000, 3);
      for (auto& c : res.checks) {
        EXPECT_TRUE(c.pass) << c.name << " " << c.detail << "\n" << a.describe();
      }
    }
  }
}

TEST(Canonicalize, EpsilonsCollapse) {
  SetPartialAction a = z2swap();
  Ring q = Ring::rationals();
  AlgPartialAction act = induce_on_functions(a, q);
  const Group& G = *a.group();
  GroupElem g = G.element(1);
  SGElem s = sg_canonical(G, {g}, G.identity());
  FnElem f = act.indicator({0, 1});
  EXPECT_EQ(canonicalize_sg_terms(act, {{s, f}}), skew_term(act, G.identity(), f));
  // generators of N cancel: a d_s - a d_t with s <= t
  SGElem t = sg_bracket(G, G.identity());
  ASSERT_TRUE(sg_leq(G, s, t));
  EXPECT_TRUE(canonicalize_sg_terms(act, {{s, f}, {t, f.scaled(q.from_int(-1))}}).is_zero());
  // and inside the quotient the two raw elements share a class
  auto sq = sg_quotient(a, q);
  for (auto x : a.domain(g)) {
    EXPECT_EQ(sq->q.class_of[*sq->find(s, x)], sq->q.class_of[*sq->find(t, x)]);
  }
}

TEST(Canonicalize, BisectionTermsBecomeFunctions) {
  SetPartialAction a = z2swap();
  Ring q = Ring::rationals();
  FiniteGroupoid g = transformation_groupoid(a);
  GroupElem one = a.group()->element(1);
  Bisection B{*transformation_arrow(g, one, 0), *transformation_arrow(g, one, 1)};
  FnElem f = FnElem::indicator(a.space(), q, IndexSet{0, 1});
  SteinbergElem out = canonicalize_bisection_terms(g, g, {{B, f}});
  EXPECT_EQ(out, steinberg_indicator(g, q, B));
}

TEST(VerifyIso, SignFlipIsCaught) {
  FiniteGroupoid g = transformation_groupoid(z2swap());
  Thm26Result res = thm26(g, g.units()->all(), Ring::rationals());
  ASSERT_TRUE(res.pass);
  GradedHom bad = res.f;
  bad.images[3] = scale(bad.images[3], Ring::rationals().from_int(-1));
  IsoReport r = verify_graded_iso(bad);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.multiplicative);
  EXPECT_FALSE(r.witness.empty());
  EXPECT_TRUE(verify_graded_iso(identity_hom(res.steinberg)).pass);
}

TEST(Regularity, FunctionSkewRingsAreGradedRegular) {
  std::mt19937_64 rng(75);
  std::vector<SetPartialAction> family{z2swap(), z_shift()};
  for (int t = 0; t < 15; ++t) family.push_back(random_partial_action(rng).action);
  for (auto& a : family)
    for (Ring r : {Ring::rationals(), Ring::integers_mod(5)}) {
      SkewRing R = skew_group_ring(a, r);
      const FiniteAlgebra& A = *R.algebra;
      for (std::size_t i = 0; i < A.dim(); ++i) {
        auto y = graded_quasi_inverse(A, A.basis(i));
        ASSERT_TRUE(y.has_value()) << A.label(i);
        EXPECT_EQ(A.mul(A.mul(A.basis(i), *y), A.basis(i)), A.basis(i));
        EXPECT_EQ(A.grade_of(*y).value_or(A.grading()->inv(A.grade(i))), A.grading()->inv(A.grade(i)));
      }
    }
}

TEST(Regularity, DualNumberComponentIsRejected) {
  for (Ring r : {Ring::rationals(), Ring::integers_mod(5)}) {
    GroupPtr G = Group::cyclic(2);
    AlgebraicPartialAction act = dual_numbers(G, r);
    EXPECT_TRUE(all_pass(act.verify()));
    EXPECT_FALSE(regular_in_ideal(*act.base, {0, 1}, act.base->basis(1)).has_value());
    SkewRing R = build_skew_ring(act);
    const FiniteAlgebra& A = *R.algebra;
    EXPECT_EQ(A.dim(), 4u);
    EXPECT_TRUE(associativity_check(A).pass);
    for (std::size_t i = 0; i < A.dim(); ++i) {
      bool t_term = R.terms[i].second == 1;
      EXPECT_EQ(graded_quasi_inverse(A, A.basis(i)).has_value(), !t_term) << A.label(i);
    }
  }
}

TEST(Regularity, NeedsAField) {
  SkewRing R = skew_group_ring(z2swap(), Ring::integers_mod(4));
  try {
    graded_quasi_inverse(*R.algebra, R.algebra->basis(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NeedsField);
  }
}
