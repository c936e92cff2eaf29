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

// Graded bisections by testing every subset of arrows.
std::size_t brute_graded_bisections(const FiniteGroupoid& g) {
  std::size_t n = g.size(), count = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t(1) << n); ++m) {
    IndexSet b = sets::from_mask(m);
    if (b.empty()) {
      ++count;
      continue;
    }
    bool ok = true;
    for (auto a : b)
      for (auto c : b)
        if (a != c && (g.r(a) == g.r(c) || g.d(a) == g.d(c) || g.grade(a) != g.grade(c))) ok = false;
    count += ok;
  }
  return count;
}

}  // namespace

TEST(TransformationGroupoid, SwapHasFiveArrows) {
  SetPartialAction a = z2swap();
  FiniteGroupoid g = transformation_groupoid(a);
  EXPECT_EQ(g.size(), 5u);
  EXPECT_EQ(g.arrow_space()->labels(), (std::vector<std::string>{"(0,1)", "(0,2)", "(0,3)", "(1,1)", "(1,2)"}));
  EXPECT_TRUE(all_pass(g.verify()));
}

TEST(TransformationGroupoid, IntegerShiftHasFourArrows) {
  FiniteGroupoid g = transformation_groupoid(z_shift());
  EXPECT_EQ(g.size(), 4u);
  EXPECT_TRUE(all_pass(g.verify()));
}

TEST(TransformationGroupoid, CompositionFollowsTheGroup) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 40; ++t) {
    SetPartialAction a = random_partial_action(rng).action;
    const Group& G = *a.group();
    FiniteGroupoid g = transformation_groupoid(a);
    EXPECT_TRUE(all_pass(g.verify()));
    for (std::size_t p = 0; p < g.size(); ++p) {
      EXPECT_EQ(g.d(p), *a.apply(G.inv(g.grade(p)), g.r(p)));
      for (std::size_t q = 0; q < g.size(); ++q) {
        auto c = g.compose(p, q);
        EXPECT_EQ(c.has_value(), g.d(p) == g.r(q));
        if (!c) continue;
        // (g,x)(h,y) = (gh,x)
        EXPECT_EQ(g.grade(*c), G.mul(g.grade(p), g.grade(q)));
        EXPECT_EQ(g.r(*c), g.r(p));
        EXPECT_EQ(transformation_arrow(g, G.mul(g.grade(p), g.grade(q)), g.r(p)), c);
      }
    }
  }
}

TEST(TransformationGroupoid, InvariantUnitSetsMatchTheAction) {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 40; ++t) {
    SetPartialAction a = random_partial_action(rng).action;
    FiniteGroupoid g = transformation_groupoid(a);
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << a.space()->size()); ++m)
      EXPECT_EQ(g.is_invariant(sets::from_mask(m)), is_invariant(a, sets::from_mask(m)));
  }
}

TEST(Groupoid, ConvolutionOfIndicators) {
  SetPartialAction a = z2swap();
  FiniteGroupoid g = transformation_groupoid(a);
  Ring q = Ring::rationals();
  GroupElem one = a.group()->element(1), e = a.group()->identity();
  auto arrow = [&](const GroupElem& h, std::size_t x) { return *transformation_arrow(g, h, x); };
  SteinbergElem f = steinberg_indicator(g, q, {arrow(one, 0)});
  SteinbergElem h = steinberg_indicator(g, q, {arrow(one, 1)});
  EXPECT_EQ(convolve(g, f, h), steinberg_indicator(g, q, {arrow(e, 0)}));
  EXPECT_TRUE(convolve(g, f, f).is_zero());
}

TEST(Groupoid, RestrictionToInvariantUnits) {
  FiniteGroupoid g = transformation_groupoid(z2swap());
  FiniteGroupoid r = restrict_groupoid(g, {0, 1});
  EXPECT_EQ(r.size(), 4u);
  EXPECT_TRUE(all_pass(r.verify()));
  for (std::size_t a = 0; a < r.size(); ++a) {
    EXPECT_EQ(r.label(a), g.label(r.origin(a)));
  }
  try {
    restrict_groupoid(g, {0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInvariant);
  }
}

TEST(Groupoid, BrokenDataIsRejected) {
  GroupPtr G = Group::cyclic(2);
  SpacePtr U = FiniteSpace::make({"x", "y"});
  // an arrow x <- y without its inverse
  try {
    FiniteGroupoid(G, U, {"ix", "iy", "a"}, {0, 1, 0}, {0, 1, 1}, {G->identity(), G->identity(), G->element(1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IllFormed);
  }
}

TEST(Bisections, EnumerationMatchesBruteForce) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 40; ++t) {
    FiniteGroupoid g = transformation_groupoid(random_partial_action(rng).action);
    if (g.size() > 16) continue;
    auto bs = bisection::enumerate_graded(g);
    EXPECT_EQ(bs.size(), brute_graded_bisections(g));
    for (auto& b : bs) {
      EXPECT_TRUE(bisection::is_bisection(g, b));
    }
  }
}

TEST(Bisections, ProductsAndInversesStayBisections) {
  std::mt19937_64 rng(54);
  for (int t = 0; t < 30; ++t) {
    FiniteGroupoid g = transformation_groupoid(random_partial_action(rng).action);
    auto bs = bisection::enumerate_graded(g);
    for (int k = 0; k < 50; ++k) {
      const Bisection& u = bs[rng() % bs.size()];
      const Bisection& v = bs[rng() % bs.size()];
      Bisection uv = bisection::product(g, u, v);
      EXPECT_TRUE(bisection::is_bisection(g, uv));
      EXPECT_EQ(bisection::product(g, bisection::product(g, u, bisection::inverse(g, u)), u), u);
      if (!u.empty() && !v.empty() && !uv.empty()) {
        EXPECT_EQ(*bisection::grade_of(g, uv), g.grading()->mul(*bisection::grade_of(g, u), *bisection::grade_of(g, v)));
      }
    }
  }
}

TEST(Bisections, PiActionIsAPartialAction) {
  std::mt19937_64 rng(55);
  for (int t = 0; t < 20; ++t) {
    SetPartialAction a = random_partial_action(rng).action;
    FiniteGroupoid g = transformation_groupoid(a);
    auto bs = bisection::enumerate_graded(g);
    if (bs.size() > 300) continue;
    for (auto& U : enumerate_invariant_subsets(a)) {
      auto act = pi_action(g, U, bs);
      ActionReport r = validate_sg_action(act);
      EXPECT_TRUE(r.pass) << r.axiom << ": " << r.witness;
    }
  }
}

TEST(ExelAction, InducedActionOfTheExelSemigroupIsValid) {
  std::mt19937_64 rng(56);
  for (int t = 0; t < 20; ++t) {
    SetPartialAction a = random_partial_action(rng).action;
    auto act = induce_sg_action(a, sg_support_elements(a));
    ActionReport r = validate_sg_action(act);
    EXPECT_TRUE(r.pass) << r.axiom << ": " << r.witness;
  }
}

TEST(Effectiveness, IsotropyDecides) {
  EXPECT_TRUE(is_effective(transformation_groupoid(z2swap())));
  EXPECT_TRUE(is_strongly_effective(transformation_groupoid(z2swap())));
  GroupPtr G = Group::cyclic(2);
  SetPartialAction fixing(G, FiniteSpace::make({"p", "q"}), {}, {{G->element(1), PointMap{{0, 0}}}});
  FiniteGroupoid g = transformation_groupoid(fixing);
  EXPECT_FALSE(is_effective(g));
  EXPECT_EQ(iso_group(g, 0).size(), 2u);
  EXPECT_FALSE(is_strongly_effective(g));
  EXPECT_FALSE(is_effective(group_as_groupoid(G)));
}
