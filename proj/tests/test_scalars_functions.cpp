#include <random>

#include <gtest/gtest.h>

#include "gsa/gsa.hpp"

using namespace gsa;

namespace {

long long mod(long long a, long long m) { return ((a % m) + m) % m; }

}  // namespace

TEST(Ring, ParsesNames) {
  EXPECT_TRUE(Ring::parse("q").is_rational());
  EXPECT_EQ(Ring::parse("f5").modulus(), 5u);
  EXPECT_TRUE(Ring::parse("f7").is_field());
  EXPECT_FALSE(Ring::parse("z6").is_field());
  try {
    Ring::parse("f6");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
  }
  EXPECT_THROW(Ring::parse("r"), Error);
}

TEST(Scalar, RationalArithmeticMatchesFractions) {
  Ring q = Ring::rationals();
  Scalar a = q.parse_value("3/4"), b = q.parse_value("-5/6");
  EXPECT_EQ((a + b).str(), "-1/12");
  EXPECT_EQ((a * b).str(), "-5/8");
  EXPECT_EQ(a.inverse().str(), "4/3");
  EXPECT_EQ((a - a), q.zero());
  EXPECT_THROW(q.zero().inverse(), Error);
}

TEST(Scalar, ModularArithmeticAgreesWithIntegerReduction) {
  std::mt19937_64 rng(11);
  for (long long p : {2, 3, 5, 7, 101}) {
    Ring f = Ring::integers_mod(std::uint64_t(p));
    for (int t = 0; t < 200; ++t) {
      long long x = (long long)(rng() % 1000) - 500, y = (long long)(rng() % 1000) - 500;
      Scalar a = f.from_int(x), b = f.from_int(y);
      EXPECT_EQ((a + b).residue(), std::uint64_t(mod(x + y, p)));
      EXPECT_EQ((a * b).residue(), std::uint64_t(mod(x * y, p)));
      EXPECT_EQ((-a).residue(), std::uint64_t(mod(-x, p)));
      if (!a.is_zero()) {
        EXPECT_TRUE((a * a.inverse()).is_one());
      }
    }
  }
}

TEST(Scalar, RationalsReduceIntoPrimeFields) {
  Ring f5 = Ring::integers_mod(5);
  EXPECT_EQ(f5.parse_value("1/2").residue(), 3u);
  EXPECT_EQ(f5.parse_value("-2/3").residue(), 1u);
  EXPECT_THROW(f5.parse_value("1/5"), Error);
}

TEST(Scalar, MixedRingsAreRejected) {
  try {
    (void)(Ring::rationals().one() + Ring::integers_mod(5).one());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InstanceMismatch);
  }
}

TEST(FnElem, PointwiseAlgebraMatchesTables) {
  std::mt19937_64 rng(3);
  SpacePtr X = FiniteSpace::make({"a", "b", "c", "d", "e"});
  Ring r = Ring::integers_mod(7);
  for (int t = 0; t < 100; ++t) {
    std::vector<long long> u(5), v(5);
    FnElem f(X, r), g(X, r);
    for (std::size_t i = 0; i < 5; ++i) {
      u[i] = (long long)(rng() % 7);
      v[i] = (long long)(rng() % 7);
      f.set(i, r.from_int(u[i]));
      g.set(i, r.from_int(v[i]));
    }
    FnElem s = f + g, p = f * g;
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_EQ(s.at(i).residue(), std::uint64_t((u[i] + v[i]) % 7));
      EXPECT_EQ(p.at(i).residue(), std::uint64_t((u[i] * v[i]) % 7));
    }
    EXPECT_EQ(f * g, g * f);
    EXPECT_EQ(f - f, FnElem(X, r));
  }
}

TEST(FnElem, IndicatorsMultiplyByIntersection) {
  SpacePtr X = FiniteSpace::make({"1", "2", "3", "4"});
  Ring q = Ring::rationals();
  FnElem a = FnElem::indicator(X, q, std::vector<std::string>{"1", "2", "3"});
  FnElem b = FnElem::indicator(X, q, std::vector<std::string>{"2", "3", "4"});
  EXPECT_EQ(a * b, FnElem::indicator(X, q, std::vector<std::string>{"2", "3"}));
  EXPECT_EQ((a * b).support(), X->subset({"2", "3"}));
  EXPECT_EQ(a.str(), "1*1_{1} + 1*1_{2} + 1*1_{3}");
}

TEST(FnElem, ZeroEntriesAreDropped) {
  SpacePtr X = FiniteSpace::make({"x"});
  Ring f3 = Ring::integers_mod(3);
  FnElem f(X, f3);
  f.set(0, f3.from_int(2));
  FnElem g = f + f + f;
  EXPECT_TRUE(g.is_zero());
  EXPECT_TRUE(g.support().empty());
}

TEST(FnElem, LocalUnitFixesEveryElement) {
  std::mt19937_64 rng(5);
  SpacePtr X = FiniteSpace::make({"0", "1", "2", "3", "4", "5"});
  Ring q = Ring::rationals();
  for (int t = 0; t < 50; ++t) {
    std::vector<FnElem> fs;
    for (std::size_t k = 0; k < 1 + rng() % 4; ++k) {
      FnElem f(X, q);
      for (std::size_t i = 0; i < 6; ++i)
        if (rng() % 3 == 0) f.set(i, q.from_int((long long)(rng() % 9) - 4));
      fs.push_back(f);
    }
    FnElem u = local_unit_for(fs);
    for (auto& f : fs) {
      EXPECT_EQ(u * f, f);
      EXPECT_EQ(f * u, f);
    }
    EXPECT_EQ(u * u, u);
  }
}

TEST(FnElem, QuasiInverseIsPointwise) {
  SpacePtr X = FiniteSpace::make({"x", "y", "z"});
  Ring q = Ring::rationals();
  FnElem f(X, q);
  f.set(0, q.parse_value("2/3"));
  f.set(2, q.from_int(-4));
  FnElem g = f.pointwise_quasi_inverse();
  EXPECT_EQ(f * g * f, f);
  EXPECT_EQ(g.at(0).str(), "3/2");
  EXPECT_EQ(g.at(2).str(), "-1/4");
  EXPECT_TRUE(g.at(1).is_zero());
}

TEST(FnElem, DifferentSpacesAreRejected) {
  SpacePtr X = FiniteSpace::make({"a"}), Y = FiniteSpace::make({"a", "b"});
  Ring q = Ring::rationals();
  try {
    (void)(FnElem::indicator(X, q, X->all()) + FnElem::indicator(Y, q, Y->all()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InstanceMismatch);
  }
}

TEST(Sets, MaskRoundTrip) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    std::uint64_t m = rng() % 1024;
    EXPECT_EQ(sets::to_mask(sets::from_mask(m)), m);
  }
  EXPECT_EQ(sets::minus({0, 1, 2, 5}, {1, 5}), (IndexSet{0, 2}));
  EXPECT_TRUE(sets::subset({1, 3}, {0, 1, 2, 3}));
}

TEST(Linalg, RankAndSolveOverTheRationals) {
  Ring q = Ring::rationals();
  auto v = [&](std::vector<long long> xs) {
    Vec out;
    for (auto x : xs) out.push_back(q.from_int(x));
    return out;
  };
  std::vector<Vec> rows{v({1, 2, 3}), v({2, 4, 6}), v({0, 1, 1})};
  EXPECT_EQ(rank(q, rows), 2u);
  auto x = solve(q, {v({1, 0, 1}), v({0, 1, 1})}, v({3, -2, 1}));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0].str(), "3");
  EXPECT_EQ((*x)[1].str(), "-2");
  EXPECT_FALSE(solve(q, {v({1, 0, 1})}, v({1, 1, 1})).has_value());
}

TEST(Linalg, SubspaceCountsMatchGaussianBinomials) {
  // number of subspaces of F_2^3 and F_3^2: 1+7+7+1 and 1+4+1
  for (auto [p, n, want] : std::vector<std::tuple<int, int, int>>{{2, 3, 16}, {3, 2, 6}, {2, 4, 67}}) {
    Ring f = Ring::integers_mod(std::uint64_t(p));
    std::size_t count = 0;
    for_each_subspace(f, std::size_t(n), [&](const std::vector<Vec>&) {
      ++count;
      return true;
    });
    EXPECT_EQ(count, std::size_t(want));
    EXPECT_EQ(count_subspaces(std::uint64_t(p), std::size_t(n)), std::uint64_t(want));
  }
}
