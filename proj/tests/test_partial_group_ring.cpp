#include <random>

#include <gtest/gtest.h>

#include "gsa/gsa.hpp"

using namespace gsa;

namespace {

std::vector<GroupPtr> abelian_groups() {
  return {Group::cyclic(1), Group::cyclic(2), Group::cyclic(3), Group::cyclic(4),
          Group::product(*Group::cyclic(2), *Group::cyclic(2))};
}

PEElem random_pe(std::mt19937_64& rng, const GroupPtr& G, const Ring& r) {
  PEElem p = pe_zero(G, r);
  for (auto& c : p.coeffs)
    if (rng() % 3 == 0) c = r.from_int((long long)(rng() % 7) - 3);
  return p;
}

// Points x of Y_ε and Y_g counted by scanning bit vectors.
std::size_t count_points(const Group& G) {
  std::size_t e = G.index(G.identity()), total = 0;
  for (std::uint64_t y = 0; y < (std::uint64_t(1) << G.order()); ++y) {
    if (!(y >> e & 1)) continue;
    for (std::size_t g = 0; g < G.order(); ++g) total += (y >> g & 1);
  }
  return total;
}

}  // namespace

TEST(PESymbols, UnionProduct) {
  GroupPtr G = Group::cyclic(3);
  Ring q = Ring::rationals();
  for (std::uint64_t e = 0; e < 8; ++e) {
    EXPECT_EQ(pe_mul(pe_symbol(G, q, e), pe_symbol(G, q, e)).coeffs, pe_symbol(G, q, e).coeffs);
    for (std::uint64_t f = 0; f < 8; ++f)
      EXPECT_EQ(pe_mul(pe_symbol(G, q, e), pe_symbol(G, q, f)).coeffs, pe_symbol(G, q, e | f).coeffs);
  }
  std::mt19937_64 rng(91);
  PEElem a = random_pe(rng, G, q);
  EXPECT_EQ(pe_mul(pe_symbol(G, q, 0), a).coeffs, a.coeffs);
  try {
    pe_mul(a, pe_symbol(Group::cyclic(3), q, 1));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::InstanceMismatch);
  }
}

TEST(PESymbols, AlphaTranslatesIndexSets) {
  GroupPtr G = Group::cyclic(3);
  Ring q = Ring::rationals();
  GroupElem g = G->element(1), gi = G->inv(g), e = G->identity();
  PEElem p = pe_symbol(G, q, pe_mask(*G, {e, gi}));
  EXPECT_EQ(alpha_apply(g, p).coeffs, pe_symbol(G, q, pe_mask(*G, {g, e})).coeffs);
  try {
    alpha_apply(g, pe_symbol(G, q, pe_mask(*G, {e})));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::IllFormed);
  }
}

TEST(Psi, CoordinateFunctions) {
  GroupPtr G = Group::cyclic(2);
  Ring q = Ring::rationals();
  SpacePtr Y = y_space(*G);
  ASSERT_EQ(Y->size(), 4u);
  FnElem one = psi_map(pe_symbol(G, q, 0), Y);
  for (std::size_t y = 0; y < 4; ++y) EXPECT_EQ(one.at(y), q.one());
  FnElem qg = psi_map(pe_symbol(G, q, pe_mask(*G, {G->element(1)})), Y);
  EXPECT_EQ(qg.support(), (IndexSet{Y->index_of("01"), Y->index_of("11")}));
}

TEST(Psi, InclusionExclusionInverse) {
  GroupPtr G = Group::cyclic(2);
  Ring q = Ring::rationals();
  SpacePtr Y = y_space(*G);
  GroupElem e = G->identity(), g = G->element(1);
  // the point x_e = 1, x_g = 0
  PEElem p = psi_inverse(G, FnElem::indicator(Y, q, IndexSet{Y->index_of("10")}));
  PEElem expect = pe_symbol(G, q, pe_mask(*G, {e}));
  expect.coeffs[pe_mask(*G, {e, g})] = q.from_int(-1);
  EXPECT_EQ(p.coeffs, expect.coeffs);
  EXPECT_EQ(psi_inverse(G, FnElem::indicator(Y, q, IndexSet{Y->index_of("11")})).coeffs,
            pe_symbol(G, q, pe_mask(*G, {e, g})).coeffs);
  FnElem constant(Y, q);
  for (std::size_t y = 0; y < Y->size(); ++y) constant.set(y, q.one());
  EXPECT_EQ(psi_inverse(G, constant).coeffs, pe_symbol(G, q, 0).coeffs);
}

TEST(Psi, BijectiveAndMultiplicative) {
  std::mt19937_64 rng(92);
  for (auto& G : abelian_groups())
    for (Ring r : {Ring::rationals(), Ring::integers_mod(5)}) {
      SpacePtr Y = y_space(*G);
      std::vector<Vec> imgs;
      for (std::uint64_t m = 0; m < (std::uint64_t(1) << G->order()); ++m)
        imgs.push_back(to_vec(psi_map(pe_symbol(G, r, m), Y)));
      EXPECT_EQ(rank(r, imgs), std::size_t(1) << G->order());
      for (std::size_t y = 0; y < Y->size(); ++y) {
        FnElem f = FnElem::indicator(Y, r, IndexSet{y});
        EXPECT_EQ(psi_map(psi_inverse(G, f), Y), f);
      }
      for (int t = 0; t < 20; ++t) {
        PEElem a = random_pe(rng, G, r), b = random_pe(rng, G, r);
        EXPECT_EQ(psi_map(pe_mul(a, b), Y), psi_map(a, Y) * psi_map(b, Y));
        EXPECT_EQ(psi_inverse(G, psi_map(a, Y)).coeffs, a.coeffs);
      }
    }
}

TEST(PartialGroupRing, DimensionsAndCertificates) {
  // |G| -> (dim A_ε, dim P(G))
  const std::map<std::size_t, std::pair<std::size_t, std::size_t>> frozen{
      {1, {1, 1}}, {2, {2, 3}}, {3, {4, 8}}, {4, {8, 20}}};
  for (auto& G : abelian_groups()) {
    PartialGroupRing P = build_PG(G, Ring::rationals());
    for (auto& c : P.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.detail;
    std::size_t n = G->order();
    EXPECT_EQ(P.a_eps.size(), frozen.at(n).first);
    EXPECT_EQ(P.PG.algebra->dim(), frozen.at(n).second);
    EXPECT_EQ(P.CY.algebra->dim(), count_points(*G));
    EXPECT_EQ(P.Y_eps->size(), P.a_eps.size());
    EXPECT_TRUE(validate_group_action(P.phi).pass);
    EXPECT_TRUE(associativity_check(*P.PG.algebra).pass);
  }
}

TEST(PartialGroupRing, DegreeOneComponentOfZMod2) {
  GroupPtr G = Group::cyclic(2);
  PartialGroupRing P = build_PG(G, Ring::integers_mod(5));
  EXPECT_TRUE(P.pass);
  EXPECT_EQ(P.alpha.ideal(G->element(1)).size(), 1u);
  EXPECT_EQ(P.phi.domain(G->element(1)).size(), 1u);
}

TEST(PartialGroupRing, NonAbelianIsRejected) {
  try {
    build_PG(Group::symmetric3(), Ring::rationals());
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::NonAbelian);
  }
}
