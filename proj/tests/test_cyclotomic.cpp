#include <gtest/gtest.h>

#include <random>

#include "tatebc/cyclotomic.hpp"

using namespace tatebc;

TEST(Cyclotomic, PhiSmallValues) {
  EXPECT_EQ(CyclotomicRing::cyclotomic_poly(1), (std::vector<i64>{-1, 1}));
  EXPECT_EQ(CyclotomicRing::cyclotomic_poly(3), (std::vector<i64>{1, 1, 1}));
  EXPECT_EQ(CyclotomicRing::cyclotomic_poly(4), (std::vector<i64>{1, 0, 1}));
  EXPECT_EQ(CyclotomicRing::cyclotomic_poly(6), (std::vector<i64>{1, -1, 1}));
  // Phi_105 is the first with a coefficient of absolute value 2
  auto p105 = CyclotomicRing::cyclotomic_poly(105);
  EXPECT_EQ(p105.size(), 49u);
  EXPECT_EQ(*std::min_element(p105.begin(), p105.end()), -2);
}

TEST(Cyclotomic, DegreeIsEulerPhi) {
  for (u64 M = 1; M <= 120; ++M) EXPECT_EQ(static_cast<u64>(cyclotomic_ring(M)->degree()), euler_phi(M)) << M;
}

TEST(Cyclotomic, Zeta3PlusZeta3SquaredIsMinusOne) {
  auto z = CyclotomicInt::root(3, 1) + CyclotomicInt::root(3, 2);
  EXPECT_EQ(z, CyclotomicInt::integer(-1));
  i64 v;
  ASSERT_TRUE(z.as_integer(v));
  EXPECT_EQ(v, -1);
}

TEST(Cyclotomic, FullRootSumVanishes) {
  CyclotomicInt s(7);
  for (int e = 0; e <= 6; ++e) s += CyclotomicInt::root(7, e);
  EXPECT_TRUE(s.is_zero());
  RootSum r(7);
  for (int e = 0; e <= 6; ++e) r.add(e);
  EXPECT_TRUE(r.value().is_zero());
}

TEST(Cyclotomic, ConjTimesSelfIsOne) {
  auto z = CyclotomicInt::root(63, 1);
  EXPECT_EQ(z.conj() * z, CyclotomicInt::integer(1));
}

TEST(Cyclotomic, RootOfUnityNormalization) {
  EXPECT_EQ(RootOfUnity(63, 21), RootOfUnity(3, 1));
  EXPECT_EQ(RootOfUnity(10, 0), RootOfUnity(1, 0));
  EXPECT_EQ(RootOfUnity(6, 3) * RootOfUnity(4, 1), RootOfUnity(4, 3));
  EXPECT_EQ(CyclotomicInt::root(RootOfUnity(63, 21)), CyclotomicInt::root(63, 21));
}

TEST(Cyclotomic, EmbeddingCommutesWithMultiplication) {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 200; ++it) {
    u64 Mp = 1 + rng() % 12, m = 1 + rng() % 6;
    i64 a = static_cast<i64>(rng() % Mp), b = static_cast<i64>(rng() % Mp);
    auto x = CyclotomicInt::root(Mp, a), y = CyclotomicInt::root(Mp, b);
    EXPECT_EQ((x * y).embed(Mp * m), x.embed(Mp * m) * y.embed(Mp * m));
    EXPECT_EQ(x * y, CyclotomicInt::root(Mp, a + b));
  }
}

TEST(Cyclotomic, MixedConductorsUseLcm) {
  auto a = CyclotomicInt::root(4, 1);  // i
  auto b = CyclotomicInt::root(6, 1);
  auto c = a * b;
  EXPECT_EQ(c.conductor(), 12u);
  EXPECT_EQ(c, CyclotomicInt::root(12, 5));
}

namespace {
CyclotomicInt random_elem(std::mt19937_64& rng, u64 M) {
  std::vector<i64> v(M);
  for (auto& x : v) x = static_cast<i64>(rng() % 7) - 3;
  return CyclotomicInt(M, v);
}
}  // namespace

TEST(CyclotomicProperty, RingLawsAndConjInvolution) {
  std::mt19937_64 rng(11);
  for (u64 M : {1u, 2u, 5u, 12u, 15u, 21u, 63u}) {
    for (int it = 0; it < 30; ++it) {
      auto a = random_elem(rng, M), b = random_elem(rng, M), c = random_elem(rng, M);
      ASSERT_EQ(a * b, b * a);
      ASSERT_EQ((a * b) * c, a * (b * c));
      ASSERT_EQ(a * (b + c), a * b + a * c);
      ASSERT_EQ(a.conj().conj(), a);
      ASSERT_EQ((a * b).conj(), a.conj() * b.conj());
      ASSERT_EQ((a + b).conj(), a.conj() + b.conj());
    }
  }
}

TEST(Cyclotomic, GaloisAction) {
  auto z = CyclotomicInt::root(7, 1) + CyclotomicInt::root(7, 2) + CyclotomicInt::root(7, 4);
  EXPECT_EQ(z.galois(2), z);
  EXPECT_NE(z.galois(3), z);
  EXPECT_EQ(z + z.galois(3), CyclotomicInt::integer(-1));
}

TEST(Cyclotomic, DivExact) {
  auto z = 6 * CyclotomicInt::root(9, 2);
  EXPECT_EQ(z.div_exact(3), 2 * CyclotomicInt::root(9, 2));
  EXPECT_THROW(z.div_exact(4), VerificationFailure);
}
