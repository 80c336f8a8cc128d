#include <gtest/gtest.h>

#include <map>
#include <set>

#include "tatebc/fields.hpp"

using namespace tatebc;

namespace {

// naive power by repeated multiplication, independent of the log shortcut
FieldElem slow_pow(const FieldTower& T, FieldElem x, u64 e) {
  FieldElem r = T.one();
  for (u64 i = 0; i < e; ++i) r = T.mul(r, x);
  return r;
}

}  // namespace

TEST(BuildTower, RejectsBadParameters) {
  EXPECT_THROW(build_tower(2, 1, 1, 1), ConstraintViolation);
  EXPECT_THROW(build_tower(2, 1, 2, 2), ConstraintViolation);
  EXPECT_THROW(build_tower(3, 1, 3, 3), ConstraintViolation);
  EXPECT_THROW(build_tower(2, 1, 3, 3), ConstraintViolation);
  EXPECT_THROW(build_tower(4, 1, 2, 3), ConstraintViolation);
}

TEST(BuildTower, F64SubfieldF4) {
  auto T = build_tower(2, 1, 2, 3);
  EXPECT_EQ(T->top_size(), 64u);
  EXPECT_EQ(T->group_order(), 63u);
  // generator has order exactly 63
  for (u64 d : divisors(63))
    if (d < 63) {
      EXPECT_NE(T->pow(T->gen(), d), T->one());
    }
  std::set<u32> byTest, byIndex;
  for (u64 e = 0; e < 63; ++e) {
    FieldElem x = T->from_log(e);
    if (slow_pow(*T, x, 4) == x) byTest.insert(x.v);
    if (e % 21 == 0) byIndex.insert(x.v);
    EXPECT_EQ(T->in_subfield(x, 2), e % 21 == 0);
  }
  EXPECT_EQ(byTest, byIndex);
  EXPECT_EQ(byTest.size(), 3u);
}

TEST(BuildTower, F3To10Cardinality) {
  auto T = build_tower(3, 1, 2, 5);
  EXPECT_EQ(T->top_size(), 59049u);
  EXPECT_EQ(T->group_order(), 59048u);
  // every nonzero code has a log and the logs are a bijection
  std::vector<char> seen(59048, 0);
  for (u32 c = 1; c < 59049; ++c) {
    FieldElem x = T->from_code(c);
    ASSERT_FALSE(seen[x.v]);
    seen[x.v] = 1;
  }
}

TEST(Fields, ZechAgreesWithPolynomialAdditionF64) {
  auto T = build_tower(2, 1, 2, 3);
  auto all = T->elements(6);
  for (auto a : all)
    for (auto b : all) ASSERT_EQ(T->add(a, b), T->add_poly(a, b));
}

TEST(Fields, ZechAgreesWithPolynomialAdditionOddCharacteristic) {
  FieldTower T(3, 2, 1, 2);  // F_81
  auto all = T.elements(2);
  for (auto a : all)
    for (auto b : all) {
      ASSERT_EQ(T.add(a, b), T.add_poly(a, b));
      ASSERT_EQ(T.sub(T.add(a, b), b), a);
    }
}

TEST(Fields, FrobeniusIsBijectionOfOrderTop) {
  auto T = build_tower(2, 1, 2, 3);
  for (int d : {1, 2, 3, 6}) {
    std::set<u32> img;
    for (auto x : T->elements(d)) {
      FieldElem y = T->frob(x);
      EXPECT_TRUE(T->in_subfield(y, d));
      img.insert(y.v);
    }
    EXPECT_EQ(img.size(), T->subfield_size(d));
  }
  // order exactly 6 on the top field
  FieldElem g = T->gen();
  FieldElem y = g;
  int k = 0;
  do {
    y = T->frob(y);
    ++k;
  } while (y != g);
  EXPECT_EQ(k, 6);
}

TEST(Fields, NormFibersF64ToF4) {
  auto T = build_tower(2, 1, 2, 3);
  EXPECT_EQ(T->norm(6, 2, T->one()), T->one());
  std::map<u32, int> fiber;
  for (auto x : T->elements(6)) {
    if (x.is_zero()) continue;
    FieldElem y = T->norm(6, 2, x);
    EXPECT_TRUE(T->in_subfield(y, 2));
    fiber[y.v]++;
  }
  EXPECT_EQ(fiber.size(), 3u);
  for (auto [k, c] : fiber) EXPECT_EQ(c, 21);
}

TEST(Fields, NormOfBaseElementIsLthPower) {
  for (auto [p, f, n, l] : std::vector<std::tuple<u64, int, int, int>>{{2, 1, 2, 3}, {3, 1, 2, 5}, {2, 1, 3, 5}}) {
    auto T = build_tower(p, f, n, l);
    for (auto t : T->elements(n)) EXPECT_EQ(T->norm(l * n, n, t), T->pow(t, l));
  }
}

TEST(Fields, NormRejectsElementOutsideSource) {
  auto T = build_tower(2, 1, 2, 3);
  EXPECT_THROW(T->norm(2, 1, T->gen()), DomainError);
  EXPECT_THROW(T->trace(2, 1, T->gen()), DomainError);
}

TEST(Fields, TraceF4ToF2) {
  auto T = build_tower(2, 1, 2, 3);
  EXPECT_EQ(T->trace(2, 1, T->zero()), T->zero());
  FieldElem w = T->subfield_gen(2);
  EXPECT_EQ(T->trace(2, 1, w), T->one());
  for (auto x : T->elements(2)) EXPECT_EQ(T->trace(2, 1, x), T->add(x, T->mul(x, x)));
}

TEST(Fields, TraceIsEquidistributed) {
  auto T = build_tower(3, 1, 2, 5);
  std::map<u32, int> cnt;
  for (auto x : T->elements(2)) cnt[T->trace(2, 1, x).v]++;
  EXPECT_EQ(cnt.size(), 3u);
  for (auto [k, c] : cnt) EXPECT_EQ(c, 3);
  auto U = build_tower(2, 1, 2, 3);
  std::map<u32, int> cnt2;
  for (auto x : U->elements(6)) cnt2[U->trace(6, 2, x).v]++;
  EXPECT_EQ(cnt2.size(), 4u);
  for (auto [k, c] : cnt2) EXPECT_EQ(c, 16);
}

TEST(Fields, AbsoluteTraceMatchesRelativeChain) {
  FieldTower T(2, 2, 2, 3);  // q = 4, top F_{4^6}
  for (auto x : T.elements(2)) {
    FieldElem t = T.trace(2, 1, x);       // to F_4
    u64 a = T.abs_trace(1, t);            // F_4 -> F_2
    EXPECT_EQ(a, T.abs_trace(2, x));
  }
}

// Homomorphism laws, exhaustive over a 1024-element top field.
TEST(FieldsProperty, NormMultiplicativeTraceAdditiveExhaustive) {
  auto T = build_tower(2, 1, 2, 5);
  ASSERT_EQ(T->top_size(), 1024u);
  auto all = T->elements(10);
  auto sub = T->elements(2);
  for (auto x : all)
    for (auto y : sub) {
      ASSERT_EQ(T->norm(10, 2, T->mul(x, y)), T->mul(T->norm(10, 2, x), T->norm(10, 2, y)));
      ASSERT_EQ(T->trace(10, 2, T->add(x, y)), T->add(T->trace(10, 2, x), T->trace(10, 2, y)));
      // F_4-linearity of the trace
      ASSERT_EQ(T->trace(10, 2, T->mul(y, x)), T->mul(y, T->trace(10, 2, x)));
    }
  for (auto x : all)
    for (auto y : all) ASSERT_EQ(T->add(x, y), T->add_poly(x, y));
}

TEST(FieldsProperty, DistributiveOnF81) {
  FieldTower T(3, 4, 1, 1);
  auto all = T.elements(1);
  ASSERT_EQ(all.size(), 81u);
  for (auto a : all)
    for (auto b : all)
      for (auto c : {T.gen(), T.from_int(2), T.from_log(17)})
        ASSERT_EQ(T.mul(c, T.add(a, b)), T.add(T.mul(c, a), T.mul(c, b)));
}

TEST(Fields, DescriptorFields) {
  auto T = build_tower(2, 1, 2, 3);
  auto j = T->descriptor();
  EXPECT_EQ(j["p"], 2);
  EXPECT_EQ(j["l"], 3);
  EXPECT_EQ(j["modulusPoly"].size(), 7u);
  EXPECT_EQ(j["generatorIndex"], 1);
}
