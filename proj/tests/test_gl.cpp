#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "tatebc/gl.hpp"

using namespace tatebc;

namespace {

Mat random_invertible(const GL& G, int n, int level, std::mt19937_64& rng) {
  u64 Q = G.tower().subfield_size(level);
  while (true) {
    std::vector<FieldElem> e(n * n);
    for (auto& x : e) x = G.elem_at(rng() % Q, level);
    Mat m = G.make(n, level, e);
    if (G.invertible(m)) return m;
  }
}

std::multiset<u64> sizes(const std::vector<ConjClass>& cl) {
  std::multiset<u64> s;
  for (auto& c : cl) s.insert(c.size);
  return s;
}

}  // namespace

TEST(GL, MixedLevelsRejected) {
  auto T = build_tower(2, 1, 2, 3);
  GL G(*T);
  Mat a = G.identity(2, 1), b = G.identity(2, 3);
  EXPECT_THROW(G.mul(a, b), DomainError);
  EXPECT_NO_THROW(G.mul(G.embed(a, 3), b));
  EXPECT_THROW(G.make(1, 1, {T->gen()}), DomainError);
}

TEST(EnumerateClasses, GL1) {
  auto T = build_tower(3, 1, 2, 5);
  GL G(*T);
  auto cl = enumerate_classes(G, 1, 2);
  EXPECT_EQ(cl.size(), 8u);
  for (auto& c : cl) EXPECT_EQ(c.size, 1u);
}

TEST(EnumerateClasses, GL2F2) {
  auto T = build_tower(2, 1, 2, 3);
  GL G(*T);
  auto cl = enumerate_classes(G, 2, 1);
  EXPECT_EQ(cl.size(), 3u);
  EXPECT_EQ(sizes(cl), (std::multiset<u64>{1, 2, 3}));
}

TEST(EnumerateClasses, GL2F3) {
  auto T = build_tower(3, 1, 2, 5);
  GL G(*T);
  auto cl = enumerate_classes(G, 2, 1);
  EXPECT_EQ(cl.size(), 8u);
  u64 s = 0;
  for (auto& c : cl) s += c.size;
  EXPECT_EQ(s, 48u);
}

TEST(EnumerateClasses, SizesSumToGroupOrderAndPathsAgree) {
  struct Case {
    u64 p;
    int f, n, l, gn, level;
  };
  for (Case c : {Case{2, 1, 2, 3, 2, 1}, Case{2, 1, 2, 3, 2, 2}, Case{2, 1, 2, 3, 2, 3}, Case{3, 1, 2, 5, 2, 1},
                 Case{3, 1, 2, 5, 2, 2}, Case{2, 1, 3, 5, 3, 1}}) {
    auto T = build_tower(c.p, c.f, c.n, c.l);
    GL G(*T);
    u64 Q = T->subfield_size(c.level);
    auto ex = enumerate_classes_exhaustive(G, c.gn, c.level);
    auto co = enumerate_classes_constructive(G, c.gn, c.level);
    u64 s = 0;
    for (auto& k : ex) s += k.size;
    EXPECT_EQ(s, GL::group_order(c.gn, Q));
    ASSERT_EQ(ex.size(), co.size());
    std::map<ClassInvariant, u64> a, b;
    for (auto& k : ex) a[k.inv] = k.size;
    for (auto& k : co) {
      b[k.inv] = k.size;
      EXPECT_EQ(G.class_invariant(k.rep), k.inv);
    }
    EXPECT_EQ(a, b);
    if (c.gn == 2) {
      EXPECT_EQ(ex.size(), Q * Q - 1);
    }
  }
}

TEST(ClassInvariant, Examples) {
  auto T = build_tower(2, 1, 3, 5);
  GL G(*T);
  const auto& R = G.polys();
  auto inv = G.class_invariant(G.identity(3, 1));
  ASSERT_EQ(inv.factors.size(), 1u);
  EXPECT_EQ(inv.factors[0].first, R.linear(T->one()));
  EXPECT_EQ(inv.factors[0].second, (Partition{1, 1, 1}));
  Mat J = G.identity(3, 1);
  J.at(0, 1) = T->one();
  J.at(1, 2) = T->one();
  inv = G.class_invariant(J);
  EXPECT_EQ(inv.factors[0].second, (Partition{3}));
  // X^3 + X + 1 is irreducible over F_2
  Poly p{{T->one(), T->one(), T->zero(), T->one()}};
  ASSERT_TRUE(R.is_irreducible(p, 1));
  inv = G.class_invariant(G.companion(p, 1));
  ASSERT_EQ(inv.factors.size(), 1u);
  EXPECT_EQ(inv.factors[0].first, p);
  EXPECT_EQ(inv.factors[0].second, (Partition{1}));
  Mat sing = G.zero(3, 1);
  EXPECT_THROW(G.class_invariant(sing), DomainError);
}

TEST(ClassInvariant, CharpolyOracles) {
  auto T = build_tower(2, 1, 2, 3);
  GL G(*T);
  const auto& R = G.polys();
  std::mt19937_64 rng(3);
  for (int it = 0; it < 40; ++it) {
    Mat x = random_invertible(G, 3, 2, rng);
    Poly cp = R.monic(G.charpoly(x));
    EXPECT_EQ(cp.deg(), 3);
    // Cayley-Hamilton
    EXPECT_EQ(G.eval(cp, x), G.zero(3, 2));
    // cp(c) = det(cI - x) for every c in F_4
    for (auto c : T->elements(2)) {
      Mat m = G.add(G.scale(G.identity(3, 2), c), G.scale(x, T->neg(T->one())));
      EXPECT_EQ(R.eval(cp, c), G.det(m));
    }
  }
}

TEST(Factorization, ProductsOfKnownIrreducibles) {
  auto T = build_tower(3, 1, 2, 5);
  GL G(*T);
  const auto& R = G.polys();
  auto irr1 = monic_irreducibles(G, 1, 2);
  auto irr2 = monic_irreducibles(G, 2, 2);
  EXPECT_EQ(irr1.size(), 8u);   // X - a, a in F_9^*
  EXPECT_EQ(irr2.size(), 36u);  // (81 - 9) / 2
  std::mt19937_64 rng(5);
  for (int it = 0; it < 30; ++it) {
    std::map<Poly, int> want;
    Poly f = R.one();
    int parts = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < parts; ++k) {
      const Poly& p = (rng() & 1) ? irr1[rng() % irr1.size()] : irr2[rng() % irr2.size()];
      int m = 1 + static_cast<int>(rng() % 3);
      want[p] += m;
      f = R.mul(f, R.pow(p, m));
    }
    auto got = R.factor(f, 2);
    std::map<Poly, int> gm(got.begin(), got.end());
    EXPECT_EQ(gm, want);
  }
}

TEST(ClassInvariantProperty, InvariantEqualityIffConjugacy) {
  for (auto [p, l] : std::vector<std::pair<u64, int>>{{2, 3}, {3, 5}}) {
    auto T = build_tower(p, 1, 2, l);
    GL G(*T);
    auto all = G.all_elements(2, 1);
    std::vector<ClassInvariant> inv;
    for (auto& x : all) inv.push_back(G.class_invariant(x));
    // brute-force conjugacy oracle: orbit of each element under all of G
    std::vector<std::set<u64>> orbit(all.size());
    for (std::size_t i = 0; i < all.size(); ++i)
      for (auto& g : all) orbit[i].insert(G.key(G.conj(g, all[i])));
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = 0; j < all.size(); ++j)
        ASSERT_EQ(inv[i] == inv[j], orbit[i].count(G.key(all[j])) > 0);
  }
}

TEST(IsLRegular, Examples) {
  auto T = build_tower(2, 1, 2, 3);
  GL G(*T);
  EXPECT_TRUE(G.is_l_regular(G.identity(2, 1), 3));
  Mat r = G.make(2, 1, {T->zero(), T->one(), T->one(), T->one()});  // order 3
  EXPECT_EQ(G.order(r), 3u);
  EXPECT_FALSE(G.is_l_regular(r, 3));
  EXPECT_TRUE(G.is_l_regular(r, 5));
  Mat u = G.make(2, 1, {T->one(), T->one(), T->zero(), T->one()});
  EXPECT_TRUE(G.is_l_regular(u, 3));
  EXPECT_FALSE(G.is_l_regular(u, 2));
  // agrees with exact order over GL_2(F_8)
  for (auto& c : enumerate_classes(G, 2, 3)) EXPECT_EQ(G.is_l_regular(c.rep, 3), G.order(c.rep) % 3 != 0);
}

TEST(MirabolicTransversal, GL1OverF8) {
  auto T = build_tower(2, 1, 2, 3);
  GL G(*T);
  // level 3 is F_8; Frobenius over F_2 has order 3
  auto tr = mirabolic_transversal(G, 2, 3, 1);
  EXPECT_EQ(tr.reps.size(), 7u);
  EXPECT_EQ(tr.fixed_count(), 1u);
  EXPECT_EQ(tr.reps[std::find(tr.fixed.begin(), tr.fixed.end(), true) - tr.fixed.begin()], G.identity(1, 3));
}

TEST(MirabolicTransversal, GL1OverF243) {
  auto T = build_tower(3, 1, 2, 5);
  GL G(*T);
  auto tr = mirabolic_transversal(G, 2, 5, 1);
  EXPECT_EQ(tr.reps.size(), 242u);
  EXPECT_EQ(tr.fixed_count(), 2u);
  for (std::size_t i = 0; i < tr.reps.size(); ++i) {
    std::size_t j = i;
    int len = 0;
    do {
      j = tr.frobOrbit[j];
      ++len;
    } while (j != i);
    EXPECT_TRUE(len == 1 || len == 5);
  }
}

TEST(MirabolicTransversal, GL2CosetsFrobeniusAdapted) {
  auto T = build_tower(2, 1, 2, 3);
  GL G(*T);
  // U_2 \ GL_2(F_4) with Frobenius over F_2
  auto tr = mirabolic_transversal(G, 3, 2, 1);
  EXPECT_EQ(tr.reps.size(), 45u);
  // reps are in distinct cosets: no u in U_2 moves one onto another
  std::set<u64> keys;
  for (auto& r : tr.reps) keys.insert(G.key(r));
  for (std::size_t i = 0; i < tr.reps.size(); ++i)
    for (auto b : T->elements(2)) {
      Mat u = G.identity(2, 2);
      u.at(0, 1) = b;
      Mat y = G.mul(u, tr.reps[i]);
      EXPECT_EQ(G.key(coset_canonical(G, y)), G.key(tr.reps[i]));
    }
  // Frobenius realizes the stored permutation
  for (std::size_t i = 0; i < tr.reps.size(); ++i) {
    EXPECT_EQ(G.key(G.frob(tr.reps[i], 1)), G.key(tr.reps[tr.frobOrbit[i]]));
    if (tr.fixed[i]) {
      EXPECT_EQ(G.frob(tr.reps[i], 1), tr.reps[i]);
    }
  }
  // fixed cosets correspond to U_2 \ GL_2(F_2): 6 / 2 = 3
  EXPECT_EQ(tr.fixed_count(), 3u);
}

TEST(ClassTable, CsvHasOneRowPerClass) {
  auto T = build_tower(2, 1, 2, 3);
  GL G(*T);
  auto cl = enumerate_classes(G, 2, 1);
  auto csv = class_table_csv(G, cl);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}
