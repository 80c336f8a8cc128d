#pragma once

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "tatebc/fields.hpp"

namespace tatebc {

/// Polynomial over a subfield of the tower, coefficients low to high, no
/// trailing zeros (the zero polynomial is empty).
struct Poly {
  std::vector<FieldElem> c;

  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  FieldElem lead() const { return c.back(); }
  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
  friend bool operator!=(const Poly& a, const Poly& b) { return a.c != b.c; }
  /// Total order by degree, then coefficients from the top.
  friend bool operator<(const Poly& a, const Poly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    for (int i = a.deg(); i >= 0; --i)
      if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
  }
};

class PolyRing {
 public:
  explicit PolyRing(const FieldTower& T) : T_(T) {}
  const FieldTower& tower() const { return T_; }

  Poly constant(FieldElem a) const {
    Poly p;
    p.c.push_back(a);
    p.trim();
    return p;
  }
  Poly one() const { return constant(T_.one()); }
  Poly x() const { return Poly{{T_.zero(), T_.one()}}; }
  /// X - a
  Poly linear(FieldElem a) const { return Poly{{T_.neg(a), T_.one()}}; }

  Poly add(const Poly& a, const Poly& b) const {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), T_.zero());
    for (std::size_t i = 0; i < r.c.size(); ++i) {
      FieldElem x = i < a.c.size() ? a.c[i] : T_.zero();
      FieldElem y = i < b.c.size() ? b.c[i] : T_.zero();
      r.c[i] = T_.add(x, y);
    }
    r.trim();
    return r;
  }
  Poly neg(const Poly& a) const {
    Poly r = a;
    for (auto& x : r.c) x = T_.neg(x);
    return r;
  }
  Poly sub(const Poly& a, const Poly& b) const { return add(a, neg(b)); }
  Poly scale(const Poly& a, FieldElem s) const {
    Poly r = a;
    for (auto& x : r.c) x = T_.mul(x, s);
    r.trim();
    return r;
  }
  Poly mul(const Poly& a, const Poly& b) const {
    if (a.is_zero() || b.is_zero()) return {};
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, T_.zero());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (a.c[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = T_.add(r.c[i + j], T_.mul(a.c[i], b.c[j]));
    }
    r.trim();
    return r;
  }
  Poly pow(const Poly& a, int e) const {
    Poly r = one();
    for (int i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  /// (quotient, remainder)
  std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    Poly r = a, q;
    if (a.deg() < b.deg()) return {q, r};
    q.c.assign(a.deg() - b.deg() + 1, T_.zero());
    FieldElem il = T_.inv(b.lead());
    for (int i = r.deg(); i >= b.deg(); --i) {
      FieldElem coef = T_.mul(r.c[i], il);
      if (coef.is_zero()) continue;
      q.c[i - b.deg()] = coef;
      for (int j = 0; j <= b.deg(); ++j) r.c[i - b.deg() + j] = T_.sub(r.c[i - b.deg() + j], T_.mul(coef, b.c[j]));
    }
    r.trim();
    q.trim();
    return {q, r};
  }
  Poly rem(const Poly& a, const Poly& b) const { return divmod(a, b).second; }
  Poly monic(const Poly& a) const {
    if (a.is_zero()) return a;
    return scale(a, T_.inv(a.lead()));
  }
  Poly gcd(Poly a, Poly b) const {
    while (!b.is_zero()) {
      Poly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  Poly derivative(const Poly& a) const {
    Poly r;
    for (int i = 1; i <= a.deg(); ++i) r.c.push_back(T_.mul(T_.from_int(i), a.c[i]));
    r.trim();
    return r;
  }
  FieldElem eval(const Poly& a, FieldElem t) const {
    FieldElem s = T_.zero();
    for (int i = a.deg(); i >= 0; --i) s = T_.add(T_.mul(s, t), a.c[i]);
    return s;
  }
  /// a^e mod m
  Poly powmod(Poly a, u64 e, const Poly& m) const {
    Poly r = rem(one(), m);
    a = rem(a, m);
    while (e) {
      if (e & 1) r = rem(mul(r, a), m);
      a = rem(mul(a, a), m);
      e >>= 1;
    }
    return r;
  }
  /// Product of (X - r) over the given roots.
  Poly from_roots(const std::vector<FieldElem>& roots) const {
    Poly r = one();
    for (auto t : roots) r = mul(r, linear(t));
    return r;
  }
  bool coeffs_in_level(const Poly& a, int level) const {
    for (auto x : a.c)
      if (!T_.in_subfield(x, level)) return false;
    return true;
  }

  /// Irreducible factorization over F_{q^level} of a monic polynomial with
  /// nonzero degree: sorted list of (monic irreducible, multiplicity).
  std::vector<std::pair<Poly, int>> factor(const Poly& f, int level, std::uint64_t seed = 0x5eed) const {
    if (f.deg() < 1) throw DomainError("factor: constant polynomial");
    if (!coeffs_in_level(f, level)) throw DomainError("factor: coefficients outside field");
    std::mt19937_64 rng(seed);
    const u64 Q = T_.subfield_size(level);
    Poly rest = monic(f);
    std::vector<Poly> irr;
    Poly h = x();  // X^{Q^d} mod rest
    for (int d = 1; rest.deg() >= 1; ++d) {
      // all factors of rest have degree >= d, so 2d > deg forces rest irreducible
      if (2 * d > rest.deg()) {
        irr.push_back(rest);
        break;
      }
      h = powmod(h, Q, rest);
      Poly g = gcd(rest, sub(h, x()));
      if (g.deg() < 1) continue;
      auto parts = equal_degree_split(g, d, level, rng);
      irr.insert(irr.end(), parts.begin(), parts.end());
      for (const Poly& p : parts) {
        while (true) {
          auto [qq, rr] = divmod(rest, p);
          if (!rr.is_zero()) break;
          rest = qq;
        }
      }
      if (rest.deg() >= 1) h = rem(h, rest);
    }
    std::vector<std::pair<Poly, int>> out;
    for (const Poly& p : irr) {
      int m = 0;
      Poly t = monic(f);
      while (true) {
        auto [qq, rr] = divmod(t, p);
        if (!rr.is_zero()) break;
        t = qq;
        ++m;
      }
      if (m == 0) throw VerificationFailure("factor: spurious factor");
      out.emplace_back(p, m);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    int total = 0;
    for (auto& [p, m] : out) total += p.deg() * m;
    if (total != f.deg()) throw VerificationFailure("factor: degrees do not add up");
    return out;
  }

  bool is_irreducible(const Poly& f, int level) const {
    if (f.deg() < 1) return false;
    if (f.deg() == 1) return true;
    if (f.deg() <= 3) {
      for (auto t : T_.elements(level))
        if (eval(f, t).is_zero()) return false;
      return true;
    }
    auto fac = factor(f, level);
    return fac.size() == 1 && fac[0].second == 1;
  }

 private:
  Poly random_poly(int degBelow, int level, std::mt19937_64& rng) const {
    const u64 Q = T_.subfield_size(level);
    const u64 idx = T_.subfield_index(level);
    Poly r;
    for (int i = 0; i < degBelow; ++i) {
      u64 k = rng() % Q;
      r.c.push_back(k == 0 ? T_.zero() : T_.from_log(static_cast<i64>((k - 1) * idx)));
    }
    r.trim();
    return r;
  }

  // g squarefree, product of irreducibles of degree d.
  std::vector<Poly> equal_degree_split(const Poly& g, int d, int level, std::mt19937_64& rng) const {
    if (g.deg() == d) return {monic(g)};
    const u64 Q = T_.subfield_size(level);
    while (true) {
      Poly a = random_poly(g.deg(), level, rng);
      if (a.deg() < 1) continue;
      Poly b;
      if (T_.p() == 2) {
        // trace map a + a^2 + ... + a^{2^{s-1}}, Q^d = 2^s
        int s = 0;
        for (u64 t = 1; t < ipow(Q, d); t *= 2) ++s;
        Poly acc, cur = rem(a, g);
        for (int i = 0; i < s; ++i) {
          acc = add(acc, cur);
          cur = rem(mul(cur, cur), g);
        }
        b = acc;
      } else {
        u64 e = (ipow(Q, d) - 1) / 2;
        b = sub(powmod(a, e, g), one());
      }
      Poly h = gcd(g, b);
      if (h.deg() >= 1 && h.deg() < g.deg()) {
        auto left = equal_degree_split(h, d, level, rng);
        auto right = equal_degree_split(divmod(g, h).first, d, level, rng);
        left.insert(left.end(), right.begin(), right.end());
        return left;
      }
    }
  }

  const FieldTower& T_;
};

}  // namespace tatebc
