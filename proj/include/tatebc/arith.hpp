#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tatebc/error.hpp"

namespace tatebc {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline u64 checked_mul(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw BoundExceeded("integer overflow in checked_mul");
  return r;
}

inline u64 ipow(u64 base, u64 exp) {
  u64 r = 1;
  while (exp--) r = checked_mul(r, base);
  return r;
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  unsigned __int128 r = 1, b = base % m;
  while (exp) {
    if (exp & 1) r = (r * b) % m;
    b = (b * b) % m;
    exp >>= 1;
  }
  return static_cast<u64>(r);
}

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g.
inline std::tuple<i64, i64, i64> ext_gcd(i64 a, i64 b) {
  i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    i64 q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  if (a < 0) return {-a, -x0, -y0};
  return {a, x0, y0};
}

inline u64 inv_mod(u64 a, u64 m) {
  auto [g, x, y] = ext_gcd(static_cast<i64>(a % m), static_cast<i64>(m));
  (void)y;
  if (g != 1) throw DomainError("inv_mod: not invertible");
  return static_cast<u64>(mod(x, static_cast<i64>(m)));
}

/// Prime factorization by trial division, as (prime, exponent) pairs.
inline std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<std::pair<u64, int>> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::vector<u64> divisors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    if (d * d != n) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline u64 euler_phi(u64 n) {
  u64 r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

/// Multiplicative order of a modulo m (gcd(a, m) = 1 required).
inline u64 multiplicative_order(u64 a, u64 m) {
  if (m == 1) return 1;
  if (std::gcd(a, m) != 1) throw DomainError("multiplicative_order: gcd(a, m) != 1");
  u64 ord = euler_phi(m);
  for (auto [p, e] : factorize(ord)) {
    (void)e;
    while (ord % p == 0 && powmod(a, ord / p, m) == 1) ord /= p;
  }
  return ord;
}

/// Splits m = l^a * rest with gcd(rest, l) = 1; returns (a, rest).
inline std::pair<int, u64> split_prime_part(u64 m, u64 l) {
  int a = 0;
  while (m % l == 0) {
    m /= l;
    ++a;
  }
  return {a, m};
}

/// Returns (p, f) if q = p^f for a prime p, throws otherwise.
inline std::pair<u64, int> prime_power(u64 q) {
  auto fac = factorize(q);
  if (fac.size() != 1) throw ConstraintViolation("not a prime power: " + std::to_string(q));
  return {fac[0].first, fac[0].second};
}

/// Weakly decreasing positive parts.
using Partition = std::vector<int>;

inline int partition_size(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

inline Partition conjugate(const Partition& p) {
  Partition out;
  if (p.empty()) return out;
  for (int j = 1; j <= p.front(); ++j) {
    int c = 0;
    for (int x : p)
      if (x >= j) ++c;
    out.push_back(c);
  }
  return out;
}

inline void partitions_rec(int n, int maxPart, Partition& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, maxPart); k >= 1; --k) {
    cur.push_back(k);
    partitions_rec(n - k, k, cur, out);
    cur.pop_back();
  }
}

inline std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  Partition cur;
  partitions_rec(n, n, cur, out);
  return out;
}

}  // namespace tatebc
