#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "tatebc/arith.hpp"
#include "tatebc/error.hpp"

namespace tatebc {

/// zeta_M^e, normalized so that gcd(M, e) = 1 (zeta_M^0 is stored as (1, 0)).
struct RootOfUnity {
  u64 M = 1;
  u64 e = 0;

  RootOfUnity() = default;
  RootOfUnity(u64 m, i64 exp) {
    if (m == 0) throw DomainError("RootOfUnity: order must be positive");
    u64 r = static_cast<u64>(mod(exp, static_cast<i64>(m)));
    u64 d = std::gcd(m, r);  // gcd(m, 0) = m
    M = m / d;
    e = r / d;
  }
  friend bool operator==(const RootOfUnity& a, const RootOfUnity& b) { return a.M == b.M && a.e == b.e; }
  RootOfUnity operator*(const RootOfUnity& o) const {
    u64 L = std::lcm(M, o.M);
    return RootOfUnity(L, static_cast<i64>((e * (L / M) + o.e * (L / o.M)) % L));
  }
};

/// Phi_M and reduction data for Z[x]/Phi_M.
class CyclotomicRing {
 public:
  static constexpr u64 kMaxConductor = u64(1) << 20;

  explicit CyclotomicRing(u64 M) : M_(M) {
    if (M == 0 || M > kMaxConductor) throw BoundExceeded("conductor out of range");
    phi_ = cyclotomic_poly(M);
    deg_ = static_cast<int>(phi_.size()) - 1;
    if (M * static_cast<u64>(deg_) <= (u64(1) << 22)) {
      powers_.resize(M);
      std::vector<i64> cur{1};
      reduce(cur);
      for (u64 i = 0; i < M; ++i) {
        powers_[i] = cur;
        // multiply by x
        std::vector<i64> nx(deg_ + 1, 0);
        for (int j = 0; j < deg_; ++j) nx[j + 1] = cur[j];
        reduce(nx);
        cur = nx;
      }
    }
  }

  u64 conductor() const { return M_; }
  int degree() const { return deg_; }
  const std::vector<i64>& phi() const { return phi_; }

  /// Reduces v (any length) modulo Phi_M, leaving exactly degree() coefficients.
  void reduce(std::vector<i64>& v) const {
    for (std::size_t i = v.size(); i-- > static_cast<std::size_t>(deg_);) {
      i64 c = v[i];
      if (c == 0) continue;
      for (int j = 0; j <= deg_; ++j) v[i - deg_ + j] -= c * phi_[j];
    }
    v.resize(deg_, 0);
  }

  /// Coefficients of x^k mod Phi_M.
  std::vector<i64> power(u64 k) const {
    k %= M_;
    if (!powers_.empty()) return powers_[k];
    std::vector<i64> v(k + 1, 0);
    v[k] = 1;
    reduce(v);
    return v;
  }

  /// Adds c * x^k into acc (length degree()).
  void add_power(std::vector<i64>& acc, u64 k, i64 c) const {
    k %= M_;
    if (!powers_.empty()) {
      const auto& pw = powers_[k];
      for (int j = 0; j < deg_; ++j) acc[j] += c * pw[j];
      return;
    }
    auto pw = power(k);
    for (int j = 0; j < deg_; ++j) acc[j] += c * pw[j];
  }

  static std::vector<i64> cyclotomic_poly(u64 M) {
    static std::mutex mu;
    static std::map<u64, std::vector<i64>> memo;
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = memo.find(M);
      if (it != memo.end()) return it->second;
    }
    // x^M - 1 divided by Phi_d for every proper divisor d
    std::vector<i64> num(M + 1, 0);
    num[0] = -1;
    num[M] = 1;
    for (u64 d : divisors(M)) {
      if (d == M) continue;
      num = exact_div(num, cyclotomic_poly(d));
    }
    std::lock_guard<std::mutex> lock(mu);
    memo[M] = num;
    return num;
  }

 private:
  static std::vector<i64> exact_div(std::vector<i64> a, const std::vector<i64>& b) {
    int db = static_cast<int>(b.size()) - 1;
    int da = static_cast<int>(a.size()) - 1;
    std::vector<i64> q(da - db + 1, 0);
    for (int i = da; i >= db; --i) {
      i64 c = a[i];  // b is monic
      q[i - db] = c;
      if (c == 0) continue;
      for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    for (int i = 0; i < db; ++i)
      if (a[i] != 0) throw VerificationFailure("cyclotomic polynomial division not exact");
    return q;
  }

  u64 M_;
  int deg_ = 0;
  std::vector<i64> phi_;
  std::vector<std::vector<i64>> powers_;
};

inline std::shared_ptr<const CyclotomicRing> cyclotomic_ring(u64 M) {
  static std::mutex mu;
  static std::map<u64, std::shared_ptr<const CyclotomicRing>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  auto r = std::make_shared<const CyclotomicRing>(M);
  cache[M] = r;
  return r;
}

/// Element of Z[zeta_M] = Z[x]/Phi_M, stored by its canonical coefficients.
class CyclotomicInt {
 public:
  CyclotomicInt() : CyclotomicInt(1) {}
  explicit CyclotomicInt(u64 M) : ring_(cyclotomic_ring(M)), c_(ring_->degree(), 0) {}
  CyclotomicInt(u64 M, std::vector<i64> coeffs) : ring_(cyclotomic_ring(M)), c_(std::move(coeffs)) {
    ring_->reduce(c_);
  }

  static CyclotomicInt integer(i64 v, u64 M = 1) {
    CyclotomicInt z(M);
    z.ring_->add_power(z.c_, 0, v);
    return z;
  }
  static CyclotomicInt root(u64 M, i64 e) {
    CyclotomicInt z(M);
    z.ring_->add_power(z.c_, static_cast<u64>(mod(e, static_cast<i64>(M))), 1);
    return z;
  }
  static CyclotomicInt root(const RootOfUnity& r) { return root(r.M, static_cast<i64>(r.e)); }

  u64 conductor() const { return ring_->conductor(); }
  const std::vector<i64>& coeffs() const { return c_; }
  const CyclotomicRing& ring() const { return *ring_; }

  /// Image under Z[zeta_M] -> Z[zeta_{M*m}], zeta_M -> zeta_{M*m}^m.
  CyclotomicInt embed(u64 target) const {
    u64 M = conductor();
    if (target == M) return *this;
    if (target % M != 0) throw DomainError("embed: target conductor is not a multiple");
    u64 m = target / M;
    CyclotomicInt z(target);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) z.ring_->add_power(z.c_, i * m, c_[i]);
    return z;
  }

  CyclotomicInt conj() const {
    u64 M = conductor();
    CyclotomicInt z(M);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) z.ring_->add_power(z.c_, (M - i % M) % M, c_[i]);
    return z;
  }

  /// Galois action zeta -> zeta^a (gcd(a, M) = 1).
  CyclotomicInt galois(u64 a) const {
    u64 M = conductor();
    if (std::gcd(a % M, M) != 1 && M > 1) throw DomainError("galois: exponent not a unit");
    CyclotomicInt z(M);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) z.ring_->add_power(z.c_, mulmod(i, a % M, M), c_[i]);
    return z;
  }

  bool is_zero() const {
    for (i64 x : c_)
      if (x != 0) return false;
    return true;
  }
  /// True with value set iff the element lies in Z.
  bool as_integer(i64& value) const {
    // 1 reduces to a fixed vector; check c_ is a multiple of it
    auto one = ring_->power(0);
    i64 k = 0;
    bool set = false;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (one[i] == 0) {
        if (c_[i] != 0) return false;
        continue;
      }
      if (c_[i] % one[i] != 0) return false;
      i64 r = c_[i] / one[i];
      if (set && r != k) return false;
      k = r;
      set = true;
    }
    value = set ? k : 0;
    return true;
  }

  friend CyclotomicInt operator+(const CyclotomicInt& a, const CyclotomicInt& b) {
    if (a.conductor() != b.conductor()) {
      u64 L = common(a, b);
      return a.embed(L) + b.embed(L);
    }
    CyclotomicInt z = a;
    for (std::size_t i = 0; i < z.c_.size(); ++i) z.c_[i] += b.c_[i];
    return z;
  }
  friend CyclotomicInt operator-(const CyclotomicInt& a) {
    CyclotomicInt z = a;
    for (auto& x : z.c_) x = -x;
    return z;
  }
  friend CyclotomicInt operator-(const CyclotomicInt& a, const CyclotomicInt& b) { return a + (-b); }
  friend CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
    if (a.conductor() != b.conductor()) {
      u64 L = common(a, b);
      return a.embed(L) * b.embed(L);
    }
    std::vector<i64> prod(a.c_.size() + b.c_.size(), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) prod[i + j] += a.c_[i] * b.c_[j];
    }
    CyclotomicInt z(a.conductor());
    z.ring_->reduce(prod);
    z.c_ = std::move(prod);
    return z;
  }
  friend CyclotomicInt operator*(i64 s, const CyclotomicInt& a) {
    CyclotomicInt z = a;
    for (auto& x : z.c_) x = checked_smul(x, s);
    return z;
  }
  CyclotomicInt& operator+=(const CyclotomicInt& o) { return *this = *this + o; }

  /// Exact division by an integer; throws if any coefficient is not divisible.
  CyclotomicInt div_exact(i64 d) const {
    if (d == 0) throw DomainError("division by zero");
    CyclotomicInt z = *this;
    for (auto& x : z.c_) {
      if (x % d != 0) throw VerificationFailure("cyclotomic division not exact");
      x /= d;
    }
    return z;
  }

  friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
    if (a.conductor() != b.conductor()) {
      u64 L = common(a, b);
      return a.embed(L).c_ == b.embed(L).c_;
    }
    return a.c_ == b.c_;
  }
  friend bool operator!=(const CyclotomicInt& a, const CyclotomicInt& b) { return !(a == b); }

  std::string str() const {
    i64 v;
    if (as_integer(v)) return std::to_string(v);
    std::ostringstream os;
    os << "[M=" << conductor() << ":";
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
    os << "]";
    return os.str();
  }

 private:
  static i64 checked_smul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw BoundExceeded("cyclotomic coefficient overflow");
    return r;
  }
  static u64 common(const CyclotomicInt& a, const CyclotomicInt& b) {
    u64 L = std::lcm(a.conductor(), b.conductor());
    if (L > CyclotomicRing::kMaxConductor) throw BoundExceeded("no common conductor within bound");
    return L;
  }

  std::shared_ptr<const CyclotomicRing> ring_;
  std::vector<i64> c_;
};

/// Multiset of M-th roots of unity; reduced to a CyclotomicInt once at the end.
class RootSum {
 public:
  explicit RootSum(u64 M) : M_(M), counts_(M, 0) {}
  void add(u64 e, i64 c = 1) { counts_[e % M_] += c; }
  u64 conductor() const { return M_; }
  const std::vector<i64>& counts() const { return counts_; }
  /// Divides every count exactly by d; false if some count is not divisible.
  bool divide_counts(i64 d) {
    for (i64 x : counts_)
      if (x % d != 0) return false;
    for (i64& x : counts_) x /= d;
    return true;
  }
  /// Same value, written over the smallest conductor M/g where g divides M
  /// and every exponent with a nonzero count.
  CyclotomicInt compressed_value() const {
    u64 g = M_;
    for (u64 e = 0; e < M_; ++e)
      if (counts_[e] != 0) g = std::gcd(g, e);
    if (g == 0 || g == M_) {
      i64 c0 = counts_[0];
      return CyclotomicInt::integer(c0);
    }
    RootSum r(M_ / g);
    for (u64 e = 0; e < M_; ++e)
      if (counts_[e] != 0) r.add(e / g, counts_[e]);
    return r.value();
  }
  CyclotomicInt value() const {
    CyclotomicInt z(M_);
    std::vector<i64> acc(z.ring().degree(), 0);
    for (u64 e = 0; e < M_; ++e)
      if (counts_[e] != 0) z.ring().add_power(acc, e, counts_[e]);
    return CyclotomicInt(M_, std::move(acc));
  }

 private:
  u64 M_;
  std::vector<i64> counts_;
};

}  // namespace tatebc
