#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "tatebc/arith.hpp"
#include "tatebc/error.hpp"

namespace tatebc {

/// Prime field extension F_{p^m} with a primitive modulus. Elements have two
/// representations: a polynomial code (base-p digits, constant term lowest)
/// and a discrete log against the root of the modulus.
class GaloisField {
 public:
  static constexpr u64 kMaxSize = u64(1) << 22;

  GaloisField(u64 p, int m) : p_(p), m_(m) {
    if (!is_prime(p)) throw ConstraintViolation("GaloisField: p must be prime");
    if (m < 1) throw ConstraintViolation("GaloisField: degree must be positive");
    size_ = ipow(p, m);
    if (size_ > kMaxSize) throw BoundExceeded("GaloisField: field too large for log tables");
    find_primitive_modulus();
    zech_.assign(size_ - 1, -1);
    for (u64 k = 0; k < size_ - 1; ++k) {
      u32 c = code_add(1, exp_[k]);
      zech_[k] = c == 0 ? -1 : static_cast<std::int32_t>(log_[c]);
    }
  }

  u64 p() const { return p_; }
  int degree() const { return m_; }
  u64 size() const { return size_; }
  u64 order() const { return size_ - 1; }
  const std::vector<u64>& modulus() const { return modulus_; }

  u32 exp_code(u64 k) const { return exp_[k % (size_ - 1)]; }
  u64 log_code(u32 code) const {
    if (code == 0 || code >= size_) throw DomainError("log of zero or invalid code");
    return log_[code];
  }
  /// log(1 + g^k), or -1 if 1 + g^k = 0.
  std::int64_t zech(u64 k) const { return zech_[k % (size_ - 1)]; }

  u32 code_add(u32 a, u32 b) const {
    if (p_ == 2) return a ^ b;
    u32 r = 0, place = 1;
    for (int i = 0; i < m_; ++i) {
      u32 s = (a % p_ + b % p_) % p_;
      r += s * place;
      a /= p_;
      b /= p_;
      place *= static_cast<u32>(p_);
    }
    return r;
  }
  u32 code_neg(u32 a) const {
    if (p_ == 2) return a;
    u32 r = 0, place = 1;
    for (int i = 0; i < m_; ++i) {
      u32 d = a % p_;
      r += static_cast<u32>((p_ - d) % p_) * place;
      a /= p_;
      place *= static_cast<u32>(p_);
    }
    return r;
  }

 private:
  std::vector<u32> digits(u32 c) const {
    std::vector<u32> d(m_);
    for (int i = 0; i < m_; ++i) {
      d[i] = c % p_;
      c /= p_;
    }
    return d;
  }
  u32 pack(const std::vector<u32>& d) const {
    u32 c = 0;
    for (int i = m_ - 1; i >= 0; --i) c = c * static_cast<u32>(p_) + d[i];
    return c;
  }

  // Candidates are scanned in increasing order of their lower-coefficient code,
  // so the chosen modulus is deterministic.
  void find_primitive_modulus() {
    const u64 ord = size_ - 1;
    std::vector<u32> d(m_), nd(m_);
    for (u64 cand = 1; cand < size_; ++cand) {
      std::vector<u32> low = digits(static_cast<u32>(cand));
      if (low[0] == 0) continue;
      // x^m = -(low) in the quotient ring
      std::vector<u32> red(m_);
      for (int i = 0; i < m_; ++i) red[i] = static_cast<u32>((p_ - low[i]) % p_);
      exp_.assign(ord, 0);
      std::fill(d.begin(), d.end(), 0);
      d[0] = 1;
      bool ok = true;
      for (u64 k = 0; k < ord; ++k) {
        u32 c = pack(d);
        if (k > 0 && c == 1) {
          ok = false;
          break;
        }
        exp_[k] = c;
        u32 top = d[m_ - 1];
        for (int i = m_ - 1; i > 0; --i) nd[i] = static_cast<u32>((d[i - 1] + top * red[i]) % p_);
        nd[0] = static_cast<u32>((top * red[0]) % p_);
        d.swap(nd);
      }
      if (!ok || pack(d) != 1) continue;
      modulus_.assign(m_ + 1, 0);
      for (int i = 0; i < m_; ++i) modulus_[i] = low[i];
      modulus_[m_] = 1;
      log_.assign(size_, 0);
      for (u64 k = 0; k < ord; ++k) log_[exp_[k]] = static_cast<u32>(k);
      return;
    }
    throw VerificationFailure("GaloisField: no primitive modulus found");
  }

  u64 p_;
  int m_;
  u64 size_ = 0;
  std::vector<u64> modulus_;
  std::vector<u32> exp_;
  std::vector<u32> log_;
  std::vector<std::int32_t> zech_;
};

/// Element of the top field of a tower: zero, or g^v for the tower generator g.
struct FieldElem {
  static constexpr std::uint32_t kZero = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t v = kZero;

  static FieldElem zero() { return {}; }
  static FieldElem from_log(u64 e) { return FieldElem{static_cast<std::uint32_t>(e)}; }
  bool is_zero() const { return v == kZero; }
  friend bool operator==(FieldElem a, FieldElem b) { return a.v == b.v; }
  friend bool operator!=(FieldElem a, FieldElem b) { return a.v != b.v; }
  friend bool operator<(FieldElem a, FieldElem b) { return a.v < b.v; }
};

/// Compatible models of F_q, F_{q^n}, F_{q^l}, F_{q^ln} (q = p^f) inside one
/// top field F_{q^{ln}}. Subfield degrees are measured over F_q.
class FieldTower {
 public:
  /// No validation of l; use build_tower for the checked entry point.
  /// l = 1 gives a plain tower F_q in F_{q^n}.
  FieldTower(u64 p, int f, int n, int l)
      : p_(p), f_(f), n_(n), l_(l), q_(ipow(p, f)), top_(l * n),
        gf_(std::make_shared<GaloisField>(p, f * l * n)) {
    ord_ = gf_->order();
  }

  u64 p() const { return p_; }
  int f() const { return f_; }
  int n() const { return n_; }
  int l() const { return l_; }
  u64 q() const { return q_; }
  int top_degree() const { return top_; }
  u64 top_size() const { return gf_->size(); }
  u64 group_order() const { return ord_; }
  const GaloisField& galois() const { return *gf_; }

  bool divides_top(int d) const { return d > 0 && top_ % d == 0; }
  void check_level(int d) const {
    if (!divides_top(d)) throw DomainError("subfield degree does not divide tower degree");
  }
  u64 subfield_size(int d) const { return ipow(q_, d); }
  /// (q^{top}-1)/(q^d-1): a nonzero element g^e lies in F_{q^d} iff this divides e.
  u64 subfield_index(int d) const {
    check_level(d);
    return ord_ / (subfield_size(d) - 1);
  }
  FieldElem subfield_gen(int d) const { return FieldElem::from_log(subfield_index(d) % ord_); }

  FieldElem zero() const { return FieldElem::zero(); }
  FieldElem one() const { return FieldElem::from_log(0); }
  FieldElem gen() const { return FieldElem::from_log(1 % ord_); }
  FieldElem from_log(i64 e) const { return FieldElem::from_log(static_cast<u64>(mod(e, static_cast<i64>(ord_)))); }

  /// Image of c in F_p (0 <= c < p).
  FieldElem from_int(i64 c) const {
    u64 r = static_cast<u64>(mod(c, static_cast<i64>(p_)));
    if (r == 0) return zero();
    return FieldElem::from_log(gf_->log_code(static_cast<std::uint32_t>(r)));
  }
  std::uint32_t code(FieldElem x) const { return x.is_zero() ? 0u : gf_->exp_code(x.v); }
  FieldElem from_code(std::uint32_t c) const {
    if (c == 0) return zero();
    return FieldElem::from_log(gf_->log_code(c));
  }

  bool in_subfield(FieldElem x, int d) const {
    if (x.is_zero()) return true;
    return x.v % subfield_index(d) == 0;
  }

  FieldElem mul(FieldElem a, FieldElem b) const {
    if (a.is_zero() || b.is_zero()) return zero();
    u64 s = u64(a.v) + b.v;
    if (s >= ord_) s -= ord_;
    return FieldElem::from_log(s);
  }
  FieldElem inv(FieldElem a) const {
    if (a.is_zero()) throw DomainError("inverse of zero");
    return FieldElem::from_log(a.v == 0 ? 0 : ord_ - a.v);
  }
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
  FieldElem pow(FieldElem a, i64 e) const {
    if (a.is_zero()) {
      if (e < 0) throw DomainError("negative power of zero");
      return e == 0 ? one() : zero();
    }
    i64 m = static_cast<i64>(ord_);
    i64 r = static_cast<i64>(mulmod(a.v, static_cast<u64>(mod(e, m)), ord_));
    return FieldElem::from_log(static_cast<u64>(r));
  }

  /// Addition through the Zech table.
  FieldElem add(FieldElem a, FieldElem b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    u64 k = b.v >= a.v ? b.v - a.v : b.v + ord_ - a.v;
    std::int64_t z = gf_->zech(k);
    if (z < 0) return zero();
    u64 s = a.v + static_cast<u64>(z);
    if (s >= ord_) s -= ord_;
    return FieldElem::from_log(s);
  }
  /// Addition through the polynomial representation.
  FieldElem add_poly(FieldElem a, FieldElem b) const { return from_code(gf_->code_add(code(a), code(b))); }

  FieldElem neg(FieldElem a) const {
    if (a.is_zero() || p_ == 2) return a;
    return mul(a, FieldElem::from_log(ord_ / 2));
  }
  FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

  /// x -> x^{q^k}
  FieldElem frob(FieldElem x, int k = 1) const {
    if (x.is_zero()) return x;
    u64 m = powmod(q_, static_cast<u64>(k), ord_);
    return FieldElem::from_log(mulmod(x.v, m, ord_));
  }
  /// x -> x^p
  FieldElem frob_p(FieldElem x) const {
    if (x.is_zero()) return x;
    return FieldElem::from_log(mulmod(x.v, p_ % ord_, ord_));
  }

  FieldElem norm(int src, int dst, FieldElem x) const {
    check_pair(src, dst, x);
    if (x.is_zero()) return x;
    u64 e = (subfield_size(src) - 1) / (subfield_size(dst) - 1);
    return pow(x, static_cast<i64>(e));
  }
  FieldElem trace(int src, int dst, FieldElem x) const {
    check_pair(src, dst, x);
    FieldElem s = zero(), y = x;
    for (int j = 0; j < src / dst; ++j) {
      s = add(s, y);
      y = frob(y, dst);
    }
    return s;
  }
  /// Trace from F_{q^d} down to F_p, as an integer in [0, p).
  u64 abs_trace(int d, FieldElem x) const {
    check_level(d);
    if (!in_subfield(x, d)) throw DomainError("abs_trace: element not in source field");
    FieldElem s = zero(), y = x;
    for (int j = 0; j < f_ * d; ++j) {
      s = add(s, y);
      y = frob_p(y);
    }
    std::uint32_t c = code(s);
    if (c >= p_) throw VerificationFailure("abs_trace: result not in prime field");
    return c;
  }

  /// All elements of F_{q^d}, zero first, then g_d^0, g_d^1, ...
  std::vector<FieldElem> elements(int d) const {
    std::vector<FieldElem> out;
    u64 idx = subfield_index(d);
    out.push_back(zero());
    for (u64 k = 0; k < subfield_size(d) - 1; ++k) out.push_back(FieldElem::from_log(k * idx));
    return out;
  }

  nlohmann::ordered_json descriptor() const {
    nlohmann::ordered_json j;
    j["p"] = p_;
    j["f"] = f_;
    j["n"] = n_;
    j["l"] = l_;
    j["modulusPoly"] = gf_->modulus();
    j["generatorIndex"] = 1;
    return j;
  }

 private:
  void check_pair(int src, int dst, FieldElem x) const {
    check_level(src);
    if (dst <= 0 || src % dst != 0) throw DomainError("destination degree must divide source degree");
    if (!in_subfield(x, src)) throw DomainError("element not in claimed source field");
  }

  u64 p_;
  int f_, n_, l_;
  u64 q_;
  int top_;
  std::shared_ptr<const GaloisField> gf_;
  u64 ord_ = 0;
};

/// Checked constructor: l prime, l != p, gcd(n, l) = 1.
inline std::shared_ptr<const FieldTower> build_tower(u64 p, int f, int n, int l) {
  if (!is_prime(p)) throw ConstraintViolation("p must be prime");
  if (l < 2 || !is_prime(static_cast<u64>(l))) throw ConstraintViolation("l must be prime");
  if (static_cast<u64>(l) == p) throw ConstraintViolation("l must differ from p");
  if (f < 1 || n < 1) throw ConstraintViolation("f and n must be positive");
  if (std::gcd(n, l) != 1) throw ConstraintViolation("gcd(n, l) must be 1");
  return std::make_shared<const FieldTower>(p, f, n, l);
}

}  // namespace tatebc
