#pragma once

#include <memory>
#include <vector>

#include <json.hpp>

#include "tatebc/arith.hpp"
#include "tatebc/cyclotomic.hpp"
#include "tatebc/error.hpp"
#include "tatebc/fields.hpp"

namespace tatebc {

/// Element of F_{l^k}: polynomial code in base l, constant term lowest.
struct ModLValue {
  u32 code = 0;
  friend bool operator==(ModLValue a, ModLValue b) { return a.code == b.code; }
  friend bool operator!=(ModLValue a, ModLValue b) { return a.code != b.code; }
};

/// Coefficient field F_{l^k} = F_l[y]/m(y) with a recorded multiplicative
/// generator G. G is y^{genLog} for the primitive root y of m.
class ModLField {
 public:
  ModLField(u64 l, int k, u64 genLog = 1) : gf_(std::make_shared<GaloisField>(l, k)), l_(l), k_(k) {
    size_ = gf_->size();
    genLog_ = genLog % gf_->order();
    if (std::gcd(genLog_, gf_->order()) != 1 && gf_->order() > 1)
      throw DomainError("ModLField: generator exponent not coprime to group order");
    if (size_ <= 1024) {
      add_.resize(size_ * size_);
      mul_.resize(size_ * size_);
      for (u32 a = 0; a < size_; ++a)
        for (u32 b = 0; b < size_; ++b) {
          add_[a * size_ + b] = static_cast<std::uint16_t>(gf_->code_add(a, b));
          mul_[a * size_ + b] = static_cast<std::uint16_t>(mul_slow(a, b));
        }
    }
  }

  u64 l() const { return l_; }
  int k() const { return k_; }
  u64 size() const { return size_; }
  u64 order() const { return size_ - 1; }
  const GaloisField& galois() const { return *gf_; }
  u64 generator_log() const { return genLog_; }

  ModLValue zero() const { return {0}; }
  ModLValue one() const { return {1}; }
  ModLValue generator() const { return {gf_->exp_code(genLog_)}; }
  ModLValue from_int(i64 c) const { return {static_cast<u32>(mod(c, static_cast<i64>(l_)))}; }
  /// G^e
  ModLValue gen_pow(i64 e) const {
    u64 ord = order();
    u64 r = static_cast<u64>(mod(e, static_cast<i64>(ord)));
    return {gf_->exp_code(mulmod(r, genLog_, ord))};
  }
  /// log base G of a nonzero element
  u64 gen_log(ModLValue a) const {
    if (a.code == 0) throw DomainError("log of zero");
    u64 ord = order();
    u64 lg = gf_->log_code(a.code);
    return mulmod(lg, inv_mod(genLog_, ord), ord);
  }

  ModLValue add(ModLValue a, ModLValue b) const {
    if (!add_.empty()) return {add_[a.code * size_ + b.code]};
    return {gf_->code_add(a.code, b.code)};
  }
  ModLValue neg(ModLValue a) const { return {gf_->code_neg(a.code)}; }
  ModLValue sub(ModLValue a, ModLValue b) const { return add(a, neg(b)); }
  ModLValue mul(ModLValue a, ModLValue b) const {
    if (!mul_.empty()) return {mul_[a.code * size_ + b.code]};
    return {mul_slow(a.code, b.code)};
  }
  ModLValue inv(ModLValue a) const {
    if (a.code == 0) throw DomainError("inverse of zero in F_{l^k}");
    u64 lg = gf_->log_code(a.code);
    return {gf_->exp_code((order() - lg) % order())};
  }
  ModLValue pow(ModLValue a, i64 e) const {
    if (a.code == 0) {
      if (e < 0) throw DomainError("negative power of zero");
      return e == 0 ? one() : zero();
    }
    u64 ord = order();
    u64 lg = gf_->log_code(a.code);
    return {gf_->exp_code(mulmod(lg, static_cast<u64>(mod(e, static_cast<i64>(ord))), ord))};
  }
  /// y -> y^l
  ModLValue frob(ModLValue a) const { return pow(a, static_cast<i64>(l_)); }

  nlohmann::ordered_json descriptor() const {
    nlohmann::ordered_json j;
    j["l"] = l_;
    j["k"] = k_;
    j["modulusPoly"] = gf_->modulus();
    // G as a polynomial in y, constant term first
    std::vector<u64> g;
    u32 c = generator().code;
    for (int i = 0; i < k_; ++i) {
      g.push_back(c % l_);
      c /= static_cast<u32>(l_);
    }
    j["generatorPoly"] = g;
    return j;
  }

 private:
  u32 mul_slow(u32 a, u32 b) const {
    if (a == 0 || b == 0) return 0;
    return gf_->exp_code(gf_->log_code(a) + gf_->log_code(b));
  }

  std::shared_ptr<const GaloisField> gf_;
  u64 l_;
  int k_;
  u64 size_ = 0;
  u64 genLog_ = 1;
  std::vector<std::uint16_t> add_, mul_;
};

using ModLFieldPtr = std::shared_ptr<const ModLField>;

/// Smallest k with (prime-to-l part of M) | l^k - 1.
inline int modl_degree_for(u64 M, u64 l) {
  auto [a, Mp] = split_prime_part(M, l);
  (void)a;
  return static_cast<int>(multiplicative_order(l % Mp, Mp));
}

/// Image of zeta_M^e: the l-power part dies, zeta_{M'} -> G^{(l^k-1)/M'}.
inline ModLValue reduce_root_mod_l(u64 M, i64 e, u64 l, const ModLField& F) {
  if (F.l() != l) throw DomainError("reduce_root_mod_l: field characteristic mismatch");
  auto [a, Mp] = split_prime_part(M, l);
  if (F.order() % Mp != 0) throw DomainError("reduce_root_mod_l: target field too small");
  u64 r = static_cast<u64>(mod(e, static_cast<i64>(M)));
  if (Mp == 1) return F.one();
  u64 la = ipow(l, static_cast<u64>(a)) % Mp;
  u64 u = inv_mod(la, Mp);
  u64 beta = mulmod(u, r % Mp, Mp);
  return F.gen_pow(static_cast<i64>((F.order() / Mp) * beta));
}

inline ModLValue reduce_cyclotomic(const CyclotomicInt& c, u64 l, const ModLField& F) {
  ModLValue s = F.zero();
  const auto& co = c.coeffs();
  for (std::size_t i = 0; i < co.size(); ++i) {
    if (co[i] % static_cast<i64>(l) == 0) continue;
    s = F.add(s, F.mul(F.from_int(co[i]), reduce_root_mod_l(c.conductor(), static_cast<i64>(i), l, F)));
  }
  return s;
}

/// An extension F' of F with an embedding iota: F -> F' and a generator G'
/// satisfying G'^{(|F'|-1)/(|F|-1)} = iota(G), so root-of-unity reductions
/// through F and F' agree.
struct ModLExtension {
  ModLFieldPtr field;
  std::vector<u32> iota;  // code in F -> code in F'
  ModLValue embed(ModLValue a) const { return {iota[a.code]}; }
};

inline ModLExtension extend_field(const ModLField& F, int k2) {
  if (k2 % F.k() != 0) throw DomainError("extend_field: degree must be a multiple");
  ModLField H(F.l(), k2);
  const GaloisField& gh = H.galois();
  u64 ord2 = H.order(), ord1 = F.order();
  u64 R = ord2 / ord1;
  const auto& m = F.galois().modulus();
  // find a root of m among elements of the degree-k subfield
  ModLValue root{0};
  bool found = false;
  for (u64 t = 0; t < ord1 && !found; ++t) {
    ModLValue r{gh.exp_code(t * R)};
    ModLValue acc = H.zero();
    for (std::size_t i = m.size(); i-- > 0;) acc = H.add(H.mul(acc, r), H.from_int(static_cast<i64>(m[i])));
    if (acc.code == 0) {
      root = r;
      found = true;
    }
  }
  if (!found) throw VerificationFailure("extend_field: modulus has no root in extension");
  ModLExtension ext;
  ext.iota.assign(F.size(), 0);
  for (u32 c = 0; c < F.size(); ++c) {
    ModLValue acc = H.zero(), pw = H.one();
    u32 x = c;
    for (int i = 0; i < F.k(); ++i) {
      acc = H.add(acc, H.mul(H.from_int(x % F.l()), pw));
      pw = H.mul(pw, root);
      x /= static_cast<u32>(F.l());
    }
    ext.iota[c] = acc.code;
  }
  // iota(G) = y'^c with R | c; pick G' = y'^j, j R = c mod ord2, gcd(j, ord2) = 1
  u64 c = gh.log_code(ext.iota[F.generator().code]);
  if (c % R != 0) throw VerificationFailure("extend_field: image of generator outside subfield");
  u64 j0 = (c / R) % ord1;
  u64 j = 0;
  for (u64 t = 0;; ++t) {
    j = j0 + t * ord1;
    if (j >= ord2) throw VerificationFailure("extend_field: no compatible generator");
    if (std::gcd(j, ord2) == 1) break;
  }
  ext.field = std::make_shared<const ModLField>(F.l(), k2, j);
  return ext;
}

}  // namespace tatebc
