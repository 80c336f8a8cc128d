#pragma once

#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "tatebc/cyclotomic.hpp"
#include "tatebc/gl.hpp"
#include "tatebc/modl_field.hpp"
#include "tatebc/parallel.hpp"

namespace tatebc {

/// Character of F_{q^level}^*: g_level -> zeta_{q^level - 1}^e.
struct MultChar {
  int level = 1;
  u64 e = 0;
};

/// psi_s(x) = zeta_p^{Tr(s x)}, trace from F_{q^level} down to F_p.
struct AddChar {
  int level = 1;
  FieldElem shift;
};

/// Discrete log of x relative to the generator g_d of F_{q^d}^*.
inline u64 level_log(const FieldTower& T, FieldElem x, int d) {
  if (x.is_zero()) throw DomainError("level_log: zero has no logarithm");
  u64 idx = T.subfield_index(d);
  if (x.v % idx != 0) throw DomainError("level_log: element outside subfield");
  return x.v / idx;
}

inline RootOfUnity mult_char_value(const FieldTower& T, const MultChar& c, FieldElem x) {
  u64 M = T.subfield_size(c.level) - 1;
  return RootOfUnity(M, static_cast<i64>(mulmod(c.e % M, level_log(T, x, c.level), M)));
}

/// Exponent a with psi(x) = zeta_p^a.
inline u64 add_char_exponent(const FieldTower& T, const AddChar& psi, FieldElem x) {
  return T.abs_trace(psi.level, T.mul(psi.shift, x));
}

// ---- regularity ----

inline bool is_regular_char(u64 e, int n, u64 Q) {
  u64 M = checked_mul(ipow(Q, n - 1), Q) - 1;
  std::set<u64> orbit;
  u64 x = e % M;
  for (int j = 0; j < n; ++j) {
    orbit.insert(x);
    x = mulmod(x, Q % M, M);
  }
  return static_cast<int>(orbit.size()) == n;
}
inline bool is_regular_char(const MultChar& c, int n, u64 Q) { return is_regular_char(c.e, n, Q); }

inline std::vector<u64> regular_exponents(int n, u64 Q) {
  u64 M = ipow(Q, n) - 1;
  std::vector<u64> out;
  for (u64 e = 0; e < M; ++e)
    if (is_regular_char(e, n, Q)) out.push_back(e);
  return out;
}

/// Smallest element of each Frobenius orbit of regular exponents.
inline std::vector<u64> regular_orbit_reps(int n, u64 Q) {
  u64 M = ipow(Q, n) - 1;
  std::vector<u64> out;
  for (u64 e : regular_exponents(n, Q)) {
    u64 x = e, m = e;
    for (int j = 0; j < n; ++j) {
      x = mulmod(x, Q % M, M);
      m = std::min(m, x);
    }
    if (m == e) out.push_back(e);
  }
  return out;
}

inline bool same_frobenius_orbit(u64 e1, u64 e2, int n, u64 Q) {
  u64 M = ipow(Q, n) - 1;
  u64 x = e1 % M;
  for (int j = 0; j < n; ++j) {
    if (x == e2 % M) return true;
    x = mulmod(x, Q % M, M);
  }
  return false;
}

/// phi over F_{q^{ln}} that factors through the norm to F_{q^n}, as psi.
inline std::optional<MultChar> frobenius_fixed_descend(const FieldTower& T, const MultChar& phi) {
  const int n = T.n(), l = T.l();
  if (phi.level != l * n) throw DomainError("descend: character must live on F_{q^{ln}}");
  u64 big = T.subfield_size(l * n) - 1, small = T.subfield_size(n) - 1;
  u64 R = big / small;
  if (phi.e % big % R != 0) return std::nullopt;
  MultChar psi{n, (phi.e % big) / R};
  if (!is_regular_char(psi, n, T.q())) throw VerificationFailure("descend: descended character is not regular");
  return psi;
}

// ---- Green polynomials ----

namespace detail {
inline i64 checked_i64(__int128 v) {
  if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
    throw BoundExceeded("Green polynomial value overflow");
  return static_cast<i64>(v);
}
inline __int128 pow128(i64 t, u64 e) {
  __int128 r = 1;
  for (u64 i = 0; i < e; ++i) {
    r *= t;
    checked_i64(r);
  }
  return r;
}
inline bool is_single_part(const Partition& p) { return p.size() == 1; }
inline bool is_all_ones(const Partition& p) {
  for (int x : p)
    if (x != 1) return false;
  return !p.empty();
}
}  // namespace detail

/// Two readings of the exponent in the closed form for Q({1^n}, mu).
enum class GreenReading { ExponentFieldSize, ExponentN };

struct GreenRational {
  i64 num = 0;
  i64 den = 1;
  bool integral() const { return den != 0 && num % den == 0; }
};

/// Q({1^n}, mu)(T) = (-1)^r (1-T)...(1-T^E) / prod_{i<=n} (T^i - 1)^{r_i(mu)},
/// r = #parts(mu), r_i = #parts >= i, E = T or n depending on the reading.
inline GreenRational green_Q_all_ones(const Partition& mu, i64 Tval, GreenReading reading) {
  int n = partition_size(mu);
  u64 E = reading == GreenReading::ExponentN ? static_cast<u64>(n) : static_cast<u64>(Tval);
  if (reading == GreenReading::ExponentFieldSize && Tval < 0) throw DomainError("green_Q: negative field size");
  __int128 num = (mu.size() % 2) ? -1 : 1;
  for (u64 j = 1; j <= E; ++j) {
    num *= 1 - detail::pow128(Tval, j);
    detail::checked_i64(num);
  }
  __int128 den = 1;
  for (int i = 1; i <= n; ++i) {
    int ri = 0;
    for (int part : mu)
      if (part >= i) ++ri;
    for (int k = 0; k < ri; ++k) {
      den *= detail::pow128(Tval, static_cast<u64>(i)) - 1;
      detail::checked_i64(den);
    }
  }
  return {detail::checked_i64(num), detail::checked_i64(den)};
}

/// Green polynomial at T = Tval for the closed-form cases: lambda = {n}, or mu
/// a single part. lambda = {1^n} needs an explicit reading.
inline i64 green_Q(const Partition& lambda, const Partition& mu, i64 Tval,
                   std::optional<GreenReading> reading = std::nullopt) {
  if (partition_size(lambda) != partition_size(mu) || lambda.empty())
    throw DomainError("green_Q: partitions of different sizes");
  if (detail::is_single_part(lambda)) return 1;
  if (detail::is_single_part(mu)) {
    __int128 r = 1;
    for (u64 j = 1; j < lambda.size(); ++j) {
      r *= 1 - detail::pow128(Tval, j);
      detail::checked_i64(r);
    }
    return detail::checked_i64(r);
  }
  if (detail::is_all_ones(lambda)) {
    if (!reading) throw DomainError("green_Q: Q({1^n}, mu) requires choosing a reading of the exponent");
    GreenRational g = green_Q_all_ones(mu, Tval, *reading);
    if (!g.integral()) throw DomainError("green_Q: closed form is not an integer under this reading");
    return g.num / g.den;
  }
  throw DomainError("green_Q: partition pair outside the closed forms");
}

// ---- cuspidal characters ----

struct CuspidalDatum {
  std::shared_ptr<const FieldTower> tower;
  int groupLevel = 1;  // 1: GL_n(F_q); l: GL_n(F_{q^l})
  MultChar chi;        // character of F_{Q^n}^*, Q = q^groupLevel
  std::string name;

  int n() const { return tower->n(); }
  u64 Q() const { return tower->subfield_size(groupLevel); }
  u64 modulus() const { return tower->subfield_size(chi.level) - 1; }
  /// Order of chi.
  u64 conductor() const { return modulus() / std::gcd(chi.e % modulus(), modulus()); }
  /// Exponent of chi(g_level^k) = zeta_conductor^{k * reduced_exponent()}.
  u64 reduced_exponent() const { return (chi.e % modulus()) / (modulus() / conductor()); }
};

inline CuspidalDatum make_cuspidal_datum(std::shared_ptr<const FieldTower> T, int groupLevel, u64 e,
                                         std::string name = "") {
  if (groupLevel != 1 && groupLevel != T->l()) throw DomainError("datum: group level must be 1 or l");
  CuspidalDatum d;
  d.tower = std::move(T);
  d.groupLevel = groupLevel;
  d.chi = MultChar{groupLevel * d.tower->n(), e % (d.tower->subfield_size(groupLevel * d.tower->n()) - 1)};
  d.name = name.empty() ? "e" + std::to_string(d.chi.e) : std::move(name);
  if (!is_regular_char(d.chi, d.n(), d.Q())) throw DomainError("datum: character is not regular");
  return d;
}

/// One datum per Frobenius orbit of regular characters.
inline std::vector<CuspidalDatum> cuspidal_data(std::shared_ptr<const FieldTower> T, int groupLevel) {
  std::vector<CuspidalDatum> out;
  for (u64 e : regular_orbit_reps(T->n(), T->subfield_size(groupLevel))) out.push_back(make_cuspidal_datum(T, groupLevel, e));
  return out;
}

/// prod_{i=1}^{n-1} (Q^i - 1)
inline i64 cuspidal_degree(int n, u64 Q) {
  u64 r = 1;
  for (int i = 1; i < n; ++i) r = checked_mul(r, ipow(Q, i) - 1);
  return static_cast<i64>(r);
}

namespace detail {
// (-1)^{n-1} * Q(nu, {n/d})(Q^d)
inline i64 cuspidal_scalar(int n, const Partition& nu, int d, u64 Q) {
  i64 H = green_Q(nu, Partition{n / d}, static_cast<i64>(ipow(Q, d)));
  return (n % 2 == 1) ? H : -H;
}
inline void check_invariant(const CuspidalDatum& d, const ClassInvariant& inv) {
  if (inv.level != d.groupLevel) throw DomainError("cuspidal_char: invariant and datum live over different fields");
  if (inv.size() != d.n()) throw DomainError("cuspidal_char: invariant of the wrong size");
}
}  // namespace detail

/// Literal evaluation: sum over every torus element t of F_{Q^n}^* with p(t) = 0
/// and over its n Frobenius conjugates, then the exact division by n.
inline CyclotomicInt cuspidal_char(const CuspidalDatum& d, const ClassInvariant& inv) {
  detail::check_invariant(d, inv);
  if (inv.factors.size() != 1) return CyclotomicInt::integer(0);
  const FieldTower& T = *d.tower;
  const PolyRing R(T);
  const auto& [p, nu] = inv.factors[0];
  const int n = d.n();
  const u64 Q = d.Q();
  const u64 M = d.conductor(), a = d.reduced_exponent();
  const u64 idx = T.subfield_index(d.chi.level);
  const u64 torus = d.modulus();
  RootSum rs(M);
  for (u64 k = 0; k < torus; ++k) {
    FieldElem t = FieldElem::from_log(k * idx);
    if (!R.eval(p, t).is_zero()) continue;
    u64 kj = k;
    for (int j = 0; j < n; ++j) {
      rs.add(mulmod(a, kj % M, M));
      kj = mulmod(kj, Q % torus, torus);
    }
  }
  if (!rs.divide_counts(n)) throw VerificationFailure("cuspidal_char: division by n is not exact");
  return detail::cuspidal_scalar(n, nu, p.deg(), Q) * rs.compressed_value();
}

/// Torus elements of F_{Q^n}^* grouped by their characteristic polynomial over F_Q.
class TorusIndex {
 public:
  TorusIndex(const FieldTower& T, int groupLevel) : T_(T), level_(groupLevel), n_(T.n()) {
    const PolyRing R(T);
    const int big = level_ * n_;
    const u64 idx = T.subfield_index(big);
    const u64 torus = T.subfield_size(big) - 1;
    Q_ = T.subfield_size(level_);
    for (u64 k = 0; k < torus; ++k) {
      FieldElem t = FieldElem::from_log(k * idx);
      std::vector<FieldElem> conj;
      FieldElem y = t;
      for (int j = 0; j < n_; ++j) {
        conj.push_back(y);
        y = T.frob(y, level_);
      }
      Poly c = R.from_roots(conj);
      if (!R.coeffs_in_level(c, level_)) throw VerificationFailure("torus charpoly not defined over the base");
      map_[key(c)].push_back(k);
    }
  }
  int level() const { return level_; }

  /// Logs (relative to g_{Q^n}) of torus elements with characteristic polynomial c.
  const std::vector<u64>& roots_of(const Poly& c) const {
    static const std::vector<u64> none;
    if (c.deg() != n_ || c.lead() != T_.one()) return none;
    auto it = map_.find(key(c));
    return it == map_.end() ? none : it->second;
  }

 private:
  u64 key(const Poly& c) const {
    u64 k = 0;
    for (int i = n_ - 1; i >= 0; --i) {
      FieldElem x = c.c[i];
      u64 digit = x.is_zero() ? 0 : 1 + x.v / T_.subfield_index(level_);
      k = k * Q_ + digit;
    }
    return k;
  }

  const FieldTower& T_;
  int level_, n_;
  u64 Q_ = 0;
  std::unordered_map<u64, std::vector<u64>> map_;
};

/// Same value through the torus index: the roots of p are looked up by the
/// characteristic polynomial p^{n/deg p}, with no division.
inline CyclotomicInt cuspidal_char_fast(const CuspidalDatum& d, const TorusIndex& index, const ClassInvariant& inv) {
  detail::check_invariant(d, inv);
  if (index.level() != d.groupLevel) throw DomainError("cuspidal_char_fast: index built for another level");
  if (inv.factors.size() != 1) return CyclotomicInt::integer(0);
  const PolyRing R(*d.tower);
  const auto& [p, nu] = inv.factors[0];
  const int n = d.n();
  const auto& roots = index.roots_of(R.pow(p, n / p.deg()));
  if (static_cast<int>(roots.size()) != p.deg()) throw VerificationFailure("cuspidal_char_fast: root count mismatch");
  const u64 M = d.conductor(), a = d.reduced_exponent();
  RootSum rs(M);
  for (u64 k : roots) rs.add(mulmod(a, k % M, M));
  return detail::cuspidal_scalar(n, nu, p.deg(), d.Q()) * rs.compressed_value();
}

/// Exact value from a monic characteristic polynomial c and the number of
/// parts of the Jordan type; zero unless c is a power of one irreducible.
inline CyclotomicInt cuspidal_char_from_charpoly(const CuspidalDatum& d, const TorusIndex& index, const Poly& c, int parts) {
  const auto& roots = index.roots_of(c);
  if (roots.empty()) return CyclotomicInt::integer(0);
  const int n = d.n();
  const int deg = static_cast<int>(roots.size());
  if (n % deg != 0 || parts < 1 || parts > n / deg) throw DomainError("cuspidal_char_from_charpoly: inconsistent class data");
  const u64 M = d.conductor(), a = d.reduced_exponent();
  RootSum rs(M);
  for (u64 k : roots) rs.add(mulmod(a, k % M, M));
  Partition nu(parts, 1);
  nu[0] = n / deg - (parts - 1);  // any partition with this many parts gives the same value
  return detail::cuspidal_scalar(n, nu, deg, d.Q()) * rs.compressed_value();
}

/// Value reduced mod l, from a monic characteristic polynomial c and the number
/// of parts of the Jordan type (enough to pin the value when c = p^{n/deg p}).
inline ModLValue cuspidal_char_modl(const CuspidalDatum& d, const TorusIndex& index, const Poly& c, int parts,
                                    const ModLField& F) {
  const auto& roots = index.roots_of(c);
  if (roots.empty()) return F.zero();
  const int n = d.n();
  const int deg = static_cast<int>(roots.size());
  if (n % deg != 0 || parts < 1 || parts > n / deg) throw DomainError("cuspidal_char_modl: inconsistent class data");
  const u64 M = d.conductor(), a = d.reduced_exponent();
  ModLValue s = F.zero();
  for (u64 k : roots) s = F.add(s, reduce_root_mod_l(M, static_cast<i64>(mulmod(a, k % M, M)), F.l(), F));
  // (-1)^{n-1} prod_{j=1}^{parts-1} (1 - (Q^deg)^j) mod l
  const u64 l = F.l();
  u64 Qd = powmod(d.Q() % l, static_cast<u64>(deg), l);
  i64 H = (n % 2 == 1) ? 1 : -1;
  for (int j = 1; j < parts; ++j) H = mod(H * mod(1 - static_cast<i64>(powmod(Qd, j, l)), static_cast<i64>(l)), static_cast<i64>(l));
  return F.mul(F.from_int(H), s);
}

// ---- additive characters ----

/// Nondegenerate additive character of F_{q^level} fixed by x -> x^{q^frobDeg}.
inline AddChar nondegenerate_psi(const FieldTower& T, int level, int frobDeg) {
  if (level % frobDeg != 0) throw DomainError("nondegenerate_psi: Frobenius subfield must divide the field");
  AddChar psi{level, T.one()};
  bool nontrivial = false;
  std::vector<u64> hist(T.p(), 0);
  for (auto u : T.elements(level)) {
    u64 a = add_char_exponent(T, psi, u);
    if (a != add_char_exponent(T, psi, T.frob(u, frobDeg))) throw VerificationFailure("psi is not Frobenius-fixed");
    if (a != 0) nontrivial = true;
    hist[a]++;
  }
  // a nontrivial character takes every value of mu_p equally often, so its sum vanishes
  for (u64 h : hist)
    if (h != hist[0]) throw VerificationFailure("psi values are not equidistributed");
  if (!nontrivial) throw VerificationFailure("psi is trivial");
  return psi;
}

// ---- tables ----

struct CharTable {
  std::vector<ConjClass> classes;
  std::vector<CuspidalDatum> data;
  std::vector<std::vector<CyclotomicInt>> values;  // [datum][class]
};

inline CharTable cuspidal_table(const GL& G, const std::vector<CuspidalDatum>& data, const std::vector<ConjClass>& classes,
                                bool literal = true) {
  CharTable t;
  t.classes = classes;
  t.data = data;
  t.values.assign(data.size(), std::vector<CyclotomicInt>(classes.size()));
  std::unique_ptr<TorusIndex> index;
  if (!literal && !data.empty()) index = std::make_unique<TorusIndex>(G.tower(), data[0].groupLevel);
  parallel_for(data.size() * classes.size(), [&](std::size_t i) {
    std::size_t a = i / classes.size(), b = i % classes.size();
    t.values[a][b] = literal ? cuspidal_char(data[a], classes[b].inv) : cuspidal_char_fast(data[a], *index, classes[b].inv);
  });
  return t;
}

/// sum over classes of |class| * chi * conj(chi)
inline CyclotomicInt norm_squared(const std::vector<CyclotomicInt>& row, const std::vector<ConjClass>& classes) {
  CyclotomicInt s = CyclotomicInt::integer(0);
  for (std::size_t i = 0; i < classes.size(); ++i)
    s += static_cast<i64>(classes[i].size) * (row[i] * row[i].conj());
  return s;
}

inline nlohmann::ordered_json cyclotomic_json(const CyclotomicInt& c) {
  nlohmann::ordered_json j;
  j["conductor"] = c.conductor();
  j["coeffs"] = c.coeffs();
  return j;
}

inline std::string char_table_csv(const FieldTower& T, const CharTable& t) {
  std::ostringstream os;
  os << "exponent,class,factors,size,conductor,coefficients\n";
  for (std::size_t a = 0; a < t.data.size(); ++a)
    for (std::size_t b = 0; b < t.classes.size(); ++b) {
      const auto& v = t.values[a][b];
      os << t.data[a].chi.e << "," << b << "," << invariant_string(T, t.classes[b].inv) << "," << t.classes[b].size << ","
         << v.conductor() << ",";
      for (std::size_t k = 0; k < v.coeffs().size(); ++k) os << (k ? " " : "") << v.coeffs()[k];
      os << "\n";
    }
  return os.str();
}

}  // namespace tatebc
