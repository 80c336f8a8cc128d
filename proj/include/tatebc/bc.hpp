#pragma once

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "tatebc/chars.hpp"
#include "tatebc/gl.hpp"
#include "tatebc/parallel.hpp"

namespace tatebc {

/// Which field a level-zero parameter lives over: the base E, its unramified
/// extension of degree l, or a totally tamely ramified extension of degree l.
enum class FieldTag { Base, Unramified, Ramified };

inline std::string field_tag_name(FieldTag t) {
  switch (t) {
    case FieldTag::Base:
      return "base";
    case FieldTag::Unramified:
      return "unramified";
    default:
      return "ramified";
  }
}

/// Level-zero cuspidal datum: a regular character e of F_{q^n}^* where q is
/// the residue field size of the field named by `tag`. The central character
/// is extended to the uniformizer by `uniformizerValue` (default 1).
struct LevelZeroParam {
  u64 q = 0;
  int n = 0;
  u64 e = 0;
  RootOfUnity uniformizerValue;
  FieldTag tag = FieldTag::Base;
  bool rectApplied = false;

  u64 modulus() const { return ipow(q, static_cast<u64>(n)) - 1; }

  void validate() const {
    if (n < 1 || q < 2) throw DomainError("LevelZeroParam: bad (q, n)");
    if (!is_regular_char(e, n, q)) throw DomainError("LevelZeroParam: exponent is not regular");
  }

  nlohmann::ordered_json to_json(u64 l) const {
    return {{"fieldTag", field_tag_name(tag)},
            {"q", q},
            {"n", n},
            {"l", l},
            {"exponent", e},
            {"uniformizerValue", {{"order", uniformizerValue.M}, {"exponent", uniformizerValue.e}}},
            {"rectApplied", rectApplied}};
  }
};

inline LevelZeroParam base_param(u64 q, int n, u64 e) {
  LevelZeroParam p;
  p.q = q;
  p.n = n;
  p.e = e % (ipow(q, static_cast<u64>(n)) - 1);
  p.validate();
  return p;
}

namespace detail {
inline void check_bc_pre(const LevelZeroParam& p, u64 l) {
  if (!is_prime(l)) throw ConstraintViolation("base change: l must be prime");
  if (std::gcd(static_cast<u64>(p.n), l) != 1) throw ConstraintViolation("base change: gcd(n, l) must be 1");
  if (p.q % l == 0) throw ConstraintViolation("base change: l divides q");
  if (p.tag != FieldTag::Base) throw DomainError("base change: parameter must live over the base field");
  p.validate();
}
}  // namespace detail

/// Unramified degree-l base change: compose with the norm F_{q^{ln}} -> F_{q^n}.
inline LevelZeroParam bc_unramified(const LevelZeroParam& p, u64 l) {
  detail::check_bc_pre(p, l);
  LevelZeroParam r = p;
  r.q = checked_mul(ipow(p.q, l - 1), p.q);
  r.tag = FieldTag::Unramified;
  u64 R = r.modulus() / p.modulus();
  r.e = checked_mul(p.e % p.modulus(), R) % r.modulus();
  if (!is_regular_char(r.e, r.n, r.q)) throw VerificationFailure("bc_unramified: regularity lost");
  return r;
}

/// Inverse of bc_unramified on its image; empty when e is not a multiple of
/// (q^{ln} - 1)/(q^n - 1).
inline std::optional<LevelZeroParam> descend_unramified(const LevelZeroParam& p, u64 l) {
  if (p.tag != FieldTag::Unramified) throw DomainError("descend: parameter must live over the unramified extension");
  // recover the base residue size: q = p.q^{1/l}
  u64 q = 2;
  while (ipow(q, l) < p.q) ++q;
  if (ipow(q, l) != p.q) throw DomainError("descend: residue size is not an l-th power");
  LevelZeroParam r = p;
  r.q = q;
  r.tag = FieldTag::Base;
  u64 R = p.modulus() / r.modulus();
  if (p.e % R != 0) return std::nullopt;
  r.e = p.e / R;
  return r;
}

/// Totally tamely ramified degree-l base change: chi -> chi^l over the same
/// residue field. Needs l | q - 1 so that mu_l lies in the residue field.
inline LevelZeroParam bc_ramified(const LevelZeroParam& p, u64 l) {
  detail::check_bc_pre(p, l);
  if ((p.q - 1) % l != 0) throw ConstraintViolation("bc_ramified: l must divide q - 1");
  LevelZeroParam r = p;
  r.tag = FieldTag::Ramified;
  r.e = checked_mul(l, p.e) % p.modulus();
  if (!is_regular_char(r.e, r.n, r.q))
    throw VerificationFailure("bc_ramified: l * e = " + std::to_string(r.e) + " is not regular (counterexample)");
  return r;
}

/// True when the ramified base change is a Galois conjugate of the source.
inline bool ramified_is_galois_conjugate(const LevelZeroParam& p, u64 l) {
  return same_frobenius_orbit(p.e, checked_mul(l, p.e) % p.modulus(), p.n, p.q);
}

/// Value (-1)^{n-1} of the rectifier on a uniformizer.
inline RootOfUnity rectifier(int n) { return RootOfUnity(2, n - 1); }

/// (-1)^{l(n-1)} = (-1)^{n-1}; meaningful for gcd(n, l) = 1.
inline bool rectifier_parity_holds(int n, u64 l) {
  return RootOfUnity(2, static_cast<i64>(l) * (n - 1)) == rectifier(n);
}

/// Level-zero admissible pair (L_n / L, xi) read off a parameter.
struct AdmissiblePair {
  int extensionDeg = 0;
  MultChar xi;
  bool rectified = false;
  bool admissible = false;

  nlohmann::ordered_json to_json() const {
    return {{"extensionDeg", extensionDeg}, {"xiExponent", xi.e}, {"rectified", rectified}, {"admissible", admissible}};
  }
};

/// At level zero xi is trivial on 1 + p automatically, so admissibility is
/// regularity. With rectify = true the uniformizer value is multiplied by the
/// rectifier.
inline AdmissiblePair admissible_pair(LevelZeroParam& p, bool rectify) {
  AdmissiblePair a;
  a.extensionDeg = p.n;
  a.xi = MultChar{p.n, p.e};
  a.admissible = is_regular_char(p.e, p.n, p.q);
  if (rectify && !p.rectApplied) {
    p.uniformizerValue = p.uniformizerValue * rectifier(p.n);
    p.rectApplied = true;
  }
  a.rectified = p.rectApplied;
  return a;
}

// ---- vertex vanishing ----

/// dim ker(1 - c) on functions f on P_n(F_q) with f(u x) = psi(u) f(x) for
/// every u in U_n, where c is conjugation by diag(xi^{i_1}, ..., xi^{i_{n-1}}, 1)
/// and xi has order l in F_q^*. Solved by union-find with phases in Z/p.
struct VertexResult {
  int sectionDim = 0;
  int kernelDim = 0;
};

inline VertexResult vertex_kernel(int n, u64 q, u64 l, const std::vector<int>& iVec) {
  auto [p, f] = prime_power(q);
  if (!is_prime(l) || (q - 1) % l != 0) throw ConstraintViolation("vertex_kernel_dim: l must divide q - 1");
  if (n < 2) throw DomainError("vertex_kernel_dim: n must be at least 2");
  if (static_cast<int>(iVec.size()) != n - 1) throw DomainError("vertex_kernel_dim: iVec must have length n - 1");
  for (std::size_t k = 0; k < iVec.size(); ++k) {
    if (iVec[k] < 0) throw DomainError("vertex_kernel_dim: entries must be nonnegative");
    if (k + 1 < iVec.size() && iVec[k] < iVec[k + 1]) throw DomainError("vertex_kernel_dim: iVec must be decreasing");
  }
  FieldTower T(p, f, 1, 1);
  GL G(T);
  const u64 U = ipow(q, static_cast<u64>(n * (n - 1) / 2));
  if (GL::group_order(n - 1, q) * ipow(q, static_cast<u64>(n - 1)) * U > 50'000'000)
    throw BoundExceeded("vertex_kernel_dim: mirabolic group too large");

  // P_n(F_q) = [[A, v], [0, 1]]
  std::vector<Mat> P;
  for (const Mat& A : G.all_elements(n - 1, 1))
    for (u64 k = 0; k < ipow(q, static_cast<u64>(n - 1)); ++k) {
      Mat m = G.identity(n, 1);
      for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) m.at(i, j) = A.at(i, j);
      u64 r = k;
      for (int i = 0; i < n - 1; ++i, r /= q) m.at(i, n - 1) = G.elem_at(r % q, 1);
      P.push_back(m);
    }
  std::map<u64, std::size_t> id;
  for (std::size_t i = 0; i < P.size(); ++i) id[G.key(P[i])] = i;

  // U_n and psi(u) = zeta_p^{Tr(sum of superdiagonal)}
  std::vector<std::pair<Mat, u64>> units;
  for (u64 k = 0; k < U; ++k) {
    Mat u = G.identity(n, 1);
    u64 r = k;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, r /= q) u.at(i, j) = G.elem_at(r % q, 1);
    FieldElem s = T.zero();
    for (int i = 0; i + 1 < n; ++i) s = T.add(s, u.at(i, i + 1));
    units.emplace_back(u, T.abs_trace(1, s));
  }

  // union-find: f(x) = zeta_p^{w[x]} f(root)
  std::vector<std::size_t> parent(P.size());
  std::vector<u64> w(P.size(), 0);
  std::vector<char> bad(P.size(), 0);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    std::vector<std::size_t> path;
    while (parent[x] != x) {
      path.push_back(x);
      x = parent[x];
    }
    // compress, accumulating phases toward the root
    for (std::size_t i = path.size(); i-- > 0;) {
      std::size_t y = path[i];
      if (parent[y] != x) w[y] = (w[y] + w[parent[y]]) % p;
      parent[y] = x;
    }
    return x;
  };
  // impose f(y) = zeta^a f(x)
  auto relate = [&](std::size_t y, std::size_t x, u64 a) {
    std::size_t ry = find(y), rx = find(x);
    // f(y) = z^{w[y]} f(ry), f(x) = z^{w[x]} f(rx)
    u64 d = (a + w[x] + p - w[y]) % p;  // f(ry) = z^d f(rx)
    if (ry == rx) {
      if (d != 0) bad[ry] = 1;
      return;
    }
    parent[ry] = rx;
    w[ry] = d;
    if (bad[ry]) bad[rx] = 1;
  };
  auto components = [&]() {
    int c = 0;
    for (std::size_t i = 0; i < P.size(); ++i)
      if (find(i) == i && !bad[i]) ++c;
    return c;
  };

  for (std::size_t x = 0; x < P.size(); ++x)
    for (const auto& [u, a] : units) relate(id.at(G.key(G.mul(u, P[x]))), x, a);
  VertexResult res;
  res.sectionDim = components();

  // c-fixed: f(t x t^-1) = f(x)
  FieldElem xi = T.from_log(static_cast<i64>((q - 1) / l));
  std::vector<FieldElem> d(n, T.one());
  for (int k = 0; k < n - 1; ++k) d[k] = T.pow(xi, iVec[k]);
  Mat t = G.diag(1, d), ti = G.inverse(t);
  for (std::size_t x = 0; x < P.size(); ++x) relate(id.at(G.key(G.mul(G.mul(t, P[x]), ti))), x, 0);
  res.kernelDim = components();
  return res;
}

inline int vertex_kernel_dim(int n, u64 q, u64 l, const std::vector<int>& iVec) {
  return vertex_kernel(n, q, l, iVec).kernelDim;
}

/// Every weakly decreasing vector in [0, l]^{n-1}.
inline std::vector<std::vector<int>> ivec_grid(int n, u64 l) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int maxv) -> void {
    if (static_cast<int>(cur.size()) == n - 1) {
      out.push_back(cur);
      return;
    }
    for (int v = maxv; v >= 0; --v) {
      cur.push_back(v);
      self(self, v);
      cur.pop_back();
    }
  };
  rec(rec, static_cast<int>(l));
  std::reverse(out.begin(), out.end());
  return out;
}

/// Some i_k - i_{k+1} (with i_n = 0) nonzero mod l.
inline bool has_nonzero_difference(const std::vector<int>& iVec, u64 l) {
  for (std::size_t k = 0; k < iVec.size(); ++k) {
    int next = k + 1 < iVec.size() ? iVec[k + 1] : 0;
    if ((iVec[k] - next) % static_cast<int>(l) != 0) return true;
  }
  return false;
}

}  // namespace tatebc
