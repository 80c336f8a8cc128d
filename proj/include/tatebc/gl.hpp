#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "tatebc/arith.hpp"
#include "tatebc/fields.hpp"
#include "tatebc/poly.hpp"

namespace tatebc {

/// Square matrix over F_{q^level} inside a tower. The level is a tag: all
/// arithmetic checks it and never coerces between levels.
struct Mat {
  int n = 0;
  int level = 1;
  std::vector<FieldElem> a;

  FieldElem& at(int i, int j) { return a[i * n + j]; }
  FieldElem at(int i, int j) const { return a[i * n + j]; }
  friend bool operator==(const Mat& x, const Mat& y) { return x.n == y.n && x.level == y.level && x.a == y.a; }
  friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }
};

/// Conjugacy class label: (monic irreducible, Jordan-type partition) pairs,
/// sorted by polynomial, over the field F_{q^level}.
struct ClassInvariant {
  int level = 1;
  std::vector<std::pair<Poly, Partition>> factors;

  friend bool operator==(const ClassInvariant& x, const ClassInvariant& y) {
    return x.level == y.level && x.factors == y.factors;
  }
  friend bool operator!=(const ClassInvariant& x, const ClassInvariant& y) { return !(x == y); }
  friend bool operator<(const ClassInvariant& x, const ClassInvariant& y) {
    if (x.level != y.level) return x.level < y.level;
    return x.factors < y.factors;
  }
  int size() const {
    int s = 0;
    for (auto& [p, nu] : factors) s += p.deg() * partition_size(nu);
    return s;
  }
};

class GL {
 public:
  explicit GL(const FieldTower& T) : T_(T), R_(T) {}
  const FieldTower& tower() const { return T_; }
  const PolyRing& polys() const { return R_; }

  // ---- construction ----
  Mat zero(int n, int level) const {
    T_.check_level(level);
    return Mat{n, level, std::vector<FieldElem>(n * n, T_.zero())};
  }
  Mat identity(int n, int level) const {
    Mat m = zero(n, level);
    for (int i = 0; i < n; ++i) m.at(i, i) = T_.one();
    return m;
  }
  Mat make(int n, int level, const std::vector<FieldElem>& entries) const {
    if (static_cast<int>(entries.size()) != n * n) throw DomainError("Mat: wrong entry count");
    Mat m{n, level, entries};
    check_entries(m);
    return m;
  }
  Mat diag(int level, const std::vector<FieldElem>& d) const {
    int n = static_cast<int>(d.size());
    Mat m = zero(n, level);
    for (int i = 0; i < n; ++i) m.at(i, i) = d[i];
    check_entries(m);
    return m;
  }
  void check_entries(const Mat& m) const {
    for (auto x : m.a)
      if (!T_.in_subfield(x, m.level)) throw DomainError("Mat: entry outside declared field");
  }
  /// View of m over a larger field F_{q^level'} (level | level').
  Mat embed(const Mat& m, int level) const {
    T_.check_level(level);
    if (level % m.level != 0) throw DomainError("embed: target level must be a multiple");
    Mat r = m;
    r.level = level;
    return r;
  }
  /// Entrywise x -> x^{q^k}.
  Mat frob(const Mat& m, int k = 1) const {
    Mat r = m;
    for (auto& x : r.a) x = T_.frob(x, k);
    return r;
  }

  // ---- arithmetic ----
  Mat mul(const Mat& x, const Mat& y) const {
    same(x, y);
    int n = x.n;
    Mat r = zero(n, x.level);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        FieldElem xik = x.at(i, k);
        if (xik.is_zero()) continue;
        for (int j = 0; j < n; ++j) r.at(i, j) = T_.add(r.at(i, j), T_.mul(xik, y.at(k, j)));
      }
    return r;
  }
  Mat add(const Mat& x, const Mat& y) const {
    same(x, y);
    Mat r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = T_.add(x.a[i], y.a[i]);
    return r;
  }
  Mat scale(const Mat& x, FieldElem s) const {
    Mat r = x;
    for (auto& v : r.a) v = T_.mul(v, s);
    return r;
  }
  Mat pow(Mat x, u64 e) const {
    Mat r = identity(x.n, x.level);
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }
  FieldElem det(const Mat& x) const {
    Mat m = x;
    int n = m.n;
    FieldElem d = T_.one();
    for (int c = 0; c < n; ++c) {
      int piv = -1;
      for (int r = c; r < n; ++r)
        if (!m.at(r, c).is_zero()) {
          piv = r;
          break;
        }
      if (piv < 0) return T_.zero();
      if (piv != c) {
        for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(c, j));
        d = T_.neg(d);
      }
      FieldElem pv = m.at(c, c);
      d = T_.mul(d, pv);
      FieldElem ip = T_.inv(pv);
      for (int r = c + 1; r < n; ++r) {
        FieldElem f = T_.mul(m.at(r, c), ip);
        if (f.is_zero()) continue;
        for (int j = c; j < n; ++j) m.at(r, j) = T_.sub(m.at(r, j), T_.mul(f, m.at(c, j)));
      }
    }
    return d;
  }
  bool invertible(const Mat& x) const { return !det(x).is_zero(); }
  Mat inverse(const Mat& x) const {
    int n = x.n;
    Mat m = x, r = identity(n, x.level);
    for (int c = 0; c < n; ++c) {
      int piv = -1;
      for (int i = c; i < n; ++i)
        if (!m.at(i, c).is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) throw DomainError("inverse: singular matrix");
      for (int j = 0; j < n; ++j) {
        std::swap(m.at(piv, j), m.at(c, j));
        std::swap(r.at(piv, j), r.at(c, j));
      }
      FieldElem ip = T_.inv(m.at(c, c));
      for (int j = 0; j < n; ++j) {
        m.at(c, j) = T_.mul(m.at(c, j), ip);
        r.at(c, j) = T_.mul(r.at(c, j), ip);
      }
      for (int i = 0; i < n; ++i) {
        if (i == c) continue;
        FieldElem f = m.at(i, c);
        if (f.is_zero()) continue;
        for (int j = 0; j < n; ++j) {
          m.at(i, j) = T_.sub(m.at(i, j), T_.mul(f, m.at(c, j)));
          r.at(i, j) = T_.sub(r.at(i, j), T_.mul(f, r.at(c, j)));
        }
      }
    }
    return r;
  }
  int rank(const Mat& x) const {
    Mat m = x;
    int n = m.n, rk = 0;
    for (int c = 0; c < n && rk < n; ++c) {
      int piv = -1;
      for (int r = rk; r < n; ++r)
        if (!m.at(r, c).is_zero()) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(rk, j));
      FieldElem ip = T_.inv(m.at(rk, c));
      for (int r = rk + 1; r < n; ++r) {
        FieldElem f = T_.mul(m.at(r, c), ip);
        if (f.is_zero()) continue;
        for (int j = c; j < n; ++j) m.at(r, j) = T_.sub(m.at(r, j), T_.mul(f, m.at(rk, j)));
      }
      ++rk;
    }
    return rk;
  }
  /// g x g^{-1}
  Mat conj(const Mat& g, const Mat& x) const { return mul(mul(g, x), inverse(g)); }
  FieldElem trace(const Mat& x) const {
    FieldElem s = T_.zero();
    for (int i = 0; i < x.n; ++i) s = T_.add(s, x.at(i, i));
    return s;
  }
  bool is_scalar(const Mat& x) const {
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < x.n; ++j) {
        if (i != j && !x.at(i, j).is_zero()) return false;
        if (x.at(i, j) != x.at(0, 0) && i == j) return false;
      }
    return true;
  }
  /// p(x) for a polynomial p
  Mat eval(const Poly& p, const Mat& x) const {
    Mat r = zero(x.n, x.level);
    for (int i = p.deg(); i >= 0; --i) {
      r = mul(r, x);
      for (int d = 0; d < x.n; ++d) r.at(d, d) = T_.add(r.at(d, d), p.c[i]);
    }
    return r;
  }

  /// Characteristic polynomial det(X - x) via Hessenberg reduction.
  Poly charpoly(const Mat& x) const {
    int n = x.n;
    Mat H = x;
    for (int j = 0; j + 2 < n; ++j) {
      int piv = -1;
      for (int i = j + 1; i < n; ++i)
        if (!H.at(i, j).is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      if (piv != j + 1) {
        for (int c = 0; c < n; ++c) std::swap(H.at(piv, c), H.at(j + 1, c));
        for (int r = 0; r < n; ++r) std::swap(H.at(r, piv), H.at(r, j + 1));
      }
      FieldElem ip = T_.inv(H.at(j + 1, j));
      for (int i = j + 2; i < n; ++i) {
        FieldElem u = T_.mul(H.at(i, j), ip);
        if (u.is_zero()) continue;
        for (int c = 0; c < n; ++c) H.at(i, c) = T_.sub(H.at(i, c), T_.mul(u, H.at(j + 1, c)));
        for (int r = 0; r < n; ++r) H.at(r, j + 1) = T_.add(H.at(r, j + 1), T_.mul(u, H.at(r, i)));
      }
    }
    // p_m = (X - h_mm) p_{m-1} - sum_{i<m} h_{i,m} (prod_{k=i+1}^{m} h_{k,k-1}) p_{i-1}
    std::vector<Poly> P(n + 1);
    P[0] = R_.one();
    for (int m = 1; m <= n; ++m) {
      P[m] = R_.mul(R_.linear(H.at(m - 1, m - 1)), P[m - 1]);
      FieldElem prod = T_.one();
      for (int i = m - 1; i >= 1; --i) {
        prod = T_.mul(prod, H.at(i, i - 1));
        FieldElem c = T_.mul(H.at(i - 1, m - 1), prod);
        if (c.is_zero()) continue;
        P[m] = R_.sub(P[m], R_.scale(P[i - 1], c));
      }
    }
    return P[n];
  }

  ClassInvariant class_invariant(const Mat& x) const { return class_invariant(x, x.level); }

  /// Invariant of x viewed in GL_n(F_{q^level}); level must be a multiple of x.level.
  ClassInvariant class_invariant(const Mat& x, int level) const {
    Mat y = level == x.level ? x : embed(x, level);
    if (!invertible(y)) throw DomainError("class_invariant: singular matrix");
    Poly cp = charpoly(y);
    auto fac = R_.factor(cp, level);
    ClassInvariant inv;
    inv.level = level;
    int n = y.n;
    for (auto& [p, m] : fac) {
      if (p.deg() == 1 && p.c[0].is_zero()) throw VerificationFailure("class_invariant: factor X in invertible matrix");
      Mat px = eval(p, y);
      Mat cur = identity(n, level);
      std::vector<int> kerDims{0};
      for (int j = 1; j <= m; ++j) {
        cur = mul(cur, px);
        int r = rank(cur);
        if ((n - r) % p.deg() != 0) throw VerificationFailure("class_invariant: kernel dimension not a multiple of degree");
        kerDims.push_back((n - r) / p.deg());
      }
      Partition conjNu;  // conjNu[j-1] = #{parts >= j}
      for (int j = 1; j <= m; ++j) {
        int c = kerDims[j] - kerDims[j - 1];
        if (c > 0) conjNu.push_back(c);
      }
      Partition nu = conjugate(conjNu);
      if (partition_size(nu) != m) throw VerificationFailure("class_invariant: partition size mismatch");
      inv.factors.emplace_back(p, nu);
    }
    return inv;
  }

  /// Characteristic polynomial recovered from an invariant.
  Poly charpoly_of(const ClassInvariant& inv) const {
    Poly r = R_.one();
    for (auto& [p, nu] : inv.factors) r = R_.mul(r, R_.pow(p, partition_size(nu)));
    return r;
  }

  /// x has order prime to l. Order divides lcm(Q^i - 1, i <= n) * p^e with p^e >= n.
  bool is_l_regular(const Mat& x, u64 l) const {
    u64 Q = T_.subfield_size(x.level);
    u64 L = 1;
    for (int i = 1; i <= x.n; ++i) L = std::lcm(L, ipow(Q, i) - 1);
    u64 pe = 1;
    while (pe < static_cast<u64>(x.n)) pe *= T_.p();
    L = checked_mul(L, pe);
    auto [a, Lp] = split_prime_part(L, l);
    (void)a;
    return pow(x, Lp) == identity(x.n, x.level);
  }

  /// Exact multiplicative order (small groups only).
  u64 order(const Mat& x) const {
    u64 Q = T_.subfield_size(x.level);
    u64 L = 1;
    for (int i = 1; i <= x.n; ++i) L = std::lcm(L, ipow(Q, i) - 1);
    u64 pe = 1;
    while (pe < static_cast<u64>(x.n)) pe *= T_.p();
    L = checked_mul(L, pe);
    Mat I = identity(x.n, x.level);
    if (pow(x, L) != I) throw VerificationFailure("order: element order does not divide group exponent");
    for (auto [p, e] : factorize(L)) {
      (void)e;
      while (L % p == 0 && pow(x, L / p) == I) L /= p;
    }
    return L;
  }

  static u64 group_order(int n, u64 Q) {
    u64 r = 1;
    u64 Qn = ipow(Q, n);
    for (int i = 0; i < n; ++i) r = checked_mul(r, Qn - ipow(Q, i));
    return r;
  }

  /// Companion matrix of a monic polynomial (subdiagonal ones, last column -coeffs).
  Mat companion(const Poly& p, int level) const {
    int d = p.deg();
    Mat m = zero(d, level);
    for (int i = 1; i < d; ++i) m.at(i, i - 1) = T_.one();
    for (int i = 0; i < d; ++i) m.at(i, d - 1) = T_.neg(p.c[i]);
    return m;
  }
  Mat block_diag(const std::vector<Mat>& blocks, int level) const {
    int n = 0;
    for (auto& b : blocks) n += b.n;
    Mat m = zero(n, level);
    int off = 0;
    for (auto& b : blocks) {
      for (int i = 0; i < b.n; ++i)
        for (int j = 0; j < b.n; ++j) m.at(off + i, off + j) = b.at(i, j);
      off += b.n;
    }
    return m;
  }

  /// Dense index of an element of F_{q^level}: 0 for zero, 1 + k for g_level^k.
  u64 elem_index(FieldElem x, int level) const {
    if (x.is_zero()) return 0;
    return 1 + x.v / T_.subfield_index(level);
  }
  FieldElem elem_at(u64 idx, int level) const {
    if (idx == 0) return T_.zero();
    return FieldElem::from_log((idx - 1) * T_.subfield_index(level));
  }
  /// Integer key of a matrix (base-Q digits); requires Q^{n^2} < 2^64.
  u64 key(const Mat& m) const {
    u64 Q = T_.subfield_size(m.level);
    u64 k = 0;
    for (int i = m.n * m.n - 1; i >= 0; --i) k = k * Q + elem_index(m.a[i], m.level);
    return k;
  }
  Mat from_key(u64 k, int n, int level) const {
    u64 Q = T_.subfield_size(level);
    Mat m = zero(n, level);
    for (int i = 0; i < n * n; ++i) {
      m.a[i] = elem_at(k % Q, level);
      k /= Q;
    }
    return m;
  }

  /// Generators of GL_n(F_{q^level}): diag(g, 1, ..., 1) and I + b e_ij with b
  /// running over an F_p-basis {g^k : k < [F_Q : F_p]}.
  std::vector<Mat> generators(int n, int level) const {
    std::vector<Mat> gens;
    FieldElem g = T_.subfield_gen(level);
    std::vector<FieldElem> d(n, T_.one());
    d[0] = g;
    gens.push_back(diag(level, d));
    int deg = T_.f() * level;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        for (int k = 0; k < deg; ++k) {
          Mat e = identity(n, level);
          e.at(i, j) = T_.pow(g, k);
          gens.push_back(e);
        }
      }
    return gens;
  }

  /// Every element of GL_n(F_{q^level}) in key order.
  std::vector<Mat> all_elements(int n, int level, u64 maxOrder = 100000) const {
    u64 Q = T_.subfield_size(level);
    u64 go = group_order(n, Q);
    if (go > maxOrder) throw BoundExceeded("all_elements: group order above bound");
    u64 total = ipow(Q, static_cast<u64>(n * n));
    std::vector<Mat> out;
    out.reserve(go);
    for (u64 k = 0; k < total; ++k) {
      Mat m = from_key(k, n, level);
      if (invertible(m)) out.push_back(std::move(m));
    }
    return out;
  }

  const FieldTower& T() const { return T_; }

 private:
  void same(const Mat& x, const Mat& y) const {
    if (x.n != y.n) throw DomainError("matrix size mismatch");
    if (x.level != y.level) throw DomainError("mixed-field matrix operation");
  }

  const FieldTower& T_;
  PolyRing R_;
};

struct ConjClass {
  Mat rep;
  u64 size = 0;
  ClassInvariant inv;
};

/// a_lambda(t) = |centralizer of a unipotent of Jordan type lambda in GL(t)|.
inline u64 centralizer_factor(const Partition& lam, u64 t) {
  Partition c = conjugate(lam);
  u64 e = 0;
  for (int x : c) e += static_cast<u64>(x) * x;
  std::map<int, int> mult;
  for (int x : lam) mult[x]++;
  u64 r = 1;
  for (auto [part, m] : mult) {
    (void)part;
    for (int j = 1; j <= m; ++j) {
      e -= j;
      r = checked_mul(r, ipow(t, j) - 1);
    }
  }
  return checked_mul(r, ipow(t, e));
}

/// Exhaustive orbit partition of GL_n(F_{q^level}) under conjugation.
inline std::vector<ConjClass> enumerate_classes_exhaustive(const GL& G, int n, int level, u64 maxOrder = 100000) {
  auto elems = G.all_elements(n, level, maxOrder);
  std::unordered_map<u64, std::size_t> id;
  id.reserve(elems.size() * 2);
  for (std::size_t i = 0; i < elems.size(); ++i) id[G.key(elems[i])] = i;
  auto gens = G.generators(n, level);
  std::vector<Mat> ginv;
  for (auto& g : gens) ginv.push_back(G.inverse(g));
  std::vector<int> cls(elems.size(), -1);
  std::vector<ConjClass> out;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (cls[i] >= 0) continue;
    int c = static_cast<int>(out.size());
    std::deque<std::size_t> queue{i};
    cls[i] = c;
    u64 size = 0;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      ++size;
      for (std::size_t s = 0; s < gens.size(); ++s) {
        Mat y = G.mul(G.mul(gens[s], elems[v]), ginv[s]);
        std::size_t w = id.at(G.key(y));
        if (cls[w] < 0) {
          cls[w] = c;
          queue.push_back(w);
        }
      }
    }
    out.push_back(ConjClass{elems[i], size, G.class_invariant(elems[i])});
  }
  return out;
}

/// Monic irreducibles over F_{q^level} of degree d, excluding X.
inline std::vector<Poly> monic_irreducibles(const GL& G, int d, int level) {
  const auto& T = G.tower();
  const auto& R = G.polys();
  u64 Q = T.subfield_size(level);
  std::vector<Poly> out;
  u64 total = ipow(Q, d);
  for (u64 k = 0; k < total; ++k) {
    Poly p;
    u64 kk = k;
    for (int i = 0; i < d; ++i) {
      p.c.push_back(G.elem_at(kk % Q, level));
      kk /= Q;
    }
    p.c.push_back(T.one());
    if (p.c[0].is_zero()) continue;
    if (R.is_irreducible(p, level)) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Classes from rational canonical data; sizes from centralizer orders.
inline std::vector<ConjClass> enumerate_classes_constructive(const GL& G, int n, int level) {
  const auto& T = G.tower();
  const auto& R = G.polys();
  u64 Q = T.subfield_size(level);
  u64 go = GL::group_order(n, Q);
  // atoms: (poly, partition) with total degree deg(p)*|nu|
  struct Atom {
    Poly p;
    Partition nu;
    int weight;
  };
  std::vector<std::vector<Poly>> irr(n + 1);
  for (int d = 1; d <= n; ++d) irr[d] = monic_irreducibles(G, d, level);
  std::vector<Atom> atoms;
  for (int d = 1; d <= n; ++d)
    for (const Poly& p : irr[d])
      for (int m = 1; d * m <= n; ++m)
        for (const Partition& nu : partitions_of(m)) atoms.push_back({p, nu, d * m});
  std::vector<ConjClass> out;
  // choose atoms with distinct polynomials, increasing atom index
  std::vector<int> chosen;
  std::function<void(std::size_t, int)> rec = [&](std::size_t start, int left) {
    if (left == 0) {
      std::vector<Mat> blocks;
      u64 cent = 1;
      ClassInvariant inv;
      inv.level = level;
      for (int ai : chosen) {
        const Atom& A = atoms[ai];
        for (int part : A.nu) blocks.push_back(G.companion(R.pow(A.p, part), level));
        cent = checked_mul(cent, centralizer_factor(A.nu, ipow(Q, A.p.deg())));
        inv.factors.emplace_back(A.p, A.nu);
      }
      std::sort(inv.factors.begin(), inv.factors.end());
      Mat rep = G.block_diag(blocks, level);
      if (go % cent != 0) throw VerificationFailure("centralizer order does not divide group order");
      out.push_back(ConjClass{rep, go / cent, inv});
      return;
    }
    for (std::size_t i = start; i < atoms.size(); ++i) {
      if (atoms[i].weight > left) continue;
      bool clash = false;
      for (int c : chosen)
        if (atoms[c].p == atoms[i].p) clash = true;
      if (clash) continue;
      chosen.push_back(static_cast<int>(i));
      rec(i + 1, left - atoms[i].weight);
      chosen.pop_back();
    }
  };
  rec(0, n);
  u64 total = 0;
  for (auto& c : out) total += c.size;
  if (total != go) throw VerificationFailure("constructive class sizes do not sum to group order");
  return out;
}

/// Exhaustive below the bound, constructive above it.
inline std::vector<ConjClass> enumerate_classes(const GL& G, int n, int level, u64 maxOrder = 100000) {
  u64 go = GL::group_order(n, G.tower().subfield_size(level));
  if (go <= maxOrder) return enumerate_classes_exhaustive(G, n, level, maxOrder);
  if (n > 3) throw BoundExceeded("enumerate_classes: group too large and n > 3");
  return enumerate_classes_constructive(G, n, level);
}

/// Transversal of U_{n-1} \ GL_{n-1}(F_{q^level}) with the action of
/// Frobenius x -> x^{q^frobDeg}.
struct CosetTransversal {
  int m = 0;  // = n - 1
  int level = 1;
  int frobDeg = 1;
  std::vector<Mat> reps;
  std::vector<std::size_t> frobOrbit;  // index of Frob(rep_i)
  std::vector<bool> fixed;
  std::size_t fixed_count() const { return static_cast<std::size_t>(std::count(fixed.begin(), fixed.end(), true)); }
};

/// Canonical representative of U g (U upper unitriangular acting on the left):
/// row i is reduced modulo the reduced echelon basis of the span of rows below.
inline Mat coset_canonical(const GL& G, const Mat& g) {
  const auto& T = G.tower();
  int m = g.n;
  Mat r = g;
  for (int i = m - 2; i >= 0; --i) {
    // echelon basis of rows i+1..m-1, reduced
    std::vector<std::vector<FieldElem>> basis;
    std::vector<int> pivots;
    for (int k = i + 1; k < m; ++k) {
      std::vector<FieldElem> v(m);
      for (int j = 0; j < m; ++j) v[j] = r.at(k, j);
      for (std::size_t b = 0; b < basis.size(); ++b) {
        FieldElem f = v[pivots[b]];
        if (f.is_zero()) continue;
        for (int j = 0; j < m; ++j) v[j] = T.sub(v[j], T.mul(f, basis[b][j]));
      }
      int pv = -1;
      for (int j = 0; j < m; ++j)
        if (!v[j].is_zero()) {
          pv = j;
          break;
        }
      if (pv < 0) continue;
      FieldElem ip = T.inv(v[pv]);
      for (auto& x : v) x = T.mul(x, ip);
      for (std::size_t b = 0; b < basis.size(); ++b) {
        FieldElem f = basis[b][pv];
        if (f.is_zero()) continue;
        for (int j = 0; j < m; ++j) basis[b][j] = T.sub(basis[b][j], T.mul(f, v[j]));
      }
      basis.push_back(v);
      pivots.push_back(pv);
    }
    for (std::size_t b = 0; b < basis.size(); ++b) {
      FieldElem f = r.at(i, pivots[b]);
      if (f.is_zero()) continue;
      for (int j = 0; j < m; ++j) r.at(i, j) = T.sub(r.at(i, j), T.mul(f, basis[b][j]));
    }
  }
  return r;
}

inline CosetTransversal mirabolic_transversal(const GL& G, int n, int level, int frobDeg, u64 maxOrder = 100000) {
  if (n < 2) throw DomainError("mirabolic_transversal: n must be at least 2");
  if (level % frobDeg != 0) throw DomainError("mirabolic_transversal: Frobenius subfield must divide level");
  CosetTransversal tr;
  tr.m = n - 1;
  tr.level = level;
  tr.frobDeg = frobDeg;
  std::map<u64, std::size_t> idx;
  for (const Mat& g : G.all_elements(n - 1, level, maxOrder)) {
    Mat c = coset_canonical(G, g);
    u64 k = G.key(c);
    if (idx.count(k)) continue;
    idx[k] = tr.reps.size();
    tr.reps.push_back(c);
  }
  int ratio = level / frobDeg;
  for (std::size_t i = 0; i < tr.reps.size(); ++i) {
    Mat f = G.frob(tr.reps[i], frobDeg);
    auto it = idx.find(G.key(f));
    if (it == idx.end()) throw VerificationFailure("Frobenius of a canonical rep is not canonical");
    tr.frobOrbit.push_back(it->second);
    tr.fixed.push_back(it->second == i);
  }
  // orbit sizes divide the order of Frobenius; for prime ratio they are 1 or ratio
  for (std::size_t i = 0; i < tr.reps.size(); ++i) {
    std::size_t j = i;
    int len = 0;
    do {
      j = tr.frobOrbit[j];
      ++len;
    } while (j != i && len <= ratio);
    if (j != i || ratio % len != 0) throw VerificationFailure("Frobenius orbit size does not divide its order");
  }
  return tr;
}

inline std::string hex_code(const FieldTower& T, FieldElem x) {
  std::ostringstream os;
  os << std::hex << T.code(x);
  return os.str();
}

inline std::string invariant_string(const FieldTower& T, const ClassInvariant& inv) {
  std::ostringstream os;
  for (std::size_t i = 0; i < inv.factors.size(); ++i) {
    if (i) os << ";";
    os << "[";
    const auto& p = inv.factors[i].first;
    for (int j = 0; j <= p.deg(); ++j) os << (j ? " " : "") << hex_code(T, p.c[j]);
    os << "]{";
    const auto& nu = inv.factors[i].second;
    for (std::size_t j = 0; j < nu.size(); ++j) os << (j ? "," : "") << nu[j];
    os << "}";
  }
  return os.str();
}

inline std::string class_table_csv(const GL& G, const std::vector<ConjClass>& classes) {
  const auto& T = G.tower();
  std::ostringstream os;
  os << "index,factors,size,representative\n";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& c = classes[i];
    os << i << "," << invariant_string(T, c.inv) << "," << c.size << ",";
    for (std::size_t j = 0; j < c.rep.a.size(); ++j) os << (j ? " " : "") << hex_code(T, c.rep.a[j]);
    os << "\n";
  }
  return os.str();
}

}  // namespace tatebc
