#pragma once

#include <map>
#include <string>
#include <vector>

#include "tatebc/model.hpp"
#include "tatebc/modl.hpp"
#include "tatebc/parallel.hpp"

namespace tatebc {

// ---- integer matrices and Smith normal form ----

struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<i64> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
  i64& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  i64 at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }

  static IntMatrix identity(int d) {
    IntMatrix m(d, d);
    for (int i = 0; i < d; ++i) m.at(i, i) = 1;
    return m;
  }
};

namespace ilin {

inline i64 cadd(i64 x, i64 y) {
  i64 r;
  if (__builtin_add_overflow(x, y, &r)) throw BoundExceeded("integer matrix entry overflow");
  return r;
}
inline i64 cmul(i64 x, i64 y) {
  i64 r;
  if (__builtin_mul_overflow(x, y, &r)) throw BoundExceeded("integer matrix entry overflow");
  return r;
}

inline IntMatrix mul(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) throw DomainError("integer matrix mul: shape mismatch");
  IntMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      i64 v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j) r.at(i, j) = cadd(r.at(i, j), cmul(v, y.at(k, j)));
    }
  return r;
}

inline IntMatrix sub(const IntMatrix& x, const IntMatrix& y) {
  IntMatrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = cadd(x.a[i], -y.a[i]);
  return r;
}

inline IntMatrix add(const IntMatrix& x, const IntMatrix& y) {
  IntMatrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = cadd(x.a[i], y.a[i]);
  return r;
}

inline IntMatrix pow(IntMatrix x, u64 e) {
  IntMatrix r = IntMatrix::identity(x.rows);
  while (e) {
    if (e & 1) r = mul(r, x);
    e >>= 1;
    if (e) x = mul(x, x);
  }
  return r;
}

/// 1 + s + ... + s^{l-1}
inline IntMatrix norm_operator(const IntMatrix& s, u64 l) {
  IntMatrix acc = IntMatrix::identity(s.rows), p = acc;
  for (u64 i = 1; i < l; ++i) {
    p = mul(p, s);
    acc = add(acc, p);
  }
  return acc;
}

inline ModLMatrix reduce(const IntMatrix& m, const ModLField& F) {
  ModLMatrix r(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = F.from_int(m.a[i]);
  return r;
}

}  // namespace ilin

/// U A V = D with U, V unimodular; vinv = V^{-1}. diag holds the nonzero
/// invariant factors d_1 | d_2 | ... (positive), so rank = diag.size().
struct SmithForm {
  std::vector<i64> diag;
  IntMatrix U, V, Vinv, D;
  int rank() const { return static_cast<int>(diag.size()); }
};

inline SmithForm smith_normal_form(const IntMatrix& A) {
  using ilin::cadd;
  using ilin::cmul;
  SmithForm s;
  IntMatrix M = A;
  const int r = A.rows, c = A.cols;
  s.U = IntMatrix::identity(r);
  s.V = IntMatrix::identity(c);
  s.Vinv = IntMatrix::identity(c);

  auto swap_rows = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < c; ++k) std::swap(M.at(i, k), M.at(j, k));
    for (int k = 0; k < r; ++k) std::swap(s.U.at(i, k), s.U.at(j, k));
  };
  auto swap_cols = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < r; ++k) std::swap(M.at(k, i), M.at(k, j));
    for (int k = 0; k < c; ++k) std::swap(s.V.at(k, i), s.V.at(k, j));
    for (int k = 0; k < c; ++k) std::swap(s.Vinv.at(i, k), s.Vinv.at(j, k));
  };
  // row i -= f * row t
  auto row_op = [&](int i, int t, i64 f) {
    for (int k = 0; k < c; ++k) M.at(i, k) = cadd(M.at(i, k), -cmul(f, M.at(t, k)));
    for (int k = 0; k < r; ++k) s.U.at(i, k) = cadd(s.U.at(i, k), -cmul(f, s.U.at(t, k)));
  };
  // col j -= f * col t
  auto col_op = [&](int j, int t, i64 f) {
    for (int k = 0; k < r; ++k) M.at(k, j) = cadd(M.at(k, j), -cmul(f, M.at(k, t)));
    for (int k = 0; k < c; ++k) s.V.at(k, j) = cadd(s.V.at(k, j), -cmul(f, s.V.at(k, t)));
    for (int k = 0; k < c; ++k) s.Vinv.at(t, k) = cadd(s.Vinv.at(t, k), cmul(f, s.Vinv.at(j, k)));
  };

  for (int t = 0; t < std::min(r, c); ++t) {
    while (true) {
      int bi = -1, bj = -1;
      i64 best = 0;
      for (int i = t; i < r; ++i)
        for (int j = t; j < c; ++j) {
          i64 v = M.at(i, j) < 0 ? -M.at(i, j) : M.at(i, j);
          if (v != 0 && (best == 0 || v < best)) {
            best = v;
            bi = i;
            bj = j;
          }
        }
      if (bi < 0) break;
      swap_rows(t, bi);
      swap_cols(t, bj);
      bool clean = true;
      for (int i = t + 1; i < r; ++i)
        if (M.at(i, t) != 0) {
          row_op(i, t, M.at(i, t) / M.at(t, t));
          if (M.at(i, t) != 0) clean = false;
        }
      for (int j = t + 1; j < c; ++j)
        if (M.at(t, j) != 0) {
          col_op(j, t, M.at(t, j) / M.at(t, t));
          if (M.at(t, j) != 0) clean = false;
        }
      if (!clean) continue;
      // divisibility: fold an offending row into row t and go again
      int bad = -1;
      for (int i = t + 1; i < r && bad < 0; ++i)
        for (int j = t + 1; j < c; ++j)
          if (M.at(i, j) % M.at(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_op(t, bad, -1);
    }
    if (M.at(t, t) == 0) break;
    if (M.at(t, t) < 0) {
      for (int k = 0; k < c; ++k) M.at(t, k) = -M.at(t, k);
      for (int k = 0; k < r; ++k) s.U.at(t, k) = -s.U.at(t, k);
    }
    s.diag.push_back(M.at(t, t));
  }
  s.D = M;
  return s;
}

/// Columns of V past the rank: a Z-basis of ker A (saturated).
inline IntMatrix integer_kernel(const SmithForm& s) {
  const int c = s.V.cols, k = c - s.rank();
  IntMatrix K(c, k);
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < k; ++j) K.at(i, j) = s.V.at(i, s.rank() + j);
  return K;
}

// ---- Tate cohomology of lattices ----

/// Finite abelian l-groups as lists of elementary divisors (l-powers > 1).
struct LatticeTate {
  std::vector<i64> t0, t1;
  int t0_rank() const { return static_cast<int>(t0.size()); }
  int t1_rank() const { return static_cast<int>(t1.size()); }
};

namespace detail {

inline i64 l_part(i64 d, u64 l) {
  i64 r = 1;
  while (d % static_cast<i64>(l) == 0) {
    d /= static_cast<i64>(l);
    r *= static_cast<i64>(l);
  }
  return r;
}

// ker(a) / im(b), where im(b) is contained in ker(a) with finite index
inline std::vector<i64> lattice_subquotient(const IntMatrix& a, const IntMatrix& b, u64 l) {
  SmithForm sa = smith_normal_form(a);
  const int rk = sa.rank(), k = a.cols - rk;
  IntMatrix coords = ilin::mul(sa.Vinv, b);
  // rows [0, rk) must vanish: im(b) lies in ker(a)
  for (int i = 0; i < rk; ++i)
    for (int j = 0; j < coords.cols; ++j)
      if (coords.at(i, j) != 0) throw VerificationFailure("tate_lattice: image not inside kernel");
  IntMatrix C(k, b.cols);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < b.cols; ++j) C.at(i, j) = coords.at(rk + i, j);
  SmithForm sc = smith_normal_form(C);
  if (sc.rank() != k) throw VerificationFailure("tate_lattice: quotient is not finite");
  std::vector<i64> out;
  for (i64 d : sc.diag) {
    if (d == 1) continue;
    i64 lp = l_part(d, l);
    if (lp != d) throw VerificationFailure("tate_lattice: torsion prime to l");
    out.push_back(lp);
  }
  return out;
}

}  // namespace detail

/// T^0 = ker(1 - s) / im(N) and T^1 = ker(N) / im(1 - s) for s of order
/// dividing l acting on Z^d.
inline LatticeTate tate_lattice(const IntMatrix& sigma, u64 l) {
  if (sigma.rows != sigma.cols) throw DomainError("tate_lattice: non-square matrix");
  const int d = sigma.rows;
  if (!(ilin::pow(sigma, l) == IntMatrix::identity(d))) throw DomainError("tate_lattice: order does not divide l");
  IntMatrix A = ilin::sub(IntMatrix::identity(d), sigma);
  IntMatrix N = ilin::norm_operator(sigma, l);
  return {detail::lattice_subquotient(A, N, l), detail::lattice_subquotient(N, A, l)};
}

inline IntMatrix permutation_matrix(const std::vector<std::size_t>& perm) {
  IntMatrix m(static_cast<int>(perm.size()), static_cast<int>(perm.size()));
  for (std::size_t i = 0; i < perm.size(); ++i) m.at(static_cast<int>(perm[i]), static_cast<int>(i)) = 1;
  return m;
}

inline std::vector<std::vector<std::size_t>> cycles_of(const std::vector<std::size_t>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> cyc;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      cyc.push_back(j);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

/// A permutation lattice splits along the orbits; each orbit block goes
/// through tate_lattice.
inline LatticeTate tate_lattice_permutation(const std::vector<std::size_t>& perm, u64 l) {
  LatticeTate r;
  for (const auto& cyc : cycles_of(perm)) {
    if (l % cyc.size() != 0) throw DomainError("tate_lattice: order does not divide l");
    std::vector<std::size_t> local(cyc.size());
    for (std::size_t i = 0; i < cyc.size(); ++i) local[i] = (i + 1) % cyc.size();
    LatticeTate b = tate_lattice(permutation_matrix(local), l);
    r.t0.insert(r.t0.end(), b.t0.begin(), b.t0.end());
    r.t1.insert(r.t1.end(), b.t1.begin(), b.t1.end());
  }
  return r;
}

/// The three indecomposable Z[C_l]-lattices: Z, Z[C_l], and the
/// augmentation ideal I (basis e_i - e_{i+1}; the generator acts through
/// the companion matrix of 1 + x + ... + x^{l-1}).
inline IntMatrix trivial_lattice() { return IntMatrix::identity(1); }

inline IntMatrix regular_lattice(u64 l) {
  std::vector<std::size_t> shift(l);
  for (u64 i = 0; i < l; ++i) shift[i] = (i + 1) % l;
  return permutation_matrix(shift);
}

inline IntMatrix augmentation_lattice(u64 l) {
  const int d = static_cast<int>(l) - 1;
  IntMatrix m(d, d);
  for (int i = 0; i + 1 < d; ++i) m.at(i + 1, i) = 1;
  for (int i = 0; i < d; ++i) m.at(i, d - 1) = -1;
  return m;
}

inline IntMatrix block_sum(const std::vector<IntMatrix>& blocks) {
  int d = 0;
  for (const auto& b : blocks) d += b.rows;
  IntMatrix m(d, d);
  int o = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rows; ++i)
      for (int j = 0; j < b.cols; ++j) m.at(o + i, o + j) = b.at(i, j);
    o += b.rows;
  }
  return m;
}

// ---- mod-l subquotients ----

/// span(basis) + span(sub) modulo span(sub); `basis` is a complement.
struct Subquotient {
  ModLMatrix basis, sub;
  int dim() const { return basis.cols; }
};

/// Matrix of A on the subquotient w.r.t. the complement basis. A must
/// preserve both spaces.
inline ModLMatrix induced_action(const ModLField& F, const Subquotient& s, const ModLMatrix& A) {
  const int k = s.dim();
  if (k == 0) return ModLMatrix(0, 0);
  ModLMatrix frame = la::hconcat(s.basis, s.sub);
  auto x = la::solve(F, frame, la::mul(F, A, s.basis));
  if (!x) throw VerificationFailure("induced_action: operator does not preserve the subquotient");
  ModLMatrix m(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m.at(i, j) = x->at(i, j);
  return m;
}

/// A second complement: each basis vector shifted by a vector of sub.
inline Subquotient shifted_complement(const ModLField& F, const Subquotient& s) {
  Subquotient t = s;
  if (s.sub.cols == 0) return t;
  for (int j = 0; j < s.basis.cols; ++j) {
    int c = j % s.sub.cols;
    for (int i = 0; i < s.basis.rows; ++i) t.basis.at(i, j) = F.add(s.basis.at(i, j), s.sub.at(i, c));
  }
  return t;
}

namespace detail {

// complement of im inside ker (im contained in ker), chosen among ker columns
inline Subquotient complement_in(const ModLField& F, const ModLMatrix& ker, const ModLMatrix& im) {
  ModLMatrix both = la::hconcat(im, ker);
  ModLMatrix t = both;
  auto piv = la::rref(F, t);
  std::vector<int> pick;
  for (int c : piv)
    if (c >= im.cols) pick.push_back(c - im.cols);
  ModLMatrix basis(ker.rows, static_cast<int>(pick.size()));
  for (std::size_t j = 0; j < pick.size(); ++j)
    for (int i = 0; i < ker.rows; ++i) basis.at(i, static_cast<int>(j)) = ker.at(i, pick[j]);
  return {basis, im};
}

}  // namespace detail

struct TateResult {
  Subquotient t0, t1;
  int t0Rank = 0, t1Rank = 0;
  int kerOneMinusSigma = 0, rankNorm = 0, kerNorm = 0, rankOneMinusSigma = 0;
  std::map<std::string, ModLMatrix> inducedAction;

  const ModLMatrix& t0Basis() const { return t0.basis; }
  const ModLMatrix& t1Basis() const { return t1.basis; }

  nlohmann::ordered_json to_json() const {
    auto cols = [](const ModLMatrix& m) {
      nlohmann::ordered_json a = nlohmann::ordered_json::array();
      for (int j = 0; j < m.cols; ++j) {
        nlohmann::ordered_json c = nlohmann::ordered_json::array();
        for (int i = 0; i < m.rows; ++i) c.push_back(m.at(i, j).code);
        a.push_back(c);
      }
      return a;
    };
    nlohmann::ordered_json j;
    j["t0Rank"] = t0Rank;
    j["t1Rank"] = t1Rank;
    j["dimKerOneMinusSigma"] = kerOneMinusSigma;
    j["rankNorm"] = rankNorm;
    j["dimKerNorm"] = kerNorm;
    j["rankOneMinusSigma"] = rankOneMinusSigma;
    j["t0Basis"] = cols(t0.basis);
    j["t1Basis"] = cols(t1.basis);
    return j;
  }
};

inline ModLMatrix norm_operator(const ModLField& F, const ModLMatrix& s, u64 l) {
  ModLMatrix acc = la::identity(F, s.rows), p = acc;
  for (u64 i = 1; i < l; ++i) {
    p = la::mul(F, p, s);
    acc = la::add(F, acc, p);
  }
  return acc;
}

inline TateResult tate_modl(const ModLField& F, const ModLMatrix& sigma, u64 l) {
  if (sigma.rows != sigma.cols) throw DomainError("tate_modl: non-square matrix");
  const int d = sigma.rows;
  if (la::pow(F, sigma, l) != la::identity(F, d)) throw DomainError("tate_modl: order does not divide l");
  ModLMatrix A = la::sub(F, la::identity(F, d), sigma);
  ModLMatrix N = norm_operator(F, sigma, l);
  if (la::mul(F, A, N) != ModLMatrix(d, d)) throw VerificationFailure("tate_modl: (1 - s) N != 0");
  TateResult r;
  ModLMatrix kerA = la::nullspace(F, A), kerN = la::nullspace(F, N);
  ModLMatrix imN = la::column_basis(F, N), imA = la::column_basis(F, A);
  r.t0 = detail::complement_in(F, kerA, imN);
  r.t1 = detail::complement_in(F, kerN, imA);
  r.t0Rank = r.t0.dim();
  r.t1Rank = r.t1.dim();
  r.kerOneMinusSigma = kerA.cols;
  r.kerNorm = kerN.cols;
  r.rankNorm = imN.cols;
  r.rankOneMinusSigma = imA.cols;
  if (r.t0Rank != kerA.cols - imN.cols || r.t1Rank != kerN.cols - imA.cols)
    throw VerificationFailure("tate_modl: subquotient ranks disagree");
  return r;
}

/// T^1 of the lattice, read inside its reduction L/lL: reduction of an
/// integral basis of ker N modulo the reduction of im(1 - s).
inline Subquotient lattice_t1_subquotient(const ModLField& F, const IntMatrix& sigma, u64 l) {
  const int d = sigma.rows;
  IntMatrix A = ilin::sub(IntMatrix::identity(d), sigma);
  IntMatrix N = ilin::norm_operator(sigma, l);
  ModLMatrix K = ilin::reduce(integer_kernel(smith_normal_form(N)), F);
  ModLMatrix I = la::column_basis(F, ilin::reduce(A, F));
  return detail::complement_in(F, K, I);
}

/// Same, orbit by orbit, for a permutation lattice.
inline Subquotient lattice_t1_subquotient_permutation(const ModLField& F, const std::vector<std::size_t>& perm, u64 l) {
  const int d = static_cast<int>(perm.size());
  std::vector<std::pair<ModLMatrix, ModLMatrix>> parts;
  std::vector<std::vector<std::size_t>> cyc = cycles_of(perm);
  int nb = 0, ns = 0;
  for (const auto& c : cyc) {
    std::vector<std::size_t> local(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) local[i] = (i + 1) % c.size();
    Subquotient s = lattice_t1_subquotient(F, permutation_matrix(local), l);
    nb += s.basis.cols;
    ns += s.sub.cols;
    parts.emplace_back(s.basis, s.sub);
  }
  Subquotient out{ModLMatrix(d, nb), ModLMatrix(d, ns)};
  int jb = 0, js = 0;
  for (std::size_t k = 0; k < cyc.size(); ++k) {
    const auto& [b, s] = parts[k];
    for (int j = 0; j < b.cols; ++j, ++jb)
      for (std::size_t i = 0; i < cyc[k].size(); ++i) out.basis.at(static_cast<int>(cyc[k][i]), jb) = b.at(static_cast<int>(i), j);
    for (int j = 0; j < s.cols; ++j, ++js)
      for (std::size_t i = 0; i < cyc[k].size(); ++i) out.sub.at(static_cast<int>(cyc[k][i]), js) = s.at(static_cast<int>(i), j);
  }
  return out;
}

/// Scaling s by the reduction of a primitive l-th root of unity: the root
/// reduces to 1 in characteristic l, so the result is s itself. Returns true
/// when that triviality and the equality of ranks both hold.
inline bool zeta_l_invariance(const ModLField& F, const ModLMatrix& sigma, u64 l) {
  ModLValue z = reduce_root_mod_l(l, 1, l, F);
  if (z != F.one()) return false;
  ModLMatrix s2 = la::scale(F, sigma, z);
  if (s2 != sigma) return false;
  TateResult a = tate_modl(F, sigma, l), b = tate_modl(F, s2, l);
  return a.t0Rank == b.t0Rank && a.t1Rank == b.t1Rank;
}

// ---- the T^0 representation of the fixed-point group ----

/// Element of the Frobenius-fixed group GL_n(k) with a label and its order.
struct FixedElement {
  std::string label;
  Mat g;
  u64 order = 0;
};

/// Class representatives followed by generators of GL_n(F_{q^level}).
inline std::vector<FixedElement> fixed_elements(const GL& G, int n, int level) {
  std::vector<FixedElement> out;
  auto cl = enumerate_classes(G, n, level);
  for (std::size_t c = 0; c < cl.size(); ++c) out.push_back({"class" + std::to_string(c), cl[c].rep, G.order(cl[c].rep)});
  auto gens = G.generators(n, level);
  for (std::size_t i = 0; i < gens.size(); ++i) out.push_back({"gen" + std::to_string(i), gens[i], G.order(gens[i])});
  return out;
}

struct TateRep {
  ModularRep t0, t1;
  nlohmann::ordered_json complementCheck;
};

/// Projects rho(g) to T^0(L/l) and to the lattice T^1 for each fixed element;
/// every matrix is recomputed with a second complement and must agree.
inline TateRep t0_representation(const KirillovModel& K, const std::vector<FixedElement>& elems, const TateResult& tr,
                                 const Subquotient& latticeT1) {
  const GL& G = K.group();
  const ModLField& F = K.field();
  std::vector<Mat> big(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    big[i] = elems[i].g.level == K.level() ? elems[i].g : G.embed(elems[i].g, K.level());
    if (G.frob(big[i], K.frob_deg()) != big[i]) throw DomainError("t0_representation: element is not Frobenius-fixed");
  }
  std::vector<ModLMatrix> m0(elems.size()), m1(elems.size());
  std::vector<char> agree(elems.size(), 1);
  Subquotient alt0 = shifted_complement(F, tr.t0), alt1 = shifted_complement(F, latticeT1);
  parallel_for(elems.size(), [&](std::size_t i) {
    ModLMatrix r = K.rho(big[i]);
    m0[i] = induced_action(F, tr.t0, r);
    m1[i] = induced_action(F, latticeT1, r);
    agree[i] = induced_action(F, alt0, r) == m0[i] && induced_action(F, alt1, r) == m1[i];
  });
  TateRep out;
  out.t0.dim = tr.t0Rank;
  out.t0.field = K.field_ptr();
  out.t1.dim = latticeT1.dim();
  out.t1.field = K.field_ptr();
  nlohmann::ordered_json chk = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (!agree[i]) throw VerificationFailure("t0_representation: action depends on the complement for " + elems[i].label);
    out.t0.add(elems[i].label, m0[i], elems[i].order);
    out.t1.add(elems[i].label, m1[i], elems[i].order);
    chk.push_back(elems[i].label);
  }
  out.complementCheck = chk;
  return out;
}

struct TraceIdentityReport {
  bool allPass = true;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
};

/// reduce(chi(g)) = Tr(g | T^0) - Tr(g | T^1) on the class representatives.
/// chi is evaluated exactly through the torus index and then reduced.
inline TraceIdentityReport trace_identity_check(const KirillovModel& K, const std::vector<FixedElement>& classes,
                                                const TateRep& rep) {
  const GL& G = K.group();
  const ModLField& F = K.field();
  TraceIdentityReport out;
  for (const auto& e : classes) {
    Mat big = e.g.level == K.level() ? e.g : G.embed(e.g, K.level());
    CyclotomicInt chi = cuspidal_char_fast(K.datum(), K.torus_index(), G.class_invariant(big));
    ModLValue lhs = reduce_cyclotomic(chi, F.l(), F);
    std::size_t i = rep.t0.index_of(e.label);
    ModLValue t0 = la::trace(F, rep.t0.mats[i]), t1 = la::trace(F, rep.t1.mats[i]);
    ModLValue rhs = F.sub(t0, t1);
    bool ok = lhs == rhs;
    out.allPass = out.allPass && ok;
    out.rows.push_back({{"label", e.label},
                        {"chi", cyclotomic_json(chi)},
                        {"reducedChi", lhs.code},
                        {"traceT0", t0.code},
                        {"traceT1", t1.code},
                        {"pass", ok}});
  }
  return out;
}

}  // namespace tatebc
