#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tatebc/chars.hpp"
#include "tatebc/cyclotomic.hpp"
#include "tatebc/modl_field.hpp"

namespace tatebc {

/// Dense matrix over F_{l^k}, row major.
struct ModLMatrix {
  int rows = 0, cols = 0;
  std::vector<ModLValue> a;

  ModLMatrix() = default;
  ModLMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, ModLValue{0}) {}
  ModLValue& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  ModLValue at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  friend bool operator==(const ModLMatrix& x, const ModLMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
  friend bool operator!=(const ModLMatrix& x, const ModLMatrix& y) { return !(x == y); }
};

namespace la {

inline ModLMatrix identity(const ModLField& F, int d) {
  ModLMatrix m(d, d);
  for (int i = 0; i < d; ++i) m.at(i, i) = F.one();
  return m;
}

inline ModLMatrix add(const ModLField& F, const ModLMatrix& x, const ModLMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw DomainError("matrix add: shape mismatch");
  ModLMatrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = F.add(x.a[i], y.a[i]);
  return r;
}
inline ModLMatrix sub(const ModLField& F, const ModLMatrix& x, const ModLMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw DomainError("matrix sub: shape mismatch");
  ModLMatrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = F.sub(x.a[i], y.a[i]);
  return r;
}
inline ModLMatrix scale(const ModLField& F, const ModLMatrix& x, ModLValue s) {
  ModLMatrix r = x;
  for (auto& v : r.a) v = F.mul(v, s);
  return r;
}

inline ModLMatrix mul(const ModLField& F, const ModLMatrix& x, const ModLMatrix& y) {
  if (x.cols != y.rows) throw DomainError("matrix mul: shape mismatch");
  ModLMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      ModLValue c = x.at(i, k);
      if (c.code == 0) continue;
      for (int j = 0; j < y.cols; ++j) {
        ModLValue b = y.at(k, j);
        if (b.code == 0) continue;
        r.at(i, j) = F.add(r.at(i, j), F.mul(c, b));
      }
    }
  return r;
}

inline ModLMatrix pow(const ModLField& F, ModLMatrix x, u64 e) {
  ModLMatrix r = identity(F, x.rows);
  while (e) {
    if (e & 1) r = mul(F, r, x);
    x = mul(F, x, x);
    e >>= 1;
  }
  return r;
}

inline ModLValue trace(const ModLField& F, const ModLMatrix& x) {
  if (x.rows != x.cols) throw DomainError("trace of a non-square matrix");
  ModLValue s = F.zero();
  for (int i = 0; i < x.rows; ++i) s = F.add(s, x.at(i, i));
  return s;
}

inline ModLMatrix transpose(const ModLMatrix& x) {
  ModLMatrix r(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
  return r;
}

/// Entrywise y -> y^l.
inline ModLMatrix frobenius(const ModLField& F, const ModLMatrix& x) {
  ModLMatrix r = x;
  for (auto& v : r.a) v = F.frob(v);
  return r;
}

/// In-place reduced row echelon form; returns pivot columns.
inline std::vector<int> rref(const ModLField& F, ModLMatrix& m) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int s = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c).code != 0) {
        s = i;
        break;
      }
    if (s < 0) continue;
    if (s != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(s, j), m.at(r, j));
    ModLValue ip = F.inv(m.at(r, c));
    for (int j = c; j < m.cols; ++j) m.at(r, j) = F.mul(m.at(r, j), ip);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      ModLValue f = m.at(i, c);
      if (f.code == 0) continue;
      for (int j = c; j < m.cols; ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(r, j)));
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

inline int rank(const ModLField& F, ModLMatrix m) { return static_cast<int>(rref(F, m).size()); }

/// Columns form a basis of {v : m v = 0}.
inline ModLMatrix nullspace(const ModLField& F, ModLMatrix m) {
  auto piv = rref(F, m);
  std::vector<bool> isPiv(m.cols, false);
  for (int c : piv) isPiv[c] = true;
  int k = m.cols - static_cast<int>(piv.size());
  ModLMatrix basis(m.cols, k);
  int col = 0;
  for (int f = 0; f < m.cols; ++f) {
    if (isPiv[f]) continue;
    basis.at(f, col) = F.one();
    for (std::size_t r = 0; r < piv.size(); ++r) basis.at(piv[r], col) = F.neg(m.at(static_cast<int>(r), f));
    ++col;
  }
  return basis;
}

/// Columns form a basis of the column space of m (a subset of its columns).
inline ModLMatrix column_basis(const ModLField& F, const ModLMatrix& m) {
  ModLMatrix t = m;
  auto piv = rref(F, t);
  ModLMatrix r(m.rows, static_cast<int>(piv.size()));
  for (std::size_t j = 0; j < piv.size(); ++j)
    for (int i = 0; i < m.rows; ++i) r.at(i, static_cast<int>(j)) = m.at(i, piv[j]);
  return r;
}

inline ModLMatrix hconcat(const ModLMatrix& x, const ModLMatrix& y) {
  if (x.rows != y.rows) throw DomainError("hconcat: row mismatch");
  ModLMatrix r(x.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
    for (int j = 0; j < y.cols; ++j) r.at(i, x.cols + j) = y.at(i, j);
  }
  return r;
}

inline ModLMatrix columns(const ModLMatrix& x, int from, int count) {
  ModLMatrix r(x.rows, count);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < count; ++j) r.at(i, j) = x.at(i, from + j);
  return r;
}

/// Solves a X = b (b may have several columns); empty if inconsistent.
inline std::optional<ModLMatrix> solve(const ModLField& F, const ModLMatrix& a, const ModLMatrix& b) {
  if (a.rows != b.rows) throw DomainError("solve: shape mismatch");
  ModLMatrix aug = hconcat(a, b);
  auto piv = rref(F, aug);
  for (int c : piv)
    if (c >= a.cols) return std::nullopt;
  ModLMatrix x(a.cols, b.cols);
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (int j = 0; j < b.cols; ++j) x.at(piv[r], j) = aug.at(static_cast<int>(r), a.cols + j);
  return x;
}

inline ModLMatrix inverse(const ModLField& F, const ModLMatrix& a) {
  if (a.rows != a.cols) throw DomainError("inverse of a non-square matrix");
  auto x = solve(F, a, identity(F, a.rows));
  if (!x || rank(F, a) != a.rows) throw DomainError("inverse: singular matrix");
  return *x;
}

inline ModLMatrix embed(const ModLExtension& ext, const ModLMatrix& m) {
  ModLMatrix r = m;
  for (auto& v : r.a) v = ext.embed(v);
  return r;
}

/// Dimension of {X : X A = A X for every A in gens}.
inline int commutant_dim(const ModLField& F, const std::vector<ModLMatrix>& gens, int d) {
  if (gens.empty()) return d * d;
  const int dd = d * d;
  ModLMatrix sys(static_cast<int>(gens.size()) * dd, dd);
  // unknown X(i,j) -> column i*d+j; equation (XA - AX)(r,c) = 0
  int row = 0;
  for (const auto& A : gens) {
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c, ++row) {
        for (int k = 0; k < d; ++k) {
          // (XA)(r,c) = sum_k X(r,k) A(k,c)
          sys.at(row, r * d + k) = F.add(sys.at(row, r * d + k), A.at(k, c));
          // (AX)(r,c) = sum_k A(r,k) X(k,c)
          sys.at(row, k * d + c) = F.sub(sys.at(row, k * d + c), A.at(r, k));
        }
      }
  }
  return dd - rank(F, sys);
}

}  // namespace la

// ---- modular representations ----

/// Action of group elements on F_{l^k}^dim. Labels name class representatives
/// or generators; `orders` holds the group-element order for each label.
struct ModularRep {
  int dim = 0;
  std::shared_ptr<const ModLField> field;
  std::vector<std::string> labels;
  std::vector<ModLMatrix> mats;
  std::vector<u64> orders;

  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return i;
    throw DomainError("ModularRep: unknown label " + label);
  }
  void add(std::string label, ModLMatrix m, u64 order) {
    if (m.rows != dim || m.cols != dim) throw DomainError("ModularRep: matrix of wrong size");
    labels.push_back(std::move(label));
    mats.push_back(std::move(m));
    orders.push_back(order);
  }
  /// Matrices invertible and of the recorded order.
  void validate() const {
    const auto& F = *field;
    for (std::size_t i = 0; i < mats.size(); ++i) {
      if (la::rank(F, mats[i]) != dim) throw VerificationFailure("ModularRep: singular action matrix for " + labels[i]);
      if (orders[i] && la::pow(F, mats[i], orders[i]) != la::identity(F, dim))
        throw VerificationFailure("ModularRep: matrix order does not divide the element order for " + labels[i]);
    }
  }
};

/// Same matrices read through y -> y^l: entrywise Frobenius.
inline ModularRep frobenius_twist(const ModularRep& r) {
  ModularRep t = r;
  for (auto& m : t.mats) m = la::frobenius(*r.field, m);
  return t;
}

/// Brauer lift of the trace of m (m^ord = 1, l not dividing ord): eigenvalues
/// G_H^{(|H|-1)/ord * j} lift to zeta_ord^j, in an extension H containing mu_ord.
inline CyclotomicInt brauer_value(const ModLField& F, const ModLMatrix& m, u64 ord) {
  if (ord == 0 || ord % F.l() == 0) throw DomainError("brauer_value: order not prime to l");
  if (m.rows != m.cols) throw DomainError("brauer_value: non-square matrix");
  const int d = m.rows;
  if (la::pow(F, m, ord) != la::identity(F, d)) throw DomainError("brauer_value: m^ord is not the identity");
  int need = static_cast<int>(multiplicative_order(F.l() % ord, ord));
  if (ord == 1) need = 1;
  int k2 = static_cast<int>(std::lcm<u64>(static_cast<u64>(F.k()), static_cast<u64>(need)));
  std::optional<ModLExtension> ext;
  if (k2 != F.k()) ext = extend_field(F, k2);
  const ModLField& H = ext ? *ext->field : F;
  ModLMatrix mm = ext ? la::embed(*ext, m) : m;
  RootSum rs(ord);
  int total = 0;
  u64 step = H.order() / ord;
  for (u64 j = 0; j < ord; ++j) {
    ModLValue lam = H.gen_pow(static_cast<i64>(step * j));
    ModLMatrix shifted = la::sub(H, mm, la::scale(H, la::identity(H, d), lam));
    int mult = d - la::rank(H, shifted);
    if (mult) rs.add(j, mult);
    total += mult;
  }
  if (total != d) throw VerificationFailure("brauer_value: eigenvalue multiplicities do not add up");
  return rs.compressed_value();
}

inline std::vector<ModLValue> reduce_character(const std::vector<CyclotomicInt>& chi, const ModLField& F) {
  std::vector<ModLValue> out;
  out.reserve(chi.size());
  for (const auto& c : chi) out.push_back(reduce_cyclotomic(c, F.l(), F));
  return out;
}

struct ModularVerdict {
  bool dimsEqual = false;
  bool tracesEqual = false;
  int commutantA = 0, commutantB = 0;
  bool brauerChecked = false, brauerEqual = false;
  bool isomorphic = false;
  nlohmann::ordered_json detail;
};

/// Dimension, traces on every supplied label, and irreducibility over the
/// field via one-dimensional commutants. With brauer = true, Brauer lifts are
/// also compared on the l-regular labels.
inline ModularVerdict compare_modular(const ModularRep& a, const ModularRep& b, const std::vector<std::string>& labels,
                                      bool brauer = false) {
  if (!a.field || !b.field || a.field->l() != b.field->l() || a.field->k() != b.field->k() ||
      a.field->generator_log() != b.field->generator_log())
    throw DomainError("compare_modular: representations over different fields");
  const ModLField& F = *a.field;
  ModularVerdict v;
  v.dimsEqual = a.dim == b.dim;
  v.detail["dimA"] = a.dim;
  v.detail["dimB"] = b.dim;
  v.tracesEqual = v.dimsEqual;
  nlohmann::ordered_json traces = nlohmann::ordered_json::array();
  for (const auto& lab : labels) {
    ModLValue ta = la::trace(F, a.mats[a.index_of(lab)]);
    ModLValue tb = la::trace(F, b.mats[b.index_of(lab)]);
    traces.push_back({{"label", lab}, {"a", ta.code}, {"b", tb.code}});
    if (ta != tb) v.tracesEqual = false;
  }
  v.detail["traces"] = traces;
  v.commutantA = la::commutant_dim(F, a.mats, a.dim);
  v.commutantB = la::commutant_dim(F, b.mats, b.dim);
  v.detail["commutantDimA"] = v.commutantA;
  v.detail["commutantDimB"] = v.commutantB;
  v.isomorphic = v.dimsEqual && v.tracesEqual && v.commutantA == 1 && v.commutantB == 1;
  if (brauer && v.dimsEqual) {
    v.brauerChecked = true;
    v.brauerEqual = true;
    nlohmann::ordered_json lifts = nlohmann::ordered_json::array();
    for (const auto& lab : labels) {
      std::size_t ia = a.index_of(lab), ib = b.index_of(lab);
      if (a.orders[ia] % F.l() == 0) continue;
      auto ba = brauer_value(F, a.mats[ia], a.orders[ia]);
      auto bb = brauer_value(F, b.mats[ib], b.orders[ib]);
      lifts.push_back({{"label", lab}, {"a", cyclotomic_json(ba)}, {"b", cyclotomic_json(bb)}});
      if (ba != bb) v.brauerEqual = false;
    }
    v.detail["brauer"] = lifts;
    v.isomorphic = v.isomorphic && v.brauerEqual;
  }
  v.detail["isomorphic"] = v.isomorphic;
  return v;
}

}  // namespace tatebc
