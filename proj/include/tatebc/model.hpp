#pragma once

#include <memory>
#include <random>
#include <vector>

#include "tatebc/chars.hpp"
#include "tatebc/gl.hpp"
#include "tatebc/modl.hpp"
#include "tatebc/parallel.hpp"

namespace tatebc {

/// Exact d x d matrix over Z[zeta].
struct ExactMatrix {
  int dim = 0;
  std::vector<CyclotomicInt> a;
  CyclotomicInt& at(int i, int j) { return a[static_cast<std::size_t>(i) * dim + j]; }
  const CyclotomicInt& at(int i, int j) const { return a[static_cast<std::size_t>(i) * dim + j]; }
};

inline ExactMatrix exact_mul(const ExactMatrix& x, const ExactMatrix& y) {
  ExactMatrix r{x.dim, std::vector<CyclotomicInt>(x.a.size(), CyclotomicInt::integer(0))};
  for (int i = 0; i < x.dim; ++i)
    for (int k = 0; k < x.dim; ++k) {
      if (x.at(i, k).is_zero()) continue;
      for (int j = 0; j < x.dim; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return r;
}

inline bool exact_equal(const ExactMatrix& x, const ExactMatrix& y) {
  if (x.dim != y.dim) return false;
  for (std::size_t i = 0; i < x.a.size(); ++i)
    if (x.a[i] != y.a[i]) return false;
  return true;
}

/// Kirillov model of the cuspidal representation of GL_2(F_Q) attached to a
/// datum, on functions on F_Q^* = U_1 \ GL_1(F_Q). Basis: indicator functions
/// of the transversal reps a_i; rho(g)_{j,i} = J(diag(a_j,1) g diag(a_i,1)^{-1}).
/// Values live in F_{l^k}; an exact scaled route (Q * J) exists for small Q.
class KirillovModel {
 public:
  static constexpr u64 kMaxExactDim = 7;

  /// frobDeg: Frobenius x -> x^{q^frobDeg} acting on the model; pass the group
  /// level for the trivial action.
  KirillovModel(const GL& G, CuspidalDatum datum, int frobDeg, std::shared_ptr<const ModLField> F)
      : G_(G), T_(G.tower()), datum_(std::move(datum)), F_(std::move(F)), index_(T_, datum_.groupLevel) {
    if (datum_.n() != 2) throw DomainError("KirillovModel: only n = 2 is supported");
    level_ = datum_.groupLevel;
    Q_ = datum_.Q();
    tr_ = mirabolic_transversal(G_, 2, level_, frobDeg);
    psi_ = nondegenerate_psi(T_, level_, frobDeg);
    const ModLField& Fl = *F_;
    if (Q_ % Fl.l() == 0) throw DomainError("KirillovModel: l divides Q");
    invQ_ = Fl.inv(Fl.from_int(static_cast<i64>(Q_ % Fl.l())));
    elems_ = T_.elements(level_);
    // psi values mod l, indexed by elem_index
    psiL_.resize(Q_);
    for (auto x : elems_)
      psiL_[G_.elem_index(x, level_)] =
          reduce_root_mod_l(T_.p(), static_cast<i64>(add_char_exponent(T_, psi_, x)), Fl.l(), Fl);
    build_chi_table();
    build_bessel_cache();
    sigmaPerm_ = tr_.frobOrbit;
  }

  int dim() const { return static_cast<int>(tr_.reps.size()); }
  u64 Q() const { return Q_; }
  int level() const { return level_; }
  const CuspidalDatum& datum() const { return datum_; }
  const GL& group() const { return G_; }
  int frob_deg() const { return tr_.frobDeg; }
  const CosetTransversal& transversal() const { return tr_; }
  const AddChar& psi() const { return psi_; }
  const ModLField& field() const { return *F_; }
  std::shared_ptr<const ModLField> field_ptr() const { return F_; }
  const TorusIndex& torus_index() const { return index_; }
  FieldElem basis_point(int i) const { return tr_.reps[i].a[0]; }

  ModLValue psi_value(FieldElem x) const { return psiL_[G_.elem_index(x, level_)]; }

  /// chi(g) mod l from (trace, det, scalar).
  ModLValue chi(const Mat& g) const {
    check(g);
    if (G_.is_scalar(g)) return chiScalar_[G_.elem_index(g.at(0, 0), level_)];
    return chiTable_[key_td(G_.trace(g), G_.det(g))];
  }

  /// J(g) = (1/Q) sum_x psi(-x) chi(g u_x), evaluated literally.
  ModLValue bessel_direct(const Mat& g) const {
    check(g);
    const ModLField& F = *F_;
    ModLValue s = F.zero();
    for (auto x : elems_) {
      Mat u = G_.identity(2, level_);
      u.at(0, 1) = x;
      s = F.add(s, F.mul(psi_value(T_.neg(x)), chi(G_.mul(g, u))));
    }
    return F.mul(s, invQ_);
  }

  /// J(g) through the Bruhat cache.
  ModLValue bessel(const Mat& g) const {
    check(g);
    return bessel_entries(g.at(0, 0), g.at(0, 1), g.at(1, 0), g.at(1, 1));
  }

  ModLMatrix rho(const Mat& g) const {
    check(g);
    const int d = dim();
    ModLMatrix m(d, d);
    for (int i = 0; i < d; ++i) {
      FieldElem ai = T_.inv(basis_point(i));
      FieldElem b10 = T_.mul(g.at(1, 0), ai), b00 = T_.mul(g.at(0, 0), ai);
      for (int j = 0; j < d; ++j) {
        FieldElem aj = basis_point(j);
        m.at(j, i) = bessel_entries(T_.mul(aj, b00), T_.mul(aj, g.at(0, 1)), b10, g.at(1, 1));
      }
    }
    return m;
  }

  /// Permutation matrix of 1_{g_i} -> 1_{Frob(g_i)}.
  ModLMatrix sigma() const {
    const int d = dim();
    ModLMatrix s(d, d);
    for (int i = 0; i < d; ++i) s.at(static_cast<int>(sigmaPerm_[i]), i) = F_->one();
    return s;
  }
  const std::vector<std::size_t>& sigma_permutation() const { return sigmaPerm_; }

  // ---- exact scaled route ----

  /// chi(g) exactly.
  CyclotomicInt chi_exact(const Mat& g) const {
    check(g);
    Poly c = G_.polys().monic(G_.charpoly(g));
    return cuspidal_char_from_charpoly(datum_, index_, c, G_.is_scalar(g) ? 2 : 1);
  }
  /// Q * J(g) = sum_x psi(-x) chi(g u_x) in Z[zeta].
  CyclotomicInt bessel_scaled_exact(const Mat& g) const {
    check(g);
    CyclotomicInt s = CyclotomicInt::integer(0);
    for (auto x : elems_) {
      Mat u = G_.identity(2, level_);
      u.at(0, 1) = x;
      auto pv = CyclotomicInt::root(T_.p(), static_cast<i64>(add_char_exponent(T_, psi_, T_.neg(x))));
      s += pv * chi_exact(G_.mul(g, u));
    }
    return s;
  }
  /// Q * rho(g).
  ExactMatrix rho_scaled_exact(const Mat& g) const {
    if (static_cast<u64>(dim()) > kMaxExactDim) throw BoundExceeded("exact model limited to small dimension");
    const int d = dim();
    ExactMatrix m{d, std::vector<CyclotomicInt>(static_cast<std::size_t>(d) * d)};
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) {
        Mat x = G_.mul(G_.mul(G_.diag(level_, {basis_point(j), T_.one()}), g),
                       G_.diag(level_, {T_.inv(basis_point(i)), T_.one()}));
        m.at(j, i) = bessel_scaled_exact(x);
      }
    return m;
  }

  Mat random_element(std::mt19937_64& rng) const {
    while (true) {
      std::vector<FieldElem> e(4);
      for (auto& x : e) x = elems_[rng() % Q_];
      Mat m = G_.make(2, level_, e);
      if (G_.invertible(m)) return m;
    }
  }

  nlohmann::ordered_json summary() const {
    nlohmann::ordered_json j;
    j["groupLevel"] = level_;
    j["Q"] = Q_;
    j["exponent"] = datum_.chi.e;
    j["dim"] = dim();
    j["fixedCosets"] = tr_.fixed_count();
    j["psiShift"] = T_.code(psi_.shift);
    j["frobDeg"] = tr_.frobDeg;
    return j;
  }

 private:
  void check(const Mat& g) const {
    if (g.n != 2 || g.level != level_) throw DomainError("KirillovModel: element of the wrong group");
  }
  u64 idx(FieldElem x) const { return G_.elem_index(x, level_); }
  std::size_t key_td(FieldElem tr, FieldElem det) const { return static_cast<std::size_t>(idx(tr) * Q_ + idx(det)); }
  std::size_t key_cb(FieldElem c, FieldElem b) const {
    return static_cast<std::size_t>((idx(c) - 1) * (Q_ - 1) + (idx(b) - 1));
  }

  void build_chi_table() {
    const PolyRing& R = G_.polys();
    chiTable_.assign(Q_ * Q_, F_->zero());
    chiScalar_.assign(Q_, F_->zero());
    for (auto tr : elems_)
      for (auto det : elems_) {
        if (det.is_zero()) continue;
        Poly c{{det, T_.neg(tr), T_.one()}};
        chiTable_[key_td(tr, det)] = cuspidal_char_modl(datum_, index_, c, 1, *F_);
      }
    for (auto a : elems_) {
      if (a.is_zero()) continue;
      Poly c = R.mul(R.linear(a), R.linear(a));
      chiScalar_[idx(a)] = cuspidal_char_modl(datum_, index_, c, 2, *F_);
    }
  }

  // J([[0, b], [c, 0]]) for c, b != 0 and J(diag(a, d)).
  void build_bessel_cache() {
    const std::size_t m = Q_ - 1;
    weyl_.assign(m * m, F_->zero());
    diag_.assign(m * m, F_->zero());
    std::vector<FieldElem> units(elems_.begin() + 1, elems_.end());
    parallel_for(m, [&](std::size_t r) {
      for (std::size_t s = 0; s < m; ++s) {
        Mat w = G_.make(2, level_, {T_.zero(), units[s], units[r], T_.zero()});
        weyl_[key_cb(units[r], units[s])] = bessel_direct(w);
        Mat dg = G_.diag(level_, {units[r], units[s]});
        diag_[key_cb(units[r], units[s])] = bessel_direct(dg);
      }
    });
  }

  ModLValue bessel_entries(FieldElem a, FieldElem b, FieldElem c, FieldElem d) const {
    const ModLField& F = *F_;
    if (!c.is_zero()) {
      // g = u_{a/c} [[0, -det/c], [c, 0]] u_{d/c}
      FieldElem det = T_.sub(T_.mul(a, d), T_.mul(b, c));
      FieldElem beta = T_.neg(T_.div(det, c));
      FieldElem x = T_.div(T_.add(a, d), c);
      return F.mul(psi_value(x), weyl_[key_cb(c, beta)]);
    }
    // g = u_{b/d} diag(a, d)
    return F.mul(psi_value(T_.div(b, d)), diag_[key_cb(a, d)]);
  }

  const GL& G_;
  const FieldTower& T_;
  CuspidalDatum datum_;
  std::shared_ptr<const ModLField> F_;
  TorusIndex index_;
  int level_ = 1;
  u64 Q_ = 0;
  CosetTransversal tr_;
  AddChar psi_;
  ModLValue invQ_;
  std::vector<FieldElem> elems_;
  std::vector<ModLValue> psiL_;
  std::vector<ModLValue> chiTable_, chiScalar_;
  std::vector<ModLValue> weyl_, diag_;
  std::vector<std::size_t> sigmaPerm_;
};

/// Field F_{l^k} large enough for the model values of a datum: contains
/// zeta_p and the values of its character.
inline std::shared_ptr<const ModLField> model_field(const CuspidalDatum& d) {
  u64 l = static_cast<u64>(d.tower->l());
  u64 M = std::lcm(d.tower->p(), d.conductor());
  return std::make_shared<const ModLField>(l, modl_degree_for(M, l));
}

}  // namespace tatebc
