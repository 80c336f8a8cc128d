#pragma once

#include <chrono>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tatebc/bc.hpp"
#include "tatebc/chars.hpp"
#include "tatebc/gl.hpp"
#include "tatebc/model.hpp"
#include "tatebc/modl.hpp"
#include "tatebc/tate.hpp"

namespace tatebc {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::string command = "verify-unramified";
  u64 p = 2;
  int f = 1;
  int n = 2;
  u64 l = 3;
  std::string mode = "modl";  // modl | exact | both
  u64 seed = 1;
  std::string outPath;
  std::string csvPath;
  u64 maxGroupOrder = 100000;
  u64 maxModelDim = 4096;
  int randomPairs = 50;
  bool timings = false;

  u64 q() const { return ipow(p, static_cast<u64>(f)); }

  nlohmann::ordered_json to_json() const {
    return {{"command", command}, {"p", p},         {"f", f},
            {"n", n},             {"l", l},         {"mode", mode},
            {"seed", seed},       {"maxGroupOrder", maxGroupOrder},
            {"maxModelDim", maxModelDim},           {"randomPairs", randomPairs}};
  }

  /// Parameter constraints of the selected command; throws ConstraintViolation.
  void validate() const {
    if (!is_prime(p)) throw ConstraintViolation("p must be prime");
    if (f < 1 || n < 1) throw ConstraintViolation("f and n must be positive");
    if (mode != "modl" && mode != "exact" && mode != "both") throw ConstraintViolation("mode must be modl, exact or both");
    if (randomPairs < 0) throw ConstraintViolation("randomPairs must be nonnegative");
    if (command == "char-table") {
      check_field_size(static_cast<u64>(f) * n);
      return;
    }
    if (command != "verify-unramified" && command != "verify-ramified")
      throw ConstraintViolation("unknown command " + command);
    if (!is_prime(l)) throw ConstraintViolation("l must be prime");
    if (l == p) throw ConstraintViolation("l must differ from p");
    if (std::gcd(static_cast<u64>(n), l) != 1) throw ConstraintViolation("gcd(n, l) must be 1");
    if (command == "verify-ramified" && (q() - 1) % l != 0) throw ConstraintViolation("l must divide q - 1");
    check_field_size(static_cast<u64>(f) * n * l);
  }

 private:
  void check_field_size(u64 deg) const {
    u64 s = 1;
    for (u64 i = 0; i < deg; ++i) {
      s *= p;
      if (s > GaloisField::kMaxSize) throw ConstraintViolation("field F_{p^" + std::to_string(deg) + "} exceeds the table bound");
    }
  }
};

/// Machine-readable record of a run: config echo, field descriptors, stages,
/// checks with witnesses. Timings are kept apart and emitted only on request
/// so that reports are byte-identical across reruns.
class Report {
 public:
  explicit Report(const RunConfig& cfg) : cfg_(cfg) {}

  void field(const std::string& name, nlohmann::ordered_json d) { fields_[name] = std::move(d); }
  void stage(const std::string& name, const std::string& status, const std::string& reason = "") {
    nlohmann::ordered_json s{{"name", name}, {"status", status}};
    if (!reason.empty()) s["reason"] = reason;
    stages_.push_back(s);
  }
  bool check(const std::string& name, bool pass, nlohmann::ordered_json witness = nlohmann::ordered_json::object()) {
    checks_.push_back({{"name", name}, {"pass", pass}, {"witness", std::move(witness)}});
    if (!pass) ++failed_;
    return pass;
  }
  void note(const std::string& text) { notes_.push_back(text); }
  nlohmann::ordered_json& data(const std::string& key) { return data_[key]; }
  void time(const std::string& name, double seconds) { timings_[name] = seconds; }

  bool all_pass() const { return failed_ == 0; }
  std::size_t check_count() const { return checks_.size(); }
  const nlohmann::ordered_json& checks() const { return checks_; }
  const nlohmann::ordered_json& stages() const { return stages_; }

  /// First check with the given name, or null.
  const nlohmann::ordered_json* find(const std::string& name) const {
    for (const auto& c : checks_)
      if (c["name"] == name) return &c;
    return nullptr;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["schemaVersion"] = kSchemaVersion;
    j["tool"] = "tatebc";
    j["version"] = kVersion;
    j["seed"] = cfg_.seed;
    j["config"] = cfg_.to_json();
    j["fields"] = fields_;
    j["stages"] = stages_;
    j["checks"] = checks_;
    j["data"] = data_;
    j["notes"] = notes_;
    j["summary"] = {{"checks", checks_.size()}, {"failed", failed_}, {"allPass", all_pass()}};
    if (cfg_.timings) j["timings"] = timings_;
    return j;
  }

 private:
  RunConfig cfg_;
  nlohmann::ordered_json fields_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json stages_ = nlohmann::ordered_json::array();
  nlohmann::ordered_json checks_ = nlohmann::ordered_json::array();
  nlohmann::ordered_json data_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json notes_ = nlohmann::ordered_json::array();
  nlohmann::ordered_json timings_ = nlohmann::ordered_json::object();
  std::size_t failed_ = 0;
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double lap() {
    auto t = std::chrono::steady_clock::now();
    double s = std::chrono::duration<double>(t - t0_).count();
    t0_ = t;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

inline nlohmann::ordered_json mat_json(const FieldTower& T, const Mat& m) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (auto x : m.a) a.push_back(T.code(x));
  return {{"n", m.n}, {"level", m.level}, {"codes", a}};
}

inline u64 product_to(int top, u64 q) {
  u64 r = 1;
  for (int i = 1; i <= top; ++i) r = checked_mul(r, ipow(q, static_cast<u64>(i)) - 1);
  return r;
}

// chi(1) = prod_{i<n}(Q^i - 1), with the product to n carried as a note value
inline void degree_check(Report& rep, const std::string& name, const CuspidalDatum& d, const GL& G) {
  Mat one = G.identity(d.n(), d.groupLevel);
  CyclotomicInt v = cuspidal_char(d, G.class_invariant(one));
  i64 want = cuspidal_degree(d.n(), d.Q());
  rep.check(name, v == CyclotomicInt::integer(want),
            {{"exponent", d.chi.e},
             {"Q", d.Q()},
             {"chiAtIdentity", cyclotomic_json(v)},
             {"expected", want},
             {"productToN", product_to(d.n(), d.Q())}});
}

inline ModularRep rep_from_model(const KirillovModel& K, const std::vector<FixedElement>& elems) {
  ModularRep r;
  r.dim = K.dim();
  r.field = K.field_ptr();
  const GL& G = K.group();
  std::vector<ModLMatrix> mats(elems.size());
  parallel_for(elems.size(), [&](std::size_t i) {
    Mat g = elems[i].g.level == K.level() ? elems[i].g : G.embed(elems[i].g, K.level());
    mats[i] = K.rho(g);
  });
  for (std::size_t i = 0; i < elems.size(); ++i) r.add(elems[i].label, mats[i], elems[i].order);
  return r;
}

}  // namespace detail

/// reduce(chi(phi)(x)) = reduce(chi(psi)(x))^l for phi = psi o Norm on every
/// class of GL_n(F_q); returns true when all hold.
inline bool shintani_character_identity(Report& rep, const GL& G, const CuspidalDatum& small, const CuspidalDatum& big,
                                        const std::vector<ConjClass>& classes, const ModLField& F) {
  const u64 l = F.l();
  std::vector<CyclotomicInt> vs(classes.size()), vb(classes.size());
  parallel_for(classes.size(), [&](std::size_t i) {
    vs[i] = cuspidal_char(small, classes[i].inv);
    vb[i] = cuspidal_char(big, G.class_invariant(G.embed(classes[i].rep, big.groupLevel)));
  });
  bool all = true;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    ModLValue a = reduce_cyclotomic(vb[i], l, F), b = F.pow(reduce_cyclotomic(vs[i], l, F), static_cast<i64>(l));
    bool ok = a == b;
    all = all && ok;
    rows.push_back({{"class", invariant_string(G.tower(), classes[i].inv)},
                    {"chiBig", cyclotomic_json(vb[i])},
                    {"chiSmall", cyclotomic_json(vs[i])},
                    {"lhs", a.code},
                    {"rhs", b.code},
                    {"pass", ok}});
  }
  rep.check("character-identity e=" + std::to_string(small.chi.e), all,
            {{"smallExponent", small.chi.e}, {"bigExponent", big.chi.e}, {"classes", rows}});
  return all;
}

/// Model, Tate and comparison stages for one Frobenius-fixed cuspidal.
inline void model_stages(Report& rep, const RunConfig& cfg, const GL& G, const CuspidalDatum& small,
                         const CuspidalDatum& big, const std::shared_ptr<const ModLField>& F, std::mt19937_64& rng,
                         detail::Stopwatch& sw) {
  const ModLField& Fl = *F;
  const u64 l = cfg.l;
  const FieldTower& T = G.tower();
  const std::string tag = " e=" + std::to_string(small.chi.e);
  KirillovModel K(G, big, 1, F);
  rep.data("models").push_back(K.summary());
  rep.time("model build" + tag, sw.lap());

  // model sanity
  rep.check("model.dimension" + tag, static_cast<i64>(K.dim()) == cuspidal_degree(2, K.Q()),
            {{"dim", K.dim()}, {"degree", cuspidal_degree(2, K.Q())}});
  rep.check("model.bessel-identity" + tag, K.bessel(G.identity(2, K.level())) == Fl.one(),
            {{"J(1)", K.bessel(G.identity(2, K.level())).code}});

  std::vector<Mat> randoms;
  for (int i = 0; i < 2 * cfg.randomPairs; ++i) randoms.push_back(K.random_element(rng));

  // Bessel cache audit and homomorphism on random pairs
  {
    int bad = -1;
    for (int i = 0; i < cfg.randomPairs && bad < 0; ++i)
      if (K.bessel(randoms[i]) != K.bessel_direct(randoms[i])) bad = i;
    nlohmann::ordered_json w{{"samples", cfg.randomPairs}};
    if (bad >= 0) w["witness"] = detail::mat_json(T, randoms[bad]);
    rep.check("model.bessel-cache" + tag, bad < 0, w);
  }
  {
    std::vector<char> ok(cfg.randomPairs, 1);
    parallel_for(static_cast<std::size_t>(cfg.randomPairs), [&](std::size_t i) {
      const Mat &g = randoms[2 * i], &h = randoms[2 * i + 1];
      ok[i] = la::mul(Fl, K.rho(g), K.rho(h)) == K.rho(G.mul(g, h));
    });
    int bad = -1;
    for (int i = 0; i < cfg.randomPairs && bad < 0; ++i)
      if (!ok[i]) bad = i;
    nlohmann::ordered_json w{{"pairs", cfg.randomPairs}};
    if (bad >= 0) w["witness"] = {detail::mat_json(T, randoms[2 * bad]), detail::mat_json(T, randoms[2 * bad + 1])};
    rep.check("model.homomorphism" + tag, bad < 0, w);
  }

  // sigma: order and intertwining law
  ModLMatrix S = K.sigma();
  rep.check("sigma.order" + tag, la::pow(Fl, S, l) == la::identity(Fl, K.dim()), {{"l", l}});
  {
    std::vector<std::pair<std::string, Mat>> test;
    u64 smallOrder = GL::group_order(2, T.q());
    if (smallOrder <= cfg.maxGroupOrder) {
      auto fixedAll = G.all_elements(2, 1, cfg.maxGroupOrder);
      for (std::size_t i = 0; i < fixedAll.size(); ++i) test.emplace_back("fixed" + std::to_string(i), G.embed(fixedAll[i], K.level()));
    }
    auto gens = G.generators(2, K.level());
    for (std::size_t i = 0; i < gens.size(); ++i) test.emplace_back("gen" + std::to_string(i), gens[i]);
    for (int i = 0; i < cfg.randomPairs; ++i) test.emplace_back("random" + std::to_string(i), randoms[i]);
    std::vector<char> ok(test.size(), 1);
    parallel_for(test.size(), [&](std::size_t i) {
      const Mat& g = test[i].second;
      ok[i] = la::mul(Fl, S, K.rho(g)) == la::mul(Fl, K.rho(G.frob(g, 1)), S);
    });
    std::size_t fixedCount = 0, bad = test.size();
    for (std::size_t i = 0; i < test.size(); ++i) {
      if (test[i].first.rfind("fixed", 0) == 0) ++fixedCount;
      if (!ok[i] && bad == test.size()) bad = i;
    }
    nlohmann::ordered_json w{{"fixedElements", fixedCount}, {"generators", gens.size()}, {"random", cfg.randomPairs}};
    if (bad < test.size()) w["witness"] = {{"label", test[bad].first}, {"g", detail::mat_json(T, test[bad].second)}};
    rep.check("sigma.intertwining" + tag, bad == test.size(), w);
  }

  // exact scaled route, small dimensions only
  if (cfg.mode != "modl") {
    if (static_cast<u64>(K.dim()) > KirillovModel::kMaxExactDim) {
      rep.stage("exact-model" + tag, "skipped", "exact mode limited to dimension " + std::to_string(KirillovModel::kMaxExactDim));
    } else {
      rep.stage("exact-model" + tag, "ran");
      const i64 Qs = static_cast<i64>(K.Q());
      bool ok = true;
      int pairs = std::min(cfg.randomPairs, 6);
      for (int i = 0; i < pairs && ok; ++i) {
        const Mat &g = randoms[2 * i], &h = randoms[2 * i + 1];
        ExactMatrix Rg = K.rho_scaled_exact(g), Rh = K.rho_scaled_exact(h), Rgh = K.rho_scaled_exact(G.mul(g, h));
        for (auto& v : Rgh.a) v = Qs * v;
        ok = exact_equal(exact_mul(Rg, Rh), Rgh);
        ModLMatrix m = K.rho(g);
        for (int a = 0; a < Rg.dim && ok; ++a)
          for (int b = 0; b < Rg.dim && ok; ++b)
            ok = reduce_cyclotomic(Rg.at(a, b), l, Fl) == Fl.mul(Fl.from_int(Qs), m.at(a, b));
      }
      rep.check("model.exact-route" + tag, ok, {{"pairs", pairs}});
    }
  }
  rep.time("model checks" + tag, sw.lap());

  // Tate cohomology
  LatticeTate lt = tate_lattice_permutation(K.sigma_permutation(), l);
  rep.check("tate.lattice-t1-zero" + tag, lt.t1.empty(), {{"t0", lt.t0}, {"t1", lt.t1}});
  TateResult tr = tate_modl(Fl, S, l);
  const i64 smallDeg = cuspidal_degree(2, T.q());
  rep.check("tate.t0-dimension" + tag, tr.t0Rank == smallDeg && tr.t0Rank == lt.t0_rank(),
            {{"modlT0", tr.t0Rank}, {"latticeT0", lt.t0_rank()}, {"expected", smallDeg}});
  rep.check("tate.modl-relation" + tag,
            tr.t0Rank == tr.t1Rank && tr.t0Rank == lt.t0_rank() + lt.t1_rank(),
            {{"modlT0", tr.t0Rank}, {"modlT1", tr.t1Rank}, {"latticeSum", lt.t0_rank() + lt.t1_rank()}});
  rep.check("tate.zeta-l-invariance" + tag, zeta_l_invariance(Fl, S, l));
  rep.data("tate").push_back(tr.to_json());

  auto fixed = fixed_elements(G, 2, 1);
  std::size_t nClasses = enumerate_classes(G, 2, 1).size();
  Subquotient t1 = lattice_t1_subquotient_permutation(Fl, K.sigma_permutation(), l);
  TateRep trep = t0_representation(K, fixed, tr, t1);
  bool valid = true;
  try {
    trep.t0.validate();
  } catch (const VerificationFailure&) {
    valid = false;
  }
  rep.check("tate.t0-representation" + tag, valid, {{"dim", trep.t0.dim}, {"labels", trep.t0.labels}});

  std::vector<FixedElement> classes(fixed.begin(), fixed.begin() + static_cast<std::ptrdiff_t>(nClasses));
  auto ti = trace_identity_check(K, classes, trep);
  rep.check("tate.trace-identity" + tag, ti.allPass, {{"classes", ti.rows}});

  // T0 is a representation: exhaustive on small fixed groups
  if (GL::group_order(2, T.q()) <= 1000) {
    auto all = G.all_elements(2, 1);
    std::vector<FixedElement> elems;
    for (std::size_t i = 0; i < all.size(); ++i) elems.push_back({"g" + std::to_string(i), all[i], G.order(all[i])});
    TateRep full = t0_representation(K, elems, tr, t1);
    std::map<u64, std::size_t> idx;
    for (std::size_t i = 0; i < all.size(); ++i) idx[G.key(all[i])] = i;
    bool ok = true;
    for (std::size_t i = 0; i < all.size() && ok; ++i)
      for (std::size_t j = 0; j < all.size() && ok; ++j)
        ok = la::mul(Fl, full.t0.mats[i], full.t0.mats[j]) == full.t0.mats[idx.at(G.key(G.mul(all[i], all[j])))];
    rep.check("tate.t0-multiplicative" + tag, ok, {{"pairs", all.size() * all.size()}});
  }
  rep.time("tate" + tag, sw.lap());

  // r_l(pi) from the small model over the same field, twisted
  KirillovModel Ks(G, small, 1, F);
  ModularRep rl = detail::rep_from_model(Ks, fixed);
  {
    bool ok = true;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < nClasses; ++i) {
      ModLValue tr1 = la::trace(Fl, rl.mats[i]);
      ModLValue ch = reduce_cyclotomic(cuspidal_char(small, G.class_invariant(fixed[i].g)), l, Fl);
      ok = ok && tr1 == ch;
      rows.push_back({{"label", fixed[i].label}, {"trace", tr1.code}, {"reducedChi", ch.code}});
    }
    rep.check("small-model.trace" + tag, ok, {{"dim", Ks.dim()}, {"classes", rows}});
  }
  ModularRep twisted = frobenius_twist(rl);
  auto v = compare_modular(trep.t0, twisted, trep.t0.labels, true);
  rep.check("compare.isomorphic" + tag, v.isomorphic, v.detail);
  rep.time("compare" + tag, sw.lap());
}

inline Report run_verify_unramified(const RunConfig& cfg) {
  if (cfg.command != "verify-unramified") throw ConstraintViolation("run_verify_unramified: wrong command");
  cfg.validate();
  Report rep(cfg);
  detail::Stopwatch sw;
  const int n = cfg.n, l = static_cast<int>(cfg.l);
  auto T = build_tower(cfg.p, cfg.f, n, l);
  GL G(*T);
  const u64 q = T->q(), Q = ipow(q, cfg.l);
  if (GL::group_order(n, q) > cfg.maxGroupOrder && n > 3) throw BoundExceeded("group order above bound");
  const u64 M = ipow(q, static_cast<u64>(n)) - 1;
  auto F = std::make_shared<const ModLField>(cfg.l, modl_degree_for(std::lcm(cfg.p, M), cfg.l));
  rep.field("tower", T->descriptor());
  rep.field("runField", F->descriptor());
  rep.note("degree identity uses prod_{i=1}^{n-1}(q^i - 1); the product up to i = n, kept as productToN, does not match chi(1)");
  rep.note("T^1 = 0 is checked on the lattice spanned by the coset indicators; over F_{l^k} both T^0 and T^1 have dimension r0 + r1");
  std::mt19937_64 rng(cfg.seed);

  // regular characters and Frobenius-fixed matching
  rep.stage("regular-characters", "ran");
  auto smallReps = regular_orbit_reps(n, q);
  auto smallAll = regular_exponents(n, q);
  auto bigAll = regular_exponents(n, Q);
  std::size_t fixedCount = 0;
  for (u64 e : bigAll)
    if (frobenius_fixed_descend(*T, MultChar{l * n, e})) ++fixedCount;
  rep.check("matching.count", fixedCount == smallAll.size(),
            {{"bigRegular", bigAll.size()}, {"frobeniusFixed", fixedCount}, {"smallRegular", smallAll.size()}});
  std::vector<std::pair<CuspidalDatum, CuspidalDatum>> pairs;
  nlohmann::ordered_json matched = nlohmann::ordered_json::array();
  bool roundTrip = true;
  for (u64 e : smallReps) {
    LevelZeroParam bp = bc_unramified(base_param(q, n, e), cfg.l);
    auto d = frobenius_fixed_descend(*T, MultChar{l * n, bp.e});
    bool ok = d && d->e == e;
    roundTrip = roundTrip && ok;
    matched.push_back({{"small", e}, {"big", bp.e}, {"descends", ok}, {"param", bp.to_json(cfg.l)}});
    pairs.emplace_back(make_cuspidal_datum(T, 1, e), make_cuspidal_datum(T, l, bp.e));
  }
  rep.check("matching.round-trip", roundTrip, {{"pairs", matched}});
  rep.time("matching", sw.lap());

  // character identity and degrees
  rep.stage("character-identity", "ran");
  auto classes = enumerate_classes(G, n, 1, cfg.maxGroupOrder);
  rep.data("smallClasses") = classes.size();
  for (const auto& [s, b] : pairs) {
    shintani_character_identity(rep, G, s, b, classes, *F);
    detail::degree_check(rep, "degree.small e=" + std::to_string(s.chi.e), s, G);
    detail::degree_check(rep, "degree.big e=" + std::to_string(b.chi.e), b, G);
  }
  rep.time("character identity", sw.lap());

  // model, Tate, comparison
  for (const auto& [s, b] : pairs) {
    const std::string name = "model e=" + std::to_string(s.chi.e);
    i64 dim = cuspidal_degree(n, Q);
    if (static_cast<u64>(dim) > cfg.maxModelDim) {
      rep.stage(name, "skipped", "dimension bound");
      rep.data("skipped").push_back({{"stage", name}, {"dim", dim}, {"bound", cfg.maxModelDim}});
      continue;
    }
    if (n != 2) {
      rep.stage(name, "skipped", "n != 2");
      continue;
    }
    rep.stage(name, "ran");
    try {
      model_stages(rep, cfg, G, s, b, F, rng, sw);
    } catch (const Error& e) {
      rep.check("model.error e=" + std::to_string(s.chi.e), false, {{"message", e.what()}});
    }
  }
  return rep;
}

inline Report run_verify_ramified(const RunConfig& cfg) {
  if (cfg.command != "verify-ramified") throw ConstraintViolation("run_verify_ramified: wrong command");
  cfg.validate();
  Report rep(cfg);
  detail::Stopwatch sw;
  const int n = cfg.n;
  const u64 l = cfg.l;
  auto T = build_tower(cfg.p, cfg.f, n, static_cast<int>(l));
  GL G(*T);
  const u64 q = T->q();
  const u64 M = ipow(q, static_cast<u64>(n)) - 1;
  ModLField F(l, modl_degree_for(std::lcm(cfg.p, M), l));
  rep.field("tower", T->descriptor());
  rep.field("runField", F.descriptor());
  rep.note("ramified base change needs l | q - 1 so that the l-th roots of unity lie in the residue field");
  rep.note("vertex invariance is imposed for every unipotent translate, which needs only a nondegenerate psi");

  // regularity sweep and character identity
  rep.stage("ramified-regularity", "ran");
  auto classes = enumerate_classes(G, n, 1, cfg.maxGroupOrder);
  auto regs = regular_exponents(n, q);
  nlohmann::ordered_json params = nlohmann::ordered_json::array();
  bool allRegular = true;
  std::vector<std::pair<u64, u64>> mapped;
  for (u64 e : regs) {
    LevelZeroParam p = base_param(q, n, e);
    try {
      LevelZeroParam b = bc_ramified(p, l);
      params.push_back({{"source", p.to_json(l)}, {"target", b.to_json(l)}, {"galoisConjugate", ramified_is_galois_conjugate(p, l)}});
      mapped.emplace_back(e, b.e);
    } catch (const VerificationFailure& err) {
      allRegular = false;
      params.push_back({{"source", p.to_json(l)}, {"counterexample", err.what()}});
    }
  }
  rep.check("ramified.regularity", allRegular, {{"exponents", regs.size()}, {"params", params}});
  rep.time("regularity", sw.lap());

  rep.stage("ramified-character-identity", "ran");
  std::vector<char> ok(mapped.size(), 1);
  std::vector<nlohmann::ordered_json> rows(mapped.size());
  parallel_for(mapped.size(), [&](std::size_t i) {
    auto d = make_cuspidal_datum(T, 1, mapped[i].first);
    auto dl = make_cuspidal_datum(T, 1, mapped[i].second);
    nlohmann::ordered_json cl = nlohmann::ordered_json::array();
    for (const auto& c : classes) {
      CyclotomicInt a = cuspidal_char(d, c.inv), b = cuspidal_char(dl, c.inv);
      ModLValue lhs = reduce_cyclotomic(b, l, F), rhs = F.pow(reduce_cyclotomic(a, l, F), static_cast<i64>(l));
      if (lhs != rhs) ok[i] = 0;
      cl.push_back({{"class", invariant_string(*T, c.inv)}, {"chi", cyclotomic_json(a)}, {"chiL", cyclotomic_json(b)},
                    {"lhs", lhs.code}, {"rhs", rhs.code}});
    }
    rows[i] = {{"e", mapped[i].first}, {"le", mapped[i].second}, {"classes", cl}};
  });
  for (std::size_t i = 0; i < mapped.size(); ++i)
    rep.check("ramified.character-identity e=" + std::to_string(mapped[i].first), ok[i] != 0, rows[i]);
  for (u64 e : regs) detail::degree_check(rep, "degree e=" + std::to_string(e), make_cuspidal_datum(T, 1, e), G);
  rep.time("character identity", sw.lap());

  // rectifier parity and admissible pairs
  {
    bool parity = true;
    for (int nn = 1; nn <= 20; ++nn)
      for (u64 ll = 1; ll <= 20; ++ll)
        if (std::gcd(static_cast<u64>(nn), ll) == 1) parity = parity && rectifier_parity_holds(nn, ll);
    rep.check("rectifier.parity", parity, {{"range", 20}, {"rectifier", {{"order", rectifier(n).M}, {"exponent", rectifier(n).e}}}});
    nlohmann::ordered_json ap = nlohmann::ordered_json::array();
    bool adm = true;
    for (u64 e : regs) {
      LevelZeroParam p = base_param(q, n, e);
      AdmissiblePair a = admissible_pair(p, true);
      adm = adm && a.admissible;
      ap.push_back(a.to_json());
    }
    rep.check("admissible-pairs", adm, {{"pairs", ap}});
  }

  // vertex grid
  rep.stage("vertex-grid", "ran");
  auto grid = ivec_grid(n, l);
  std::vector<VertexResult> vr(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { vr[i] = vertex_kernel(n, q, l, grid[i]); });
  bool vok = true;
  nlohmann::ordered_json vrows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    int want = has_nonzero_difference(grid[i], l) ? 0 : vr[i].sectionDim;
    bool ok1 = vr[i].kernelDim == want;
    vok = vok && ok1;
    vrows.push_back({{"iVec", grid[i]}, {"kernelDim", vr[i].kernelDim}, {"expected", want}, {"sectionDim", vr[i].sectionDim}});
  }
  rep.check("vertex.difference-criterion", vok, {{"grid", vrows}});
  rep.time("vertex", sw.lap());
  return rep;
}

struct CharTableRun {
  Report report;
  std::string csv;
};

inline CharTableRun run_char_table(const RunConfig& cfg) {
  if (cfg.command != "char-table") throw ConstraintViolation("run_char_table: wrong command");
  cfg.validate();
  CharTableRun out{Report(cfg), ""};
  Report& rep = out.report;
  detail::Stopwatch sw;
  auto T = std::make_shared<const FieldTower>(cfg.p, cfg.f, cfg.n, 1);
  GL G(*T);
  const u64 q = T->q();
  const u64 order = GL::group_order(cfg.n, q);
  if (order > cfg.maxGroupOrder && cfg.n > 3) throw BoundExceeded("group order above bound");
  rep.field("tower", T->descriptor());
  auto data = cuspidal_data(T, 1);
  auto classes = enumerate_classes(G, cfg.n, 1, cfg.maxGroupOrder);
  CharTable table = cuspidal_table(G, data, classes);
  out.csv = char_table_csv(*T, table);
  rep.stage("char-table", "ran");
  rep.data("rows") = data.size();
  rep.data("classes") = classes.size();
  rep.data("groupOrder") = order;
  rep.time("table", sw.lap());

  for (std::size_t a = 0; a < data.size(); ++a) {
    CyclotomicInt ns = norm_squared(table.values[a], classes);
    rep.check("orthogonality.norm e=" + std::to_string(data[a].chi.e), ns == CyclotomicInt::integer(static_cast<i64>(order)),
              {{"sum", cyclotomic_json(ns)}, {"groupOrder", order}});
    detail::degree_check(rep, "degree e=" + std::to_string(data[a].chi.e), data[a], G);
  }
  bool cross = true;
  nlohmann::ordered_json bad = nlohmann::ordered_json::array();
  for (std::size_t a = 0; a < data.size(); ++a)
    for (std::size_t b = a + 1; b < data.size(); ++b) {
      CyclotomicInt s = CyclotomicInt::integer(0);
      for (std::size_t i = 0; i < classes.size(); ++i)
        s += static_cast<i64>(classes[i].size) * (table.values[a][i] * table.values[b][i].conj());
      if (!s.is_zero()) {
        cross = false;
        bad.push_back({{"a", data[a].chi.e}, {"b", data[b].chi.e}, {"sum", cyclotomic_json(s)}});
      }
    }
  rep.check("orthogonality.cross", cross, {{"pairs", data.size() * (data.size() - 1) / 2}, {"nonzero", bad}});
  rep.time("orthogonality", sw.lap());
  return out;
}

}  // namespace tatebc
