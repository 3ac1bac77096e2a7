#pragma once

// End-to-end verification driver: solve the profile, build the geometry with
// a calibrated complex-structure sign, sample interior chart points, and test
// every claimed identity against pinned tolerances. Produces a structured
// report serializable as JSON, CSV (one row per point per check), or a
// Markdown summary. All randomness is seeded; outputs are byte-stable.

#include <hpk/curvature_algebra.hpp>
#include <hpk/geometry.hpp>
#include <hpk/io_util.hpp>
#include <hpk/profile.hpp>
#include <hpk/profile_solution.hpp>
#include <hpk/rng.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace hpk {

inline std::map<std::string, double> default_check_tolerances() {
  return {
      {"hp", 1e-6},           // pseudosymmetry residual
      {"qch", 1e-6},          // decomposition fit residual
      {"qch_phi", 1e-6},      // |a + b/2 - phi|
      {"nabla_j", 1e-6},      // parallelism of J
      {"d_omega", 1e-8},      // closedness of the Kaehler form
      {"symmetry", 1e-8},     // algebraic curvature symmetries
      {"bianchi", 1e-8},      // first Bianchi identity
      {"j_invariance", 1e-7}, // R(JX, JY, ., .) = R(X, Y, ., .)
      {"hol_sec", 1e-6},      // K(X) = a + b s + c s^2 along random directions
      {"energy", 1e-10},      // first integral of the profile ODE
      {"boundary", 1e-7},     // endpoint residuals of the solved profile
      {"parity", 1e-9},       // oddness of h at 0 and of f at L
      {"t_invariance", 1e-7}, // scalars agree across points with equal t
      {"killing", 1e-7},      // d_psi of metric components
      {"killing_j", 1e-7},    // d_psi of J components
  };
}

struct VerificationConfig {
  double alpha = 0.0;
  std::optional<std::vector<double>> coeffs;  // overrides alpha when set
  int n = 2;
  int samples_t = 5;
  int samples_base = 2;
  std::uint64_t seed = 20240817ULL;
  double margin = 0.05;
  int hol_sec_directions = 32;
  std::map<std::string, double> tolerances = default_check_tolerances();
  OdeTolerances ode;

  Profile make_profile() const {
    return coeffs ? Profile::from_coeffs(*coeffs) : Profile::from_alpha(alpha);
  }
};

struct CheckResult {
  double value = 0.0;  // worst case over the sample
  double mean = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct PhiSignSummary {
  double min_value = 0.0;
  double argmin_t = 0.0;
  double h2_at_min = 0.0;  // h(argmin)^2
  double at_zero = 0.0;
  double at_end = 0.0;
};

struct PointRecord {
  double t = 0.0, psi = 0.0;
  std::vector<double> w;
  double phi = 0.0, scalar = 0.0;
  double hp_rel = 0.0, hp_abs = 0.0, hp_metric = 0.0;
  double r_norm = 0.0, rr_norm = 0.0, pir_norm = 0.0;
  double qch_a = 0.0, qch_b = 0.0, qch_c = 0.0;
  double qch_residual = 0.0, qch_cond = 0.0, qch_phi_gap = 0.0;
  double nabla_j = 0.0, d_omega = 0.0, killing = 0.0, killing_j = 0.0;
  double sym_asym1 = 0.0, sym_asym2 = 0.0, sym_pair = 0.0;
  double bianchi = 0.0, j_invariance = 0.0, frame_j_dev = 0.0;
  double hol_sec_dev = 0.0;
};

struct VerificationReport {
  VerificationConfig config;
  double L = 0.0;
  double energy_max = 0.0;
  BoundaryReport boundary;
  CalibrationInfo calibration;
  PhiSignSummary phi_sign;
  double scalar_min = 0.0, scalar_max = 0.0;
  std::vector<PointRecord> points;
  std::map<std::string, CheckResult> checks;
  bool pass = false;

  double scalar_spread() const { return scalar_max - scalar_min; }

  nlohmann::ordered_json to_json() const;
  std::string to_csv() const;
  std::string to_markdown() const;
};

// global minimum of phi over [0, L] on a fine grid with one parabolic
// refinement step, plus the endpoint values
inline PhiSignSummary phi_sign_summary(const ProfileSolution& sol, int grid = 2048) {
  const double L = sol.L();
  PhiSignSummary out;
  double best = sol.phi(0.0), best_t = 0.0;
  for (int i = 0; i <= grid; ++i) {
    const double t = L * static_cast<double>(i) / grid;
    const double v = sol.phi(t);
    if (v < best) {
      best = v;
      best_t = t;
    }
  }
  if (best_t > 0.0 && best_t < L) {
    const double dt = L / grid;
    const double t0 = std::max(0.0, best_t - dt), t2 = std::min(L, best_t + dt);
    const double f0 = sol.phi(t0), f1 = best, f2 = sol.phi(t2);
    const double denom = f0 - 2.0 * f1 + f2;
    if (std::abs(denom) > 1e-300) {
      double tv = best_t + 0.5 * dt * (f0 - f2) / denom;
      tv = std::clamp(tv, t0, t2);
      const double fv = sol.phi(tv);
      if (fv < best) {
        best = fv;
        best_t = tv;
      }
    }
  }
  out.min_value = best;
  out.argmin_t = best_t;
  const double hmin = sol.h(best_t);
  out.h2_at_min = hmin * hmin;
  out.at_zero = sol.phi(0.0);
  out.at_end = sol.phi(L);
  return out;
}

namespace detail {

// per-point residual value feeding each named check
inline double point_check_value(const PointRecord& p, const std::string& name) {
  if (name == "hp") return p.hp_metric;
  if (name == "qch") return p.qch_residual;
  if (name == "qch_phi") return p.qch_phi_gap;
  if (name == "nabla_j") return p.nabla_j;
  if (name == "d_omega") return p.d_omega;
  if (name == "symmetry") return std::max({p.sym_asym1, p.sym_asym2, p.sym_pair});
  if (name == "bianchi") return p.bianchi;
  if (name == "j_invariance") return p.j_invariance;
  if (name == "hol_sec") return p.hol_sec_dev;
  if (name == "killing") return p.killing;
  if (name == "killing_j") return p.killing_j;
  throw std::invalid_argument("unknown per-point check: " + name);
}

inline const std::vector<std::string>& point_check_names() {
  static const std::vector<std::string> names = {
      "hp",      "qch",          "qch_phi", "nabla_j", "d_omega", "symmetry",
      "bianchi", "j_invariance", "hol_sec", "killing", "killing_j"};
  return names;
}

// error messages can span lines (validation summaries); tabular output needs
// one row per entry
inline std::string single_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ';';
    if (c == '"') c = '\'';
  }
  return s;
}

}  // namespace detail

inline VerificationReport run_verification(const VerificationConfig& cfg) {
  VerificationReport rep;
  rep.config = cfg;

  const Profile prof = cfg.make_profile();
  const ProfileSolution sol(prof, cfg.ode);
  rep.L = sol.L();
  rep.energy_max = sol.energy_residual_max();
  rep.boundary = sol.boundary_report();

  const Geometry geo = Geometry::calibrated(sol, cfg.n, cfg.margin);
  rep.calibration = geo.calibration();
  const int d = geo.dim();

  // model tensors in frame components (g = I, J and D in standard position)
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd Jstd = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < d / 2; ++k) {
    Jstd(2 * k + 1, 2 * k) = 1.0;
    Jstd(2 * k, 2 * k + 1) = -1.0;
  }
  Eigen::MatrixXd pD = Eigen::MatrixXd::Zero(d, d);
  pD(0, 0) = pD(1, 1) = 1.0;
  const Eigen::MatrixXd gD = pD;
  const Eigen::MatrixXd omD = Jstd.transpose() * gD;
  const CurvatureTensor PiF = pi_tensor(I, Jstd);
  const CurvatureTensor PhiF = phi_tensor(I, Jstd, gD, omD);
  const CurvatureTensor PsiF = psi_tensor(omD, I);

  // sample grid: interior times x seeded base points x two fiber angles
  DetRng rng(cfg.seed);
  const int m2 = 2 * (cfg.n - 1);
  std::vector<Eigen::VectorXd> bases;
  for (int b = 0; b < cfg.samples_base; ++b) {
    Eigen::VectorXd w(m2);
    for (int tries = 0;; ++tries) {
      double r2 = 0.0;
      for (int i = 0; i < m2; ++i) {
        w(i) = rng.symmetric();
        r2 += w(i) * w(i);
      }
      if (r2 <= 1.0) break;
      if (tries > 10000) throw std::runtime_error("run_verification: base sampling failed");
    }
    bases.push_back(w);
  }
  const double lo = cfg.margin * rep.L, hi = (1.0 - cfg.margin) * rep.L;
  std::vector<ChartPoint> pts;
  std::vector<int> group;
  for (int it = 0; it < cfg.samples_t; ++it) {
    const double t = (cfg.samples_t > 1)
                         ? lo + (hi - lo) * static_cast<double>(it) / (cfg.samples_t - 1)
                         : 0.5 * (lo + hi);
    for (const auto& w : bases)
      for (double psi : {0.0, 1.0}) {
        pts.push_back(ChartPoint{t, psi, w});
        group.push_back(it);
      }
  }

  for (size_t ip = 0; ip < pts.size(); ++ip) {
    const ChartPoint& pt = pts[ip];
    const PointData pd = geo.analyze(pt);
    PointRecord rec;
    rec.t = pt.t;
    rec.psi = pt.psi;
    rec.w.assign(pt.w.data(), pt.w.data() + pt.w.size());
    rec.phi = sol.phi(pt.t);
    rec.scalar = pd.scalar;
    rec.nabla_j = pd.nabla_j_frame;
    rec.d_omega = pd.d_omega_frame;
    rec.killing = pd.killing;
    rec.killing_j = pd.killing_j;
    rec.frame_j_dev = pd.frame_j_deviation;

    const CurvatureTensor RF{d, pd.riemann_frame, I};
    rec.r_norm = pd.riemann_frame.max_abs();
    const HpResidual hp = hp_residual(RF, PiF, rec.phi);
    rec.hp_rel = hp.relative;
    rec.hp_abs = hp.absolute;
    rec.rr_norm = hp.norm_rr;
    rec.pir_norm = hp.norm_pir;
    // the relative residual degenerates to 0/0 when both derivations vanish
    // (the symmetric case), so also allow the numerator scaled by |R|^2
    rec.hp_metric = std::min(hp.relative,
                             hp.absolute / std::max(rec.r_norm * rec.r_norm, hp.floor));

    const QchFit fit =
        qch_fit(pd.riemann_frame, PiF.comp, PhiF.comp, PsiF.comp);
    rec.qch_a = fit.a;
    rec.qch_b = fit.b;
    rec.qch_c = fit.c;
    rec.qch_residual = fit.residual;
    rec.qch_cond = fit.gram_condition;
    rec.qch_phi_gap = std::abs(fit.a + 0.5 * fit.b - rec.phi);

    rec.sym_asym1 = antisymmetry_first_pair(pd.riemann_frame);
    rec.sym_asym2 = antisymmetry_second_pair(pd.riemann_frame);
    rec.sym_pair = pair_interchange(pd.riemann_frame);
    rec.bianchi = first_bianchi(pd.riemann_frame);
    rec.j_invariance = j_invariance_residual(pd.riemann_frame, Jstd);

    const std::uint64_t probe_seed =
        cfg.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(ip + 1);
    const QchProbe probe = probe_qch_law(pd.riemann_frame, I, Jstd, pD, fit.a, fit.b, fit.c,
                                         probe_seed, cfg.hol_sec_directions);
    rec.hol_sec_dev = probe.max_dev;

    rep.points.push_back(std::move(rec));
  }

  rep.phi_sign = phi_sign_summary(sol);

  rep.scalar_min = rep.points.front().scalar;
  rep.scalar_max = rep.points.front().scalar;
  for (const auto& p : rep.points) {
    rep.scalar_min = std::min(rep.scalar_min, p.scalar);
    rep.scalar_max = std::max(rep.scalar_max, p.scalar);
  }

  // aggregate checks
  auto add_check = [&rep, &cfg](const std::string& name, double value, double mean) {
    CheckResult c;
    c.value = value;
    c.mean = mean;
    c.tolerance = cfg.tolerances.count(name) ? cfg.tolerances.at(name)
                                             : default_check_tolerances().at(name);
    c.pass = value <= c.tolerance;
    rep.checks[name] = c;
  };
  for (const auto& name : detail::point_check_names()) {
    double mx = 0.0, mean = 0.0;
    for (const auto& p : rep.points) {
      const double v = detail::point_check_value(p, name);
      mx = std::max(mx, v);
      mean += v;
    }
    mean /= static_cast<double>(rep.points.size());
    add_check(name, mx, mean);
  }
  add_check("energy", rep.energy_max, rep.energy_max);
  add_check("boundary", rep.boundary.endpoint_max(), rep.boundary.endpoint_max());
  add_check("parity", rep.boundary.parity_max(), rep.boundary.parity_max());

  // scalars computed at equal t but different (psi, w) must agree
  double tinv = 0.0;
  for (int gidx = 0; gidx < cfg.samples_t; ++gidx) {
    double amin = 0, amax = 0, bmin = 0, bmax = 0, cmin = 0, cmax = 0, smin = 0, smax = 0;
    bool first = true;
    for (size_t ip = 0; ip < rep.points.size(); ++ip) {
      if (group[ip] != gidx) continue;
      const PointRecord& p = rep.points[ip];
      if (first) {
        amin = amax = p.qch_a;
        bmin = bmax = p.qch_b;
        cmin = cmax = p.qch_c;
        smin = smax = p.scalar;
        first = false;
      } else {
        amin = std::min(amin, p.qch_a); amax = std::max(amax, p.qch_a);
        bmin = std::min(bmin, p.qch_b); bmax = std::max(bmax, p.qch_b);
        cmin = std::min(cmin, p.qch_c); cmax = std::max(cmax, p.qch_c);
        smin = std::min(smin, p.scalar); smax = std::max(smax, p.scalar);
      }
    }
    if (!first)
      tinv = std::max({tinv, amax - amin, bmax - bmin, cmax - cmin, smax - smin});
  }
  add_check("t_invariance", tinv, tinv);

  rep.pass = true;
  for (const auto& [name, c] : rep.checks)
    if (!c.pass) rep.pass = false;
  return rep;
}

inline nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "verification-report/1";
  nlohmann::ordered_json jc;
  if (config.coeffs) jc["coeffs"] = *config.coeffs;
  else jc["alpha"] = config.alpha;
  jc["n"] = config.n;
  jc["samples_t"] = config.samples_t;
  jc["samples_base"] = config.samples_base;
  jc["seed"] = config.seed;
  jc["margin"] = config.margin;
  jc["hol_sec_directions"] = config.hol_sec_directions;
  jc["tolerances"] = config.tolerances;
  jc["ode"] = {{"rel", config.ode.rel},       {"abs", config.ode.abs},
               {"energy", config.ode.energy}, {"endpoint", config.ode.endpoint},
               {"t_max", config.ode.t_max},   {"max_step", config.ode.max_step}};
  j["config"] = std::move(jc);
  j["profile"] = {
      {"L", L},
      {"energy_max", energy_max},
      {"boundary",
       {{"h_at_zero", boundary.h_at_zero},
        {"hp_at_zero_err", boundary.hp_at_zero_err},
        {"h_at_end_err", boundary.h_at_end_err},
        {"hp_at_end", boundary.hp_at_end},
        {"f_at_end", boundary.f_at_end},
        {"fp_at_end_err", boundary.fp_at_end_err},
        {"parity_h", boundary.parity_h},
        {"parity_f_end", boundary.parity_f_end}}},
      {"phi",
       {{"min", phi_sign.min_value},
        {"argmin_t", phi_sign.argmin_t},
        {"h2_at_min", phi_sign.h2_at_min},
        {"at_zero", phi_sign.at_zero},
        {"at_end", phi_sign.at_end}}}};
  j["calibration"] = {{"epsilon", calibration.epsilon},
                      {"nabla_j_plus", calibration.nabla_j_plus},
                      {"nabla_j_minus", calibration.nabla_j_minus}};
  j["scalar_curvature"] = {{"min", scalar_min}, {"max", scalar_max},
                           {"spread", scalar_spread()}};
  nlohmann::ordered_json jchecks;
  for (const auto& [name, c] : checks)
    jchecks[name] = {{"value", c.value}, {"mean", c.mean}, {"tolerance", c.tolerance},
                     {"pass", c.pass}};
  j["checks"] = std::move(jchecks);
  auto jpts = nlohmann::ordered_json::array();
  for (const auto& p : points) {
    nlohmann::ordered_json q;
    q["t"] = p.t;
    q["psi"] = p.psi;
    q["w"] = p.w;
    q["phi"] = p.phi;
    q["scalar"] = p.scalar;
    q["hp"] = {{"rel", p.hp_rel}, {"abs", p.hp_abs}, {"metric", p.hp_metric},
               {"r_norm", p.r_norm}, {"rr_norm", p.rr_norm}, {"pir_norm", p.pir_norm}};
    q["qch"] = {{"a", p.qch_a}, {"b", p.qch_b}, {"c", p.qch_c},
                {"residual", p.qch_residual}, {"cond", p.qch_cond},
                {"phi_gap", p.qch_phi_gap}};
    q["kahler"] = {{"nabla_j", p.nabla_j}, {"d_omega", p.d_omega},
                   {"killing", p.killing}, {"killing_j", p.killing_j}};
    q["symmetry"] = {{"asym1", p.sym_asym1}, {"asym2", p.sym_asym2},
                     {"pair", p.sym_pair}, {"bianchi", p.bianchi},
                     {"j_invariance", p.j_invariance}, {"frame_j_dev", p.frame_j_dev}};
    q["hol_sec_dev"] = p.hol_sec_dev;
    jpts.push_back(std::move(q));
  }
  j["points"] = std::move(jpts);
  j["pass"] = pass;
  return j;
}

inline std::string VerificationReport::to_csv() const {
  std::ostringstream os;
  os << "alpha,n,t,psi,w,check,value,tolerance,pass\n";
  const std::string alpha_str =
      config.coeffs ? std::string("") : format_double(config.alpha);
  auto point_w = [](const PointRecord& p) {
    std::string s;
    for (size_t i = 0; i < p.w.size(); ++i) {
      if (i) s += ';';
      s += format_double(p.w[i]);
    }
    return s;
  };
  for (const auto& p : points) {
    for (const auto& name : detail::point_check_names()) {
      const double v = detail::point_check_value(p, name);
      const auto& c = checks.at(name);
      os << alpha_str << ',' << config.n << ',' << format_double(p.t) << ','
         << format_double(p.psi) << ',' << point_w(p) << ',' << name << ','
         << format_double(v) << ',' << format_double(c.tolerance) << ','
         << (v <= c.tolerance ? "true" : "false") << '\n';
    }
  }
  for (const char* name : {"energy", "boundary", "parity", "t_invariance"}) {
    const auto& c = checks.at(name);
    os << alpha_str << ',' << config.n << ",,,," << name << ',' << format_double(c.value)
       << ',' << format_double(c.tolerance) << ',' << (c.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

inline std::string VerificationReport::to_markdown() const {
  std::ostringstream os;
  char buf[64];
  auto fmt = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return std::string(buf);
  };
  os << "# Verification report\n\n";
  if (config.coeffs) {
    os << "- profile coefficients:";
    for (double c : *config.coeffs) os << ' ' << fmt(c);
    os << "\n";
  } else {
    os << "- alpha: " << fmt(config.alpha) << "\n";
  }
  os << "- n: " << config.n << " (real dimension " << 2 * config.n << ")\n";
  os << "- points: " << points.size() << " (samples_t " << config.samples_t
     << ", samples_base " << config.samples_base << ", seed " << config.seed << ")\n";
  os << "- L: " << fmt(L) << "\n";
  os << "- energy residual: " << fmt(energy_max) << "\n";
  os << "- complex-structure sign: " << (calibration.epsilon > 0 ? "+1" : "-1")
     << " (probe |nabla J|: +1 -> " << fmt(calibration.nabla_j_plus) << ", -1 -> "
     << fmt(calibration.nabla_j_minus) << ")\n";
  os << "- phi: min " << fmt(phi_sign.min_value) << " at t=" << fmt(phi_sign.argmin_t)
     << " (h^2=" << fmt(phi_sign.h2_at_min) << "), phi(0)=" << fmt(phi_sign.at_zero)
     << ", phi(L)=" << fmt(phi_sign.at_end) << "\n";
  os << "- scalar curvature: [" << fmt(scalar_min) << ", " << fmt(scalar_max)
     << "], spread " << fmt(scalar_spread()) << "\n\n";
  os << "| check | worst | mean | tolerance | verdict |\n";
  os << "|---|---|---|---|---|\n";
  for (const auto& [name, c] : checks)
    os << "| " << name << " | " << fmt(c.value) << " | " << fmt(c.mean) << " | "
       << fmt(c.tolerance) << " | " << (c.pass ? "pass" : "FAIL") << " |\n";
  os << "\noverall: " << (pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

struct SweepEntry {
  double alpha = 0.0;
  bool ok = false;         // solved and all checks passed
  std::string error;       // set when validation/solving threw
  std::optional<VerificationReport> report;
};

inline std::vector<SweepEntry> sweep(const std::vector<double>& alphas,
                                     const VerificationConfig& base) {
  std::vector<std::future<SweepEntry>> futs;
  futs.reserve(alphas.size());
  for (double a : alphas) {
    futs.push_back(std::async(std::launch::async, [a, base]() {
      SweepEntry e;
      e.alpha = a;
      try {
        VerificationConfig cfg = base;
        cfg.alpha = a;
        cfg.coeffs.reset();
        e.report = run_verification(cfg);
        e.ok = e.report->pass;
      } catch (const std::exception& ex) {
        e.error = ex.what();
      }
      return e;
    }));
  }
  std::vector<SweepEntry> out;
  out.reserve(futs.size());
  for (auto& f : futs) out.push_back(f.get());
  return out;
}

inline std::string sweep_to_csv(const std::vector<SweepEntry>& entries, int n) {
  std::ostringstream os;
  os << "alpha,n,ok,error,L,phi_min,hp_max,qch_max,nabla_j_max,scalar_spread\n";
  for (const auto& e : entries) {
    os << format_double(e.alpha) << ',' << n << ',' << (e.ok ? "true" : "false") << ','
       << '"' << detail::single_line(e.error) << '"' << ',';
    if (e.report) {
      const auto& r = *e.report;
      os << format_double(r.L) << ',' << format_double(r.phi_sign.min_value) << ','
         << format_double(r.checks.at("hp").value) << ','
         << format_double(r.checks.at("qch").value) << ','
         << format_double(r.checks.at("nabla_j").value) << ','
         << format_double(r.scalar_spread());
    } else {
      os << ",,,,,";
    }
    os << '\n';
  }
  return os.str();
}

inline nlohmann::ordered_json sweep_to_json(const std::vector<SweepEntry>& entries, int n) {
  nlohmann::ordered_json j;
  j["schema"] = "sweep-report/1";
  j["n"] = n;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json q;
    q["alpha"] = e.alpha;
    q["ok"] = e.ok;
    if (!e.error.empty()) q["error"] = e.error;
    if (e.report) {
      const auto& r = *e.report;
      q["L"] = r.L;
      q["phi_min"] = r.phi_sign.min_value;
      q["scalar_spread"] = r.scalar_spread();
      nlohmann::ordered_json jchecks;
      for (const auto& [name, c] : r.checks)
        jchecks[name] = {{"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}};
      q["checks"] = std::move(jchecks);
    }
    arr.push_back(std::move(q));
  }
  j["entries"] = std::move(arr);
  return j;
}

inline std::string sweep_to_markdown(const std::vector<SweepEntry>& entries, int n) {
  std::ostringstream os;
  char buf[64];
  auto fmt = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return std::string(buf);
  };
  os << "# Sweep report (n = " << n << ")\n\n";
  os << "| alpha | L | phi_min | hp_max | qch_max | scalar spread | verdict |\n";
  os << "|---|---|---|---|---|---|---|\n";
  for (const auto& e : entries) {
    os << "| " << fmt(e.alpha) << " | ";
    if (e.report) {
      const auto& r = *e.report;
      os << fmt(r.L) << " | " << fmt(r.phi_sign.min_value) << " | "
         << fmt(r.checks.at("hp").value) << " | " << fmt(r.checks.at("qch").value) << " | "
         << fmt(r.scalar_spread()) << " | " << (e.ok ? "pass" : "FAIL") << " |\n";
    } else {
      os << " | | | | | error: " << detail::single_line(e.error) << " |\n";
    }
  }
  return os.str();
}

}  // namespace hpk
