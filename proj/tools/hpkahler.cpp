// Command-line driver: solve profiles, run the verification suite, sweep a
// family parameter. Exit codes: 0 success, 1 a check failed, 2 invalid input.

#include <hpk/io_util.hpp>
#include <hpk/verifier.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

struct CommonOpts {
  double alpha = 0.0;
  int n = 2;
  int samples_t = 5;
  int samples_base = 2;
  std::uint64_t seed = 20240817ULL;
  double margin = 0.05;
  std::vector<std::string> tol_overrides;
  double ode_rel = 1e-12;
  double ode_abs = 1e-12;
  std::string out;
  std::string format = "json";
};

void add_verify_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--alpha", o.alpha, "family parameter");
  cmd->add_option("--n", o.n, "complex dimension of the total space")->check(CLI::Range(2, 6));
  cmd->add_option("--samples-t", o.samples_t, "interior time samples")->check(CLI::Range(1, 200));
  cmd->add_option("--samples-base", o.samples_base, "base points per time")
      ->check(CLI::Range(1, 200));
  cmd->add_option("--seed", o.seed, "sampling seed");
  cmd->add_option("--margin", o.margin, "interior band margin as a fraction of L")
      ->check(CLI::Range(0.001, 0.45));
  cmd->add_option("--tol", o.tol_overrides, "override a check tolerance, name=value")
      ->take_all();
  cmd->add_option("--ode-rel", o.ode_rel, "ODE relative tolerance");
  cmd->add_option("--ode-abs", o.ode_abs, "ODE absolute tolerance");
  cmd->add_option("--out", o.out, "output file (default depends on subcommand)");
  cmd->add_option("--format", o.format, "json, csv, or md")
      ->check(CLI::IsMember({"json", "csv", "md"}));
}

int build_config(const CommonOpts& o, hpk::VerificationConfig& cfg, std::string& err) {
  cfg.alpha = o.alpha;
  cfg.n = o.n;
  cfg.samples_t = o.samples_t;
  cfg.samples_base = o.samples_base;
  cfg.seed = o.seed;
  cfg.margin = o.margin;
  cfg.ode.rel = o.ode_rel;
  cfg.ode.abs = o.ode_abs;
  for (const auto& s : o.tol_overrides) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      err = "bad --tol argument '" + s + "', expected name=value";
      return 2;
    }
    const std::string name = s.substr(0, eq);
    if (!cfg.tolerances.count(name)) {
      err = "unknown check name in --tol: '" + name + "'";
      return 2;
    }
    try {
      cfg.tolerances[name] = std::stod(s.substr(eq + 1));
    } catch (const std::exception&) {
      err = "bad numeric value in --tol argument '" + s + "'";
      return 2;
    }
  }
  return 0;
}

std::string default_out(const std::string& stem, const std::string& format) {
  return stem + "." + format;
}

int cmd_profile(const CommonOpts& o, int samples) {
  hpk::OdeTolerances ode;
  ode.rel = o.ode_rel;
  ode.abs = o.ode_abs;
  std::optional<hpk::ProfileSolution> sol;
  try {
    sol.emplace(hpk::Profile::from_alpha(o.alpha), ode);
  } catch (const hpk::ProfileError& e) {
    std::cerr << e.what();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 1;
  }

  const double L = sol->L();
  const hpk::BoundaryReport br = sol->boundary_report();
  auto row_t = [&](int i) { return L * static_cast<double>(i) / (samples - 1); };

  std::string content;
  if (o.format == "csv") {
    std::string s = "t,h,hp,f,phi\n";
    for (int i = 0; i < samples; ++i) {
      const double t = row_t(i);
      s += hpk::format_double(t) + "," + hpk::format_double(sol->h(t)) + "," +
           hpk::format_double(sol->hp(t)) + "," + hpk::format_double(sol->f(t)) + "," +
           hpk::format_double(sol->phi(t)) + "\n";
    }
    content = std::move(s);
  } else if (o.format == "json") {
    nlohmann::ordered_json j;
    j["schema"] = "profile-table/1";
    j["alpha"] = o.alpha;
    j["coeffs"] = sol->profile().p.coeffs();
    j["L"] = L;
    j["energy_max"] = sol->energy_residual_max();
    j["boundary"] = {{"h_at_zero", br.h_at_zero},
                     {"hp_at_zero_err", br.hp_at_zero_err},
                     {"h_at_end_err", br.h_at_end_err},
                     {"hp_at_end", br.hp_at_end},
                     {"f_at_end", br.f_at_end},
                     {"fp_at_end_err", br.fp_at_end_err},
                     {"parity_h", br.parity_h},
                     {"parity_f_end", br.parity_f_end}};
    auto rows = nlohmann::ordered_json::array();
    for (int i = 0; i < samples; ++i) {
      const double t = row_t(i);
      rows.push_back({{"t", t},
                      {"h", sol->h(t)},
                      {"hp", sol->hp(t)},
                      {"f", sol->f(t)},
                      {"phi", sol->phi(t)}});
    }
    j["rows"] = std::move(rows);
    content = j.dump(2) + "\n";
  } else {
    char buf[64];
    auto fmt = [&buf](double v) {
      std::snprintf(buf, sizeof(buf), "%.6e", v);
      return std::string(buf);
    };
    std::string s = "# Profile table\n\n- alpha: " + fmt(o.alpha) + "\n- L: " + fmt(L) +
                    "\n- energy residual: " + fmt(sol->energy_residual_max()) +
                    "\n- worst endpoint residual: " + fmt(br.endpoint_max()) + "\n\n";
    s += "| t | h | h' | f | phi |\n|---|---|---|---|---|\n";
    for (int i = 0; i < samples; ++i) {
      const double t = row_t(i);
      s += "| " + fmt(t) + " | " + fmt(sol->h(t)) + " | " + fmt(sol->hp(t)) + " | " +
           fmt(sol->f(t)) + " | " + fmt(sol->phi(t)) + " |\n";
    }
    content = std::move(s);
  }

  const std::string path = o.out.empty() ? default_out("profile-table", o.format) : o.out;
  hpk::write_file_atomic(path, content);
  char lbuf[40];
  std::snprintf(lbuf, sizeof(lbuf), "%.15g", L);
  std::cout << "alpha " << o.alpha << ": L = " << lbuf
            << ", endpoint residual " << br.endpoint_max() << ", parity residual "
            << br.parity_max() << "\nwrote " << path << "\n";
  return 0;
}

int cmd_verify(const CommonOpts& o) {
  hpk::VerificationConfig cfg;
  std::string err;
  if (int rc = build_config(o, cfg, err); rc != 0) {
    std::cerr << err << "\n";
    return rc;
  }
  std::optional<hpk::VerificationReport> rep;
  try {
    rep = hpk::run_verification(cfg);
  } catch (const hpk::ProfileError& e) {
    std::cerr << e.what();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "verification error: " << e.what() << "\n";
    return 1;
  }

  std::string content;
  if (o.format == "json") content = rep->to_json().dump(2) + "\n";
  else if (o.format == "csv") content = rep->to_csv();
  else content = rep->to_markdown();
  const std::string path = o.out.empty() ? default_out("verify-report", o.format) : o.out;
  hpk::write_file_atomic(path, content);

  std::cout << rep->to_markdown() << "wrote " << path << "\n";
  return rep->pass ? 0 : 1;
}

int cmd_sweep(const CommonOpts& o, const std::vector<double>& alphas,
              const std::string& report_dir) {
  hpk::VerificationConfig cfg;
  std::string err;
  if (int rc = build_config(o, cfg, err); rc != 0) {
    std::cerr << err << "\n";
    return rc;
  }
  if (alphas.empty()) {
    std::cerr << "sweep: need at least one --alphas value\n";
    return 2;
  }
  const std::vector<hpk::SweepEntry> entries = hpk::sweep(alphas, cfg);

  std::string content;
  if (o.format == "json") content = hpk::sweep_to_json(entries, cfg.n).dump(2) + "\n";
  else if (o.format == "csv") content = hpk::sweep_to_csv(entries, cfg.n);
  else content = hpk::sweep_to_markdown(entries, cfg.n);
  const std::string path = o.out.empty() ? default_out("sweep-report", o.format) : o.out;
  hpk::write_file_atomic(path, content);

  if (!report_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(report_dir, ec);
    if (ec) {
      std::cerr << "cannot create report directory '" << report_dir << "': " << ec.message()
                << "\n";
      return 1;
    }
    for (const auto& e : entries) {
      if (!e.report) continue;
      char buf[64];
      std::snprintf(buf, sizeof(buf), "verify-alpha%g-n%d.json", e.alpha, cfg.n);
      hpk::write_file_atomic(report_dir + "/" + buf, e.report->to_json().dump(2) + "\n");
    }
  }

  bool all_ok = true;
  for (const auto& e : entries) {
    std::cout << "alpha " << e.alpha << ": "
              << (e.ok ? "pass" : (e.error.empty() ? "FAIL" : ("error: " + e.error)))
              << "\n";
    all_ok = all_ok && e.ok;
  }
  std::cout << "wrote " << path << "\n";
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cohomogeneity-one Kaehler metrics: profile solver and verifier"};
  app.require_subcommand(1);

  CommonOpts popts, vopts, sopts;
  popts.format = "csv";
  sopts.format = "csv";
  int profile_samples = 101;
  std::vector<double> alphas;
  std::string report_dir;

  CLI::App* profile = app.add_subcommand("profile", "solve a profile and tabulate h, f, phi");
  profile->add_option("--samples", profile_samples, "table rows")->check(CLI::Range(2, 100000));
  add_verify_opts(profile, popts);

  CLI::App* verify = app.add_subcommand("verify", "run the verification suite at one alpha");
  add_verify_opts(verify, vopts);

  CLI::App* sweepc = app.add_subcommand("sweep", "verify a list of alpha values");
  sweepc->add_option("--alphas", alphas, "comma-separated alpha values")
      ->delimiter(',')
      ->required();
  sweepc->add_option("--report-dir", report_dir, "also write one JSON report per alpha");
  add_verify_opts(sweepc, sopts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (app.got_subcommand(profile)) return cmd_profile(popts, profile_samples);
  if (app.got_subcommand(verify)) return cmd_verify(vopts);
  return cmd_sweep(sopts, alphas, report_dir);
}
