#include <hpk/verifier.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <string>

using Catch::Approx;

namespace {

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("full verification passes on a generic family member") {
  hpk::VerificationConfig cfg;
  cfg.alpha = 0.5;
  cfg.n = 2;
  const auto rep = hpk::run_verification(cfg);

  CHECK(rep.pass);
  CHECK(rep.points.size() == 20);
  CHECK(rep.L == Approx(1.524886838).margin(1e-6));
  CHECK(rep.calibration.epsilon == 1);

  // every configured check is reported and green
  REQUIRE(rep.checks.size() == hpk::default_check_tolerances().size());
  for (const auto& [name, c] : rep.checks) {
    INFO(name << " value " << c.value << " tolerance " << c.tolerance);
    CHECK(c.pass);
    CHECK(c.value <= c.tolerance);
    CHECK(c.mean <= c.value + 1e-18);
  }

  // the identity linking the fit to the scalar observable
  for (const auto& p : rep.points)
    CHECK(p.qch_a + 0.5 * p.qch_b == Approx(p.phi).margin(1e-8));

  // curvature genuinely varies along t for this member
  CHECK(rep.scalar_spread() > 1.0);
  CHECK(rep.phi_sign.min_value > 0.0);
  CHECK(rep.phi_sign.at_zero == Approx(2.0).margin(1e-9));
  CHECK(rep.phi_sign.at_end == Approx(4.0).margin(1e-9));
}

TEST_CASE("round member collapses to the symmetric model in the fit") {
  hpk::VerificationConfig cfg;
  cfg.alpha = 0.0;
  cfg.n = 2;
  const auto rep = hpk::run_verification(cfg);

  CHECK(rep.pass);
  for (const auto& p : rep.points) {
    CHECK(p.qch_a == Approx(4.0).margin(1e-8));
    CHECK(std::abs(p.qch_b) <= 1e-8);
    CHECK(std::abs(p.qch_c) <= 1e-8);
    CHECK(p.rr_norm <= 1e-8);
  }
  CHECK(rep.scalar_min == Approx(24.0).margin(1e-8));
  CHECK(rep.scalar_max == Approx(24.0).margin(1e-8));
  CHECK(rep.checks.at("t_invariance").value <= 1e-8);
}

TEST_CASE("three complex dimensions behave the same way") {
  hpk::VerificationConfig cfg;
  cfg.alpha = 0.0;
  cfg.n = 3;
  const auto rep = hpk::run_verification(cfg);
  CHECK(rep.pass);
  CHECK(rep.scalar_min == Approx(48.0).margin(1e-7));
  for (const auto& p : rep.points) CHECK(p.qch_a == Approx(4.0).margin(1e-7));
}

TEST_CASE("tolerance overrides flip the verdict without touching the numbers") {
  hpk::VerificationConfig cfg;
  cfg.alpha = 0.5;
  cfg.n = 2;
  cfg.tolerances["hp"] = 1e-18;
  const auto rep = hpk::run_verification(cfg);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.checks.at("hp").pass);
  CHECK(rep.checks.at("hp").tolerance == 1e-18);
  CHECK(rep.checks.at("qch").pass);
}

TEST_CASE("explicit coefficients replace the family parameter") {
  hpk::VerificationConfig by_alpha;
  by_alpha.alpha = 0.5;
  hpk::VerificationConfig by_coeffs;
  by_coeffs.coeffs = std::vector<double>{1.0, 0.0, -0.5, 0.0, -1.0, 0.0, 0.5};

  const auto ra = hpk::run_verification(by_alpha);
  const auto rc = hpk::run_verification(by_coeffs);
  CHECK(rc.pass);
  CHECK(rc.L == Approx(ra.L).margin(1e-12));

  const auto j = rc.to_json();
  CHECK(j["config"].contains("coeffs"));
  CHECK_FALSE(j["config"].contains("alpha"));
}

TEST_CASE("verification reports are byte stable across runs") {
  hpk::VerificationConfig cfg;
  cfg.alpha = 0.5;
  cfg.n = 2;
  const auto a = hpk::run_verification(cfg);
  const auto b = hpk::run_verification(cfg);
  CHECK(a.to_json().dump(2) == b.to_json().dump(2));
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.to_markdown() == b.to_markdown());
}

TEST_CASE("report serializations carry the advertised structure") {
  hpk::VerificationConfig cfg;
  cfg.alpha = 1.0;
  cfg.n = 2;
  const auto rep = hpk::run_verification(cfg);

  const auto j = rep.to_json();
  CHECK(j["schema"] == "verification-report/1");
  for (const char* k : {"config", "profile", "calibration", "scalar_curvature", "checks",
                        "points", "pass"})
    REQUIRE(j.contains(k));
  CHECK(j["profile"]["L"].get<double>() == rep.L);
  CHECK(j["points"].size() == rep.points.size());
  CHECK(j["checks"].size() == rep.checks.size());
  for (const char* k : {"min", "argmin_t", "h2_at_min", "at_zero", "at_end"})
    REQUIRE(j["profile"]["phi"].contains(k));

  // one row per point per check, four profile-level rows, one header
  const std::string csv = rep.to_csv();
  CHECK(count_lines(csv) == 1 + 20 * 11 + 4);
  CHECK(csv.rfind("alpha,n,t,psi,w,check,value,tolerance,pass\n", 0) == 0);

  const std::string md = rep.to_markdown();
  CHECK(md.find("overall: PASS") != std::string::npos);
  CHECK(md.find("| hp |") != std::string::npos);
}

TEST_CASE("phi dips to its analytic interior minimum for negative parameters") {
  // for alpha < 0 the minimum sits at h^2 = 2/3 with value 4(1 + alpha/3)
  for (double alpha : {-3.0, -1.5}) {
    const hpk::ProfileSolution sol(hpk::Profile::from_alpha(alpha));
    const auto ps = hpk::phi_sign_summary(sol);
    INFO("alpha = " << alpha);
    CHECK(ps.min_value == Approx(4.0 * (1.0 + alpha / 3.0)).margin(1e-6));
    CHECK(ps.h2_at_min == Approx(2.0 / 3.0).margin(1e-4));
    CHECK(ps.at_zero == Approx(4.0 * (1.0 - alpha)).margin(1e-9));
    CHECK(ps.at_end == Approx(4.0).margin(1e-9));
  }
  // for alpha >= 0 phi decreases toward the zero section, no interior dip
  const hpk::ProfileSolution flat(hpk::Profile::from_alpha(0.5));
  const auto ps = hpk::phi_sign_summary(flat);
  CHECK(ps.min_value == Approx(2.0).margin(1e-9));
  CHECK(ps.argmin_t == 0.0);
}

TEST_CASE("sweep aggregates results and records failures without stopping") {
  hpk::VerificationConfig base;
  base.n = 2;
  const auto entries = hpk::sweep({0.0, 1.0, -4.0}, base);
  REQUIRE(entries.size() == 3);

  CHECK(entries[0].alpha == 0.0);
  CHECK(entries[0].ok);
  REQUIRE(entries[0].report.has_value());
  CHECK(entries[1].ok);
  CHECK(entries[2].alpha == -4.0);
  CHECK_FALSE(entries[2].ok);
  CHECK_FALSE(entries[2].report.has_value());
  CHECK(entries[2].error.find("rejected") != std::string::npos);

  const std::string csv = hpk::sweep_to_csv(entries, base.n);
  CHECK(count_lines(csv) == 4);
  CHECK(csv.find("true") != std::string::npos);
  CHECK(csv.find("false") != std::string::npos);

  const auto j = hpk::sweep_to_json(entries, base.n);
  CHECK(j["schema"] == "sweep-report/1");
  REQUIRE(j["entries"].size() == 3);
  CHECK(j["entries"][2].contains("error"));
  CHECK_FALSE(j["entries"][2].contains("L"));

  const std::string md = hpk::sweep_to_markdown(entries, base.n);
  CHECK(md.find("-4") != std::string::npos);

  // deterministic end to end
  const auto again = hpk::sweep({0.0, 1.0, -4.0}, base);
  CHECK(hpk::sweep_to_csv(again, base.n) == csv);
}

TEST_CASE("point records expose the scalars a caller would plot") {
  hpk::VerificationConfig cfg;
  cfg.alpha = -2.0;
  cfg.n = 2;
  cfg.samples_t = 3;
  const auto rep = hpk::run_verification(cfg);
  CHECK(rep.pass);
  CHECK(rep.points.size() == 12);
  for (const auto& p : rep.points) {
    CHECK(p.t >= cfg.margin * rep.L - 1e-12);
    CHECK(p.t <= (1.0 - cfg.margin) * rep.L + 1e-12);
    CHECK(p.w.size() == 2);
    CHECK(p.phi == Approx(p.qch_a + 0.5 * p.qch_b).margin(1e-7));
    CHECK(p.qch_cond < 1e6);
    CHECK(p.r_norm > 0.1);
  }
}
