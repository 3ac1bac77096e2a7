#pragma once

// Profile polynomials for the rotation-invariant metric family. A profile P
// drives the warping function through h'' = P'(h)/2 with h(0)=0, h'(0)=1,
// which conserves h'^2 = P(h). Admissibility:
//   P(0)=1, P'(0)=0, P(1)=0, P'(1)=-2, P even, P > 0 on [0,1).
// The built-in family is
//   p_alpha(s) = 1 + (alpha-1) s^2 - 2 alpha s^4 + alpha s^6
//              = (1 - s^2)(1 + alpha s^2 - alpha s^4),
// admissible exactly for alpha > -4 (at alpha = -4 the second factor has a
// double root at s = 1/sqrt(2)).

#include <hpk/polynomial.hpp>

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hpk {

struct PositivityResult {
  bool positive = false;
  double min_value = 0.0;  // smallest value found on [0, 1)
  double min_t = 0.0;
  // set when the profile dips to (or below) zero
  std::optional<double> witness_t;
  double witness_value = 0.0;
};

// Certifies p > 0 on [0, 1): dense grid scan, Newton-polished interior minima
// (catches tangential double roots the grid alone would miss), and companion
// roots of p as corroborating witnesses.
inline PositivityResult check_positivity_on_unit_interval(const Polynomial& p) {
  PositivityResult res;
  const double right = 1.0 - 1e-6;
  const double floor = 1e-11 * std::max(1.0, p.coeff_scale());

  const int N = 10000;
  std::vector<double> ts(N), vs(N);
  for (int i = 0; i < N; ++i) {
    ts[static_cast<size_t>(i)] = right * static_cast<double>(i) / static_cast<double>(N - 1);
    vs[static_cast<size_t>(i)] = p(ts[static_cast<size_t>(i)]);
  }

  res.min_value = vs[0];
  res.min_t = ts[0];
  for (int i = 0; i < N; ++i) {
    if (vs[static_cast<size_t>(i)] < res.min_value) {
      res.min_value = vs[static_cast<size_t>(i)];
      res.min_t = ts[static_cast<size_t>(i)];
    }
  }

  // polish every interior grid minimum; tangencies sharpen to machine precision
  for (int i = 1; i + 1 < N; ++i) {
    if (vs[static_cast<size_t>(i)] <= vs[static_cast<size_t>(i - 1)] &&
        vs[static_cast<size_t>(i)] <= vs[static_cast<size_t>(i + 1)]) {
      double x = detail::newton_polish_extremum(p, ts[static_cast<size_t>(i)]);
      if (!(x >= 0.0 && x <= right)) x = ts[static_cast<size_t>(i)];
      const double v = p(x);
      if (v < res.min_value) {
        res.min_value = v;
        res.min_t = x;
      }
    }
  }

  if (res.min_value <= floor) {
    res.witness_t = res.min_t;
    res.witness_value = res.min_value;
  } else {
    // paranoid cross-check: any true root inside the interval beats the grid
    for (double r : real_roots_in(p, 0.0, right)) {
      res.witness_t = r;
      res.witness_value = p(r);
      break;
    }
  }

  res.positive = !res.witness_t.has_value();
  return res;
}

struct ValidationClause {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

struct ProfileValidation {
  std::vector<ValidationClause> clauses;
  PositivityResult positivity;

  bool pass() const {
    for (const auto& c : clauses)
      if (!c.pass) return false;
    return true;
  }

  std::string summary() const {
    std::ostringstream os;
    for (const auto& c : clauses) {
      os << c.name << ": " << (c.pass ? "ok" : "FAIL") << " (residual " << c.residual << ")";
      if (c.name == "positive_on_unit_interval" && positivity.witness_t)
        os << " witness t=" << *positivity.witness_t << " value=" << positivity.witness_value;
      os << "\n";
    }
    return os.str();
  }
};

struct Profile {
  Polynomial p;
  std::optional<double> alpha;  // set when built from the one-parameter family

  static Profile from_coeffs(std::vector<double> coeffs) {
    return Profile{Polynomial(std::move(coeffs)), std::nullopt};
  }

  static Profile from_alpha(double alpha) {
    std::vector<double> c(7, 0.0);
    c[0] = 1.0;
    c[2] = alpha - 1.0;
    c[4] = -2.0 * alpha;
    c[6] = alpha;
    return Profile{Polynomial(std::move(c)), alpha};
  }
};

class ProfileError : public std::runtime_error {
public:
  ProfileError(const std::string& msg, ProfileValidation v)
      : std::runtime_error(msg), validation(std::move(v)) {}
  ProfileValidation validation;
};

inline ProfileValidation validate_profile(const Profile& prof) {
  const Polynomial& p = prof.p;
  const Polynomial dp = p.derivative();
  ProfileValidation v;

  bool even = true;
  double odd_res = 0.0;
  for (int k = 1; k <= p.degree(); k += 2) {
    if (p.coeff(k) != 0.0) {
      even = false;
      odd_res = std::max(odd_res, std::abs(p.coeff(k)));
    }
  }
  v.clauses.push_back({"even", even, odd_res});

  const double scale0 = std::max(1.0, p.coeff_scale());
  const double scale1 = std::max(1.0, dp.coeff_scale());
  const double r_p0 = std::abs(p(0.0) - 1.0);
  const double r_dp0 = std::abs(dp(0.0));
  const double r_p1 = std::abs(p(1.0));
  const double r_dp1 = std::abs(dp(1.0) + 2.0);
  v.clauses.push_back({"value_at_zero", r_p0 <= 1e-12 * scale0, r_p0});
  v.clauses.push_back({"slope_at_zero", r_dp0 <= 1e-12 * scale1, r_dp0});
  v.clauses.push_back({"value_at_one", r_p1 <= 1e-12 * scale0, r_p1});
  v.clauses.push_back({"slope_at_one", r_dp1 <= 1e-12 * scale1, r_dp1});

  v.positivity = check_positivity_on_unit_interval(p);
  v.clauses.push_back({"positive_on_unit_interval", v.positivity.positive,
                       v.positivity.positive ? 0.0 : std::abs(v.positivity.witness_value)});
  return v;
}

inline void require_valid(const Profile& prof) {
  ProfileValidation v = validate_profile(prof);
  if (!v.pass()) {
    std::ostringstream os;
    os << "profile rejected:\n" << v.summary();
    throw ProfileError(os.str(), std::move(v));
  }
}

}  // namespace hpk
