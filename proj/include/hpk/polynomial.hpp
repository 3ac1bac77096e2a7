#pragma once

// Dense univariate polynomials in the monomial basis, plus the small amount
// of real-root machinery needed to certify positivity of profile polynomials.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hpk {

class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

  // degree of the zero polynomial is -1
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  const std::vector<double>& coeffs() const { return c_; }

  double coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(k)] : 0.0;
  }

  double operator()(double x) const {
    double y = 0.0;
    for (int k = degree(); k >= 0; --k) y = y * x + c_[static_cast<size_t>(k)];
    return y;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial{};
    std::vector<double> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return Polynomial(std::move(d));
  }

  // q with p(x) = p(0) + x*q(x); exact coefficient shift, no division
  Polynomial deflate_at_zero() const {
    if (c_.size() <= 1) return Polynomial{};
    return Polynomial(std::vector<double>(c_.begin() + 1, c_.end()));
  }

  double coeff_scale() const {
    double s = 0.0;
    for (double v : c_) s += std::abs(v);
    return s;
  }

  bool is_zero() const { return c_.empty(); }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
  }

  std::vector<double> c_;
};

inline Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial{};
  std::vector<double> c(static_cast<size_t>(a.degree() + b.degree()) + 1, 0.0);
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; j <= b.degree(); ++j) c[static_cast<size_t>(i + j)] += a.coeff(i) * b.coeff(j);
  return Polynomial(std::move(c));
}

inline Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(static_cast<size_t>(std::max(a.degree(), b.degree()) + 1), 0.0);
  for (size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
  return Polynomial(std::move(c));
}

namespace detail {

// Newton iteration toward a root of p; falls back to the starting point on stall.
inline double newton_polish(const Polynomial& p, double x0, int iters = 40) {
  const Polynomial dp = p.derivative();
  double x = x0;
  for (int it = 0; it < iters; ++it) {
    const double fx = p(x);
    const double dfx = dp(x);
    if (dfx == 0.0) break;
    const double step = fx / dfx;
    x -= step;
    if (std::abs(step) < 1e-16 * (1.0 + std::abs(x))) break;
  }
  return x;
}

// Newton iteration toward a stationary point of p (root of p').
inline double newton_polish_extremum(const Polynomial& p, double x0, int iters = 60) {
  const Polynomial dp = p.derivative();
  const Polynomial ddp = dp.derivative();
  double x = x0;
  for (int it = 0; it < iters; ++it) {
    const double d1 = dp(x);
    const double d2 = ddp(x);
    if (d2 == 0.0) break;
    const double step = d1 / d2;
    x -= step;
    if (std::abs(step) < 1e-16 * (1.0 + std::abs(x))) break;
  }
  return x;
}

}  // namespace detail

// Real roots of p inside [lo, hi], found via the companion matrix and polished
// by Newton. Nearly repeated roots are merged.
inline std::vector<double> real_roots_in(const Polynomial& p, double lo, double hi,
                                         double imag_tol = 1e-6) {
  std::vector<double> coeffs = p.coeffs();
  if (coeffs.empty()) throw std::invalid_argument("real_roots_in: zero polynomial");
  double cmax = 0.0;
  for (double v : coeffs) cmax = std::max(cmax, std::abs(v));
  while (coeffs.size() > 1 && std::abs(coeffs.back()) <= 1e-14 * cmax) coeffs.pop_back();
  const int d = static_cast<int>(coeffs.size()) - 1;

  std::vector<double> roots;
  if (d <= 0) return roots;
  if (d == 1) {
    roots.push_back(-coeffs[0] / coeffs[1]);
  } else {
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d - 1; ++i) C(i + 1, i) = 1.0;
    for (int i = 0; i < d; ++i) C(i, d - 1) = -coeffs[static_cast<size_t>(i)] / coeffs[static_cast<size_t>(d)];
    Eigen::EigenSolver<Eigen::MatrixXd> es(C);
    for (int i = 0; i < d; ++i) {
      const std::complex<double> z = es.eigenvalues()(i);
      if (std::abs(z.imag()) > imag_tol * (1.0 + std::abs(z.real()))) continue;
      roots.push_back(z.real());
    }
  }

  std::vector<double> out;
  for (double r : roots) {
    double x = detail::newton_polish(p, r);
    // a repeated root makes plain Newton crawl; try the stationary point too
    const double xe = detail::newton_polish_extremum(p, r);
    if (std::abs(p(xe)) < std::abs(p(x))) x = xe;
    double scale_at = 1e-300;
    double xp = 1.0;
    for (int k = 0; k <= p.degree(); ++k) {
      scale_at += std::abs(p.coeff(k)) * std::abs(xp);
      xp *= x;
    }
    if (std::abs(p(x)) > 1e-9 * scale_at) continue;
    if (x < lo - 1e-9 || x > hi + 1e-9) continue;
    out.push_back(std::clamp(x, lo, hi));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-8; }),
            out.end());
  return out;
}

}  // namespace hpk
