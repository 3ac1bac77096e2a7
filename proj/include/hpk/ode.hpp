#pragma once

// Adaptive Dormand-Prince 5(4) integration for small fixed-size systems,
// plus a Brent-style scalar root bracketer used for event location.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace hpk {

struct OdeOptions {
  double rtol = 1e-12;
  double atol = 1e-12;
  double max_step = 0.1;
  double first_step = 1e-3;
  long max_steps = 2000000;
};

class OdeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

template <std::size_t N>
struct OdeNode {
  double t;
  std::array<double, N> y;
};

// Integrates y' = f(t, y) from t0 toward t_end. After each accepted step the
// stop predicate sees (previous node, new node); returning true halts with the
// new node included. Tableau: Dormand & Prince RK5(4)7M, FSAL.
template <std::size_t N, class Rhs, class Stop>
std::vector<OdeNode<N>> integrate_dp54(Rhs&& f, double t0, std::array<double, N> y0,
                                       double t_end, const OdeOptions& opt, Stop&& stop) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  using State = std::array<double, N>;
  const double dir = (t_end >= t0) ? 1.0 : -1.0;
  const double span = std::abs(t_end - t0);
  if (span == 0.0) return {{t0, y0}};

  std::vector<OdeNode<N>> nodes;
  nodes.push_back({t0, y0});

  double t = t0;
  State y = y0;
  State k1 = f(t, y);
  double h = dir * std::min({opt.first_step, opt.max_step, span});

  auto axpy = [](State& r, const State& base, double s, const State& v) {
    for (std::size_t i = 0; i < N; ++i) r[i] = base[i] + s * v[i];
  };
  (void)axpy;

  for (long step = 0; step < opt.max_steps; ++step) {
    if (dir * (t - t_end) >= 0.0) return nodes;
    if (dir * (t + h - t_end) > 0.0) h = t_end - t;

    State ytmp, k2, k3, k4, k5, k6, k7, y5;
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    k2 = f(t + c2 * h, ytmp);
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = f(t + c3 * h, ytmp);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = f(t + c4 * h, ytmp);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = f(t + c5 * h, ytmp);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    k6 = f(t + h, ytmp);
    for (std::size_t i = 0; i < N; ++i)
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    k7 = f(t + h, y5);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                             e7 * k7[i]);
      const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(ei) / sc);
    }

    if (err <= 1.0) {
      const OdeNode<N> prev{t, y};
      t += h;
      y = y5;
      k1 = k7;
      nodes.push_back({t, y});
      if (stop(prev, nodes.back())) return nodes;
    }

    double fac = 0.9 * std::pow(std::max(err, 1e-16), -0.2);
    fac = std::min(5.0, std::max(0.2, fac));
    h *= fac;
    if (std::abs(h) > opt.max_step) h = dir * opt.max_step;
    if (std::abs(h) < 1e-15 * (1.0 + std::abs(t)))
      throw OdeError("integrate_dp54: step size underflow");
  }
  throw OdeError("integrate_dp54: max step count exceeded");
}

// Brent's method on [a, b] with f(a), f(b) of opposite sign.
template <class F>
double brent_root(F&& f, double a, double b, double xtol = 1e-15, int max_iter = 200) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw std::invalid_argument("brent_root: endpoints do not bracket");
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * 1e-16 * std::abs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return b;
    if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
      d = m; e = m;
    } else {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q; else p = -p;
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d; d = p / q;
      } else {
        d = m; e = m;
      }
    }
    a = b; fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0 ? tol : -tol);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a; fc = fa; d = b - a; e = d;
    }
  }
  return b;
}

}  // namespace hpk
