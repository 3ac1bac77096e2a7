#pragma once

// Fubini-Study geometry on the affine chart of complex projective space,
// normalized to holomorphic sectional curvature 4 (Kaehler potential
// log(1 + |w|^2)). Everything is expressed through real coordinates
// (x_1, y_1, ..., x_m, y_m), w_k = x_k + i y_k, and computed on jets so the
// ambient-metric assembly inherits exact derivatives.
//
// With q = 1 + |w|^2 the Hermitian metric is H_jk = delta_jk / q
// - conj(w_j) w_k / q^2, whose real and imaginary parts S and A give the real
// metric blocks  g(dx_j, dx_k) = g(dy_j, dy_k) = S_jk,  g(dx_j, dy_k) = A_jk.
// The standard connection 1-form of the circle bundle in this trivialization
// is A = (x_k dy_k - y_k dx_k) / q, with dA = 2 omega.

#include <hpk/jet.hpp>

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace hpk {

struct FsJets {
  int m = 0;                 // complex base dimension
  std::vector<Jet2> S;       // m*m, row-major: Re H
  std::vector<Jet2> A;       // m*m, row-major: Im H (antisymmetric)
  std::vector<Jet2> conn;    // 2m, components of the connection form on (dx_1, dy_1, ...)
};

// x[i], y[i] are jet-valued chart coordinates (caller chooses the variable space)
inline FsJets fs_jets(const std::vector<Jet2>& x, const std::vector<Jet2>& y) {
  const int m = static_cast<int>(x.size());
  if (y.size() != x.size()) throw std::invalid_argument("fs_jets: size mismatch");
  const int nv = x.empty() ? 0 : x[0].nvars();

  Jet2 q = Jet2::constant(1.0, nv);
  for (int i = 0; i < m; ++i) q += x[i] * x[i] + y[i] * y[i];
  const Jet2 iq = q.inverse();
  const Jet2 iq2 = iq * iq;

  FsJets out;
  out.m = m;
  out.S.assign(static_cast<size_t>(m) * m, Jet2::constant(0.0, nv));
  out.A.assign(static_cast<size_t>(m) * m, Jet2::constant(0.0, nv));
  out.conn.assign(static_cast<size_t>(2 * m), Jet2::constant(0.0, nv));

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      Jet2 s = (x[i] * x[j] + y[i] * y[j]) * iq2;
      if (i == j) s = iq - s;
      else s = -s;
      out.S[static_cast<size_t>(i) * m + j] = s;
      out.A[static_cast<size_t>(i) * m + j] = (y[i] * x[j] - x[i] * y[j]) * iq2;
    }
  }
  for (int j = 0; j < m; ++j) {
    out.conn[static_cast<size_t>(2 * j)] = -y[j] * iq;
    out.conn[static_cast<size_t>(2 * j + 1)] = x[j] * iq;
  }
  return out;
}

struct FubiniStudy {
  Eigen::MatrixXd metric;       // 2m x 2m, coordinate order (x_1, y_1, ...)
  Eigen::MatrixXd kahler_form;  // omega(U, V) = g(JU, V)
};

// constant matrix of the complex structure on the chart: J dx_k = dy_k
inline Eigen::MatrixXd fs_complex_structure(int m) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  for (int k = 0; k < m; ++k) {
    J(2 * k + 1, 2 * k) = 1.0;
    J(2 * k, 2 * k + 1) = -1.0;
  }
  return J;
}

// w holds 2m reals interleaved (x_1, y_1, x_2, y_2, ...)
inline FubiniStudy fubini_study(const Eigen::VectorXd& w) {
  if (w.size() % 2 != 0) throw std::invalid_argument("fubini_study: odd coordinate count");
  const int m = static_cast<int>(w.size()) / 2;
  std::vector<Jet2> x(static_cast<size_t>(m)), y(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    x[static_cast<size_t>(i)] = Jet2::constant(w(2 * i), 0);
    y[static_cast<size_t>(i)] = Jet2::constant(w(2 * i + 1), 0);
  }
  const FsJets fj = fs_jets(x, y);

  FubiniStudy out;
  out.metric = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double s = fj.S[static_cast<size_t>(i) * m + j].value();
      const double a = fj.A[static_cast<size_t>(i) * m + j].value();
      out.metric(2 * i, 2 * j) = s;
      out.metric(2 * i + 1, 2 * j + 1) = s;
      out.metric(2 * i, 2 * j + 1) = a;
      out.metric(2 * i + 1, 2 * j) = -a;
    }
  }
  const Eigen::MatrixXd J = fs_complex_structure(m);
  out.kahler_form = J.transpose() * out.metric;
  return out;
}

// connection form components on (dx_1, dy_1, ...) at w
inline Eigen::VectorXd connection_one_form(const Eigen::VectorXd& w) {
  if (w.size() % 2 != 0) throw std::invalid_argument("connection_one_form: odd coordinate count");
  const int m = static_cast<int>(w.size()) / 2;
  double q = 1.0;
  for (int i = 0; i < 2 * m; ++i) q += w(i) * w(i);
  Eigen::VectorXd a(2 * m);
  for (int j = 0; j < m; ++j) {
    a(2 * j) = -w(2 * j + 1) / q;
    a(2 * j + 1) = w(2 * j) / q;
  }
  return a;
}

}  // namespace hpk
