#include "oracles.hpp"

#include <hpk/fubini_study.hpp>
#include <hpk/geometry.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using Catch::Approx;

namespace {

// assemble the base MetricJet from fs_jets so the curvature machinery can
// run on the base alone
hpk::MetricJet base_metric_jet(const Eigen::VectorXd& w) {
  const int m = static_cast<int>(w.size()) / 2;
  const int d = 2 * m;
  std::vector<hpk::Jet2> x(static_cast<size_t>(m)), y(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    x[static_cast<size_t>(i)] = hpk::Jet2::variable(w(2 * i), 2 * i, d);
    y[static_cast<size_t>(i)] = hpk::Jet2::variable(w(2 * i + 1), 2 * i + 1, d);
  }
  const hpk::FsJets fj = hpk::fs_jets(x, y);

  hpk::MetricJet mj;
  mj.dim = d;
  mj.g = Eigen::MatrixXd::Zero(d, d);
  mj.dg = hpk::Tensor3(d);
  mj.ddg = hpk::Tensor4(d);
  auto put = [&](int r, int c, const hpk::Jet2& e) {
    mj.g(r, c) = e.value();
    for (int k = 0; k < d; ++k) {
      mj.dg(r, c, k) = e.grad()[k];
      for (int l = 0; l < d; ++l) mj.ddg(r, c, k, l) = e.hess()(k, l);
    }
  };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const hpk::Jet2& s = fj.S[static_cast<size_t>(i) * m + j];
      const hpk::Jet2& a = fj.A[static_cast<size_t>(i) * m + j];
      put(2 * i, 2 * j, s);
      put(2 * i + 1, 2 * j + 1, s);
      put(2 * i, 2 * j + 1, a);
      put(2 * i + 1, 2 * j, -a);
    }
  return mj;
}

}  // namespace

TEST_CASE("base metric at the origin is euclidean") {
  const Eigen::VectorXd w = Eigen::VectorXd::Zero(4);
  const auto fs = hpk::fubini_study(w);
  CHECK((fs.metric - Eigen::MatrixXd::Identity(4, 4)).norm() <= 1e-15);
  const Eigen::MatrixXd J = hpk::fs_complex_structure(2);
  CHECK((fs.kahler_form - J.transpose()).norm() <= 1e-15);
  CHECK(hpk::connection_one_form(w).norm() <= 1e-15);
}

TEST_CASE("base metric structure at a generic point") {
  Eigen::VectorXd w(4);
  w << 0.3, -0.2, 0.5, 0.1;
  const auto fs = hpk::fubini_study(w);

  CHECK((fs.metric - fs.metric.transpose()).norm() <= 1e-15);
  Eigen::LLT<Eigen::MatrixXd> llt(fs.metric);
  CHECK(llt.info() == Eigen::Success);

  // hermitian structure: J is an isometry
  const Eigen::MatrixXd J = hpk::fs_complex_structure(2);
  CHECK((J.transpose() * fs.metric * J - fs.metric).norm() <= 1e-14);
  // the form is antisymmetric
  CHECK((fs.kahler_form + fs.kahler_form.transpose()).norm() <= 1e-14);
}

TEST_CASE("radial and tangential eigenvalues along a real axis point") {
  // at w = (r, 0, 0, 0): radial plane scales by 1/q^2, orthogonal complex
  // line by 1/q, mixed blocks vanish
  const double r = 0.8, q = 1.0 + r * r;
  Eigen::VectorXd w(4);
  w << r, 0.0, 0.0, 0.0;
  const auto fs = hpk::fubini_study(w);

  CHECK(fs.metric(0, 0) == Approx(1.0 / (q * q)).margin(1e-14));
  CHECK(fs.metric(1, 1) == Approx(1.0 / (q * q)).margin(1e-14));
  CHECK(fs.metric(2, 2) == Approx(1.0 / q).margin(1e-14));
  CHECK(fs.metric(3, 3) == Approx(1.0 / q).margin(1e-14));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(std::abs(fs.metric(i, j)) <= 1e-15);
}

TEST_CASE("unitary coordinate rotation is an isometry") {
  // w -> U w for a unitary mixing of the two complex coordinates, realized
  // as a real 4x4 matrix acting on (x1, y1, x2, y2)
  const double c = std::cos(0.7), s = std::sin(0.7);
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(4, 4);
  U(0, 0) = c; U(1, 1) = c;
  U(2, 2) = c; U(3, 3) = c;
  U(0, 2) = -s; U(1, 3) = -s;
  U(2, 0) = s; U(3, 1) = s;

  Eigen::VectorXd w(4);
  w << 0.25, -0.4, 0.1, 0.35;
  const Eigen::VectorXd uw = U * w;

  const Eigen::MatrixXd g_at_w = hpk::fubini_study(w).metric;
  const Eigen::MatrixXd g_at_uw = hpk::fubini_study(uw).metric;
  // pullback of the metric at Uw along the linear map U
  CHECK((U.transpose() * g_at_uw * U - g_at_w).norm() <= 1e-13);
}

TEST_CASE("connection form differentiates to twice the kahler form") {
  for (int m : {1, 2, 3}) {
    Eigen::VectorXd w(2 * m);
    for (int i = 0; i < 2 * m; ++i) w(i) = 0.17 * (i + 1) * (i % 2 ? -1.0 : 1.0);
    const Eigen::MatrixXd dA = oracle::fd_exterior_derivative(
        [](const Eigen::VectorXd& v) { return hpk::connection_one_form(v); }, w);
    const auto fs = hpk::fubini_study(w);
    INFO("m = " << m);
    CHECK((dA - 2.0 * fs.kahler_form).norm() <= 1e-9);
  }
}

TEST_CASE("jet derivatives of the base metric match finite differences") {
  Eigen::VectorXd w(4);
  w << 0.3, -0.2, 0.5, 0.1;
  const hpk::MetricJet mj = base_metric_jet(w);
  CHECK((mj.g - hpk::fubini_study(w).metric).norm() <= 1e-15);

  const double step = 1e-5;
  for (int k = 0; k < 4; ++k) {
    Eigen::VectorXd wp = w, wm = w;
    wp(k) += step;
    wm(k) -= step;
    const Eigen::MatrixXd fd =
        (hpk::fubini_study(wp).metric - hpk::fubini_study(wm).metric) / (2 * step);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(mj.dg(i, j, k) == Approx(fd(i, j)).margin(1e-9));
  }
}

TEST_CASE("projective line has constant curvature four") {
  // one complex dimension: Gauss curvature of the chart metric
  for (double r : {0.0, 0.4, 1.1}) {
    Eigen::VectorXd w(2);
    w << r, -0.3 * r;
    const hpk::MetricJet mj = base_metric_jet(w);
    const hpk::CurvatureTensor R = hpk::riemann_from_jet(mj);
    const double K = R.comp(0, 1, 1, 0) / mj.g.determinant();
    INFO("r = " << r);
    CHECK(K == Approx(4.0).margin(1e-11));
    CHECK(hpk::scalar_curvature_of(R) == Approx(8.0).margin(1e-10));
  }
}

TEST_CASE("projective plane chart has holomorphic curvature four in every direction") {
  Eigen::VectorXd w(4);
  w << 0.3, -0.2, 0.5, 0.1;
  const hpk::MetricJet mj = base_metric_jet(w);
  const hpk::CurvatureTensor R = hpk::riemann_from_jet(mj);
  const Eigen::MatrixXd J = hpk::fs_complex_structure(2);

  hpk::DetRng rng(42);
  for (int trial = 0; trial < 8; ++trial) {
    Eigen::VectorXd X(4);
    for (int i = 0; i < 4; ++i) X(i) = rng.symmetric();
    CHECK(hpk::holomorphic_sectional_curvature(R.comp, mj.g, J, X) == Approx(4.0).margin(1e-10));
  }
  CHECK(hpk::scalar_curvature_of(R) == Approx(24.0).margin(1e-9));
}
