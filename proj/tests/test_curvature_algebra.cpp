#include "oracles.hpp"

#include <hpk/curvature_algebra.hpp>
#include <hpk/rng.hpp>
#include <hpk/tensor.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using Catch::Approx;

namespace {

struct StdSetup {
  Eigen::MatrixXd g, J, pD, gD, omD;
};

StdSetup std_setup(int d, double metric_scale = 1.0) {
  StdSetup s;
  s.g = metric_scale * Eigen::MatrixXd::Identity(d, d);
  s.J = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < d / 2; ++k) {
    s.J(2 * k + 1, 2 * k) = 1.0;
    s.J(2 * k, 2 * k + 1) = -1.0;
  }
  s.pD = Eigen::MatrixXd::Zero(d, d);
  s.pD(0, 0) = s.pD(1, 1) = 1.0;
  s.gD = s.pD.transpose() * s.g * s.pD;
  s.omD = s.J.transpose() * s.gD;
  return s;
}

hpk::Tensor4 random_tensor(int d, std::uint64_t seed) {
  hpk::DetRng rng(seed);
  hpk::Tensor4 T(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) T(i, j, k, l) = rng.symmetric();
  return T;
}

double max_diff(const hpk::Tensor4& a, const hpk::Tensor4& b) {
  hpk::Tensor4 c = a;
  c -= b;
  return c.max_abs();
}

}  // namespace

TEST_CASE("model tensors match their brute force definitions") {
  for (int d : {4, 6}) {
    for (double scale : {1.0, 2.0}) {
      const StdSetup s = std_setup(d, scale);
      const oracle::ModelTensors ref(s.g, s.J, s.pD);
      INFO("d = " << d << " scale = " << scale);
      CHECK(max_diff(hpk::pi_tensor(s.g, s.J).comp, ref.pi_tensor()) <= 1e-14);
      CHECK(max_diff(hpk::phi_tensor(s.g, s.J, s.gD, s.omD).comp, ref.phi_tensor()) <= 1e-14);
      CHECK(max_diff(hpk::psi_tensor(s.omD, s.g).comp, ref.psi_tensor()) <= 1e-14);
    }
  }
}

TEST_CASE("model tensors satisfy all curvature symmetries") {
  for (int d : {4, 6}) {
    const StdSetup s = std_setup(d);
    for (const auto& T : {hpk::pi_tensor(s.g, s.J).comp,
                          hpk::phi_tensor(s.g, s.J, s.gD, s.omD).comp,
                          hpk::psi_tensor(s.omD, s.g).comp}) {
      CHECK(hpk::antisymmetry_first_pair(T) <= 1e-12);
      CHECK(hpk::antisymmetry_second_pair(T) <= 1e-12);
      CHECK(hpk::pair_interchange(T) <= 1e-12);
      CHECK(hpk::first_bianchi(T) <= 1e-12);
      CHECK(hpk::j_invariance_residual(T, s.J) <= 1e-12);
    }
  }
}

TEST_CASE("sectional values of the model tensors on distinguished planes") {
  const int d = 6;
  const StdSetup s = std_setup(d);
  const auto Pi = hpk::pi_tensor(s.g, s.J).comp;
  const auto Phi = hpk::phi_tensor(s.g, s.J, s.gD, s.omD).comp;
  const auto Psi = hpk::psi_tensor(s.omD, s.g).comp;

  // holomorphic planes: value follows the square of the projection onto the
  // distinguished plane; within it 1, orthogonal to it 0
  hpk::DetRng rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    Eigen::VectorXd X(d);
    for (int i = 0; i < d; ++i) X(i) = rng.symmetric();
    X /= X.norm();
    const double sproj = X(0) * X(0) + X(1) * X(1);
    CHECK(hpk::holomorphic_sectional_curvature(Pi, s.g, s.J, X) == Approx(1.0).margin(1e-12));
    CHECK(hpk::holomorphic_sectional_curvature(Phi, s.g, s.J, X) ==
          Approx(sproj).margin(1e-12));
    CHECK(hpk::holomorphic_sectional_curvature(Psi, s.g, s.J, X) ==
          Approx(sproj * sproj).margin(1e-12));
  }

  // totally real orthonormal plane (X, Y) with Y also orthogonal to JX
  Eigen::VectorXd X = Eigen::VectorXd::Zero(d), Y = Eigen::VectorXd::Zero(d);
  X(0) = 1.0;
  Y(2) = 1.0;
  double pi_xy = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          pi_xy += Pi(i, j, k, l) * X(i) * Y(j) * Y(k) * X(l);
  CHECK(pi_xy == Approx(0.25).margin(1e-14));
}

TEST_CASE("derivation action matches the definition based implementation") {
  const int d = 4;
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(d, d);
  g(0, 1) = g(1, 0) = 0.2;
  g(2, 3) = g(3, 2) = -0.1;
  g(3, 3) = 1.5;

  const hpk::Tensor4 T = random_tensor(d, 11);
  const hpk::Tensor4 S = random_tensor(d, 12);
  const hpk::CurvatureTensor CT{d, T, g};

  const hpk::Tensor6 got = hpk::derivation_action(CT, S).comp;
  const hpk::Tensor6 want = oracle::derivation_action(T, g, S);
  hpk::Tensor6 diff = got;
  diff -= want;
  CHECK(diff.max_abs() <= 1e-12);
  CHECK(got.max_abs() > 0.1);  // the comparison is not vacuous
}

TEST_CASE("symmetric model annihilates itself under the derivation action") {
  for (int d : {4, 6}) {
    const StdSetup s = std_setup(d);
    const auto Pi = hpk::pi_tensor(s.g, s.J);
    CHECK(hpk::derivation_action(Pi, Pi.comp).comp.max_abs() <= 1e-13);
  }
}

TEST_CASE("pseudosymmetry residual on constructed examples") {
  const int d = 4;
  const StdSetup s = std_setup(d);
  const auto Pi = hpk::pi_tensor(s.g, s.J);

  // R proportional to the model: both derivations vanish, residuals sit at 0
  hpk::CurvatureTensor R{d, Pi.comp, s.g};
  R.comp *= 4.0;
  const auto res = hpk::hp_residual(R, Pi, 17.0);
  CHECK(res.norm_rr <= 1e-13);
  CHECK(res.norm_pir <= 1e-13);
  CHECK(res.absolute <= 1e-12);
  CHECK(res.relative <= 1e-6);  // numerator and scale both collapse to the floor

  // detuned phi leaves exactly (phi_true - phi) Pi.R; build R with a
  // nontrivial derivation by mixing in Psi
  const auto Psi = hpk::psi_tensor(s.omD, s.g);
  hpk::CurvatureTensor mixed{d, Pi.comp + Psi.comp, s.g};
  const auto self = hpk::derivation_action(mixed, mixed.comp);
  const auto by_pi = hpk::derivation_action(Pi, mixed.comp);
  CHECK(by_pi.comp.max_abs() > 0.1);
  // solve for the scalar that best explains the self action, then check the
  // residual the library reports against the same quantity at that scalar
  double num = 0.0, den = 0.0;
  const auto& a = self.comp.data();
  const auto& b = by_pi.comp.data();
  for (size_t i = 0; i < a.size(); ++i) {
    num += a[i] * b[i];
    den += b[i] * b[i];
  }
  const double lam = num / den;
  const auto at_lam = hpk::hp_residual(mixed, Pi, lam);
  hpk::Tensor6 scaled = by_pi.comp;
  scaled *= lam;
  hpk::Tensor6 gap = self.comp;
  gap -= scaled;
  CHECK(at_lam.absolute == Approx(gap.max_abs()).margin(1e-13));
}

TEST_CASE("decomposition fit recovers planted coefficients") {
  for (int d : {4, 6}) {
    const StdSetup s = std_setup(d);
    const auto Pi = hpk::pi_tensor(s.g, s.J).comp;
    const auto Phi = hpk::phi_tensor(s.g, s.J, s.gD, s.omD).comp;
    const auto Psi = hpk::psi_tensor(s.omD, s.g).comp;

    hpk::Tensor4 R = Pi;
    R *= 2.0;
    {
      hpk::Tensor4 t = Phi;
      t *= 0.3;
      R += t;
      t = Psi;
      t *= -0.1;
      R += t;
    }

    const auto fit = hpk::qch_fit(R, Pi, Phi, Psi);
    INFO("d = " << d);
    CHECK(fit.a == Approx(2.0).margin(1e-12));
    CHECK(fit.b == Approx(0.3).margin(1e-12));
    CHECK(fit.c == Approx(-0.1).margin(1e-12));
    CHECK(fit.residual <= 1e-13);
    CHECK(fit.gram_condition < 1e4);

    // a perturbation orthogonal to nothing in particular must show up
    hpk::Tensor4 noisy = R;
    noisy(0, 2, 1, 3) += 1e-3;
    const auto fit2 = hpk::qch_fit(noisy, Pi, Phi, Psi);
    CHECK(fit2.residual > 1e-5);
  }
}

TEST_CASE("decomposition fit rejects a degenerate model set") {
  const int d = 4;
  const StdSetup s = std_setup(d);
  const auto Pi = hpk::pi_tensor(s.g, s.J).comp;
  const auto Phi = hpk::phi_tensor(s.g, s.J, s.gD, s.omD).comp;
  CHECK_THROWS(hpk::qch_fit(Pi, Pi, Phi, Pi));
}

TEST_CASE("sectional law probe accepts a planted law and flags violations") {
  const int d = 6;
  const StdSetup s = std_setup(d);
  const auto Pi = hpk::pi_tensor(s.g, s.J).comp;
  const auto Phi = hpk::phi_tensor(s.g, s.J, s.gD, s.omD).comp;
  const auto Psi = hpk::psi_tensor(s.omD, s.g).comp;

  hpk::Tensor4 R = Pi;
  R *= 1.7;
  {
    hpk::Tensor4 t = Phi;
    t *= -0.4;
    R += t;
    t = Psi;
    t *= 0.9;
    R += t;
  }

  const auto probe = hpk::probe_qch_law(R, s.g, s.J, s.pD, 1.7, -0.4, 0.9, 99, 32);
  CHECK(probe.directions == 32);
  CHECK(probe.max_dev <= 1e-12);

  // same tensor, wrong coefficients
  const auto off = hpk::probe_qch_law(R, s.g, s.J, s.pD, 1.7, -0.4, 0.0, 99, 32);
  CHECK(off.max_dev > 0.1);

  // determinism
  const auto again = hpk::probe_qch_law(R, s.g, s.J, s.pD, 1.7, -0.4, 0.9, 99, 32);
  CHECK(again.max_dev == probe.max_dev);
}

TEST_CASE("holomorphic sectional curvature is scale invariant") {
  const int d = 4;
  const StdSetup s = std_setup(d);
  const auto Pi = hpk::pi_tensor(s.g, s.J).comp;
  Eigen::VectorXd X(d);
  X << 0.3, -1.2, 0.4, 0.9;
  const double k1 = hpk::holomorphic_sectional_curvature(Pi, s.g, s.J, X);
  const double k2 = hpk::holomorphic_sectional_curvature(Pi, s.g, s.J, (2.5 * X).eval());
  CHECK(k1 == Approx(k2).margin(1e-13));
  CHECK(k1 == Approx(1.0).margin(1e-13));
}
