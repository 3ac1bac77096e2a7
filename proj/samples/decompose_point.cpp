// Minimal library walkthrough: solve one profile, build the geometry, and
// decompose the curvature tensor at a single chart point.

#include <hpk/geometry.hpp>
#include <hpk/verifier.hpp>

#include <cstdio>

int main() {
  const double alpha = 0.5;
  const int n = 2;

  hpk::ProfileSolution sol(hpk::Profile::from_alpha(alpha));
  hpk::Geometry geo = hpk::Geometry::calibrated(sol, n);

  hpk::ChartPoint pt;
  pt.t = 0.5 * sol.L();
  pt.psi = 0.3;
  pt.w = Eigen::VectorXd::Zero(2 * (n - 1));
  pt.w(0) = 0.2;
  pt.w(1) = -0.1;

  const hpk::PointData pd = geo.analyze(pt);
  const int d = geo.dim();

  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd Jstd = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < d / 2; ++k) {
    Jstd(2 * k + 1, 2 * k) = 1.0;
    Jstd(2 * k, 2 * k + 1) = -1.0;
  }
  Eigen::MatrixXd pD = Eigen::MatrixXd::Zero(d, d);
  pD(0, 0) = pD(1, 1) = 1.0;
  const Eigen::MatrixXd omD = Jstd.transpose() * pD;

  const hpk::CurvatureTensor Pi = hpk::pi_tensor(I, Jstd);
  const hpk::CurvatureTensor Phi = hpk::phi_tensor(I, Jstd, pD, omD);
  const hpk::CurvatureTensor Psi = hpk::psi_tensor(omD, I);
  const hpk::QchFit fit = hpk::qch_fit(pd.riemann_frame, Pi.comp, Phi.comp, Psi.comp);

  const double phi = sol.phi(pt.t);
  const hpk::CurvatureTensor RF{d, pd.riemann_frame, I};
  const hpk::HpResidual hp = hpk::hp_residual(RF, Pi, phi);

  std::printf("alpha=%.2f n=%d  L=%.12f  t=%.12f\n", alpha, n, sol.L(), pt.t);
  std::printf("R = a Pi + b Phi + c Psi:  a=%.9f b=%.9f c=%.9f  (fit residual %.2e)\n",
              fit.a, fit.b, fit.c, fit.residual);
  std::printf("phi=%.9f   a + b/2 - phi = %.2e\n", phi, fit.a + 0.5 * fit.b - phi);
  std::printf("pseudosymmetry residual: %.2e   |nabla J| = %.2e\n", hp.relative,
              pd.nabla_j_frame);
  std::printf("scalar curvature: %.9f\n", pd.scalar);
  return 0;
}
