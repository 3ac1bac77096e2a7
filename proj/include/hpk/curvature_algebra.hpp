#pragma once

// Pointwise algebra of curvature-type tensors: the constant-holomorphic-
// sectional-curvature model Pi, the two correction tensors Phi and Psi built
// from a J-invariant 2-plane distribution, the derivation action T.S, the
// pseudosymmetry residual, and least-squares decomposition of a curvature
// tensor over (Pi, Phi, Psi). Everything here is linear algebra at a single
// point; no geometry enters except through the supplied matrices.
//
// Conventions: R(i,j,k,l) = g(R(e_i,e_j)e_k, e_l); Omega(X,Y) = g(JX,Y);
// for a distribution projector p: gD(X,Y) = g(pX,pY), omegaD(X,Y) = gD(JX,Y).

#include <hpk/rng.hpp>
#include <hpk/tensor.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace hpk {

struct CurvatureTensor {
  int dim = 0;
  Tensor4 comp;
  Eigen::MatrixXd metric;
};

inline Eigen::MatrixXd kahler_form_of(const Eigen::MatrixXd& g, const Eigen::MatrixXd& J) {
  return J.transpose() * g;
}

// curvature tensor of constant holomorphic sectional curvature 1, up to the
// conventional factor 1/4
inline CurvatureTensor pi_tensor(const Eigen::MatrixXd& g, const Eigen::MatrixXd& J) {
  const int d = static_cast<int>(g.rows());
  const Eigen::MatrixXd Om = kahler_form_of(g, J);
  CurvatureTensor T{d, Tensor4(d), g};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          T.comp(i, j, k, l) = 0.25 * (g(j, k) * g(i, l) - g(i, k) * g(j, l) +
                                       Om(j, k) * Om(i, l) - Om(i, k) * Om(j, l) -
                                       2.0 * Om(i, j) * Om(k, l));
  return T;
}

// mixed term built from the distribution metric gD and its form omegaD
inline CurvatureTensor phi_tensor(const Eigen::MatrixXd& g, const Eigen::MatrixXd& J,
                                  const Eigen::MatrixXd& gD, const Eigen::MatrixXd& omegaD) {
  const int d = static_cast<int>(g.rows());
  const Eigen::MatrixXd Om = kahler_form_of(g, J);
  CurvatureTensor T{d, Tensor4(d), g};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          T.comp(i, j, k, l) =
              0.125 * (g(j, k) * gD(i, l) - g(i, k) * gD(j, l) + g(i, l) * gD(j, k) -
                       g(j, l) * gD(i, k) + Om(j, k) * omegaD(i, l) - Om(i, k) * omegaD(j, l) +
                       Om(i, l) * omegaD(j, k) - Om(j, l) * omegaD(i, k) -
                       2.0 * Om(i, j) * omegaD(k, l) - 2.0 * omegaD(i, j) * Om(k, l));
  return T;
}

inline CurvatureTensor psi_tensor(const Eigen::MatrixXd& omegaD, const Eigen::MatrixXd& g) {
  const int d = static_cast<int>(omegaD.rows());
  CurvatureTensor T{d, Tensor4(d), g};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) T.comp(i, j, k, l) = -omegaD(i, j) * omegaD(k, l);
  return T;
}

inline CurvatureTensor psi_tensor(const Eigen::MatrixXd& omegaD) {
  return psi_tensor(omegaD, Eigen::MatrixXd::Identity(omegaD.rows(), omegaD.cols()));
}

struct DerivedSixTensor {
  int dim = 0;
  Tensor6 comp;  // indices (x, y, z1, z2, z3, z4)
};

// (T.S)(z1..z4; x, y) = -sum_i S(z1, .., T(x,y) z_i, .., z4), with T(x,y)
// acting as the endomorphism g^{-1} T(x, y, ., .)
inline DerivedSixTensor derivation_action(const CurvatureTensor& T, const Tensor4& S) {
  const int d = T.dim;
  if (S.dim() != d) throw std::invalid_argument("derivation_action: dimension mismatch");
  const Eigen::MatrixXd ginv = T.metric.inverse();

  DerivedSixTensor out{d, Tensor6(d)};
  Eigen::MatrixXd M(d, d), E(d, d);
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) {
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) M(k, l) = T.comp(x, y, k, l);
      E = ginv * M.transpose();  // E(m, k) = g^{ml} T(x, y, k, l)
      for (int z1 = 0; z1 < d; ++z1)
        for (int z2 = 0; z2 < d; ++z2)
          for (int z3 = 0; z3 < d; ++z3)
            for (int z4 = 0; z4 < d; ++z4) {
              double acc = 0.0;
              for (int m = 0; m < d; ++m) {
                acc += S(m, z2, z3, z4) * E(m, z1);
                acc += S(z1, m, z3, z4) * E(m, z2);
                acc += S(z1, z2, m, z4) * E(m, z3);
                acc += S(z1, z2, z3, m) * E(m, z4);
              }
              out.comp(x, y, z1, z2, z3, z4) = -acc;
            }
    }
  }
  return out;
}

struct HpResidual {
  double relative = 0.0;  // |R.R - phi Pi.R| / max(|R.R|, |Pi.R|, floor)
  double absolute = 0.0;  // |R.R - phi Pi.R| in max norm
  double norm_rr = 0.0;
  double norm_pir = 0.0;
  double floor = 0.0;
};

inline HpResidual hp_residual(const CurvatureTensor& R, const CurvatureTensor& Pi, double phi,
                              double floor_scale = 1e-14) {
  const DerivedSixTensor RR = derivation_action(R, R.comp);
  const DerivedSixTensor PiR = derivation_action(Pi, R.comp);
  HpResidual res;
  res.norm_rr = RR.comp.max_abs();
  res.norm_pir = PiR.comp.max_abs();
  res.floor = floor_scale * static_cast<double>(R.dim) * static_cast<double>(R.dim);
  Tensor6 N = RR.comp;
  Tensor6 scaled = PiR.comp;
  scaled *= phi;
  N -= scaled;
  res.absolute = N.max_abs();
  res.relative = res.absolute / std::max({res.norm_rr, res.norm_pir, res.floor});
  return res;
}

struct QchFit {
  double a = 0.0, b = 0.0, c = 0.0;
  double residual = 0.0;        // |R - a Pi - b Phi - c Psi|_F / |R|_F
  double residual_max = 0.0;    // same numerator in max norm
  double gram_condition = 0.0;
};

// least squares over span(Pi, Phi, Psi) in the componentwise Frobenius inner
// product; meaningful when the components are taken in a g-orthonormal frame
inline QchFit qch_fit(const Tensor4& R, const Tensor4& Pi, const Tensor4& Phi,
                      const Tensor4& Psi, double cond_limit = 1e12) {
  Eigen::Matrix3d G;
  G << Pi.dot(Pi), Pi.dot(Phi), Pi.dot(Psi),
       Phi.dot(Pi), Phi.dot(Phi), Phi.dot(Psi),
       Psi.dot(Pi), Psi.dot(Phi), Psi.dot(Psi);
  Eigen::Vector3d rhs(Pi.dot(R), Phi.dot(R), Psi.dot(R));

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(G);
  const double emin = es.eigenvalues()(0);
  const double emax = es.eigenvalues()(2);
  QchFit fit;
  fit.gram_condition = (emin > 0.0) ? emax / emin : std::numeric_limits<double>::infinity();
  if (!(fit.gram_condition < cond_limit))
    throw std::runtime_error("qch_fit: near-singular Gram matrix, condition " +
                             std::to_string(fit.gram_condition));
  const Eigen::Vector3d sol = es.eigenvectors() *
                              (es.eigenvectors().transpose() * rhs).cwiseQuotient(
                                  es.eigenvalues());
  fit.a = sol(0);
  fit.b = sol(1);
  fit.c = sol(2);

  Tensor4 res = R;
  Tensor4 tmp = Pi;
  tmp *= fit.a;
  res -= tmp;
  tmp = Phi;
  tmp *= fit.b;
  res -= tmp;
  tmp = Psi;
  tmp *= fit.c;
  res -= tmp;
  const double rf = R.frobenius();
  fit.residual = (rf > 0.0) ? res.frobenius() / rf : res.frobenius();
  fit.residual_max = res.max_abs();
  return fit;
}

inline double holomorphic_sectional_curvature(const Tensor4& R, const Eigen::MatrixXd& g,
                                              const Eigen::MatrixXd& J,
                                              const Eigen::VectorXd& X) {
  const int d = static_cast<int>(g.rows());
  const Eigen::VectorXd JX = J * X;
  double num = 0.0;
  for (int i = 0; i < d; ++i) {
    if (X(i) == 0.0) continue;
    for (int j = 0; j < d; ++j) {
      if (JX(j) == 0.0) continue;
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) num += R(i, j, k, l) * X(i) * JX(j) * JX(k) * X(l);
    }
  }
  const double n2 = X.dot(g * X);
  return num / (n2 * n2);
}

struct QchProbe {
  double max_dev = 0.0;
  int directions = 0;
};

// samples holomorphic sectional curvature along random directions and checks
// K(X) = a + b s + c s^2 with s the squared D-fraction of X; a few directions
// are forced into D and into its orthogonal complement
inline QchProbe probe_qch_law(const Tensor4& R, const Eigen::MatrixXd& g,
                              const Eigen::MatrixXd& J, const Eigen::MatrixXd& pD, double a,
                              double b, double c, std::uint64_t seed, int directions = 32) {
  const int d = static_cast<int>(g.rows());
  DetRng rng(seed);
  QchProbe probe;
  probe.directions = directions;
  Eigen::VectorXd X(d);
  for (int it = 0; it < directions; ++it) {
    for (int tries = 0;; ++tries) {
      for (int i = 0; i < d; ++i) X(i) = rng.symmetric();
      if (it < 4) X = pD * X;                                          // inside D
      else if (it < 8) X = X - pD * X;                                 // orthogonal to D
      const double n2 = X.dot(g * X);
      if (n2 > 1e-6) {
        X /= std::sqrt(n2);
        break;
      }
      if (tries > 100) throw std::runtime_error("probe_qch_law: degenerate sampling");
    }
    const double n2 = X.dot(g * X);
    const Eigen::VectorXd pX = pD * X;
    const double s = pX.dot(g * pX) / n2;
    const double K = holomorphic_sectional_curvature(R, g, J, X);
    const double model = a + b * s + c * s * s;
    probe.max_dev = std::max(probe.max_dev, std::abs(K - model));
  }
  return probe;
}

}  // namespace hpk
