#pragma once

// Chart-level geometry of the cohomogeneity-one metric
//   g = dt^2 + f(t)^2 theta x theta + h(t)^2 gFS,   f = h h',
// on coordinates (t, psi, x_1, y_1, ..., x_{n-1}, y_{n-1}), where theta =
// dpsi + A is the circle connection over the Fubini-Study base. The complex
// structure rotates dt into the fiber direction (sign eps, calibrated
// numerically) and lifts the base complex structure horizontally.
//
// All metric and J components are assembled on second-order jets, so
// Christoffel symbols and their first derivatives, hence the full curvature
// tensor, come out with AD accuracy rather than finite differences.
//
// Curvature sign convention: R(i,j,k,l) = g(R(e_i,e_j)e_k, e_l) with
// R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]; the round sphere has positive
// sectional curvature.

#include <hpk/curvature_algebra.hpp>
#include <hpk/fubini_study.hpp>
#include <hpk/jet.hpp>
#include <hpk/profile_solution.hpp>
#include <hpk/tensor.hpp>

#include <Eigen/Dense>

#include <json.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace hpk {

struct ChartPoint {
  double t = 0.0;
  double psi = 0.0;
  Eigen::VectorXd w;  // 2(n-1) reals, interleaved (x_1, y_1, ...)
};

struct MetricJet {
  int dim = 0;
  Eigen::MatrixXd g;
  Tensor3 dg;   // dg(i,j,k)    = d_k g_ij
  Tensor4 ddg;  // ddg(i,j,k,l) = d_k d_l g_ij

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["dim"] = dim;
    std::vector<double> gflat(static_cast<size_t>(dim) * dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) gflat[static_cast<size_t>(r) * dim + c] = g(r, c);
    j["g"] = {{"shape", {dim, dim}}, {"data", gflat}};
    j["dg"] = {{"shape", {dim, dim, dim}}, {"data", dg.data()}};
    j["ddg"] = {{"shape", {dim, dim, dim, dim}}, {"data", ddg.data()}};
    return j;
  }
};

struct ComplexStructure {
  Eigen::MatrixXd J;  // J(r, c) = component r of J e_c
  Tensor3 dJ;         // dJ(r, c, k) = d_k J^r_c
};

inline Tensor3 christoffels(const MetricJet& mj) {
  const int d = mj.dim;
  const Eigen::MatrixXd ginv = mj.g.inverse();
  Tensor3 G(d);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int l = 0; l < d; ++l)
          s += ginv(k, l) * (mj.dg(j, l, i) + mj.dg(i, l, j) - mj.dg(i, j, l));
        G(k, i, j) = 0.5 * s;
      }
  return G;
}

// dG(k, i, j, m) = d_m Gamma^k_ij
inline Tensor4 christoffel_derivatives(const MetricJet& mj) {
  const int d = mj.dim;
  const Eigen::MatrixXd ginv = mj.g.inverse();
  Tensor4 dG(d);
  for (int m = 0; m < d; ++m) {
    // d_m g^{kl} = -g^{ka} (d_m g_ab) g^{bl}
    Eigen::MatrixXd dgm(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) dgm(a, b) = mj.dg(a, b, m);
    const Eigen::MatrixXd dginv = -ginv * dgm * ginv;
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          double s = 0.0;
          for (int l = 0; l < d; ++l) {
            s += dginv(k, l) * (mj.dg(j, l, i) + mj.dg(i, l, j) - mj.dg(i, j, l));
            s += ginv(k, l) * (mj.ddg(j, l, i, m) + mj.ddg(i, l, j, m) - mj.ddg(i, j, l, m));
          }
          dG(k, i, j, m) = 0.5 * s;
        }
  }
  return dG;
}

inline CurvatureTensor riemann_from_jet(const MetricJet& mj) {
  const int d = mj.dim;
  const Tensor3 G = christoffels(mj);
  const Tensor4 dG = christoffel_derivatives(mj);
  Tensor4 up(d);  // up(l, i, j, k): component l of R(e_i, e_j) e_k
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          double s = dG(l, j, k, i) - dG(l, i, k, j);
          for (int m = 0; m < d; ++m) s += G(m, j, k) * G(l, i, m) - G(m, i, k) * G(l, j, m);
          up(l, i, j, k) = s;
        }
  CurvatureTensor R{d, Tensor4(d), mj.g};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = 0.0;
          for (int m = 0; m < d; ++m) s += mj.g(l, m) * up(m, i, j, k);
          R.comp(i, j, k, l) = s;
        }
  return R;
}

inline double scalar_curvature_of(const CurvatureTensor& R) {
  const int d = R.dim;
  const Eigen::MatrixXd ginv = R.metric.inverse();
  double s = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) s += ginv(i, l) * ginv(j, k) * R.comp(i, j, k, l);
  return s;
}

struct CalibrationInfo {
  int epsilon = 1;
  double nabla_j_plus = 0.0;   // probe norm with eps = +1
  double nabla_j_minus = 0.0;  // probe norm with eps = -1
};

// one-pass bundle of everything the verifier needs at a chart point
struct PointData {
  MetricJet jet;
  Eigen::MatrixXd J;
  Tensor3 dJ;
  CurvatureTensor riemann;       // coordinate components
  Eigen::MatrixXd frame;         // columns: J-adapted orthonormal frame, e_{2k+1} = J e_{2k}
  Tensor4 riemann_frame;
  double nabla_j_frame = 0.0;    // max |(nabla J)| in frame components
  double d_omega_frame = 0.0;    // max |dOmega| in frame components
  double killing = 0.0;          // max |d_psi g_ij|
  double killing_j = 0.0;        // max |d_psi J^r_c|
  double frame_j_deviation = 0.0;  // max |E^{-1} J E - J_std|
  double scalar = 0.0;
};

class Geometry {
public:
  Geometry(const ProfileSolution& sol, int n, int epsilon, double margin = 0.05)
      : sol_(&sol), n_(n), eps_(epsilon), margin_(margin) {
    if (n < 2) throw std::invalid_argument("Geometry: need n >= 2");
    if (epsilon != 1 && epsilon != -1) throw std::invalid_argument("Geometry: eps must be +-1");
    calib_.epsilon = epsilon;
  }

  // picks the complex-structure sign by probing |nabla J| at an interior point
  static Geometry calibrated(const ProfileSolution& sol, int n, double margin = 0.05) {
    ChartPoint probe;
    probe.t = 0.4 * sol.L();
    probe.psi = 0.7;
    probe.w = Eigen::VectorXd::Zero(2 * (n - 1));
    for (int i = 0; i < probe.w.size(); ++i) probe.w(i) = 0.15 + 0.07 * i;

    Geometry plus(sol, n, +1, margin), minus(sol, n, -1, margin);
    const double np = plus.nabla_j_probe(probe);
    const double nm = minus.nabla_j_probe(probe);
    Geometry out = (np <= nm) ? plus : minus;
    out.calib_.nabla_j_plus = np;
    out.calib_.nabla_j_minus = nm;
    return out;
  }

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  int epsilon() const { return eps_; }
  double margin() const { return margin_; }
  const CalibrationInfo& calibration() const { return calib_; }
  const ProfileSolution& solution() const { return *sol_; }

  void check_interior(const ChartPoint& pt) const {
    const double L = sol_->L();
    if (pt.t < margin_ * L - 1e-12 || pt.t > (1.0 - margin_) * L + 1e-12)
      throw std::domain_error("Geometry: t outside the interior sampling band");
    if (pt.w.size() != 2 * (n_ - 1))
      throw std::invalid_argument("Geometry: wrong base coordinate count");
  }

  MetricJet metric_jet(const ChartPoint& pt) const {
    check_interior(pt);
    const JetPack jp = assemble(pt);
    MetricJet mj = extract_metric(jp);
    Eigen::LLT<Eigen::MatrixXd> llt(mj.g);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("Geometry: metric not positive definite");
    return mj;
  }

  ComplexStructure complex_structure(const ChartPoint& pt) const {
    check_interior(pt);
    const JetPack jp = assemble(pt);
    ComplexStructure cs;
    cs.J = jet_values(jp.J);
    cs.dJ = jet_grads(jp.J);
    return cs;
  }

  CurvatureTensor riemann(const ChartPoint& pt) const { return riemann_from_jet(metric_jet(pt)); }

  double scalar_curvature(const ChartPoint& pt) const {
    return scalar_curvature_of(riemann(pt));
  }

  // coordinate components N(k, a, b) = (nabla_a J)^k_b
  Tensor3 nabla_j(const ChartPoint& pt) const {
    check_interior(pt);
    const JetPack jp = assemble(pt);
    const MetricJet mj = extract_metric(jp);
    const Eigen::MatrixXd J = jet_values(jp.J);
    const Tensor3 dJ = jet_grads(jp.J);
    return nabla_j_impl(mj, J, dJ);
  }

  Eigen::MatrixXd adapted_frame(const ChartPoint& pt) const {
    check_interior(pt);
    const JetPack jp = assemble(pt);
    return build_frame(jet_values(jp.g, dim()), jet_values(jp.J));
  }

  // coordinate matrix of the orthogonal projector onto D = span(d_t, J d_t)
  Eigen::MatrixXd distribution_projector(const ChartPoint& pt) const {
    const Eigen::MatrixXd E = adapted_frame(pt);
    Eigen::MatrixXd sel = Eigen::MatrixXd::Zero(dim(), dim());
    sel(0, 0) = sel(1, 1) = 1.0;
    return E * sel * E.inverse();
  }

  PointData analyze(const ChartPoint& pt) const {
    check_interior(pt);
    const JetPack jp = assemble(pt);
    PointData out;
    out.jet = extract_metric(jp);
    out.J = jet_values(jp.J);
    out.dJ = jet_grads(jp.J);
    out.riemann = riemann_from_jet(out.jet);
    out.frame = build_frame(out.jet.g, out.J);
    out.riemann_frame = to_frame(out.riemann.comp, out.frame);
    out.scalar = 0.0;
    const int d = dim();
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) out.scalar += out.riemann_frame(a, b, b, a);

    const Eigen::MatrixXd Einv = out.frame.inverse();
    // nabla J in frame components
    const Tensor3 N = nabla_j_impl(out.jet, out.J, out.dJ);
    out.nabla_j_frame = frame_tensor3_max(N, out.frame, Einv);

    // dOmega from the jet of Omega_ij = J^m_i g_mj
    out.d_omega_frame = d_omega_max(jp, out.frame);

    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        out.killing = std::max(out.killing, std::abs(out.jet.dg(i, j, 1)));
        out.killing_j = std::max(out.killing_j, std::abs(out.dJ(i, j, 1)));
      }

    const Eigen::MatrixXd JF = Einv * out.J * out.frame;
    Eigen::MatrixXd Jstd = Eigen::MatrixXd::Zero(d, d);
    for (int k = 0; k < d / 2; ++k) {
      Jstd(2 * k + 1, 2 * k) = 1.0;
      Jstd(2 * k, 2 * k + 1) = -1.0;
    }
    out.frame_j_deviation = (JF - Jstd).cwiseAbs().maxCoeff();
    return out;
  }

private:
  struct JetPack {
    int nv = 0;
    std::vector<Jet2> g;  // nv*nv, row-major
    std::vector<Jet2> J;  // nv*nv, row-major, J[r*nv+c] = J^r_c
  };

  double nabla_j_probe(const ChartPoint& pt) const {
    const JetPack jp = assemble(pt);
    const MetricJet mj = extract_metric(jp);
    const Eigen::MatrixXd J = jet_values(jp.J);
    const Tensor3 dJ = jet_grads(jp.J);
    const Tensor3 N = nabla_j_impl(mj, J, dJ);
    const Eigen::MatrixXd E = build_frame(mj.g, J);
    return frame_tensor3_max(N, E, E.inverse());
  }

  JetPack assemble(const ChartPoint& pt) const {
    const int d = dim();
    const int m = n_ - 1;
    JetPack jp;
    jp.nv = d;

    const double t = pt.t;
    const double hv = sol_->h(t), hpv = sol_->hp(t), hppv = sol_->hpp(t), hpppv = sol_->hppp(t);
    const Jet2 h = Jet2::from_curve(hv, hpv, hppv, 0, d);
    const Jet2 h1 = Jet2::from_curve(hpv, hppv, hpppv, 0, d);
    const Jet2 f = h * h1;
    const Jet2 h2 = h * h;
    const Jet2 f2 = f * f;

    std::vector<Jet2> x(static_cast<size_t>(m)), y(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
      x[static_cast<size_t>(i)] = Jet2::variable(pt.w(2 * i), 2 + 2 * i, d);
      y[static_cast<size_t>(i)] = Jet2::variable(pt.w(2 * i + 1), 3 + 2 * i, d);
    }
    const FsJets fs = fs_jets(x, y);

    // theta = dpsi + A
    std::vector<Jet2> theta(static_cast<size_t>(d), Jet2::constant(0.0, d));
    theta[1] = Jet2::constant(1.0, d);
    for (int a = 0; a < 2 * m; ++a) theta[static_cast<size_t>(2 + a)] = fs.conn[static_cast<size_t>(a)];

    jp.g.assign(static_cast<size_t>(d) * d, Jet2::constant(0.0, d));
    auto gAt = [&](int i, int j) -> Jet2& { return jp.g[static_cast<size_t>(i) * d + j]; };
    gAt(0, 0) = Jet2::constant(1.0, d);
    for (int i = 1; i < d; ++i)  // theta has no dt component
      for (int j = 1; j < d; ++j)
        gAt(i, j) += f2 * theta[static_cast<size_t>(i)] * theta[static_cast<size_t>(j)];
    for (int a = 0; a < 2 * m; ++a)
      for (int b = 0; b < 2 * m; ++b) {
        const int i = a / 2, j = b / 2;
        Jet2 block = Jet2::constant(0.0, d);
        if (a % 2 == 0 && b % 2 == 0) block = fs.S[static_cast<size_t>(i) * m + j];
        else if (a % 2 == 1 && b % 2 == 1) block = fs.S[static_cast<size_t>(i) * m + j];
        else if (a % 2 == 0 && b % 2 == 1) block = fs.A[static_cast<size_t>(i) * m + j];
        else block = -(fs.A[static_cast<size_t>(i) * m + j]);
        gAt(2 + a, 2 + b) += h2 * block;
      }

    jp.J.assign(static_cast<size_t>(d) * d, Jet2::constant(0.0, d));
    auto JAt = [&](int r, int c) -> Jet2& { return jp.J[static_cast<size_t>(r) * d + c]; };
    const double e = static_cast<double>(eps_);
    JAt(1, 0) = e * f.inverse();
    JAt(0, 1) = -(e * f);
    for (int i = 0; i < m; ++i) {
      const int cx = 2 + 2 * i, cy = 3 + 2 * i;
      const Jet2& Ax = fs.conn[static_cast<size_t>(2 * i)];
      const Jet2& Ay = fs.conn[static_cast<size_t>(2 * i + 1)];
      JAt(cy, cx) = Jet2::constant(1.0, d);
      JAt(1, cx) = -Ay;
      JAt(0, cx) = -(e * f * Ax);
      JAt(cx, cy) = Jet2::constant(-1.0, d);
      JAt(1, cy) = Ax;
      JAt(0, cy) = -(e * f * Ay);
    }
    return jp;
  }

  static Eigen::MatrixXd jet_values(const std::vector<Jet2>& v, int d) {
    Eigen::MatrixXd M(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) M(i, j) = v[static_cast<size_t>(i) * d + j].value();
    return M;
  }
  Eigen::MatrixXd jet_values(const std::vector<Jet2>& v) const { return jet_values(v, dim()); }

  Tensor3 jet_grads(const std::vector<Jet2>& v) const {
    const int d = dim();
    Tensor3 T(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const Eigen::VectorXd& gr = v[static_cast<size_t>(i) * d + j].grad();
        for (int k = 0; k < d; ++k) T(i, j, k) = gr(k);
      }
    return T;
  }

  MetricJet extract_metric(const JetPack& jp) const {
    const int d = dim();
    MetricJet mj;
    mj.dim = d;
    mj.g = jet_values(jp.g, d);
    mj.dg = jet_grads(jp.g);
    mj.ddg = Tensor4(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const Eigen::MatrixXd& H = jp.g[static_cast<size_t>(i) * d + j].hess();
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) mj.ddg(i, j, k, l) = H(k, l);
      }
    return mj;
  }

  static Tensor3 nabla_j_impl(const MetricJet& mj, const Eigen::MatrixXd& J, const Tensor3& dJ) {
    const int d = mj.dim;
    const Tensor3 G = christoffels(mj);
    Tensor3 N(d);
    for (int k = 0; k < d; ++k)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          double s = dJ(k, b, a);
          for (int m = 0; m < d; ++m) s += G(k, a, m) * J(m, b) - G(m, a, b) * J(k, m);
          N(k, a, b) = s;
        }
    return N;
  }

  // J-adapted g-orthonormal frame; columns e_0 = normalized d_t, e_1 = J e_0,
  // then pairs (e, Je) from Gram-Schmidt over the remaining coordinate axes
  static Eigen::MatrixXd build_frame(const Eigen::MatrixXd& g, const Eigen::MatrixXd& J) {
    const int d = static_cast<int>(g.rows());
    Eigen::MatrixXd E(d, d);
    auto gdot = [&g](const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
      return u.dot(g * v);
    };
    auto project_out = [&](Eigen::VectorXd& v, int upto) {
      for (int rep = 0; rep < 2; ++rep)
        for (int a = 0; a < upto; ++a) v -= gdot(E.col(a), v) * E.col(a);
    };

    Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
    v(0) = 1.0;
    E.col(0) = v / std::sqrt(gdot(v, v));
    Eigen::VectorXd j0 = J * E.col(0);
    E.col(1) = j0 / std::sqrt(gdot(j0, j0));
    int k = 2;
    for (int cand = 1; cand < d && k < d; ++cand) {
      v = Eigen::VectorXd::Zero(d);
      v(cand) = 1.0;
      const double scale = std::sqrt(gdot(v, v));
      project_out(v, k);
      const double nv = std::sqrt(std::max(gdot(v, v), 0.0));
      if (nv <= 1e-10 * scale) continue;
      E.col(k) = v / nv;
      Eigen::VectorXd jv = J * E.col(k);
      project_out(jv, k + 1);
      E.col(k + 1) = jv / std::sqrt(gdot(jv, jv));
      k += 2;
    }
    if (k != d) throw std::runtime_error("build_frame: frame construction failed");
    return E;
  }

  static Tensor4 to_frame(const Tensor4& R, const Eigen::MatrixXd& E) {
    const int d = R.dim();
    Tensor4 T1(d), T2(d), T3(d), out(d);
    for (int a = 0; a < d; ++a)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            double s = 0.0;
            for (int i = 0; i < d; ++i) s += E(i, a) * R(i, j, k, l);
            T1(a, j, k, l) = s;
          }
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            double s = 0.0;
            for (int j = 0; j < d; ++j) s += E(j, b) * T1(a, j, k, l);
            T2(a, b, k, l) = s;
          }
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int l = 0; l < d; ++l) {
            double s = 0.0;
            for (int k = 0; k < d; ++k) s += E(k, c) * T2(a, b, k, l);
            T3(a, b, c, l) = s;
          }
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e) {
            double s = 0.0;
            for (int l = 0; l < d; ++l) s += E(l, e) * T3(a, b, c, l);
            out(a, b, c, e) = s;
          }
    return out;
  }

  // (1,2)-tensor pushed to the frame: first index contravariant
  static double frame_tensor3_max(const Tensor3& N, const Eigen::MatrixXd& E,
                                  const Eigen::MatrixXd& Einv) {
    const int d = static_cast<int>(E.rows());
    Tensor3 T1(d), T2(d), T3(d);
    for (int c = 0; c < d; ++c)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          double s = 0.0;
          for (int k = 0; k < d; ++k) s += Einv(c, k) * N(k, a, b);
          T1(c, a, b) = s;
        }
    for (int c = 0; c < d; ++c)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          double s = 0.0;
          for (int k = 0; k < d; ++k) s += T1(c, k, b) * E(k, a);
          T2(c, a, b) = s;
        }
    for (int c = 0; c < d; ++c)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          double s = 0.0;
          for (int k = 0; k < d; ++k) s += T2(c, a, k) * E(k, b);
          T3(c, a, b) = s;
        }
    return T3.max_abs();
  }

  double d_omega_max(const JetPack& jp, const Eigen::MatrixXd& E) const {
    const int d = dim();
    // Omega_ij as jets, then the 3-form dOmega_(kij) = cyclic sum of d_k Omega_ij
    std::vector<Jet2> Om(static_cast<size_t>(d) * d, Jet2::constant(0.0, d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Jet2 s = Jet2::constant(0.0, d);
        for (int m = 0; m < d; ++m)
          s += jp.J[static_cast<size_t>(m) * d + i] * jp.g[static_cast<size_t>(m) * d + j];
        Om[static_cast<size_t>(i) * d + j] = s;
      }
    Tensor3 dOm(d);
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          dOm(k, i, j) = Om[static_cast<size_t>(i) * d + j].grad()(k) +
                         Om[static_cast<size_t>(j) * d + k].grad()(i) +
                         Om[static_cast<size_t>(k) * d + i].grad()(j);
    Tensor3 T1(d), T2(d), T3(d);
    for (int a = 0; a < d; ++a)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          double s = 0.0;
          for (int k = 0; k < d; ++k) s += dOm(k, i, j) * E(k, a);
          T1(a, i, j) = s;
        }
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int j = 0; j < d; ++j) {
          double s = 0.0;
          for (int i = 0; i < d; ++i) s += T1(a, i, j) * E(i, b);
          T2(a, b, j) = s;
        }
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c) {
          double s = 0.0;
          for (int j = 0; j < d; ++j) s += T2(a, b, j) * E(j, c);
          T3(a, b, c) = s;
        }
    return T3.max_abs();
  }

  const ProfileSolution* sol_;
  int n_;
  int eps_;
  double margin_;
  CalibrationInfo calib_;
};

}  // namespace hpk
