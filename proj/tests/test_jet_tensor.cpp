#include "oracles.hpp"

#include <hpk/jet.hpp>
#include <hpk/rng.hpp>
#include <hpk/tensor.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using Catch::Approx;
using hpk::Jet2;

namespace {

// rational test function of three variables and its jet evaluation
double rat(const Eigen::VectorXd& v) {
  const double x = v[0], y = v[1], z = v[2];
  return (x * x * y + 3.0 * z) / (y - x) + 1.0 / (1.0 + x * x + z * z);
}

Jet2 rat_jet(const Eigen::Vector3d& v) {
  const Jet2 x = Jet2::variable(v[0], 0, 3);
  const Jet2 y = Jet2::variable(v[1], 1, 3);
  const Jet2 z = Jet2::variable(v[2], 2, 3);
  return (x * x * y + 3.0 * z) / (y - x) + (1.0 + x * x + z * z).inverse();
}

}  // namespace

TEST_CASE("second order jets match finite differences on a rational function") {
  const Eigen::Vector3d at(1.2, 2.5, -0.4);
  const Jet2 j = rat_jet(at);

  CHECK(j.value() == Approx(rat(at)).margin(1e-14));

  const Eigen::VectorXd g = oracle::fd_grad(rat, at, 1e-5);
  for (int i = 0; i < 3; ++i) CHECK(j.grad()[i] == Approx(g[i]).margin(1e-7));

  for (int i = 0; i < 3; ++i) {
    auto di = [&](const Eigen::VectorXd& v) { return oracle::fd_grad(rat, v, 1e-5)[i]; };
    const Eigen::VectorXd hi = oracle::fd_grad(di, at, 1e-4);
    for (int k = 0; k < 3; ++k) CHECK(j.hess()(i, k) == Approx(hi[k]).margin(1e-5));
  }

  // hessian symmetry is structural
  CHECK((j.hess() - j.hess().transpose()).norm() == 0.0);
}

TEST_CASE("jet arithmetic identities") {
  const Jet2 x = Jet2::variable(0.7, 0, 2);
  const Jet2 y = Jet2::variable(-1.3, 1, 2);

  const Jet2 lhs = (x + y) * (x - y);
  const Jet2 rhs = x * x - y * y;
  CHECK(lhs.value() == Approx(rhs.value()).margin(1e-15));
  CHECK((lhs.grad() - rhs.grad()).norm() <= 1e-15);
  CHECK((lhs.hess() - rhs.hess()).norm() <= 1e-15);

  const Jet2 one = x * x.inverse();
  CHECK(one.value() == Approx(1.0).margin(1e-15));
  CHECK(one.grad().norm() <= 1e-15);
  CHECK(one.hess().norm() <= 1e-14);

  const Jet2 c = Jet2::constant(2.5, 2);
  CHECK((3.0 * c - c * 2.0).value() == Approx(2.5).margin(1e-15));
}

TEST_CASE("curve injection carries prescribed derivatives") {
  // h(t) = sin t injected at t0, composed as f = h h'
  const double t0 = 0.6;
  const Jet2 h = Jet2::from_curve(std::sin(t0), std::cos(t0), -std::sin(t0), 0, 3);
  const Jet2 h1 = Jet2::from_curve(std::cos(t0), -std::sin(t0), -std::cos(t0), 0, 3);
  const Jet2 f = h * h1;

  CHECK(f.value() == Approx(0.5 * std::sin(2 * t0)).margin(1e-15));
  CHECK(f.grad()[0] == Approx(std::cos(2 * t0)).margin(1e-15));
  CHECK(f.grad()[1] == 0.0);
  CHECK(f.hess()(0, 0) == Approx(-2.0 * std::sin(2 * t0)).margin(1e-14));
  CHECK(f.hess()(1, 1) == 0.0);
}

TEST_CASE("tensor storage and norms") {
  hpk::Tensor4 T(3);
  T(0, 1, 2, 0) = -5.0;
  T(2, 2, 2, 2) = 3.0;
  CHECK(T.max_abs() == 5.0);
  CHECK(T.frobenius() == Approx(std::sqrt(34.0)).margin(1e-14));

  hpk::Tensor4 U(3);
  U(0, 1, 2, 0) = 2.0;
  CHECK(T.dot(U) == Approx(-10.0).margin(1e-14));

  hpk::Tensor4 W = T;
  W -= U;
  CHECK(W(0, 1, 2, 0) == -7.0);
}

TEST_CASE("curvature symmetry residuals detect each broken symmetry") {
  const int d = 3;
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(d, d);
  g(0, 1) = g(1, 0) = 0.3;
  g(2, 2) = 1.7;

  // g wedge g has every symmetry of a curvature tensor
  hpk::Tensor4 R(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) R(i, j, k, l) = g(j, k) * g(i, l) - g(i, k) * g(j, l);

  CHECK(hpk::antisymmetry_first_pair(R) <= 1e-15);
  CHECK(hpk::antisymmetry_second_pair(R) <= 1e-15);
  CHECK(hpk::pair_interchange(R) <= 1e-15);
  CHECK(hpk::first_bianchi(R) <= 1e-15);

  hpk::Tensor4 broken = R;
  broken(0, 1, 2, 0) += 0.25;
  CHECK(hpk::antisymmetry_first_pair(broken) >= 0.124);
  CHECK(hpk::antisymmetry_second_pair(broken) >= 0.124);
  CHECK(hpk::pair_interchange(broken) >= 0.124);
  CHECK(hpk::first_bianchi(broken) >= 0.24);
}

TEST_CASE("complex structure invariance residual") {
  const int d = 2;
  Eigen::MatrixXd J(d, d);
  J << 0, -1, 1, 0;

  hpk::Tensor4 R(d);
  R(0, 1, 0, 1) = 1.0;
  R(0, 1, 1, 0) = -1.0;
  R(1, 0, 0, 1) = -1.0;
  R(1, 0, 1, 0) = 1.0;
  CHECK(hpk::j_invariance_residual(R, J) <= 1e-15);

  hpk::Tensor4 bad(d);
  bad(0, 0, 0, 0) = 1.0;  // J e_0 = e_1 maps this entry onto (1,1,1,1) = 0
  CHECK(hpk::j_invariance_residual(bad, J) >= 0.99);
}

TEST_CASE("tensor json round trip is exact") {
  hpk::DetRng rng(7);
  hpk::Tensor4 T(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) T(i, j, k, l) = rng.symmetric();

  const auto j = T.to_json();
  CHECK(j["shape"].size() == 4);
  const hpk::Tensor4 back = hpk::Tensor4::from_json(j);
  REQUIRE(back.dim() == 3);
  hpk::Tensor4 diff = T;
  diff -= back;
  CHECK(diff.max_abs() == 0.0);
  CHECK(T.to_json().dump() == back.to_json().dump());
}

TEST_CASE("deterministic rng is reproducible and bounded") {
  hpk::DetRng a(123), b(123), c(124);
  bool same = true, differ = false;
  for (int i = 0; i < 64; ++i) {
    const double va = a.uniform(), vb = b.uniform(), vc = c.uniform();
    same = same && (va == vb);
    differ = differ || (va != vc);
    CHECK(va >= 0.0);
    CHECK(va < 1.0);
  }
  CHECK(same);
  CHECK(differ);
  hpk::DetRng s(9);
  for (int i = 0; i < 64; ++i) {
    const double v = s.symmetric();
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
  }
}
