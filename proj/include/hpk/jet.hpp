#pragma once

// Forward-mode AD carrying value, gradient, and full Hessian. All metric and
// complex-structure components are rational in the chart coordinates, so the
// four arithmetic operators are enough.

#include <Eigen/Dense>

#include <stdexcept>

namespace hpk {

class Jet2 {
public:
  Jet2() = default;

  static Jet2 constant(double value, int nvars) {
    Jet2 j;
    j.v_ = value;
    j.g_ = Eigen::VectorXd::Zero(nvars);
    j.h_ = Eigen::MatrixXd::Zero(nvars, nvars);
    return j;
  }

  static Jet2 variable(double value, int index, int nvars) {
    Jet2 j = constant(value, nvars);
    j.g_(index) = 1.0;
    return j;
  }

  // quantity depending on coordinate `index` only, with prescribed first and
  // second derivatives (used to feed ODE-produced functions into the jet)
  static Jet2 from_curve(double value, double d1, double d2, int index, int nvars) {
    Jet2 j = constant(value, nvars);
    j.g_(index) = d1;
    j.h_(index, index) = d2;
    return j;
  }

  double value() const { return v_; }
  const Eigen::VectorXd& grad() const { return g_; }
  const Eigen::MatrixXd& hess() const { return h_; }
  int nvars() const { return static_cast<int>(g_.size()); }

  Jet2 operator-() const {
    Jet2 r = *this;
    r.v_ = -r.v_;
    r.g_ = -r.g_;
    r.h_ = -r.h_;
    return r;
  }

  friend Jet2 operator+(const Jet2& a, const Jet2& b) {
    Jet2 r = a;
    r.v_ += b.v_;
    r.g_ += b.g_;
    r.h_ += b.h_;
    return r;
  }
  friend Jet2 operator-(const Jet2& a, const Jet2& b) {
    Jet2 r = a;
    r.v_ -= b.v_;
    r.g_ -= b.g_;
    r.h_ -= b.h_;
    return r;
  }
  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.v_ = a.v_ * b.v_;
    r.g_ = a.v_ * b.g_ + b.v_ * a.g_;
    r.h_ = a.v_ * b.h_ + b.v_ * a.h_ + a.g_ * b.g_.transpose() + b.g_ * a.g_.transpose();
    return r;
  }
  friend Jet2 operator/(const Jet2& a, const Jet2& b) { return a * b.inverse(); }

  Jet2 inverse() const {
    if (v_ == 0.0) throw std::domain_error("Jet2: division by zero");
    Jet2 r;
    const double iv = 1.0 / v_;
    r.v_ = iv;
    r.g_ = -iv * iv * g_;
    r.h_ = (2.0 * iv * iv * iv) * (g_ * g_.transpose()) - iv * iv * h_;
    return r;
  }

  friend Jet2 operator+(const Jet2& a, double c) {
    Jet2 r = a;
    r.v_ += c;
    return r;
  }
  friend Jet2 operator+(double c, const Jet2& a) { return a + c; }
  friend Jet2 operator-(const Jet2& a, double c) { return a + (-c); }
  friend Jet2 operator-(double c, const Jet2& a) { return (-a) + c; }
  friend Jet2 operator*(const Jet2& a, double c) {
    Jet2 r = a;
    r.v_ *= c;
    r.g_ *= c;
    r.h_ *= c;
    return r;
  }
  friend Jet2 operator*(double c, const Jet2& a) { return a * c; }
  friend Jet2 operator/(const Jet2& a, double c) { return a * (1.0 / c); }
  friend Jet2 operator/(double c, const Jet2& a) { return a.inverse() * c; }

  Jet2& operator+=(const Jet2& o) { return *this = *this + o; }
  Jet2& operator-=(const Jet2& o) { return *this = *this - o; }
  Jet2& operator*=(const Jet2& o) { return *this = *this * o; }

private:
  double v_ = 0.0;
  Eigen::VectorXd g_;
  Eigen::MatrixXd h_;
};

}  // namespace hpk
