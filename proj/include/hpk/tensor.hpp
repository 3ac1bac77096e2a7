#pragma once

// Dense rank-3/4/6 tensors over a single dimension, row-major, with the
// residual measures used to test curvature-type symmetries.

#include <Eigen/Dense>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hpk {

class Tensor3 {
public:
  Tensor3() = default;
  explicit Tensor3(int d) : d_(d), a_(static_cast<size_t>(d) * d * d, 0.0) {}
  int dim() const { return d_; }
  double& operator()(int i, int j, int k) { return a_[idx(i, j, k)]; }
  double operator()(int i, int j, int k) const { return a_[idx(i, j, k)]; }
  double max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }
  const std::vector<double>& data() const { return a_; }

private:
  size_t idx(int i, int j, int k) const {
    return (static_cast<size_t>(i) * d_ + j) * d_ + k;
  }
  int d_ = 0;
  std::vector<double> a_;
};

class Tensor4 {
public:
  Tensor4() = default;
  explicit Tensor4(int d) : d_(d), a_(static_cast<size_t>(d) * d * d * d, 0.0) {}
  int dim() const { return d_; }
  double& operator()(int i, int j, int k, int l) { return a_[idx(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return a_[idx(i, j, k, l)]; }

  double max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }
  double frobenius() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
  }
  // componentwise inner product
  double dot(const Tensor4& o) const {
    if (o.d_ != d_) throw std::invalid_argument("Tensor4::dot: dimension mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a_.size(); ++i) s += a_[i] * o.a_[i];
    return s;
  }

  Tensor4& operator+=(const Tensor4& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Tensor4& operator-=(const Tensor4& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Tensor4& operator*=(double c) {
    for (double& v : a_) v *= c;
    return *this;
  }
  friend Tensor4 operator+(Tensor4 a, const Tensor4& b) { return a += b; }
  friend Tensor4 operator-(Tensor4 a, const Tensor4& b) { return a -= b; }
  friend Tensor4 operator*(double c, Tensor4 a) { return a *= c; }

  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["shape"] = {d_, d_, d_, d_};
    j["data"] = a_;
    return j;
  }
  static Tensor4 from_json(const nlohmann::json& j) {
    const auto shape = j.at("shape").get<std::vector<int>>();
    if (shape.size() != 4 || shape[0] != shape[1] || shape[0] != shape[2] || shape[0] != shape[3])
      throw std::invalid_argument("Tensor4::from_json: bad shape");
    Tensor4 t(shape[0]);
    t.a_ = j.at("data").get<std::vector<double>>();
    if (t.a_.size() != static_cast<size_t>(shape[0]) * shape[0] * shape[0] * shape[0])
      throw std::invalid_argument("Tensor4::from_json: data length mismatch");
    return t;
  }

private:
  size_t idx(int i, int j, int k, int l) const {
    return ((static_cast<size_t>(i) * d_ + j) * d_ + k) * d_ + l;
  }
  int d_ = 0;
  std::vector<double> a_;
};

class Tensor6 {
public:
  Tensor6() = default;
  explicit Tensor6(int d)
      : d_(d), a_(static_cast<size_t>(d) * d * d * d * d * d, 0.0) {}
  int dim() const { return d_; }
  double& operator()(int i, int j, int k, int l, int m, int n) { return a_[idx(i, j, k, l, m, n)]; }
  double operator()(int i, int j, int k, int l, int m, int n) const {
    return a_[idx(i, j, k, l, m, n)];
  }
  double max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }
  Tensor6& operator-=(const Tensor6& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Tensor6& operator*=(double c) {
    for (double& v : a_) v *= c;
    return *this;
  }
  friend Tensor6 operator-(Tensor6 a, const Tensor6& b) { return a -= b; }
  const std::vector<double>& data() const { return a_; }

private:
  size_t idx(int i, int j, int k, int l, int m, int n) const {
    return ((((static_cast<size_t>(i) * d_ + j) * d_ + k) * d_ + l) * d_ + m) * d_ + n;
  }
  int d_ = 0;
  std::vector<double> a_;
};

// Residuals of the algebraic curvature-tensor symmetries, in max norm.
inline double antisymmetry_first_pair(const Tensor4& R) {
  const int d = R.dim();
  double m = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          m = std::max(m, std::abs(R(i, j, k, l) + R(j, i, k, l)));
  return m;
}

inline double antisymmetry_second_pair(const Tensor4& R) {
  const int d = R.dim();
  double m = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          m = std::max(m, std::abs(R(i, j, k, l) + R(i, j, l, k)));
  return m;
}

inline double pair_interchange(const Tensor4& R) {
  const int d = R.dim();
  double m = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          m = std::max(m, std::abs(R(i, j, k, l) - R(k, l, i, j)));
  return m;
}

inline double first_bianchi(const Tensor4& R) {
  const int d = R.dim();
  double m = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          m = std::max(m, std::abs(R(i, j, k, l) + R(j, k, i, l) + R(k, i, j, l)));
  return m;
}

// max |R(JX, JY, ., .) - R(X, Y, ., .)| with J applied through its matrix
inline double j_invariance_residual(const Tensor4& R, const Eigen::MatrixXd& J) {
  const int d = R.dim();
  Tensor4 S(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = 0.0;
          for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) s += J(a, i) * J(b, j) * R(a, b, k, l);
          S(i, j, k, l) = s - R(i, j, k, l);
        }
  return S.max_abs();
}

}  // namespace hpk
