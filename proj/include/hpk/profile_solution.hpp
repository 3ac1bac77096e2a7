#pragma once

// Solves h'' = P'(h)/2, h(0) = 0, h'(0) = 1 for an admissible profile P and
// exposes a dense C^2 interpolant. L is the first positive time with h'(L) = 0
// (located inside the crossing step by Brent on the interpolant). Integration
// continues a little past L and backward past -L/4 so parity checks around
// both ends have room. The first integral h'^2 = P(h) is monitored everywhere
// as an accuracy certificate.

#include <hpk/ode.hpp>
#include <hpk/polynomial.hpp>
#include <hpk/profile.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hpk {

struct OdeTolerances {
  double rel = 1e-12;
  double abs = 1e-12;
  double energy = 1e-10;    // max allowed |h'^2 - P(h)|
  double endpoint = 1e-7;   // max allowed boundary residual
  double t_max = 50.0;
  double max_step = 0.1;
};

struct BoundaryReport {
  double h_at_zero = 0.0;       // |h(0)|
  double hp_at_zero_err = 0.0;  // |h'(0) - 1|
  double h_at_end_err = 0.0;    // |h(L) - 1|
  double hp_at_end = 0.0;       // |h'(L)|
  double f_at_end = 0.0;        // |f(L)|
  double fp_at_end_err = 0.0;   // |f'(L) + 1|
  double parity_h = 0.0;        // max |h(-t) + h(t)|, t in (0, L/4]
  double parity_f_end = 0.0;    // max |f(L+d) + f(L-d)| on a small grid

  double endpoint_max() const {
    return std::max({h_at_zero, hp_at_zero_err, h_at_end_err, hp_at_end, f_at_end,
                     fp_at_end_err});
  }
  double parity_max() const { return std::max(parity_h, parity_f_end); }
};

namespace detail {

// Monomial coefficients (in sigma) of the degree-7 two-point Hermite
// interpolant on sigma in [0, 1]. Inputs are value and first three
// sigma-derivatives at each end; confluent divided differences.
inline std::array<double, 8> hermite7_sigma_coeffs(const std::array<double, 4>& left,
                                                   const std::array<double, 4>& right) {
  static constexpr std::array<double, 8> x = {0, 0, 0, 0, 1, 1, 1, 1};
  static constexpr double fact[4] = {1.0, 1.0, 2.0, 6.0};
  double dd[8][8] = {};
  for (int i = 0; i < 8; ++i) dd[0][i] = (i < 4) ? left[0] : right[0];
  for (int k = 1; k <= 7; ++k) {
    for (int i = 0; i + k <= 7; ++i) {
      if (x[static_cast<size_t>(i + k)] == x[static_cast<size_t>(i)]) {
        const auto& src = (x[static_cast<size_t>(i)] == 0.0) ? left : right;
        dd[k][i] = src[static_cast<size_t>(k)] / fact[k];
      } else {
        dd[k][i] = (dd[k - 1][i + 1] - dd[k - 1][i]) /
                   (x[static_cast<size_t>(i + k)] - x[static_cast<size_t>(i)]);
      }
    }
  }
  // Horner in the Newton basis, expanding to monomials
  std::array<double, 8> mono{};
  mono[0] = dd[7][0];
  int deg = 0;
  for (int k = 6; k >= 0; --k) {
    const double c = x[static_cast<size_t>(k)];
    for (int j = deg + 1; j >= 1; --j)
      mono[static_cast<size_t>(j)] = mono[static_cast<size_t>(j - 1)] - c * mono[static_cast<size_t>(j)];
    mono[0] = -c * mono[0] + dd[k][0];
    ++deg;
  }
  return mono;
}

inline double horner8(const std::array<double, 8>& c, double s) {
  double y = 0.0;
  for (int k = 7; k >= 0; --k) y = y * s + c[static_cast<size_t>(k)];
  return y;
}

}  // namespace detail

class ProfileSolution {
public:
  struct Node {
    double t, h, hp;
  };

  ProfileSolution(Profile profile, OdeTolerances tol = {})
      : profile_(std::move(profile)), tol_(tol) {
    require_valid(profile_);
    dp_ = profile_.p.derivative();
    ddp_ = dp_.derivative();
    phi_poly_ = dp_.deflate_at_zero();  // P'(s)/s, exact since P'(0) = 0
    build();
  }

  const Profile& profile() const { return profile_; }
  const OdeTolerances& tolerances() const { return tol_; }
  double L() const { return L_; }
  double energy_residual_max() const { return energy_max_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  double t_min() const { return nodes_.front().t; }
  double t_max() const { return nodes_.back().t; }

  double h(double t) const { return eval(check_range(t), 0); }
  double hp(double t) const { return eval(check_range(t), 1); }
  double hpp(double t) const { return 0.5 * dp_(eval(check_range(t), 0)); }
  double hppp(double t) const {
    const double tt = check_range(t);
    return 0.5 * ddp_(eval(tt, 0)) * eval(tt, 1);
  }

  double f(double t) const {
    const double tt = check_interval(t);
    return eval(tt, 0) * eval(tt, 1);
  }
  double fp(double t) const {
    const double tt = check_interval(t);
    const double hv = eval(tt, 0), hpv = eval(tt, 1);
    return hpv * hpv + hv * 0.5 * dp_(hv);
  }
  double phi(double t) const {
    return -2.0 * phi_poly_(eval(check_interval(t), 0));
  }
  // -2 P'(s)/s as a polynomial in s; phi(t) is its value at s = h(t)
  Polynomial phi_of_h() const {
    std::vector<double> c = phi_poly_.coeffs();
    for (double& v : c) v *= -2.0;
    return Polynomial(std::move(c));
  }

  BoundaryReport boundary_report() const {
    BoundaryReport r;
    r.h_at_zero = std::abs(eval(0.0, 0));
    r.hp_at_zero_err = std::abs(eval(0.0, 1) - 1.0);
    r.h_at_end_err = std::abs(eval(L_, 0) - 1.0);
    r.hp_at_end = std::abs(eval(L_, 1));
    const double hL = eval(L_, 0), hpL = eval(L_, 1);
    r.f_at_end = std::abs(hL * hpL);
    r.fp_at_end_err = std::abs(hpL * hpL + hL * 0.5 * dp_(hL) + 1.0);
    const int grid = 64;
    for (int i = 1; i <= grid; ++i) {
      const double t = 0.25 * L_ * static_cast<double>(i) / grid;
      r.parity_h = std::max(r.parity_h, std::abs(eval(-t, 0) + eval(t, 0)));
    }
    const double dmax = std::min(L_ / 16.0, nodes_.back().t - L_);
    for (int i = 1; i <= 32; ++i) {
      const double d = dmax * static_cast<double>(i) / 32;
      const double fplus = eval(L_ + d, 0) * eval(L_ + d, 1);
      const double fminus = eval(L_ - d, 0) * eval(L_ - d, 1);
      r.parity_f_end = std::max(r.parity_f_end, std::abs(fplus + fminus));
    }
    return r;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    if (profile_.alpha) j["alpha"] = *profile_.alpha;
    j["coeffs"] = profile_.p.coeffs();
    j["L"] = L_;
    j["tolerances"] = {{"rel", tol_.rel},
                       {"abs", tol_.abs},
                       {"energy", tol_.energy},
                       {"endpoint", tol_.endpoint}};
    auto nodes = nlohmann::ordered_json::array();
    for (const auto& n : nodes_)
      nodes.push_back({{"t", n.t}, {"h", n.h}, {"hp", n.hp}});
    j["nodes"] = std::move(nodes);
    return j;
  }

private:
  struct Segment {
    double t0, dt;
    std::array<double, 8> mono;   // h as a polynomial in sigma
    std::array<double, 8> dmono;  // dh/dt as a polynomial in sigma
  };

  double check_range(double t) const {
    const double eps = 1e-12 * (1.0 + L_);
    if (t < nodes_.front().t - eps || t > nodes_.back().t + eps)
      throw std::domain_error("ProfileSolution: t outside stored range");
    return std::clamp(t, nodes_.front().t, nodes_.back().t);
  }

  double check_interval(double t) const {
    const double eps = 1e-12 * (1.0 + L_);
    if (t < -eps || t > L_ + eps)
      throw std::domain_error("ProfileSolution: t outside [0, L]");
    return std::clamp(t, 0.0, L_);
  }

  double eval(double t, int deriv) const {
    const size_t idx = segment_index(t);
    const Segment& s = segs_[idx];
    const double sigma = (t - s.t0) / s.dt;
    return (deriv == 0) ? detail::horner8(s.mono, sigma) : detail::horner8(s.dmono, sigma);
  }

  size_t segment_index(double t) const {
    auto it = std::upper_bound(seg_starts_.begin(), seg_starts_.end(), t);
    const long k = std::distance(seg_starts_.begin(), it) - 1;
    return static_cast<size_t>(std::clamp<long>(k, 0, static_cast<long>(segs_.size()) - 1));
  }

  Segment make_segment(const Node& a, const Node& b) const {
    Segment s;
    s.t0 = a.t;
    s.dt = b.t - a.t;
    const double d = s.dt;
    const std::array<double, 4> left = {a.h, d * a.hp, d * d * 0.5 * dp_(a.h),
                                        d * d * d * 0.5 * ddp_(a.h) * a.hp};
    const std::array<double, 4> right = {b.h, d * b.hp, d * d * 0.5 * dp_(b.h),
                                         d * d * d * 0.5 * ddp_(b.h) * b.hp};
    s.mono = detail::hermite7_sigma_coeffs(left, right);
    s.dmono.fill(0.0);
    for (int k = 1; k <= 7; ++k)
      s.dmono[static_cast<size_t>(k - 1)] = static_cast<double>(k) * s.mono[static_cast<size_t>(k)] / d;
    return s;
  }

  void build() {
    OdeOptions opt;
    opt.rtol = tol_.rel;
    opt.atol = tol_.abs;
    opt.max_step = tol_.max_step;

    auto rhs = [this](double, const std::array<double, 2>& y) {
      return std::array<double, 2>{y[1], 0.5 * dp_(y[0])};
    };

    // forward: latch the first h' sign change, then run ~L/8 past it
    double t_latch = -1.0;
    auto stop = [&t_latch](const OdeNode<2>& prev, const OdeNode<2>& cur) {
      if (t_latch < 0.0 && prev.y[1] > 0.0 && cur.y[1] <= 0.0) t_latch = cur.t;
      return t_latch > 0.0 && cur.t >= t_latch * (1.0 + 0.15);
    };
    auto fwd = integrate_dp54<2>(rhs, 0.0, {0.0, 1.0}, tol_.t_max, opt, stop);
    if (t_latch < 0.0)
      throw OdeError("solve_profile: h' did not reach zero before t_max");

    // locate L inside the crossing step
    size_t cross = 0;
    bool found = false;
    for (size_t i = 0; i + 1 < fwd.size(); ++i) {
      if (fwd[i].y[1] > 0.0 && fwd[i + 1].y[1] <= 0.0) {
        cross = i;
        found = true;
        break;
      }
    }
    if (!found) throw OdeError("solve_profile: lost the h' sign change");
    const Node ca{fwd[cross].t, fwd[cross].y[0], fwd[cross].y[1]};
    const Node cb{fwd[cross + 1].t, fwd[cross + 1].y[0], fwd[cross + 1].y[1]};
    const Segment cseg = make_segment(ca, cb);
    if (cb.hp == 0.0) {
      L_ = cb.t;
    } else {
      const double sig = brent_root(
          [&cseg](double s) { return detail::horner8(cseg.dmono, s); }, 0.0, 1.0);
      L_ = cseg.t0 + sig * cseg.dt;
    }

    // backward leg for parity checks around t = 0
    auto no_stop = [](const OdeNode<2>&, const OdeNode<2>&) { return false; };
    auto bwd = integrate_dp54<2>(rhs, 0.0, {0.0, 1.0}, -0.27 * L_, opt, no_stop);

    nodes_.clear();
    for (size_t i = bwd.size(); i-- > 1;) nodes_.push_back({bwd[i].t, bwd[i].y[0], bwd[i].y[1]});
    for (const auto& n : fwd) nodes_.push_back({n.t, n.y[0], n.y[1]});

    segs_.clear();
    seg_starts_.clear();
    for (size_t i = 0; i + 1 < nodes_.size(); ++i) {
      segs_.push_back(make_segment(nodes_[i], nodes_[i + 1]));
      seg_starts_.push_back(nodes_[i].t);
    }
    if (segs_.empty()) throw OdeError("solve_profile: no integration steps");

    energy_max_ = 0.0;
    for (const auto& s : segs_) {
      for (int k = 0; k < 4; ++k) {
        const double sigma = 0.25 * k;
        const double hv = detail::horner8(s.mono, sigma);
        const double hpv = detail::horner8(s.dmono, sigma);
        energy_max_ = std::max(energy_max_, std::abs(hpv * hpv - profile_.p(hv)));
      }
    }
    const Node& last = nodes_.back();
    energy_max_ = std::max(energy_max_, std::abs(last.hp * last.hp - profile_.p(last.h)));
    if (energy_max_ > tol_.energy)
      throw OdeError("solve_profile: energy residual " + std::to_string(energy_max_) +
                     " exceeds tolerance");

    const BoundaryReport br = boundary_report();
    if (br.endpoint_max() > tol_.endpoint)
      throw OdeError("solve_profile: boundary residual " + std::to_string(br.endpoint_max()) +
                     " exceeds tolerance");
  }

  Profile profile_;
  OdeTolerances tol_;
  Polynomial dp_, ddp_, phi_poly_;
  double L_ = 0.0;
  double energy_max_ = 0.0;
  std::vector<Node> nodes_;
  std::vector<Segment> segs_;
  std::vector<double> seg_starts_;
};

inline ProfileSolution solve_profile(const Profile& prof, OdeTolerances tol = {}) {
  return ProfileSolution(prof, tol);
}

}  // namespace hpk
