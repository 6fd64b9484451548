#pragma once

// Parameter bundles of the polar offset linear canonical transform.

#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "polar_olct/quadrature.hpp"

namespace polar_olct {

using Vec2 = std::array<double, 2>;

inline double norm(const Vec2& v) { return std::hypot(v[0], v[1]); }

/// Kernel parameters (a, b; c, d), tau, eta with every derived scalar. Any
/// b != 0 is accepted here; the inverse transform runs with b < 0.
class KernelParams {
 public:
  KernelParams(double a, double b, double c, double d, Vec2 tau, Vec2 eta)
      : a_(a), b_(b), c_(c), d_(d), tau_(tau), eta_(eta) {
    if (b == 0.0) throw std::invalid_argument("kernel parameter b must be non-zero");
    const double det = a * d - b * c;
    if (std::abs(det - 1.0) > 1e-12) {
      std::ostringstream msg;
      msg << "ad - bc = " << det << " differs from 1 by more than 1e-12";
      throw std::invalid_argument(msg.str());
    }
    if (det != 1.0) {
      const double s = 1.0 / std::sqrt(det);
      a_ *= s;
      b_ *= s;
      c_ *= s;
      d_ *= s;
    }
    const Vec2 shift{d_ * tau_[0] - b_ * eta_[0], d_ * tau_[1] - b_ * eta_[1]};
    phi1_ = std::atan2(tau_[0], tau_[1]);
    phi2_ = std::atan2(shift[0], shift[1]);
    mu1_ = norm(tau_);
    mu2_ = norm(shift);
  }

  [[nodiscard]] double a() const noexcept { return a_; }
  [[nodiscard]] double b() const noexcept { return b_; }
  [[nodiscard]] double c() const noexcept { return c_; }
  [[nodiscard]] double d() const noexcept { return d_; }
  [[nodiscard]] const Vec2& tau() const noexcept { return tau_; }
  [[nodiscard]] const Vec2& eta() const noexcept { return eta_; }

  /// Angle with tan(phi1) = tau1 / tau2, resolved by atan2.
  [[nodiscard]] double phi1() const noexcept { return phi1_; }
  /// Angle with tan(phi2) = (d tau1 - b eta1) / (d tau2 - b eta2).
  [[nodiscard]] double phi2() const noexcept { return phi2_; }
  /// |tau|
  [[nodiscard]] double mu1() const noexcept { return mu1_; }
  /// |d tau - b eta|
  [[nodiscard]] double mu2() const noexcept { return mu2_; }

  /// e^{i d |tau|^2 / b}
  [[nodiscard]] complex ell1() const { return std::polar(1.0, d_ * mu1_ * mu1_ / b_); }
  /// e^{-i a |b eta - d tau|^2 / b}
  [[nodiscard]] complex ell2() const { return std::polar(1.0, -a_ * mu2_ * mu2_ / b_); }
  /// ell1 * ell2
  [[nodiscard]] complex sigma() const { return std::polar(1.0, (d_ * mu1_ * mu1_ - a_ * mu2_ * mu2_) / b_); }

  /// Parameters of the inversion formula: (d, -b; -c, a), xi = b eta - d tau,
  /// gamma = c tau - a eta.
  [[nodiscard]] KernelParams inverse() const {
    const Vec2 xi{b_ * eta_[0] - d_ * tau_[0], b_ * eta_[1] - d_ * tau_[1]};
    const Vec2 gamma{c_ * tau_[0] - a_ * eta_[0], c_ * tau_[1] - a_ * eta_[1]};
    return KernelParams(d_, -b_, -c_, a_, xi, gamma);
  }

  [[nodiscard]] bool offsets_vanish() const noexcept {
    return tau_[0] == 0.0 && tau_[1] == 0.0 && eta_[0] == 0.0 && eta_[1] == 0.0;
  }

 private:
  double a_, b_, c_, d_;
  Vec2 tau_, eta_;
  double phi1_ = 0.0, phi2_ = 0.0, mu1_ = 0.0, mu2_ = 0.0;
};

using InverseParams = KernelParams;

/// Forward-transform parameters: a kernel with b > 0.
class OffsetParams : public KernelParams {
 public:
  OffsetParams(double a, double b, double c, double d, Vec2 tau = {0.0, 0.0}, Vec2 eta = {0.0, 0.0})
      : KernelParams(a, b, c, d, tau, eta) {
    if (!(b > 0.0)) throw std::invalid_argument("OffsetParams requires b > 0");
  }

  /// A = (0, 1; -1, 0), tau = eta = 0: the classical Fourier/Hankel case.
  static OffsetParams fourier() { return OffsetParams(0.0, 1.0, -1.0, 0.0); }
};

}  // namespace polar_olct
