#pragma once

// Exactly bandlimited test fields built from finite Fourier-Bessel spectra.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polar_olct/bessel.hpp"
#include "polar_olct/params.hpp"
#include "polar_olct/quadrature.hpp"

namespace polar_olct {

using RadialFunction = std::function<complex(double)>;

/// Closed form of the finite Bessel-product integral
/// int_0^c J_v(alpha k) J_v(r k) k dk for alpha with J_v(alpha c) = 0.
inline double lommel_kernel(double alpha, double r, double c, BesselOrder v) {
  if (!(alpha > 0.0) || !(c > 0.0) || !(r >= 0.0)) throw std::domain_error("lommel_kernel: invalid argument");
  const double z = alpha * c;
  if (std::abs(bessel_j(v, z)) > 1e-10) {
    std::ostringstream msg;
    msg << "lommel_kernel: alpha * c = " << z << " is not a zero of J_" << v.value();
    throw std::domain_error(msg.str());
  }
  const double jn1 = bessel_j(BesselOrder(v.value() + 1.0), z);
  const double delta = r - alpha;
  if (std::abs(delta) < 1e-6 * alpha) {
    return 0.5 * c * c * jn1 * jn1 * (1.0 - delta / (2.0 * alpha)) / (1.0 + delta / (2.0 * alpha));
  }
  return c * alpha * jn1 * bessel_j(v, r * c) / (alpha * alpha - r * r);
}

/// x^{-p-1} J_{v+p+1}(x), finite at the origin.
inline double sonine_shape(double v, int p, double x) {
  const double order = v + p + 1.0;
  if (x < 1.0) {
    const double h = 0.5 * x;
    double term = std::exp(v * std::log(std::max(h, std::numeric_limits<double>::min())) - std::lgamma(order + 1.0));
    if (v == 0.0) term = std::exp(-std::lgamma(order + 1.0));
    double sum = term;
    for (int k = 1; k < 60; ++k) {
      term *= -h * h / (static_cast<double>(k) * (k + order));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return std::ldexp(sum, -(p + 1));
  }
  return bessel_j(BesselOrder(order), x) / std::pow(x, p + 1);
}

/// Radial profile whose order-v Hankel transform is k^v (1 - k^2/W^2)^p on
/// [0, W] and zero beyond.
inline double sonine_profile(double v, int p, double width, double r) {
  const double scale = std::pow(width, v + 2.0) * std::ldexp(std::tgamma(p + 1.0), p);
  return scale * sonine_shape(v, p, width * r);
}

inline double sonine_spectrum(double v, int p, double width, double k) {
  if (k >= width) return 0.0;
  const double t = 1.0 - (k / width) * (k / width);
  return std::pow(k, v) * std::pow(t, p);
}

/// Bessel order attached to each angular order of a spectrum.
enum class OrderMap { angular, doubled, fixed };

/// Per-angular-order coefficient vectors eps_{n,j}, 1 <= j <= J_spec.
struct FourierBesselSpectrum {
  double omega = 1.0;
  int K = 0;
  OrderMap order_map = OrderMap::angular;
  int fixed_order = 0;
  std::map<int, std::vector<complex>> coefficients;

  [[nodiscard]] int bessel_order(int n) const {
    switch (order_map) {
      case OrderMap::angular: return std::abs(n);
      case OrderMap::doubled: return 2 * std::abs(n);
      case OrderMap::fixed: return fixed_order;
    }
    return std::abs(n);
  }

  [[nodiscard]] std::size_t j_spec() const {
    std::size_t j = 0;
    for (const auto& [n, eps] : coefficients) j = std::max(j, eps.size());
    return j;
  }

  void validate() const {
    if (!(omega > 0.0)) throw std::invalid_argument("spectrum bandlimit must be positive");
    if (K < 0) throw std::invalid_argument("spectrum angular limit must be non-negative");
    if (fixed_order < 0) throw std::invalid_argument("spectrum fixed order must be non-negative");
    for (const auto& [n, eps] : coefficients) {
      if (std::abs(n) > K) throw std::invalid_argument("spectrum has an angular order beyond K");
      for (const complex& e : eps) {
        if (!(std::abs(e) <= 1e6)) throw std::invalid_argument("spectrum coefficient magnitude exceeds 1e6");
      }
    }
  }

  /// Coefficients uniform in the unit disk, scaled by decay^{j-1}.
  static FourierBesselSpectrum random(double omega, int K, std::size_t j_spec, std::uint64_t seed,
                                      OrderMap map = OrderMap::angular, int fixed_order = 0, double decay = 1.0) {
    FourierBesselSpectrum s;
    s.omega = omega;
    s.K = K;
    s.order_map = map;
    s.fixed_order = fixed_order;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = -K; n <= K; ++n) {
      auto& eps = s.coefficients[n];
      double scale = 1.0;
      for (std::size_t j = 0; j < j_spec; ++j) {
        double x = 0.0;
        double y = 0.0;
        do {
          x = u(rng);
          y = u(rng);
        } while (x * x + y * y > 1.0);
        eps.emplace_back(scale * x, scale * y);
        scale *= decay;
      }
    }
    s.validate();
    return s;
  }
};

/// One angular term f_n(r) e^{in theta}. `spectrum`, when present, is the
/// closed-form order-`order` Hankel transform int_0^inf e^{i chirp r^2}
/// f_n(r) J_order(k r) r dr as a function of k.
struct AngularTerm {
  int n = 0;
  double order = 0.0;
  RadialFunction profile;
  RadialFunction spectrum;
};

/// f(r, theta) = sum_{|n| <= K} f_n(r) e^{in theta}.
class PolarField {
 public:
  PolarField() = default;
  PolarField(std::vector<AngularTerm> terms, double omega, int K) : terms_(std::move(terms)), omega_(omega), K_(K) {
    std::sort(terms_.begin(), terms_.end(), [](const auto& x, const auto& y) { return x.n < y.n; });
    for (const auto& t : terms_) {
      if (std::abs(t.n) > K_) throw std::invalid_argument("PolarField: angular order beyond K");
    }
  }

  [[nodiscard]] complex evaluate(double r, double theta) const {
    if (r > support_) return {0.0, 0.0};
    const double t = wrap_angle(theta);
    complex sum{0.0, 0.0};
    for (const auto& term : terms_) sum += term.profile(r) * std::polar(1.0, term.n * t);
    return sum;
  }

  /// f_n(r); zero for orders without a term.
  [[nodiscard]] complex coefficient(int n, double r) const {
    if (r > support_) return {0.0, 0.0};
    complex sum{0.0, 0.0};
    for (const auto& term : terms_) {
      if (term.n == n) sum += term.profile(r);
    }
    return sum;
  }

  [[nodiscard]] const std::vector<AngularTerm>& terms() const noexcept { return terms_; }
  [[nodiscard]] double omega() const noexcept { return omega_; }
  [[nodiscard]] int K() const noexcept { return K_; }

  /// Quadratic phase carried by every profile: f_n = e^{-i chirp r^2} * smooth.
  [[nodiscard]] double chirp() const noexcept { return chirp_; }
  void set_chirp(double chirp) { chirp_ = chirp; }

  /// Radius beyond which the field is negligible (below 1e-10 of its peak).
  [[nodiscard]] double radius() const noexcept { return radius_; }
  void set_radius(double radius) { radius_ = radius; }

  /// Hard support: the field is identically zero for r > support.
  [[nodiscard]] double support() const noexcept { return support_; }
  void set_support(double support) { support_ = support; }

  [[nodiscard]] const std::string& provenance() const noexcept { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

 private:
  std::vector<AngularTerm> terms_;
  double omega_ = 1.0;
  int K_ = 0;
  double chirp_ = 0.0;
  double radius_ = std::numeric_limits<double>::infinity();
  double support_ = std::numeric_limits<double>::infinity();
  std::string provenance_;
};

/// Smallest R such that |g(r)| < threshold * peak on a fine scan beyond R.
inline double decay_radius(const RadialFunction& g, double scan_max, double step, double threshold = 1e-10) {
  double peak = 0.0;
  std::vector<double> mags;
  for (double r = 0.0; r <= scan_max; r += step) {
    mags.push_back(std::abs(g(r)));
    peak = std::max(peak, mags.back());
  }
  if (peak == 0.0) return 0.0;
  for (std::size_t i = mags.size(); i-- > 0;) {
    if (mags[i] >= threshold * peak) return std::min(scan_max, step * static_cast<double>(i + 1));
  }
  return 0.0;
}

enum class SynthesisMode { olcht_space, olct_space };
enum class ProfileKind { fourier_bessel, sonine, space_limited };

struct SynthesisOptions {
  ProfileKind kind = ProfileKind::fourier_bessel;
  int sonine_power = 16;
};

/// Field whose angular coefficients are the inverse transforms of finite
/// Fourier-Bessel spectra. In olcht_space mode every term uses the
/// spectrum's fixed order; in olct_space mode the order map decides.
///
///  fourier_bessel: f_n = e^{-iar^2/2b} sum_j eps_j L(alpha_j, r), spectrum
///                  sum_j eps_j J_v(alpha_j k) on k < Omega/b.
///  sonine:         f_n = e^{-iar^2/2b} sum_j eps_j S_{v,p+j-1}(r), spectrum
///                  sum_j eps_j k^v (1 - k^2 b^2/Omega^2)^{p+j-1}.
///  space_limited:  f_n = e^{-iar^2/2b} sum_j eps_j J_v(z_j r / Omega) on
///                  r < Omega, zero beyond.
inline PolarField synthesize(const FourierBesselSpectrum& spectrum, const KernelParams& params, SynthesisMode mode,
                             const SynthesisOptions& opts = {}) {
  spectrum.validate();
  const double b = params.b();
  if (!(b > 0.0)) throw std::invalid_argument("synthesize: b must be positive");
  const double omega = spectrum.omega;
  const double width = omega / b;
  const double chirp = params.a() / (2.0 * b);
  std::vector<AngularTerm> terms;
  for (const auto& [n, eps_ref] : spectrum.coefficients) {
    if (eps_ref.empty()) continue;
    const int v = mode == SynthesisMode::olcht_space ? spectrum.fixed_order : spectrum.bessel_order(n);
    const BesselOrder order(v);
    auto eps = std::make_shared<const std::vector<complex>>(eps_ref);
    auto zeros = std::make_shared<const ZeroTable>(order, eps->size());
    AngularTerm term;
    term.n = n;
    term.order = v;
    switch (opts.kind) {
      case ProfileKind::fourier_bessel: {
        term.profile = [eps, zeros, order, b, omega, width, chirp](double r) {
          complex sum{0.0, 0.0};
          for (std::size_t j = 0; j < eps->size(); ++j) {
            const double alpha = b * zeros->zeros()[j] / omega;
            sum += (*eps)[j] * lommel_kernel(alpha, r, width, order);
          }
          return std::polar(1.0, -chirp * r * r) * sum;
        };
        term.spectrum = [eps, zeros, order, b, omega, width](double k) {
          if (k >= width) return complex{0.0, 0.0};
          complex sum{0.0, 0.0};
          for (std::size_t j = 0; j < eps->size(); ++j) {
            sum += (*eps)[j] * bessel_j(order, b * zeros->zeros()[j] / omega * k);
          }
          return sum;
        };
        break;
      }
      case ProfileKind::sonine: {
        const int p = opts.sonine_power;
        if (p < 0) throw std::invalid_argument("synthesize: sonine power must be non-negative");
        term.profile = [eps, v, p, width, chirp](double r) {
          complex sum{0.0, 0.0};
          for (std::size_t j = 0; j < eps->size(); ++j) {
            sum += (*eps)[j] * sonine_profile(v, p + static_cast<int>(j), width, r);
          }
          return std::polar(1.0, -chirp * r * r) * sum;
        };
        term.spectrum = [eps, v, p, width](double k) {
          complex sum{0.0, 0.0};
          for (std::size_t j = 0; j < eps->size(); ++j) {
            sum += (*eps)[j] * sonine_spectrum(v, p + static_cast<int>(j), width, k);
          }
          return sum;
        };
        break;
      }
      case ProfileKind::space_limited: {
        term.profile = [eps, zeros, order, omega, chirp](double r) {
          if (r >= omega) return complex{0.0, 0.0};
          complex sum{0.0, 0.0};
          for (std::size_t j = 0; j < eps->size(); ++j) {
            sum += (*eps)[j] * bessel_j(order, zeros->zeros()[j] * r / omega);
          }
          return std::polar(1.0, -chirp * r * r) * sum;
        };
        term.spectrum = [eps, zeros, order, omega](double k) {
          complex sum{0.0, 0.0};
          for (std::size_t j = 0; j < eps->size(); ++j) {
            sum += (*eps)[j] * (omega * omega * lommel_kernel(zeros->zeros()[j], k * omega, 1.0, order));
          }
          return sum;
        };
        break;
      }
    }
    terms.push_back(std::move(term));
  }

  PolarField field(std::move(terms), omega, spectrum.K);
  field.set_chirp(chirp);
  std::ostringstream prov;
  prov << (mode == SynthesisMode::olcht_space ? "olcht_space" : "olct_space") << ",kind=";
  switch (opts.kind) {
    case ProfileKind::fourier_bessel: prov << "fourier_bessel"; break;
    case ProfileKind::sonine: prov << "sonine(p=" << opts.sonine_power << ")"; break;
    case ProfileKind::space_limited: prov << "space_limited"; break;
  }
  prov << ",Omega=" << omega << ",K=" << spectrum.K << ",J=" << spectrum.j_spec();
  field.set_provenance(prov.str());

  if (opts.kind == ProfileKind::space_limited) {
    field.set_support(omega);
    field.set_radius(omega);
  } else if (opts.kind == ProfileKind::sonine) {
    double radius = 0.0;
    const double step = 0.05 / width;
    for (const auto& term : field.terms()) {
      const auto& g = term.profile;
      radius = std::max(radius, decay_radius([&g](double r) { return g(r); }, 400.0 / width, step));
    }
    field.set_radius(radius);
  }
  return field;
}

/// f_n(r) = eps_n r^{|n|} e^{-r^2 / (2 s^2)}: smooth, rapidly decaying, not bandlimited.
inline PolarField gaussian_field(const std::vector<std::pair<int, complex>>& amplitudes, double width) {
  std::vector<AngularTerm> terms;
  int K = 0;
  for (const auto& [n, amp] : amplitudes) {
    K = std::max(K, std::abs(n));
    AngularTerm t;
    t.n = n;
    t.order = std::abs(n);
    const int power = std::abs(n);
    t.profile = [amp, power, width](double r) {
      return amp * std::pow(r, power) * std::exp(-0.5 * r * r / (width * width));
    };
    terms.push_back(std::move(t));
  }
  PolarField field(std::move(terms), 1.0, K);
  // r^K e^{-r^2/2s^2} < 1e-10 * peak well inside this radius for K <= 8.
  field.set_radius(width * (7.0 + 0.5 * K));
  field.set_provenance("gaussian");
  return field;
}

}  // namespace polar_olct
