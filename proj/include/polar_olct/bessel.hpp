#pragma once

// Bessel functions of the first kind, their positive zeros, and the
// Jacobi-Anger "lambda" sums used by the offset canonical kernels.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>

namespace polar_olct {

/// Order of a Bessel function of the first kind, restricted to v >= -1/2.
class BesselOrder {
 public:
  constexpr BesselOrder() = default;
  explicit BesselOrder(double value) : value_(value) {
    if (!(value >= -0.5)) {
      std::ostringstream msg;
      msg << "Bessel order " << value << " is below -1/2";
      throw std::domain_error(msg.str());
    }
  }

  [[nodiscard]] constexpr double value() const noexcept { return value_; }
  [[nodiscard]] bool is_integer() const noexcept { return value_ == std::floor(value_); }
  [[nodiscard]] int as_int() const noexcept { return static_cast<int>(value_); }

  friend constexpr bool operator==(BesselOrder, BesselOrder) = default;

 private:
  double value_ = 0.0;
};

namespace detail {

// Ascending series; accurate when x is small or when x^2/4 < n + 1 (monotone terms).
inline double bessel_jn_series(int n, double x) {
  const double half = 0.5 * x;
  double term = std::exp(n * std::log(half) - std::lgamma(n + 1.0));
  if (term == 0.0) return 0.0;
  double sum = term;
  const double q = -half * half;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * (k + n));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

inline int miller_start(int nmax, double x) {
  const double top = std::max(static_cast<double>(nmax), x);
  const int m = static_cast<int>(top + 30.0 + 12.0 * std::cbrt(top));
  return m + (m % 2);
}

// Miller backward recurrence for J_0..J_nmax at x > 0. The unnormalized
// sequence is scaled so that J_0^2 + 2 sum J_k^2 = 1, with the sign taken
// from J_0 + 2 sum J_2k = 1.
inline std::vector<double> bessel_jn_miller(int nmax, double x) {
  const int start = miller_start(nmax, x);
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  const double two_over_x = 2.0 / x;
  double next = 0.0;   // J_{k+1}
  double cur = 1.0;    // J_k, arbitrary scale
  double sum_sq = 0.0;
  double sum_even = 0.0;
  for (int k = start; k >= 1; --k) {
    const double prev = k * two_over_x * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    // `next` now holds J_k, `cur` holds J_{k-1}.
    if (k <= nmax) out[static_cast<std::size_t>(k)] = next;
    sum_sq += 2.0 * next * next;
    if (k % 2 == 0) sum_even += 2.0 * next;
    if (std::abs(cur) > 1e140) {
      constexpr double s = 1e-140;
      cur *= s;
      next *= s;
      sum_sq *= s * s;
      sum_even *= s;
      for (int i = k; i <= nmax; ++i) out[static_cast<std::size_t>(i)] *= s;
    }
  }
  out[0] = cur;
  sum_sq += cur * cur;
  sum_even += cur;
  double norm = 1.0 / std::sqrt(sum_sq);
  if (sum_even < 0.0) norm = -norm;
  for (double& v : out) v *= norm;
  return out;
}

inline bool series_preferred(int n, double x) { return x <= 8.0 || 0.25 * x * x < n + 1.0; }

}  // namespace detail

/// J_n(x) for any integer n (negative orders through J_{-n} = (-1)^n J_n) and x >= 0.
inline double bessel_jn(int n, double x) {
  if (!(x >= 0.0)) throw std::domain_error("bessel_jn: argument must be non-negative");
  if (n < 0) return (n % 2 == 0 ? 1.0 : -1.0) * bessel_jn(-n, x);
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (detail::series_preferred(n, x)) return detail::bessel_jn_series(n, x);
  return detail::bessel_jn_miller(n, x)[static_cast<std::size_t>(n)];
}

/// J_0(x), ..., J_nmax(x) in one recurrence pass.
inline std::vector<double> bessel_jn_sequence(int nmax, double x) {
  if (nmax < 0) throw std::domain_error("bessel_jn_sequence: nmax must be non-negative");
  if (!(x >= 0.0)) throw std::domain_error("bessel_jn_sequence: argument must be non-negative");
  if (x == 0.0) {
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  if (x <= 8.0) {
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
    for (int n = 0; n <= nmax; ++n) out[static_cast<std::size_t>(n)] = detail::bessel_jn_series(n, x);
    return out;
  }
  return detail::bessel_jn_miller(nmax, x);
}

/// J_v(x) for real order v >= -1/2 and x >= 0. Integral orders take the
/// in-house recurrence path; fractional orders are delegated to Boost.Math.
inline double bessel_j(BesselOrder order, double x) {
  if (!(x >= 0.0)) {
    std::ostringstream msg;
    msg << "bessel_j: argument " << x << " is negative";
    throw std::domain_error(msg.str());
  }
  if (order.is_integer()) return bessel_jn(order.as_int(), x);
  if (x == 0.0) return order.value() > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return boost::math::cyl_bessel_j(order.value(), x);
}

inline double bessel_j(double order, double x) { return bessel_j(BesselOrder(order), x); }

/// dJ_v/dx = (v/x) J_v - J_{v+1}; valid on the whole v >= -1/2 range.
inline double bessel_j_derivative(BesselOrder order, double x) {
  const BesselOrder up(order.value() + 1.0);
  if (x == 0.0) {
    if (order.value() == 1.0) return 0.5;
    if (order.value() == 0.0) return 0.0;
  }
  return order.value() / x * bessel_j(order, x) - bessel_j(up, x);
}

/// McMahon's large-index expansion for the j-th positive zero of J_v.
inline double mcmahon_zero(BesselOrder order, int index) {
  const double mu = 4.0 * order.value() * order.value();
  const double beta = (index + 0.5 * order.value() - 0.25) * std::numbers::pi;
  const double e = 8.0 * beta;
  return beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e) -
         32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * std::pow(e, 5));
}

namespace detail {

// Root of J_v inside a sign-changing bracket: bisection to a narrow bracket,
// then safeguarded Newton started from the McMahon guess when it falls inside.
inline double polish_zero(BesselOrder order, double lo, double hi, double guess) {
  double flo = bessel_j(order, lo);
  for (int it = 0; it < 60 && hi - lo > 1e-6; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = bessel_j(order, mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double x = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
  for (int it = 0; it < 50; ++it) {
    const double f = bessel_j(order, x);
    const double df = bessel_j_derivative(order, x);
    double step = f / df;
    double nx = x - step;
    if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
    if ((f < 0.0) == (flo < 0.0)) lo = x; else hi = x;
    if (std::abs(nx - x) <= 4.0 * std::numeric_limits<double>::epsilon() * x) {
      x = nx;
      break;
    }
    x = nx;
  }
  return x;
}

}  // namespace detail

/// The first `count` positive zeros of J_v, strictly increasing. Immutable
/// after construction.
class ZeroTable {
 public:
  ZeroTable(BesselOrder order, std::size_t count) : order_(order) {
    zeros_.reserve(count);
    // Consecutive zeros of J_v, v >= -1/2, are more than 3 apart; a 0.25
    // scan step cannot skip a sign change.
    constexpr double step = 0.25;
    double x = std::max(order.value(), 0.0) + 1e-3;
    double fx = bessel_j(order, x);
    while (zeros_.size() < count) {
      const double nx = x + step;
      const double fnx = bessel_j(order, nx);
      if (fnx == 0.0) {
        zeros_.push_back(nx);
        x = nx + 2.5;
        fx = bessel_j(order, x);
        continue;
      }
      if ((fx < 0.0) != (fnx < 0.0)) {
        const int index = static_cast<int>(zeros_.size()) + 1;
        const double z = detail::polish_zero(order, x, nx, mcmahon_zero(order, index));
        zeros_.push_back(z);
        x = z + 2.5;
        fx = bessel_j(order, x);
        continue;
      }
      x = nx;
      fx = fnx;
    }
  }

  [[nodiscard]] BesselOrder order() const noexcept { return order_; }
  [[nodiscard]] std::size_t size() const noexcept { return zeros_.size(); }
  [[nodiscard]] std::span<const double> zeros() const noexcept { return zeros_; }
  /// 1-based, matching the usual z_{v,j} numbering.
  [[nodiscard]] double zero(std::size_t index) const { return zeros_.at(index - 1); }

 private:
  BesselOrder order_;
  std::vector<double> zeros_;
};

inline double bessel_zero(BesselOrder order, int index) {
  if (index < 1) throw std::domain_error("bessel_zero: index must be >= 1");
  return ZeroTable(order, static_cast<std::size_t>(index)).zero(static_cast<std::size_t>(index));
}

/// Radial sampling abscissa alpha_{vj} = b z_{vj} / Omega.
inline double normalized_zero(double b, double omega, BesselOrder order, int index) {
  if (!(omega > 0.0)) throw std::domain_error("normalized_zero: bandlimit must be positive");
  if (!(b > 0.0)) throw std::domain_error("normalized_zero: b must be positive");
  return b * bessel_zero(order, index) / omega;
}

inline int default_lambda_truncation(double x) { return static_cast<int>(std::ceil(x)) + 30; }

/// sum_{|m| <= M} J_m(x). The odd terms cancel pairwise, so this is
/// J_0(x) + 2 sum_{k>=1, 2k<=M} J_2k(x), which tends to 1 for every x.
inline double lambda_sum(double x, int truncation) {
  if (truncation < 0) throw std::domain_error("lambda_sum: truncation must be non-negative");
  const auto j = bessel_jn_sequence(truncation, x);
  double sum = 0.0;
  // Smallest terms first.
  for (int m = truncation - (truncation % 2); m >= 2; m -= 2) sum += 2.0 * j[static_cast<std::size_t>(m)];
  return sum + j[0];
}

inline double lambda_sum(double x) { return lambda_sum(x, default_lambda_truncation(x)); }

}  // namespace polar_olct
