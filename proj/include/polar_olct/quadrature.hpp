#pragma once

// Quadrature rules, compensated summation and a deterministic parallel loop.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

namespace polar_olct {

using complex = std::complex<double>;

/// Neumaier-compensated accumulator; summation order is the call order.
template <typename T>
class CompensatedSum {
 public:
  void add(T value) {
    if constexpr (std::is_same_v<T, complex>) {
      re_.add(value.real());
      im_.add(value.imag());
    } else {
      const T t = sum_ + value;
      if (std::abs(sum_) >= std::abs(value)) {
        comp_ += (sum_ - t) + value;
      } else {
        comp_ += (value - t) + sum_;
      }
      sum_ = t;
    }
  }
  [[nodiscard]] T value() const {
    if constexpr (std::is_same_v<T, complex>) {
      return {re_.value(), im_.value()};
    } else {
      return sum_ + comp_;
    }
  }

 private:
  struct Empty {};
  using Part = std::conditional_t<std::is_same_v<T, complex>, CompensatedSum<double>, Empty>;
  T sum_{};
  T comp_{};
  [[no_unique_address]] Part re_{};
  [[no_unique_address]] Part im_{};
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [lo, hi].
inline QuadratureRule gauss_legendre(std::size_t n, double lo, double hi) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: need at least one node");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 1; i <= m; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) - 0.25) / (static_cast<double>(n) + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * static_cast<double>(j) - 1.0) * z * p2 - (static_cast<double>(j) - 1.0) * p3) /
             static_cast<double>(j);
      }
      pp = static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    rule.nodes[i - 1] = mid - half * z;
    rule.nodes[n - i] = mid + half * z;
    rule.weights[i - 1] = 2.0 * half / ((1.0 - z * z) * pp * pp);
    rule.weights[n - i] = rule.weights[i - 1];
  }
  return rule;
}

/// Composite Gauss-Legendre: `panels` equal panels of `order` nodes each.
inline QuadratureRule composite_gauss_legendre(std::size_t panels, std::size_t order, double lo, double hi) {
  if (panels == 0) throw std::invalid_argument("composite_gauss_legendre: need at least one panel");
  const QuadratureRule ref = gauss_legendre(order, -1.0, 1.0);
  QuadratureRule rule;
  rule.nodes.reserve(panels * order);
  rule.weights.reserve(panels * order);
  const double width = (hi - lo) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = lo + width * static_cast<double>(p);
    for (std::size_t i = 0; i < order; ++i) {
      rule.nodes.push_back(a + 0.5 * width * (ref.nodes[i] + 1.0));
      rule.weights.push_back(0.5 * width * ref.weights[i]);
    }
  }
  return rule;
}

/// Composite rule with at least `min_nodes` nodes, rounded up to whole panels.
inline QuadratureRule radial_rule(std::size_t min_nodes, std::size_t order, double lo, double hi) {
  const std::size_t panels = std::max<std::size_t>(1, (min_nodes + order - 1) / order);
  return composite_gauss_legendre(panels, order, lo, hi);
}

/// Uniform periodic trapezoid nodes on [origin, origin + 2 pi).
inline QuadratureRule periodic_trapezoid(std::size_t n, double origin = -std::numbers::pi) {
  if (n == 0) throw std::invalid_argument("periodic_trapezoid: need at least one node");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.assign(n, 2.0 * std::numbers::pi / static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = origin + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
  }
  return rule;
}

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
/// handled by exactly one worker, so per-index results do not depend on the
/// thread count.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  }
}

inline double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta + std::numbers::pi, two_pi);
  if (t < 0.0) t += two_pi;
  return t - std::numbers::pi;
}

}  // namespace polar_olct
