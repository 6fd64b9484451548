#pragma once

// Polar OLCT / OLCHT by direct quadrature, the Fourier-transform oracle,
// azimuthal Fourier decomposition and the angular series route.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polar_olct/bessel.hpp"
#include "polar_olct/field.hpp"
#include "polar_olct/params.hpp"
#include "polar_olct/quadrature.hpp"

namespace polar_olct {

/// A quadrature that failed its node-doubling check. Carries both results.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, std::vector<complex> coarse, std::vector<complex> fine, double discrepancy)
      : std::runtime_error(what), coarse_(std::move(coarse)), fine_(std::move(fine)), discrepancy_(discrepancy) {}

  [[nodiscard]] const std::vector<complex>& coarse() const noexcept { return coarse_; }
  [[nodiscard]] const std::vector<complex>& fine() const noexcept { return fine_; }
  [[nodiscard]] double discrepancy() const noexcept { return discrepancy_; }

 private:
  std::vector<complex> coarse_;
  std::vector<complex> fine_;
  double discrepancy_;
};

struct PolarPoint {
  double r = 0.0;
  double theta = 0.0;
};

/// Tensor grid in (rho, phi), rho strictly increasing, phi uniform. Weights
/// are present when the grid doubles as a quadrature rule.
struct PolarGrid {
  std::vector<double> rho;
  std::vector<double> phi;
  std::vector<double> rho_weights;
  std::vector<double> phi_weights;

  [[nodiscard]] std::size_t size() const noexcept { return rho.size() * phi.size(); }
  [[nodiscard]] std::size_t index(std::size_t k, std::size_t q) const noexcept { return k * phi.size() + q; }
  [[nodiscard]] bool has_weights() const noexcept {
    return rho_weights.size() == rho.size() && phi_weights.size() == phi.size() && !rho.empty();
  }

  [[nodiscard]] std::vector<PolarPoint> points() const {
    std::vector<PolarPoint> out;
    out.reserve(size());
    for (double r : rho) {
      for (double t : phi) out.push_back({r, t});
    }
    return out;
  }

  /// nr radii evenly spaced on (0, rho_max] and nphi angles on [-pi, pi).
  static PolarGrid uniform(double rho_max, std::size_t nr, std::size_t nphi) {
    PolarGrid g;
    for (std::size_t k = 1; k <= nr; ++k) g.rho.push_back(rho_max * static_cast<double>(k) / static_cast<double>(nr));
    g.phi = periodic_trapezoid(nphi).nodes;
    return g;
  }

  /// Composite Gauss-Legendre radii on [0, rho_max] times a periodic
  /// trapezoid in phi, with weights.
  static PolarGrid quadrature(double rho_max, std::size_t panels, std::size_t panel_order, std::size_t nphi) {
    PolarGrid g;
    const QuadratureRule rr = composite_gauss_legendre(panels, panel_order, 0.0, rho_max);
    const QuadratureRule tr = periodic_trapezoid(nphi);
    g.rho = rr.nodes;
    g.rho_weights = rr.weights;
    g.phi = tr.nodes;
    g.phi_weights = tr.weights;
    return g;
  }
};

/// Transform values F(rho_k, phi_q), stored rho-major.
struct SpectrumField {
  PolarGrid grid;
  std::vector<complex> values;
  KernelParams params;

  [[nodiscard]] complex at(std::size_t k, std::size_t q) const { return values.at(grid.index(k, q)); }
};

struct TransformOptions {
  std::size_t radial_nodes = 0;  // 0: chosen from the phase budget
  std::size_t min_radial_nodes = 256;
  std::size_t azimuth_nodes = 512;
  std::size_t panel_order = 32;
  double r_max = 0.0;  // 0: field radius
  bool check_convergence = false;
  double tolerance = 1e-6;
  unsigned threads = 1;
};

namespace detail {

// GL nodes for a total oscillation phase budget, 8/pi nodes per radian.
inline std::size_t nodes_for_phase(double phase, std::size_t minimum) {
  return std::max(minimum, static_cast<std::size_t>(std::ceil(8.0 * phase / std::numbers::pi)));
}

inline double relative_discrepancy(const std::vector<complex>& x, const std::vector<complex>& y) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num = std::max(num, std::abs(x[i] - y[i]));
    den = std::max(den, std::abs(y[i]));
  }
  return den > 0.0 ? num / den : num;
}

inline double field_extent(const PolarField& field, const TransformOptions& opts) {
  double r = opts.r_max > 0.0 ? opts.r_max : std::min(field.radius(), field.support());
  if (!std::isfinite(r) || !(r > 0.0)) {
    throw std::invalid_argument("transform: field has no finite radius; set TransformOptions::r_max");
  }
  return r;
}

// Samples of a function on a tensor (r, theta) quadrature grid.
struct TensorSamples {
  QuadratureRule radial;
  QuadratureRule azimuth;
  std::vector<complex> values;  // r-major
};

inline TensorSamples sample_tensor(const PolarField& field, const QuadratureRule& radial, const QuadratureRule& azimuth) {
  TensorSamples s{radial, azimuth, {}};
  s.values.resize(radial.size() * azimuth.size());
  for (std::size_t k = 0; k < radial.size(); ++k) {
    for (std::size_t q = 0; q < azimuth.size(); ++q) {
      s.values[k * azimuth.size() + q] = field.evaluate(radial.nodes[k], azimuth.nodes[q]);
    }
  }
  return s;
}

// sum_{k,q} w K_p(r_k, theta_q; rho, phi) g(r_k, theta_q) r_k for every output
// point, with the polar kernel of parameter set p (b of either sign).
inline std::vector<complex> kernel_sum(const KernelParams& p, const TensorSamples& in,
                                       const std::vector<PolarPoint>& out, unsigned threads) {
  const double a = p.a();
  const double b = p.b();
  const double d = p.d();
  const std::size_t nr = in.radial.size();
  const std::size_t nt = in.azimuth.size();
  std::vector<complex> h(nr * nt);
  for (std::size_t k = 0; k < nr; ++k) {
    const double r = in.radial.nodes[k];
    for (std::size_t q = 0; q < nt; ++q) {
      const double th = in.azimuth.nodes[q];
      const double phase = a * r * r / (2.0 * b) + r * p.mu1() * std::sin(th + p.phi1()) / b;
      h[k * nt + q] = in.values[k * nt + q] * std::polar(in.radial.weights[k] * in.azimuth.weights[q] * r, phase);
    }
  }
  const complex pref = p.ell1() / (2.0 * std::numbers::pi * b);
  std::vector<complex> result(out.size());
  parallel_for(out.size(), threads, [&](std::size_t i) {
    const double rho = out[i].r;
    const double phi = out[i].theta;
    std::vector<double> cq(nt);
    for (std::size_t q = 0; q < nt; ++q) cq[q] = std::cos(in.azimuth.nodes[q] - phi);
    CompensatedSum<complex> acc;
    for (std::size_t k = 0; k < nr; ++k) {
      const double x = in.radial.nodes[k] * rho / b;
      complex row{0.0, 0.0};
      for (std::size_t q = 0; q < nt; ++q) row += h[k * nt + q] * std::polar(1.0, -x * cq[q]);
      acc.add(row);
    }
    const double outer = d * rho * rho / (2.0 * b) - rho * p.mu2() * std::sin(phi + p.phi2()) / b;
    result[i] = pref * std::polar(1.0, outer) * acc.value();
  });
  return result;
}

inline std::vector<complex> olct_quadrature(const PolarField& field, const KernelParams& params,
                                            const std::vector<PolarPoint>& out, const TransformOptions& opts,
                                            std::size_t scale) {
  const double R = field_extent(field, opts);
  double rho_max = 0.0;
  for (const auto& pt : out) rho_max = std::max(rho_max, pt.r);
  const double residual_chirp = std::abs(params.a() / (2.0 * params.b()) - field.chirp());
  const double x_max = R * (rho_max + params.mu1()) / std::abs(params.b());
  std::size_t nr = opts.radial_nodes > 0
                       ? opts.radial_nodes
                       : nodes_for_phase(residual_chirp * R * R + x_max, opts.min_radial_nodes);
  std::size_t nt = std::max(opts.azimuth_nodes,
                            static_cast<std::size_t>(std::ceil(x_max + field.K() + 40.0)));
  nr *= scale;
  nt *= scale;
  const QuadratureRule radial = radial_rule(nr, opts.panel_order, 0.0, R);
  const QuadratureRule azimuth = periodic_trapezoid(nt);
  return kernel_sum(params, sample_tensor(field, radial, azimuth), out, opts.threads);
}

template <typename Compute>
std::vector<complex> with_convergence_check(const TransformOptions& opts, const char* name, Compute&& compute) {
  std::vector<complex> coarse = compute(1);
  if (!opts.check_convergence) return coarse;
  std::vector<complex> fine = compute(2);
  const double disc = relative_discrepancy(coarse, fine);
  if (disc > 10.0 * opts.tolerance) {
    std::ostringstream msg;
    msg << name << ": node-doubled result differs by " << disc << " (tolerance " << opts.tolerance << ")";
    throw AccuracyError(msg.str(), std::move(coarse), std::move(fine), disc);
  }
  return fine;
}

}  // namespace detail

/// Forward polar OLCT of `field` on `grid` by 2D quadrature.
inline SpectrumField olct_forward(const PolarField& field, const OffsetParams& params, const PolarGrid& grid,
                                  const TransformOptions& opts = {}) {
  const auto out = grid.points();
  SpectrumField s{grid, {}, params};
  s.values = detail::with_convergence_check(
      opts, "olct_forward", [&](std::size_t scale) { return detail::olct_quadrature(field, params, out, opts, scale); });
  return s;
}

/// The printed inversion formula applied as is: the forward kernel with
/// A^-1 = (d,-b;-c,a), xi = b eta - d tau, gamma = c tau - a eta. The
/// spectrum grid must carry quadrature weights.
inline std::vector<complex> olct_inverse_literal(const SpectrumField& spectrum, const std::vector<PolarPoint>& out,
                                                 unsigned threads = 1) {
  if (!spectrum.grid.has_weights()) throw std::invalid_argument("olct_inverse: spectrum grid has no quadrature weights");
  detail::TensorSamples in{{spectrum.grid.rho, spectrum.grid.rho_weights},
                           {spectrum.grid.phi, spectrum.grid.phi_weights},
                           spectrum.values};
  return detail::kernel_sum(spectrum.params.inverse(), in, out, threads);
}

/// Inverse polar OLCT. The literal inversion kernel returns -sigma * f, so
/// the result is rescaled by -conj(sigma).
inline std::vector<complex> olct_inverse(const SpectrumField& spectrum, const std::vector<PolarPoint>& out,
                                         unsigned threads = 1) {
  auto values = olct_inverse_literal(spectrum, out, threads);
  const complex fix = -std::conj(spectrum.params.sigma());
  for (auto& v : values) v *= fix;
  return values;
}

/// Oracle: chirp-modulated 2D Fourier transform on a Cartesian
/// Gauss-Legendre grid, F = (ell1/b) e^{i[d rho^2/2b - rho mu2 sin(phi+phi2)/b]} FT[f~](rho/b, phi).
inline SpectrumField olct_via_ft(const PolarField& field, const OffsetParams& params, const PolarGrid& grid,
                                 const TransformOptions& opts = {}) {
  const auto out = grid.points();
  const double R = detail::field_extent(field, opts);
  double rho_max = 0.0;
  for (const auto& pt : out) rho_max = std::max(rho_max, pt.r);
  const double a = params.a();
  const double b = params.b();
  const double d = params.d();
  const double residual = std::abs(a / b - 2.0 * field.chirp());
  const double bandwidth = residual * std::sqrt(2.0) * R + (rho_max + params.mu1()) / b;
  const std::size_t base = opts.radial_nodes > 0 ? opts.radial_nodes
                                                 : detail::nodes_for_phase(2.0 * R * bandwidth, opts.min_radial_nodes);
  auto compute = [&](std::size_t scale) {
    const QuadratureRule axis = radial_rule(base * scale, opts.panel_order, -R, R);
    const std::size_t n = axis.size();
    std::vector<complex> g(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = axis.nodes[i];
      for (std::size_t j = 0; j < n; ++j) {
        const double y = axis.nodes[j];
        const double r2 = x * x + y * y;
        const double phase = a * r2 / (2.0 * b) + (x * params.tau()[0] + y * params.tau()[1]) / b;
        g[i * n + j] = field.evaluate(std::sqrt(r2), std::atan2(y, x)) *
                       std::polar(axis.weights[i] * axis.weights[j], phase);
      }
    }
    std::vector<complex> result(out.size());
    parallel_for(out.size(), opts.threads, [&](std::size_t o) {
      const double k = out[o].r / b;
      const double kx = k * std::cos(out[o].theta);
      const double ky = k * std::sin(out[o].theta);
      std::vector<complex> ey(n);
      for (std::size_t j = 0; j < n; ++j) ey[j] = std::polar(1.0, -ky * axis.nodes[j]);
      CompensatedSum<complex> acc;
      for (std::size_t i = 0; i < n; ++i) {
        complex row{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) row += g[i * n + j] * ey[j];
        acc.add(row * std::polar(1.0, -kx * axis.nodes[i]));
      }
      const double rho = out[o].r;
      const double outer = d * rho * rho / (2.0 * b) - rho * params.mu2() * std::sin(out[o].theta + params.phi2()) / b;
      result[o] = params.ell1() / b * std::polar(1.0, outer) * acc.value() / (2.0 * std::numbers::pi);
    });
    return result;
  };
  SpectrumField s{grid, {}, params};
  s.values = detail::with_convergence_check(opts, "olct_via_ft", compute);
  return s;
}

/// Angular phase of the Hankel-type kernels: the printed i^v or the
/// (-i)^v that the polar Fourier kernel produces.
enum class HankelPhase { printed, kernel_consistent };

inline complex hankel_phase(double order, HankelPhase phase) {
  const double s = phase == HankelPhase::printed ? 1.0 : -1.0;
  const double k = std::fmod(order, 4.0);
  // Exact quarter turns for integral orders.
  if (order == std::floor(order)) {
    const int m = ((static_cast<int>(k) % 4) + 4) % 4;
    static const complex units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return s > 0 ? units[m] : units[(4 - m) % 4];
  }
  return std::polar(1.0, s * std::numbers::pi * order / 2.0);
}

struct HankelOptions {
  std::size_t radial_nodes = 0;
  std::size_t min_radial_nodes = 256;
  std::size_t panel_order = 32;
  double r_max = 0.0;
  double field_chirp = 0.0;  // f = e^{-i chirp r^2} * smooth
  HankelPhase phase = HankelPhase::printed;
  bool check_convergence = false;
  double tolerance = 1e-6;
  unsigned threads = 1;
};

namespace detail {

inline double bessel_any(double order, double x) {
  if (order == std::floor(order)) return bessel_jn(static_cast<int>(order), x);
  return bessel_j(BesselOrder(order), x);
}

inline QuadratureRule hankel_rule(const KernelParams& p, double rho_max, const HankelOptions& opts, std::size_t scale) {
  if (!(opts.r_max > 0.0)) throw std::invalid_argument("olcht: HankelOptions::r_max must be positive");
  const double R = opts.r_max;
  const double residual = std::abs(p.a() / (2.0 * p.b()) - opts.field_chirp);
  const std::size_t n = opts.radial_nodes > 0
                            ? opts.radial_nodes
                            : nodes_for_phase(residual * R * R + R * rho_max / std::abs(p.b()), opts.min_radial_nodes);
  return radial_rule(n * scale, opts.panel_order, 0.0, R);
}

// c_v ell1 / b e^{i d rho^2 / 2b} int_0^R e^{i a r^2 / 2b} f(r) J_v(r rho / b) r dr
inline std::vector<complex> olcht_quadrature(const RadialFunction& f, double order, const KernelParams& p,
                                             std::span<const double> rho, const HankelOptions& opts,
                                             std::size_t scale) {
  double rho_max = 0.0;
  for (double x : rho) rho_max = std::max(rho_max, x);
  const QuadratureRule rule = hankel_rule(p, rho_max, opts, scale);
  const double a = p.a();
  const double b = p.b();
  std::vector<complex> g(rule.size());
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double r = rule.nodes[k];
    g[k] = f(r) * std::polar(rule.weights[k] * r, a * r * r / (2.0 * b));
  }
  const complex pref = hankel_phase(order, opts.phase) * p.ell1() / b;
  std::vector<complex> out(rho.size());
  parallel_for(rho.size(), opts.threads, [&](std::size_t i) {
    CompensatedSum<complex> acc;
    for (std::size_t k = 0; k < rule.size(); ++k) acc.add(g[k] * bessel_any(order, rule.nodes[k] * rho[i] / b));
    out[i] = pref * std::polar(1.0, p.d() * rho[i] * rho[i] / (2.0 * b)) * acc.value();
  });
  return out;
}

}  // namespace detail

/// v-th order OLCHT (reduced kernel: lambda1 = lambda2 = 1, no free-m phase).
inline std::vector<complex> olcht_forward(const RadialFunction& f, BesselOrder v, const OffsetParams& params,
                                          std::span<const double> rho, const HankelOptions& opts) {
  return detail::with_convergence_check(
      TransformOptions{.check_convergence = opts.check_convergence, .tolerance = opts.tolerance}, "olcht_forward",
      [&](std::size_t scale) { return detail::olcht_quadrature(f, v.value(), params, rho, opts, scale); });
}

/// Exact inverse of olcht_forward from transform values on a weighted rule:
/// f(r) = conj(c_v ell1)/b e^{-i a r^2/2b} int e^{-i d rho^2/2b} H(rho) J_v(rho r/b) rho drho.
inline std::vector<complex> olcht_inverse(const QuadratureRule& rho_rule, std::span<const complex> values,
                                          BesselOrder v, const OffsetParams& params, std::span<const double> r,
                                          HankelPhase phase = HankelPhase::printed, unsigned threads = 1) {
  if (values.size() != rho_rule.size()) throw std::invalid_argument("olcht_inverse: value count mismatch");
  const double b = params.b();
  std::vector<complex> g(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double rho = rho_rule.nodes[k];
    g[k] = values[k] * std::polar(rho_rule.weights[k] * rho, -params.d() * rho * rho / (2.0 * b));
  }
  const complex pref = std::conj(hankel_phase(v.value(), phase) * params.ell1()) / b;
  std::vector<complex> out(r.size());
  parallel_for(r.size(), threads, [&](std::size_t i) {
    CompensatedSum<complex> acc;
    for (std::size_t k = 0; k < g.size(); ++k) acc.add(g[k] * bessel_j(v, rho_rule.nodes[k] * r[i] / b));
    out[i] = pref * std::polar(1.0, -params.a() * r[i] * r[i] / (2.0 * b)) * acc.value();
  });
  return out;
}

/// The printed inversion formula, i^v ell2 / b e^{-i a r^2/2b} int ...; it
/// composes with olcht_forward to (-1)^v sigma times the identity.
inline std::vector<complex> olcht_inverse_literal(const QuadratureRule& rho_rule, std::span<const complex> values,
                                                  BesselOrder v, const OffsetParams& params,
                                                  std::span<const double> r, unsigned threads = 1) {
  auto out = olcht_inverse(rho_rule, values, v, params, r, HankelPhase::printed, threads);
  const complex exact = std::conj(hankel_phase(v.value(), HankelPhase::printed) * params.ell1());
  const complex literal = hankel_phase(v.value(), HankelPhase::printed) * params.ell2();
  for (auto& x : out) x *= literal / exact;
  return out;
}

using Field2D = std::function<complex(double, double)>;

/// f_n(r) = (1/2pi) int f(r, theta) e^{-in theta} dtheta by the trapezoid rule,
/// for |n| <= K; element n + K of the result.
inline std::vector<RadialFunction> fourier_coefficients(Field2D f, int K, std::size_t nodes = 0) {
  if (K < 0) throw std::invalid_argument("fourier_coefficients: K must be non-negative");
  const std::size_t n_theta = std::max<std::size_t>(nodes, static_cast<std::size_t>(4 * K + 8));
  auto shared = std::make_shared<Field2D>(std::move(f));
  std::vector<RadialFunction> out;
  for (int n = -K; n <= K; ++n) {
    out.emplace_back([shared, n, n_theta](double r) {
      CompensatedSum<complex> acc;
      for (std::size_t q = 0; q < n_theta; ++q) {
        const double t = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(n_theta);
        acc.add((*shared)(r, t) * std::polar(1.0, -n * t));
      }
      return acc.value() / static_cast<double>(n_theta);
    });
  }
  return out;
}

inline std::vector<RadialFunction> fourier_coefficients(const PolarField& field, int K, std::size_t nodes = 0) {
  auto copy = std::make_shared<PolarField>(field);
  return fourier_coefficients([copy](double r, double t) { return copy->evaluate(r, t); }, K, nodes);
}

/// How the angular series assembles the transform.
///  order_n:          sum_n H_n[f_n](rho) e^{in phi}
///  order_2n:         sum_n H_2n[f_n](rho) e^{in phi}
///  per_m_expansion:  the exact Jacobi-Anger expansion in the offset tau,
///                    truncated at |m| <= M; valid for any tau, eta.
enum class SeriesRoute { order_n, order_2n, per_m_expansion };

struct SeriesOptions {
  SeriesRoute route = SeriesRoute::order_n;
  HankelPhase phase = HankelPhase::kernel_consistent;
  int msum = -1;  // per_m_expansion truncation; -1: ceil(mu1 R / b) + 20
  HankelOptions hankel{};
};

inline SpectrumField olct_series(const PolarField& field, const OffsetParams& params, const PolarGrid& grid,
                                 const SeriesOptions& opts = {}) {
  HankelOptions ho = opts.hankel;
  ho.phase = opts.phase;
  if (!(ho.r_max > 0.0)) ho.r_max = std::min(field.radius(), field.support());
  if (!std::isfinite(ho.r_max)) throw std::invalid_argument("olct_series: field has no finite radius");
  ho.field_chirp = field.chirp();
  SpectrumField s{grid, std::vector<complex>(grid.size()), params};
  const std::size_t np = grid.phi.size();

  if (opts.route != SeriesRoute::per_m_expansion) {
    for (const auto& term : field.terms()) {
      const int order = opts.route == SeriesRoute::order_n ? term.n : 2 * term.n;
      auto h = detail::with_convergence_check(
          TransformOptions{.check_convergence = ho.check_convergence, .tolerance = ho.tolerance}, "olct_series",
          [&](std::size_t scale) {
            return detail::olcht_quadrature(term.profile, order, params, grid.rho, ho, scale);
          });
      for (std::size_t k = 0; k < grid.rho.size(); ++k) {
        for (std::size_t q = 0; q < np; ++q) s.values[k * np + q] += h[k] * std::polar(1.0, term.n * grid.phi[q]);
      }
    }
    return s;
  }

  const double a = params.a();
  const double b = params.b();
  const double R = ho.r_max;
  const int M = opts.msum >= 0 ? opts.msum : static_cast<int>(std::ceil(params.mu1() * R / std::abs(b))) + 20;
  const int K = field.K();
  const int pmax = K + M;
  double rho_max = 0.0;
  for (double x : grid.rho) rho_max = std::max(rho_max, x);
  const QuadratureRule rule = detail::hankel_rule(params, rho_max + params.mu1(), ho, 1);

  // Per node: weighted chirped coefficients and J_m(r mu1 / b), m = 0..M.
  std::vector<std::vector<complex>> fn(rule.size(), std::vector<complex>(2 * K + 1));
  std::vector<std::vector<double>> jm(rule.size());
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double r = rule.nodes[k];
    const complex w = std::polar(rule.weights[k] * r, a * r * r / (2.0 * b));
    for (int n = -K; n <= K; ++n) fn[k][n + K] = w * field.coefficient(n, r);
    jm[k] = bessel_jn_sequence(M, r * params.mu1() / b);
  }
  auto jsigned = [](const std::vector<double>& seq, int m) {
    const double v = seq[static_cast<std::size_t>(std::abs(m))];
    return (m < 0 && (m % 2 != 0)) ? -v : v;
  };

  parallel_for(grid.rho.size(), ho.threads, [&](std::size_t i) {
    const double rho = grid.rho[i];
    // C_p = sum_{n+m=p} (-i)^p e^{i m phi1} int ... J_m(r mu1/b) J_p(r rho/b) f_n r dr
    std::vector<CompensatedSum<complex>> cp(static_cast<std::size_t>(2 * pmax + 1));
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const auto jp = bessel_jn_sequence(pmax, rule.nodes[k] * rho / b);
      for (int n = -K; n <= K; ++n) {
        const complex fk = fn[k][n + K];
        if (fk == complex{0.0, 0.0}) continue;
        for (int m = -M; m <= M; ++m) {
          const int p = n + m;
          if (std::abs(p) > pmax) continue;
          cp[p + pmax].add(fk * (jsigned(jm[k], m) * jsigned(jp, p)) * std::polar(1.0, m * params.phi1()));
        }
      }
    }
    for (std::size_t q = 0; q < np; ++q) {
      const double phi = grid.phi[q];
      CompensatedSum<complex> acc;
      for (int p = -pmax; p <= pmax; ++p) {
        acc.add(hankel_phase(p, HankelPhase::kernel_consistent) * cp[p + pmax].value() * std::polar(1.0, p * phi));
      }
      const double outer = params.d() * rho * rho / (2.0 * b) - rho * params.mu2() * std::sin(phi + params.phi2()) / b;
      s.values[i * np + q] = params.ell1() / b * std::polar(1.0, outer) * acc.value();
    }
  });
  return s;
}

/// |(1/2pi) int |F(rho, phi)|^2 dphi - sum_n |H_n(rho)|^2| with F sampled on
/// a uniform azimuth grid at one radius.
inline double parseval_check(std::span<const complex> spectrum_at_rho, std::span<const complex> terms) {
  if (spectrum_at_rho.empty()) return 0.0;
  CompensatedSum<double> lhs;
  for (const complex& x : spectrum_at_rho) lhs.add(std::norm(x));
  CompensatedSum<double> rhs;
  for (const complex& x : terms) rhs.add(std::norm(x));
  return std::abs(lhs.value() / static_cast<double>(spectrum_at_rho.size()) - rhs.value());
}

}  // namespace polar_olct
