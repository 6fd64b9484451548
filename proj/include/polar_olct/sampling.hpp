#pragma once

// Polar sampling grids, azimuthal (Stark) interpolation, the radial
// interpolating function and the four reconstruction series.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "polar_olct/bessel.hpp"
#include "polar_olct/field.hpp"
#include "polar_olct/params.hpp"
#include "polar_olct/quadrature.hpp"
#include "polar_olct/transforms.hpp"

namespace polar_olct {

inline double azimuth_node(int l, int K) {
  return 2.0 * std::numbers::pi * static_cast<double>(l) / static_cast<double>(2 * K + 1);
}

/// o_l(theta) = sin[(2K+1)(theta - theta_l)/2] / [(2K+1) sin((theta - theta_l)/2)].
inline double stark_kernel(double theta, int l, int K) {
  if (K < 0 || l < 0 || l > 2 * K) throw std::invalid_argument("stark_kernel: need 0 <= l <= 2K");
  const int n = 2 * K + 1;
  const double delta = wrap_angle(theta - azimuth_node(l, K));
  const double s = std::sin(0.5 * delta);
  if (std::abs(s) < 1e-3) {
    // Equivalent finite form (1/n) sum_{|k|<=K} e^{ik delta}; no 0/0.
    double sum = 1.0;
    for (int k = 1; k <= K; ++k) sum += 2.0 * std::cos(k * delta);
    return sum / n;
  }
  return std::sin(0.5 * n * delta) / (n * s);
}

inline complex stark_interpolate(std::span<const complex> values, double theta, int K) {
  if (K < 0 || values.size() != static_cast<std::size_t>(2 * K + 1)) {
    throw std::invalid_argument("stark_interpolate: expected exactly 2K+1 values");
  }
  complex sum{0.0, 0.0};
  for (int l = 0; l <= 2 * K; ++l) sum += values[static_cast<std::size_t>(l)] * stark_kernel(theta, l, K);
  return sum;
}

/// theta_{vj}(r) = 2b (mu2 + alpha) J_v(Omega r / b) /
///                 (Omega J_{v+1}(z) (alpha - r)(alpha + r + 2 mu2)),  alpha = b z / Omega.
inline double theta_kernel(double r, double alpha, double z, BesselOrder v, double b, double omega, double mu2) {
  const double delta = r - alpha;
  if (std::abs(delta) < 1e-6 * alpha) {
    return (1.0 - delta / (2.0 * alpha)) / (1.0 + delta / (2.0 * (alpha + mu2)));
  }
  const double num = 2.0 * b * (mu2 + alpha) * bessel_j(v, omega * r / b);
  const double den = omega * bessel_j(BesselOrder(v.value() + 1.0), z) * (alpha - r) * (alpha + r + 2.0 * mu2);
  return num / den;
}

inline double theta_kernel(double r, double alpha, double z, BesselOrder v, const KernelParams& params, double omega) {
  return theta_kernel(r, alpha, z, v, params.b(), omega, params.mu2());
}

enum class TheoremMode { theorem1, theorem2 };

/// Radial abscissae alpha_{.j} = b z_{.j} / Omega (per angular order for
/// theorem1, one fixed order for theorem2) times 2K+1 uniform azimuths.
class SampleGrid {
 public:
  static SampleGrid theorem1(double b, double omega, int K, int N) {
    SampleGrid g(TheoremMode::theorem1, b, omega, K, N, 0);
    for (int n = 0; n <= K; ++n) g.add_order(n);
    return g;
  }
  static SampleGrid theorem2(double b, double omega, int K, int N, int v) {
    if (v < 0) throw std::invalid_argument("SampleGrid: order must be non-negative");
    SampleGrid g(TheoremMode::theorem2, b, omega, K, N, v);
    g.add_order(v);
    return g;
  }

  [[nodiscard]] TheoremMode mode() const noexcept { return mode_; }
  [[nodiscard]] int K() const noexcept { return K_; }
  [[nodiscard]] int N() const noexcept { return N_; }
  [[nodiscard]] double omega() const noexcept { return omega_; }
  [[nodiscard]] double b() const noexcept { return b_; }
  [[nodiscard]] int fixed_order() const noexcept { return fixed_order_; }
  [[nodiscard]] int azimuth_count() const noexcept { return 2 * K_ + 1; }
  [[nodiscard]] double theta(int l) const { return azimuth_node(l, K_); }

  /// Bessel order whose zeros carry angular order n (z_{-n,j} = z_{n,j}).
  [[nodiscard]] int order_for(int n) const { return mode_ == TheoremMode::theorem1 ? std::abs(n) : fixed_order_; }
  [[nodiscard]] std::span<const double> zeros_for(int n) const { return zeros_.at(order_for(n)).zeros().first(N_); }
  [[nodiscard]] double alpha(int n, int j) const { return b_ * zeros_for(n)[static_cast<std::size_t>(j - 1)] / omega_; }

  /// Largest radius of the reliable region, 0.9 times the smallest last abscissa.
  [[nodiscard]] double reliable_radius() const {
    double r = std::numeric_limits<double>::infinity();
    for (const auto& [v, table] : zeros_) r = std::min(r, 0.9 * b_ * table.zero(static_cast<std::size_t>(N_)) / omega_);
    return r;
  }

  /// Samples this grid holds: (2K+1)^2 N for theorem1 (one (2K+1)-angle ring
  /// per order and zero), (2K+1) N for theorem2.
  [[nodiscard]] std::size_t size() const {
    const std::size_t az = static_cast<std::size_t>(azimuth_count());
    const std::size_t slabs = mode_ == TheoremMode::theorem1 ? az : 1;
    return slabs * static_cast<std::size_t>(N_) * az;
  }

  /// Flat index of sample (n, j, l); n is ignored in theorem2 mode.
  [[nodiscard]] std::size_t index(int n, int j, int l) const {
    const std::size_t az = static_cast<std::size_t>(azimuth_count());
    const std::size_t slab = mode_ == TheoremMode::theorem1 ? static_cast<std::size_t>(n + K_) : 0;
    return (slab * static_cast<std::size_t>(N_) + static_cast<std::size_t>(j - 1)) * az + static_cast<std::size_t>(l);
  }

  /// Angular orders with their own radial slab.
  [[nodiscard]] std::vector<int> slab_orders() const {
    if (mode_ == TheoremMode::theorem2) return {0};
    std::vector<int> out;
    for (int n = -K_; n <= K_; ++n) out.push_back(n);
    return out;
  }

 private:
  SampleGrid(TheoremMode mode, double b, double omega, int K, int N, int v)
      : mode_(mode), K_(K), N_(N), omega_(omega), b_(b), fixed_order_(v) {
    if (!(b > 0.0)) throw std::invalid_argument("SampleGrid: b must be positive");
    if (!(omega > 0.0)) throw std::invalid_argument("SampleGrid: bandlimit must be positive");
    if (K < 0) throw std::invalid_argument("SampleGrid: K must be non-negative");
    if (N < 1) throw std::invalid_argument("SampleGrid: N must be at least 1");
  }
  void add_order(int v) { zeros_.emplace(v, ZeroTable(BesselOrder(v), static_cast<std::size_t>(N_))); }

  TheoremMode mode_;
  int K_;
  int N_;
  double omega_;
  double b_;
  int fixed_order_;
  std::map<int, ZeroTable> zeros_;
};

struct SampleSet {
  SampleGrid grid;
  std::vector<complex> values;

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
  [[nodiscard]] complex at(int n, int j, int l) const { return values.at(grid.index(n, j, l)); }
};

/// Values of g(r, theta) at every grid point.
inline SampleSet sample_function(const Field2D& g, const SampleGrid& grid) {
  SampleSet s{grid, std::vector<complex>(grid.size())};
  for (int n : grid.slab_orders()) {
    for (int j = 1; j <= grid.N(); ++j) {
      const double r = grid.alpha(n, j);
      for (int l = 0; l < grid.azimuth_count(); ++l) s.values[grid.index(n, j, l)] = g(r, grid.theta(l));
    }
  }
  return s;
}

inline SampleSet sample_field(const PolarField& field, const SampleGrid& grid) {
  return sample_function([&field](double r, double t) { return field.evaluate(r, t); }, grid);
}

/// Transform samples F(alpha, theta_l) for the spectrum-domain series, one
/// angular-series evaluation per radial slab.
inline SampleSet sample_spectrum(const PolarField& field, const OffsetParams& params, const SampleGrid& grid,
                                 const SeriesOptions& opts = {}) {
  SampleSet s{grid, std::vector<complex>(grid.size())};
  PolarGrid pg;
  for (int l = 0; l < grid.azimuth_count(); ++l) pg.phi.push_back(grid.theta(l));
  for (int n : grid.slab_orders()) {
    pg.rho.clear();
    for (int j = 1; j <= grid.N(); ++j) pg.rho.push_back(grid.alpha(n, j));
    const auto F = olct_series(field, params, pg, opts);
    for (int j = 1; j <= grid.N(); ++j) {
      for (int l = 0; l < grid.azimuth_count(); ++l) {
        s.values[grid.index(n, j, l)] = F.at(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(l));
      }
    }
  }
  return s;
}

/// Closed-form sample-count law: ((2K+1)N)^2 for theorem1, (2K+1)N^2 for theorem2.
inline std::size_t sample_count(int K, int N, TheoremMode mode) {
  if (K < 0 || N < 1) throw std::invalid_argument("sample_count: need K >= 0 and N >= 1");
  const std::size_t k = static_cast<std::size_t>(2 * K + 1);
  const std::size_t n = static_cast<std::size_t>(N);
  return mode == TheoremMode::theorem1 ? (k * n) * (k * n) : k * n * n;
}

/// Samples the reconstruction series actually read: (2K+1)^2 N and (2K+1) N.
inline std::size_t consumed_sample_count(int K, int N, TheoremMode mode) {
  if (K < 0 || N < 1) throw std::invalid_argument("consumed_sample_count: need K >= 0 and N >= 1");
  const std::size_t k = static_cast<std::size_t>(2 * K + 1);
  return (mode == TheoremMode::theorem1 ? k * k : k) * static_cast<std::size_t>(N);
}

/// reduced: lambda sums collapsed to 1 (m = 0 only, mu2 = 0 in theta).
/// strict:  the printed m-sum with truncation M and mu2 in theta.
enum class KernelMode { reduced, strict };
/// normalized: no prefactor. printed: (-1)^v sigma.
enum class Prefactor { normalized, printed };
/// Inner chirp of the spectrum-domain series: e^{-i d alpha^2/2b} or e^{-i a alpha^2/2b}.
enum class ChirpVariant { d_chirp, a_chirp };

struct ReconstructionOptions {
  KernelMode kernel = KernelMode::reduced;
  int msum = -1;  // -1: default truncation
  Prefactor prefactor = Prefactor::normalized;
  ChirpVariant chirp = ChirpVariant::d_chirp;
};

inline int default_msum(const KernelParams& params, double r, double omega) {
  if (params.offsets_vanish()) return 0;
  const double mu = std::max(params.mu1(), params.mu2());
  return static_cast<int>(std::ceil(mu * std::max(r, omega) / params.b())) + 20;
}

namespace detail {

enum class Domain { space, spectrum };

inline complex series_prefactor(int v, const KernelParams& p, Prefactor pre) {
  if (pre == Prefactor::normalized) return {1.0, 0.0};
  return (v % 2 == 0 ? 1.0 : -1.0) * p.sigma();
}

// One radial series in either domain. Space (sampling theorems):
//   P e^{-i a r^2/2b} sum_m J_m(mu1 r/b) J_m(mu2 Omega/b)^2 sum_j J_m(mu1 alpha_j/b) e^{i a alpha_j^2/2b} c_j theta_j(r)
// Spectrum (corollaries):
//   P e^{i d rho^2/2b} sum_m J_m(mu2 rho/b) J_m(mu1 Omega/b)^2 sum_j J_m(mu1 alpha_j/b) e^{-i c alpha_j^2/2b} c_j theta_j(rho)
// In reduced mode only m = 0 with unit weights survives and theta uses mu2 = 0.
inline complex radial_series(std::span<const complex> coeffs, std::span<const double> zeros, int v,
                             const KernelParams& p, double omega, double r, const ReconstructionOptions& opts,
                             Domain domain) {
  if (zeros.size() < coeffs.size()) throw std::invalid_argument("reconstruction: fewer zeros than samples");
  const double a = p.a();
  const double b = p.b();
  const double d = p.d();
  const BesselOrder order(v);
  const bool strict = opts.kernel == KernelMode::strict;
  const double mu2 = strict ? p.mu2() : 0.0;
  const double outer = domain == Domain::space ? -a * r * r / (2.0 * b) : d * r * r / (2.0 * b);
  const double inner_coef =
      domain == Domain::space ? a / (2.0 * b) : -(opts.chirp == ChirpVariant::d_chirp ? d : a) / (2.0 * b);
  const double mu_probe = domain == Domain::space ? p.mu1() : p.mu2();
  const double mu_band = domain == Domain::space ? p.mu2() : p.mu1();
  const int M = strict ? (opts.msum >= 0 ? opts.msum : default_msum(p, r, omega)) : 0;

  std::vector<complex> base(coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double alpha = b * zeros[j] / omega;
    base[j] = coeffs[j] * std::polar(theta_kernel(r, alpha, zeros[j], order, b, omega, mu2), inner_coef * alpha * alpha);
  }

  CompensatedSum<complex> acc;
  if (!strict) {
    for (const complex& x : base) acc.add(x);
  } else {
    const auto jr = bessel_jn_sequence(M, mu_probe * r / b);
    const auto jb = bessel_jn_sequence(M, mu_band * omega / b);
    std::vector<std::vector<double>> ja(coeffs.size());
    for (std::size_t j = 0; j < coeffs.size(); ++j) ja[j] = bessel_jn_sequence(M, p.mu1() * (b * zeros[j] / omega) / b);
    for (int m = -M; m <= M; ++m) {
      // J_m(x) J_m(y)^2 J_m(z): the sign of J_{-m} enters four times and cancels.
      const std::size_t am = static_cast<std::size_t>(std::abs(m));
      const double w = jr[am] * jb[am] * jb[am];
      for (std::size_t j = 0; j < coeffs.size(); ++j) acc.add(base[j] * (w * ja[j][am]));
    }
  }
  return series_prefactor(v, p, opts.prefactor) * std::polar(1.0, outer) * acc.value();
}

}  // namespace detail

/// Isotropic / single-coefficient reconstruction from samples at alpha_{vj}.
inline complex reconstruct_isotropic(std::span<const complex> samples, const ZeroTable& zeros, const KernelParams& params,
                                     double omega, double r, const ReconstructionOptions& opts = {}) {
  return detail::radial_series(samples, zeros.zeros(), zeros.order().as_int(), params, omega, r, opts,
                               detail::Domain::space);
}

inline complex reconstruct_coefficient(std::span<const complex> samples, const ZeroTable& zeros,
                                       const KernelParams& params, double omega, double r,
                                       const ReconstructionOptions& opts = {}) {
  return reconstruct_isotropic(samples, zeros, params, omega, r, opts);
}

/// Reconstructs a field (theorem1/theorem2) or its transform
/// (corollary1/corollary2) from a SampleSet. Angular coefficients are
/// computed once at construction.
class Reconstructor {
 public:
  enum class Target { field, spectrum };

  Reconstructor(SampleSet samples, const KernelParams& params, const ReconstructionOptions& opts = {},
                Target target = Target::field)
      : samples_(std::move(samples)), params_(params), opts_(opts), target_(target) {
    const SampleGrid& g = samples_.grid;
    if (samples_.values.size() != g.size()) throw std::invalid_argument("reconstruction: sample count does not match grid");
    if (std::abs(g.b() - params_.b()) > 1e-12 * std::abs(params_.b())) {
      throw std::invalid_argument("reconstruction: grid built for a different b");
    }
    const int az = g.azimuth_count();
    if (g.mode() == TheoremMode::theorem1) {
      // c_{nj} = 1/(2K+1) sum_l f(alpha_nj, theta_l) e^{-in theta_l}
      for (int n = -g.K(); n <= g.K(); ++n) {
        std::vector<complex> c(static_cast<std::size_t>(g.N()));
        for (int j = 1; j <= g.N(); ++j) {
          CompensatedSum<complex> acc;
          for (int l = 0; l < az; ++l) acc.add(samples_.at(n, j, l) * std::polar(1.0, -n * g.theta(l)));
          c[static_cast<std::size_t>(j - 1)] = acc.value() / static_cast<double>(az);
        }
        coeffs_.push_back(std::move(c));
      }
    } else {
      for (int l = 0; l < az; ++l) {
        std::vector<complex> c(static_cast<std::size_t>(g.N()));
        for (int j = 1; j <= g.N(); ++j) c[static_cast<std::size_t>(j - 1)] = samples_.at(0, j, l);
        coeffs_.push_back(std::move(c));
      }
    }
  }

  [[nodiscard]] complex operator()(double r, double theta) const {
    const SampleGrid& g = samples_.grid;
    const auto domain = target_ == Target::field ? detail::Domain::space : detail::Domain::spectrum;
    CompensatedSum<complex> acc;
    if (g.mode() == TheoremMode::theorem1) {
      for (int n = -g.K(); n <= g.K(); ++n) {
        const auto& c = coeffs_[static_cast<std::size_t>(n + g.K())];
        const complex radial =
            detail::radial_series(c, g.zeros_for(n), g.order_for(n), params_, g.omega(), r, opts_, domain);
        acc.add(radial * std::polar(1.0, n * theta));
      }
    } else {
      for (int l = 0; l < g.azimuth_count(); ++l) {
        const double o = stark_kernel(theta, l, g.K());
        const auto& c = coeffs_[static_cast<std::size_t>(l)];
        acc.add(o * detail::radial_series(c, g.zeros_for(0), g.fixed_order(), params_, g.omega(), r, opts_, domain));
      }
    }
    return acc.value();
  }

  [[nodiscard]] const SampleSet& samples() const noexcept { return samples_; }

 private:
  SampleSet samples_;
  KernelParams params_;
  ReconstructionOptions opts_;
  Target target_;
  std::vector<std::vector<complex>> coeffs_;
};

/// theorem1 grids (per-order zeros, exponential azimuth factor) or theorem2
/// grids (fixed-order zeros, Stark azimuth factor), chosen by the grid mode.
inline complex reconstruct_field(const SampleSet& samples, const KernelParams& params, double r, double theta,
                                 const ReconstructionOptions& opts = {}) {
  return Reconstructor(samples, params, opts, Reconstructor::Target::field)(r, theta);
}

/// Spectrum-domain series on a theorem1 or theorem2 grid, applied to
/// transform samples F(alpha, phi_l).
inline complex reconstruct_spectrum(const SampleSet& samples, const KernelParams& params, double rho, double phi,
                                    const ReconstructionOptions& opts = {}) {
  return Reconstructor(samples, params, opts, Reconstructor::Target::spectrum)(rho, phi);
}

struct ProbeError {
  double r = 0.0;
  double theta = 0.0;
  complex truth;
  complex recon;
  [[nodiscard]] double abs_error() const { return std::abs(truth - recon); }
};

struct ReconstructionReport {
  std::string mode;
  int K = 0;
  int N = 0;
  int M = 0;
  std::size_t sample_count = 0;           // closed-form law
  std::size_t consumed_sample_count = 0;  // samples the series read
  std::vector<ProbeError> probes;
  double max_abs_error = 0.0;
  double mean_abs_error = 0.0;
  double max_rel_error = 0.0;  // max |err| / max |truth|
  double elapsed_seconds = 0.0;
};

/// nr x ntheta probes on (0, radius] x [-pi, pi).
inline std::vector<PolarPoint> probe_grid(double radius, int nr, int ntheta) {
  std::vector<PolarPoint> out;
  for (int i = 0; i < nr; ++i) {
    const double r = radius * (i + 1.0) / nr;
    for (int q = 0; q < ntheta; ++q) out.push_back({r, -std::numbers::pi + 2.0 * std::numbers::pi * q / ntheta});
  }
  return out;
}

inline ReconstructionReport measure_reconstruction(const std::string& mode, const std::vector<PolarPoint>& probes,
                                                   const std::function<complex(double, double)>& truth,
                                                   const std::function<complex(double, double)>& recon,
                                                   unsigned threads = 1) {
  ReconstructionReport rep;
  rep.mode = mode;
  const auto start = std::chrono::steady_clock::now();
  rep.probes.resize(probes.size());
  parallel_for(probes.size(), threads, [&](std::size_t i) {
    rep.probes[i] = {probes[i].r, probes[i].theta, truth(probes[i].r, probes[i].theta),
                     recon(probes[i].r, probes[i].theta)};
  });
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double peak = 0.0;
  CompensatedSum<double> total;
  for (const auto& p : rep.probes) {
    rep.max_abs_error = std::max(rep.max_abs_error, p.abs_error());
    peak = std::max(peak, std::abs(p.truth));
    total.add(p.abs_error());
  }
  if (!rep.probes.empty()) rep.mean_abs_error = total.value() / static_cast<double>(rep.probes.size());
  rep.max_rel_error = peak > 0.0 ? rep.max_abs_error / peak : rep.max_abs_error;
  return rep;
}

}  // namespace polar_olct
