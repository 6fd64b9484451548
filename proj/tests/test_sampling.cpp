#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "polar_olct/field.hpp"
#include "polar_olct/sampling.hpp"
#include "polar_olct/transforms.hpp"

using namespace polar_olct;

namespace {

constexpr double pi = std::numbers::pi;

// Direct evaluation of the interpolating function, no limit branch.
double theta_direct(double r, double alpha, double z, int v, double b, double omega, double mu2) {
  return 2.0 * b * (mu2 + alpha) * std::cyl_bessel_j(v, omega * r / b) /
         (omega * std::cyl_bessel_j(v + 1.0, z) * (alpha * alpha - r * r + 2.0 * mu2 * (alpha - r)));
}

FourierBesselSpectrum isotropic_spectrum(double omega, int v, std::size_t j_spec, std::uint64_t seed) {
  auto s = FourierBesselSpectrum::random(omega, 0, j_spec, seed, OrderMap::fixed, v);
  return s;
}

}  // namespace

TEST(Stark, KroneckerAndPartitionOfUnity) {
  for (int K : {0, 1, 2, 4}) {
    for (int l = 0; l <= 2 * K; ++l) {
      EXPECT_NEAR(stark_kernel(azimuth_node(l, K), l, K), 1.0, 1e-15);
      EXPECT_NEAR(stark_kernel(azimuth_node(l, K) + 2.0 * pi, l, K), 1.0, 1e-12);
      for (int lp = 0; lp <= 2 * K; ++lp) {
        if (lp != l) EXPECT_NEAR(stark_kernel(azimuth_node(lp, K), l, K), 0.0, 1e-12);
      }
    }
    for (double t = -7.0; t < 7.0; t += 0.013) {
      double sum = 0.0;
      for (int l = 0; l <= 2 * K; ++l) sum += stark_kernel(t, l, K);
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
  EXPECT_THROW(stark_kernel(0.0, 5, 2), std::invalid_argument);
  EXPECT_THROW(stark_kernel(0.0, -1, 2), std::invalid_argument);
}

TEST(Stark, SmallOffsetBranchIsContinuous) {
  const int K = 3;
  for (double eps : {0.9e-3, 1.1e-3, 2.1e-3, 1.9e-3}) {
    const double t = azimuth_node(2, K) + eps;
    double ref = 1.0;
    for (int k = 1; k <= K; ++k) ref += 2.0 * std::cos(k * eps);
    EXPECT_NEAR(stark_kernel(t, 2, K), ref / (2 * K + 1), 1e-13);
  }
}

TEST(Stark, QuadratureIdentity) {
  const int K = 2;
  const int l = 1;
  const int n = -1;
  const int nodes = 8192;
  complex sum{0.0, 0.0};
  for (int q = 0; q < nodes; ++q) {
    const double t = -pi + 2.0 * pi * q / nodes;
    sum += stark_kernel(t, l, K) * std::polar(1.0, -n * t);
  }
  sum *= 2.0 * pi / nodes;
  const complex expected = (2.0 * pi / (2 * K + 1)) * std::polar(1.0, -n * 2.0 * pi * l / (2 * K + 1));
  EXPECT_NEAR(std::abs(sum - expected), 0.0, 1e-10);
}

TEST(Stark, InterpolationIsExactOnTrigonometricPolynomials) {
  {
    const int K = 3;
    std::vector<complex> v;
    for (int l = 0; l <= 2 * K; ++l) v.push_back(std::polar(1.0, K * azimuth_node(l, K)));
    EXPECT_NEAR(std::abs(stark_interpolate(v, 0.37, K) - std::polar(1.0, K * 0.37)), 0.0, 1e-12);
  }
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int K : {0, 1, 2, 5}) {
    std::vector<complex> c;
    for (int n = -K; n <= K; ++n) c.emplace_back(u(rng), u(rng));
    auto poly = [&](double t) {
      complex s{0.0, 0.0};
      for (int n = -K; n <= K; ++n) s += c[n + K] * std::polar(1.0, n * t);
      return s;
    };
    std::vector<complex> v;
    for (int l = 0; l <= 2 * K; ++l) v.push_back(poly(azimuth_node(l, K)));
    for (int i = 0; i < 200; ++i) {
      const double t = 4.0 * u(rng);
      EXPECT_NEAR(std::abs(stark_interpolate(v, t, K) - poly(t)), 0.0, 1e-12);
    }
    for (int l = 0; l <= 2 * K; ++l) EXPECT_NEAR(std::abs(stark_interpolate(v, azimuth_node(l, K), K) - v[l]), 0.0, 1e-13);
    const std::vector<complex> constant(static_cast<std::size_t>(2 * K + 1), complex(0.4, -2.0));
    EXPECT_NEAR(std::abs(stark_interpolate(constant, 1.234, K) - complex(0.4, -2.0)), 0.0, 1e-12);
  }
  EXPECT_THROW(stark_interpolate(std::vector<complex>(4), 0.0, 2), std::invalid_argument);
}

TEST(ThetaKernel, KroneckerAtZerosWithoutOffsets) {
  const double b = 1.5;
  const double omega = pi;
  for (int v : {0, 1, 3}) {
    ZeroTable t(BesselOrder(v), 8);
    for (std::size_t j = 1; j <= 8; ++j) {
      const double alpha = b * t.zero(j) / omega;
      EXPECT_NEAR(theta_kernel(alpha, alpha, t.zero(j), BesselOrder(v), b, omega, 0.0), 1.0, 1e-15);
      // Two-sided extrapolation of the direct formula towards the zero.
      auto mid = [&](double h) {
        return 0.5 * (theta_direct(alpha - h, alpha, t.zero(j), v, b, omega, 0.0) +
                      theta_direct(alpha + h, alpha, t.zero(j), v, b, omega, 0.0));
      };
      const double h = 1e-4 * alpha;
      EXPECT_NEAR((4.0 * mid(h) - mid(2.0 * h)) / 3.0, 1.0, 1e-9);
      for (std::size_t jp = 1; jp <= 8; ++jp) {
        if (jp == j) continue;
        const double r = b * t.zero(jp) / omega;
        EXPECT_NEAR(theta_kernel(r, alpha, t.zero(j), BesselOrder(v), b, omega, 0.0), 0.0, 1e-12);
      }
    }
  }
}

TEST(ThetaKernel, WithOffsetMatchesDirectFormulaAndIsContinuous) {
  const double z = bessel_zero(BesselOrder(0), 1);
  const double alpha = z / pi;
  const double mu2 = 0.5;
  EXPECT_NEAR(theta_kernel(0.3, alpha, z, BesselOrder(0), 1.0, pi, mu2), theta_direct(0.3, alpha, z, 0, 1.0, pi, mu2),
              1e-14);
  EXPECT_NEAR(theta_kernel(alpha, alpha, z, BesselOrder(0), 1.0, pi, mu2), 1.0, 1e-15);
  for (double eps : {9e-7, -9e-7, 5e-7, -5e-7}) {
    const double r = alpha * (1.0 + eps);
    EXPECT_NEAR(theta_kernel(r, alpha, z, BesselOrder(0), 1.0, pi, mu2), theta_direct(r, alpha, z, 0, 1.0, pi, mu2),
                1e-8);
  }
  // Params overload carries mu2 = |d tau - b eta|.
  const OffsetParams p(0.0, 1.0, -1.0, 0.0, {0.0, 0.0}, {0.3, -0.4});
  EXPECT_NEAR(theta_kernel(0.3, alpha, z, BesselOrder(0), p, pi), theta_direct(0.3, alpha, z, 0, 1.0, pi, 0.5), 1e-14);
}

TEST(SampleCount, LawAndGridCardinality) {
  EXPECT_EQ(sample_count(2, 10, TheoremMode::theorem1), 2500u);
  EXPECT_EQ(sample_count(2, 10, TheoremMode::theorem2), 500u);
  for (int K : {0, 1, 2, 3}) {
    for (int N : {1, 10, 20, 40}) {
      EXPECT_EQ(sample_count(K, N, TheoremMode::theorem1) / static_cast<std::size_t>(N),
                static_cast<std::size_t>(2 * K + 1) * sample_count(K, N, TheoremMode::theorem2) / static_cast<std::size_t>(N));
      EXPECT_EQ(consumed_sample_count(K, N, TheoremMode::theorem1),
                static_cast<std::size_t>(2 * K + 1) * consumed_sample_count(K, N, TheoremMode::theorem2));
      EXPECT_EQ(SampleGrid::theorem1(1.0, pi, K, N).size(), consumed_sample_count(K, N, TheoremMode::theorem1));
      EXPECT_EQ(SampleGrid::theorem2(1.0, pi, K, N, 1).size(), consumed_sample_count(K, N, TheoremMode::theorem2));
    }
  }
  EXPECT_THROW(sample_count(-1, 3, TheoremMode::theorem1), std::invalid_argument);
  EXPECT_THROW(sample_count(1, 0, TheoremMode::theorem2), std::invalid_argument);
}

TEST(SampleGrid, AbscissaeAndAzimuths) {
  const auto g = SampleGrid::theorem1(2.0, pi, 2, 12);
  EXPECT_EQ(g.azimuth_count(), 5);
  for (int n = -2; n <= 2; ++n) {
    for (int j = 1; j <= 12; ++j) {
      EXPECT_GT(g.alpha(n, j), 0.0);
      if (j > 1) EXPECT_GT(g.alpha(n, j), g.alpha(n, j - 1));
      EXPECT_NEAR(g.alpha(n, j), 2.0 * bessel_zero(BesselOrder(std::abs(n)), j) / pi, 1e-14);
    }
  }
  EXPECT_EQ(g.alpha(-2, 3), g.alpha(2, 3));
  EXPECT_NEAR(g.theta(3), 2.0 * pi * 3.0 / 5.0, 1e-15);
  EXPECT_THROW(SampleGrid::theorem2(1.0, pi, 1, 5, -1), std::invalid_argument);
  EXPECT_THROW(SampleGrid::theorem1(0.0, pi, 1, 5), std::invalid_argument);

  const auto zero = gaussian_field({{0, 0.0}}, 1.0);
  for (const auto& v : sample_field(zero, g).values) EXPECT_EQ(v, complex(0.0, 0.0));
}

TEST(ReconstructIsotropic, FourierBesselSeries) {
  const auto p = OffsetParams::fourier();
  const auto s = isotropic_spectrum(pi, 0, 3, 1);
  const auto f = synthesize(s, p, SynthesisMode::olcht_space);
  const int N = 40;
  ZeroTable zeros(BesselOrder(0), N);
  std::vector<complex> samples;
  for (int j = 1; j <= N; ++j) samples.push_back(f.coefficient(0, p.b() * zeros.zero(j) / pi));
  const double reliable = 0.9 * p.b() * zeros.zero(N) / pi;
  double peak = 0.0;
  double err = 0.0;
  for (double r = 0.0; r <= reliable; r += reliable / 200.0) {
    const complex truth = f.coefficient(0, r);
    peak = std::max(peak, std::abs(truth));
    err = std::max(err, std::abs(reconstruct_isotropic(samples, zeros, p, pi, r) - truth));
  }
  EXPECT_LE(err / peak, 1e-6);
  for (int j = 1; j <= N; j += 7) {
    const double a = p.b() * zeros.zero(j) / pi;
    EXPECT_NEAR(std::abs(reconstruct_isotropic(samples, zeros, p, pi, a) - samples[j - 1]), 0.0, 1e-9);
  }
  const std::vector<complex> none(N, complex(0.0, 0.0));
  EXPECT_EQ(reconstruct_isotropic(none, zeros, p, pi, 1.3), complex(0.0, 0.0));
}

TEST(ReconstructCoefficient, OrderOneSeriesWithGeneralMatrix) {
  for (const OffsetParams& p : {OffsetParams::fourier(), OffsetParams(1.0, 2.0, -0.25, 0.5)}) {
    FourierBesselSpectrum s;
    s.omega = pi;
    s.K = 1;
    s.coefficients[1] = {complex(0.3, 0.2), complex(-0.5, 0.1), complex(0.2, 0.7)};
    const auto f = synthesize(s, p, SynthesisMode::olct_space);
    const int N = 40;
    ZeroTable zeros(BesselOrder(1), N);
    std::vector<complex> samples;
    for (int j = 1; j <= N; ++j) samples.push_back(f.coefficient(1, p.b() * zeros.zero(j) / pi));
    const double reliable = 0.9 * p.b() * zeros.zero(N) / pi;
    double peak = 0.0;
    double err = 0.0;
    for (double r = 0.0; r <= reliable; r += reliable / 200.0) {
      const complex truth = f.coefficient(1, r);
      peak = std::max(peak, std::abs(truth));
      err = std::max(err, std::abs(reconstruct_coefficient(samples, zeros, p, pi, r) - truth));
    }
    EXPECT_LE(err / peak, 1e-6) << "b=" << p.b();
    const double a3 = p.b() * zeros.zero(3) / pi;
    EXPECT_NEAR(std::abs(reconstruct_coefficient(samples, zeros, p, pi, a3) - samples[2]), 0.0, 1e-9);
    const std::vector<complex> none(N, complex(0.0, 0.0));
    EXPECT_EQ(reconstruct_coefficient(none, zeros, p, pi, 0.8), complex(0.0, 0.0));
  }
}

TEST(ReconstructionOptions, StrictAndPrintedVariantsWithoutOffsets) {
  const auto p = OffsetParams::fourier();
  const auto s = isotropic_spectrum(pi, 1, 3, 2);
  const auto f = synthesize(s, p, SynthesisMode::olcht_space);
  ZeroTable zeros(BesselOrder(1), 10);
  std::vector<complex> samples;
  for (int j = 1; j <= 10; ++j) samples.push_back(f.coefficient(0, zeros.zero(j) / pi));
  for (double r : {0.2, 1.1, 2.5}) {
    const complex reduced = reconstruct_isotropic(samples, zeros, p, pi, r);
    const complex strict = reconstruct_isotropic(samples, zeros, p, pi, r, {.kernel = KernelMode::strict});
    const complex printed = reconstruct_isotropic(samples, zeros, p, pi, r, {.prefactor = Prefactor::printed});
    EXPECT_NEAR(std::abs(strict - reduced), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(printed + reduced), 0.0, 1e-14);
  }
  EXPECT_EQ(default_msum(p, 3.0, pi), 0);
  EXPECT_EQ(default_msum(OffsetParams(0.0, 1.0, -1.0, 0.0, {0.3, 0.4}), 3.0, pi), 22);
}

namespace {

struct Case {
  PolarField field;
  SampleSet samples;
};

// Probe maximum relative error of a field reconstruction.
double field_error(const Case& c, const OffsetParams& p, double radius, int nr, int nt) {
  Reconstructor rec(c.samples, p);
  const auto rep = measure_reconstruction(
      "field", probe_grid(radius, nr, nt), [&](double r, double t) { return c.field.evaluate(r, t); },
      [&](double r, double t) { return rec(r, t); });
  return rep.max_rel_error;
}

}  // namespace

TEST(ReconstructField, BothTheoremsOnSynthesizedFields) {
  const auto p = OffsetParams::fourier();
  const int N = 40;
  {
    const auto s = FourierBesselSpectrum::random(pi, 2, 3, 41);
    const auto f = synthesize(s, p, SynthesisMode::olct_space);
    const auto grid = SampleGrid::theorem1(p.b(), pi, 2, N);
    Case c{f, sample_field(f, grid)};
    EXPECT_LE(field_error(c, p, grid.reliable_radius(), 20, 20), 1e-5);
  }
  {
    const auto s = FourierBesselSpectrum::random(pi, 2, 3, 42, OrderMap::fixed, 1);
    const auto f = synthesize(s, p, SynthesisMode::olcht_space);
    const auto grid = SampleGrid::theorem2(p.b(), pi, 2, N, 1);
    Case c{f, sample_field(f, grid)};
    EXPECT_LE(field_error(c, p, grid.reliable_radius(), 20, 20), 1e-5);
  }
}

TEST(ReconstructField, BothTheoremsWithGeneralMatrix) {
  const OffsetParams p(0.5, 1.0, -1.0, 0.0);
  const int N = 20;
  {
    const auto s = FourierBesselSpectrum::random(pi, 1, 3, 43);
    const auto f = synthesize(s, p, SynthesisMode::olct_space);
    const auto grid = SampleGrid::theorem1(p.b(), pi, 1, N);
    EXPECT_LE(field_error({f, sample_field(f, grid)}, p, grid.reliable_radius(), 10, 10), 1e-9);
  }
  {
    const auto s = FourierBesselSpectrum::random(pi, 1, 3, 44, OrderMap::fixed, 2);
    const auto f = synthesize(s, p, SynthesisMode::olcht_space);
    const auto grid = SampleGrid::theorem2(p.b(), pi, 1, N, 2);
    EXPECT_LE(field_error({f, sample_field(f, grid)}, p, grid.reliable_radius(), 10, 10), 1e-9);
  }
}

TEST(ReconstructField, ZeroSamplesAndGridMismatch) {
  const auto p = OffsetParams::fourier();
  const auto grid = SampleGrid::theorem2(1.0, pi, 1, 5, 0);
  SampleSet zero{grid, std::vector<complex>(grid.size())};
  EXPECT_EQ(reconstruct_field(zero, p, 0.7, 0.2), complex(0.0, 0.0));
  SampleSet short_set{grid, std::vector<complex>(3)};
  EXPECT_THROW(reconstruct_field(short_set, p, 0.7, 0.2), std::invalid_argument);
  EXPECT_THROW(reconstruct_field(zero, OffsetParams(0.0, 2.0, -0.5, 0.0), 0.7, 0.2), std::invalid_argument);
}

TEST(ReconstructField, ModesAgreeOnIsotropicFields) {
  const auto p = OffsetParams::fourier();
  const auto s = isotropic_spectrum(pi, 0, 4, 7);
  const auto f = synthesize(s, p, SynthesisMode::olct_space);
  const int N = 20;
  const auto g1 = SampleGrid::theorem1(1.0, pi, 0, N);
  const auto g2 = SampleGrid::theorem2(1.0, pi, 0, N, 0);
  const auto s1 = sample_field(f, g1);
  const auto s2 = sample_field(f, g2);
  ZeroTable zeros(BesselOrder(0), N);
  std::vector<complex> iso;
  for (int j = 1; j <= N; ++j) iso.push_back(s2.at(0, j, 0));
  Reconstructor r1(s1, p);
  Reconstructor r2(s2, p);
  for (double r = 0.05; r < g2.reliable_radius(); r += 0.37) {
    for (double t : {-2.0, 0.4, 1.9}) {
      EXPECT_NEAR(std::abs(r2(r, t) - reconstruct_isotropic(iso, zeros, p, pi, r)), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(r1(r, t) - r2(r, t)), 0.0, 1e-9);
    }
  }
}

TEST(ReconstructField, ReturnsStoredSamplesAtGridPoints) {
  const auto p = OffsetParams::fourier();
  const auto s = FourierBesselSpectrum::random(pi, 2, 3, 51);
  const auto f = synthesize(s, p, SynthesisMode::olct_space);
  const auto grid = SampleGrid::theorem1(1.0, pi, 2, 12);
  const auto samples = sample_field(f, grid);
  Reconstructor rec(samples, p);
  for (int n = -2; n <= 2; ++n) {
    for (int j : {1, 5, 12}) {
      for (int l = 0; l < 5; ++l) {
        EXPECT_NEAR(std::abs(rec(grid.alpha(n, j), grid.theta(l)) - samples.at(n, j, l)), 0.0, 1e-9);
      }
    }
  }
  const auto s2 = FourierBesselSpectrum::random(pi, 2, 3, 52, OrderMap::fixed, 2);
  const auto f2 = synthesize(s2, p, SynthesisMode::olcht_space);
  const auto grid2 = SampleGrid::theorem2(1.0, pi, 2, 12, 2);
  const auto samples2 = sample_field(f2, grid2);
  Reconstructor rec2(samples2, p);
  for (int j : {1, 6, 12}) {
    for (int l = 0; l < 5; ++l) {
      EXPECT_NEAR(std::abs(rec2(grid2.alpha(0, j), grid2.theta(l)) - samples2.at(0, j, l)), 0.0, 1e-9);
    }
  }
}

TEST(ReconstructField, ErrorDecreasesWithMoreZeros) {
  const auto p = OffsetParams::fourier();
  const auto s = FourierBesselSpectrum::random(pi, 1, 64, 61, OrderMap::angular, 0, 0.8);
  const auto f = synthesize(s, p, SynthesisMode::olct_space);
  const double radius = SampleGrid::theorem1(1.0, pi, 1, 10).reliable_radius();
  std::vector<double> errors;
  for (int N : {10, 20, 40}) {
    const auto grid = SampleGrid::theorem1(1.0, pi, 1, N);
    errors.push_back(field_error({f, sample_field(f, grid)}, p, radius, 10, 10));
  }
  EXPECT_LE(errors[1], 1.1 * errors[0]);
  EXPECT_LE(errors[2], 1.1 * errors[1]);
  EXPECT_LT(errors[2], errors[0]);
}

TEST(ReconstructSpectrum, ZeroSpectrum) {
  const auto grid = SampleGrid::theorem1(1.0, pi, 1, 5);
  SampleSet zero{grid, std::vector<complex>(grid.size())};
  EXPECT_EQ(reconstruct_spectrum(zero, OffsetParams::fourier(), 0.7, 0.2), complex(0.0, 0.0));
}

namespace {

// Spectrum samples of a space-limited field and the direct transform at
// probes inside the reliable radius; returns the max relative error.
double spectrum_error(const PolarField& f, const OffsetParams& p, const SampleGrid& grid,
                      const ReconstructionOptions& opts, double* node_error = nullptr) {
  const auto samples = sample_spectrum(f, p, grid);
  Reconstructor rec(samples, p, opts, Reconstructor::Target::spectrum);
  PolarGrid probes = PolarGrid::uniform(grid.reliable_radius(), 10, 10);
  TransformOptions to;
  to.azimuth_nodes = 128;
  const auto truth = olct_forward(f, p, probes, to);
  double peak = 0.0;
  double err = 0.0;
  for (std::size_t k = 0; k < probes.rho.size(); ++k) {
    for (std::size_t q = 0; q < probes.phi.size(); ++q) {
      peak = std::max(peak, std::abs(truth.at(k, q)));
      err = std::max(err, std::abs(rec(probes.rho[k], probes.phi[q]) - truth.at(k, q)));
    }
  }
  if (node_error != nullptr) {
    *node_error = 0.0;
    for (int n : grid.slab_orders()) {
      for (int j : {1, 4}) {
        for (int l = 0; l < grid.azimuth_count(); ++l) {
          const complex at = rec(grid.alpha(n, j), grid.theta(l));
          *node_error = std::max(*node_error, std::abs(at - samples.at(n, j, l)));
        }
      }
    }
  }
  return err / peak;
}

}  // namespace

TEST(ReconstructSpectrum, FirstCorollaryMatchesDirectTransform) {
  for (const OffsetParams& p : {OffsetParams::fourier(), OffsetParams(0.5, 1.0, -1.0, 0.0)}) {
    const auto s = FourierBesselSpectrum::random(pi, 1, 3, 71);
    const auto f = synthesize(s, p, SynthesisMode::olct_space, {.kind = ProfileKind::space_limited});
    double node = 0.0;
    EXPECT_LE(spectrum_error(f, p, SampleGrid::theorem1(p.b(), pi, 1, 10), {}, &node), 1e-5) << "a=" << p.a();
    EXPECT_LE(node, 1e-8);
  }
}

TEST(ReconstructSpectrum, SecondCorollaryMatchesDirectTransform) {
  const auto p = OffsetParams::fourier();
  FourierBesselSpectrum s;
  s.omega = pi;
  s.K = 2;
  s.order_map = OrderMap::fixed;
  s.fixed_order = 2;
  s.coefficients[-2] = {complex(0.4, 0.1), complex(-0.2, 0.3)};
  s.coefficients[2] = {complex(0.1, -0.6), complex(0.5, 0.05)};
  const auto f = synthesize(s, p, SynthesisMode::olcht_space, {.kind = ProfileKind::space_limited});
  double node = 0.0;
  EXPECT_LE(spectrum_error(f, p, SampleGrid::theorem2(p.b(), pi, 2, 10, 2), {}, &node), 1e-5);
  EXPECT_LE(node, 1e-8);
}

TEST(ReconstructSpectrum, OnlyTheDChirpVariantIsSelfConsistent) {
  const OffsetParams p(0.5, 1.0, -1.0, 0.0);
  const auto s = FourierBesselSpectrum::random(pi, 1, 3, 72);
  const auto f = synthesize(s, p, SynthesisMode::olct_space, {.kind = ProfileKind::space_limited});
  const auto grid = SampleGrid::theorem1(p.b(), pi, 1, 10);
  EXPECT_LE(spectrum_error(f, p, grid, {.chirp = ChirpVariant::d_chirp}), 1e-5);
  EXPECT_GT(spectrum_error(f, p, grid, {.chirp = ChirpVariant::a_chirp}), 1e-2);
}

TEST(MeasureReconstruction, Statistics) {
  const auto probes = probe_grid(2.0, 10, 10);
  ASSERT_EQ(probes.size(), 100u);
  EXPECT_NEAR(probes.back().r, 2.0, 1e-15);
  const auto rep = measure_reconstruction(
      "t", probes, [](double r, double) { return complex(r, 0.0); }, [](double r, double) { return complex(r + 0.01, 0.0); });
  EXPECT_NEAR(rep.max_abs_error, 0.01, 1e-12);
  EXPECT_NEAR(rep.mean_abs_error, 0.01, 1e-12);
  EXPECT_NEAR(rep.max_rel_error, 0.005, 1e-12);
}
