// Samples a synthesized field on both theorem grids and prints the
// reconstruction error as the number of Bessel zeros grows.
//
//   reconstruct_demo [params-file] [spectrum-csv]

#include <cstdio>
#include <exception>
#include <string>

#include "polar_olct/polar_olct.hpp"

using namespace polar_olct;

int main(int argc, char** argv) try {
  const std::string params_path = argc > 1 ? argv[1] : POLAR_OLCT_DEMO_DATA "/fourier.params";
  const ParamsFile pf = load_params(params_path);
  const OffsetParams p = pf.params();

  FourierBesselSpectrum s = argc > 2 ? load_spectrum(argv[2])
                                     : FourierBesselSpectrum::random(pf.omega, pf.K, 12, 3, OrderMap::angular, 0, 0.7);
  std::printf("A = (%g, %g; %g, %g), Omega = %g, K = %d\n", p.a(), p.b(), p.c(), p.d(), s.omega, s.K);
  std::printf("%-9s %4s %8s %9s %12s\n", "mode", "N", "law", "consumed", "max rel err");

  for (TheoremMode mode : {TheoremMode::theorem1, TheoremMode::theorem2}) {
    FourierBesselSpectrum spec = s;
    SynthesisMode sm = SynthesisMode::olct_space;
    if (mode == TheoremMode::theorem2) {
      spec.order_map = OrderMap::fixed;
      spec.fixed_order = pf.order;
      sm = SynthesisMode::olcht_space;
    }
    const PolarField f = synthesize(spec, p, sm);
    for (int N : {4, 8, 16, 32}) {
      const SampleGrid grid = mode == TheoremMode::theorem1 ? SampleGrid::theorem1(p.b(), s.omega, s.K, N)
                                                            : SampleGrid::theorem2(p.b(), s.omega, s.K, N, pf.order);
      const Reconstructor rec(sample_field(f, grid), p);
      const auto report = measure_reconstruction(
          mode == TheoremMode::theorem1 ? "theorem1" : "theorem2", probe_grid(grid.reliable_radius(), 16, 16),
          [&](double r, double t) { return f.evaluate(r, t); }, [&](double r, double t) { return rec(r, t); });
      std::printf("%-9s %4d %8zu %9zu %12.3e\n", report.mode.c_str(), N, sample_count(s.K, N, mode), grid.size(),
                  report.max_rel_error);
    }
  }
  return 0;
} catch (const std::exception& e) {
  std::fprintf(stderr, "error: %s\n", e.what());
  return 1;
}
