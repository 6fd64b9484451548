// polar-olct: command-line front end for the library and the verification harness.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "polar_olct/polar_olct.hpp"

using namespace polar_olct;

namespace {

struct Common {
  std::string config;
  std::string out;
  std::uint64_t seed = 1;
  bool seed_given = false;
  unsigned threads = 1;
};

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    io::write_file(out, text);
  }
}

FourierBesselSpectrum spectrum_for(const ParamsFile& pf, const std::string& spectrum_path, int random_terms,
                                   std::uint64_t seed) {
  FourierBesselSpectrum s;
  if (!spectrum_path.empty()) {
    s = load_spectrum(spectrum_path);
  } else if (random_terms > 0) {
    s = FourierBesselSpectrum::random(pf.omega, pf.K, static_cast<std::size_t>(random_terms), seed);
  } else {
    throw std::invalid_argument("need --spectrum or --random");
  }
  if (pf.mode == SynthesisMode::olcht_space) {
    s.order_map = OrderMap::fixed;
    s.fixed_order = pf.order;
  }
  return s;
}

PolarField field_for(const ParamsFile& pf, const FourierBesselSpectrum& s, ProfileKind fallback) {
  return synthesize(s, pf.params(), pf.mode, {.kind = pf.profile_given ? pf.profile : fallback});
}

int cmd_zeros(double order, int count, const std::string& format, const Common& c) {
  if (format != "csv") throw std::invalid_argument("--format: only csv is supported");
  if (count < 1) throw std::invalid_argument("--count must be positive");
  const ZeroTable zt(BesselOrder(order), static_cast<std::size_t>(count));
  std::string text = "j,z_vj\n";
  for (std::size_t j = 1; j <= zt.size(); ++j) text += std::to_string(j) + "," + io::fmt(zt.zero(j), "%.15g") + "\n";
  emit(c.out, text);
  return 0;
}

int cmd_transform(const std::string& params_path, const std::string& spectrum_path, int random_terms,
                  const std::string& grid_spec, const std::string& method, const Common& c) {
  const auto pf = load_params(params_path);
  const auto s = spectrum_for(pf, spectrum_path, random_terms, c.seed);
  const auto f = field_for(pf, s, ProfileKind::sonine);
  const auto gs = parse_grid_spec(grid_spec);
  const auto grid = PolarGrid::uniform(gs.r_max, gs.nr, gs.ntheta);
  const OffsetParams p = pf.params();
  TransformOptions o;
  o.threads = c.threads;
  const SpectrumField F = [&] {
    if (method == "direct") return olct_forward(f, p, grid, o);
    if (method == "via_ft") return olct_via_ft(f, p, grid, o);
    if (method == "series") {
      SeriesOptions so{.route = SeriesRoute::per_m_expansion};
      so.hankel.threads = c.threads;
      return olct_series(f, p, grid, so);
    }
    throw std::invalid_argument("--method must be direct, via_ft or series");
  }();
  emit(c.out, format_grid(grid.points(), F.values, "rho,phi,Re(F),Im(F)"));
  return 0;
}

int cmd_synth(const std::string& params_path, const std::string& spectrum_path, int random_terms,
              const std::string& spectrum_out, const std::string& grid_spec, const Common& c) {
  const auto pf = load_params(params_path);
  const auto s = spectrum_for(pf, spectrum_path, random_terms, c.seed);
  if (!spectrum_out.empty()) io::write_file(spectrum_out, format_spectrum(s));
  const auto f = field_for(pf, s, ProfileKind::fourier_bessel);
  const auto gs = parse_grid_spec(grid_spec);
  const auto pts = PolarGrid::uniform(gs.r_max, gs.nr, gs.ntheta).points();
  std::vector<complex> values(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) values[i] = f.evaluate(pts[i].r, pts[i].theta);
  emit(c.out, format_grid(pts, values, "r,theta,Re(f),Im(f)"));
  return 0;
}

int cmd_reconstruct(const std::string& mode, const std::string& params_path, const std::string& spectrum_path,
                    int random_terms, int zeros, int msum, const std::string& kernel, const std::string& probe_spec,
                    double tolerance, const Common& c) {
  const auto pf = load_params(params_path);
  const bool corollary = mode == "corollary1" || mode == "corollary2";
  const bool second = mode == "theorem2" || mode == "corollary2";
  if (!corollary && mode != "theorem1" && mode != "theorem2") {
    throw std::invalid_argument("--mode must be theorem1, theorem2, corollary1 or corollary2");
  }
  ParamsFile adjusted = pf;
  adjusted.mode = second ? SynthesisMode::olcht_space : SynthesisMode::olct_space;
  auto s = spectrum_for(adjusted, spectrum_path, random_terms, c.seed);
  if (mode == "corollary2") {
    // The spectrum series is exact only for angular orders n = +-v.
    std::size_t dropped = 0;
    for (auto it = s.coefficients.begin(); it != s.coefficients.end();) {
      if (std::abs(it->first) == pf.order) {
        ++it;
      } else {
        ++dropped;
        it = s.coefficients.erase(it);
      }
    }
    if (dropped > 0) std::fprintf(stderr, "corollary2: kept only angular orders +-%d\n", pf.order);
  }
  const auto f = field_for(adjusted, s, corollary ? ProfileKind::space_limited : ProfileKind::fourier_bessel);
  const OffsetParams p = pf.params();
  const SampleGrid grid = second ? SampleGrid::theorem2(p.b(), s.omega, s.K, zeros, pf.order)
                                 : SampleGrid::theorem1(p.b(), s.omega, s.K, zeros);
  ReconstructionOptions opts;
  opts.msum = msum;
  if (kernel == "strict") opts.kernel = KernelMode::strict;
  else if (kernel != "reduced") throw std::invalid_argument("--kernel must be reduced or strict");

  GridSpec gs{grid.reliable_radius(), 20, 20};
  if (!probe_spec.empty()) gs = parse_grid_spec(probe_spec);
  const PolarGrid probes = PolarGrid::uniform(gs.r_max, gs.nr, gs.ntheta);
  const auto pts = probes.points();
  std::vector<complex> truth(pts.size());
  std::vector<complex> recon(pts.size());
  if (corollary) {
    TransformOptions o;
    o.threads = c.threads;
    truth = olct_forward(f, p, probes, o).values;
    Reconstructor rec(sample_spectrum(f, p, grid), p, opts, Reconstructor::Target::spectrum);
    parallel_for(pts.size(), c.threads, [&](std::size_t i) { recon[i] = rec(pts[i].r, pts[i].theta); });
  } else {
    Reconstructor rec(sample_field(f, grid), p, opts);
    parallel_for(pts.size(), c.threads, [&](std::size_t i) {
      truth[i] = f.evaluate(pts[i].r, pts[i].theta);
      recon[i] = rec(pts[i].r, pts[i].theta);
    });
  }
  std::string text = "r,theta,Re(true),Im(true),Re(recon),Im(recon),abs_err\n";
  double worst = 0.0;
  double peak = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double e = std::abs(recon[i] - truth[i]);
    worst = std::max(worst, e);
    peak = std::max(peak, std::abs(truth[i]));
    text += io::fmt(pts[i].r) + "," + io::fmt(pts[i].theta) + "," + io::fmt(truth[i].real()) + "," +
            io::fmt(truth[i].imag()) + "," + io::fmt(recon[i].real()) + "," + io::fmt(recon[i].imag()) + "," +
            io::fmt(e) + "\n";
  }
  emit(c.out, text);
  const double rel = peak > 0.0 ? worst / peak : worst;
  std::fprintf(stderr, "%s K=%d N=%d samples=%zu consumed=%zu max_rel_error=%.3e seed=%llu\n", mode.c_str(), s.K,
               zeros, sample_count(s.K, zeros, second ? TheoremMode::theorem2 : TheoremMode::theorem1), grid.size(),
               rel, static_cast<unsigned long long>(c.seed));
  return tolerance > 0.0 && rel > tolerance ? 1 : 0;
}

ExperimentConfig harness_config(const Common& c) {
  ExperimentConfig cfg = c.config.empty() ? ExperimentConfig{} : load_config(c.config);
  if (c.seed_given) cfg.seed = c.seed;
  if (c.threads > 1) cfg.threads = c.threads;
  return cfg;
}

std::string report_path(const Common& c, const ExperimentConfig& cfg, const char* name) {
  if (!c.out.empty()) return c.out;
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

int finish(const SweepResult& r, const std::string& path) {
  emit_report(r, path);
  std::size_t asserted = 0;
  for (const auto& row : r.rows) asserted += row.asserted ? 1 : 0;
  for (const auto& row : r.rows) {
    std::printf("%-4s %-10s %-20s %-18s K=%d N=%-3d err=%.3e tol=%.1e %s\n",
                row.asserted ? (row.pass ? "PASS" : "FAIL") : "info", row.suite.c_str(), row.check.c_str(),
                row.mode.c_str(), row.K, row.N, row.max_error, row.tolerance, row.note.c_str());
  }
  for (const auto& [k, v] : r.verdicts) std::printf("verdict %s: %s\n", k.c_str(), v.c_str());
  std::printf("%zu asserted, %zu failed; report %s\n", asserted, r.failures(), path.c_str());
  return r.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Offset linear canonical transforms in polar coordinates and their sampling theorems"};
  app.require_subcommand(1);
  Common c;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", c.config, "Experiment config (key = value)");
    sub->add_option("--out", c.out, "Output file (default: stdout, or <output_dir>/<name>.csv for sweeps)");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) { c.seed = s; c.seed_given = true; }, "Random seed");
    sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  };

  double order = 0.0;
  int count = 10;
  std::string format = "csv";
  auto* zeros = app.add_subcommand("zeros", "Positive zeros of J_v");
  zeros->add_option("--order", order, "Bessel order v >= -1/2");
  zeros->add_option("--count", count, "Number of zeros");
  zeros->add_option("--format", format, "Output format (csv)");
  add_common(zeros);

  std::string params_path;
  std::string spectrum_path;
  std::string spectrum_out;
  std::string grid_spec = "3.14159265358979,16,16";
  std::string method = "direct";
  int random_terms = 0;

  auto* transform = app.add_subcommand("transform", "OLCT of a synthesized field on a polar grid");
  transform->add_option("--params", params_path, "Parameter file")->required();
  transform->add_option("--spectrum", spectrum_path, "Spectrum CSV");
  transform->add_option("--random", random_terms, "Random spectrum with this many terms per order");
  transform->add_option("--grid", grid_spec, "rho_max,nr,nphi");
  transform->add_option("--method", method, "direct | via_ft | series");
  add_common(transform);

  auto* synth = app.add_subcommand("synth", "Evaluate a synthesized field on a polar grid");
  synth->add_option("--params", params_path, "Parameter file")->required();
  synth->add_option("--spectrum", spectrum_path, "Spectrum CSV");
  synth->add_option("--random", random_terms, "Random spectrum with this many terms per order");
  synth->add_option("--spectrum-out", spectrum_out, "Write the spectrum used");
  synth->add_option("--grid", grid_spec, "r_max,nr,ntheta");
  add_common(synth);

  std::string rmode = "theorem1";
  int nzeros = 40;
  int msum = -1;
  std::string kernel = "reduced";
  std::string probe_spec;
  double tolerance = 0.0;
  auto* reconstruct = app.add_subcommand("reconstruct", "Sample and reconstruct a field or its spectrum");
  reconstruct->add_option("--mode", rmode, "theorem1 | theorem2 | corollary1 | corollary2");
  reconstruct->add_option("--params", params_path, "Parameter file")->required();
  reconstruct->add_option("--spectrum", spectrum_path, "Spectrum CSV");
  reconstruct->add_option("--random", random_terms, "Random spectrum with this many terms per order");
  reconstruct->add_option("--zeros", nzeros, "Bessel zeros per order (N)");
  reconstruct->add_option("--kernel", kernel, "reduced | strict");
  reconstruct->add_option("--msum", msum, "Strict-kernel m truncation (-1: default)");
  reconstruct->add_option("--probes", probe_spec, "r_max,nr,ntheta (default: reliable radius, 20x20)");
  reconstruct->add_option("--tolerance", tolerance, "Exit 1 when the relative error exceeds this");
  add_common(reconstruct);

  auto* sweep = app.add_subcommand("sweep", "Complexity sweep and general-parameter investigation");
  add_common(sweep);
  auto* verify = app.add_subcommand("verify", "Reduction suite: every asserted oracle check");
  add_common(verify);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*zeros) return cmd_zeros(order, count, format, c);
    if (*transform) return cmd_transform(params_path, spectrum_path, random_terms, grid_spec, method, c);
    if (*synth) return cmd_synth(params_path, spectrum_path, random_terms, spectrum_out, grid_spec, c);
    if (*reconstruct) {
      return cmd_reconstruct(rmode, params_path, spectrum_path, random_terms, nzeros, msum, kernel, probe_spec, tolerance, c);
    }
    const auto cfg = harness_config(c);
    if (*sweep) {
      SweepResult r = run_complexity_sweep(cfg);
      r.append(run_general_investigation(cfg));
      return finish(r, report_path(c, cfg, "sweep.csv"));
    }
    if (*verify) return finish(run_reduction_suite(cfg), report_path(c, cfg, "verify.csv"));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
