#pragma once

// Experiment configuration, the reduction suite, the complexity sweep, the
// general-parameter investigation and report emission.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "polar_olct/field.hpp"
#include "polar_olct/io.hpp"
#include "polar_olct/sampling.hpp"
#include "polar_olct/transforms.hpp"

namespace polar_olct {

struct ExperimentConfig {
  std::string params_file;  // matrix and offsets for the investigation; empty: (0,1;-1,0) with tau, eta below
  std::vector<TheoremMode> modes{TheoremMode::theorem1, TheoremMode::theorem2};
  std::vector<int> K_values{2};
  std::vector<int> N_values{10, 20, 40};
  std::vector<int> M_values{-1};  // strict-kernel truncations; -1: default
  std::vector<int> complexity_K{0, 1, 2, 3};
  std::vector<int> complexity_N{10, 20, 40};
  double omega = std::numbers::pi;
  int j_spec = 3;
  int fixed_order = 1;
  std::uint64_t seed = 1;
  int probe_nr = 20;
  int probe_ntheta = 20;
  std::string output_dir = "out";
  Vec2 tau{0.3, 0.4};
  Vec2 eta{0.1, -0.2};
  double tol_transform = 1e-6;
  double tol_factorization = 1e-8;
  double tol_reconstruction = 1e-5;
  int monotonic_j_spec = 64;
  double monotonic_decay = 0.8;
  unsigned threads = 1;
};

namespace detail {

inline std::vector<int> parse_int_list(const std::string& value, const std::string& key) {
  std::vector<int> out;
  if (io::trim(value).empty()) return out;
  for (const auto& item : io::split(value, ',')) out.push_back(static_cast<int>(io::to_int(item, key)));
  return out;
}

inline Vec2 parse_vec2(const std::string& value, const std::string& key) {
  const auto f = io::split(value, ',');
  if (f.size() != 2) throw std::invalid_argument(key + ": expected two comma-separated numbers");
  return {io::to_double(f[0], key), io::to_double(f[1], key)};
}

inline const char* mode_name(TheoremMode m) { return m == TheoremMode::theorem1 ? "theorem1" : "theorem2"; }

// Distinct, reproducible seeds for the sub-experiments of one run.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t tag) { return seed * 1000003ULL + tag; }

}  // namespace detail

inline ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  for (const auto& [key, value] : parse_key_values(text)) {
    if (key == "params") c.params_file = value;
    else if (key == "modes") {
      c.modes.clear();
      for (const auto& m : io::split(value, ',')) {
        if (m == "theorem1") c.modes.push_back(TheoremMode::theorem1);
        else if (m == "theorem2") c.modes.push_back(TheoremMode::theorem2);
        else if (!m.empty()) throw std::invalid_argument("modes: unknown mode '" + m + "'");
      }
    } else if (key == "K") c.K_values = detail::parse_int_list(value, key);
    else if (key == "N") c.N_values = detail::parse_int_list(value, key);
    else if (key == "M") c.M_values = detail::parse_int_list(value, key);
    else if (key == "complexity_K") c.complexity_K = detail::parse_int_list(value, key);
    else if (key == "complexity_N") c.complexity_N = detail::parse_int_list(value, key);
    else if (key == "Omega") c.omega = io::to_double(value, key);
    else if (key == "j_spec") c.j_spec = static_cast<int>(io::to_int(value, key));
    else if (key == "order") c.fixed_order = static_cast<int>(io::to_int(value, key));
    else if (key == "seed") c.seed = static_cast<std::uint64_t>(io::to_int(value, key));
    else if (key == "probes") {
      const auto f = io::split(value, 'x');
      if (f.size() != 2) throw std::invalid_argument("probes: expected NRxNTHETA");
      c.probe_nr = static_cast<int>(io::to_int(f[0], key));
      c.probe_ntheta = static_cast<int>(io::to_int(f[1], key));
    } else if (key == "output_dir") c.output_dir = value;
    else if (key == "tau") c.tau = detail::parse_vec2(value, key);
    else if (key == "eta") c.eta = detail::parse_vec2(value, key);
    else if (key == "tol_transform") c.tol_transform = io::to_double(value, key);
    else if (key == "tol_factorization") c.tol_factorization = io::to_double(value, key);
    else if (key == "tol_reconstruction") c.tol_reconstruction = io::to_double(value, key);
    else if (key == "monotonic_j_spec") c.monotonic_j_spec = static_cast<int>(io::to_int(value, key));
    else if (key == "monotonic_decay") c.monotonic_decay = io::to_double(value, key);
    else if (key == "threads") c.threads = static_cast<unsigned>(io::to_int(value, key));
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }
  if (!(c.omega > 0.0)) throw std::invalid_argument("Omega must be positive");
  if (c.j_spec < 1 || c.monotonic_j_spec < 1) throw std::invalid_argument("j_spec must be at least 1");
  if (c.probe_nr < 1 || c.probe_ntheta < 1) throw std::invalid_argument("probes must be positive");
  for (int k : c.K_values) {
    if (k < 0) throw std::invalid_argument("K values must be non-negative");
  }
  for (int n : c.N_values) {
    if (n < 1) throw std::invalid_argument("N values must be positive");
  }
  if (c.threads == 0) c.threads = 1;
  return c;
}

/// A relative `params` path is taken relative to the config file.
inline ExperimentConfig load_config(const std::string& path) {
  ExperimentConfig c;
  try {
    c = parse_config(io::read_file(path));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  if (!c.params_file.empty() && std::filesystem::path(c.params_file).is_relative()) {
    c.params_file = (std::filesystem::path(path).parent_path() / c.params_file).string();
  }
  return c;
}

struct SweepRow {
  std::string suite;
  std::string check;
  std::string mode;
  int K = 0;
  int N = 0;
  int M = 0;
  bool asserted = false;
  bool pass = true;
  double max_error = 0.0;
  double mean_error = 0.0;
  double tolerance = 0.0;
  std::size_t sample_count = 0;
  std::size_t consumed_samples = 0;
  double runtime = 0.0;
  std::string note;
};

struct SweepResult {
  std::uint64_t seed = 0;
  std::vector<SweepRow> rows;
  std::map<std::string, std::string> verdicts;

  [[nodiscard]] bool all_passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.asserted || r.pass; });
  }
  [[nodiscard]] std::size_t failures() const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.asserted && !r.pass; }));
  }
  void append(const SweepResult& other) {
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
    for (const auto& [k, v] : other.verdicts) verdicts[k] = v;
  }
};

namespace detail {

class Stopwatch {
 public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline double max_rel(const std::vector<complex>& x, const std::vector<complex>& ref, double* mean = nullptr) {
  double num = 0.0;
  double den = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = std::abs(x[i] - ref[i]);
    num = std::max(num, e);
    sum += e;
    den = std::max(den, std::abs(ref[i]));
  }
  if (mean != nullptr) *mean = x.empty() ? 0.0 : sum / static_cast<double>(x.size());
  return den > 0.0 ? num / den : num;
}

inline TransformOptions probe_transform_options(unsigned threads) {
  TransformOptions o;
  o.azimuth_nodes = 128;
  o.threads = threads;
  return o;
}

// Field in the space a theorem mode expects, built from a random spectrum.
inline PolarField theorem_field(const ExperimentConfig& cfg, const KernelParams& p, TheoremMode mode, int K, int j_spec,
                                std::uint64_t seed, double decay = 1.0) {
  if (mode == TheoremMode::theorem1) {
    const auto s = FourierBesselSpectrum::random(cfg.omega, K, static_cast<std::size_t>(j_spec), seed,
                                                 OrderMap::angular, 0, decay);
    return synthesize(s, p, SynthesisMode::olct_space);
  }
  const auto s = FourierBesselSpectrum::random(cfg.omega, K, static_cast<std::size_t>(j_spec), seed, OrderMap::fixed,
                                               cfg.fixed_order, decay);
  return synthesize(s, p, SynthesisMode::olcht_space);
}

inline SampleGrid theorem_grid(const ExperimentConfig& cfg, const KernelParams& p, TheoremMode mode, int K, int N) {
  return mode == TheoremMode::theorem1 ? SampleGrid::theorem1(p.b(), cfg.omega, K, N)
                                       : SampleGrid::theorem2(p.b(), cfg.omega, K, N, cfg.fixed_order);
}

inline ReconstructionReport field_report(const ExperimentConfig& cfg, const PolarField& f, const SampleGrid& grid,
                                         const KernelParams& p, const ReconstructionOptions& opts, double radius) {
  Reconstructor rec(sample_field(f, grid), p, opts);
  return measure_reconstruction(
      detail::mode_name(grid.mode()), probe_grid(radius, cfg.probe_nr, cfg.probe_ntheta),
      [&](double r, double t) { return f.evaluate(r, t); }, [&](double r, double t) { return rec(r, t); },
      cfg.threads);
}

// Space-limited field matching a corollary: theorem1 uses angular orders,
// theorem2 the single pair n = +-v with Bessel order v = K.
inline PolarField corollary_field(const ExperimentConfig& cfg, const KernelParams& p, TheoremMode mode, int K,
                                  std::uint64_t seed) {
  if (mode == TheoremMode::theorem1) {
    const auto s = FourierBesselSpectrum::random(cfg.omega, K, static_cast<std::size_t>(cfg.j_spec), seed);
    return synthesize(s, p, SynthesisMode::olct_space, {.kind = ProfileKind::space_limited});
  }
  auto s = FourierBesselSpectrum::random(cfg.omega, K, static_cast<std::size_t>(cfg.j_spec), seed, OrderMap::fixed, K);
  for (auto it = s.coefficients.begin(); it != s.coefficients.end();) {
    it = std::abs(it->first) == K ? std::next(it) : s.coefficients.erase(it);
  }
  return synthesize(s, p, SynthesisMode::olcht_space, {.kind = ProfileKind::space_limited});
}

inline SampleGrid corollary_grid(const KernelParams& p, double omega, TheoremMode mode, int K, int N) {
  return mode == TheoremMode::theorem1 ? SampleGrid::theorem1(p.b(), omega, K, N)
                                       : SampleGrid::theorem2(p.b(), omega, K, N, K);
}

// Corollary reconstruction against the direct transform on a probe grid.
inline double corollary_error(const ExperimentConfig& cfg, const PolarField& f, const OffsetParams& p,
                              const SampleGrid& grid, const ReconstructionOptions& opts, double* mean) {
  Reconstructor rec(sample_spectrum(f, p, grid), p, opts, Reconstructor::Target::spectrum);
  const PolarGrid probes = PolarGrid::uniform(grid.reliable_radius(), static_cast<std::size_t>(cfg.probe_nr),
                                              static_cast<std::size_t>(cfg.probe_ntheta));
  const auto truth = olct_forward(f, p, probes, probe_transform_options(cfg.threads));
  const auto pts = probes.points();
  std::vector<complex> got(pts.size());
  parallel_for(pts.size(), cfg.threads, [&](std::size_t i) { got[i] = rec(pts[i].r, pts[i].theta); });
  return max_rel(got, truth.values, mean);
}

inline OffsetParams investigation_params(const ExperimentConfig& cfg) {
  if (!cfg.params_file.empty()) return load_params(cfg.params_file).params();
  return OffsetParams(0.0, 1.0, -1.0, 0.0, cfg.tau, cfg.eta);
}

}  // namespace detail

/// Transform-level reductions at tau = eta = 0: Fourier, Hankel, angular series.
inline SweepResult run_transform_reductions(const ExperimentConfig& cfg) {
  SweepResult res;
  res.seed = cfg.seed;
  if (cfg.K_values.empty() || cfg.N_values.empty() || cfg.modes.empty()) return res;
  const OffsetParams p0 = OffsetParams::fourier();
  const double omega = cfg.omega;
  const int kmax = *std::max_element(cfg.K_values.begin(), cfg.K_values.end());
  const auto topts = detail::probe_transform_options(cfg.threads);
  auto push = [&](SweepRow row) { res.rows.push_back(std::move(row)); };

  {  // Fourier reduction: direct quadrature against the chirped 2D Fourier oracle.
    detail::Stopwatch sw;
    const auto s = FourierBesselSpectrum::random(omega, kmax, static_cast<std::size_t>(cfg.j_spec),
                                                 detail::sub_seed(cfg.seed, 1));
    const auto f = synthesize(s, p0, SynthesisMode::olct_space, {.kind = ProfileKind::sonine});
    const auto grid = PolarGrid::uniform(1.2 * omega, 16, 16);
    double mean = 0.0;
    const double err = detail::max_rel(olct_forward(f, p0, grid, topts).values,
                                       olct_via_ft(f, p0, grid, {.threads = cfg.threads}).values, &mean);
    push({"reduction", "ft_reduction", "olct", kmax, 0, 0, true, err <= cfg.tol_transform, err, mean,
          cfg.tol_transform, 0, 0, sw.seconds(), "olct_forward vs olct_via_ft 16x16"});
  }
  {  // Hankel reduction: order-0 transform of a Sonine profile vs its closed form.
    detail::Stopwatch sw;
    const int p = 16;
    const auto g = [&](double r) { return complex(sonine_profile(0, p, omega, r), 0.0); };
    std::vector<double> rho;
    for (int i = 1; i <= 32; ++i) rho.push_back(1.2 * omega * i / 32.0);
    const double R = decay_radius(g, 400.0 / omega, 0.05 / omega);
    const auto H = olcht_forward(g, BesselOrder(0), p0, rho, {.r_max = R, .threads = cfg.threads});
    std::vector<complex> ref;
    for (double x : rho) ref.emplace_back(sonine_spectrum(0, p, omega, x), 0.0);
    double mean = 0.0;
    const double err = detail::max_rel(H, ref, &mean);
    push({"reduction", "ht_reduction", "olcht", 0, 0, 0, true, err <= cfg.tol_factorization, err, mean,
          cfg.tol_factorization, 0, 0, sw.seconds(), "order 0 vs closed-form Hankel pair"});
  }
  {  // Angular series: which Bessel order per angular term reproduces the direct transform.
    detail::Stopwatch sw;
    const int K = std::max(kmax, 1);
    const auto s = FourierBesselSpectrum::random(omega, K, static_cast<std::size_t>(cfg.j_spec),
                                                 detail::sub_seed(cfg.seed, 2));
    const auto f = synthesize(s, p0, SynthesisMode::olct_space, {.kind = ProfileKind::sonine});
    const auto grid = PolarGrid::uniform(omega, 8, 12);
    const auto direct = olct_forward(f, p0, grid, topts).values;
    std::vector<std::string> matching;
    for (auto route : {SeriesRoute::order_n, SeriesRoute::order_2n}) {
      const std::string name = route == SeriesRoute::order_n ? "order_n" : "order_2n";
      double mean = 0.0;
      SeriesOptions so{.route = route};
      so.hankel.threads = cfg.threads;
      const double err = detail::max_rel(olct_series(f, p0, grid, so).values, direct, &mean);
      if (err <= cfg.tol_transform) matching.push_back(name);
      push({"reduction", "series_route", name, K, 0, 0, false, err <= cfg.tol_transform, err, mean,
            cfg.tol_transform, 0, 0, sw.seconds(), "angular series vs olct_forward"});
    }
    const bool one = matching.size() == 1;
    res.verdicts["series_route"] = one ? matching.front() : (matching.empty() ? "none" : "both");
    push({"reduction", "series_verdict", one ? matching.front() : "ambiguous", K, 0, 0, true, one, 0.0, 0.0,
          cfg.tol_transform, 0, 0, sw.seconds(), "exactly one route must match"});
  }

  return res;
}

/// Field reconstruction for every (mode, K, N) plus truncation monotonicity.
inline SweepResult run_theorem_checks(const ExperimentConfig& cfg) {
  SweepResult res;
  res.seed = cfg.seed;
  if (cfg.K_values.empty() || cfg.N_values.empty() || cfg.modes.empty()) return res;
  const OffsetParams p0 = OffsetParams::fourier();
  auto push = [&](SweepRow row) { res.rows.push_back(std::move(row)); };

  for (TheoremMode mode : cfg.modes) {
    for (int K : cfg.K_values) {
      const auto f = detail::theorem_field(cfg, p0, mode, K, cfg.j_spec,
                                           detail::sub_seed(cfg.seed, 100 + static_cast<std::uint64_t>(K)));
      for (int N : cfg.N_values) {
        detail::Stopwatch sw;
        const auto grid = detail::theorem_grid(cfg, p0, mode, K, N);
        const auto rep = detail::field_report(cfg, f, grid, p0, {}, grid.reliable_radius());
        push({"reduction", "reconstruct_field", detail::mode_name(mode), K, N, 0, true,
              rep.max_rel_error <= cfg.tol_reconstruction, rep.max_rel_error, rep.mean_abs_error,
              cfg.tol_reconstruction, sample_count(K, N, mode), grid.size(), sw.seconds(),
              "J_spec=" + std::to_string(cfg.j_spec)});
      }
    }
  }

  // Truncation monotonicity over the configured N, on a slowly decaying spectrum.
  if (cfg.N_values.size() >= 2) {
    std::vector<int> Ns = cfg.N_values;
    std::sort(Ns.begin(), Ns.end());
    const int K = cfg.K_values.front();
    for (TheoremMode mode : cfg.modes) {
      detail::Stopwatch sw;
      const auto f = detail::theorem_field(cfg, p0, mode, K, cfg.monotonic_j_spec, detail::sub_seed(cfg.seed, 3),
                                           cfg.monotonic_decay);
      const double radius = detail::theorem_grid(cfg, p0, mode, K, Ns.front()).reliable_radius();
      std::vector<double> errs;
      for (int N : Ns) {
        errs.push_back(detail::field_report(cfg, f, detail::theorem_grid(cfg, p0, mode, K, N), p0, {}, radius)
                           .max_rel_error);
      }
      bool ok = true;
      std::string note;
      for (std::size_t i = 0; i < errs.size(); ++i) {
        if (i > 0 && errs[i] > 1.1 * errs[i - 1]) ok = false;
        note += (i ? ";" : "") + std::string("N") + std::to_string(Ns[i]) + "=" + io::fmt(errs[i], "%.3e");
      }
      if (errs.front() > 0.0 && errs.back() > 0.0) {
        const double rate = std::log(errs.front() / errs.back()) / static_cast<double>(Ns.back() - Ns.front());
        note += ";decay_per_zero=" + io::fmt(rate, "%.4f");
      }
      push({"reduction", "monotonicity", detail::mode_name(mode), K, Ns.back(), 0, true, ok, errs.back(), 0.0, 1.1,
            0, 0, sw.seconds(), note});
    }
  }

  return res;
}

/// Spectrum-domain corollaries on space-limited fields, and the inner-chirp verdict.
inline SweepResult run_corollary_checks(const ExperimentConfig& cfg) {
  SweepResult res;
  res.seed = cfg.seed;
  if (cfg.K_values.empty() || cfg.N_values.empty() || cfg.modes.empty()) return res;
  const OffsetParams p0 = OffsetParams::fourier();
  const double omega = cfg.omega;
  auto push = [&](SweepRow row) { res.rows.push_back(std::move(row)); };

  for (TheoremMode mode : cfg.modes) {
    const std::string name = mode == TheoremMode::theorem1 ? "corollary1" : "corollary2";
    for (int K : cfg.K_values) {
      const auto f = detail::corollary_field(cfg, p0, mode, K, detail::sub_seed(cfg.seed, 200 + static_cast<std::uint64_t>(K)));
      for (int N : cfg.N_values) {
        detail::Stopwatch sw;
        const auto grid = detail::corollary_grid(p0, omega, mode, K, N);
        double mean = 0.0;
        const double err = detail::corollary_error(cfg, f, p0, grid, {}, &mean);
        push({"reduction", "reconstruct_spectrum", name, K, N, 0, true, err <= cfg.tol_reconstruction, err, mean,
              cfg.tol_reconstruction, sample_count(K, N, mode), grid.size(), sw.seconds(), "space-limited field"});
      }
    }
  }

  {  // Inner chirp of the spectrum series; only distinguishable when a != d.
    detail::Stopwatch sw;
    const OffsetParams pc(0.5, 1.0, -1.0, 0.0);
    const int K = cfg.K_values.front();
    const int N = *std::max_element(cfg.N_values.begin(), cfg.N_values.end());
    const auto f = detail::corollary_field(cfg, pc, TheoremMode::theorem1, K, detail::sub_seed(cfg.seed, 4));
    const auto grid = detail::corollary_grid(pc, omega, TheoremMode::theorem1, K, N);
    std::vector<std::string> consistent;
    for (auto variant : {ChirpVariant::d_chirp, ChirpVariant::a_chirp}) {
      const std::string vname = variant == ChirpVariant::d_chirp ? "d_chirp" : "a_chirp";
      double mean = 0.0;
      const double err = detail::corollary_error(cfg, f, pc, grid, {.chirp = variant}, &mean);
      if (err <= cfg.tol_reconstruction) consistent.push_back(vname);
      push({"reduction", "chirp_variant", vname, K, N, 0, false, err <= cfg.tol_reconstruction, err, mean,
            cfg.tol_reconstruction, sample_count(K, N, TheoremMode::theorem1), grid.size(), sw.seconds(),
            "A=(0.5,1;-1,0)"});
    }
    const bool one = consistent.size() == 1;
    res.verdicts["chirp_variant"] = one ? consistent.front() : (consistent.empty() ? "none" : "both");
    push({"reduction", "chirp_verdict", one ? consistent.front() : "ambiguous", K, N, 0, true, one, 0.0, 0.0,
          cfg.tol_reconstruction, 0, 0, sw.seconds(), "exactly one variant must match"});
  }
  return res;
}

/// All tau = eta = 0 checks. Failures are recorded, never thrown.
inline SweepResult run_reduction_suite(const ExperimentConfig& cfg) {
  SweepResult res = run_transform_reductions(cfg);
  res.append(run_theorem_checks(cfg));
  res.append(run_corollary_checks(cfg));
  res.seed = cfg.seed;
  return res;
}

/// theorem1 vs theorem2 sample counts and runtimes over the complexity grid.
inline SweepResult run_complexity_sweep(const ExperimentConfig& cfg) {
  SweepResult res;
  res.seed = cfg.seed;
  const OffsetParams p0 = OffsetParams::fourier();
  for (int K : cfg.complexity_K) {
    for (int N : cfg.complexity_N) {
      std::size_t counts[2] = {0, 0};
      std::size_t consumed[2] = {0, 0};
      for (TheoremMode mode : {TheoremMode::theorem1, TheoremMode::theorem2}) {
        const auto f = detail::theorem_field(cfg, p0, mode, K, cfg.j_spec,
                                             detail::sub_seed(cfg.seed, 300 + static_cast<std::uint64_t>(K)));
        detail::Stopwatch sw;
        const auto grid = detail::theorem_grid(cfg, p0, mode, K, N);
        const auto rep = detail::field_report(cfg, f, grid, p0, {}, grid.reliable_radius());
        const int i = mode == TheoremMode::theorem1 ? 0 : 1;
        counts[i] = sample_count(K, N, mode);
        consumed[i] = grid.size();
        res.rows.push_back({"complexity", "reconstruct_field", detail::mode_name(mode), K, N, 0, false,
                            rep.max_rel_error <= cfg.tol_reconstruction, rep.max_rel_error, rep.mean_abs_error,
                            cfg.tol_reconstruction, counts[i], consumed[i], sw.seconds(), ""});
      }
      const std::size_t want = static_cast<std::size_t>(2 * K + 1);
      const bool ok = counts[0] == want * counts[1] && consumed[0] == want * consumed[1];
      res.rows.push_back({"complexity", "count_ratio", "theorem1/theorem2", K, N, 0, true, ok,
                          static_cast<double>(counts[0]) / static_cast<double>(counts[1]), 0.0,
                          static_cast<double>(want), counts[0], consumed[0], 0.0,
                          "law " + std::to_string(counts[0]) + "/" + std::to_string(counts[1]) + ";consumed " +
                              std::to_string(consumed[0]) + "/" + std::to_string(consumed[1])});
    }
  }
  return res;
}

/// Offsets on: both kernel modes and the series routes, reported only.
inline SweepResult run_general_investigation(const ExperimentConfig& cfg) {
  SweepResult res;
  res.seed = cfg.seed;
  if (cfg.K_values.empty() || cfg.N_values.empty() || cfg.modes.empty()) return res;
  const OffsetParams p = detail::investigation_params(cfg);
  const int K = cfg.K_values.front();
  const int N = *std::max_element(cfg.N_values.begin(), cfg.N_values.end());
  const std::string where = "tau=(" + io::fmt(p.tau()[0], "%g") + ";" + io::fmt(p.tau()[1], "%g") + ") eta=(" +
                            io::fmt(p.eta()[0], "%g") + ";" + io::fmt(p.eta()[1], "%g") + ")";

  for (TheoremMode mode : cfg.modes) {
    const auto f = detail::theorem_field(cfg, p, mode, K, cfg.j_spec, detail::sub_seed(cfg.seed, 400));
    const auto grid = detail::theorem_grid(cfg, p, mode, K, N);
    {
      detail::Stopwatch sw;
      const auto rep = detail::field_report(cfg, f, grid, p, {.kernel = KernelMode::reduced}, grid.reliable_radius());
      res.rows.push_back({"general", "reconstruct_field", std::string(detail::mode_name(mode)) + "/reduced", K, N, 0,
                          false, rep.max_rel_error <= cfg.tol_reconstruction, rep.max_rel_error, rep.mean_abs_error,
                          cfg.tol_reconstruction, sample_count(K, N, mode), grid.size(), sw.seconds(), where});
    }
    for (int M : cfg.M_values) {
      detail::Stopwatch sw;
      const auto rep = detail::field_report(cfg, f, grid, p, {.kernel = KernelMode::strict, .msum = M},
                                            grid.reliable_radius());
      const int m_used = M >= 0 ? M : default_msum(p, grid.reliable_radius(), cfg.omega);
      res.rows.push_back({"general", "reconstruct_field", std::string(detail::mode_name(mode)) + "/strict", K, N,
                          m_used, false, rep.max_rel_error <= cfg.tol_reconstruction, rep.max_rel_error,
                          rep.mean_abs_error, cfg.tol_reconstruction, sample_count(K, N, mode), grid.size(),
                          sw.seconds(), where + (M < 0 ? " M=default" : "")});
    }
  }

  {  // Angular series routes against the direct transform with offsets on.
    const auto s = FourierBesselSpectrum::random(cfg.omega, std::max(K, 1), static_cast<std::size_t>(cfg.j_spec),
                                                 detail::sub_seed(cfg.seed, 401));
    const auto f = synthesize(s, p, SynthesisMode::olct_space, {.kind = ProfileKind::sonine});
    const auto grid = PolarGrid::uniform(cfg.omega, 6, 12);
    const auto direct = olct_forward(f, p, grid, detail::probe_transform_options(cfg.threads)).values;
    for (auto route : {SeriesRoute::order_n, SeriesRoute::order_2n, SeriesRoute::per_m_expansion}) {
      detail::Stopwatch sw;
      const std::string name =
          route == SeriesRoute::order_n ? "order_n" : (route == SeriesRoute::order_2n ? "order_2n" : "per_m");
      SeriesOptions so{.route = route};
      so.hankel.threads = cfg.threads;
      double mean = 0.0;
      const double err = detail::max_rel(olct_series(f, p, grid, so).values, direct, &mean);
      res.rows.push_back({"general", "series_route", name, std::max(K, 1), 0, 0, false, err <= cfg.tol_transform, err,
                          mean, cfg.tol_transform, 0, 0, sw.seconds(), where});
    }
  }
  return res;
}

/// Writes `path` (CSV), `<stem>.summary.txt` and `<stem>.timings.csv`. The
/// CSV and summary carry no timings, so they are byte-identical for a fixed
/// seed.
inline void emit_report(const SweepResult& result, const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path out(path);
  fs::path stem = out;
  stem.replace_extension();

  std::string csv =
      "suite,check,mode,K,N,M,seed,asserted,pass,max_error,mean_error,tolerance,sample_count,consumed_samples,note\n";
  std::string timings = "suite,check,mode,K,N,M,runtime_s\n";
  for (const auto& r : result.rows) {
    const std::string key = r.suite + "," + r.check + "," + r.mode + "," + std::to_string(r.K) + "," +
                            std::to_string(r.N) + "," + std::to_string(r.M);
    csv += key + "," + std::to_string(result.seed) + "," + (r.asserted ? "1" : "0") + "," + (r.pass ? "1" : "0") +
           "," + io::fmt(r.max_error, "%.6e") + "," + io::fmt(r.mean_error, "%.6e") + "," +
           io::fmt(r.tolerance, "%.3e") + "," + std::to_string(r.sample_count) + "," +
           std::to_string(r.consumed_samples) + "," + r.note + "\n";
    timings += key + "," + io::fmt(r.runtime, "%.4f") + "\n";
  }

  std::size_t asserted = 0;
  for (const auto& r : result.rows) asserted += r.asserted ? 1 : 0;
  std::string summary = "seed " + std::to_string(result.seed) + "\n";
  summary += "rows " + std::to_string(result.rows.size()) + ", asserted " + std::to_string(asserted) + ", failed " +
             std::to_string(result.failures()) + "\n";
  for (const auto& [k, v] : result.verdicts) summary += "verdict " + k + ": " + v + "\n";
  for (const auto& r : result.rows) {
    if (r.asserted && !r.pass) {
      summary += "FAIL " + r.suite + "/" + r.check + "/" + r.mode + " K=" + std::to_string(r.K) +
                 " N=" + std::to_string(r.N) + " error " + io::fmt(r.max_error, "%.3e") + " > " +
                 io::fmt(r.tolerance, "%.1e") + "\n";
    }
  }
  summary += result.all_passed() ? "result: PASS\n" : "result: FAIL\n";

  io::write_file(out.string(), csv);
  io::write_file(stem.string() + ".summary.txt", summary);
  io::write_file(stem.string() + ".timings.csv", timings);
}

}  // namespace polar_olct
