#include <gtest/gtest.h>

#include <filesystem>
#include <numbers>

#include "polar_olct/polar_olct.hpp"

using namespace polar_olct;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "polar_olct_harness_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

const SweepRow* find_row(const SweepResult& r, const std::string& check, const std::string& mode, int K, int N) {
  for (const auto& row : r.rows) {
    if (row.check == check && row.mode == mode && row.K == K && row.N == N) return &row;
  }
  return nullptr;
}

}  // namespace

TEST(Config, ParsesKeysAndLists) {
  const auto c = parse_config(
      "# sweep\n"
      "modes = theorem2\n"
      "K = 1, 3\n"
      "N = 5,10  # two\n"
      "M =\n"
      "Omega = 2.5\n"
      "seed = 42\n"
      "probes = 8x6\n"
      "tau = 0.1, -0.2\n"
      "threads = 2\n");
  ASSERT_EQ(c.modes.size(), 1u);
  EXPECT_EQ(c.modes[0], TheoremMode::theorem2);
  EXPECT_EQ(c.K_values, (std::vector<int>{1, 3}));
  EXPECT_EQ(c.N_values, (std::vector<int>{5, 10}));
  EXPECT_TRUE(c.M_values.empty());
  EXPECT_DOUBLE_EQ(c.omega, 2.5);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.probe_nr, 8);
  EXPECT_EQ(c.probe_ntheta, 6);
  EXPECT_DOUBLE_EQ(c.tau[1], -0.2);
  EXPECT_EQ(c.threads, 2u);
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse_config("bogus = 1\n"), std::invalid_argument);
  EXPECT_THROW(parse_config("K = 1, x\n"), std::invalid_argument);
  EXPECT_THROW(parse_config("just a line\n"), std::invalid_argument);
  EXPECT_THROW(parse_config("modes = theorem3\n"), std::invalid_argument);
  EXPECT_THROW(parse_config("Omega = -1\n"), std::invalid_argument);
  try {
    parse_config("Omega = abc\n");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("Omega"), std::string::npos);
  }
  EXPECT_THROW(load_config("/nonexistent/dir/cfg.txt"), std::runtime_error);
}

TEST(Harness, EmptyRangeGivesEmptyResult) {
  auto c = parse_config("K =\n");
  EXPECT_TRUE(run_reduction_suite(c).rows.empty());
  EXPECT_TRUE(run_general_investigation(c).rows.empty());
  c = parse_config("complexity_N =\n");
  const auto r = run_complexity_sweep(c);
  EXPECT_TRUE(r.rows.empty());
  EXPECT_TRUE(r.all_passed());

  const auto path = scratch("empty.csv");
  emit_report(r, path.string());
  const auto csv = io::read_file(path.string());
  EXPECT_EQ(count_lines(csv), 1u);
  EXPECT_EQ(csv.rfind("suite,check,mode,K,N,M,seed", 0), 0u);
}

TEST(Harness, NegativeControlIsFlagged) {
  // Five zeros cannot carry eight Fourier-Bessel terms per order.
  auto c = parse_config("modes = theorem1\nK = 2\nN = 5\nj_spec = 8\nprobes = 8x8\n");
  const auto r = run_theorem_checks(c);
  const auto* row = find_row(r, "reconstruct_field", "theorem1", 2, 5);
  ASSERT_NE(row, nullptr);
  EXPECT_TRUE(row->asserted);
  EXPECT_FALSE(row->pass);
  EXPECT_GT(row->max_error, c.tol_reconstruction);
  EXPECT_FALSE(r.all_passed());
  EXPECT_EQ(r.failures(), 1u);

  const auto path = scratch("negative.csv");
  emit_report(r, path.string());
  const auto summary = io::read_file(scratch("negative.summary.txt").string());
  EXPECT_NE(summary.find("FAIL reduction/reconstruct_field/theorem1 K=2 N=5"), std::string::npos);
  EXPECT_NE(summary.find("result: FAIL"), std::string::npos);
}

TEST(Harness, TheoremChecksPassWhenSampled) {
  auto c = parse_config("K = 1\nN = 10, 20\nj_spec = 3\nprobes = 8x8\n");
  const auto r = run_theorem_checks(c);
  // 2 modes x 2 N + 2 monotonicity rows.
  EXPECT_EQ(r.rows.size(), 6u);
  for (const auto& row : r.rows) EXPECT_TRUE(row.pass) << row.check << " " << row.mode << " N=" << row.N;
  const auto* t1 = find_row(r, "reconstruct_field", "theorem1", 1, 10);
  ASSERT_NE(t1, nullptr);
  EXPECT_EQ(t1->sample_count, 900u);
  EXPECT_EQ(t1->consumed_samples, consumed_sample_count(1, 10, TheoremMode::theorem1));
}

TEST(Harness, ComplexityCounts) {
  auto c = parse_config("complexity_K = 0, 1, 2\ncomplexity_N = 10\nj_spec = 2\nprobes = 4x4\n");
  const auto r = run_complexity_sweep(c);
  EXPECT_EQ(r.rows.size(), 9u);
  EXPECT_TRUE(r.all_passed());
  const auto* k2 = find_row(r, "count_ratio", "theorem1/theorem2", 2, 10);
  ASSERT_NE(k2, nullptr);
  EXPECT_EQ(k2->sample_count, 2500u);
  EXPECT_DOUBLE_EQ(k2->max_error, 5.0);
  EXPECT_EQ(find_row(r, "reconstruct_field", "theorem2", 2, 10)->sample_count, 500u);
  EXPECT_EQ(find_row(r, "reconstruct_field", "theorem1", 1, 10)->sample_count, 900u);
  EXPECT_EQ(find_row(r, "reconstruct_field", "theorem2", 1, 10)->sample_count, 300u);
  EXPECT_DOUBLE_EQ(find_row(r, "count_ratio", "theorem1/theorem2", 0, 10)->max_error, 1.0);

  const auto path = scratch("complexity.csv");
  emit_report(r, path.string());
  EXPECT_EQ(count_lines(io::read_file(path.string())), 10u);
  EXPECT_EQ(count_lines(io::read_file(scratch("complexity.timings.csv").string())), 10u);
}

TEST(Harness, ReportsAreDeterministic) {
  auto c = parse_config("complexity_K = 1\ncomplexity_N = 10, 20\nj_spec = 2\nprobes = 4x4\nseed = 9\n");
  const auto a = scratch("det_a.csv");
  const auto b = scratch("det_b.csv");
  emit_report(run_complexity_sweep(c), a.string());
  emit_report(run_complexity_sweep(c), b.string());
  EXPECT_EQ(io::read_file(a.string()), io::read_file(b.string()));
  EXPECT_EQ(io::read_file(scratch("det_a.summary.txt").string()), io::read_file(scratch("det_b.summary.txt").string()));
  EXPECT_NE(io::read_file(a.string()).find(",9,"), std::string::npos);
}

TEST(Harness, EmitReportRowCountAndErrors) {
  SweepResult r;
  r.seed = 3;
  for (int i = 0; i < 9; ++i) r.rows.push_back({"s", "c", "m", i, 10, 0, true, true, 1e-9, 1e-10, 1e-5, 1, 1, 0.1, ""});
  const auto path = scratch("nine.csv");
  emit_report(r, path.string());
  EXPECT_EQ(count_lines(io::read_file(path.string())), 10u);

  const auto blocker = scratch("blocker");
  io::write_file(blocker.string(), "x");
  const std::string bad = (blocker / "out.csv").string();
  try {
    emit_report(r, bad);
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find(blocker.string()), std::string::npos);
  }
}

TEST(Io, SpectrumRoundTrip) {
  const auto s = FourierBesselSpectrum::random(std::numbers::pi, 2, 3, 11);
  const auto back = parse_spectrum(format_spectrum(s));
  EXPECT_EQ(back.K, 2);
  EXPECT_DOUBLE_EQ(back.omega, s.omega);
  ASSERT_EQ(back.coefficients.size(), s.coefficients.size());
  for (const auto& [n, eps] : s.coefficients) EXPECT_EQ(back.coefficients.at(n), eps);
  EXPECT_THROW(parse_spectrum("Omega,K\n1,0\n"), std::invalid_argument);
  EXPECT_THROW(parse_spectrum("Omega,K\n1,0\nn,j,Re(eps),Im(eps)\n0,0,1,0\n"), std::invalid_argument);
  EXPECT_THROW(parse_spectrum("Omega,K\n1,0\nn,j,Re(eps),Im(eps)\n3,1,1,0\n"), std::invalid_argument);
}

TEST(Io, ParamsFile) {
  const auto p = parse_params("a = 1\nb = 2\nc = -0.25\nd = 0.5\ntau1 = 0.3\neta2 = -0.2\nOmega = 3\nK = 2\n"
                              "mode = olcht_space\norder = 1\nprofile = sonine\n");
  EXPECT_DOUBLE_EQ(p.b, 2.0);
  EXPECT_DOUBLE_EQ(p.tau[0], 0.3);
  EXPECT_DOUBLE_EQ(p.eta[1], -0.2);
  EXPECT_EQ(p.mode, SynthesisMode::olcht_space);
  EXPECT_EQ(p.profile, ProfileKind::sonine);
  EXPECT_TRUE(p.profile_given);
  EXPECT_THROW(parse_params("a = 1\nb = 1\nc = 1\nd = 1\n"), std::invalid_argument);  // det 0
  EXPECT_THROW(parse_params("zeta = 1\n"), std::invalid_argument);
  EXPECT_THROW(load_params("/nonexistent/params.txt"), std::runtime_error);
}

TEST(Io, GridSpec) {
  const auto g = parse_grid_spec("2.5,8,16");
  EXPECT_DOUBLE_EQ(g.r_max, 2.5);
  EXPECT_EQ(g.nr, 8u);
  EXPECT_EQ(g.ntheta, 16u);
  EXPECT_THROW(parse_grid_spec("1,2"), std::invalid_argument);
  EXPECT_THROW(parse_grid_spec("0,2,2"), std::invalid_argument);
}
