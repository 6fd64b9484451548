#pragma once

// Flat key=value files, spectrum CSV and grid CSV.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polar_olct/field.hpp"
#include "polar_olct/params.hpp"
#include "polar_olct/transforms.hpp"

namespace polar_olct {

namespace io {

inline std::string trim(const std::string& s) {
  const auto lo = s.find_first_not_of(" \t\r\n");
  if (lo == std::string::npos) return {};
  const auto hi = s.find_last_not_of(" \t\r\n");
  return s.substr(lo, hi - lo + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": not a number: '" + s + "'");
  }
}

inline long long to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": not an integer: '" + s + "'");
  }
}

/// %.17g: round-trips doubles and prints the same bytes on every run.
inline std::string fmt(double x, const char* spec = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Creates missing parent directories.
inline void write_file(const std::string& path, const std::string& text) {
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
    if (ec) throw std::runtime_error("cannot create directory " + parent.string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace io

/// `key = value` lines; `#` starts a comment. Later keys override earlier ones.
inline std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = io::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = io::trim(line.substr(0, eq));
    if (key.empty()) throw std::invalid_argument("line " + std::to_string(lineno) + ": empty key");
    kv[key] = io::trim(line.substr(eq + 1));
  }
  return kv;
}

/// Contents of a parameter file: a, b, c, d, tau1, tau2, eta1, eta2, Omega,
/// K, mode, plus optional order (fixed Bessel order) and profile.
struct ParamsFile {
  double a = 0.0, b = 1.0, c = -1.0, d = 0.0;
  Vec2 tau{0.0, 0.0};
  Vec2 eta{0.0, 0.0};
  double omega = 1.0;
  int K = 0;
  SynthesisMode mode = SynthesisMode::olct_space;
  int order = 0;
  ProfileKind profile = ProfileKind::fourier_bessel;
  bool profile_given = false;

  [[nodiscard]] OffsetParams params() const { return OffsetParams(a, b, c, d, tau, eta); }
};

inline ProfileKind parse_profile(const std::string& s) {
  if (s == "fourier_bessel") return ProfileKind::fourier_bessel;
  if (s == "sonine") return ProfileKind::sonine;
  if (s == "space_limited") return ProfileKind::space_limited;
  throw std::invalid_argument("unknown profile '" + s + "'");
}

inline ParamsFile parse_params(const std::string& text) {
  ParamsFile p;
  for (const auto& [key, value] : parse_key_values(text)) {
    if (key == "a") p.a = io::to_double(value, key);
    else if (key == "b") p.b = io::to_double(value, key);
    else if (key == "c") p.c = io::to_double(value, key);
    else if (key == "d") p.d = io::to_double(value, key);
    else if (key == "tau1") p.tau[0] = io::to_double(value, key);
    else if (key == "tau2") p.tau[1] = io::to_double(value, key);
    else if (key == "eta1") p.eta[0] = io::to_double(value, key);
    else if (key == "eta2") p.eta[1] = io::to_double(value, key);
    else if (key == "Omega") p.omega = io::to_double(value, key);
    else if (key == "K") p.K = static_cast<int>(io::to_int(value, key));
    else if (key == "order") p.order = static_cast<int>(io::to_int(value, key));
    else if (key == "mode") {
      if (value == "olct_space") p.mode = SynthesisMode::olct_space;
      else if (value == "olcht_space") p.mode = SynthesisMode::olcht_space;
      else throw std::invalid_argument("unknown mode '" + value + "'");
    } else if (key == "profile") {
      p.profile = parse_profile(value);
      p.profile_given = true;
    } else {
      throw std::invalid_argument("unknown parameter key '" + key + "'");
    }
  }
  (void)p.params();  // validates
  return p;
}

inline ParamsFile load_params(const std::string& path) {
  try {
    return parse_params(io::read_file(path));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

/// Spectrum CSV: "Omega,K" header, its values, "n,j,Re(eps),Im(eps)" header, rows.
inline std::string format_spectrum(const FourierBesselSpectrum& s) {
  std::string out = "Omega,K\n" + io::fmt(s.omega) + "," + std::to_string(s.K) + "\nn,j,Re(eps),Im(eps)\n";
  for (const auto& [n, eps] : s.coefficients) {
    for (std::size_t j = 0; j < eps.size(); ++j) {
      out += std::to_string(n) + "," + std::to_string(j + 1) + "," + io::fmt(eps[j].real()) + "," +
             io::fmt(eps[j].imag()) + "\n";
    }
  }
  return out;
}

inline FourierBesselSpectrum parse_spectrum(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    line = io::trim(line);
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.size() < 3 || lines[0] != "Omega,K" || lines[2] != "n,j,Re(eps),Im(eps)") {
    throw std::invalid_argument("spectrum CSV: expected 'Omega,K' and 'n,j,Re(eps),Im(eps)' headers");
  }
  FourierBesselSpectrum s;
  const auto head = io::split(lines[1], ',');
  if (head.size() != 2) throw std::invalid_argument("spectrum CSV: bad Omega,K line");
  s.omega = io::to_double(head[0], "Omega");
  s.K = static_cast<int>(io::to_int(head[1], "K"));
  for (std::size_t i = 3; i < lines.size(); ++i) {
    const auto f = io::split(lines[i], ',');
    if (f.size() != 4) throw std::invalid_argument("spectrum CSV line " + std::to_string(i + 1) + ": need 4 fields");
    const int n = static_cast<int>(io::to_int(f[0], "n"));
    const long long j = io::to_int(f[1], "j");
    if (j < 1) throw std::invalid_argument("spectrum CSV: j must be >= 1");
    auto& eps = s.coefficients[n];
    if (eps.size() < static_cast<std::size_t>(j)) eps.resize(static_cast<std::size_t>(j), complex(0.0, 0.0));
    eps[static_cast<std::size_t>(j - 1)] = {io::to_double(f[2], "Re(eps)"), io::to_double(f[3], "Im(eps)")};
  }
  s.validate();
  return s;
}

inline FourierBesselSpectrum load_spectrum(const std::string& path) {
  try {
    return parse_spectrum(io::read_file(path));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

/// "r_max,nr,ntheta" as used by the grid options of the CLI.
struct GridSpec {
  double r_max = 1.0;
  std::size_t nr = 16;
  std::size_t ntheta = 16;
};

inline GridSpec parse_grid_spec(const std::string& s) {
  const auto f = io::split(s, ',');
  if (f.size() != 3) throw std::invalid_argument("grid spec must be r_max,nr,ntheta");
  GridSpec g{io::to_double(f[0], "r_max"), static_cast<std::size_t>(io::to_int(f[1], "nr")),
             static_cast<std::size_t>(io::to_int(f[2], "ntheta"))};
  if (!(g.r_max > 0.0) || g.nr == 0 || g.ntheta == 0) throw std::invalid_argument("grid spec must be positive");
  return g;
}

/// Rows "x,angle,Re,Im" with the given column names.
inline std::string format_grid(const std::vector<PolarPoint>& pts, const std::vector<complex>& values,
                               const std::string& header) {
  std::string out = header + "\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out += io::fmt(pts[i].r) + "," + io::fmt(pts[i].theta) + "," + io::fmt(values[i].real()) + "," +
           io::fmt(values[i].imag()) + "\n";
  }
  return out;
}

}  // namespace polar_olct
