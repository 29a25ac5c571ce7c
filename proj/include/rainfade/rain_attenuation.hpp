#pragma once

// Rain specific attenuation N_R = theta * R^eps (dB/km) with frequency
// dependent coefficients from a Gaussian-sum-plus-linear fit in log10(f_GHz),
// mixed across polarizations for the path geometry.

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "rainfade/common.hpp"

namespace rainfade {

struct RainConfig {
  double rain_rate_mm_per_hr = 50.0;
  double path_elevation_deg = 0.0;
  double polarization_tilt_deg = 0.0;
  double rain_path_depth_km = 0.25;
  bool enabled = true;

  // Scattering, absorption and polarization depths add up to the rained path.
  static double compose_depth(double scattering_km, double absorption_km,
                              double polarization_km) {
    return scattering_km + absorption_km + polarization_km;
  }

  void validate() const {
    require(rain_rate_mm_per_hr >= 0.0, "rain_rate must be >= 0");
    require(rain_path_depth_km >= 0.0, "rain_path_depth must be >= 0");
    require(path_elevation_deg >= 0.0 && path_elevation_deg <= 90.0,
            "path_elevation_deg must lie in [0, 90]");
    require(polarization_tilt_deg >= -90.0 && polarization_tilt_deg <= 90.0,
            "polarization_tilt_deg must lie in [-90, 90]");
  }
};

// One fitted curve: sum_i a_i exp(-((x - b_i)/c_i)^2) + m x + c, x = log10(f_GHz).
struct CoefficientCurve {
  std::vector<double> amplitude;
  std::vector<double> center;
  std::vector<double> width;
  double slope = 0.0;
  double offset = 0.0;

  double evaluate(double log10_f_ghz) const {
    double sum = slope * log10_f_ghz + offset;
    for (std::size_t i = 0; i < amplitude.size(); ++i) {
      const double z = (log10_f_ghz - center[i]) / width[i];
      sum += amplitude[i] * std::exp(-z * z);
    }
    return sum;
  }
};

class CoefficientTable {
 public:
  enum Group : std::size_t { kH = 0, kV = 1, AlphaH = 2, AlphaV = 3 };

  std::string version;
  double min_ghz = 1.0;
  double max_ghz = 100.0;
  std::array<CoefficientCurve, 4> curves;
  std::uint64_t checksum = 0;  // FNV-1a 64 of the source text

  static CoefficientTable parse(std::string_view text);
  static CoefficientTable load(const std::string& path);
};

struct PolarizedCoefficients {
  double theta_h;
  double theta_v;
  double eps_h;
  double eps_v;
};

struct EffectiveCoefficients {
  double theta;
  double eps;
};

namespace detail {

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline CoefficientTable::Group parse_group(const std::string& name, int line) {
  if (name == "k_H") return CoefficientTable::kH;
  if (name == "k_V") return CoefficientTable::kV;
  if (name == "alpha_H") return CoefficientTable::AlphaH;
  if (name == "alpha_V") return CoefficientTable::AlphaV;
  throw DomainError("coefficient table line " + std::to_string(line) +
                    ": unknown group '" + name + "'");
}

}  // namespace detail

// Format (whitespace separated, '#' starts a comment):
//   version <tag>
//   valid_ghz <min> <max>
//   <group> gauss <a> <b> <c>     one line per Gaussian term
//   <group> linear <m> <c>
// with <group> one of k_H k_V alpha_H alpha_V. k groups yield log10(k).
inline CoefficientTable CoefficientTable::parse(std::string_view text) {
  CoefficientTable table;
  table.checksum = detail::fnv1a64(text);
  std::array<bool, 4> have_linear{};
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::string head;
    if (!(ls >> head)) continue;
    auto fail = [&](const std::string& why) {
      throw DomainError("coefficient table line " + std::to_string(line_no) + ": " + why);
    };
    if (head == "version") {
      if (!(ls >> table.version)) fail("missing version tag");
      continue;
    }
    if (head == "valid_ghz") {
      if (!(ls >> table.min_ghz >> table.max_ghz) || table.min_ghz <= 0.0 ||
          table.max_ghz <= table.min_ghz) {
        fail("bad validity window");
      }
      continue;
    }
    const auto group = detail::parse_group(head, line_no);
    std::string kind;
    ls >> kind;
    auto& curve = table.curves[group];
    if (kind == "gauss") {
      double a, b, c;
      if (!(ls >> a >> b >> c)) fail("gauss needs three numbers");
      if (c == 0.0) fail("zero Gaussian width");
      curve.amplitude.push_back(a);
      curve.center.push_back(b);
      curve.width.push_back(c);
    } else if (kind == "linear") {
      if (!(ls >> curve.slope >> curve.offset)) fail("linear needs two numbers");
      have_linear[group] = true;
    } else {
      fail("expected 'gauss' or 'linear'");
    }
  }
  for (std::size_t g = 0; g < 4; ++g) {
    if (!have_linear[g] || table.curves[g].amplitude.empty()) {
      throw DomainError("coefficient table is missing terms for group " + std::to_string(g));
    }
  }
  return table;
}

inline CoefficientTable CoefficientTable::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot open coefficient table '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

inline std::string checksum_hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

inline PolarizedCoefficients power_law_coefficients(double frequency_hz,
                                                    const CoefficientTable& table) {
  const double f_ghz = frequency_hz / 1e9;
  if (!(f_ghz >= table.min_ghz && f_ghz <= table.max_ghz)) {
    std::ostringstream os;
    os << "frequency " << f_ghz << " GHz outside coefficient table window [" << table.min_ghz
       << ", " << table.max_ghz << "] GHz";
    throw DomainError(os.str());
  }
  const double x = std::log10(f_ghz);
  return {std::pow(10.0, table.curves[CoefficientTable::kH].evaluate(x)),
          std::pow(10.0, table.curves[CoefficientTable::kV].evaluate(x)),
          table.curves[CoefficientTable::AlphaH].evaluate(x),
          table.curves[CoefficientTable::AlphaV].evaluate(x)};
}

inline EffectiveCoefficients effective_coefficients(const PolarizedCoefficients& p,
                                                    double elevation_deg, double tilt_deg) {
  constexpr double kDeg = std::numbers::pi / 180.0;
  const double c = std::cos(elevation_deg * kDeg);
  const double mix = c * c * std::cos(2.0 * tilt_deg * kDeg);
  const double theta = (p.theta_h + p.theta_v + (p.theta_h - p.theta_v) * mix) / 2.0;
  if (theta == 0.0) throw DomainError("effective_coefficients: theta is zero");
  const double eps = (p.theta_h * p.eps_h + p.theta_v * p.eps_v +
                      (p.theta_h * p.eps_h - p.theta_v * p.eps_v) * mix) /
                     (2.0 * theta);
  return {theta, eps};
}

// dB/km
inline double specific_attenuation(double frequency_hz, const RainConfig& rain,
                                   const CoefficientTable& table) {
  rain.validate();
  if (!rain.enabled || rain.rain_rate_mm_per_hr == 0.0) return 0.0;
  const auto eff = effective_coefficients(power_law_coefficients(frequency_hz, table),
                                          rain.path_elevation_deg, rain.polarization_tilt_deg);
  return eff.theta * std::pow(rain.rain_rate_mm_per_hr, eff.eps);
}

inline double path_attenuation_db(double specific_db_per_km, double depth_km) {
  require(specific_db_per_km >= 0.0 && depth_km >= 0.0,
          "path_attenuation_db: inputs must be >= 0");
  return specific_db_per_km * depth_km;
}

// Total rain penalty on the link in dB; exactly 0 when rain is disabled.
inline double rain_attenuation_db(double frequency_hz, const RainConfig& rain,
                                  const CoefficientTable& table) {
  if (!rain.enabled) return 0.0;
  return path_attenuation_db(specific_attenuation(frequency_hz, rain, table),
                             rain.rain_path_depth_km);
}

}  // namespace rainfade
