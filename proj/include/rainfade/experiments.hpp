#pragma once

// Sweep orchestration behind the secrecy / energy / miss-rate / sensitivity
// figures, and the CSV form of the results.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "rainfade/attack_sim.hpp"
#include "rainfade/channel_model.hpp"
#include "rainfade/config.hpp"
#include "rainfade/missrate.hpp"
#include "rainfade/rain_attenuation.hpp"
#include "rainfade/secrecy.hpp"

namespace rainfade {

enum class ExperimentName {
  SecrecyVsDistance,
  EnergyVsDistance,
  SecrecyVsFrequency,
  EnergyVsFrequency,
  MissrateVsAttempts,
  MissPmfComparison,
  SensitivityBars,
  DeploymentSnapshot,
};

inline constexpr ExperimentName kAllExperiments[] = {
    ExperimentName::SecrecyVsDistance,  ExperimentName::EnergyVsDistance,
    ExperimentName::SecrecyVsFrequency, ExperimentName::EnergyVsFrequency,
    ExperimentName::MissrateVsAttempts, ExperimentName::MissPmfComparison,
    ExperimentName::SensitivityBars,    ExperimentName::DeploymentSnapshot,
};

inline std::string_view to_string(ExperimentName n) {
  switch (n) {
    case ExperimentName::SecrecyVsDistance: return "SecrecyVsDistance";
    case ExperimentName::EnergyVsDistance: return "EnergyVsDistance";
    case ExperimentName::SecrecyVsFrequency: return "SecrecyVsFrequency";
    case ExperimentName::EnergyVsFrequency: return "EnergyVsFrequency";
    case ExperimentName::MissrateVsAttempts: return "MissrateVsAttempts";
    case ExperimentName::MissPmfComparison: return "MissPmfComparison";
    case ExperimentName::SensitivityBars: return "SensitivityBars";
    case ExperimentName::DeploymentSnapshot: return "DeploymentSnapshot";
  }
  return "?";
}

inline ExperimentName parse_experiment_name(std::string_view s) {
  for (auto n : kAllExperiments) {
    if (to_string(n) == s) return n;
  }
  throw DomainError("unknown experiment '" + std::string(s) + "'");
}

struct SweepGrid {
  double start = 0.0;
  double stop = 1.0;
  double step = 1.0;

  void validate() const {
    require(step > 0.0, "sweep step must be > 0");
    require(stop > start, "sweep stop must be > start");
  }

  // Inclusive of stop when it lies on the grid (up to rounding).
  std::vector<double> points() const {
    validate();
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
};

struct ExperimentSpec {
  ExperimentName name = ExperimentName::SecrecyVsDistance;
  SweepGrid sweep;
  std::vector<double> points;  // explicit x values; overrides sweep when non-empty
  std::vector<Scenario> scenarios{Scenario::Rural, Scenario::Urban};
  std::vector<bool> ar{false, true};
  int replicas = 1;
  std::uint64_t seed = 1;

  std::vector<double> x_values() const { return points.empty() ? sweep.points() : points; }

  void validate() const {
    if (points.empty()) sweep.validate();
    require(!scenarios.empty(), "experiment needs at least one scenario");
    require(!ar.empty(), "experiment needs at least one AR setting");
    require(replicas >= 1, "replicas must be >= 1");
  }
};

// Defaults per experiment, taken from the config's sweep section.
inline ExperimentSpec default_spec(ExperimentName name, const Config& cfg) {
  ExperimentSpec spec;
  spec.name = name;
  spec.seed = cfg.attack.seed;
  const auto& s = cfg.sweeps;
  switch (name) {
    case ExperimentName::SecrecyVsDistance:
    case ExperimentName::EnergyVsDistance:
      spec.sweep = {s.distance_start_m, s.distance_stop_m, s.distance_step_m};
      break;
    case ExperimentName::SecrecyVsFrequency:
    case ExperimentName::EnergyVsFrequency:
      spec.sweep = {s.frequency_start_hz, s.frequency_stop_hz, s.frequency_step_hz};
      break;
    case ExperimentName::MissrateVsAttempts:
      spec.sweep = {s.attempts_start, s.attempts_stop, s.attempts_step};
      spec.scenarios = {Scenario::Urban};
      spec.ar = {true};
      break;
    case ExperimentName::MissPmfComparison:
      spec.sweep = {0.0, static_cast<double>(s.pmf_attempts), 1.0};
      spec.scenarios = {Scenario::Urban};
      spec.ar = {true};
      break;
    case ExperimentName::SensitivityBars:
      spec.points = cfg.deployment_distances_m;
      spec.ar = {true};
      break;
    case ExperimentName::DeploymentSnapshot:
      spec.points = cfg.deployment_distances_m;
      spec.scenarios = {Scenario::Urban};
      spec.ar = {true};
      break;
  }
  return spec;
}

struct MetricsRecord {
  std::string experiment;
  Scenario scenario = Scenario::Urban;
  bool ar_enabled = false;
  double x_value = 0.0;
  std::string metric;
  double value = 0.0;
  std::string units;

  bool operator==(const MetricsRecord&) const = default;
};

inline void sort_records(std::vector<MetricsRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.scenario, a.ar_enabled, a.x_value, a.metric) <
           std::tie(b.scenario, b.ar_enabled, b.x_value, b.metric);
  });
}

// Everything an experiment needs beyond the spec itself.
struct Pipeline {
  const Config& cfg;
  const CoefficientTable& table;

  double rain_db(double frequency_hz, bool ar_on) const {
    return ar_on ? rain_attenuation_db(frequency_hz, cfg.rain, table) : 0.0;
  }

  template <class Urbg>
  double user_capacity(Scenario s, double distance_m, double frequency_hz, bool ar_on,
                       Urbg& rng) const {
    const auto link = make_link(cfg, s, distance_m, frequency_hz);
    const double shadow = shadowing_value(make_shadowing(cfg, s), rng);
    return link_capacity_bps(link, shadow, rain_db(frequency_hz, ar_on), cfg.thermal_db);
  }

  // Eavesdropper at its configured distance, outside the rained area.
  template <class Urbg>
  double eavesdropper_capacity(Scenario s, double frequency_hz, Urbg& rng) const {
    const auto link = make_link(cfg, s, cfg.eavesdropper.distance_m, frequency_hz);
    const double shadow = shadowing_value(make_shadowing(cfg, s), rng);
    return link_capacity_bps(link, shadow, cfg.eavesdropper.rain_db, cfg.thermal_db);
  }

  template <class Urbg>
  double sweep_secrecy(Scenario s, double distance_m, double frequency_hz, bool ar_on,
                       Urbg& rng) const {
    const double cu = user_capacity(s, distance_m, frequency_hz, ar_on, rng);
    const double cev =
        cfg.sweeps.eavesdropper_passive ? 0.0 : eavesdropper_capacity(s, frequency_hz, rng);
    return secrecy_capacity(cu, cev);
  }

  double total_power_w() const { return cfg.link.tx_power_w + cfg.circuit_power_w; }
};

namespace detail {

struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  int n = 0;
  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  double mean() const { return sum / n; }
  double stderr_() const {
    if (n < 2) return 0.0;
    const double m = mean();
    const double var = std::max(0.0, (sum_sq - n * m * m) / (n - 1));
    return std::sqrt(var / n);
  }
};

inline std::mt19937_64 replica_rng(std::uint64_t seed, int replica, std::size_t point, Scenario s,
                                   bool ar) {
  std::seed_seq seq{static_cast<std::uint32_t>((seed + replica) & 0xffffffffu),
                    static_cast<std::uint32_t>((seed + replica) >> 32),
                    static_cast<std::uint32_t>(point), static_cast<std::uint32_t>(s),
                    static_cast<std::uint32_t>(ar)};
  return std::mt19937_64(seq);
}

}  // namespace detail

// Per-user throughput with and without the attack. The worst-CSI user is the
// target; under attack it keeps only the share of RRC setups the intruder
// misses, on top of the rain penalty when AR is on.
inline std::vector<MetricsRecord> deployment_snapshot(const std::vector<double>& user_distances,
                                                      const Config& cfg,
                                                      const CoefficientTable& table,
                                                      Scenario scenario = Scenario::Urban,
                                                      bool ar_on = true) {
  require(!user_distances.empty(), "deployment_snapshot: no users");
  const Pipeline pipe{cfg, table};
  std::vector<UserNode> users;
  for (std::size_t i = 0; i < user_distances.size(); ++i) {
    users.push_back({static_cast<int>(i + 1), user_distances[i], scenario});
  }
  const auto& target = select_target(users, [&](const UserNode& u) {
    return csi_score(u, cfg.link, cfg.rural, cfg.urban);
  });

  const double m_dl = cfg.attack.p_downlink_miss();
  const double m_ul = 1.0 - cfg.attack.p_uplink_success;
  const MissRateParams params{1.0, m_dl, cfg.attack.p_downlink_success * m_ul};
  const double miss_hd = analytic_missrate(params, AttackMode::HD).value;
  const double miss_fd = analytic_missrate(params, AttackMode::FD).value;

  const std::string exp(to_string(ExperimentName::DeploymentSnapshot));
  std::vector<MetricsRecord> out;
  for (const auto& u : users) {
    std::mt19937_64 rng(cfg.attack.seed + static_cast<std::uint64_t>(u.id));
    const ShadowingModel sh = make_shadowing(cfg, scenario);
    const double shadow = shadowing_value(sh, rng);
    const auto link = make_link(cfg, scenario, u.distance_m);
    const double clear = link_capacity_bps(link, shadow, 0.0, cfg.thermal_db);
    double hd = clear;
    double fd = clear;
    const bool is_target = u.id == target.id;
    if (is_target) {
      const double rained =
          link_capacity_bps(link, shadow, pipe.rain_db(cfg.link.frequency_hz, ar_on), cfg.thermal_db);
      hd = rained * miss_hd;
      fd = rained * miss_fd;
    }
    auto rec = [&](std::string metric, double v, std::string units) {
      out.push_back({exp, scenario, ar_on, u.distance_m, std::move(metric), v, std::move(units)});
    };
    rec("throughput_no_attack", clear, "bit/s");
    rec("throughput_hd_attack", hd, "bit/s");
    rec("throughput_fd_attack", fd, "bit/s");
    rec("target", is_target ? 1.0 : 0.0, "flag");
  }
  return out;
}

inline std::vector<MetricsRecord> run_experiment(const ExperimentSpec& spec, const Config& cfg,
                                                 const CoefficientTable& table) {
  spec.validate();
  const Pipeline pipe{cfg, table};
  const std::string exp(to_string(spec.name));
  const auto xs = spec.x_values();
  const bool stochastic_channel =
      cfg.shadowing_mode == ShadowingMode::Sampled &&
      (cfg.rural.shadow_sigma_db > 0.0 || cfg.urban.shadow_sigma_db > 0.0);

  std::vector<MetricsRecord> out;
  auto emit = [&](Scenario s, bool ar, double x, std::string metric, double v, std::string units) {
    out.push_back({exp, s, ar, x, std::move(metric), v, std::move(units)});
  };

  // Replica-averaged scalar metric of (scenario, ar, x, rng).
  auto channel_metric = [&](const std::string& metric, const std::string& units, auto&& eval) {
    for (Scenario s : spec.scenarios) {
      for (bool ar : spec.ar) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
          const int reps = stochastic_channel ? spec.replicas : 1;
          detail::Accumulator acc;
          try {
            for (int r = 0; r < reps; ++r) {
              auto rng = detail::replica_rng(spec.seed, r, i, s, ar);
              acc.add(eval(s, ar, xs[i], rng));
            }
          } catch (const DomainError& e) {
            std::ostringstream os;
            os << e.what() << " (experiment " << exp << ", scenario " << to_string(s)
               << ", ar " << (ar ? "on" : "off") << ", x " << xs[i] << ")";
            throw DomainError(os.str());
          }
          emit(s, ar, xs[i], metric, acc.mean(), units);
          if (reps > 1) emit(s, ar, xs[i], metric + "_stderr", acc.stderr_(), units);
        }
      }
    }
  };

  const double f0 = cfg.link.frequency_hz;
  const double d_freq = cfg.sweeps.frequency_sweep_distance_m;

  switch (spec.name) {
    case ExperimentName::SecrecyVsDistance:
      channel_metric("secrecy_rate", "bit/s", [&](Scenario s, bool ar, double d, auto& rng) {
        return pipe.sweep_secrecy(s, d, f0, ar, rng);
      });
      break;
    case ExperimentName::EnergyVsDistance:
      channel_metric("energy_efficiency", "bit/J", [&](Scenario s, bool ar, double d, auto& rng) {
        return energy_efficiency(pipe.user_capacity(s, d, f0, ar, rng), pipe.total_power_w());
      });
      break;
    case ExperimentName::SecrecyVsFrequency:
      channel_metric("secrecy_rate", "bit/s", [&](Scenario s, bool ar, double f, auto& rng) {
        return pipe.sweep_secrecy(s, d_freq, f, ar, rng);
      });
      break;
    case ExperimentName::EnergyVsFrequency:
      channel_metric("energy_efficiency", "bit/J", [&](Scenario s, bool ar, double f, auto& rng) {
        return energy_efficiency(pipe.user_capacity(s, d_freq, f, ar, rng), pipe.total_power_w());
      });
      break;

    case ExperimentName::MissrateVsAttempts: {
      // Each attempt is one single-cycle attack run; HD and FD share seeds.
      AttackConfig one = cfg.attack;
      one.max_cycles = 1;
      const double m_dl = one.p_downlink_miss();
      const double m_ul = 1.0 - one.p_uplink_success;
      for (Scenario s : spec.scenarios) {
        for (bool ar : spec.ar) {
          for (std::size_t i = 0; i < xs.size(); ++i) {
            const long attempts = std::lround(xs[i]);
            require(attempts >= 1, "MissrateVsAttempts: attempts must be >= 1");
            detail::Accumulator hd_acc, fd_acc;
            for (int r = 0; r < spec.replicas; ++r) {
              long missed[2] = {0, 0};
              for (int m = 0; m < 2; ++m) {
                one.mode = m == 0 ? AttackMode::HD : AttackMode::FD;
                auto rng = detail::replica_rng(spec.seed, r, i, s, ar);
                for (long a = 0; a < attempts; ++a) {
                  missed[m] += static_cast<long>(run_rrc_attack(one, rng).failed_spoofs());
                }
              }
              hd_acc.add(static_cast<double>(missed[0]));
              fd_acc.add(static_cast<double>(missed[1]));
            }
            const double x = static_cast<double>(attempts);
            const MissRateParams params{x, x * m_dl, x * one.p_downlink_success * m_ul};
            emit(s, ar, xs[i], "missed_attempts_hd", hd_acc.mean(), "count");
            emit(s, ar, xs[i], "missed_attempts_fd", fd_acc.mean(), "count");
            emit(s, ar, xs[i], "missrate_hd", hd_acc.mean() / x, "probability");
            emit(s, ar, xs[i], "missrate_fd", fd_acc.mean() / x, "probability");
            emit(s, ar, xs[i], "missrate_hd_analytic",
                 analytic_missrate(params, AttackMode::HD).value, "probability");
            emit(s, ar, xs[i], "missrate_fd_analytic",
                 analytic_missrate(params, AttackMode::FD).value, "probability");
            if (spec.replicas > 1) {
              emit(s, ar, xs[i], "missed_attempts_hd_stderr", hd_acc.stderr_(), "count");
              emit(s, ar, xs[i], "missed_attempts_fd_stderr", fd_acc.stderr_(), "count");
            }
          }
        }
      }
      break;
    }

    case ExperimentName::MissPmfComparison: {
      const long total = std::lround(xs.back());
      const double p = cfg.attack.p_downlink_miss();
      for (Scenario s : spec.scenarios) {
        for (bool ar : spec.ar) {
          for (double x : xs) {
            const long u = std::lround(x);
            require(u >= 0 && u <= total, "MissPmfComparison: u outside [0, attempts]");
            emit(s, ar, x, "binomial_pmf", binomial_pmf(total, u, p), "probability");
            emit(s, ar, x, "poisson_pmf", poisson_pmf(u, static_cast<double>(total) * p),
                 "probability");
          }
        }
      }
      break;
    }

    case ExperimentName::SensitivityBars: {
      const SensitivityOptions base{cfg.secrecy.capacity_resolution_bps, 0.0};
      for (Scenario s : spec.scenarios) {
        for (bool ar : spec.ar) {
          for (std::size_t i = 0; i < xs.size(); ++i) {
            auto rng = detail::replica_rng(spec.seed, 0, i, s, ar);
            const double cu = pipe.user_capacity(s, xs[i], f0, ar, rng);
            SensitivityOptions opt = base;
            opt.fd_margin_bps = cfg.secrecy.fd_margin_fraction * cu;
            const double ct = cfg.threshold_bps(s);
            emit(s, ar, xs[i], "sensitivity_hd", attack_sensitivity(cu, ct, AttackMode::HD, opt),
                 "bit/s");
            emit(s, ar, xs[i], "sensitivity_fd", attack_sensitivity(cu, ct, AttackMode::FD, opt),
                 "bit/s");
          }
        }
      }
      break;
    }

    case ExperimentName::DeploymentSnapshot:
      for (Scenario s : spec.scenarios) {
        for (bool ar : spec.ar) {
          auto recs = deployment_snapshot(xs, cfg, table, s, ar);
          out.insert(out.end(), recs.begin(), recs.end());
        }
      }
      break;
  }
  sort_records(out);
  return out;
}

inline constexpr std::string_view kCsvHeader = "experiment,scenario,ar,x_value,metric,value,units";

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string to_csv(std::vector<MetricsRecord> records) {
  require(!records.empty(), "write_csv: no records");
  sort_records(records);
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    out += r.experiment;
    out += ',';
    out += to_string(r.scenario);
    out += ',';
    out += r.ar_enabled ? "on" : "off";
    out += ',';
    out += format_number(r.x_value);
    out += ',';
    out += r.metric;
    out += ',';
    out += format_number(r.value);
    out += ',';
    out += r.units;
    out += '\n';
  }
  return out;
}

inline void write_csv(const std::vector<MetricsRecord>& records, const std::string& path) {
  const std::string text = to_csv(records);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

inline std::vector<MetricsRecord> parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw DomainError("csv: bad header");
  std::vector<MetricsRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::istringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cols.push_back(c);
    if (cols.size() != 7) throw DomainError("csv: expected 7 columns in '" + line + "'");
    out.push_back({cols[0], parse_scenario(cols[1]), cols[2] == "on", std::stod(cols[3]), cols[4],
                   std::stod(cols[5]), cols[6]});
  }
  return out;
}

inline std::vector<MetricsRecord> read_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str());
}

}  // namespace rainfade
