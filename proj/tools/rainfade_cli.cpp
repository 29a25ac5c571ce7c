// rainfade command-line front end.
//
//   rainfade link | rain | secrecy | attack | config | experiment <name>
//
// Exit codes: 0 success, 2 configuration error, 3 domain error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rainfade/rainfade.hpp"

#ifndef RAINFADE_DEFAULT_COEFFS
#define RAINFADE_DEFAULT_COEFFS "data/itu_r_p838_3.txt"
#endif

namespace {

using namespace rainfade;

constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::string coefficients_path;
  std::optional<std::uint64_t> seed;
  int replicas = 1;
};

Config load(const CommonOptions& opt) {
  Config cfg = opt.config_path.empty() ? Config{} : load_config(opt.config_path);
  if (opt.seed) cfg.attack.seed = *opt.seed;
  return cfg;
}

CoefficientTable load_table(const CommonOptions& opt) {
  std::string path = opt.coefficients_path;
  if (path.empty()) {
    if (const char* env = std::getenv("RAINFADE_COEFFS")) path = env;
  }
  if (path.empty()) path = RAINFADE_DEFAULT_COEFFS;
  auto table = CoefficientTable::load(path);
  std::cerr << "rainfade: coefficients " << table.version << " from " << path
            << " fnv1a64=" << checksum_hex(table.checksum) << '\n';
  return table;
}

std::ostream& out_stream(const CommonOptions& opt, std::ofstream& file) {
  if (opt.out_path.empty()) return std::cout;
  file.open(opt.out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + opt.out_path + "' for writing");
  return file;
}

void kv(std::ostream& os, const char* key, double v) { os << key << '=' << format_number(v) << '\n'; }

int cmd_link(const CommonOptions& opt, const std::string& scenario, double distance,
             std::optional<double> frequency, bool with_rain) {
  const Config cfg = load(opt);
  const auto table = load_table(opt);
  const Scenario s = parse_scenario(scenario);
  auto link = make_link(cfg, s, distance);
  if (frequency) link.frequency_hz = *frequency;
  link.validate();
  const double rain = with_rain ? rain_attenuation_db(link.frequency_hz, cfg.rain, table) : 0.0;
  const double shadow = cfg.profile(s).shadow_mu_db;
  const double pl = path_loss_db(link, shadow, rain, cfg.thermal_db);
  const double snr = snr_db(link, pl);
  const double cap = capacity_bps(snr, link.bandwidth_hz);
  std::ofstream file;
  auto& os = out_stream(opt, file);
  kv(os, "path_gain_constant_db", path_gain_constant(link.frequency_hz, link.reference_distance_m));
  kv(os, "rain_db", rain);
  kv(os, "path_loss_db", pl);
  kv(os, "snr_db", snr);
  kv(os, "capacity_bps", cap);
  kv(os, "energy_efficiency_bit_per_j",
     energy_efficiency(cap, cfg.link.tx_power_w + cfg.circuit_power_w));
  return 0;
}

int cmd_rain(const CommonOptions& opt, std::optional<double> frequency,
             std::optional<double> rate) {
  Config cfg = load(opt);
  const auto table = load_table(opt);
  const double f = frequency.value_or(cfg.link.frequency_hz);
  if (rate) cfg.rain.rain_rate_mm_per_hr = *rate;
  cfg.rain.validate();
  const auto pc = power_law_coefficients(f, table);
  const auto eff = effective_coefficients(pc, cfg.rain.path_elevation_deg,
                                          cfg.rain.polarization_tilt_deg);
  const double spec = specific_attenuation(f, cfg.rain, table);
  std::ofstream file;
  auto& os = out_stream(opt, file);
  kv(os, "theta_h", pc.theta_h);
  kv(os, "theta_v", pc.theta_v);
  kv(os, "eps_h", pc.eps_h);
  kv(os, "eps_v", pc.eps_v);
  kv(os, "theta", eff.theta);
  kv(os, "eps", eff.eps);
  kv(os, "specific_attenuation_db_per_km", spec);
  kv(os, "path_attenuation_db", rain_attenuation_db(f, cfg.rain, table));
  return 0;
}

int cmd_secrecy(const CommonOptions& opt, const std::string& scenario, double distance) {
  const Config cfg = load(opt);
  const auto table = load_table(opt);
  const Scenario s = parse_scenario(scenario);
  const auto link = make_link(cfg, s, distance);
  const auto eav = make_link(cfg, s, cfg.eavesdropper.distance_m);
  const double shadow = cfg.profile(s).shadow_mu_db;
  const double rain = rain_attenuation_db(link.frequency_hz, cfg.rain, table);
  const double cu = link_capacity_bps(link, shadow, 0.0, cfg.thermal_db);
  const double cu_ar = link_capacity_bps(link, shadow, rain, cfg.thermal_db);
  const double cev = link_capacity_bps(eav, shadow, cfg.eavesdropper.rain_db, cfg.thermal_db);
  const double ct = cfg.threshold_bps(s);
  const double cs = secrecy_capacity(cu, cev);
  const double cs_ar = ar_degraded_secrecy(link, rain, cev, shadow, cfg.thermal_db);
  std::ofstream file;
  auto& os = out_stream(opt, file);
  kv(os, "user_capacity_bps", cu);
  kv(os, "user_capacity_ar_bps", cu_ar);
  kv(os, "eavesdropper_capacity_bps", cev);
  kv(os, "threshold_capacity_bps", ct);
  kv(os, "secrecy_capacity_bps", cs);
  kv(os, "secrecy_capacity_ar_bps", cs_ar);
  os << "attack_feasible=" << attack_feasible(cs, ct) << '\n';
  os << "attack_feasible_ar=" << attack_feasible(cs_ar, ct) << '\n';
  try {
    kv(os, "required_ar_attenuation_db",
       required_ar_attenuation(link, cev, ct, shadow, cfg.thermal_db));
  } catch (const SearchExhausted&) {
    os << "required_ar_attenuation_db=unreachable\n";
  }
  const SensitivityOptions so{cfg.secrecy.capacity_resolution_bps,
                              cfg.secrecy.fd_margin_fraction * cu_ar};
  kv(os, "sensitivity_hd_bps", attack_sensitivity(cu_ar, ct, AttackMode::HD, so));
  kv(os, "sensitivity_fd_bps", attack_sensitivity(cu_ar, ct, AttackMode::FD, so));
  return 0;
}

int cmd_attack(const CommonOptions& opt, const std::string& mode) {
  Config cfg = load(opt);
  if (!mode.empty()) cfg.attack.mode = parse_attack_mode(mode);
  const auto trace = run_rrc_attack(cfg.attack);
  std::ofstream file;
  out_stream(opt, file) << to_text(trace, cfg.attack.an_link.decode_threshold_db);
  return 0;
}

int cmd_config(const CommonOptions& opt) {
  const Config cfg = load(opt);
  std::ofstream file;
  out_stream(opt, file) << config_to_json(cfg).dump(2) << '\n';
  return 0;
}

int cmd_experiment(const CommonOptions& opt, const std::string& name,
                   const std::vector<std::string>& scenarios, const std::vector<std::string>& ar) {
  const Config cfg = load(opt);
  const auto table = load_table(opt);
  auto spec = default_spec(parse_experiment_name(name), cfg);
  spec.replicas = opt.replicas;
  if (opt.seed) spec.seed = *opt.seed;
  if (!scenarios.empty()) {
    spec.scenarios.clear();
    for (const auto& s : scenarios) spec.scenarios.push_back(parse_scenario(s));
  }
  if (!ar.empty()) {
    spec.ar.clear();
    for (const auto& a : ar) {
      if (a == "on") spec.ar.push_back(true);
      else if (a == "off") spec.ar.push_back(false);
      else throw DomainError("--ar expects 'on' or 'off'");
    }
  }
  const auto records = run_experiment(spec, cfg, table);
  if (opt.out_path.empty()) {
    std::cout << to_csv(records);
  } else {
    write_csv(records, opt.out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rainfade: artificial-rain eavesdropping and RRC spoofing simulator"};
  app.require_subcommand(1);
  CommonOptions opt;
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "RNG seed (overrides attack.seed)");
  app.add_option("--config", opt.config_path, "JSON configuration file");
  app.add_option("--out", opt.out_path, "output file (default stdout)");
  app.add_option("--replicas", opt.replicas, "replicas for stochastic experiments")
      ->check(CLI::PositiveNumber);
  app.add_option("--coefficients", opt.coefficients_path,
                 "rain coefficient table (else $RAINFADE_COEFFS, else built-in path)");
  app.fallthrough();

  std::string scenario = "urban";
  double distance = 100.0;
  std::optional<double> frequency;
  std::optional<double> rate;
  bool with_rain = false;
  std::string mode;
  std::string experiment;
  std::vector<std::string> scenarios;
  std::vector<std::string> ar;

  auto* link = app.add_subcommand("link", "link budget for one receiver");
  link->add_option("--scenario", scenario, "rural or urban");
  link->add_option("--distance", distance, "receiver distance in m");
  link->add_option("--frequency", frequency, "carrier frequency in Hz");
  link->add_flag("--rain", with_rain, "apply the configured rain penalty");

  auto* rain = app.add_subcommand("rain", "rain coefficients and attenuation");
  rain->add_option("--frequency", frequency, "carrier frequency in Hz");
  rain->add_option("--rate", rate, "rain rate in mm/hr");

  auto* secrecy = app.add_subcommand("secrecy", "secrecy, feasibility and required AR attenuation");
  secrecy->add_option("--scenario", scenario, "rural or urban");
  secrecy->add_option("--distance", distance, "user distance in m");

  auto* attack = app.add_subcommand("attack", "run one RRC spoofing attack and print its trace");
  attack->add_option("--mode", mode, "HD or FD (default from config)");

  auto* config = app.add_subcommand("config", "print the effective configuration as JSON");

  auto* exp = app.add_subcommand("experiment", "run a figure experiment and emit CSV");
  exp->add_option("name", experiment, "experiment name")->required();
  exp->add_option("--scenarios", scenarios, "subset of rural, urban")->delimiter(',');
  exp->add_option("--ar", ar, "subset of on, off")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }
  if (*seed_opt) opt.seed = seed_value;

  try {
    if (*link) return cmd_link(opt, scenario, distance, frequency, with_rain);
    if (*rain) return cmd_rain(opt, frequency, rate);
    if (*secrecy) return cmd_secrecy(opt, scenario, distance);
    if (*attack) return cmd_attack(opt, mode);
    if (*config) return cmd_config(opt);
    if (*exp) return cmd_experiment(opt, experiment, scenarios, ar);
  } catch (const ConfigError& e) {
    std::cerr << "rainfade: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "rainfade: domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "rainfade: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
