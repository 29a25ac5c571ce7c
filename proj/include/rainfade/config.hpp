#pragma once

// Full run configuration, its JSON form (docs/config-schema.json) and the
// built-in defaults. Unspecified fields keep their defaults.

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rainfade/attack_sim.hpp"
#include "rainfade/channel_model.hpp"
#include "rainfade/common.hpp"
#include "rainfade/rain_attenuation.hpp"

namespace rainfade {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// User capacity at the 150 m threshold distance under the default profiles
// (28 GHz, 20 mW, -106 dBm, 800 MHz, r0 = 1 m, no shadowing offset). The
// default eavesdropper sits at that distance, which puts the C_u = C_ev
// crossover at 150 m; tests recompute these from the link budget.
inline constexpr double kDefaultThresholdUrbanBps = 16027352.7052491;
inline constexpr double kDefaultThresholdRuralBps = 441925697.6615688;

struct Config {
  LinkConfig link;  // distance/exponent/scenario are per-run; the rest is shared
  double thermal_db = 0.0;
  double circuit_power_w = 0.0;
  ScenarioProfile rural = default_profile(Scenario::Rural);
  ScenarioProfile urban = default_profile(Scenario::Urban);
  ShadowingMode shadowing_mode = ShadowingMode::Deterministic;
  RainConfig rain;
  double coverage_range_m = 250.0;

  struct Eavesdropper {
    double distance_m = 150.0;
    double rain_db = 0.0;  // attenuation on the eavesdropper's own link
  } eavesdropper;

  struct Secrecy {
    double threshold_urban_bps = kDefaultThresholdUrbanBps;
    double threshold_rural_bps = kDefaultThresholdRuralBps;
    double capacity_resolution_bps = 1e6;
    double fd_margin_fraction = 0.05;
  } secrecy;

  AttackConfig attack;

  struct Sweeps {
    bool eavesdropper_passive = true;
    double distance_start_m = 10.0;
    double distance_stop_m = 250.0;
    double distance_step_m = 10.0;
    double frequency_start_hz = 10e9;
    double frequency_stop_hz = 100e9;
    double frequency_step_hz = 5e9;
    double frequency_sweep_distance_m = 100.0;
    double attempts_start = 10.0;
    double attempts_stop = 100.0;
    double attempts_step = 10.0;
    int pmf_attempts = 20;
  } sweeps;

  std::vector<double> deployment_distances_m{50.0, 120.0, 223.0};

  const ScenarioProfile& profile(Scenario s) const {
    return s == Scenario::Rural ? rural : urban;
  }
  double threshold_bps(Scenario s) const {
    return s == Scenario::Rural ? secrecy.threshold_rural_bps : secrecy.threshold_urban_bps;
  }

  void validate() const;
};

// Link for a receiver at `distance_m` under scenario `s`.
inline LinkConfig make_link(const Config& cfg, Scenario s, double distance_m) {
  LinkConfig l = cfg.link;
  l.scenario = s;
  l.distance_m = distance_m;
  l.path_loss_exponent = cfg.profile(s).path_loss_exponent;
  return l;
}

inline LinkConfig make_link(const Config& cfg, Scenario s, double distance_m,
                            double frequency_hz) {
  LinkConfig l = make_link(cfg, s, distance_m);
  l.frequency_hz = frequency_hz;
  return l;
}

inline ShadowingModel make_shadowing(const Config& cfg, Scenario s) {
  const auto& p = cfg.profile(s);
  return {p.shadow_mu_db, p.shadow_sigma_db, cfg.shadowing_mode};
}

namespace detail {

inline void check(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field, what);
}

}  // namespace detail

inline void Config::validate() const {
  using detail::check;
  check(link.frequency_hz > 0.0, "link.frequency_hz", "must be > 0");
  check(link.reference_distance_m > 0.0, "link.reference_distance_m", "must be > 0");
  check(link.tx_power_w > 0.0, "link.tx_power_w", "must be > 0");
  check(link.bandwidth_hz > 0.0, "link.bandwidth_hz", "must be > 0");
  check(circuit_power_w >= 0.0, "link.circuit_power_w", "must be >= 0");
  for (auto [name, p] : {std::pair{"profiles.rural", &rural}, std::pair{"profiles.urban", &urban}}) {
    check(p->path_loss_exponent >= 1.6 && p->path_loss_exponent <= 6.5,
          std::string(name) + ".path_loss_exponent", "must lie in [1.6, 6.5]");
    check(p->shadow_sigma_db >= 0.0, std::string(name) + ".shadow_sigma_db", "must be >= 0");
  }
  check(rain.rain_rate_mm_per_hr >= 0.0, "rain.rain_rate", "must be >= 0");
  check(rain.rain_path_depth_km >= 0.0, "rain.rain_path_depth_km", "must be >= 0");
  check(rain.path_elevation_deg >= 0.0 && rain.path_elevation_deg <= 90.0,
        "rain.path_elevation_deg", "must lie in [0, 90]");
  check(rain.polarization_tilt_deg >= -90.0 && rain.polarization_tilt_deg <= 90.0,
        "rain.polarization_tilt_deg", "must lie in [-90, 90]");
  check(coverage_range_m > 0.0, "coverage_range_m", "must be > 0");
  check(eavesdropper.distance_m >= link.reference_distance_m, "eavesdropper.distance_m",
        "must be >= reference distance");
  check(eavesdropper.rain_db >= 0.0, "eavesdropper.rain_db", "must be >= 0");
  check(secrecy.threshold_urban_bps >= 0.0, "secrecy.threshold_capacity_bps.urban", "must be >= 0");
  check(secrecy.threshold_rural_bps >= 0.0, "secrecy.threshold_capacity_bps.rural", "must be >= 0");
  check(secrecy.capacity_resolution_bps > 0.0, "secrecy.capacity_resolution_bps", "must be > 0");
  check(secrecy.fd_margin_fraction >= 0.0, "secrecy.fd_margin_fraction", "must be >= 0");
  check(attack.p_downlink_success >= 0.0 && attack.p_downlink_success <= 1.0,
        "attack.p_downlink_success", "must lie in [0, 1]");
  check(attack.p_uplink_success >= 0.0 && attack.p_uplink_success <= 1.0,
        "attack.p_uplink_success", "must lie in [0, 1]");
  check(attack.ping_flood_ttis >= 1, "attack.ping_flood_ttis", "must be >= 1");
  check(attack.max_cycles >= 1, "attack.max_cycles", "must be >= 1");
  check(attack.an_power_w >= 0.0, "attack.an_power_w", "must be >= 0");
  check(attack.an_link.signal_power_w > 0.0, "attack.an_link.signal_power_w", "must be > 0");
  auto grid = [&](const std::string& name, const std::string& unit, double a, double b,
                  double step) {
    check(step > 0.0, "sweeps." + name + "_step" + unit, "must be > 0");
    check(b > a, "sweeps." + name + "_stop" + unit, "must be > start");
  };
  grid("distance", "_m", sweeps.distance_start_m, sweeps.distance_stop_m, sweeps.distance_step_m);
  grid("frequency", "_hz", sweeps.frequency_start_hz, sweeps.frequency_stop_hz,
       sweeps.frequency_step_hz);
  grid("attempts", "", sweeps.attempts_start, sweeps.attempts_stop, sweeps.attempts_step);
  check(sweeps.distance_start_m >= link.reference_distance_m, "sweeps.distance_start_m",
        "must be >= reference distance");
  check(sweeps.attempts_start >= 1.0, "sweeps.attempts_start", "must be >= 1");
  check(sweeps.pmf_attempts >= 1, "sweeps.pmf_attempts", "must be >= 1");
  check(!deployment_distances_m.empty(), "deployment.distances_m", "must not be empty");
  for (double d : deployment_distances_m) {
    check(d >= link.reference_distance_m, "deployment.distances_m",
          "every distance must be >= reference distance");
  }
}

namespace detail {

using nlohmann::json;

// Reads known keys out of one JSON object and rejects unknown ones. Keys that
// start with '_' are free-form annotations and are ignored.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void number(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ConfigError(field(key), "expected a number");
      out = v->get<double>();
    }
  }

  void integer(const std::string& key, int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) throw ConfigError(field(key), "expected an integer");
      out = v->get<int>();
    }
  }

  void u64(const std::string& key, std::uint64_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned()) throw ConfigError(field(key), "expected a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) throw ConfigError(field(key), "expected true or false");
      out = v->get<bool>();
    }
  }

  template <class Fn>
  void object(const std::string& key, Fn&& fn) {
    if (const json* v = find(key)) {
      ObjectReader sub(*v, field(key));
      fn(sub);
      sub.finish();
    }
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!it.key().starts_with('_') && !seen_.contains(it.key())) {
        throw ConfigError(field(it.key()), "unknown field");
      }
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

inline void read_profile(ObjectReader& r, ScenarioProfile& p) {
  r.number("path_loss_exponent", p.path_loss_exponent);
  r.number("shadow_mu_db", p.shadow_mu_db);
  r.number("shadow_sigma_db", p.shadow_sigma_db);
}

inline std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

}  // namespace detail

inline Config config_from_json(const nlohmann::json& root) {
  using detail::ObjectReader;
  Config cfg;
  ObjectReader r(root, "");
  r.object("link", [&](ObjectReader& o) {
    o.number("frequency_hz", cfg.link.frequency_hz);
    o.number("reference_distance_m", cfg.link.reference_distance_m);
    o.number("tx_power_w", cfg.link.tx_power_w);
    o.number("noise_power_dbm", cfg.link.noise_power_dbm);
    o.number("bandwidth_hz", cfg.link.bandwidth_hz);
    o.number("thermal_db", cfg.thermal_db);
    o.number("circuit_power_w", cfg.circuit_power_w);
  });
  r.object("profiles", [&](ObjectReader& o) {
    o.object("rural", [&](ObjectReader& p) { detail::read_profile(p, cfg.rural); });
    o.object("urban", [&](ObjectReader& p) { detail::read_profile(p, cfg.urban); });
  });
  if (const auto* v = r.find("shadowing_mode")) {
    const std::string mode = v->is_string() ? v->get<std::string>() : "";
    if (mode == "deterministic") cfg.shadowing_mode = ShadowingMode::Deterministic;
    else if (mode == "sampled") cfg.shadowing_mode = ShadowingMode::Sampled;
    else throw ConfigError("shadowing_mode", "expected \"deterministic\" or \"sampled\"");
  }
  r.object("rain", [&](ObjectReader& o) {
    o.number("rain_rate", cfg.rain.rain_rate_mm_per_hr);
    o.number("path_elevation_deg", cfg.rain.path_elevation_deg);
    o.number("polarization_tilt_deg", cfg.rain.polarization_tilt_deg);
    o.boolean("enabled", cfg.rain.enabled);
    const bool direct = o.find("rain_path_depth_km") != nullptr;
    o.number("rain_path_depth_km", cfg.rain.rain_path_depth_km);
    o.object("rain_path_components_km", [&](ObjectReader& c) {
      if (direct) {
        throw ConfigError(o.field("rain_path_components_km"),
                          "give either rain_path_depth_km or its components, not both");
      }
      double sc = 0.0, ab = 0.0, pol = 0.0;
      c.number("scattering", sc);
      c.number("absorption", ab);
      c.number("polarization", pol);
      cfg.rain.rain_path_depth_km = RainConfig::compose_depth(sc, ab, pol);
    });
  });
  r.number("coverage_range_m", cfg.coverage_range_m);
  r.object("eavesdropper", [&](ObjectReader& o) {
    o.number("distance_m", cfg.eavesdropper.distance_m);
    o.number("rain_db", cfg.eavesdropper.rain_db);
  });
  r.object("secrecy", [&](ObjectReader& o) {
    o.object("threshold_capacity_bps", [&](ObjectReader& t) {
      t.number("urban", cfg.secrecy.threshold_urban_bps);
      t.number("rural", cfg.secrecy.threshold_rural_bps);
    });
    o.number("capacity_resolution_bps", cfg.secrecy.capacity_resolution_bps);
    o.number("fd_margin_fraction", cfg.secrecy.fd_margin_fraction);
  });
  r.object("attack", [&](ObjectReader& o) {
    if (const auto* v = o.find("mode")) {
      try {
        cfg.attack.mode = parse_attack_mode(v->is_string() ? v->get<std::string>() : "");
      } catch (const DomainError&) {
        throw ConfigError("attack.mode", "expected \"HD\" or \"FD\"");
      }
    }
    o.number("p_downlink_success", cfg.attack.p_downlink_success);
    o.number("p_uplink_success", cfg.attack.p_uplink_success);
    o.integer("ping_flood_ttis", cfg.attack.ping_flood_ttis);
    o.integer("max_cycles", cfg.attack.max_cycles);
    o.number("an_power_w", cfg.attack.an_power_w);
    o.u64("seed", cfg.attack.seed);
    o.object("an_link", [&](ObjectReader& a) {
      a.number("signal_gain_db", cfg.attack.an_link.signal_gain_db);
      a.number("signal_power_w", cfg.attack.an_link.signal_power_w);
      a.number("an_gain_db", cfg.attack.an_link.an_gain_db);
      a.number("noise_power_dbm", cfg.attack.an_link.noise_power_dbm);
      a.number("decode_threshold_db", cfg.attack.an_link.decode_threshold_db);
    });
  });
  r.object("sweeps", [&](ObjectReader& o) {
    auto& s = cfg.sweeps;
    o.boolean("eavesdropper_passive", s.eavesdropper_passive);
    o.number("distance_start_m", s.distance_start_m);
    o.number("distance_stop_m", s.distance_stop_m);
    o.number("distance_step_m", s.distance_step_m);
    o.number("frequency_start_hz", s.frequency_start_hz);
    o.number("frequency_stop_hz", s.frequency_stop_hz);
    o.number("frequency_step_hz", s.frequency_step_hz);
    o.number("frequency_sweep_distance_m", s.frequency_sweep_distance_m);
    o.number("attempts_start", s.attempts_start);
    o.number("attempts_stop", s.attempts_stop);
    o.number("attempts_step", s.attempts_step);
    o.integer("pmf_attempts", s.pmf_attempts);
  });
  r.object("deployment", [&](ObjectReader& o) {
    if (const auto* v = o.find("distances_m")) {
      if (!v->is_array()) throw ConfigError("deployment.distances_m", "expected an array");
      cfg.deployment_distances_m.clear();
      for (const auto& d : *v) {
        if (!d.is_number()) throw ConfigError("deployment.distances_m", "expected numbers");
        cfg.deployment_distances_m.push_back(d.get<double>());
      }
    }
  });
  r.finish();
  cfg.validate();
  return cfg;
}

inline nlohmann::json config_to_json(const Config& cfg) {
  nlohmann::json j;
  j["link"] = {{"frequency_hz", cfg.link.frequency_hz},
               {"reference_distance_m", cfg.link.reference_distance_m},
               {"tx_power_w", cfg.link.tx_power_w},
               {"noise_power_dbm", cfg.link.noise_power_dbm},
               {"bandwidth_hz", cfg.link.bandwidth_hz},
               {"thermal_db", cfg.thermal_db},
               {"circuit_power_w", cfg.circuit_power_w}};
  auto prof = [](const ScenarioProfile& p) {
    return nlohmann::json{{"path_loss_exponent", p.path_loss_exponent},
                          {"shadow_mu_db", p.shadow_mu_db},
                          {"shadow_sigma_db", p.shadow_sigma_db}};
  };
  j["profiles"] = {{"rural", prof(cfg.rural)}, {"urban", prof(cfg.urban)}};
  j["shadowing_mode"] =
      cfg.shadowing_mode == ShadowingMode::Deterministic ? "deterministic" : "sampled";
  j["rain"] = {{"rain_rate", cfg.rain.rain_rate_mm_per_hr},
               {"path_elevation_deg", cfg.rain.path_elevation_deg},
               {"polarization_tilt_deg", cfg.rain.polarization_tilt_deg},
               {"rain_path_depth_km", cfg.rain.rain_path_depth_km},
               {"enabled", cfg.rain.enabled}};
  j["coverage_range_m"] = cfg.coverage_range_m;
  j["eavesdropper"] = {{"distance_m", cfg.eavesdropper.distance_m},
                       {"rain_db", cfg.eavesdropper.rain_db}};
  j["secrecy"] = {{"threshold_capacity_bps",
                   {{"urban", cfg.secrecy.threshold_urban_bps},
                    {"rural", cfg.secrecy.threshold_rural_bps}}},
                  {"capacity_resolution_bps", cfg.secrecy.capacity_resolution_bps},
                  {"fd_margin_fraction", cfg.secrecy.fd_margin_fraction}};
  const auto& a = cfg.attack;
  j["attack"] = {{"mode", std::string(to_string(a.mode))},
                 {"p_downlink_success", a.p_downlink_success},
                 {"p_uplink_success", a.p_uplink_success},
                 {"ping_flood_ttis", a.ping_flood_ttis},
                 {"max_cycles", a.max_cycles},
                 {"an_power_w", a.an_power_w},
                 {"seed", a.seed},
                 {"an_link",
                  {{"signal_gain_db", a.an_link.signal_gain_db},
                   {"signal_power_w", a.an_link.signal_power_w},
                   {"an_gain_db", a.an_link.an_gain_db},
                   {"noise_power_dbm", a.an_link.noise_power_dbm},
                   {"decode_threshold_db", a.an_link.decode_threshold_db}}}};
  const auto& s = cfg.sweeps;
  j["sweeps"] = {{"eavesdropper_passive", s.eavesdropper_passive},
                 {"distance_start_m", s.distance_start_m},
                 {"distance_stop_m", s.distance_stop_m},
                 {"distance_step_m", s.distance_step_m},
                 {"frequency_start_hz", s.frequency_start_hz},
                 {"frequency_stop_hz", s.frequency_stop_hz},
                 {"frequency_step_hz", s.frequency_step_hz},
                 {"frequency_sweep_distance_m", s.frequency_sweep_distance_m},
                 {"attempts_start", s.attempts_start},
                 {"attempts_stop", s.attempts_stop},
                 {"attempts_step", s.attempts_step},
                 {"pmf_attempts", s.pmf_attempts}};
  j["deployment"] = {{"distances_m", cfg.deployment_distances_m}};
  return j;
}

inline Config parse_config(const std::string& text) {
  nlohmann::json root;
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    root = nlohmann::json::object();
  } else {
    try {
      root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("", "parse error at line " + std::to_string(detail::line_of(text, e.byte)) +
                                ": " + e.what());
    }
  }
  return config_from_json(root);
}

inline Config load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("", "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

inline void save_config(const Config& cfg, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("", "cannot write config file '" + path + "'");
  f << config_to_json(cfg).dump(2) << '\n';
  if (!f) throw ConfigError("", "write failed for '" + path + "'");
}

}  // namespace rainfade
