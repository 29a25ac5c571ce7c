#pragma once

// Large-scale link budget: free-space reference gain, distance path loss with
// log-normal shadowing, SNR, Shannon capacity and energy efficiency.

#include <cmath>
#include <numbers>
#include <random>

#include "rainfade/common.hpp"

namespace rainfade {

// One transmitter -> receiver link.
struct LinkConfig {
  double frequency_hz = 28e9;
  double distance_m = 100.0;
  double reference_distance_m = 1.0;
  double tx_power_w = 0.02;
  double noise_power_dbm = -106.0;
  double bandwidth_hz = 800e6;
  double path_loss_exponent = 3.5;
  Scenario scenario = Scenario::Urban;

  void validate() const {
    require(frequency_hz > 0.0, "frequency_hz must be > 0");
    require(reference_distance_m > 0.0, "reference_distance_m must be > 0");
    require(distance_m >= reference_distance_m,
            "distance_m must be >= reference_distance_m");
    require(bandwidth_hz > 0.0, "bandwidth_hz must be > 0");
    require(tx_power_w > 0.0, "tx_power_w must be > 0");
    require(path_loss_exponent >= 1.6 && path_loss_exponent <= 6.5,
            "path_loss_exponent must lie in [1.6, 6.5]");
  }
};

// Per-scenario propagation defaults. Urban and rural differ only through
// these numbers; both are overridable from the config file.
struct ScenarioProfile {
  double path_loss_exponent;
  double shadow_mu_db;
  double shadow_sigma_db;
};

inline ScenarioProfile default_profile(Scenario s) {
  switch (s) {
    case Scenario::Urban: return {3.5, 0.0, 4.0};
    case Scenario::Rural: return {2.8, 0.0, 3.0};
  }
  return {3.5, 0.0, 4.0};
}

enum class ShadowingMode { Deterministic, Sampled };

struct ShadowingModel {
  double mu_db = 0.0;
  double sigma_db = 0.0;
  ShadowingMode mode = ShadowingMode::Deterministic;

  void validate() const { require(sigma_db >= 0.0, "sigma_db must be >= 0"); }
};

// 20 log10(lambda / (4 pi r0)); the antenna pattern product is taken as 0 dB.
inline double path_gain_constant(double frequency_hz, double reference_distance_m) {
  require(frequency_hz > 0.0, "path_gain_constant: frequency must be > 0");
  require(reference_distance_m > 0.0, "path_gain_constant: reference distance must be > 0");
  const double lambda = kSpeedOfLight / frequency_hz;
  return 20.0 * std::log10(lambda / (4.0 * std::numbers::pi * reference_distance_m));
}

// Path loss in dB. rain_db = 0 gives the clear-sky loss; a positive rain_db
// adds the artificial-rain path penalty on top.
inline double path_loss_db(const LinkConfig& link, double shadow_db, double rain_db,
                           double thermal_db = 0.0) {
  link.validate();
  require(rain_db >= 0.0, "path_loss_db: rain_db must be >= 0");
  const double q_db = path_gain_constant(link.frequency_hz, link.reference_distance_m);
  return -q_db +
         10.0 * link.path_loss_exponent *
             std::log10(link.distance_m / link.reference_distance_m) +
         shadow_db + rain_db + thermal_db;
}

// Deterministic mode ignores rng and yields mu_db. Sampled mode draws the
// shadowing in dB from N(mu_db, sigma_db^2), i.e. log-normal in linear scale.
template <class Urbg>
double shadowing_value(const ShadowingModel& model, Urbg& rng) {
  model.validate();
  if (model.mode == ShadowingMode::Deterministic || model.sigma_db == 0.0) {
    return model.mu_db;
  }
  std::normal_distribution<double> gauss(model.mu_db, model.sigma_db);
  return gauss(rng);
}

inline double snr_db(const LinkConfig& link, double path_loss) {
  return watts_to_dbm(link.tx_power_w) - path_loss - link.noise_power_dbm;
}

// B log2(1 + snr). log1p keeps precision for the very low SNRs seen at
// cell edge under heavy rain.
inline double capacity_bps(double snr_db_value, double bandwidth_hz) {
  require(bandwidth_hz > 0.0, "capacity_bps: bandwidth must be > 0");
  if (std::isinf(snr_db_value) && snr_db_value < 0.0) return 0.0;
  const double snr = db_to_linear(snr_db_value);
  return bandwidth_hz * std::log1p(snr) / std::numbers::ln2;
}

inline double energy_efficiency(double capacity, double total_power_w) {
  require(total_power_w > 0.0, "energy_efficiency: total power must be > 0");
  return capacity / total_power_w;
}

// Convenience: capacity of a link whose total extra attenuation
// (shadow + rain + thermal) is given in dB.
inline double link_capacity_bps(const LinkConfig& link, double shadow_db, double rain_db,
                                double thermal_db = 0.0) {
  const double pl = path_loss_db(link, shadow_db, rain_db, thermal_db);
  return capacity_bps(snr_db(link, pl), link.bandwidth_hz);
}

}  // namespace rainfade
