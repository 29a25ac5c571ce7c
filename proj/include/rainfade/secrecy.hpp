#pragma once

// Secrecy capacity, attack feasibility against the threshold capacity, the
// minimum artificial-rain attenuation that breaks the threshold, and the
// attacker's capacity sensitivity.

#include <algorithm>
#include <cmath>
#include <limits>

#include "rainfade/channel_model.hpp"
#include "rainfade/common.hpp"

namespace rainfade {

struct SecrecyContext {
  double user_capacity = 0.0;
  double eavesdropper_capacity = 0.0;
  double threshold_capacity = 0.0;
};

inline double secrecy_capacity(double c_user, double c_eav) {
  require(c_user >= 0.0 && c_eav >= 0.0, "secrecy_capacity: capacities must be >= 0");
  return std::max(c_user - c_eav, 0.0);
}

inline bool attack_feasible(double c_s, double c_t) { return c_s < c_t; }

inline bool attack_feasible(const SecrecyContext& ctx) {
  return attack_feasible(secrecy_capacity(ctx.user_capacity, ctx.eavesdropper_capacity),
                         ctx.threshold_capacity);
}

// Rain degrades only the legitimate link; c_eav is taken as given.
inline double ar_degraded_secrecy(const LinkConfig& link, double rain_db, double c_eav,
                                  double shadow_db = 0.0, double thermal_db = 0.0) {
  require(rain_db >= 0.0, "ar_degraded_secrecy: rain_db must be >= 0");
  return secrecy_capacity(link_capacity_bps(link, shadow_db, rain_db, thermal_db), c_eav);
}

struct AttenuationSearch {
  double resolution_db = 0.01;
  double ceiling_db = 300.0;
};

// Smallest rain penalty (to within resolution_db, rounded up) that pushes the
// secrecy capacity strictly below c_t. The returned value always satisfies
// the inequality; value - resolution_db does not (unless the value is 0).
inline double required_ar_attenuation(const LinkConfig& link, double c_eav, double c_t,
                                      double shadow_db = 0.0, double thermal_db = 0.0,
                                      AttenuationSearch search = {}) {
  auto feasible = [&](double rain_db) {
    return attack_feasible(ar_degraded_secrecy(link, rain_db, c_eav, shadow_db, thermal_db),
                           c_t);
  };
  if (feasible(0.0)) return 0.0;
  if (!feasible(search.ceiling_db)) {
    throw SearchExhausted("required_ar_attenuation: threshold not reachable within " +
                          std::to_string(search.ceiling_db) + " dB");
  }
  double lo = 0.0;  // infeasible
  double hi = search.ceiling_db;  // feasible
  while (hi - lo > search.resolution_db) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

struct SensitivityOptions {
  double resolution_bps = 1e6;  // the "just above" step
  double fd_margin_bps = 0.0;
};

// Minimum eavesdropper capacity that makes the attack feasible. FD needs the
// extra margin for its uplink phase.
inline double attack_sensitivity(double c_user, double c_t, AttackMode mode,
                                 SensitivityOptions opt = {}) {
  require(c_user >= 0.0, "attack_sensitivity: c_user must be >= 0");
  require(opt.fd_margin_bps >= 0.0, "attack_sensitivity: fd_margin must be >= 0");
  if (c_t >= c_user) return 0.0;
  const double hd = c_user - c_t + opt.resolution_bps;
  return mode == AttackMode::HD ? hd : hd + opt.fd_margin_bps;
}

// Distance at which the user's capacity equals c_eav, by bisection over
// [lo_m, hi_m]. Capacity falls with distance, so the root is unique.
inline double crossover_distance(LinkConfig link, double c_eav, double lo_m, double hi_m,
                                 double shadow_db = 0.0, double tol_m = 1e-6) {
  auto excess = [&](double d) {
    link.distance_m = d;
    return link_capacity_bps(link, shadow_db, 0.0) - c_eav;
  };
  if (excess(lo_m) < 0.0 || excess(hi_m) > 0.0) {
    throw SearchExhausted("crossover_distance: no crossover inside search interval");
  }
  while (hi_m - lo_m > tol_m) {
    const double mid = 0.5 * (lo_m + hi_m);
    (excess(mid) >= 0.0 ? lo_m : hi_m) = mid;
  }
  return 0.5 * (lo_m + hi_m);
}

}  // namespace rainfade
