#pragma once

// Miss-rate theory for the HD/FD spoofing attack: binomial and Poisson
// distributions of missed attempts, analytic miss rates, effectiveness, and
// the empirical estimator over simulated traces.

#include <cmath>
#include <optional>
#include <span>

#include "rainfade/attack_sim.hpp"
#include "rainfade/common.hpp"

namespace rainfade {

namespace detail {

inline double log_choose(long i, long u) {
  return std::lgamma(static_cast<double>(i) + 1.0) - std::lgamma(static_cast<double>(u) + 1.0) -
         std::lgamma(static_cast<double>(i - u) + 1.0);
}

inline double choose(long i, long u) {
  if (u > i - u) u = i - u;
  double c = 1.0;
  for (long k = 1; k <= u; ++k) c = c * static_cast<double>(i - u + k) / static_cast<double>(k);
  return c;
}

}  // namespace detail

// C(i, u) p^u (1 - p)^(i - u): probability of exactly u misses in i attempts
// with per-attempt miss probability p.
inline double binomial_pmf(long i, long u, double p) {
  require(i >= 0 && u >= 0 && u <= i, "binomial_pmf: need 0 <= u <= i");
  require(p >= 0.0 && p <= 1.0, "binomial_pmf: p must lie in [0, 1]");
  // 0^0 = 1 covers the degenerate p = 0 / p = 1 cases.
  if (p == 0.0) return u == 0 ? 1.0 : 0.0;
  if (p == 1.0) return u == i ? 1.0 : 0.0;
  if (i <= 50) {
    return detail::choose(i, u) * std::pow(p, static_cast<double>(u)) *
           std::pow(1.0 - p, static_cast<double>(i - u));
  }
  return std::exp(detail::log_choose(i, u) + static_cast<double>(u) * std::log(p) +
                  static_cast<double>(i - u) * std::log1p(-p));
}

// Same law seen from the intruder: u successful captures at rate b_DL.
inline double intruder_success_pmf(long i, long u, double b_dl) {
  return binomial_pmf(i, u, b_dl);
}

inline double poisson_pmf(long u, double lambda) {
  require(u >= 0, "poisson_pmf: u must be >= 0");
  require(lambda >= 0.0, "poisson_pmf: lambda must be >= 0");
  if (lambda == 0.0) return u == 0 ? 1.0 : 0.0;
  return std::exp(-lambda + static_cast<double>(u) * std::log(lambda) -
                  std::lgamma(static_cast<double>(u) + 1.0));
}

// attempts = x, missed_downlink = m, missed_uplink = m1 (FD only).
struct MissRateParams {
  double attempts = 1.0;
  double missed_downlink = 0.0;
  double missed_uplink = 0.0;

  void validate() const {
    require(attempts >= 1.0, "attempts must be >= 1");
    require(missed_downlink >= 0.0 && missed_downlink <= attempts,
            "missed_downlink must lie in [0, attempts]");
    require(missed_uplink >= 0.0 && missed_uplink <= attempts,
            "missed_uplink must lie in [0, attempts]");
  }
};

struct MissRate {
  double value = 0.0;
  bool clamped = false;  // raw FD sum exceeded 1
};

// HD: m / x. FD: m / x + m1 / x. The FD form simply adds the uplink share,
// treating uplink and downlink misses as disjoint; it is clamped to 1.
inline MissRate analytic_missrate(const MissRateParams& params, AttackMode mode) {
  params.validate();
  const double hd = params.missed_downlink / params.attempts;
  if (mode == AttackMode::HD) return {hd, false};
  const double fd = hd + params.missed_uplink / params.attempts;
  if (fd > 1.0) return {1.0, true};
  return {fd, false};
}

// 1 / miss_rate; std::nullopt means unbounded (a perfect attacker).
inline std::optional<double> effectiveness(double miss_rate) {
  require(miss_rate >= 0.0 && miss_rate <= 1.0, "effectiveness: miss_rate must lie in [0, 1]");
  if (miss_rate == 0.0) return std::nullopt;
  return 1.0 / miss_rate;
}

// Failed spoof attempts over all spoof attempts.
inline double empirical_missrate(std::span<const AttackTrace> traces) {
  require(!traces.empty(), "empirical_missrate: no traces");
  std::size_t failed = 0;
  std::size_t total = 0;
  for (const auto& t : traces) {
    failed += t.failed_spoofs();
    total += t.spoof_attempts();
  }
  require(total > 0, "empirical_missrate: traces hold no spoof attempts");
  return static_cast<double>(failed) / static_cast<double>(total);
}

}  // namespace rainfade
