#pragma once

// TTI-indexed model of the RRC-setup spoofing attack.
//
// Local timeline of one cycle:
//   t1            RRC setup request from device-1 (first cycle only)
//   t2 .. tn      ping flood against device-1
//   t(n+1)        downlink RRC setup response; intruder captures it or misses
//   t(n+2)        artificial noise towards device-2      (success only)
//   t(n+3)        RRC setup complete sent to the gNB     (success only)
// A miss restarts from t2. Absolute TTI = (cycle - 1) * n + local index, so
// every failed cycle consumes exactly n TTIs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "rainfade/channel_model.hpp"
#include "rainfade/common.hpp"

namespace rainfade {

// Geometry of the AN phase: device-1 -> device-2 signal against the
// intruder's noise at device-2.
struct AnLink {
  double signal_gain_db = -90.0;
  double signal_power_w = 0.02;
  double an_gain_db = -85.0;
  double noise_power_dbm = -106.0;
  double decode_threshold_db = 0.0;
};

struct AttackConfig {
  AttackMode mode = AttackMode::HD;
  double p_downlink_success = 0.7;  // b_DL; m_DL = 1 - b_DL
  double p_uplink_success = 0.8;    // FD only
  int ping_flood_ttis = 5;
  int max_cycles = 10;
  double an_power_w = 0.1;
  std::uint64_t seed = 1;
  AnLink an_link;

  double p_downlink_miss() const { return 1.0 - p_downlink_success; }

  void validate() const {
    require(p_downlink_success >= 0.0 && p_downlink_success <= 1.0,
            "p_downlink_success must lie in [0, 1]");
    require(p_uplink_success >= 0.0 && p_uplink_success <= 1.0,
            "p_uplink_success must lie in [0, 1]");
    require(ping_flood_ttis >= 1, "ping_flood_ttis must be >= 1");
    require(max_cycles >= 1, "max_cycles must be >= 1");
    require(an_power_w >= 0.0, "an_power_w must be >= 0");
  }
};

enum class EventKind { RrcRequest, PingFlood, SpoofAttempt, AnIntrusion, RrcComplete };
enum class Outcome { Connected, Exhausted };

inline std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::RrcRequest: return "RrcRequest";
    case EventKind::PingFlood: return "PingFlood";
    case EventKind::SpoofAttempt: return "SpoofAttempt";
    case EventKind::AnIntrusion: return "AnIntrusion";
    case EventKind::RrcComplete: return "RrcComplete";
  }
  return "?";
}

inline std::string_view to_string(Outcome o) {
  return o == Outcome::Connected ? "Connected" : "Exhausted";
}

struct AttackEvent {
  long tti = 0;
  int cycle = 0;
  EventKind kind = EventKind::PingFlood;
  bool success = false;  // SpoofAttempt only
  double sinr_db = 0.0;  // AnIntrusion only

  bool operator==(const AttackEvent&) const = default;
};

struct AttackTrace {
  std::vector<AttackEvent> events;
  Outcome outcome = Outcome::Exhausted;
  int cycles_used = 0;

  bool operator==(const AttackTrace&) const = default;

  std::size_t spoof_attempts() const {
    return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [](const auto& e) {
      return e.kind == EventKind::SpoofAttempt;
    }));
  }
  std::size_t failed_spoofs() const {
    return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [](const auto& e) {
      return e.kind == EventKind::SpoofAttempt && !e.success;
    }));
  }
};

// Z_n = sum_{i=2}^{n} (K r' + noise_i), with r' = sqrt(ping_power) the ping
// amplitude. noise_samples must hold n - 1 values.
inline double ping_flood_accumulate(int n, double channel_gain, double ping_power_w,
                                    std::span<const double> noise_samples) {
  require(n >= 1, "ping_flood_accumulate: n must be >= 1");
  require(noise_samples.size() == static_cast<std::size_t>(n - 1),
          "ping_flood_accumulate: expected n - 1 noise samples");
  const double amplitude = std::sqrt(ping_power_w);
  double z = 0.0;
  for (double noise : noise_samples) z += channel_gain * amplitude + noise;
  return z;
}

inline double an_sinr_db(double signal_gain_db, double signal_power_w, double an_gain_db,
                         double an_power_w, double noise_power_dbm) {
  require(signal_power_w > 0.0, "an_sinr_db: signal power must be > 0");
  const double s = signal_power_w * db_to_linear(signal_gain_db);
  const double i = an_power_w * db_to_linear(an_gain_db);
  const double n = dbm_to_watts(noise_power_dbm);
  return linear_to_db(s / (i + n));
}

inline bool an_blocks_decode(double sinr_db, double decode_threshold_db) {
  return sinr_db < decode_threshold_db;
}

// Uniform in [0, 1) from the top 53 bits; identical on every platform.
template <class Urbg>
double unit_uniform(Urbg& rng) {
  static_assert(Urbg::min() == 0 && Urbg::max() == UINT64_MAX, "needs a full 64-bit engine");
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class Urbg>
AttackTrace run_rrc_attack(const AttackConfig& config, Urbg& rng) {
  config.validate();
  const long n = config.ping_flood_ttis;
  const double sinr = an_sinr_db(config.an_link.signal_gain_db, config.an_link.signal_power_w,
                                 config.an_link.an_gain_db, config.an_power_w,
                                 config.an_link.noise_power_dbm);
  AttackTrace trace;
  for (int cycle = 1; cycle <= config.max_cycles; ++cycle) {
    const long base = (cycle - 1) * n;
    trace.cycles_used = cycle;
    if (cycle == 1) trace.events.push_back({base + 1, cycle, EventKind::RrcRequest});
    for (long t = 2; t <= n; ++t) {
      trace.events.push_back({base + t, cycle, EventKind::PingFlood});
    }
    // Both draws happen in both modes so matched seeds see matched streams.
    const double u_dl = unit_uniform(rng);
    const double u_ul = unit_uniform(rng);
    bool success = u_dl < config.p_downlink_success;
    if (config.mode == AttackMode::FD) success = success && u_ul < config.p_uplink_success;
    trace.events.push_back({base + n + 1, cycle, EventKind::SpoofAttempt, success});
    if (success) {
      trace.events.push_back({base + n + 2, cycle, EventKind::AnIntrusion, false, sinr});
      trace.events.push_back({base + n + 3, cycle, EventKind::RrcComplete});
      trace.outcome = Outcome::Connected;
      return trace;
    }
  }
  trace.outcome = Outcome::Exhausted;
  return trace;
}

inline AttackTrace run_rrc_attack(const AttackConfig& config) {
  std::mt19937_64 rng(config.seed);
  return run_rrc_attack(config, rng);
}

// Line form: "tti=<k> cycle=<c> event=<kind> [success=0|1] [sinr_db=<x> blocked=0|1]"
// per event, then "outcome=<Connected|Exhausted> cycles=<c>".
inline std::string to_text(const AttackTrace& trace, double decode_threshold_db = 0.0) {
  std::ostringstream os;
  os.precision(9);
  for (const auto& e : trace.events) {
    os << "tti=" << e.tti << " cycle=" << e.cycle << " event=" << to_string(e.kind);
    if (e.kind == EventKind::SpoofAttempt) os << " success=" << (e.success ? 1 : 0);
    if (e.kind == EventKind::AnIntrusion) {
      os << " sinr_db=" << e.sinr_db
         << " blocked=" << (an_blocks_decode(e.sinr_db, decode_threshold_db) ? 1 : 0);
    }
    os << '\n';
  }
  os << "outcome=" << to_string(trace.outcome) << " cycles=" << trace.cycles_used << '\n';
  return os.str();
}

inline AttackTrace parse_trace(std::string_view text) {
  AttackTrace trace;
  std::istringstream in{std::string(text)};
  std::string line;
  bool saw_outcome = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    AttackEvent ev;
    bool is_event = false;
    while (ls >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) throw DomainError("trace: malformed token '" + tok + "'");
      const std::string key = tok.substr(0, eq);
      const std::string val = tok.substr(eq + 1);
      if (key == "tti") {
        ev.tti = std::stol(val);
        is_event = true;
      } else if (key == "cycle") {
        ev.cycle = std::stoi(val);
      } else if (key == "event") {
        if (val == "RrcRequest") ev.kind = EventKind::RrcRequest;
        else if (val == "PingFlood") ev.kind = EventKind::PingFlood;
        else if (val == "SpoofAttempt") ev.kind = EventKind::SpoofAttempt;
        else if (val == "AnIntrusion") ev.kind = EventKind::AnIntrusion;
        else if (val == "RrcComplete") ev.kind = EventKind::RrcComplete;
        else throw DomainError("trace: unknown event '" + val + "'");
      } else if (key == "success") {
        ev.success = val == "1";
      } else if (key == "sinr_db") {
        ev.sinr_db = std::stod(val);
      } else if (key == "outcome") {
        if (val == "Connected") trace.outcome = Outcome::Connected;
        else if (val == "Exhausted") trace.outcome = Outcome::Exhausted;
        else throw DomainError("trace: unknown outcome '" + val + "'");
        saw_outcome = true;
      } else if (key == "cycles") {
        trace.cycles_used = std::stoi(val);
      }
    }
    if (is_event) trace.events.push_back(ev);
  }
  if (!saw_outcome) throw DomainError("trace: missing outcome line");
  return trace;
}

// Alternative source for b_DL: logistic in the attacker's capacity surplus
// over the sensitivity requirement, with the surplus scaled by slope_per_bps.
inline double downlink_success_from_capacity(double attacker_capacity_bps,
                                             double required_capacity_bps,
                                             double slope_per_bps) {
  require(slope_per_bps > 0.0, "downlink_success_from_capacity: slope must be > 0");
  return 1.0 / (1.0 + std::exp(-slope_per_bps * (attacker_capacity_bps - required_capacity_bps)));
}

struct UserNode {
  int id = 0;
  double distance_m = 0.0;
  Scenario scenario = Scenario::Urban;
};

// CSI proxy: clear-sky path loss of the user's link. Computed on demand from
// the current distance so it never goes stale.
inline double csi_score(const UserNode& user, LinkConfig base, const ScenarioProfile& rural,
                        const ScenarioProfile& urban) {
  require(user.distance_m > 0.0, "csi_score: user distance must be > 0");
  const auto& prof = user.scenario == Scenario::Rural ? rural : urban;
  base.distance_m = user.distance_m;
  base.scenario = user.scenario;
  base.path_loss_exponent = prof.path_loss_exponent;
  return path_loss_db(base, prof.shadow_mu_db, 0.0);
}

// Worst CSI = largest path loss; ties go to the smallest id.
inline const UserNode& select_target(std::span<const UserNode> users,
                                     const std::function<double(const UserNode&)>& path_loss) {
  require(!users.empty(), "select_target: no users");
  const UserNode* best = &users.front();
  double best_pl = path_loss(*best);
  for (const auto& u : users.subspan(1)) {
    const double pl = path_loss(u);
    if (pl > best_pl || (pl == best_pl && u.id < best->id)) {
      best = &u;
      best_pl = pl;
    }
  }
  return *best;
}

}  // namespace rainfade
