#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rainfade {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

// Raised for arguments outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Bisection ran out of search range before meeting its target.
class SearchExhausted : public DomainError {
 public:
  using DomainError::DomainError;
};

enum class Scenario { Rural, Urban };
enum class AttackMode { HD, FD };

inline std::string_view to_string(Scenario s) {
  return s == Scenario::Rural ? "Rural" : "Urban";
}

inline std::string_view to_string(AttackMode m) {
  return m == AttackMode::HD ? "HD" : "FD";
}

inline Scenario parse_scenario(std::string_view s) {
  if (s == "Rural" || s == "rural") return Scenario::Rural;
  if (s == "Urban" || s == "urban") return Scenario::Urban;
  throw DomainError("unknown scenario '" + std::string(s) + "'");
}

inline AttackMode parse_attack_mode(std::string_view s) {
  if (s == "HD" || s == "hd") return AttackMode::HD;
  if (s == "FD" || s == "fd") return AttackMode::FD;
  throw DomainError("unknown attack mode '" + std::string(s) + "'");
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline void require(bool cond, const std::string& what) {
  if (!cond) throw DomainError(what);
}

}  // namespace rainfade
