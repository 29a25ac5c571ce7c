// Prints clear-sky and rained capacity for a 28 GHz link at a few distances.

#include <cstdio>

#include "rainfade/rainfade.hpp"

int main() {
  using namespace rainfade;
  const Config cfg;
  const auto table = CoefficientTable::load(RAINFADE_DEFAULT_COEFFS);
  const double rain = rain_attenuation_db(cfg.link.frequency_hz, cfg.rain, table);
  std::printf("rain penalty over %.2f km at %.0f mm/hr: %.3f dB\n", cfg.rain.rain_path_depth_km,
              cfg.rain.rain_rate_mm_per_hr, rain);
  std::printf("%-8s %10s %14s %14s\n", "scenario", "distance", "clear Mbps", "rained Mbps");
  for (Scenario s : {Scenario::Rural, Scenario::Urban}) {
    for (double d : {10.0, 50.0, 100.0, 150.0, 250.0}) {
      const auto link = make_link(cfg, s, d);
      std::printf("%-8s %10.0f %14.3f %14.3f\n", std::string(to_string(s)).c_str(), d,
                  link_capacity_bps(link, 0.0, 0.0) / 1e6, link_capacity_bps(link, 0.0, rain) / 1e6);
    }
  }
}
