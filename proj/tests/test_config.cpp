#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include <gtest/gtest.h>

#include "rainfade/config.hpp"

using namespace rainfade;

namespace {

std::string field_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

std::string message_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "<no error>";
}

}  // namespace

TEST(LoadConfig, EmptyTextGivesDefaults) {
  for (const char* text : {"", "  \n", "{}"}) {
    const Config c = parse_config(text);
    EXPECT_EQ(c.link.bandwidth_hz, 800e6);
    EXPECT_EQ(c.link.frequency_hz, 28e9);
    EXPECT_EQ(c.link.noise_power_dbm, -106.0);
    EXPECT_EQ(c.rain.rain_rate_mm_per_hr, 50.0);
    EXPECT_EQ(c.link.tx_power_w, 0.02);
    EXPECT_EQ(c.coverage_range_m, 250.0);
    EXPECT_EQ(c.eavesdropper.distance_m, 150.0);
  }
}

TEST(LoadConfig, ValidationNamesTheField) {
  EXPECT_EQ(field_of(R"({"rain": {"rain_rate": -1}})"), "rain.rain_rate");
  EXPECT_EQ(field_of(R"({"profiles": {"urban": {"path_loss_exponent": 9}}})"),
            "profiles.urban.path_loss_exponent");
  EXPECT_EQ(field_of(R"({"attack": {"p_downlink_success": 2}})"), "attack.p_downlink_success");
  EXPECT_EQ(field_of(R"({"sweeps": {"distance_step_m": 0}})"), "sweeps.distance_step_m");
  EXPECT_EQ(field_of(R"({"attack": {"mode": "XD"}})"), "attack.mode");
}

TEST(LoadConfig, UnknownAndMistypedFields) {
  EXPECT_EQ(field_of(R"({"link": {"frequncy_hz": 1}})"), "link.frequncy_hz");
  EXPECT_EQ(field_of(R"({"rain": {"rain_rate": "heavy"}})"), "rain.rain_rate");
  EXPECT_EQ(field_of(R"({"_note": "annotations are allowed"})"), "<no error>");
}

TEST(LoadConfig, ParseErrorReportsLine) {
  const std::string msg = message_of("{\n  \"link\": {\n    \"frequency_hz\": ,\n  }\n}\n");
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(LoadConfig, DepthFromComponents) {
  const Config c = parse_config(
      R"({"rain": {"rain_path_components_km": {"scattering": 0.1, "absorption": 0.1, "polarization": 0.05}}})");
  EXPECT_DOUBLE_EQ(c.rain.rain_path_depth_km, 0.25);
  EXPECT_THROW(parse_config(
                   R"({"rain": {"rain_path_depth_km": 1, "rain_path_components_km": {"scattering": 1}}})"),
               ConfigError);
}

TEST(LoadConfig, MissingFile) {
  EXPECT_THROW(load_config("/nonexistent/rainfade.json"), ConfigError);
}

TEST(SaveConfig, RoundTripIsFieldForField) {
  Config c;
  c.link.frequency_hz = 61.3e9;
  c.thermal_db = 1.25;
  c.urban.shadow_sigma_db = 5.5;
  c.shadowing_mode = ShadowingMode::Sampled;
  c.rain.rain_rate_mm_per_hr = 12.345678901234567;
  c.rain.enabled = false;
  c.attack.mode = AttackMode::FD;
  c.attack.seed = 18446744073709551557ull;
  c.attack.an_link.an_gain_db = -77.7;
  c.sweeps.eavesdropper_passive = false;
  c.deployment_distances_m = {12.0, 34.5};
  const auto path = std::filesystem::temp_directory_path() / "rainfade_roundtrip.json";
  save_config(c, path.string());
  const Config back = load_config(path.string());
  std::filesystem::remove(path);
  EXPECT_EQ(config_to_json(back), config_to_json(c));
  EXPECT_EQ(back.rain.rain_rate_mm_per_hr, c.rain.rain_rate_mm_per_hr);
  EXPECT_EQ(back.attack.seed, c.attack.seed);
  EXPECT_EQ(back.shadowing_mode, ShadowingMode::Sampled);
}

TEST(DefaultConfig, ShippedFileMatchesBuiltIns) {
  const Config shipped = load_config(RAINFADE_SOURCE_DIR "/config/default.json");
  EXPECT_EQ(config_to_json(shipped), config_to_json(Config{}));
}

TEST(DefaultConfig, ThresholdsAreUserCapacityAt150m) {
  const Config c;
  for (auto s : {Scenario::Urban, Scenario::Rural}) {
    const double cu = link_capacity_bps(make_link(c, s, 150.0), 0.0, 0.0);
    EXPECT_NEAR(c.threshold_bps(s), cu, 1e-6 * cu) << to_string(s);
  }
}

TEST(ConfigSchema, CoversEveryEmittedKey) {
  std::ifstream f(RAINFADE_SOURCE_DIR "/docs/config-schema.json");
  const auto schema = nlohmann::json::parse(f);
  std::function<void(const nlohmann::json&, const nlohmann::json&, const std::string&)> walk =
      [&](const nlohmann::json& sch, const nlohmann::json& val, const std::string& path) {
        for (auto it = val.begin(); it != val.end(); ++it) {
          ASSERT_TRUE(sch.contains("properties") && sch["properties"].contains(it.key()))
              << path + it.key();
          if (it->is_object()) walk(sch["properties"][it.key()], *it, path + it.key() + ".");
        }
      };
  walk(schema, config_to_json(Config{}), "");
}
