#include <doctest.h>

#include <cmath>

#include "msim/config.hpp"

using namespace msim;

TEST_CASE("defaults match the reference parameter set") {
  ScenarioConfig cfg;
  CHECK(cfg.num_mis == 5);
  CHECK(cfg.subchannels_per_mis == 30);
  CHECK(cfg.tus_per_mis == std::vector<int>{6, 6, 6, 6, 6});
  CHECK(cfg.subchannel_bandwidth_hz == doctest::Approx(1e6));
  CHECK(cfg.cbs_bandwidth_hz == doctest::Approx(100e6));
  CHECK(cfg.backhaul_ratio == doctest::Approx(0.1));
  CHECK(cfg.slot_seconds == doctest::Approx(0.05));
  CHECK(cfg.battery_capacity_j == doctest::Approx(20.0));
  CHECK(cfg.cpu_hz == doctest::Approx(1e9));
  CHECK(cfg.power_coeff == doctest::Approx(1e-25));
  CHECK(cfg.cycles_per_bit == doctest::Approx(1000.0));
  CHECK(cfg.task_bits == doctest::Approx(1000.0));
  CHECK(cfg.max_arrivals == 300);
  CHECK(cfg.tu_tx_power_w == doctest::Approx(0.1));
  CHECK(cfg.mis_tx_power_w == doctest::Approx(1.0));
  CHECK(cfg.noise_psd_dbm_hz == doctest::Approx(-174.0));
  CHECK(cfg.wavelength_mis_m == doctest::Approx(0.125));
  CHECK(cfg.wavelength_cbs_m == doctest::Approx(0.02));
  CHECK(cfg.total_tus() == 30);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("empty config text yields defaults") {
  const ScenarioConfig parsed = parse_config("");
  const ScenarioConfig defaults;
  CHECK(serialize_config(parsed) == serialize_config(defaults));
}

TEST_CASE("round trip: serialize then parse is identity") {
  ScenarioConfig cfg;
  cfg.num_mis = 3;
  cfg.tus_per_mis = {2, 7, 1};
  cfg.control_v = 0.37;
  cfg.backhaul_ratio = 0.25;
  cfg.policy = Policy::Pra;
  cfg.arrival_model = ArrivalModel::TruncatedPoisson;
  cfg.literal_mis_queue = true;
  cfg.seed = 987654321;
  const std::string text = serialize_config(cfg);
  const ScenarioConfig again = parse_config(text);
  CHECK(serialize_config(again) == text);
}

TEST_CASE("validation names the offending field") {
  CHECK_THROWS_AS(parse_config("radio.backhaul_ratio = 1.5"), ConfigError);
  try {
    parse_config("radio.backhaul_ratio = 1.5");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "radio.backhaul_ratio");
  }
  CHECK_THROWS_AS(parse_config("bogus.key = 1"), ConfigError);
  CHECK_THROWS_AS(parse_config("time.slot_seconds = 0"), ConfigError);
  CHECK_THROWS_AS(parse_config("not a key value line"), ConfigError);
}

TEST_CASE("comments, blanks and tus_per_mis re-defaulting") {
  const ScenarioConfig cfg = parse_config(
      "# comment only\n"
      "\n"
      "network.num_mis = 2   # trailing comment\n");
  CHECK(cfg.num_mis == 2);
  CHECK(cfg.tus_per_mis == std::vector<int>{6, 6});
}

TEST_CASE("noise power follows the PSD over occupied bandwidth") {
  ScenarioConfig cfg;
  const double expected = std::pow(10.0, -174.0 / 10.0) * 1e-3 * 1e6;
  CHECK(cfg.noise_watts(1e6) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(cfg.noise_watts(2e6) == doctest::Approx(2.0 * expected).epsilon(1e-12));
}

TEST_CASE("per-TU processing cap") {
  ScenarioConfig cfg;
  CHECK(cfg.mu_cap() == 50);  // 1e9 * 0.05 / (1000 * 1000)
}

TEST_CASE("policy names parse case-insensitively") {
  CHECK(parse_policy("jcora") == Policy::Jcora);
  CHECK(parse_policy("FRA") == Policy::Fra);
  CHECK(parse_policy("Tra") == Policy::Tra);
  CHECK_THROWS_AS(parse_policy("nope"), ConfigError);
}
