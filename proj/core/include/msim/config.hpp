#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace msim {

enum class Policy { Jcora, Fra, Lra, Pra, Tra };
enum class ArrivalModel { Uniform, TruncatedPoisson };
enum class InterferenceMode { PaperFaithful, Physical };

std::string to_string(Policy p);
std::string to_string(ArrivalModel m);
std::string to_string(InterferenceMode m);
Policy parse_policy(std::string_view s);

/// Raised on malformed config input or invariant violations.  `field()`
/// names the offending key when known.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

private:
  std::string field_;
};

/// All physical, protocol and algorithm parameters of a scenario.
/// Defaults reproduce the reference parameter set (1 CBS, 5 stations,
/// 30 subchannels each, 6 terminals per station).
struct ScenarioConfig {
  // network layout
  int num_mis = 5;
  int subchannels_per_mis = 30;
  std::vector<int> tus_per_mis = {6, 6, 6, 6, 6};
  double coverage_radius_m = 400.0;
  // kept off the two-ray null at 2000 m (sine argument exactly 125*2*pi)
  double mis_cbs_distance_m = 1990.0;

  // radio
  double subchannel_bandwidth_hz = 1e6;   // W
  double cbs_bandwidth_hz = 100e6;        // W_c
  double backhaul_ratio = 0.1;            // rho_k
  double noise_psd_dbm_hz = -174.0;
  double rician_k = 10.0;
  double tu_tx_power_w = 0.1;
  double mis_tx_power_w = 1.0;
  double tu_antenna_m = 10.0;
  double mis_antenna_m = 50.0;
  double cbs_antenna_m = 100.0;
  double wavelength_mis_m = 0.125;
  double wavelength_cbs_m = 0.02;
  InterferenceMode interference_mode = InterferenceMode::PaperFaithful;
  bool fading_in_weights = false;

  // compute and energy
  double cpu_hz = 1e9;                    // F_k
  double power_coeff = 1e-25;             // epsilon
  double base_power_j_per_slot = 0.1;     // c_k^bas
  double cycles_per_bit = 1000.0;         // alpha
  double battery_capacity_j = 20.0;       // E_max
  double max_charge_j_per_slot = 5.0;     // e_k^max

  // tasks
  double task_bits = 1000.0;              // Y
  std::int64_t max_arrivals = 300;        // g^max
  ArrivalModel arrival_model = ArrivalModel::Uniform;
  std::int64_t theta_cap_tasks = 500;     // theta_i^max
  std::int64_t latency_threshold_slots = 20;  // T_i^th
  std::int64_t exec_delay_slots = 0;          // T^c
  std::int64_t tu_buffer_cap = 0;   // 0 = unbounded
  std::int64_t mis_buffer_cap = 0;  // 0 = unbounded
  bool literal_mis_queue = false;   // add raw theta to the MIS queue

  // time and control
  double slot_seconds = 0.05;
  std::int64_t horizon_slots = 10000;
  double control_v = 0.1;
  double warmup_fraction = 0.1;
  double tu_speed_mps = 5.0;

  std::uint64_t seed = 1;
  Policy policy = Policy::Jcora;

  int total_tus() const;
  /// Noise power in watts over the given occupied bandwidth.
  double noise_watts(double bandwidth_hz) const;
  /// Per-TU processing cap mu_i^max = floor(F tau / (alpha Y)).
  std::int64_t mu_cap() const;

  /// Throws ConfigError naming the first violated field.
  void validate() const;
};

ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const ScenarioConfig& cfg);

}  // namespace msim
