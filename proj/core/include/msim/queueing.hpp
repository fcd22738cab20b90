#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "msim/config.hpp"
#include "msim/decision.hpp"

namespace msim {

/// Queue, battery and virtual-queue state; TU quantities use global TU
/// indices, MIS quantities use MIS indices.
struct NetworkState {
  std::vector<std::int64_t> q_tu;    // Q_i
  std::vector<std::int64_t> q_mis;   // Q_{i,k}, indexed by global TU
  std::vector<double> z_virtual;     // Z_k, joules
  std::vector<double> battery;       // E_k, joules
  std::int64_t slot = 0;

  static NetworkState initial(int num_tus, int num_mis);
};

/// Realized per-slot quantities after the energy clamp.
struct SlotOutcome {
  std::vector<std::int64_t> theta;      // offload capacity per TU
  std::vector<std::int64_t> theta_eff;  // actually transferred, min(theta, Q_i)
  std::vector<std::int64_t> mu;         // processed per TU
  std::vector<std::int64_t> m;          // migrated per TU
  std::vector<std::int64_t> arrivals;   // g_i
  std::vector<double> harvest;          // e_k per MIS
  std::vector<double> c_bas, c_tra, c_com, c_total;  // per MIS, joules
  std::int64_t dropped = 0;             // finite-buffer drops this slot
};

struct EnergyCost {
  double c_bas = 0.0;
  double c_tra = 0.0;
  double c_com = 0.0;
  double c_total = 0.0;
};

/// floor(rate * tau / Y)
std::int64_t offload_capacity(double rate_bps, const ScenarioConfig& cfg);

/// floor(f * F * tau / (alpha * Y))
std::int64_t processing_capacity(double f, const ScenarioConfig& cfg);

/// Energy cost of one MIS's decision.  Throws std::runtime_error when tasks
/// are migrated over a zero-rate backhaul.
EnergyCost slot_energy_cost(const Decision& d, double backhaul_rate_bps,
                            const ScenarioConfig& cfg);

/// Applies the task-queue recursions in place for all TUs.  In literal mode
/// the MIS queue receives raw theta; otherwise the send-limited theta_eff.
/// Returns the number of tasks dropped at finite buffers.
std::int64_t step_task_queues(NetworkState& state, const SlotOutcome& out,
                              const ScenarioConfig& cfg);

/// Battery recursion: min[max(0, E + e - c), E_max].
double step_energy(double battery, double harvest, double c_total,
                   const ScenarioConfig& cfg);

/// Virtual-queue recursion: max[Z + c - E, 0], with E the pre-update battery.
double step_virtual_queue(double z, double c_total, double battery_pre);

/// Per-TU average task latency in slots via Little's law; nullopt when the
/// TU saw no arrivals.
struct LatencySummary {
  std::vector<std::optional<double>> tu_latency_slots;
};
LatencySummary average_latency(
    const std::vector<double>& mean_total_queue_per_tu,
    const std::vector<double>& mean_arrivals_per_tu, const ScenarioConfig& cfg);

}  // namespace msim
