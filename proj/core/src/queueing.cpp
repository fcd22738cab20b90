#include "msim/queueing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace msim {

NetworkState NetworkState::initial(int num_tus, int num_mis) {
  NetworkState s;
  s.q_tu.assign(num_tus, 0);
  s.q_mis.assign(num_tus, 0);
  s.z_virtual.assign(num_mis, 0.0);
  s.battery.assign(num_mis, 0.0);  // E_k(0) = 0
  s.slot = 0;
  return s;
}

std::int64_t offload_capacity(double rate_bps, const ScenarioConfig& cfg) {
  if (rate_bps <= 0.0) return 0;
  return static_cast<std::int64_t>(
      std::floor(rate_bps * cfg.slot_seconds / cfg.task_bits));
}

std::int64_t processing_capacity(double f, const ScenarioConfig& cfg) {
  if (f <= 0.0) return 0;
  return static_cast<std::int64_t>(std::floor(
      f * cfg.cpu_hz * cfg.slot_seconds / (cfg.cycles_per_bit * cfg.task_bits)));
}

EnergyCost slot_energy_cost(const Decision& d, double backhaul_rate_bps,
                            const ScenarioConfig& cfg) {
  EnergyCost cost;
  cost.c_bas = cfg.base_power_j_per_slot;
  std::int64_t migrated = 0;
  for (int i = 0; i < d.num_tus(); ++i) {
    const double hz = d.f[i] * cfg.cpu_hz;
    cost.c_com += cfg.power_coeff * hz * hz * hz * cfg.slot_seconds;
    migrated += d.m[i];
  }
  if (migrated > 0) {
    if (backhaul_rate_bps <= 0.0)
      throw std::runtime_error(
          "slot_energy_cost: migration requested over zero-rate backhaul");
    cost.c_tra = cfg.mis_tx_power_w *
                 (static_cast<double>(migrated) * cfg.task_bits) /
                 backhaul_rate_bps;
  }
  cost.c_total = cost.c_bas + cost.c_tra + cost.c_com;
  return cost;
}

std::int64_t step_task_queues(NetworkState& state, const SlotOutcome& out,
                              const ScenarioConfig& cfg) {
  std::int64_t dropped = 0;
  const int num_tus = static_cast<int>(state.q_tu.size());
  for (int i = 0; i < num_tus; ++i) {
    std::int64_t q = std::max<std::int64_t>(state.q_tu[i] - out.theta[i], 0) +
                     out.arrivals[i];
    if (cfg.tu_buffer_cap > 0 && q > cfg.tu_buffer_cap) {
      dropped += q - cfg.tu_buffer_cap;
      q = cfg.tu_buffer_cap;
    }
    state.q_tu[i] = q;

    const std::int64_t added =
        cfg.literal_mis_queue ? out.theta[i] : out.theta_eff[i];
    std::int64_t qm =
        std::max<std::int64_t>(state.q_mis[i] - out.mu[i] - out.m[i], 0) + added;
    if (cfg.mis_buffer_cap > 0 && qm > cfg.mis_buffer_cap) {
      dropped += qm - cfg.mis_buffer_cap;
      qm = cfg.mis_buffer_cap;
    }
    state.q_mis[i] = qm;
  }
  return dropped;
}

double step_energy(double battery, double harvest, double c_total,
                   const ScenarioConfig& cfg) {
  return std::min(std::max(0.0, battery + harvest - c_total),
                  cfg.battery_capacity_j);
}

double step_virtual_queue(double z, double c_total, double battery_pre) {
  return std::max(z + c_total - battery_pre, 0.0);
}

LatencySummary average_latency(
    const std::vector<double>& mean_total_queue_per_tu,
    const std::vector<double>& mean_arrivals_per_tu, const ScenarioConfig& cfg) {
  LatencySummary out;
  out.tu_latency_slots.resize(mean_total_queue_per_tu.size());
  for (size_t i = 0; i < mean_total_queue_per_tu.size(); ++i) {
    if (mean_arrivals_per_tu[i] <= 0.0) {
      out.tu_latency_slots[i] = std::nullopt;
    } else {
      out.tu_latency_slots[i] =
          mean_total_queue_per_tu[i] / mean_arrivals_per_tu[i] +
          static_cast<double>(cfg.exec_delay_slots);
    }
  }
  return out;
}

}  // namespace msim
