#include "msim/jcora.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace msim {

double subchannel_weight(double q_tu, double q_mis, double subchannel_rate_bps,
                         const ScenarioConfig& cfg) {
  const double backlog_term =
      (q_mis - q_tu) * cfg.slot_seconds / cfg.task_bits - cfg.control_v;
  return backlog_term * subchannel_rate_bps;
}

double subchannel_weight(int tu_local, int subchannel, int mis,
                         const NetworkState& state,
                         const ChannelRealization& chan, double gamma,
                         const ScenarioConfig& cfg, const Topology& topo) {
  const int tu = topo.by_mis[mis][tu_local];
  double rate = fading_free_subchannel_rate(tu, chan, gamma, cfg, mis);
  if (cfg.fading_in_weights) {
    const double sigma2 = cfg.noise_watts(cfg.subchannel_bandwidth_hz);
    const double snr = cfg.tu_tx_power_w * chan.beta[tu][mis] *
                       chan.fading2[tu][subchannel] / (gamma + sigma2);
    rate = cfg.subchannel_bandwidth_hz * std::log2(1.0 + snr);
  }
  return subchannel_weight(static_cast<double>(state.q_tu[tu]),
                           static_cast<double>(state.q_mis[tu]), rate, cfg);
}

std::vector<std::vector<std::uint8_t>> allocate_subchannels(
    int mis, const NetworkState& state, const ChannelRealization& chan,
    const std::vector<double>& gamma_per_subchannel, const ScenarioConfig& cfg,
    const Topology& topo) {
  const int m_k = static_cast<int>(topo.by_mis[mis].size());
  std::vector<std::vector<std::uint8_t>> z(
      m_k, std::vector<std::uint8_t>(cfg.subchannels_per_mis, 0));
  if (m_k == 0) return z;
  for (int n = 0; n < cfg.subchannels_per_mis; ++n) {
    int best = 0;
    double best_w = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m_k; ++i) {
      const double w = subchannel_weight(i, n, mis, state, chan,
                                         gamma_per_subchannel[n], cfg, topo);
      if (w < best_w) {  // strict: ties break to the lowest index
        best_w = w;
        best = i;
      }
    }
    z[best][n] = 1;
  }
  return z;
}

bool offload_decision(std::int64_t q_tu, std::int64_t q_mis,
                      double aggregate_rate_bps, const ScenarioConfig& cfg) {
  const double lhs = static_cast<double>(q_mis - q_tu) * aggregate_rate_bps *
                         cfg.slot_seconds / cfg.task_bits -
                     cfg.control_v * aggregate_rate_bps;
  return lhs <= 0.0;
}

std::int64_t migration_decision(double z_virtual, std::int64_t q_mis,
                                double backhaul_rate_bps, std::int64_t theta,
                                std::int64_t mu, const ScenarioConfig& cfg) {
  const std::int64_t cap = std::max<std::int64_t>(0, theta - mu);
  if (cap == 0) return 0;
  if (backhaul_rate_bps <= 0.0) return 0;  // migration cost is infinite
  const double price =
      z_virtual * cfg.mis_tx_power_w * cfg.task_bits / backhaul_rate_bps;
  // strict comparison: on an exact tie (e.g. empty queue with zero virtual
  // queue) migrating buys nothing, so keep the cheaper no-op
  return price - static_cast<double>(q_mis) < 0.0 ? cap : 0;
}

std::vector<double> allocate_compute(const std::vector<std::int64_t>& q_mis_local,
                                     double z_virtual,
                                     const ScenarioConfig& cfg) {
  const int m_k = static_cast<int>(q_mis_local.size());
  std::vector<double> f(m_k, 0.0);
  double sum = 0.0;
  const double denom_coeff = 3.0 * cfg.cycles_per_bit * cfg.task_bits *
                             z_virtual * cfg.power_coeff * cfg.cpu_hz *
                             cfg.cpu_hz;
  for (int i = 0; i < m_k; ++i) {
    if (q_mis_local[i] <= 0) continue;
    double fi;
    if (z_virtual <= 0.0) {
      // zero virtual queue: energy is unconstrained on average, compute maximally
      fi = 1.0;
    } else {
      fi = std::sqrt(static_cast<double>(q_mis_local[i]) / denom_coeff);
      fi = std::min(fi, 1.0);
    }
    f[i] = fi;
    sum += fi;
  }
  if (sum > 1.0) {
    double sqrt_sum = 0.0;
    for (int i = 0; i < m_k; ++i)
      sqrt_sum += std::sqrt(static_cast<double>(std::max<std::int64_t>(
          q_mis_local[i], 0)));
    for (int i = 0; i < m_k; ++i) {
      f[i] = sqrt_sum > 0.0
                 ? std::sqrt(static_cast<double>(
                       std::max<std::int64_t>(q_mis_local[i], 0))) / sqrt_sum
                 : 0.0;
    }
  }
  return f;
}

Decision jcora_schedule_slot(int mis, const NetworkState& state,
                             const ChannelRealization& chan,
                             const std::vector<double>& gamma_per_subchannel,
                             double backhaul_rate_bps,
                             const ScenarioConfig& cfg, const Topology& topo) {
  const auto& tus = topo.by_mis[mis];
  const int m_k = static_cast<int>(tus.size());
  Decision d;
  d.resize(m_k, cfg.subchannels_per_mis);
  if (m_k == 0) return d;

  d.z = allocate_subchannels(mis, state, chan, gamma_per_subchannel, cfg, topo);

  std::vector<std::int64_t> q_local(m_k);
  std::vector<std::int64_t> theta(m_k, 0);
  for (int i = 0; i < m_k; ++i) {
    const int tu = tus[i];
    q_local[i] = state.q_mis[tu];
    double aggregate = 0.0;
    for (int n = 0; n < cfg.subchannels_per_mis; ++n) {
      if (!d.z[i][n]) continue;
      aggregate +=
          fading_free_subchannel_rate(tu, chan, gamma_per_subchannel[n], cfg, mis);
    }
    d.y[i] = offload_decision(state.q_tu[tu], state.q_mis[tu], aggregate, cfg);
    const double realized = uplink_rate(d.y[i], d.z[i], tu, mis, chan,
                                        gamma_per_subchannel, cfg);
    theta[i] = std::min(offload_capacity(realized, cfg), cfg.theta_cap_tasks);
  }

  d.f = allocate_compute(q_local, state.z_virtual[mis], cfg);
  for (int i = 0; i < m_k; ++i) {
    const std::int64_t mu = processing_capacity(d.f[i], cfg);
    d.m[i] = migration_decision(state.z_virtual[mis], q_local[i],
                                backhaul_rate_bps, theta[i], mu, cfg);
  }
  return d;
}

double drift_bound_constant(const ScenarioConfig& cfg) {
  const double theta_max = static_cast<double>(cfg.theta_cap_tasks);
  const double g_max = static_cast<double>(cfg.max_arrivals);
  const double mu_max = static_cast<double>(cfg.mu_cap());
  const double e_max = cfg.battery_capacity_j;
  double c = 0.0;
  for (int k = 0; k < cfg.num_mis; ++k) {
    c += e_max * e_max;
    c += static_cast<double>(cfg.tus_per_mis[k]) *
         (theta_max * theta_max + g_max * g_max + 0.5 * mu_max * mu_max);
  }
  return c;
}

}  // namespace msim
