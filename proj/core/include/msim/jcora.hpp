#pragma once

#include <cstdint>
#include <vector>

#include "msim/channel.hpp"
#include "msim/config.hpp"
#include "msim/decision.hpp"
#include "msim/queueing.hpp"

namespace msim {

/// Weight of a TU on one subchannel: ((Q_{i,k} - Q_i) tau / Y - V) * rate.
double subchannel_weight(double q_tu, double q_mis, double subchannel_rate_bps,
                         const ScenarioConfig& cfg);

double subchannel_weight(int tu_local, int subchannel, int mis,
                         const NetworkState& state,
                         const ChannelRealization& chan, double gamma,
                         const ScenarioConfig& cfg, const Topology& topo);

/// Gives every subchannel to its minimum-weight TU (ties to the lowest
/// local index).  Empty z when the MIS serves no TUs.
std::vector<std::vector<std::uint8_t>> allocate_subchannels(
    int mis, const NetworkState& state, const ChannelRealization& chan,
    const std::vector<double>& gamma_per_subchannel, const ScenarioConfig& cfg,
    const Topology& topo);

/// Offload threshold: y = 1 iff (Q_{i,k} - Q_i) G tau / Y - V G <= 0.
bool offload_decision(std::int64_t q_tu, std::int64_t q_mis,
                      double aggregate_rate_bps, const ScenarioConfig& cfg);

/// Migrate everything above processing capacity when the weighted backhaul
/// energy price is no larger than the queue backlog; zero otherwise.
std::int64_t migration_decision(double z_virtual, std::int64_t q_mis,
                                double backhaul_rate_bps, std::int64_t theta,
                                std::int64_t mu, const ScenarioConfig& cfg);

/// Per-TU closed-form compute shares with the sqrt(Q)-proportional fallback
/// when the unconstrained optima overshoot the simplex.
std::vector<double> allocate_compute(const std::vector<std::int64_t>& q_mis_local,
                                     double z_virtual,
                                     const ScenarioConfig& cfg);

/// Full per-MIS slot decision: subchannels, offload bits, compute shares,
/// then migration (compute before migration so mu is known).
Decision jcora_schedule_slot(int mis, const NetworkState& state,
                             const ChannelRealization& chan,
                             const std::vector<double>& gamma_per_subchannel,
                             double backhaul_rate_bps,
                             const ScenarioConfig& cfg, const Topology& topo);

/// Drift-bound constant:
///   C = sum_k { E_max^2 + sum_i [theta_max^2 + g_max^2 + mu_max^2 / 2] }.
double drift_bound_constant(const ScenarioConfig& cfg);

}  // namespace msim
