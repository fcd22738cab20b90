#pragma once

#include <vector>

#include "msim/config.hpp"
#include "msim/decision.hpp"
#include "msim/rng.hpp"
#include "msim/topology.hpp"

namespace msim {

/// Per-slot channel state.  Large-scale gains carry no subchannel index
/// because a single carrier wavelength is used per link type; small-scale
/// fading is drawn per (TU, subchannel) on the home link (block fading,
/// redrawn each slot).
struct ChannelRealization {
  std::int64_t slot = 0;
  std::vector<std::vector<double>> beta;     // [tu][mis] large-scale gain
  std::vector<std::vector<double>> fading2;  // [tu][subchannel] |h|^2, home link
  std::vector<double> beta_backhaul;         // [mis] MIS->CBS gain
};

/// Horizontal displacement of a TU from its home MIS after `t_seconds`,
/// wrapped back into [-R/2, R/2] so the TU re-enters coverage.
double horizontal_displacement(double initial_offset, double speed,
                               double t_seconds, double coverage_radius);

/// Closed-form TU-MIS distance without coverage wrap.
double tu_mis_distance_unwrapped(double initial_offset, double speed,
                                 double t_seconds, double coverage_radius,
                                 double mis_antenna_m);

/// Distance from a TU to its home MIS at the given slot (wrapped mobility).
double tu_mis_distance(const Topology& topo, int tu, std::int64_t slot,
                       const ScenarioConfig& cfg);

/// Two-ray sea-surface gain: (lambda/4πd)^2 sin^2(2π h_tx h_rx / (lambda d)).
/// Throws std::domain_error for non-positive distance.
double large_scale_gain(double wavelength, double dist, double h_tx, double h_rx);

/// One Rician power draw |h|^2 with E|h|^2 = 1.
double sample_small_scale(double rician_k, RngStream& rng);

ChannelRealization sample_channel(const Topology& topo, const ScenarioConfig& cfg,
                                  std::int64_t slot, RandomStreams& streams);

/// Inter-cell interference power seen on subchannel `n` at MIS `k` given the
/// per-MIS activity (decisions).  In paper-faithful mode each interferer
/// contributes through its gain to its own serving MIS; in physical mode
/// through its gain to the victim MIS.
double interference_power(const std::vector<Decision>& activity,
                          const Topology& topo, const ChannelRealization& chan,
                          int subchannel, int victim_mis,
                          const ScenarioConfig& cfg);

/// [mis][subchannel] interference table for a whole slot.
std::vector<std::vector<double>> interference_map(
    const std::vector<Decision>& activity, const Topology& topo,
    const ChannelRealization& chan, const ScenarioConfig& cfg);

/// Fading-free per-subchannel rate W log2(1 + p beta / (gamma + sigma^2)),
/// as used inside the scheduler's closed forms.
double fading_free_subchannel_rate(int tu, const ChannelRealization& chan,
                                   double gamma, const ScenarioConfig& cfg,
                                   int home_mis);

/// Realized uplink rate for one TU over its allocated subchannels (with
/// fading), zero when y = 0 or nothing is allocated.
double uplink_rate(bool y, const std::vector<std::uint8_t>& z_row, int tu,
                   int home_mis, const ChannelRealization& chan,
                   const std::vector<double>& gamma_per_subchannel,
                   const ScenarioConfig& cfg);

/// MIS->CBS rate rho_k W_c log2(1 + p_k beta / sigma^2).
double backhaul_rate(const ScenarioConfig& cfg, double beta_backhaul);

}  // namespace msim
