#include "msim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace msim {

double horizontal_displacement(double initial_offset, double speed,
                               double t_seconds, double coverage_radius) {
  const double half = coverage_radius / 2.0;
  double w = (initial_offset <= half)
                 ? half - initial_offset - speed * t_seconds
                 : half - initial_offset + speed * t_seconds;
  // periodic wrap into [-R/2, R/2]
  w = std::remainder(w, coverage_radius);
  return w;
}

double tu_mis_distance_unwrapped(double initial_offset, double speed,
                                 double t_seconds, double coverage_radius,
                                 double mis_antenna_m) {
  const double half = coverage_radius / 2.0;
  const double w = (initial_offset <= half)
                       ? half - initial_offset - speed * t_seconds
                       : half - initial_offset + speed * t_seconds;
  return std::sqrt(mis_antenna_m * mis_antenna_m + w * w);
}

double tu_mis_distance(const Topology& topo, int tu, std::int64_t slot,
                       const ScenarioConfig& cfg) {
  const TuRecord& rec = topo.tus[tu];
  const double t_sec = static_cast<double>(slot) * cfg.slot_seconds;
  const double w = horizontal_displacement(rec.initial_offset_m, rec.speed_mps,
                                           t_sec, cfg.coverage_radius_m);
  return std::sqrt(cfg.mis_antenna_m * cfg.mis_antenna_m + w * w);
}

double large_scale_gain(double wavelength, double dist, double h_tx,
                        double h_rx) {
  if (dist <= 0.0) throw std::domain_error("large_scale_gain: dist must be > 0");
  const double fs = wavelength / (4.0 * M_PI * dist);
  const double s = std::sin(2.0 * M_PI * h_tx * h_rx / (wavelength * dist));
  return fs * fs * s * s;
}

double sample_small_scale(double rician_k, RngStream& rng) {
  const double los = std::sqrt(rician_k / (1.0 + rician_k));
  const double scatter = std::sqrt(1.0 / (1.0 + rician_k));
  // s ~ CN(0,1): real and imaginary parts N(0, 1/2)
  const double re = los + scatter * rng.normal() * M_SQRT1_2;
  const double im = scatter * rng.normal() * M_SQRT1_2;
  return re * re + im * im;
}

ChannelRealization sample_channel(const Topology& topo,
                                  const ScenarioConfig& cfg, std::int64_t slot,
                                  RandomStreams& streams) {
  ChannelRealization chan;
  chan.slot = slot;
  const int num_tus = topo.num_tus();
  chan.beta.assign(num_tus, std::vector<double>(cfg.num_mis, 0.0));
  chan.fading2.assign(num_tus,
                      std::vector<double>(cfg.subchannels_per_mis, 0.0));
  const double spacing = 2.0 * cfg.coverage_radius_m;  // MISs on a line
  const double t_sec = static_cast<double>(slot) * cfg.slot_seconds;
  for (int i = 0; i < num_tus; ++i) {
    const TuRecord& rec = topo.tus[i];
    const double w = horizontal_displacement(
        rec.initial_offset_m, rec.speed_mps, t_sec, cfg.coverage_radius_m);
    for (int k = 0; k < cfg.num_mis; ++k) {
      const double dx = w - spacing * static_cast<double>(k - rec.home_mis);
      const double d =
          std::sqrt(cfg.mis_antenna_m * cfg.mis_antenna_m + dx * dx);
      chan.beta[i][k] = large_scale_gain(cfg.wavelength_mis_m, d,
                                         cfg.tu_antenna_m, cfg.mis_antenna_m);
    }
    auto& rng = streams.stream(Phenomenon::Fading, static_cast<std::uint32_t>(i));
    for (int n = 0; n < cfg.subchannels_per_mis; ++n) {
      chan.fading2[i][n] = sample_small_scale(cfg.rician_k, rng);
    }
  }
  chan.beta_backhaul.assign(cfg.num_mis, 0.0);
  for (int k = 0; k < cfg.num_mis; ++k) {
    chan.beta_backhaul[k] =
        large_scale_gain(cfg.wavelength_cbs_m, topo.mis_cbs_distance_m,
                         cfg.mis_antenna_m, cfg.cbs_antenna_m);
  }
  return chan;
}

double interference_power(const std::vector<Decision>& activity,
                          const Topology& topo, const ChannelRealization& chan,
                          int subchannel, int victim_mis,
                          const ScenarioConfig& cfg) {
  double gamma = 0.0;
  for (int q = 0; q < cfg.num_mis; ++q) {
    if (q == victim_mis) continue;
    if (q >= static_cast<int>(activity.size())) continue;
    const Decision& d = activity[q];
    const auto& tus = topo.by_mis[q];
    for (size_t j = 0; j < tus.size(); ++j) {
      if (j >= d.y.size() || !d.y[j] || !d.z[j][subchannel]) continue;
      const int tu = tus[j];
      const int gain_mis =
          cfg.interference_mode == InterferenceMode::PaperFaithful ? q
                                                                   : victim_mis;
      gamma += cfg.tu_tx_power_w * chan.beta[tu][gain_mis];
    }
  }
  return gamma;
}

std::vector<std::vector<double>> interference_map(
    const std::vector<Decision>& activity, const Topology& topo,
    const ChannelRealization& chan, const ScenarioConfig& cfg) {
  const int n_sub = cfg.subchannels_per_mis;
  std::vector<std::vector<double>> out(cfg.num_mis,
                                       std::vector<double>(n_sub, 0.0));
  if (cfg.interference_mode == InterferenceMode::PaperFaithful) {
    // per-interferer contribution is victim-independent; accumulate one
    // total per subchannel and subtract each cell's own share
    std::vector<std::vector<double>> own(cfg.num_mis,
                                         std::vector<double>(n_sub, 0.0));
    std::vector<double> total(n_sub, 0.0);
    for (int q = 0; q < cfg.num_mis && q < static_cast<int>(activity.size());
         ++q) {
      const Decision& d = activity[q];
      const auto& tus = topo.by_mis[q];
      for (size_t j = 0; j < tus.size() && j < d.y.size(); ++j) {
        if (!d.y[j]) continue;
        const double contrib = cfg.tu_tx_power_w * chan.beta[tus[j]][q];
        for (int n = 0; n < n_sub; ++n) {
          if (!d.z[j][n]) continue;
          total[n] += contrib;
          own[q][n] += contrib;
        }
      }
    }
    for (int k = 0; k < cfg.num_mis; ++k)
      for (int n = 0; n < n_sub; ++n) out[k][n] = total[n] - own[k][n];
  } else {
    for (int k = 0; k < cfg.num_mis; ++k)
      for (int n = 0; n < n_sub; ++n)
        out[k][n] = interference_power(activity, topo, chan, n, k, cfg);
  }
  return out;
}

double fading_free_subchannel_rate(int tu, const ChannelRealization& chan,
                                   double gamma, const ScenarioConfig& cfg,
                                   int home_mis) {
  const double sigma2 = cfg.noise_watts(cfg.subchannel_bandwidth_hz);
  const double snr =
      cfg.tu_tx_power_w * chan.beta[tu][home_mis] / (gamma + sigma2);
  return cfg.subchannel_bandwidth_hz * std::log2(1.0 + snr);
}

double uplink_rate(bool y, const std::vector<std::uint8_t>& z_row, int tu,
                   int home_mis, const ChannelRealization& chan,
                   const std::vector<double>& gamma_per_subchannel,
                   const ScenarioConfig& cfg) {
  if (!y) return 0.0;
  const double sigma2 = cfg.noise_watts(cfg.subchannel_bandwidth_hz);
  const double p_beta = cfg.tu_tx_power_w * chan.beta[tu][home_mis];
  double rate = 0.0;
  for (size_t n = 0; n < z_row.size(); ++n) {
    if (!z_row[n]) continue;
    const double snr =
        p_beta * chan.fading2[tu][n] / (gamma_per_subchannel[n] + sigma2);
    rate += cfg.subchannel_bandwidth_hz * std::log2(1.0 + snr);
  }
  return rate;
}

double backhaul_rate(const ScenarioConfig& cfg, double beta_backhaul) {
  const double bw = cfg.backhaul_ratio * cfg.cbs_bandwidth_hz;
  if (bw <= 0.0) return 0.0;
  const double sigma2 = cfg.noise_watts(bw);
  return bw * std::log2(1.0 + cfg.mis_tx_power_w * beta_backhaul / sigma2);
}

}  // namespace msim
