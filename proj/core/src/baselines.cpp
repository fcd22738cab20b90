#include "msim/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>

#include "msim/jcora.hpp"

namespace msim {

namespace {

bool backlogged(const NetworkState& state, int tu) {
  return state.q_tu[tu] > 0 || state.q_mis[tu] > 0;
}

class JcoraScheduler final : public Scheduler {
public:
  Decision decide(int mis, const NetworkState& state,
                  const ChannelRealization& chan,
                  const std::vector<double>& gamma, double backhaul,
                  const std::vector<std::int64_t>&, const ScenarioConfig& cfg,
                  const Topology& topo) override {
    return jcora_schedule_slot(mis, state, chan, gamma, backhaul, cfg, topo);
  }
};

// FIFO order of backlog appearance: the head-of-line TU takes every
// subchannel and the whole CPU until its backlog clears.
class FraScheduler final : public Scheduler {
public:
  Decision decide(int mis, const NetworkState& state,
                  const ChannelRealization&, const std::vector<double>&,
                  double, const std::vector<std::int64_t>&,
                  const ScenarioConfig& cfg, const Topology& topo) override {
    const auto& tus = topo.by_mis[mis];
    const int m_k = static_cast<int>(tus.size());
    Decision d;
    d.resize(m_k, cfg.subchannels_per_mis);
    auto& order = order_[mis];
    // keep the arrival-order list in sync with observed backlogs
    for (int i = 0; i < m_k; ++i) {
      const bool in_line =
          std::find(order.begin(), order.end(), i) != order.end();
      if (backlogged(state, tus[i]) && !in_line) order.push_back(i);
      if (!backlogged(state, tus[i]) && in_line)
        order.erase(std::remove(order.begin(), order.end(), i), order.end());
    }
    if (order.empty()) return d;
    const int head = order.front();
    d.y[head] = 1;
    std::fill(d.z[head].begin(), d.z[head].end(), 1);
    d.f[head] = 1.0;
    return d;
  }

private:
  std::map<int, std::deque<int>> order_;
};

// Compute shares sized to meet each TU's latency budget; round-robin radio.
class LraScheduler final : public Scheduler {
public:
  Decision decide(int mis, const NetworkState& state,
                  const ChannelRealization&, const std::vector<double>&,
                  double, const std::vector<std::int64_t>&,
                  const ScenarioConfig& cfg, const Topology& topo) override {
    const auto& tus = topo.by_mis[mis];
    const int m_k = static_cast<int>(tus.size());
    Decision d;
    d.resize(m_k, cfg.subchannels_per_mis);
    if (m_k == 0) return d;
    double f_sum = 0.0;
    for (int i = 0; i < m_k; ++i) {
      const int tu = tus[i];
      const double needed =
          cfg.cycles_per_bit * cfg.task_bits * static_cast<double>(state.q_mis[tu]) /
          (cfg.cpu_hz * cfg.slot_seconds *
           static_cast<double>(cfg.latency_threshold_slots));
      d.f[i] = std::clamp(needed, 0.0, 1.0);
      f_sum += d.f[i];
      d.y[i] = state.q_tu[tu] > 0 ? 1 : 0;
    }
    if (f_sum > 1.0) {
      for (int i = 0; i < m_k; ++i) d.f[i] /= f_sum;
    }
    for (int n = 0; n < cfg.subchannels_per_mis; ++n) {
      const int i = static_cast<int>((n + state.slot) % m_k);
      d.z[i][n] = 1;
    }
    return d;
  }
};

// Arrival-rate priority: each TU in descending g_i order takes enough
// subchannels to drain its transmit queue and enough CPU to drain its MIS
// queue, until either resource runs out.
class PraScheduler final : public Scheduler {
public:
  Decision decide(int mis, const NetworkState& state,
                  const ChannelRealization& chan,
                  const std::vector<double>& gamma, double,
                  const std::vector<std::int64_t>& arrivals,
                  const ScenarioConfig& cfg, const Topology& topo) override {
    const auto& tus = topo.by_mis[mis];
    const int m_k = static_cast<int>(tus.size());
    Decision d;
    d.resize(m_k, cfg.subchannels_per_mis);
    if (m_k == 0) return d;
    std::vector<int> order(m_k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return arrivals[tus[a]] > arrivals[tus[b]];
    });
    int next_free = 0;
    double f_left = 1.0;
    for (int i : order) {
      const int tu = tus[i];
      if (state.q_tu[tu] > 0 && next_free < cfg.subchannels_per_mis) {
        const double per_sub =
            fading_free_subchannel_rate(tu, chan, gamma[next_free], cfg, mis);
        std::int64_t want = cfg.subchannels_per_mis;
        if (per_sub > 0.0) {
          want = static_cast<std::int64_t>(
              std::ceil(static_cast<double>(state.q_tu[tu]) * cfg.task_bits /
                        (per_sub * cfg.slot_seconds)));
        }
        for (std::int64_t taken = 0;
             taken < want && next_free < cfg.subchannels_per_mis; ++taken) {
          d.z[i][next_free++] = 1;
        }
        d.y[i] = 1;
      }
      if (state.q_mis[tu] > 0 && f_left > 0.0) {
        const double needed = cfg.cycles_per_bit * cfg.task_bits *
                              static_cast<double>(state.q_mis[tu]) /
                              (cfg.cpu_hz * cfg.slot_seconds);
        const double take = std::min({needed, f_left, 1.0});
        d.f[i] = take;
        f_left -= take;
      }
    }
    return d;
  }
};

// TDMA: the slot-granular rotation gives every TU a 1/M_k time share of
// each subchannel; the CPU is split evenly.
class TraScheduler final : public Scheduler {
public:
  Decision decide(int mis, const NetworkState& state,
                  const ChannelRealization&, const std::vector<double>&,
                  double, const std::vector<std::int64_t>&,
                  const ScenarioConfig& cfg, const Topology& topo) override {
    const auto& tus = topo.by_mis[mis];
    const int m_k = static_cast<int>(tus.size());
    Decision d;
    d.resize(m_k, cfg.subchannels_per_mis);
    if (m_k == 0) return d;
    for (int n = 0; n < cfg.subchannels_per_mis; ++n) {
      const int i = static_cast<int>((n + state.slot) % m_k);
      d.z[i][n] = 1;
    }
    for (int i = 0; i < m_k; ++i) {
      d.y[i] = 1;
      d.f[i] = 1.0 / static_cast<double>(m_k);
    }
    return d;
  }
};

}  // namespace

std::unique_ptr<Scheduler> make_scheduler(Policy policy) {
  switch (policy) {
    case Policy::Jcora: return std::make_unique<JcoraScheduler>();
    case Policy::Fra: return std::make_unique<FraScheduler>();
    case Policy::Lra: return std::make_unique<LraScheduler>();
    case Policy::Pra: return std::make_unique<PraScheduler>();
    case Policy::Tra: return std::make_unique<TraScheduler>();
  }
  return std::make_unique<JcoraScheduler>();
}

}  // namespace msim
