#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "msim/baselines.hpp"
#include "msim/channel.hpp"
#include "msim/config.hpp"
#include "msim/queueing.hpp"
#include "msim/rng.hpp"
#include "msim/topology.hpp"

namespace msim {

/// Everything observable about one simulated slot.  Pre-update copies of
/// the state are kept so drift checks can be run offline.
struct SlotRecord {
  std::int64_t slot = 0;
  std::vector<double> tu_rates;            // realized r_{i,k}, bits/s
  double throughput_bps = 0.0;             // H(t) = sum of rates
  std::vector<std::int64_t> q_tu, q_mis;   // post-update
  std::vector<double> z_virtual, battery;  // post-update
  std::vector<double> c_total;             // per MIS
  std::vector<double> harvest;             // per MIS
  std::vector<std::int64_t> theta, mu, m, arrivals;  // per TU, realized
  int clamped_mis = 0;                     // MISs where the energy clamp fired
  std::int64_t processed = 0, migrated = 0, dropped = 0;
  // pre-update state, for drift/bound monitors
  std::vector<std::int64_t> q_tu_pre, q_mis_pre;
  std::vector<double> z_pre, battery_pre;
};

struct RunSummary {
  std::int64_t slots = 0;
  double avg_throughput_bps = 0.0;
  double avg_throughput_warm_bps = 0.0;  // warm-up window excluded
  double goodput_bps = 0.0;              // delivered tasks * Y / (T tau)
  double avg_queue_total = 0.0;
  double avg_queue_warm = 0.0;
  std::vector<std::optional<double>> tu_latency_slots;       // full horizon
  std::vector<std::optional<double>> tu_latency_warm_slots;  // warm window
  std::optional<double> mean_latency_slots;
  std::optional<double> mean_latency_warm_slots;
  std::vector<double> final_z_over_t;     // per MIS
  std::vector<double> avg_c_total;        // per MIS
  std::vector<double> avg_battery;        // per MIS, pre-update level
  double avg_energy_j = 0.0;              // mean c_total over MISs
  double violation_rate = 0.0;            // clamped slots / slots
  double violation_rate_last_half = 0.0;
  std::int64_t total_arrivals = 0, total_processed = 0, total_migrated = 0,
               total_dropped = 0;
};

class SlotSink {
public:
  virtual ~SlotSink() = default;
  virtual void on_slot(const SlotRecord& rec) = 0;
};

class VectorSink final : public SlotSink {
public:
  void on_slot(const SlotRecord& rec) override { records.push_back(rec); }
  std::vector<SlotRecord> records;
};

/// i.i.d. per-TU task arrivals from the configured pmf over {0..g_max}.
std::vector<std::int64_t> sample_arrivals(const ScenarioConfig& cfg,
                                          const Topology& topo,
                                          RandomStreams& streams);

/// i.i.d. per-MIS harvested energy, uniform on [0, e_max].
std::vector<double> sample_harvest(const ScenarioConfig& cfg,
                                   RandomStreams& streams);

RunSummary run_simulation(const ScenarioConfig& cfg, SlotSink* sink = nullptr);

/// Mean of H(t) over the recorded slots.
double mean_throughput(const std::vector<SlotRecord>& records);

}  // namespace msim
