#pragma once

#include <memory>
#include <vector>

#include "msim/channel.hpp"
#include "msim/config.hpp"
#include "msim/decision.hpp"
#include "msim/queueing.hpp"

namespace msim {

/// Per-slot, per-MIS scheduling policy.  Implementations may keep small
/// per-run state (e.g. FRA's head-of-line bookkeeping); one scheduler
/// instance belongs to exactly one simulation run.
class Scheduler {
public:
  virtual ~Scheduler() = default;
  virtual Decision decide(int mis, const NetworkState& state,
                          const ChannelRealization& chan,
                          const std::vector<double>& gamma_per_subchannel,
                          double backhaul_rate_bps,
                          const std::vector<std::int64_t>& arrivals,
                          const ScenarioConfig& cfg, const Topology& topo) = 0;
};

std::unique_ptr<Scheduler> make_scheduler(Policy policy);

}  // namespace msim
