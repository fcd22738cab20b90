#pragma once

#include <vector>

#include "msim/config.hpp"
#include "msim/rng.hpp"

namespace msim {

struct TuRecord {
  int home_mis = 0;
  double initial_offset_m = 0.0;  // d_i^0, in [0, R_k]
  double speed_mps = 0.0;
};

struct Topology {
  std::vector<TuRecord> tus;               // global TU index order
  std::vector<std::vector<int>> by_mis;    // per-MIS lists of global indices
  double mis_cbs_distance_m = 0.0;

  int num_tus() const { return static_cast<int>(tus.size()); }
};

/// Draws TU offsets uniformly in [0, R_k]; deterministic for a given seed.
Topology build_topology(const ScenarioConfig& cfg, RandomStreams& streams);

}  // namespace msim
