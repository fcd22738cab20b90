#include "msim/topology.hpp"

namespace msim {

Topology build_topology(const ScenarioConfig& cfg, RandomStreams& streams) {
  Topology topo;
  topo.mis_cbs_distance_m = cfg.mis_cbs_distance_m;
  topo.by_mis.resize(cfg.num_mis);
  auto& rng = streams.stream(Phenomenon::Topology);
  for (int k = 0; k < cfg.num_mis; ++k) {
    for (int j = 0; j < cfg.tus_per_mis[k]; ++j) {
      TuRecord tu;
      tu.home_mis = k;
      tu.initial_offset_m = rng.uniform(0.0, cfg.coverage_radius_m);
      tu.speed_mps = cfg.tu_speed_mps;
      topo.by_mis[k].push_back(topo.num_tus());
      topo.tus.push_back(tu);
    }
  }
  return topo;
}

}  // namespace msim
