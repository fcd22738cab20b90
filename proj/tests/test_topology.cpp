#include <doctest.h>

#include "msim/topology.hpp"

using namespace msim;

TEST_CASE("default layout: 5 stations, 6 terminals each") {
  ScenarioConfig cfg;
  RandomStreams streams(1);
  const Topology topo = build_topology(cfg, streams);
  CHECK(topo.num_tus() == 30);
  CHECK(topo.by_mis.size() == 5);
  for (int k = 0; k < 5; ++k) {
    CHECK(topo.by_mis[k].size() == 6);
    for (int tu : topo.by_mis[k]) CHECK(topo.tus[tu].home_mis == k);
  }
  for (const auto& tu : topo.tus) {
    CHECK(tu.initial_offset_m >= 0.0);
    CHECK(tu.initial_offset_m <= cfg.coverage_radius_m);
    CHECK(tu.speed_mps == doctest::Approx(cfg.tu_speed_mps));
  }
  CHECK(topo.mis_cbs_distance_m == doctest::Approx(cfg.mis_cbs_distance_m));
}

TEST_CASE("same seed gives identical topologies") {
  ScenarioConfig cfg;
  RandomStreams s1(99), s2(99);
  const Topology a = build_topology(cfg, s1);
  const Topology b = build_topology(cfg, s2);
  REQUIRE(a.num_tus() == b.num_tus());
  for (int i = 0; i < a.num_tus(); ++i)
    CHECK(a.tus[i].initial_offset_m == b.tus[i].initial_offset_m);
}

TEST_CASE("zero terminals is a valid topology") {
  ScenarioConfig cfg;
  cfg.tus_per_mis = {0, 0, 0, 0, 0};
  RandomStreams streams(1);
  const Topology topo = build_topology(cfg, streams);
  CHECK(topo.num_tus() == 0);
  CHECK(topo.by_mis.size() == 5);
}
