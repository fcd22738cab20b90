#include <benchmark/benchmark.h>

#include "msim/jcora.hpp"
#include "msim/sim.hpp"

using namespace msim;

namespace {

// One-station scenario with a configurable subchannel count; queues are
// preloaded so every decision branch does real work.
struct Setup {
  ScenarioConfig cfg;
  Topology topo;
  ChannelRealization chan;
  NetworkState state;
  std::vector<double> gamma;

  Setup(int subchannels, int tus) {
    cfg.num_mis = 1;
    cfg.subchannels_per_mis = subchannels;
    cfg.tus_per_mis = {tus};
    RandomStreams streams(99);
    topo = build_topology(cfg, streams);
    chan = sample_channel(topo, cfg, 0, streams);
    state = NetworkState::initial(tus, 1);
    RngStream rng(7);
    for (auto& q : state.q_tu) q = rng.uniform_int(100, 2000);
    for (auto& q : state.q_mis) q = rng.uniform_int(50, 500);
    state.z_virtual[0] = 5.0;
    gamma.assign(static_cast<size_t>(subchannels), 1e-13);
  }
};

void bm_schedule_slot(benchmark::State& bench) {
  Setup s(static_cast<int>(bench.range(0)), static_cast<int>(bench.range(1)));
  for (auto _ : bench) {
    benchmark::DoNotOptimize(jcora_schedule_slot(
        0, s.state, s.chan, s.gamma, 5e7, s.cfg, s.topo));
  }
  bench.SetComplexityN(bench.range(0) * bench.range(1));
}
BENCHMARK(bm_schedule_slot)
    ->ArgsProduct({{16, 32, 64, 128, 256}, {4, 8}})
    ->Complexity(benchmark::oN);

void bm_channel_sample(benchmark::State& bench) {
  ScenarioConfig cfg;  // default 5-station, 30-terminal layout
  RandomStreams streams(3);
  const Topology topo = build_topology(cfg, streams);
  std::int64_t slot = 0;
  for (auto _ : bench) {
    benchmark::DoNotOptimize(sample_channel(topo, cfg, slot++, streams));
  }
}
BENCHMARK(bm_channel_sample);

void bm_simulated_slot(benchmark::State& bench) {
  // end-to-end per-slot cost of the default scenario
  ScenarioConfig cfg;
  cfg.horizon_slots = 200;
  for (auto _ : bench) {
    benchmark::DoNotOptimize(run_simulation(cfg));
  }
  bench.counters["slots_per_iter"] = 200;
}
BENCHMARK(bm_simulated_slot)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
