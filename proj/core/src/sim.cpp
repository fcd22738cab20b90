#include "msim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace msim {

namespace {

// Truncated Poisson on {0..g_max} with mean parameter g_max/2, sampled by
// inverse CDF on the renormalized pmf.
std::int64_t truncated_poisson_draw(std::int64_t g_max, RngStream& rng) {
  const double lambda = static_cast<double>(g_max) / 2.0;
  double p = std::exp(-lambda);
  double norm = p;
  std::vector<double> pmf(static_cast<size_t>(g_max) + 1);
  pmf[0] = p;
  for (std::int64_t k = 1; k <= g_max; ++k) {
    p *= lambda / static_cast<double>(k);
    pmf[static_cast<size_t>(k)] = p;
    norm += p;
  }
  const double u = rng.next_double() * norm;
  double acc = 0.0;
  for (std::int64_t k = 0; k <= g_max; ++k) {
    acc += pmf[static_cast<size_t>(k)];
    if (u < acc) return k;
  }
  return g_max;
}

// Proportionally shrink the compute shares and migration counts of one
// MIS's decision until its slot energy fits inside the available battery.
// Returns true when any shrinking was needed.
bool clamp_to_battery(Decision& d, double battery, double backhaul_rate_bps,
                      const ScenarioConfig& cfg) {
  EnergyCost cost = slot_energy_cost(d, backhaul_rate_bps, cfg);
  if (cost.c_total <= battery) return false;

  // c_com scales with s^3 when every share is scaled by s
  double avail = battery - cost.c_bas - cost.c_tra;
  if (cost.c_com > 0.0) {
    double s = 0.0;
    if (avail > 0.0 && cost.c_com > avail)
      s = std::cbrt(avail / cost.c_com);
    else if (avail >= cost.c_com)
      s = 1.0;
    for (auto& fi : d.f) fi *= s;
    cost = slot_energy_cost(d, backhaul_rate_bps, cfg);
  }
  if (cost.c_total <= battery) return true;

  // still over: shed migrations, largest first, until c_tra fits
  avail = battery - cost.c_bas - cost.c_com;
  std::int64_t migrated = std::accumulate(d.m.begin(), d.m.end(),
                                          std::int64_t{0});
  if (migrated > 0 && backhaul_rate_bps > 0.0) {
    const double j_per_task = cfg.mis_tx_power_w * cfg.task_bits /
                              backhaul_rate_bps;
    std::int64_t allowed =
        avail > 0.0
            ? static_cast<std::int64_t>(std::floor(avail / j_per_task))
            : 0;
    allowed = std::min(allowed, migrated);
    std::int64_t excess = migrated - allowed;
    while (excess > 0) {
      auto it = std::max_element(d.m.begin(), d.m.end());
      const std::int64_t cut = std::min(excess, *it);
      *it -= cut;
      excess -= cut;
      if (cut == 0) break;
    }
  }
  return true;
}

}  // namespace

std::vector<std::int64_t> sample_arrivals(const ScenarioConfig& cfg,
                                          const Topology& topo,
                                          RandomStreams& streams) {
  std::vector<std::int64_t> g(topo.num_tus(), 0);
  for (int i = 0; i < topo.num_tus(); ++i) {
    auto& rng = streams.stream(Phenomenon::Arrivals,
                               static_cast<std::uint32_t>(i));
    if (cfg.arrival_model == ArrivalModel::Uniform) {
      g[i] = rng.uniform_int(0, cfg.max_arrivals);
    } else {
      g[i] = truncated_poisson_draw(cfg.max_arrivals, rng);
    }
  }
  return g;
}

std::vector<double> sample_harvest(const ScenarioConfig& cfg,
                                   RandomStreams& streams) {
  std::vector<double> e(cfg.num_mis, 0.0);
  for (int k = 0; k < cfg.num_mis; ++k) {
    auto& rng =
        streams.stream(Phenomenon::Harvest, static_cast<std::uint32_t>(k));
    e[k] = rng.uniform(0.0, cfg.max_charge_j_per_slot);
  }
  return e;
}

double mean_throughput(const std::vector<SlotRecord>& records) {
  if (records.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : records) sum += r.throughput_bps;
  return sum / static_cast<double>(records.size());
}

RunSummary run_simulation(const ScenarioConfig& cfg, SlotSink* sink) {
  cfg.validate();
  RandomStreams streams(cfg.seed);
  const Topology topo = build_topology(cfg, streams);
  const int num_tus = topo.num_tus();
  const int K = cfg.num_mis;
  auto scheduler = make_scheduler(cfg.policy);

  NetworkState state = NetworkState::initial(num_tus, K);
  std::vector<Decision> prev_activity(K);  // empty decisions: no interference
  for (int k = 0; k < K; ++k)
    prev_activity[k].resize(static_cast<int>(topo.by_mis[k].size()),
                            cfg.subchannels_per_mis);

  const std::int64_t T = cfg.horizon_slots;
  const std::int64_t warm_start =
      static_cast<std::int64_t>(std::llround(cfg.warmup_fraction *
                                             static_cast<double>(T)));

  RunSummary sum;
  sum.slots = T;
  sum.avg_c_total.assign(K, 0.0);
  sum.avg_battery.assign(K, 0.0);
  std::vector<double> tu_queue_acc(num_tus, 0.0), tu_arr_acc(num_tus, 0.0);
  std::vector<double> tu_queue_warm(num_tus, 0.0), tu_arr_warm(num_tus, 0.0);
  double thr_acc = 0.0, thr_warm = 0.0, queue_acc = 0.0, queue_warm = 0.0;
  double energy_acc = 0.0;
  std::int64_t clamp_slots = 0, clamp_slots_last_half = 0;
  std::int64_t delivered = 0;

  SlotRecord rec;
  for (std::int64_t t = 0; t < T; ++t) {
    state.slot = t;
    const ChannelRealization chan = sample_channel(topo, cfg, t, streams);
    const auto arrivals = sample_arrivals(cfg, topo, streams);
    const auto harvest = sample_harvest(cfg, streams);

    // interference estimate from the previous slot's activity
    const auto gamma_est = interference_map(prev_activity, topo, chan, cfg);
    std::vector<double> backhaul(K);
    for (int k = 0; k < K; ++k)
      backhaul[k] = backhaul_rate(cfg, chan.beta_backhaul[k]);

    std::vector<Decision> decisions(K);
    for (int k = 0; k < K; ++k)
      decisions[k] = scheduler->decide(k, state, chan, gamma_est[k],
                                       backhaul[k], arrivals, cfg, topo);

    // hard per-slot energy budget: never spend more than the battery holds
    int clamped = 0;
    for (int k = 0; k < K; ++k)
      if (clamp_to_battery(decisions[k], state.battery[k], backhaul[k], cfg))
        ++clamped;

    // realized interference and rates under the decisions actually taken
    const auto gamma_real = interference_map(decisions, topo, chan, cfg);

    SlotOutcome out;
    out.theta.assign(num_tus, 0);
    out.theta_eff.assign(num_tus, 0);
    out.mu.assign(num_tus, 0);
    out.m.assign(num_tus, 0);
    out.arrivals = arrivals;
    out.harvest = harvest;
    out.c_bas.assign(K, 0.0);
    out.c_tra.assign(K, 0.0);
    out.c_com.assign(K, 0.0);
    out.c_total.assign(K, 0.0);

    std::vector<double> rates(num_tus, 0.0);
    double slot_throughput = 0.0;
    for (int k = 0; k < K; ++k) {
      auto& d = decisions[k];
      const auto& tus = topo.by_mis[k];
      for (size_t li = 0; li < tus.size(); ++li) {
        const int tu = tus[li];
        const double r = uplink_rate(d.y[li] != 0, d.z[li], tu, k, chan,
                                     gamma_real[k], cfg);
        // an idle TU occupies no air time; count rate only when backlogged
        rates[tu] = state.q_tu[tu] > 0 ? r : 0.0;
        slot_throughput += rates[tu];
        std::int64_t theta =
            std::min(offload_capacity(r, cfg), cfg.theta_cap_tasks);
        out.theta[tu] = theta;
        out.theta_eff[tu] = std::min(theta, state.q_tu[tu]);
        out.mu[tu] = processing_capacity(d.f[li], cfg);
        // realized migrations may not exceed what this slot could take in
        d.m[li] = std::min(d.m[li],
                           std::max<std::int64_t>(0, theta - out.mu[tu]));
        out.m[tu] = d.m[li];
      }
      const EnergyCost cost = slot_energy_cost(d, backhaul[k], cfg);
      out.c_bas[k] = cost.c_bas;
      out.c_tra[k] = cost.c_tra;
      out.c_com[k] = cost.c_com;
      out.c_total[k] = cost.c_total;
    }

    // drained tasks: processed locally first, migrated tasks make up the rest
    std::int64_t proc = 0, mig = 0;
    for (int i = 0; i < num_tus; ++i) {
      const std::int64_t drain =
          state.q_mis[i] -
          std::max<std::int64_t>(state.q_mis[i] - out.mu[i] - out.m[i], 0);
      const std::int64_t p = std::min(drain, out.mu[i]);
      proc += p;
      mig += drain - p;
    }

    const bool want_record = sink != nullptr;
    if (want_record) {
      rec = SlotRecord{};
      rec.slot = t;
      rec.q_tu_pre = state.q_tu;
      rec.q_mis_pre = state.q_mis;
      rec.z_pre = state.z_virtual;
      rec.battery_pre = state.battery;
    }

    const std::int64_t dropped = step_task_queues(state, out, cfg);
    for (int k = 0; k < K; ++k) {
      const double battery_pre = state.battery[k];
      state.z_virtual[k] =
          step_virtual_queue(state.z_virtual[k], out.c_total[k], battery_pre);
      state.battery[k] =
          step_energy(battery_pre, harvest[k], out.c_total[k], cfg);
      sum.avg_c_total[k] += out.c_total[k];
      sum.avg_battery[k] += battery_pre;
      energy_acc += out.c_total[k];
    }

    double total_queue = 0.0;
    for (int i = 0; i < num_tus; ++i) {
      const double q = static_cast<double>(state.q_tu[i] + state.q_mis[i]);
      total_queue += q;
      tu_queue_acc[i] += q;
      tu_arr_acc[i] += static_cast<double>(arrivals[i]);
      if (t >= warm_start) {
        tu_queue_warm[i] += q;
        tu_arr_warm[i] += static_cast<double>(arrivals[i]);
      }
      sum.total_arrivals += arrivals[i];
    }
    thr_acc += slot_throughput;
    queue_acc += total_queue;
    if (t >= warm_start) {
      thr_warm += slot_throughput;
      queue_warm += total_queue;
    }
    if (clamped > 0) {
      ++clamp_slots;
      if (t >= T / 2) ++clamp_slots_last_half;
    }
    sum.total_processed += proc;
    sum.total_migrated += mig;
    sum.total_dropped += dropped;
    delivered += proc + mig;

    if (want_record) {
      rec.tu_rates = rates;
      rec.throughput_bps = slot_throughput;
      rec.q_tu = state.q_tu;
      rec.q_mis = state.q_mis;
      rec.z_virtual = state.z_virtual;
      rec.battery = state.battery;
      rec.c_total = out.c_total;
      rec.harvest = harvest;
      rec.theta = out.theta;
      rec.mu = out.mu;
      rec.m = out.m;
      rec.arrivals = arrivals;
      rec.clamped_mis = clamped;
      rec.processed = proc;
      rec.migrated = mig;
      rec.dropped = dropped;
      sink->on_slot(rec);
    }

    prev_activity = std::move(decisions);
  }

  const double dT = static_cast<double>(std::max<std::int64_t>(T, 1));
  const double dWarm =
      static_cast<double>(std::max<std::int64_t>(T - warm_start, 1));
  sum.avg_throughput_bps = thr_acc / dT;
  sum.avg_throughput_warm_bps = thr_warm / dWarm;
  sum.goodput_bps =
      static_cast<double>(delivered) * cfg.task_bits / (dT * cfg.slot_seconds);
  sum.avg_queue_total = queue_acc / dT;
  sum.avg_queue_warm = queue_warm / dWarm;
  sum.avg_energy_j = K > 0 ? energy_acc / (dT * static_cast<double>(K)) : 0.0;
  sum.violation_rate = static_cast<double>(clamp_slots) / dT;
  sum.violation_rate_last_half =
      static_cast<double>(clamp_slots_last_half) /
      static_cast<double>(std::max<std::int64_t>(T - T / 2, 1));
  sum.final_z_over_t.resize(K);
  for (int k = 0; k < K; ++k) {
    sum.final_z_over_t[k] = state.z_virtual[k] / dT;
    sum.avg_c_total[k] /= dT;
    sum.avg_battery[k] /= dT;
  }

  std::vector<double> mq(num_tus), ma(num_tus), mqw(num_tus), maw(num_tus);
  for (int i = 0; i < num_tus; ++i) {
    mq[i] = tu_queue_acc[i] / dT;
    ma[i] = tu_arr_acc[i] / dT;
    mqw[i] = tu_queue_warm[i] / dWarm;
    maw[i] = tu_arr_warm[i] / dWarm;
  }
  sum.tu_latency_slots = average_latency(mq, ma, cfg).tu_latency_slots;
  sum.tu_latency_warm_slots = average_latency(mqw, maw, cfg).tu_latency_slots;
  auto mean_defined = [](const std::vector<std::optional<double>>& v)
      -> std::optional<double> {
    double s = 0.0;
    int n = 0;
    for (const auto& x : v)
      if (x) {
        s += *x;
        ++n;
      }
    if (n == 0) return std::nullopt;
    return s / static_cast<double>(n);
  };
  sum.mean_latency_slots = mean_defined(sum.tu_latency_slots);
  sum.mean_latency_warm_slots = mean_defined(sum.tu_latency_warm_slots);
  return sum;
}

}  // namespace msim
