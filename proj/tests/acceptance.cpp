// Acceptance gate: ten end-to-end properties of the scheduler and simulator.
// Each criterion prints exactly one PASS/FAIL line; the process exits 0 only
// when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "msim/channel.hpp"
#include "msim/jcora.hpp"
#include "msim/oracle.hpp"
#include "msim/queueing.hpp"
#include "msim/sim.hpp"

using namespace msim;

namespace {

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

std::vector<double> midranks(const std::vector<double>& v) {
  const size_t n = v.size();
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return v[a] < v[b]; });
  std::vector<double> r(n, 0.0);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double rank =
        0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
    for (size_t t = i; t <= j; ++t) r[idx[t]] = rank;
    i = j + 1;
  }
  return r;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (!all_finite(x) || !all_finite(y))
    return std::numeric_limits<double>::quiet_NaN();
  return pearson(midranks(x), midranks(y));
}

struct Fit {
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

Fit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  Fit f;
  if (sxx <= 0.0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double warm_latency(const RunSummary& s) {
  return s.mean_latency_warm_slots
             ? *s.mean_latency_warm_slots
             : std::numeric_limits<double>::quiet_NaN();
}

int failures = 0;

void report(int n, const std::string& desc, bool pass,
            const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << n << ": " << desc;
  if (!detail.empty()) std::cout << " [" << detail << "]";
  std::cout << '\n' << std::flush;
  if (!pass) ++failures;
}

// ---------------------------------------------------------------------------

void criterion_1() {
  int bad = -1;
  std::string why;
  for (std::uint32_t i = 0; i < 100; ++i) {
    const SmallInstance inst = random_instance(1, i);
    const CertifyReport rep = certify_instance(inst);
    if (!rep.ok()) {
      bad = static_cast<int>(i);
      why = rep.detail;
      break;
    }
  }
  std::ostringstream d;
  if (bad >= 0)
    d << "instance " << bad << ": " << why;
  else
    d << "100/100 instances certified";
  report(1,
         "closed-form slot decisions match brute-force optima on random small "
         "instances",
         bad < 0, d.str());
}

void criterion_2() {
  ScenarioConfig cfg;
  cfg.literal_mis_queue = true;
  cfg.horizon_slots = 10000;
  const double C = drift_bound_constant(cfg);

  struct DriftSink final : SlotSink {
    double C = 0.0;
    std::int64_t violations = 0;
    double worst_excess = -1e300;
    void on_slot(const SlotRecord& r) override {
      double dl = 0.0, cross = 0.0;
      for (size_t i = 0; i < r.q_tu.size(); ++i) {
        const double q0 = static_cast<double>(r.q_tu_pre[i]);
        const double q1 = static_cast<double>(r.q_tu[i]);
        const double p0 = static_cast<double>(r.q_mis_pre[i]);
        const double p1 = static_cast<double>(r.q_mis[i]);
        dl += 0.5 * (q1 * q1 - q0 * q0) + 0.5 * (p1 * p1 - p0 * p0);
        const double g = static_cast<double>(r.arrivals[i]);
        const double th = static_cast<double>(r.theta[i]);
        const double drain = static_cast<double>(r.mu[i] + r.m[i]);
        cross += q0 * (g - th) + p0 * (th - drain);
      }
      for (size_t k = 0; k < r.z_pre.size(); ++k) {
        dl += 0.5 * (r.z_virtual[k] * r.z_virtual[k] -
                     r.z_pre[k] * r.z_pre[k]);
        cross += r.z_pre[k] * (r.c_total[k] - r.battery_pre[k]);
      }
      const double excess = dl - cross - C;
      worst_excess = std::max(worst_excess, excess);
      const double tol = 1e-6 * (1.0 + std::abs(dl) + std::abs(cross) + C);
      if (excess > tol) ++violations;
    }
  } sink;
  sink.C = C;
  run_simulation(cfg, &sink);
  std::ostringstream d;
  d << "violations=" << sink.violations << " over " << cfg.horizon_slots
    << " slots, worst excess over bound=" << sink.worst_excess;
  report(2,
         "every realized per-slot Lyapunov increment respects the analytic "
         "drift bound (literal queue mode)",
         sink.violations == 0, d.str());
}

RunSummary long_default_run() {
  ScenarioConfig cfg;
  cfg.horizon_slots = 100000;
  return run_simulation(cfg);
}

void criterion_3(const RunSummary& s) {
  double max_z = 0.0, worst_gap = -1e300;
  for (size_t k = 0; k < s.final_z_over_t.size(); ++k) {
    max_z = std::max(max_z, s.final_z_over_t[k]);
    worst_gap = std::max(worst_gap, s.avg_c_total[k] - s.avg_battery[k]);
  }
  const bool pass = max_z < 0.01 && worst_gap <= 1e-9;
  std::ostringstream d;
  d << "max Z(T)/T=" << max_z << " J/slot, max(avg cost - avg battery)="
    << worst_gap << " J";
  report(3,
         "virtual energy queues vanish as Z(T)/T and average spend stays "
         "within the average battery level over 1e5 slots",
         pass, d.str());
}

void criterion_4() {
  const std::vector<double> vs = {0.01, 0.05, 0.1, 0.5, 1.0};
  std::vector<double> mean_thr, mean_q;
  for (double v : vs) {
    std::vector<double> thr, q;
    for (int seed = 1; seed <= 10; ++seed) {
      // single station: with several stations the realized interference rises
      // as V pushes service towards high-gain terminals, which masks the
      // throughput side of the tradeoff
      ScenarioConfig cfg;
      cfg.num_mis = 1;
      cfg.tus_per_mis = {6};
      cfg.max_arrivals = 40;  // stable load so queues equilibrate
      cfg.arrival_model = ArrivalModel::TruncatedPoisson;
      cfg.horizon_slots = 3000;
      cfg.control_v = v;
      cfg.seed = static_cast<std::uint64_t>(seed);
      const RunSummary s = run_simulation(cfg);
      thr.push_back(s.avg_throughput_warm_bps);
      q.push_back(s.avg_queue_warm);
    }
    mean_thr.push_back(mean_of(thr));
    mean_q.push_back(mean_of(q));
  }
  const double rho_thr = spearman(vs, mean_thr);
  const double rho_q = spearman(vs, mean_q);
  const Fit fit = linear_fit(vs, mean_q);
  const bool pass =
      rho_thr > 0.9 && rho_q > 0.9 && fit.slope > 0.0 && fit.r2 > 0.8;
  std::ostringstream d;
  d << "throughput rho=" << rho_thr << ", queue rho=" << rho_q
    << ", queue-vs-V slope=" << fit.slope << ", R^2=" << fit.r2;
  report(4,
         "throughput and queue length both grow with the control weight V "
         "(5-point sweep, 10 seeds)",
         pass, d.str());
}

void criterion_5() {
  ScenarioConfig cfg;
  cfg.max_arrivals = 40;  // mean load well under the service capacity
  cfg.horizon_slots = 100000;

  struct RunningSink final : SlotSink {
    double acc = 0.0;
    std::int64_t slots = 0;
    double avg_at_90k = 0.0, avg_at_100k = 0.0;
    void on_slot(const SlotRecord& r) override {
      double q = 0.0;
      for (auto x : r.q_tu) q += static_cast<double>(x);
      for (auto x : r.q_mis) q += static_cast<double>(x);
      acc += q;
      ++slots;
      if (slots == 90000) avg_at_90k = acc / 90000.0;
      if (slots == 100000) avg_at_100k = acc / 100000.0;
    }
  } sink;
  run_simulation(cfg, &sink);
  const double rel = std::abs(sink.avg_at_100k - sink.avg_at_90k) /
                     std::max(sink.avg_at_100k, 1e-12);
  std::ostringstream d;
  d << "running avg queue " << sink.avg_at_90k << " -> " << sink.avg_at_100k
    << ", change=" << rel * 100.0 << "%";
  report(5,
         "running time-average total queue converges under feasible load "
         "(<2% change over the final window)",
         rel < 0.02, d.str());
}

void criterion_6() {
  const std::vector<int> tu_counts = {5, 10, 15, 20, 25, 30};
  const std::vector<Policy> policies = {Policy::Jcora, Policy::Fra,
                                        Policy::Lra, Policy::Pra, Policy::Tra};
  bool means_ok = true;
  int thr_pairs = 0, thr_wins = 0, lat_pairs = 0, lat_wins = 0;
  std::ostringstream d;
  for (int total : tu_counts) {
    // per policy: throughput and latency for each seed
    std::vector<std::vector<double>> thr(policies.size()),
        lat(policies.size());
    for (int seed = 1; seed <= 10; ++seed) {
      for (size_t p = 0; p < policies.size(); ++p) {
        // single station, moderate stochastic load: isolates the scheduling
        // policies from cross-station interference effects
        ScenarioConfig cfg;
        cfg.num_mis = 1;
        cfg.tus_per_mis = {total};
        cfg.max_arrivals = 30;
        cfg.arrival_model = ArrivalModel::TruncatedPoisson;
        cfg.horizon_slots = 1500;
        cfg.seed = static_cast<std::uint64_t>(seed);
        cfg.policy = policies[p];
        const RunSummary s = run_simulation(cfg);
        thr[p].push_back(s.avg_throughput_warm_bps);
        lat[p].push_back(warm_latency(s));
      }
      for (size_t p = 1; p < policies.size(); ++p) {
        ++thr_pairs;
        if (thr[0].back() >= thr[p].back()) ++thr_wins;
      }
      ++lat_pairs;  // latency comparison is against the FIFO baseline
      if (lat[0].back() <= lat[1].back()) ++lat_wins;
    }
    const double jcora_thr = mean_of(thr[0]);
    for (size_t p = 1; p < policies.size(); ++p)
      if (!(jcora_thr >= mean_of(thr[p]))) {
        means_ok = false;
        d << "thr mean lost to " << to_string(policies[p]) << " at "
          << total << " TUs (" << jcora_thr << " vs " << mean_of(thr[p])
          << "); ";
      }
    if (!(mean_of(lat[0]) <= mean_of(lat[1]))) {
      means_ok = false;
      d << "latency mean lost to fra at " << total << " TUs; ";
    }
  }
  const double thr_frac = static_cast<double>(thr_wins) / thr_pairs;
  const double lat_frac = static_cast<double>(lat_wins) / lat_pairs;
  const bool pass = means_ok && thr_frac >= 0.9 && lat_frac >= 0.9;
  d << "paired throughput wins " << thr_wins << "/" << thr_pairs
    << ", paired latency wins vs fra " << lat_wins << "/" << lat_pairs;
  report(6,
         "drift-based policy beats every baseline on mean throughput and the "
         "FIFO baseline on latency across network sizes",
         pass, d.str());
}

void criterion_7() {
  // energy-bound regime: one overloaded terminal, no backhaul relief, and a
  // compute cost steep enough that harvesting stays the binding resource
  // across the whole sweep; more harvest -> faster local compute -> more
  // offloading headroom (throughput) and slower backlog growth (latency)
  const std::vector<double> caps = {1.0, 2.0, 5.0, 10.0};
  std::vector<double> mean_thr, mean_lat;
  for (double cap : caps) {
    std::vector<double> thr, lat;
    for (int seed = 1; seed <= 10; ++seed) {
      ScenarioConfig cfg;
      cfg.num_mis = 1;
      cfg.tus_per_mis = {1};
      cfg.backhaul_ratio = 0.0;
      cfg.base_power_j_per_slot = 0.3;
      cfg.power_coeff = 2.4e-25;
      cfg.max_arrivals = 300;
      cfg.arrival_model = ArrivalModel::TruncatedPoisson;
      cfg.max_charge_j_per_slot = cap;
      cfg.horizon_slots = 2500;
      cfg.seed = static_cast<std::uint64_t>(seed);
      const RunSummary s = run_simulation(cfg);
      thr.push_back(s.avg_throughput_warm_bps);
      lat.push_back(warm_latency(s));
    }
    mean_thr.push_back(mean_of(thr));
    mean_lat.push_back(mean_of(lat));
  }
  const double rho_thr = spearman(caps, mean_thr);
  const double rho_lat = spearman(caps, mean_lat);
  const bool pass = rho_thr > 0.8 && rho_lat < -0.8;
  std::ostringstream d;
  d << "throughput rho=" << rho_thr << ", latency rho=" << rho_lat
    << "; means thr={";
  for (double m : mean_thr) d << m << " ";
  d << "} lat={";
  for (double m : mean_lat) d << m << " ";
  d << "}";
  report(7,
         "throughput rises and latency falls with the energy harvesting cap",
         pass, d.str());
}

void criterion_8(const RunSummary& s) {
  std::ostringstream d;
  d << "clamp rate over final half=" << s.violation_rate_last_half * 100.0
    << "%";
  report(8,
         "energy-clamp interventions below 1% of slots over the final half "
         "of a 1e5-slot default run",
         s.violation_rate_last_half < 0.01, d.str());
}

void criterion_9() {
  const std::vector<int> sizes = {16, 32, 64, 128, 256};
  std::vector<double> log_n, log_t;
  double guard = 0.0;  // defeats dead-code elimination
  for (int n : sizes) {
    ScenarioConfig cfg;
    cfg.num_mis = 1;
    cfg.subchannels_per_mis = n;
    cfg.tus_per_mis = {4};
    RandomStreams streams(99);
    const Topology topo = build_topology(cfg, streams);
    const ChannelRealization chan = sample_channel(topo, cfg, 0, streams);
    NetworkState st = NetworkState::initial(4, 1);
    st.q_tu = {1000, 800, 600, 400};
    st.q_mis = {100, 200, 50, 75};
    st.z_virtual = {5.0};
    const std::vector<double> gamma(static_cast<size_t>(n), 1e-13);

    const int reps = std::max(64, 51200 / n);
    double best = 1e300;
    for (int trial = 0; trial < 5; ++trial) {
      const auto t0 = std::chrono::steady_clock::now();
      for (int r = 0; r < reps; ++r) {
        const Decision dec =
            jcora_schedule_slot(0, st, chan, gamma, 5e7, cfg, topo);
        guard += dec.f[0];
      }
      const auto t1 = std::chrono::steady_clock::now();
      const double per_call =
          std::chrono::duration<double>(t1 - t0).count() / reps;
      best = std::min(best, per_call);
    }
    log_n.push_back(std::log(static_cast<double>(n)));
    log_t.push_back(std::log(best));
  }
  const Fit fit = linear_fit(log_n, log_t);
  const bool pass = fit.slope > 0.75 && fit.slope < 1.25;
  std::ostringstream d;
  d << "log-log slope=" << fit.slope << " (R^2=" << fit.r2
    << ", guard=" << (guard >= 0.0) << ")";
  report(9,
         "per-slot scheduling time grows linearly with subchannel count "
         "(slope 1.0 +/- 0.25 over a 16x span)",
         pass, d.str());
}

void criterion_10() {
  const ScenarioConfig cfg;
  int bad = 0;
  std::ostringstream d;
  auto near = [&](const std::string& name, double actual, double expected) {
    const double tol = 1e-9 * std::max(1.0, std::abs(expected));
    if (std::abs(actual - expected) > tol) {
      ++bad;
      d << name << "=" << actual << " want " << expected << "; ";
    }
  };
  auto truth = [&](const std::string& name, bool value) {
    if (!value) {
      ++bad;
      d << name << " is false; ";
    }
  };

  const double fs = 0.125 / (4.0 * M_PI * 750.0);
  near("two_ray_gain_750m", large_scale_gain(0.125, 750.0, 10.0, 50.0),
       fs * fs * 0.75);
  near("distance_edge", tu_mis_distance_unwrapped(0.0, 0.0, 0.0, 400.0, 50.0),
       std::sqrt(50.0 * 50.0 + 200.0 * 200.0));
  near("offload_cap_10mbps",
       static_cast<double>(offload_capacity(1e7, cfg)), 500.0);
  near("proc_cap_full",
       static_cast<double>(processing_capacity(1.0, cfg)), 50.0);
  near("proc_cap_half",
       static_cast<double>(processing_capacity(0.5, cfg)), 25.0);
  near("mu_cap", static_cast<double>(cfg.mu_cap()), 50.0);

  Decision dc;
  dc.resize(1, 1);
  dc.f[0] = 1.0;
  near("compute_energy_full_share", slot_energy_cost(dc, 1e6, cfg).c_com, 5.0);
  dc.f[0] = 0.0;
  dc.m[0] = 10;
  near("migration_energy_10_tasks", slot_energy_cost(dc, 1e6, cfg).c_tra,
       0.01);

  {
    ScenarioConfig c1;
    c1.num_mis = 1;
    c1.subchannels_per_mis = 1;
    c1.tus_per_mis = {1};
    ChannelRealization chan;
    const double sigma2 = c1.noise_watts(c1.subchannel_bandwidth_hz);
    chan.beta = {{1023.0 * sigma2 / c1.tu_tx_power_w}};
    chan.fading2 = {{1.0}};
    near("uplink_rate_snr_1023",
         uplink_rate(true, {1}, 0, 0, chan, {0.0}, c1), 1e7);
  }
  {
    const double bw = cfg.backhaul_ratio * cfg.cbs_bandwidth_hz;
    const double sigma2 = cfg.noise_watts(bw);
    near("backhaul_rate_snr_255",
         backhaul_rate(cfg, 255.0 * sigma2 / cfg.mis_tx_power_w), 8e7);
  }
  {
    ScenarioConfig c1;
    c1.num_mis = 1;
    c1.tus_per_mis = {1};
    near("drift_bound_constant_1x1", drift_bound_constant(c1), 341650.0);
  }
  near("subchannel_weight_example", subchannel_weight(0.0, 100.0, 1e6, cfg),
       -9.5e4);
  truth("offload_threshold_high_v", offload_decision(0, 100, 1e6, cfg));
  {
    ScenarioConfig low = cfg;
    low.control_v = 0.001;
    truth("keep_local_low_v", !offload_decision(0, 100, 1e6, low));
  }
  {
    const auto one = allocate_compute({3}, 10.0, cfg);
    near("compute_share_saturated", one[0], 1.0);
    const auto two = allocate_compute({3, 3}, 10.0, cfg);
    near("compute_share_fallback_a", two[0], 0.5);
    near("compute_share_fallback_b", two[1], 0.5);
    const auto interior = allocate_compute({3}, 1000.0, cfg);
    near("compute_share_interior", interior[0], std::sqrt(3.0 / 300.0));
  }
  near("virtual_queue_step", step_virtual_queue(3.0, 5.0, 1.0), 7.0);
  near("battery_step", step_energy(10.0, 2.0, 5.0, cfg), 7.0);
  {
    const auto lat = average_latency({100.0}, {150.0}, cfg);
    near("little_law_example", lat.tu_latency_slots[0].value_or(-1.0),
         2.0 / 3.0);
  }
  std::ostringstream head;
  head << (bad == 0 ? "all frozen values reproduced" : d.str());
  report(10, "frozen arithmetic examples reproduce to 1e-9 relative",
         bad == 0, head.str());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  const RunSummary long_run = long_default_run();
  criterion_3(long_run);
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8(long_run);
  criterion_9();
  criterion_10();
  std::cout << (failures == 0 ? "ALL CRITERIA PASSED"
                              : "SOME CRITERIA FAILED")
            << " (" << (10 - failures) << "/10)\n";
  return failures == 0 ? 0 : 1;
}
