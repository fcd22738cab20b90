#include "msim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace msim {

namespace {

constexpr double kRelTol = 1e-9;

// fading-free rate table [tu][subchannel] under the instance's interference
std::vector<std::vector<double>> rate_table(const SmallInstance& inst) {
  const int num_tus = inst.topo.num_tus();
  std::vector<std::vector<double>> r(
      num_tus, std::vector<double>(inst.cfg.subchannels_per_mis, 0.0));
  for (int k = 0; k < inst.cfg.num_mis; ++k) {
    for (int tu : inst.topo.by_mis[k]) {
      for (int n = 0; n < inst.cfg.subchannels_per_mis; ++n) {
        r[tu][n] =
            fading_free_subchannel_rate(tu, inst.chan, inst.gamma[k][n],
                                        inst.cfg, k);
      }
    }
  }
  return r;
}

double continuous_mu(double f, const ScenarioConfig& cfg) {
  return f * cfg.cpu_hz * cfg.slot_seconds / (cfg.cycles_per_bit * cfg.task_bits);
}

// objective contribution of one MIS's decision; theta and mu continuous
double mis_objective(const SmallInstance& inst, int k, const Decision& d,
                     const std::vector<std::vector<double>>& rates) {
  const ScenarioConfig& cfg = inst.cfg;
  const double z_k = inst.state.z_virtual[k];
  double obj = z_k * cfg.base_power_j_per_slot;
  std::int64_t migrated = 0;
  const auto& tus = inst.topo.by_mis[k];
  for (size_t i = 0; i < tus.size(); ++i) {
    const int tu = tus[i];
    double r = 0.0;
    if (d.y[i]) {
      for (int n = 0; n < cfg.subchannels_per_mis; ++n)
        if (d.z[i][n]) r += rates[tu][n];
    }
    const double theta_c = r * cfg.slot_seconds / cfg.task_bits;
    obj -= cfg.control_v * r;
    obj += static_cast<double>(inst.state.q_mis[tu] - inst.state.q_tu[tu]) *
           theta_c;
    obj -= static_cast<double>(inst.state.q_mis[tu]) *
           (continuous_mu(d.f[i], cfg) + static_cast<double>(d.m[i]));
    const double hz = d.f[i] * cfg.cpu_hz;
    obj += z_k * cfg.power_coeff * hz * hz * hz * cfg.slot_seconds;
    migrated += d.m[i];
  }
  if (migrated > 0) {
    if (inst.backhaul_bps[k] <= 0.0)
      throw std::invalid_argument("migration over zero-rate backhaul");
    obj += z_k * cfg.mis_tx_power_w * static_cast<double>(migrated) *
           cfg.task_bits / inst.backhaul_bps[k];
  }
  return obj;
}

// integer theta/mu used by the migration bound, same formulas the scheduler
// applies
void decision_caps(const SmallInstance& inst, int k, const Decision& d,
                   const std::vector<std::vector<double>>& rates,
                   std::vector<std::int64_t>& theta,
                   std::vector<std::int64_t>& mu) {
  const auto& tus = inst.topo.by_mis[k];
  theta.assign(tus.size(), 0);
  mu.assign(tus.size(), 0);
  for (size_t i = 0; i < tus.size(); ++i) {
    double r = 0.0;
    if (d.y[i]) {
      for (int n = 0; n < inst.cfg.subchannels_per_mis; ++n)
        if (d.z[i][n]) r += rates[tus[i]][n];
    }
    theta[i] = std::min(offload_capacity(r, inst.cfg), inst.cfg.theta_cap_tasks);
    mu[i] = processing_capacity(d.f[i], inst.cfg);
  }
}

// all compute-share vectors on the coarse simplex grid {0, 1/s, ..., 1},
// sum <= 1
void simplex_grid(int dims, int steps, std::vector<double>& cur,
                  std::vector<std::vector<double>>& out, int pos, int left) {
  if (pos == dims) {
    out.push_back(cur);
    return;
  }
  for (int a = 0; a <= left; ++a) {
    cur[pos] = static_cast<double>(a) / static_cast<double>(steps);
    simplex_grid(dims, steps, cur, out, pos + 1, left - a);
  }
}

double f_objective(const SmallInstance& inst, int k,
                   const std::vector<double>& f) {
  const ScenarioConfig& cfg = inst.cfg;
  const double z_k = inst.state.z_virtual[k];
  const auto& tus = inst.topo.by_mis[k];
  double obj = 0.0;
  for (size_t i = 0; i < tus.size(); ++i) {
    const double hz = f[i] * cfg.cpu_hz;
    obj += z_k * cfg.power_coeff * hz * hz * hz * cfg.slot_seconds;
    obj -= static_cast<double>(inst.state.q_mis[tus[i]]) *
           continuous_mu(f[i], cfg);
  }
  return obj;
}

}  // namespace

double p2_objective(const SmallInstance& inst,
                    const std::vector<Decision>& decisions) {
  const auto rates = rate_table(inst);
  double value = 0.0;
  std::string why;
  for (int k = 0; k < inst.cfg.num_mis; ++k) {
    const Decision& d = decisions[k];
    if (!check_feasible(d, inst.cfg.subchannels_per_mis, &why))
      throw std::invalid_argument("infeasible decision: " + why);
    std::vector<std::int64_t> theta, mu;
    decision_caps(inst, k, d, rates, theta, mu);
    if (!check_migration_bound(d.m, theta, mu, &why))
      throw std::invalid_argument("infeasible migration: " + why);
    value += mis_objective(inst, k, d, rates);
  }
  return value;
}

BruteForceResult brute_force_slot(const SmallInstance& inst,
                                  std::uint64_t budget) {
  const auto rates = rate_table(inst);
  const ScenarioConfig& cfg = inst.cfg;
  BruteForceResult best;
  best.decisions.resize(cfg.num_mis);
  best.value = 0.0;
  std::uint64_t evals = 0;

  for (int k = 0; k < cfg.num_mis; ++k) {
    const auto& tus = inst.topo.by_mis[k];
    const int m_k = static_cast<int>(tus.size());
    const int n_sub = cfg.subchannels_per_mis;
    const double z_k = inst.state.z_virtual[k];

    // compute-share candidates: coarse simplex grid plus the scheduler's own
    std::vector<std::vector<double>> f_cands;
    {
      std::vector<double> cur(m_k, 0.0);
      constexpr int kCoarse = 4;
      simplex_grid(m_k, kCoarse, cur, f_cands, 0, kCoarse);
      std::vector<std::int64_t> q_local(m_k);
      for (int i = 0; i < m_k; ++i) q_local[i] = inst.state.q_mis[tus[i]];
      f_cands.push_back(allocate_compute(q_local, z_k, cfg));
    }

    std::uint64_t assignments = 1;
    for (int n = 0; n < n_sub; ++n) assignments *= static_cast<std::uint64_t>(m_k);

    Decision best_d;
    double best_v = std::numeric_limits<double>::infinity();
    Decision d;
    for (std::uint64_t a = 0; a < assignments; ++a) {
      // decode subchannel -> TU assignment
      std::vector<int> owner(n_sub, 0);
      std::uint64_t code = a;
      for (int n = 0; n < n_sub; ++n) {
        owner[n] = static_cast<int>(code % static_cast<std::uint64_t>(m_k));
        code /= static_cast<std::uint64_t>(m_k);
      }
      for (std::uint32_t ybits = 0; ybits < (1u << m_k); ++ybits) {
        for (const auto& f : f_cands) {
          if (++evals > budget)
            throw std::runtime_error("brute_force_slot: budget exceeded");
          d.resize(m_k, n_sub);
          for (int n = 0; n < n_sub; ++n) d.z[owner[n]][n] = 1;
          for (int i = 0; i < m_k; ++i) d.y[i] = (ybits >> i) & 1u;
          d.f = f;
          // migration is linear per TU: all-or-nothing at the integer cap
          std::vector<std::int64_t> theta, mu;
          decision_caps(inst, k, d, rates, theta, mu);
          for (int i = 0; i < m_k; ++i) {
            d.m[i] = migration_decision(z_k, inst.state.q_mis[tus[i]],
                                        inst.backhaul_bps[k], theta[i], mu[i],
                                        cfg);
          }
          const double v = mis_objective(inst, k, d, rates);
          if (v < best_v) {
            best_v = v;
            best_d = d;
          }
        }
      }
    }
    best.decisions[k] = std::move(best_d);
    best.value += best_v;
  }
  return best;
}

SmallInstance random_instance(std::uint64_t seed, std::uint32_t index) {
  SmallInstance inst;
  RandomStreams streams(
      RandomStreams::derive_seed(seed, Phenomenon::Instance, index));
  auto& rng = streams.stream(Phenomenon::Instance, index);

  ScenarioConfig& cfg = inst.cfg;
  cfg.num_mis = static_cast<int>(rng.uniform_int(1, 2));
  cfg.subchannels_per_mis = static_cast<int>(rng.uniform_int(1, 3));
  cfg.tus_per_mis.clear();
  for (int k = 0; k < cfg.num_mis; ++k)
    cfg.tus_per_mis.push_back(static_cast<int>(rng.uniform_int(1, 3)));
  cfg.seed = seed;
  cfg.validate();

  inst.topo = build_topology(cfg, streams);
  inst.chan = sample_channel(inst.topo, cfg, 0, streams);
  // the closed forms are fading-free; keep decision-time and realized rates
  // identical inside certification instances
  for (auto& row : inst.chan.fading2) std::fill(row.begin(), row.end(), 1.0);

  const int num_tus = inst.topo.num_tus();
  inst.state = NetworkState::initial(num_tus, cfg.num_mis);
  for (int i = 0; i < num_tus; ++i) {
    inst.state.q_tu[i] = rng.uniform_int(0, 50);
    inst.state.q_mis[i] = rng.uniform_int(0, 50);
  }
  for (int k = 0; k < cfg.num_mis; ++k) {
    inst.state.battery[k] = rng.uniform(0.0, cfg.battery_capacity_j);
    switch (index % 3) {
      case 0: inst.state.z_virtual[k] = rng.uniform(2000.0, 10000.0); break;
      case 1: inst.state.z_virtual[k] = rng.uniform(1.0, 50.0); break;
      default: inst.state.z_virtual[k] = 0.0; break;
    }
  }

  inst.gamma.assign(cfg.num_mis,
                    std::vector<double>(cfg.subchannels_per_mis, 0.0));
  for (auto& row : inst.gamma)
    for (auto& g : row) g = rng.uniform(0.0, 1e-11);
  inst.backhaul_bps.resize(cfg.num_mis);
  for (auto& b : inst.backhaul_bps) b = std::pow(10.0, rng.uniform(2.0, 8.0));
  return inst;
}

CertifyReport certify_instance(const SmallInstance& inst) {
  CertifyReport rep;
  rep.y_ok = rep.z_ok = rep.m_ok = rep.f_ok = true;
  const ScenarioConfig& cfg = inst.cfg;
  const auto rates = rate_table(inst);
  auto fail = [&rep](bool& flag, const std::string& msg) {
    flag = false;
    if (rep.detail.empty()) rep.detail = msg;
  };

  std::vector<Decision> jd(cfg.num_mis);
  for (int k = 0; k < cfg.num_mis; ++k)
    jd[k] = jcora_schedule_slot(k, inst.state, inst.chan, inst.gamma[k],
                                inst.backhaul_bps[k], cfg, inst.topo);
  rep.scheduler_value = p2_objective(inst, jd);

  for (int k = 0; k < cfg.num_mis; ++k) {
    const auto& tus = inst.topo.by_mis[k];
    const int m_k = static_cast<int>(tus.size());
    const Decision& d = jd[k];
    const double z_k = inst.state.z_virtual[k];

    // z: every subchannel must sit at an argmin of the assignment weight
    for (int n = 0; n < cfg.subchannels_per_mis; ++n) {
      int chosen = -1;
      for (int i = 0; i < m_k; ++i)
        if (d.z[i][n]) chosen = i;
      if (chosen < 0) {
        fail(rep.z_ok, "unassigned subchannel");
        continue;
      }
      const double w_chosen = subchannel_weight(
          chosen, n, k, inst.state, inst.chan, inst.gamma[k][n], cfg, inst.topo);
      for (int i = 0; i < m_k; ++i) {
        const double w = subchannel_weight(i, n, k, inst.state, inst.chan,
                                           inst.gamma[k][n], cfg, inst.topo);
        if (w < w_chosen - kRelTol * (1.0 + std::abs(w_chosen)))
          fail(rep.z_ok, "subchannel assigned to non-minimal weight");
      }
    }

    // y: two-valued check against the gated objective contribution
    for (int i = 0; i < m_k; ++i) {
      const int tu = tus[i];
      double aggregate = 0.0;
      for (int n = 0; n < cfg.subchannels_per_mis; ++n)
        if (d.z[i][n]) aggregate += rates[tu][n];
      const double on =
          (static_cast<double>(inst.state.q_mis[tu] - inst.state.q_tu[tu]) *
               cfg.slot_seconds / cfg.task_bits -
           cfg.control_v) *
          aggregate;
      const double tol = kRelTol * (1.0 + std::abs(on));
      const double mine = d.y[i] ? on : 0.0;
      if (mine > std::min(on, 0.0) + tol) fail(rep.y_ok, "offload bit suboptimal");
    }

    // m: exhaustive over the integer range
    std::vector<std::int64_t> theta, mu;
    decision_caps(inst, k, d, rates, theta, mu);
    for (int i = 0; i < m_k; ++i) {
      const int tu = tus[i];
      const std::int64_t cap = std::max<std::int64_t>(0, theta[i] - mu[i]);
      double best_v = 0.0;
      std::int64_t best_m = 0;
      for (std::int64_t m = 0; m <= cap; ++m) {
        double v = -static_cast<double>(inst.state.q_mis[tu]) *
                   static_cast<double>(m);
        if (m > 0) {
          if (inst.backhaul_bps[k] <= 0.0) continue;
          v += z_k * cfg.mis_tx_power_w * static_cast<double>(m) *
               cfg.task_bits / inst.backhaul_bps[k];
        }
        if (v < best_v) {
          best_v = v;
          best_m = m;
        }
      }
      double mine = -static_cast<double>(inst.state.q_mis[tu]) *
                    static_cast<double>(d.m[i]);
      if (d.m[i] > 0)
        mine += z_k * cfg.mis_tx_power_w * static_cast<double>(d.m[i]) *
                cfg.task_bits / inst.backhaul_bps[k];
      if (mine > best_v + kRelTol * (1.0 + std::abs(best_v)))
        fail(rep.m_ok, "migration count suboptimal");
      (void)best_m;
    }

    // f: interior case must be grid-optimal; boundary and zero-Z cases must
    // match the documented projection rule exactly
    std::vector<std::int64_t> q_local(m_k);
    for (int i = 0; i < m_k; ++i) q_local[i] = inst.state.q_mis[tus[i]];
    double hat_sum = 0.0;
    bool interior = z_k > 0.0;
    if (z_k > 0.0) {
      const double denom = 3.0 * cfg.cycles_per_bit * cfg.task_bits * z_k *
                           cfg.power_coeff * cfg.cpu_hz * cfg.cpu_hz;
      for (int i = 0; i < m_k; ++i) {
        if (q_local[i] <= 0) continue;
        hat_sum += std::min(
            std::sqrt(static_cast<double>(q_local[i]) / denom), 1.0);
      }
      interior = hat_sum <= 1.0;
    }
    if (interior) {
      rep.f_interior = true;
      std::vector<std::vector<double>> grid;
      std::vector<double> cur(m_k, 0.0);
      simplex_grid(m_k, inst.grid, cur, grid, 0, inst.grid);
      double grid_min = std::numeric_limits<double>::infinity();
      for (const auto& f : grid)
        grid_min = std::min(grid_min, f_objective(inst, k, f));
      const double mine = f_objective(inst, k, d.f);
      const double curvature = 6.0 * z_k * cfg.power_coeff * cfg.cpu_hz *
                               cfg.cpu_hz * cfg.cpu_hz * cfg.slot_seconds;
      const double step = 1.0 / static_cast<double>(inst.grid);
      rep.f_gap_bound = 0.5 * curvature * step * step *
                        static_cast<double>(m_k);
      rep.f_gap = grid_min - mine;
      const double tol = kRelTol * (1.0 + std::abs(grid_min));
      if (mine > grid_min + tol)
        fail(rep.f_ok, "compute shares above grid minimum");
      if (grid_min - mine > rep.f_gap_bound + tol)
        fail(rep.f_ok, "grid gap exceeds curvature bound");
    } else {
      // independent restatement of the projection rule
      double sqrt_sum = 0.0;
      for (int i = 0; i < m_k; ++i)
        sqrt_sum += std::sqrt(static_cast<double>(q_local[i]));
      for (int i = 0; i < m_k; ++i) {
        double expect;
        if (z_k <= 0.0 && hat_sum == 0.0) {
          // zero virtual queue: per-TU clamp to 1, projected when shared
          double ones = 0.0;
          for (int j = 0; j < m_k; ++j) ones += q_local[j] > 0 ? 1.0 : 0.0;
          if (ones <= 1.0)
            expect = q_local[i] > 0 ? 1.0 : 0.0;
          else
            expect = sqrt_sum > 0.0
                         ? std::sqrt(static_cast<double>(q_local[i])) / sqrt_sum
                         : 0.0;
        } else {
          expect = sqrt_sum > 0.0
                       ? std::sqrt(static_cast<double>(q_local[i])) / sqrt_sum
                       : 0.0;
        }
        if (std::abs(d.f[i] - expect) > 1e-12 * (1.0 + expect))
          fail(rep.f_ok, "compute shares deviate from projection rule");
      }
    }
  }

  const BruteForceResult brute = brute_force_slot(inst);
  rep.oracle_value = brute.value;
  rep.bound_ok = brute.value <=
                 rep.scheduler_value +
                     kRelTol * (1.0 + std::abs(rep.scheduler_value));
  if (!rep.bound_ok && rep.detail.empty())
    rep.detail = "brute-force value above scheduler value";
  return rep;
}

}  // namespace msim
