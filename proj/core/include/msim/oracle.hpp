#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msim/channel.hpp"
#include "msim/config.hpp"
#include "msim/decision.hpp"
#include "msim/jcora.hpp"
#include "msim/queueing.hpp"
#include "msim/topology.hpp"

namespace msim {

/// A per-slot problem small enough to brute-force: at most 2 MISs, 3 TUs
/// per MIS and 3 subchannels.
struct SmallInstance {
  ScenarioConfig cfg;
  Topology topo;
  NetworkState state;
  ChannelRealization chan;
  std::vector<std::vector<double>> gamma;  // [mis][subchannel]
  std::vector<double> backhaul_bps;        // per MIS
  int grid = 100;                          // compute-share resolution 1/grid
};

/// Deterministic random instance generator.  Instances cycle through three
/// compute regimes: interior closed form, simplex-boundary fallback, and
/// zero virtual queue.
SmallInstance random_instance(std::uint64_t seed, std::uint32_t index);

/// Per-slot objective with constant terms dropped:
///   sum_k Z_k c_k  - V sum_i r_i  + sum_i (Q_{i,k}-Q_i) theta_i
///   - sum_i Q_{i,k} (mu_i + m_i)
/// with theta and mu kept continuous (no floor) so the closed forms are
/// exact minimizers.  Throws std::invalid_argument on an infeasible decision.
double p2_objective(const SmallInstance& inst,
                    const std::vector<Decision>& decisions);

struct BruteForceResult {
  std::vector<Decision> decisions;
  double value = 0.0;
};

/// Global minimum over the discretized action space: every subchannel
/// assignment, every y pattern, compute shares on a coarse simplex grid
/// plus the scheduler's own shares, migration in closed form.  Throws
/// std::runtime_error when the enumeration exceeds `budget` evaluations.
BruteForceResult brute_force_slot(const SmallInstance& inst,
                                  std::uint64_t budget = 2'000'000);

struct CertifyReport {
  bool y_ok = false, z_ok = false, m_ok = false, f_ok = false;
  bool bound_ok = false;  // brute-force value <= scheduler value
  bool f_interior = false;  // grid-gap check ran (vs. fallback rule match)
  double scheduler_value = 0.0;
  double oracle_value = 0.0;
  double f_gap = 0.0;        // |scheduler f objective - grid minimum|
  double f_gap_bound = 0.0;  // curvature * (1/grid)^2 bound
  std::string detail;        // first failure, empty when ok

  bool ok() const { return y_ok && z_ok && m_ok && f_ok && bound_ok; }
};

/// Certifies the scheduler's closed forms on one instance, per subproblem:
/// z against exhaustive assignment, y against the two-valued check, m
/// against integer enumeration, f against the simplex grid (interior case)
/// or the documented sqrt-proportional projection (boundary / zero-Z case).
CertifyReport certify_instance(const SmallInstance& inst);

}  // namespace msim
