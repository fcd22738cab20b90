#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <functional>
#include <mutex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "msim/oracle.hpp"
#include "msim/sim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;       // bad config / flags / IO
constexpr int kExitValidation = 2;  // oracle certification failure

json config_json(const msim::ScenarioConfig& cfg) {
  json j;
  std::istringstream in(msim::serialize_config(cfg));
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    j[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return j;
}

std::string config_comment(const msim::ScenarioConfig& cfg) {
  std::ostringstream out;
  std::istringstream in(msim::serialize_config(cfg));
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out << "# " << line << "\n";
  return out.str();
}

msim::ScenarioConfig resolve_config(const std::string& config_path,
                                    std::uint64_t seed, std::int64_t slots,
                                    const std::string& policy) {
  msim::ScenarioConfig cfg;
  if (!config_path.empty()) cfg = msim::load_config(config_path);
  if (seed != 0) cfg.seed = seed;
  if (slots > 0) cfg.horizon_slots = slots;
  if (!policy.empty()) cfg.policy = msim::parse_policy(policy);
  cfg.validate();
  return cfg;
}

std::int64_t sum64(const std::vector<std::int64_t>& v, size_t lo, size_t hi) {
  std::int64_t s = 0;
  for (size_t i = lo; i < hi; ++i) s += v[i];
  return s;
}

void write_slots_csv(const fs::path& path, const msim::ScenarioConfig& cfg,
                     const std::vector<msim::SlotRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << config_comment(cfg);
  out << "slot,throughput_bps,sum_q_tu,sum_q_mis,max_z,min_battery,"
         "sum_c_total,clamped_mis,processed,migrated,dropped\n";
  out.precision(17);
  for (const auto& r : records) {
    double max_z = 0.0, min_batt = 0.0, sum_c = 0.0;
    if (!r.z_virtual.empty()) {
      max_z = *std::max_element(r.z_virtual.begin(), r.z_virtual.end());
      min_batt = *std::min_element(r.battery.begin(), r.battery.end());
    }
    for (double c : r.c_total) sum_c += c;
    out << r.slot << ',' << r.throughput_bps << ','
        << sum64(r.q_tu, 0, r.q_tu.size()) << ','
        << sum64(r.q_mis, 0, r.q_mis.size()) << ',' << max_z << ',' << min_batt
        << ',' << sum_c << ',' << r.clamped_mis << ',' << r.processed << ','
        << r.migrated << ',' << r.dropped << '\n';
  }
}

json summary_json(const msim::ScenarioConfig& cfg, const msim::RunSummary& s) {
  json j;
  j["config"] = config_json(cfg);
  j["seed"] = cfg.seed;
  j["slots"] = s.slots;
  j["avg_throughput_bps"] = s.avg_throughput_bps;
  j["avg_throughput_warm_bps"] = s.avg_throughput_warm_bps;
  j["goodput_bps"] = s.goodput_bps;  // diagnostic, not a model metric
  j["avg_queue_total"] = s.avg_queue_total;
  j["avg_queue_warm"] = s.avg_queue_warm;
  j["avg_energy_j"] = s.avg_energy_j;
  j["violation_rate"] = s.violation_rate;
  j["violation_rate_last_half"] = s.violation_rate_last_half;
  j["final_z_over_t"] = s.final_z_over_t;
  j["avg_c_total"] = s.avg_c_total;
  j["avg_battery"] = s.avg_battery;
  j["total_arrivals"] = s.total_arrivals;
  j["total_processed"] = s.total_processed;
  j["total_migrated"] = s.total_migrated;
  j["total_dropped"] = s.total_dropped;
  if (s.mean_latency_slots) j["mean_latency_slots"] = *s.mean_latency_slots;
  if (s.mean_latency_warm_slots)
    j["mean_latency_warm_slots"] = *s.mean_latency_warm_slots;
  auto latencies = json::array();
  for (const auto& l : s.tu_latency_slots)
    latencies.push_back(l ? json(*l) : json(nullptr));
  j["tu_latency_slots"] = latencies;
  return j;
}

struct RowResult {
  std::string param;
  double value = 0.0;
  std::uint64_t seed = 0;
  msim::Policy policy = msim::Policy::Jcora;
  msim::RunSummary summary;
};

void write_rows(std::ofstream& out, const std::vector<RowResult>& rows) {
  out << "param,value,seed,policy,avg_throughput,avg_latency,avg_queue,"
         "avg_energy,final_Z_over_T,violation_rate\n";
  out.precision(17);
  for (const auto& r : rows) {
    const auto& s = r.summary;
    double max_z = 0.0;
    for (double z : s.final_z_over_t) max_z = std::max(max_z, z);
    out << r.param << ',' << r.value << ',' << r.seed << ','
        << msim::to_string(r.policy) << ',' << s.avg_throughput_warm_bps << ',';
    if (s.mean_latency_warm_slots)
      out << *s.mean_latency_warm_slots;
    else
      out << "nan";
    out << ',' << s.avg_queue_warm << ',' << s.avg_energy_j << ',' << max_z
        << ',' << s.violation_rate << '\n';
  }
}

// fixed-size job list run by a bounded pool; results land at their job index
void run_pool(std::vector<std::function<void()>>& jobs, int workers) {
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      jobs[i]();
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

void apply_sweep_value(msim::ScenarioConfig& cfg, const std::string& param,
                       double value) {
  if (param == "control_v") {
    cfg.control_v = value;
  } else if (param == "total_tus") {
    const int total = static_cast<int>(std::llround(value));
    cfg.tus_per_mis.assign(cfg.num_mis, total / cfg.num_mis);
    for (int k = 0; k < total % cfg.num_mis; ++k) ++cfg.tus_per_mis[k];
  } else if (param == "arrival_mean") {
    // uniform arrivals on {0..g_max} have mean g_max/2
    cfg.max_arrivals = std::llround(2.0 * value);
  } else if (param == "e_max") {
    cfg.max_charge_j_per_slot = value;
  } else {
    throw msim::ConfigError(
        "param", "must be control_v, total_tus, arrival_mean or e_max");
  }
  cfg.validate();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maritime edge-network scheduling simulator"};
  app.require_subcommand(1);

  std::string config_path, policy, out_dir = ".", param, values_arg;
  std::uint64_t seed = 0;
  std::int64_t slots = 0;
  int reps = 1, instances = 100, jobs = static_cast<int>(
      std::max(1u, std::thread::hardware_concurrency()));

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "config file (key=value lines)");
    cmd->add_option("--seed", seed, "base seed (0 keeps the config's seed)");
    cmd->add_option("--slots", slots, "horizon override");
    cmd->add_option("--policy", policy, "jcora|fra|lra|pra|tra");
    cmd->add_option("--out", out_dir, "output directory");
  };

  auto* run_cmd = app.add_subcommand("run", "single simulation");
  add_common(run_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--param", param,
                        "control_v|total_tus|arrival_mean|e_max")
      ->required();
  sweep_cmd->add_option("--values", values_arg, "comma-separated values")
      ->required();
  sweep_cmd->add_option("--reps", reps, "replications per value");
  sweep_cmd->add_option("--jobs", jobs, "worker pool size");

  auto* compare_cmd = app.add_subcommand("compare", "all policies, same seeds");
  add_common(compare_cmd);
  compare_cmd->add_option("--reps", reps, "seeds per policy");
  compare_cmd->add_option("--jobs", jobs, "worker pool size");

  auto* validate_cmd =
      app.add_subcommand("validate", "brute-force certification");
  validate_cmd->add_option("--instances", instances, "instance count");
  validate_cmd->add_option("--seed", seed, "instance seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    fs::create_directories(out_dir);

    if (run_cmd->parsed()) {
      const auto cfg = resolve_config(config_path, seed, slots, policy);
      msim::VectorSink sink;
      const auto summary = msim::run_simulation(cfg, &sink);
      write_slots_csv(fs::path(out_dir) / "slots.csv", cfg, sink.records);
      std::ofstream out(fs::path(out_dir) / "summary.json");
      if (!out) throw std::runtime_error("cannot write summary.json");
      out << summary_json(cfg, summary).dump(2) << '\n';
      std::cout << "wrote slots.csv and summary.json to " << out_dir << '\n';
      return kExitOk;
    }

    if (sweep_cmd->parsed() || compare_cmd->parsed()) {
      const auto base = resolve_config(config_path, seed, slots, policy);
      if (reps < 1) throw msim::ConfigError("reps", "must be >= 1");
      std::vector<RowResult> rows;
      if (sweep_cmd->parsed()) {
        std::vector<double> values;
        std::stringstream ss{values_arg};
        std::string tok;
        while (std::getline(ss, tok, ',')) values.push_back(std::stod(tok));
        if (values.empty()) throw msim::ConfigError("values", "empty list");
        for (double v : values) {
          for (int r = 0; r < reps; ++r) {
            RowResult row;
            row.param = param;
            row.value = v;
            row.seed = base.seed + static_cast<std::uint64_t>(r);
            row.policy = base.policy;
            rows.push_back(row);
          }
        }
      } else {
        for (auto p : {msim::Policy::Jcora, msim::Policy::Fra,
                       msim::Policy::Lra, msim::Policy::Pra,
                       msim::Policy::Tra}) {
          for (int r = 0; r < reps; ++r) {
            RowResult row;
            row.param = "policy";
            row.value = 0.0;
            row.seed = base.seed + static_cast<std::uint64_t>(r);
            row.policy = p;
            rows.push_back(row);
          }
        }
      }
      std::vector<std::function<void()>> tasks;
      tasks.reserve(rows.size());
      std::atomic<bool> failed{false};
      std::string first_error;
      std::mutex err_mu;
      for (auto& row : rows) {
        tasks.push_back([&, rowp = &row] {
          try {
            msim::ScenarioConfig cfg = base;
            cfg.seed = rowp->seed;
            cfg.policy = rowp->policy;
            if (rowp->param != "policy")
              apply_sweep_value(cfg, rowp->param, rowp->value);
            rowp->summary = msim::run_simulation(cfg);
          } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (!failed.exchange(true)) first_error = e.what();
          }
        });
      }
      run_pool(tasks, jobs);
      if (failed) throw std::runtime_error(first_error);
      const auto name = sweep_cmd->parsed() ? "sweep.csv" : "compare.csv";
      std::ofstream out(fs::path(out_dir) / name);
      if (!out) throw std::runtime_error(std::string("cannot write ") + name);
      out << config_comment(base);
      write_rows(out, rows);
      std::cout << "wrote " << rows.size() << " rows to " << name << '\n';
      return kExitOk;
    }

    // validate
    if (instances < 1) throw msim::ConfigError("instances", "must be >= 1");
    const std::uint64_t vseed = seed == 0 ? 1 : seed;
    int passed = 0;
    for (int i = 0; i < instances; ++i) {
      const auto inst =
          msim::random_instance(vseed, static_cast<std::uint32_t>(i));
      const auto rep = msim::certify_instance(inst);
      if (rep.ok()) {
        ++passed;
      } else {
        std::cout << "instance " << i << ": FAIL (" << rep.detail << ")\n";
      }
    }
    std::cout << passed << "/" << instances << " certified\n";
    return passed == instances ? kExitOk : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
