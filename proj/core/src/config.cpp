#include "msim/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace msim {

std::string to_string(Policy p) {
  switch (p) {
    case Policy::Jcora: return "JCORA";
    case Policy::Fra: return "FRA";
    case Policy::Lra: return "LRA";
    case Policy::Pra: return "PRA";
    case Policy::Tra: return "TRA";
  }
  return "JCORA";
}

std::string to_string(ArrivalModel m) {
  return m == ArrivalModel::Uniform ? "uniform" : "truncated_poisson";
}

std::string to_string(InterferenceMode m) {
  return m == InterferenceMode::PaperFaithful ? "paper" : "physical";
}

Policy parse_policy(std::string_view s) {
  std::string u(s);
  std::transform(u.begin(), u.end(), u.begin(), ::toupper);
  if (u == "JCORA") return Policy::Jcora;
  if (u == "FRA") return Policy::Fra;
  if (u == "LRA") return Policy::Lra;
  if (u == "PRA") return Policy::Pra;
  if (u == "TRA") return Policy::Tra;
  throw ConfigError("control.policy", "unknown policy '" + u + "'");
}

int ScenarioConfig::total_tus() const {
  int n = 0;
  for (int m : tus_per_mis) n += m;
  return n;
}

double ScenarioConfig::noise_watts(double bandwidth_hz) const {
  // PSD in dBm/Hz -> W/Hz, times occupied bandwidth.
  const double psd_w_hz = std::pow(10.0, noise_psd_dbm_hz / 10.0) * 1e-3;
  return psd_w_hz * bandwidth_hz;
}

std::int64_t ScenarioConfig::mu_cap() const {
  return static_cast<std::int64_t>(
      std::floor(cpu_hz * slot_seconds / (cycles_per_bit * task_bits)));
}

namespace {

void require(bool ok, const char* field, const std::string& msg) {
  if (!ok) throw ConfigError(field, msg);
}

}  // namespace

void ScenarioConfig::validate() const {
  require(num_mis >= 1, "network.num_mis", "must be >= 1");
  require(subchannels_per_mis >= 1, "network.subchannels_per_mis", "must be >= 1");
  require(static_cast<int>(tus_per_mis.size()) == num_mis, "network.tus_per_mis",
          "length must equal num_mis");
  for (int m : tus_per_mis)
    require(m >= 0, "network.tus_per_mis", "entries must be >= 0");
  require(coverage_radius_m > 0, "network.coverage_radius_m", "must be > 0");
  require(mis_cbs_distance_m > 0, "network.mis_cbs_distance_m", "must be > 0");
  require(subchannel_bandwidth_hz > 0, "radio.subchannel_bandwidth_hz", "must be > 0");
  require(cbs_bandwidth_hz > 0, "radio.cbs_bandwidth_hz", "must be > 0");
  require(backhaul_ratio >= 0 && backhaul_ratio <= 1, "radio.backhaul_ratio",
          "must be in [0, 1]");
  require(rician_k >= 0, "radio.rician_k", "must be >= 0");
  require(tu_tx_power_w > 0, "radio.tu_tx_power_w", "must be > 0");
  require(mis_tx_power_w > 0, "radio.mis_tx_power_w", "must be > 0");
  require(tu_antenna_m > 0, "radio.tu_antenna_m", "must be > 0");
  require(mis_antenna_m > 0, "radio.mis_antenna_m", "must be > 0");
  require(cbs_antenna_m > 0, "radio.cbs_antenna_m", "must be > 0");
  require(wavelength_mis_m > 0, "radio.wavelength_mis_m", "must be > 0");
  require(wavelength_cbs_m > 0, "radio.wavelength_cbs_m", "must be > 0");
  require(cpu_hz > 0, "compute.cpu_hz", "must be > 0");
  require(power_coeff > 0, "compute.power_coeff", "must be > 0");
  require(base_power_j_per_slot >= 0, "compute.base_power_j_per_slot", "must be >= 0");
  require(cycles_per_bit > 0, "compute.cycles_per_bit", "must be > 0");
  require(battery_capacity_j > 0, "energy.battery_capacity_j", "must be > 0");
  require(max_charge_j_per_slot >= 0, "energy.max_charge_j_per_slot", "must be >= 0");
  require(task_bits > 0, "tasks.task_bits", "must be > 0");
  require(max_arrivals >= 0, "tasks.max_arrivals", "must be >= 0");
  require(theta_cap_tasks > 0, "tasks.theta_cap_tasks", "must be > 0");
  require(latency_threshold_slots > 0, "tasks.latency_threshold_slots", "must be > 0");
  require(exec_delay_slots >= 0, "tasks.exec_delay_slots", "must be >= 0");
  require(tu_buffer_cap >= 0, "tasks.tu_buffer_cap", "must be >= 0");
  require(mis_buffer_cap >= 0, "tasks.mis_buffer_cap", "must be >= 0");
  require(slot_seconds > 0, "time.slot_seconds", "must be > 0");
  require(horizon_slots >= 0, "time.horizon_slots", "must be >= 0");
  require(control_v >= 0, "control.control_v", "must be >= 0");
  require(warmup_fraction >= 0 && warmup_fraction < 1, "time.warmup_fraction",
          "must be in [0, 1)");
  require(tu_speed_mps >= 0, "mobility.tu_speed_mps", "must be >= 0");
}

namespace {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a number, got '" + v + "'");
  }
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    long long n = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected an integer, got '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(key, "expected true/false, got '" + v + "'");
}

std::vector<int> parse_int_list(const std::string& key, const std::string& v) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(static_cast<int>(parse_int(key, item)));
  }
  return out;
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  std::map<std::string, std::string> kv;
  std::string line;
  std::istringstream in{std::string(text)};
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("", "line " + std::to_string(lineno) +
                                ": expected 'key = value', got '" + t + "'");
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }

  // tus_per_mis defaults track num_mis when only the count is given.
  bool tus_given = kv.count("network.tus_per_mis") > 0;

  for (const auto& [key, val] : kv) {
    if (key == "network.num_mis") cfg.num_mis = static_cast<int>(parse_int(key, val));
    else if (key == "network.subchannels_per_mis") cfg.subchannels_per_mis = static_cast<int>(parse_int(key, val));
    else if (key == "network.tus_per_mis") cfg.tus_per_mis = parse_int_list(key, val);
    else if (key == "network.coverage_radius_m") cfg.coverage_radius_m = parse_double(key, val);
    else if (key == "network.mis_cbs_distance_m") cfg.mis_cbs_distance_m = parse_double(key, val);
    else if (key == "radio.subchannel_bandwidth_hz") cfg.subchannel_bandwidth_hz = parse_double(key, val);
    else if (key == "radio.cbs_bandwidth_hz") cfg.cbs_bandwidth_hz = parse_double(key, val);
    else if (key == "radio.backhaul_ratio") cfg.backhaul_ratio = parse_double(key, val);
    else if (key == "radio.noise_psd_dbm_hz") cfg.noise_psd_dbm_hz = parse_double(key, val);
    else if (key == "radio.rician_k") cfg.rician_k = parse_double(key, val);
    else if (key == "radio.tu_tx_power_w") cfg.tu_tx_power_w = parse_double(key, val);
    else if (key == "radio.mis_tx_power_w") cfg.mis_tx_power_w = parse_double(key, val);
    else if (key == "radio.tu_antenna_m") cfg.tu_antenna_m = parse_double(key, val);
    else if (key == "radio.mis_antenna_m") cfg.mis_antenna_m = parse_double(key, val);
    else if (key == "radio.cbs_antenna_m") cfg.cbs_antenna_m = parse_double(key, val);
    else if (key == "radio.wavelength_mis_m") cfg.wavelength_mis_m = parse_double(key, val);
    else if (key == "radio.wavelength_cbs_m") cfg.wavelength_cbs_m = parse_double(key, val);
    else if (key == "radio.interference_mode") {
      if (val == "paper") cfg.interference_mode = InterferenceMode::PaperFaithful;
      else if (val == "physical") cfg.interference_mode = InterferenceMode::Physical;
      else throw ConfigError(key, "expected 'paper' or 'physical'");
    }
    else if (key == "radio.fading_in_weights") cfg.fading_in_weights = parse_bool(key, val);
    else if (key == "compute.cpu_hz") cfg.cpu_hz = parse_double(key, val);
    else if (key == "compute.power_coeff") cfg.power_coeff = parse_double(key, val);
    else if (key == "compute.base_power_j_per_slot") cfg.base_power_j_per_slot = parse_double(key, val);
    else if (key == "compute.cycles_per_bit") cfg.cycles_per_bit = parse_double(key, val);
    else if (key == "energy.battery_capacity_j") cfg.battery_capacity_j = parse_double(key, val);
    else if (key == "energy.max_charge_j_per_slot") cfg.max_charge_j_per_slot = parse_double(key, val);
    else if (key == "tasks.task_bits") cfg.task_bits = parse_double(key, val);
    else if (key == "tasks.max_arrivals") cfg.max_arrivals = parse_int(key, val);
    else if (key == "tasks.arrival_model") {
      if (val == "uniform") cfg.arrival_model = ArrivalModel::Uniform;
      else if (val == "truncated_poisson") cfg.arrival_model = ArrivalModel::TruncatedPoisson;
      else throw ConfigError(key, "expected 'uniform' or 'truncated_poisson'");
    }
    else if (key == "tasks.theta_cap_tasks") cfg.theta_cap_tasks = parse_int(key, val);
    else if (key == "tasks.latency_threshold_slots") cfg.latency_threshold_slots = parse_int(key, val);
    else if (key == "tasks.exec_delay_slots") cfg.exec_delay_slots = parse_int(key, val);
    else if (key == "tasks.tu_buffer_cap") cfg.tu_buffer_cap = parse_int(key, val);
    else if (key == "tasks.mis_buffer_cap") cfg.mis_buffer_cap = parse_int(key, val);
    else if (key == "tasks.literal_mis_queue") cfg.literal_mis_queue = parse_bool(key, val);
    else if (key == "time.slot_seconds") cfg.slot_seconds = parse_double(key, val);
    else if (key == "time.horizon_slots") cfg.horizon_slots = parse_int(key, val);
    else if (key == "time.warmup_fraction") cfg.warmup_fraction = parse_double(key, val);
    else if (key == "control.control_v") cfg.control_v = parse_double(key, val);
    else if (key == "control.policy") cfg.policy = parse_policy(val);
    else if (key == "mobility.tu_speed_mps") cfg.tu_speed_mps = parse_double(key, val);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, val));
    else throw ConfigError(key, "unknown config key");
  }

  if (!tus_given && static_cast<int>(cfg.tus_per_mis.size()) != cfg.num_mis) {
    cfg.tus_per_mis.assign(cfg.num_mis, 6);
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("", "cannot open config file: " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out.precision(17);
  out << "network.num_mis = " << cfg.num_mis << "\n";
  out << "network.subchannels_per_mis = " << cfg.subchannels_per_mis << "\n";
  out << "network.tus_per_mis = ";
  for (size_t i = 0; i < cfg.tus_per_mis.size(); ++i)
    out << (i ? "," : "") << cfg.tus_per_mis[i];
  out << "\n";
  out << "network.coverage_radius_m = " << cfg.coverage_radius_m << "\n";
  out << "network.mis_cbs_distance_m = " << cfg.mis_cbs_distance_m << "\n";
  out << "radio.subchannel_bandwidth_hz = " << cfg.subchannel_bandwidth_hz << "\n";
  out << "radio.cbs_bandwidth_hz = " << cfg.cbs_bandwidth_hz << "\n";
  out << "radio.backhaul_ratio = " << cfg.backhaul_ratio << "\n";
  out << "radio.noise_psd_dbm_hz = " << cfg.noise_psd_dbm_hz << "\n";
  out << "radio.rician_k = " << cfg.rician_k << "\n";
  out << "radio.tu_tx_power_w = " << cfg.tu_tx_power_w << "\n";
  out << "radio.mis_tx_power_w = " << cfg.mis_tx_power_w << "\n";
  out << "radio.tu_antenna_m = " << cfg.tu_antenna_m << "\n";
  out << "radio.mis_antenna_m = " << cfg.mis_antenna_m << "\n";
  out << "radio.cbs_antenna_m = " << cfg.cbs_antenna_m << "\n";
  out << "radio.wavelength_mis_m = " << cfg.wavelength_mis_m << "\n";
  out << "radio.wavelength_cbs_m = " << cfg.wavelength_cbs_m << "\n";
  out << "radio.interference_mode = " << to_string(cfg.interference_mode) << "\n";
  out << "radio.fading_in_weights = " << (cfg.fading_in_weights ? "true" : "false") << "\n";
  out << "compute.cpu_hz = " << cfg.cpu_hz << "\n";
  out << "compute.power_coeff = " << cfg.power_coeff << "\n";
  out << "compute.base_power_j_per_slot = " << cfg.base_power_j_per_slot << "\n";
  out << "compute.cycles_per_bit = " << cfg.cycles_per_bit << "\n";
  out << "energy.battery_capacity_j = " << cfg.battery_capacity_j << "\n";
  out << "energy.max_charge_j_per_slot = " << cfg.max_charge_j_per_slot << "\n";
  out << "tasks.task_bits = " << cfg.task_bits << "\n";
  out << "tasks.max_arrivals = " << cfg.max_arrivals << "\n";
  out << "tasks.arrival_model = " << to_string(cfg.arrival_model) << "\n";
  out << "tasks.theta_cap_tasks = " << cfg.theta_cap_tasks << "\n";
  out << "tasks.latency_threshold_slots = " << cfg.latency_threshold_slots << "\n";
  out << "tasks.exec_delay_slots = " << cfg.exec_delay_slots << "\n";
  out << "tasks.tu_buffer_cap = " << cfg.tu_buffer_cap << "\n";
  out << "tasks.mis_buffer_cap = " << cfg.mis_buffer_cap << "\n";
  out << "tasks.literal_mis_queue = " << (cfg.literal_mis_queue ? "true" : "false") << "\n";
  out << "time.slot_seconds = " << cfg.slot_seconds << "\n";
  out << "time.horizon_slots = " << cfg.horizon_slots << "\n";
  out << "time.warmup_fraction = " << cfg.warmup_fraction << "\n";
  out << "control.control_v = " << cfg.control_v << "\n";
  out << "control.policy = " << to_string(cfg.policy) << "\n";
  out << "mobility.tu_speed_mps = " << cfg.tu_speed_mps << "\n";
  out << "seed = " << cfg.seed << "\n";
  return out.str();
}

}  // namespace msim
