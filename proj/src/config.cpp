#include "mumenet/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "mumenet/errors.hpp"
#include "mumenet/template_rates.hpp"

namespace mumenet {

namespace fs = std::filesystem;
using nlohmann::json;

const char* objective_name(ObjectiveKind kind) {
  return kind == ObjectiveKind::MinCost ? "mincost" : "lb";
}

ObjectiveKind objective_from_name(const std::string& name) {
  if (name == "mincost") return ObjectiveKind::MinCost;
  if (name == "lb" || name == "loadbalance") return ObjectiveKind::LoadBalance;
  throw MumeError(ErrorCode::BadArgument, "unknown objective '" + name + "'");
}

namespace {

const char* log_level_name(LogLevel lv) {
  switch (lv) {
    case LogLevel::Error: return "error";
    case LogLevel::Warn: return "warn";
    case LogLevel::Info: return "info";
    case LogLevel::Debug: return "debug";
    case LogLevel::Trace: return "trace";
  }
  return "warn";
}

const char* backend_name(SolverBackend b) {
  switch (b) {
    case SolverBackend::InternalBnb: return "internal_bnb";
    case SolverBackend::BruteForce: return "brute_force";
    case SolverBackend::Greedy: return "greedy";
    case SolverBackend::ExternalLpFile: return "external_lp_file";
  }
  return "internal_bnb";
}

json range_to_json(const UniformRange& r) { return json::array({r.lo, r.hi}); }
json range_to_json(const IntRange& r) { return json::array({r.lo, r.hi}); }

/// Field-level readers. Every reader removes the key from `section` so the
/// caller can reject leftovers as unknown keys.

json take(json& section, const std::string& key) {
  auto it = section.find(key);
  if (it == section.end()) return json();
  json v = *it;
  section.erase(it);
  return v;
}

double read_number(json& section, const std::string& path, const std::string& key,
                   double current, double lo, double hi) {
  json v = take(section, key);
  if (v.is_null()) return current;
  if (!v.is_number()) throw schema_error(path + "." + key, "expected a number");
  const double x = v.get<double>();
  if (x < lo || x > hi) {
    std::ostringstream os;
    os << "value " << x << " outside [" << lo << ", " << hi << "]";
    throw schema_error(path + "." + key, os.str());
  }
  return x;
}

std::int64_t read_int(json& section, const std::string& path, const std::string& key,
                      std::int64_t current, std::int64_t lo, std::int64_t hi) {
  json v = take(section, key);
  if (v.is_null()) return current;
  if (!v.is_number_integer()) throw schema_error(path + "." + key, "expected an integer");
  const std::int64_t x = v.get<std::int64_t>();
  if (x < lo || x > hi) {
    std::ostringstream os;
    os << "value " << x << " outside [" << lo << ", " << hi << "]";
    throw schema_error(path + "." + key, os.str());
  }
  return x;
}

std::uint64_t read_u64(json& section, const std::string& path, const std::string& key,
                       std::uint64_t current) {
  json v = take(section, key);
  if (v.is_null()) return current;
  if (!(v.is_number_integer() || v.is_number_unsigned()))
    throw schema_error(path + "." + key, "expected an unsigned integer");
  if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)
    throw schema_error(path + "." + key, "expected an unsigned integer");
  return v.get<std::uint64_t>();
}

std::string read_string(json& section, const std::string& path, const std::string& key,
                        std::string current) {
  json v = take(section, key);
  if (v.is_null()) return current;
  if (!v.is_string()) throw schema_error(path + "." + key, "expected a string");
  return v.get<std::string>();
}

UniformRange read_range(json& section, const std::string& path, const std::string& key,
                        UniformRange current, double lo_min) {
  json v = take(section, key);
  if (v.is_null()) return current;
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw schema_error(path + "." + key, "expected [lo, hi]");
  UniformRange r{v[0].get<double>(), v[1].get<double>()};
  if (r.lo > r.hi) throw schema_error(path + "." + key, "range low exceeds high");
  if (r.lo < lo_min) throw schema_error(path + "." + key, "range low below minimum");
  return r;
}

IntRange read_int_range(json& section, const std::string& path, const std::string& key,
                        IntRange current, std::int64_t lo_min) {
  json v = take(section, key);
  if (v.is_null()) return current;
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
    throw schema_error(path + "." + key, "expected [lo, hi] integers");
  IntRange r{v[0].get<std::int64_t>(), v[1].get<std::int64_t>()};
  if (r.lo > r.hi) throw schema_error(path + "." + key, "range low exceeds high");
  if (r.lo < lo_min) throw schema_error(path + "." + key, "range low below minimum");
  return r;
}

void reject_leftovers(const json& section, const std::string& path) {
  if (!section.empty()) throw unknown_key_error(path + "." + section.begin().key());
}

json section_or_empty(json& doc, const std::string& key) {
  json v = take(doc, key);
  if (v.is_null()) return json::object();
  if (!v.is_object()) throw schema_error(key, "expected a mapping");
  return v;
}

json yaml_to_json(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Null:
      return json();
    case YAML::NodeType::Scalar: {
      // YAML scalars are untyped; recover bool/int/double where they parse.
      const std::string& s = node.Scalar();
      if (node.Tag() == "!") return s;  // explicitly quoted
      if (s == "true" || s == "True") return true;
      if (s == "false" || s == "False") return false;
      try {
        std::size_t pos = 0;
        long long i = std::stoll(s, &pos);
        if (pos == s.size()) return i;
      } catch (...) {
      }
      try {
        std::size_t pos = 0;
        double d = std::stod(s, &pos);
        if (pos == s.size()) return d;
      } catch (...) {
      }
      return s;
    }
    case YAML::NodeType::Sequence: {
      json arr = json::array();
      for (const auto& item : node) arr.push_back(yaml_to_json(item));
      return arr;
    }
    case YAML::NodeType::Map: {
      json obj = json::object();
      for (const auto& kv : node) obj[kv.first.as<std::string>()] = yaml_to_json(kv.second);
      return obj;
    }
    default:
      return json();
  }
}

json parse_config_text(const std::string& text, const std::string& path) {
  const bool looks_json = path.ends_with(".json");
  const bool looks_yaml = path.ends_with(".yaml") || path.ends_with(".yml");
  std::string json_err;
  if (!looks_yaml) {
    try {
      if (text.find_first_not_of(" \t\r\n") == std::string::npos) return json::object();
      return json::parse(text);
    } catch (const std::exception& e) {
      json_err = e.what();
      if (looks_json) throw parse_error("invalid JSON in " + path + ": " + json_err);
    }
  }
  try {
    YAML::Node root = YAML::Load(text);
    if (root.IsNull() || !root.IsDefined()) return json::object();
    json doc = yaml_to_json(root);
    if (doc.is_null()) return json::object();
    if (!doc.is_object()) throw parse_error("config root must be a mapping: " + path);
    return doc;
  } catch (const YAML::Exception& e) {
    throw parse_error("cannot parse " + path + " as YAML or JSON: " + e.what());
  }
}

void apply_override(json& doc, const std::string& dotted, const std::string& value) {
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (...) {
    parsed = value;  // plain string override
  }
  json* cursor = &doc;
  std::size_t start = 0;
  while (true) {
    std::size_t dot = dotted.find('.', start);
    std::string part = dotted.substr(start, dot == std::string::npos ? dot : dot - start);
    if (part.empty()) throw MumeError(ErrorCode::BadArgument, "empty override path segment", dotted);
    if (dot == std::string::npos) {
      (*cursor)[part] = parsed;
      return;
    }
    if (!cursor->contains(part) || !(*cursor)[part].is_object()) (*cursor)[part] = json::object();
    cursor = &(*cursor)[part];
    start = dot + 1;
  }
}

}  // namespace

BaseConfig config_from_json(const json& document) {
  if (!document.is_object()) throw schema_error("", "config root must be a mapping");
  json doc = document;
  BaseConfig cfg;

  json sim = section_or_empty(doc, "simulation");
  cfg.simulation_horizon_ms = read_number(sim, "simulation", "horizon_ms",
                                          cfg.simulation_horizon_ms, 1e-3, 1e12);
  cfg.time_resolution_us = read_int(sim, "simulation", "time_resolution_us",
                                    cfg.time_resolution_us, 1, 1000000000);
  cfg.master_seed = read_u64(sim, "simulation", "master_seed", cfg.master_seed);
  {
    std::string lv = read_string(sim, "simulation", "log_level", log_level_name(cfg.log_level));
    if (lv == "error") cfg.log_level = LogLevel::Error;
    else if (lv == "warn") cfg.log_level = LogLevel::Warn;
    else if (lv == "info") cfg.log_level = LogLevel::Info;
    else if (lv == "debug") cfg.log_level = LogLevel::Debug;
    else if (lv == "trace") cfg.log_level = LogLevel::Trace;
    else throw schema_error("simulation.log_level", "unknown level '" + lv + "'");
  }
  cfg.output_dir = read_string(sim, "simulation", "output_dir", cfg.output_dir);
  cfg.packet_interval_ms = read_number(sim, "simulation", "packet_interval_ms",
                                       cfg.packet_interval_ms, 1e-3, 1e9);
  cfg.metric_sample_interval_ms = read_number(sim, "simulation", "metric_sample_interval_ms",
                                              cfg.metric_sample_interval_ms, 1e-3, 1e9);
  if (cfg.time_resolution_us > static_cast<std::int64_t>(cfg.simulation_horizon_ms * 1000.0))
    throw schema_error("simulation.time_resolution_us", "exceeds simulation horizon");
  reject_leftovers(sim, "simulation");

  json topo = section_or_empty(doc, "topology");
  TopologyParams& tp = cfg.topology_params;
  tp.n = read_int(topo, "topology", "n", tp.n, 2, 100000);
  tp.rho = read_number(topo, "topology", "rho", tp.rho, 0.0, 1.0);
  tp.comm_cap_range = read_range(topo, "topology", "comm_cap_range", tp.comm_cap_range, 1e-9);
  tp.comm_cost_range = read_range(topo, "topology", "comm_cost_range", tp.comm_cost_range, 0.0);
  tp.ram_cap_range = read_range(topo, "topology", "ram_cap_range", tp.ram_cap_range, 1e-9);
  tp.ram_cost_range = read_range(topo, "topology", "ram_cost_range", tp.ram_cost_range, 0.0);
  tp.cpu_cap_range = read_range(topo, "topology", "cpu_cap_range", tp.cpu_cap_range, 1e-9);
  tp.cpu_cost_range = read_range(topo, "topology", "cpu_cost_range", tp.cpu_cost_range, 0.0);
  tp.comp_percentage = read_number(topo, "topology", "comp_percentage", tp.comp_percentage, 0.0, 1.0);
  tp.comp_nodes_range = read_int_range(topo, "topology", "comp_nodes_range", tp.comp_nodes_range, 1);
  tp.cap_sentinel = read_number(topo, "topology", "cap_sentinel", 0.0, 0.0, 1e18);
  tp.max_connect_retries = read_int(topo, "topology", "max_connect_retries",
                                    tp.max_connect_retries, 1, 1000000);
  reject_leftovers(topo, "topology");

  json sg = section_or_empty(doc, "service_graph");
  cfg.sg_params.users = read_int(sg, "service_graph", "users", cfg.sg_params.users, 1, 100000);
  cfg.sg_params.deadline_ms = read_number(sg, "service_graph", "deadline_ms",
                                          cfg.sg_params.deadline_ms, 1e-6, 1e9);
  reject_leftovers(sg, "service_graph");

  json imp = section_or_empty(doc, "impairments");
  ImpairmentParams& ip = cfg.impairment_params;
  ip.jitter_sigma_us = read_number(imp, "impairments", "jitter_sigma_us", ip.jitter_sigma_us, 0.0, 1e9);
  ip.loss_p_gb = read_number(imp, "impairments", "loss_p_gb", ip.loss_p_gb, 0.0, 1.0);
  ip.loss_p_bg = read_number(imp, "impairments", "loss_p_bg", ip.loss_p_bg, 0.0, 1.0);
  ip.loss_h = read_number(imp, "impairments", "loss_h", ip.loss_h, 0.0, 1.0);
  reject_leftovers(imp, "impairments");

  json lat = section_or_empty(doc, "latency");
  cfg.latency_params.comm_prop_ms =
      read_range(lat, "latency", "comm_prop_ms", cfg.latency_params.comm_prop_ms, 0.0);
  cfg.latency_params.kappa_proc =
      read_number(lat, "latency", "kappa_proc", cfg.latency_params.kappa_proc, 0.0, 1e9);
  reject_leftovers(lat, "latency");

  json sol = section_or_empty(doc, "solver");
  SolverParams& sp = cfg.solver_params;
  sp.mip_gap = read_number(sol, "solver", "mip_gap", sp.mip_gap, 0.0, 1.0);
  sp.feas_tol = read_number(sol, "solver", "feas_tol", sp.feas_tol, 1e-15, 1.0);
  sp.time_limit_ms = read_number(sol, "solver", "time_limit_ms", sp.time_limit_ms, 0.0, 1e12);
  {
    std::string b = read_string(sol, "solver", "backend", backend_name(sp.backend));
    if (b == "internal_bnb") sp.backend = SolverBackend::InternalBnb;
    else if (b == "brute_force") sp.backend = SolverBackend::BruteForce;
    else if (b == "greedy") sp.backend = SolverBackend::Greedy;
    else if (b == "external_lp_file") sp.backend = SolverBackend::ExternalLpFile;
    else throw schema_error("solver.backend", "unknown backend '" + b + "'");
  }
  sp.brute_force_budget = read_int(sol, "solver", "brute_force_budget",
                                   sp.brute_force_budget, 1, 1000000000000LL);
  reject_leftovers(sol, "solver");

  json exp = section_or_empty(doc, "experiment");
  ExperimentParams& ep = cfg.experiment_params;
  {
    json v = take(exp, "topology_sizes");
    if (!v.is_null()) {
      if (!v.is_array() || v.empty()) throw schema_error("experiment.topology_sizes", "expected a non-empty array");
      ep.topology_sizes.clear();
      for (const auto& e : v) {
        if (!e.is_number_integer() || e.get<std::int64_t>() < 2)
          throw schema_error("experiment.topology_sizes", "entries must be integers >= 2");
        ep.topology_sizes.push_back(e.get<std::int64_t>());
      }
    }
  }
  {
    json v = take(exp, "users_sweep");
    if (!v.is_null()) {
      if (!v.is_array() || v.empty()) throw schema_error("experiment.users_sweep", "expected a non-empty array");
      ep.users_sweep.clear();
      for (const auto& e : v) {
        if (!e.is_number_integer() || e.get<std::int64_t>() < 1)
          throw schema_error("experiment.users_sweep", "entries must be integers >= 1");
        ep.users_sweep.push_back(e.get<std::int64_t>());
      }
    }
  }
  {
    json v = take(exp, "objectives");
    if (!v.is_null()) {
      if (!v.is_array() || v.empty()) throw schema_error("experiment.objectives", "expected a non-empty array");
      ep.objectives.clear();
      for (const auto& e : v) {
        if (!e.is_string()) throw schema_error("experiment.objectives", "entries must be strings");
        try {
          ep.objectives.push_back(objective_from_name(e.get<std::string>()));
        } catch (const MumeError&) {
          throw schema_error("experiment.objectives", "unknown objective '" + e.get<std::string>() + "'");
        }
      }
    }
  }
  ep.num_seeds = read_int(exp, "experiment", "num_seeds", ep.num_seeds, 1, 1000000);
  ep.alpha = read_number(exp, "experiment", "alpha", ep.alpha, 1e-9, 0.999999);
  ep.budget_ms = read_number(exp, "experiment", "budget_ms", ep.budget_ms, 0.0, 1e12);
  reject_leftovers(exp, "experiment");

  json pol = section_or_empty(doc, "policy");
  cfg.policy_params.name = read_string(pol, "policy", "name", cfg.policy_params.name);
  {
    json v = take(pol, "params");
    if (!v.is_null()) {
      if (!v.is_object()) throw schema_error("policy.params", "expected a mapping");
      cfg.policy_params.params = v;  // free-form, interpreted by the policy factory
    }
  }
  reject_leftovers(pol, "policy");

  reject_leftovers(doc, "");

  if (ep.users_sweep.empty())
    for (std::int64_t u = 2; u <= 20; ++u) ep.users_sweep.push_back(u);

  if (tp.cap_sentinel <= 0.0) {
    std::int64_t max_users = cfg.sg_params.users;
    for (std::int64_t u : ep.users_sweep) max_users = std::max(max_users, u);
    tp.cap_sentinel = 10.0 * concert_comm_rate_upper_bound(max_users);
  }
  return cfg;
}

BaseConfig load_config(const std::string& path,
                       const std::map<std::string, std::string>& overrides) {
  json doc = json::object();
  if (!path.empty()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    doc = parse_config_text(buffer.str(), path);
  }
  for (const auto& [key, value] : overrides) apply_override(doc, key, value);
  return config_from_json(doc);
}

json BaseConfig::to_json() const {
  json doc;
  doc["simulation"] = {
      {"horizon_ms", simulation_horizon_ms},
      {"time_resolution_us", time_resolution_us},
      {"master_seed", master_seed},
      {"log_level", log_level_name(log_level)},
      {"output_dir", output_dir},
      {"packet_interval_ms", packet_interval_ms},
      {"metric_sample_interval_ms", metric_sample_interval_ms},
  };
  const TopologyParams& tp = topology_params;
  doc["topology"] = {
      {"n", tp.n},
      {"rho", tp.rho},
      {"comm_cap_range", range_to_json(tp.comm_cap_range)},
      {"comm_cost_range", range_to_json(tp.comm_cost_range)},
      {"ram_cap_range", range_to_json(tp.ram_cap_range)},
      {"ram_cost_range", range_to_json(tp.ram_cost_range)},
      {"cpu_cap_range", range_to_json(tp.cpu_cap_range)},
      {"cpu_cost_range", range_to_json(tp.cpu_cost_range)},
      {"comp_percentage", tp.comp_percentage},
      {"comp_nodes_range", range_to_json(tp.comp_nodes_range)},
      {"cap_sentinel", tp.cap_sentinel},
      {"max_connect_retries", tp.max_connect_retries},
  };
  doc["service_graph"] = {
      {"users", sg_params.users},
      {"deadline_ms", sg_params.deadline_ms},
  };
  doc["impairments"] = {
      {"jitter_sigma_us", impairment_params.jitter_sigma_us},
      {"loss_p_gb", impairment_params.loss_p_gb},
      {"loss_p_bg", impairment_params.loss_p_bg},
      {"loss_h", impairment_params.loss_h},
  };
  doc["latency"] = {
      {"comm_prop_ms", range_to_json(latency_params.comm_prop_ms)},
      {"kappa_proc", latency_params.kappa_proc},
  };
  doc["solver"] = {
      {"mip_gap", solver_params.mip_gap},
      {"feas_tol", solver_params.feas_tol},
      {"time_limit_ms", solver_params.time_limit_ms},
      {"backend", backend_name(solver_params.backend)},
      {"brute_force_budget", solver_params.brute_force_budget},
  };
  json objectives = json::array();
  for (ObjectiveKind o : experiment_params.objectives) objectives.push_back(objective_name(o));
  doc["experiment"] = {
      {"topology_sizes", experiment_params.topology_sizes},
      {"users_sweep", experiment_params.users_sweep},
      {"objectives", objectives},
      {"num_seeds", experiment_params.num_seeds},
      {"alpha", experiment_params.alpha},
      {"budget_ms", experiment_params.budget_ms},
  };
  doc["policy"] = {
      {"name", policy_params.name},
      {"params", policy_params.params},
  };
  return doc;
}

std::string archive_config(const BaseConfig& cfg, const std::string& run_dir) {
  std::error_code ec;
  fs::create_directories(run_dir, ec);
  const fs::path out = fs::path(run_dir) / "config.resolved.json";
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) throw io_error("cannot write " + out.string());
  file << cfg.to_json().dump(2) << "\n";
  if (!file.good()) throw io_error("short write to " + out.string());
  return out.string();
}

}  // namespace mumenet
