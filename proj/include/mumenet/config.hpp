#ifndef MUMENET_CONFIG_HPP
#define MUMENET_CONFIG_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace mumenet {

enum class LogLevel { Error, Warn, Info, Debug, Trace };

/// Closed interval for uniform draws.
struct UniformRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

struct TopologyParams {
  std::int64_t n = 8;
  double rho = 0.7;
  UniformRange comm_cap_range{1000.0, 3000.0};
  UniformRange comm_cost_range{10.0, 30.0};
  UniformRange ram_cap_range{1000.0, 3000.0};
  UniformRange ram_cost_range{10.0, 25.0};
  UniformRange cpu_cap_range{1000.0, 2000.0};
  UniformRange cpu_cost_range{10.0, 25.0};
  double comp_percentage = 0.7;
  IntRange comp_nodes_range{1, 3};
  /// Capacity written on source/destination links; resolved at load time so
  /// it exceeds any demand the configured service graphs can generate.
  double cap_sentinel = 0.0;
  std::int64_t max_connect_retries = 1000;
};

struct SgParams {
  std::int64_t users = 2;
  double deadline_ms = 100.0;
};

struct ImpairmentParams {
  double jitter_sigma_us = 0.0;
  double loss_p_gb = 0.0;   // good -> bad transition probability
  double loss_p_bg = 0.0;   // bad -> good transition probability
  double loss_h = 0.0;      // drop probability while in the bad state
};

struct LatencyParams {
  UniformRange comm_prop_ms{0.5, 2.0};
  /// Per-unit processing latency scale: delay_ms = kappa * R_prod / capacity.
  double kappa_proc = 1.0;
};

enum class SolverBackend { InternalBnb, BruteForce, Greedy, ExternalLpFile };

struct SolverParams {
  double mip_gap = 1e-6;
  double feas_tol = 1e-7;
  double time_limit_ms = 600000.0;
  SolverBackend backend = SolverBackend::InternalBnb;
  std::int64_t brute_force_budget = 10000000;
};

enum class ObjectiveKind { MinCost, LoadBalance };

const char* objective_name(ObjectiveKind kind);
ObjectiveKind objective_from_name(const std::string& name);

struct ExperimentParams {
  std::vector<std::int64_t> topology_sizes{8, 16};
  std::vector<std::int64_t> users_sweep;  // default 2..20, filled at load
  std::vector<ObjectiveKind> objectives{ObjectiveKind::MinCost, ObjectiveKind::LoadBalance};
  std::int64_t num_seeds = 100;
  double alpha = 0.05;
  double budget_ms = 600000.0;  // per-instance solver budget
};

struct PolicyParams {
  std::string name = "milp-mincost";
  nlohmann::json params = nlohmann::json::object();
};

struct BaseConfig {
  double simulation_horizon_ms = 2000.0;
  std::int64_t time_resolution_us = 1;
  std::uint64_t master_seed = 1;
  LogLevel log_level = LogLevel::Warn;
  std::string output_dir = "out";
  double packet_interval_ms = 10.0;
  double metric_sample_interval_ms = 100.0;

  TopologyParams topology_params;
  SgParams sg_params;
  ImpairmentParams impairment_params;
  LatencyParams latency_params;
  SolverParams solver_params;
  ExperimentParams experiment_params;
  PolicyParams policy_params;

  nlohmann::json to_json() const;
};

/// Loads and validates a config file (YAML or JSON, decided by content).
/// Overrides are dotted paths ("topology.n" -> "16") applied after file
/// values. Empty path loads pure defaults. Unknown keys are errors.
BaseConfig load_config(const std::string& path,
                       const std::map<std::string, std::string>& overrides = {});

/// Validates an already-parsed config document (JSON form).
BaseConfig config_from_json(const nlohmann::json& doc);

/// Writes the fully resolved config as canonical JSON (sorted keys) to
/// `<run_dir>/config.resolved.json` and returns the written path.
/// Archiving output is a fixpoint: re-loading and re-archiving the file
/// reproduces it byte for byte.
std::string archive_config(const BaseConfig& cfg, const std::string& run_dir);

}  // namespace mumenet

#endif
