#ifndef MUMENET_SOLVER_HPP
#define MUMENET_SOLVER_HPP

#include <cstdint>
#include <string>

#include "mumenet/lp.hpp"
#include "mumenet/milp.hpp"

namespace mumenet {

enum class SolveStatus { Optimal, Feasible, Infeasible, TimeLimit };

const char* solve_status_name(SolveStatus s);

struct SolveStats {
  std::int64_t nodes = 0;
  std::int64_t simplex_iterations = 0;
  std::int64_t states_enumerated = 0;  // brute-force leaves visited
  double wall_ms = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  bool has_solution = false;
  EmbeddingSolution solution;
  double objective = kInf;
  double bound = -kInf;  // proven lower bound (min sense)
  double gap = kInf;
  SolveStats stats;
};

/// Exact solver: best-first branch and bound on fractional flow variables
/// (most-fractional branching, ties by variable order = commodity id then
/// link id), warm-started from the greedy incumbent.
SolveResult branch_and_bound(const CloudNetworkGraph& g, const ServiceGraph& sg,
                             ObjectiveKind objective, const LatencyParams& latency,
                             const SolverParams& params);

struct BruteForceOptions {
  std::int64_t budget = 10000000;
  bool prune = true;  // admissible pruning only; optimum unchanged
  int max_hops = 16;  // simple-path depth bound in the communication plane
};

/// Ground-truth oracle: enumerates processor placements and per-commodity
/// simple paths in lexicographic order, validating candidates against the
/// full constraint set. Throws BudgetExceeded when the instance-size gate
/// (placements x product of per-commodity path counts) exceeds the budget.
SolveResult brute_force(const CloudNetworkGraph& g, const ServiceGraph& sg,
                        ObjectiveKind objective, const LatencyParams& latency,
                        const BruteForceOptions& options = {});

/// One-pass heuristic: places processors in topological order at the
/// computation node with the lowest incremental objective, then routes each
/// commodity on a deadline-feasible least-marginal-cost path. Overlapping an
/// object already flowing on a link costs nothing. No backtracking.
SolveResult greedy_embed(const CloudNetworkGraph& g, const ServiceGraph& sg,
                         ObjectiveKind objective, const LatencyParams& latency);

/// External bridge: exports the model as an LP file, invokes
/// `solver_cmd <model.lp> <solution.out>` and reads the assignment back.
/// Exit code 0 means solved, 3 means proven infeasible, anything else is an
/// ExternalSolverError. The command defaults to $MUMENET_EXT_SOLVER.
SolveResult solve_external(const CloudNetworkGraph& g, const ServiceGraph& sg,
                           ObjectiveKind objective, const LatencyParams& latency,
                           const SolverParams& params, const std::string& solver_cmd,
                           const std::string& work_dir);

/// Dispatches on the configured backend.
SolveResult solve_embedding(const CloudNetworkGraph& g, const ServiceGraph& sg,
                            ObjectiveKind objective, const BaseConfig& cfg);

struct CrossCheck {
  bool mismatch = false;
  std::string detail;
};

/// Flags disagreement between two solver results on the same instance
/// (status conflict, or objectives apart by more than the gap tolerance).
CrossCheck cross_check(const SolveResult& a, const SolveResult& b, double tolerance);

}  // namespace mumenet

#endif
