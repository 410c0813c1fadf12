#include "mumenet/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <sstream>

#include "mumenet/errors.hpp"

namespace mumenet {

const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::TimeLimit: return "time_limit";
  }
  return "?";
}

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

struct BnbNode {
  double bound = -kInf;
  std::int64_t id = 0;
  std::vector<std::pair<std::int32_t, std::int8_t>> fixings;  // (var, value)
};

struct NodeOrder {
  bool operator()(const BnbNode& a, const BnbNode& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
    return a.id > b.id;
  }
};

}  // namespace

SolveResult branch_and_bound(const CloudNetworkGraph& g, const ServiceGraph& sg,
                             ObjectiveKind objective, const LatencyParams& latency,
                             const SolverParams& params) {
  const double t_start = now_ms();
  SolveResult result;

  MilpModel model = build_model(g, sg, objective, latency);
  const double int_tol = std::max(1e-6, params.feas_tol);

  // Greedy incumbent seeds the search.
  SolveResult greedy = greedy_embed(g, sg, objective, latency);
  if (greedy.has_solution) {
    const ValidationReport check =
        validate_solution(g, sg, greedy.solution, latency, params.feas_tol);
    if (check.pass()) {
      result.has_solution = true;
      result.solution = greedy.solution;
      result.objective = greedy.solution.objective;
    }
  }

  auto finish = [&](SolveStatus status, double bound) {
    result.status = status;
    result.bound = bound;
    if (result.has_solution) {
      result.gap = (result.objective - bound) / std::max(1.0, std::abs(result.objective));
      if (result.gap < 0) result.gap = 0;
    }
    result.stats.wall_ms = now_ms() - t_start;
    return result;
  };

  if (params.time_limit_ms <= 0.0)
    return finish(SolveStatus::TimeLimit, result.has_solution ? -kInf : kInf);

  std::vector<std::int32_t> binaries;
  for (std::size_t j = 0; j < model.vars.size(); ++j)
    if (model.vars[j].is_integer) binaries.push_back(static_cast<std::int32_t>(j));

  LpProblem relax = lp_relaxation(model);
  SimplexOptions lp_opt;
  lp_opt.feas_tol = params.feas_tol;
  RevisedSimplex simplex(relax, lp_opt);

  auto solve_node_lp = [&](const BnbNode& node, LpResult& lp) {
    for (std::int32_t j : binaries) simplex.reset_var_bounds(j);
    for (const auto& [var, value] : node.fixings)
      simplex.set_var_bounds(var, static_cast<double>(value), static_cast<double>(value));
    const double remaining = params.time_limit_ms - (now_ms() - t_start);
    if (remaining <= 0) return false;
    simplex.set_time_limit_ms(remaining);
    lp = simplex.solve(/*warm=*/true);
    result.stats.simplex_iterations = simplex.total_iterations();
    if (lp.status == LpStatus::Numerical && model.cons.size() <= 1500) {
      // Rational fallback on a bound-adjusted copy of the relaxation.
      LpProblem exact = relax;
      for (const auto& [var, value] : node.fixings) {
        exact.lb[static_cast<std::size_t>(var)] = value;
        exact.ub[static_cast<std::size_t>(var)] = value;
      }
      lp = solve_lp_exact(exact);
    }
    if (lp.status == LpStatus::Numerical)
      throw MumeError(ErrorCode::Numerical, "LP relaxation failed numerically");
    return true;
  };

  std::priority_queue<BnbNode, std::vector<BnbNode>, NodeOrder> open;
  std::int64_t next_id = 0;
  open.push({-kInf, next_id++, {}});
  double best_open_bound = -kInf;
  bool timed_out = false;

  while (!open.empty()) {
    if (now_ms() - t_start > params.time_limit_ms) { timed_out = true; break; }
    BnbNode node = open.top();
    open.pop();
    best_open_bound = node.bound;
    if (result.has_solution &&
        node.bound >= result.objective - 1e-9 * std::max(1.0, std::abs(result.objective)))
      continue;  // cannot improve

    LpResult lp;
    if (!solve_node_lp(node, lp)) { timed_out = true; open.push(node); break; }
    ++result.stats.nodes;
    if (lp.status == LpStatus::Infeasible) continue;
    if (lp.status != LpStatus::Optimal) { timed_out = true; open.push(node); break; }

    const double bound = std::max(node.bound, lp.objective);
    if (result.has_solution &&
        bound >= result.objective - 1e-9 * std::max(1.0, std::abs(result.objective)))
      continue;

    // Most fractional binary; ties resolved by variable order, which is
    // commodity-major then link-major by construction.
    std::int32_t branch_var = -1;
    double best_frac = int_tol;
    for (std::int32_t j : binaries) {
      const double v = lp.x[static_cast<std::size_t>(j)];
      const double frac = std::min(v, 1.0 - v);
      if (frac > best_frac + 1e-12) {
        best_frac = frac;
        branch_var = j;
      }
    }

    if (branch_var < 0) {
      // Integral relaxation: candidate incumbent.
      EmbeddingSolution candidate;
      try {
        candidate = extract_embedding(model, g, sg, lp.x, latency, int_tol);
      } catch (const MumeError&) {
        continue;  // defective integral point; drop the node
      }
      const ValidationReport check = validate_solution(g, sg, candidate, latency, params.feas_tol);
      if (!check.pass()) continue;
      if (!result.has_solution || candidate.objective < result.objective) {
        result.has_solution = true;
        result.solution = std::move(candidate);
        result.objective = result.solution.objective;
      }
      continue;
    }

    BnbNode up{bound, next_id++, node.fixings};
    up.fixings.emplace_back(branch_var, 1);
    BnbNode down{bound, next_id++, std::move(node.fixings)};
    down.fixings.emplace_back(branch_var, 0);
    open.push(std::move(up));
    open.push(std::move(down));
  }

  double final_bound;
  if (open.empty() && !timed_out) {
    final_bound = result.has_solution ? result.objective : kInf;
    if (!result.has_solution) return finish(SolveStatus::Infeasible, final_bound);
    return finish(SolveStatus::Optimal, final_bound);
  }
  // Interrupted: the sharpest proven bound is the best outstanding node's.
  final_bound = best_open_bound;
  if (!open.empty()) final_bound = std::min(final_bound, open.top().bound);
  if (result.has_solution) {
    const double gap =
        (result.objective - final_bound) / std::max(1.0, std::abs(result.objective));
    if (gap <= params.mip_gap) return finish(SolveStatus::Optimal, final_bound);
    return finish(timed_out ? SolveStatus::TimeLimit : SolveStatus::Feasible, final_bound);
  }
  return finish(SolveStatus::TimeLimit, final_bound);
}

SolveResult solve_embedding(const CloudNetworkGraph& g, const ServiceGraph& sg,
                            ObjectiveKind objective, const BaseConfig& cfg) {
  switch (cfg.solver_params.backend) {
    case SolverBackend::InternalBnb:
      return branch_and_bound(g, sg, objective, cfg.latency_params, cfg.solver_params);
    case SolverBackend::BruteForce: {
      BruteForceOptions opt;
      opt.budget = cfg.solver_params.brute_force_budget;
      return brute_force(g, sg, objective, cfg.latency_params, opt);
    }
    case SolverBackend::Greedy:
      return greedy_embed(g, sg, objective, cfg.latency_params);
    case SolverBackend::ExternalLpFile: {
      const char* cmd = std::getenv("MUMENET_EXT_SOLVER");
      if (!cmd || !*cmd)
        throw MumeError(ErrorCode::ExternalSolver, "MUMENET_EXT_SOLVER is not set");
      return solve_external(g, sg, objective, cfg.latency_params, cfg.solver_params, cmd,
                            cfg.output_dir);
    }
  }
  throw MumeError(ErrorCode::Internal, "unknown solver backend");
}

CrossCheck cross_check(const SolveResult& a, const SolveResult& b, double tolerance) {
  CrossCheck out;
  const bool a_feasible = a.has_solution;
  const bool b_feasible = b.has_solution;
  if (a.status == SolveStatus::Infeasible && b_feasible) {
    out.mismatch = true;
    out.detail = "first result proves infeasible, second found a solution";
    return out;
  }
  if (b.status == SolveStatus::Infeasible && a_feasible) {
    out.mismatch = true;
    out.detail = "second result proves infeasible, first found a solution";
    return out;
  }
  if (a.status == SolveStatus::Optimal && b.status == SolveStatus::Optimal) {
    const double drift = std::abs(a.objective - b.objective);
    if (drift > tolerance * std::max(1.0, std::abs(a.objective))) {
      std::ostringstream os;
      os << "optimal objectives diverge: " << a.objective << " vs " << b.objective;
      out.mismatch = true;
      out.detail = os.str();
    }
  }
  return out;
}

}  // namespace mumenet
