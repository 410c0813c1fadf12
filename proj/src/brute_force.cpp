#include <algorithm>
#include <chrono>
#include <cmath>

#include "mumenet/errors.hpp"
#include "mumenet/solver.hpp"

namespace mumenet {

namespace {

/// All simple paths (as communication-link sequences) between communication
/// nodes, enumerated lexicographically by link id. paths[a][b] includes the
/// empty path when a == b.
std::vector<std::vector<std::vector<std::vector<LinkId>>>> enumerate_comm_paths(
    const CloudNetworkGraph& g, int max_hops) {
  const auto comm = g.nodes_of_kind(NodeKind::Communication);
  const auto n = static_cast<std::size_t>(g.num_nodes());
  std::vector<std::vector<std::vector<std::vector<LinkId>>>> paths(
      n, std::vector<std::vector<std::vector<LinkId>>>(n));

  for (NodeId a : comm) {
    std::vector<bool> visited(n, false);
    std::vector<LinkId> stack;
    auto dfs = [&](auto&& self, NodeId at, int depth) -> void {
      paths[static_cast<std::size_t>(a)][static_cast<std::size_t>(at)].push_back(stack);
      if (depth >= max_hops) return;
      visited[static_cast<std::size_t>(at)] = true;
      for (LinkId e : g.out_links[static_cast<std::size_t>(at)]) {
        const Link& link = g.link(e);
        if (link.kind != LinkKind::Communication) continue;
        if (visited[static_cast<std::size_t>(link.head)]) continue;
        stack.push_back(e);
        self(self, link.head, depth + 1);
        stack.pop_back();
      }
      visited[static_cast<std::size_t>(at)] = false;
    };
    dfs(dfs, a, 0);
  }
  return paths;
}

struct Candidate {
  std::vector<std::vector<LinkId>> paths;  // full paths, lexicographic order
};

}  // namespace

SolveResult brute_force(const CloudNetworkGraph& g, const ServiceGraph& sg,
                        ObjectiveKind objective, const LatencyParams& latency,
                        const BruteForceOptions& options) {
  const auto t_start = std::chrono::steady_clock::now();
  SolveResult result;
  const RateTable rate{};

  const std::vector<NodeId> comp_nodes = g.nodes_of_kind(NodeKind::Computation);
  std::vector<FunctionId> placeable;  // processors with outputs
  for (const FunctionNode& f : sg.functions)
    if (f.role == FunctionRole::Processor && !sg.outputs_of(f.id).empty())
      placeable.push_back(f.id);
  const bool needs_compute =
      !placeable.empty() ||
      std::any_of(sg.commodities.begin(), sg.commodities.end(), [&sg](const Commodity& k) {
        return sg.function(k.consumer).role == FunctionRole::Processor;
      });
  if (needs_compute && comp_nodes.empty()) {
    result.status = SolveStatus::Infeasible;
    return result;
  }

  const auto comm_paths = enumerate_comm_paths(g, options.max_hops);

  // Placement ownership per function for quick lookup.
  std::vector<int> placement_slot(sg.functions.size(), -1);
  for (std::size_t s = 0; s < placeable.size(); ++s)
    placement_slot[static_cast<std::size_t>(placeable[s])] = static_cast<int>(s);

  std::vector<std::size_t> assignment(placeable.size(), 0);
  std::size_t num_assignments = 1;
  for (std::size_t s = 0; s < placeable.size(); ++s) {
    if (num_assignments > static_cast<std::size_t>(options.budget))
      throw MumeError(ErrorCode::BudgetExceeded, "placement space exceeds the enumeration budget");
    num_assignments *= comp_nodes.size();
  }

  // Build per-commodity candidate paths for one placement assignment.
  auto candidates_for = [&](std::vector<Candidate>& cand) -> bool {
    cand.assign(sg.commodities.size(), {});
    for (const Commodity& k : sg.commodities) {
      std::vector<LinkId> prefix;
      NodeId start_comm = -1;
      if (k.kind == CommodityKind::Source) {
        const NodeId anchor = sg.function(k.producer).anchor;
        const NodeId leaf = g.source_leaf_of(anchor);
        prefix.push_back(g.out_links[static_cast<std::size_t>(leaf)].front());
        start_comm = anchor;
      } else {
        const int slot = placement_slot[static_cast<std::size_t>(k.producer)];
        const NodeId comp = comp_nodes[assignment[static_cast<std::size_t>(slot)]];
        prefix.push_back(g.computation_out_link(comp));
        start_comm = g.node(comp).attachment;
      }

      auto& list = cand[static_cast<std::size_t>(k.id)].paths;
      auto append_with_end = [&](NodeId end_comm, LinkId suffix) {
        for (const auto& mid :
             comm_paths[static_cast<std::size_t>(start_comm)][static_cast<std::size_t>(end_comm)]) {
          std::vector<LinkId> full = prefix;
          full.insert(full.end(), mid.begin(), mid.end());
          full.push_back(suffix);
          list.push_back(std::move(full));
        }
      };

      const FunctionNode& consumer = sg.function(k.consumer);
      if (consumer.role == FunctionRole::Destination) {
        const NodeId leaf = g.destination_leaf_of(consumer.anchor);
        append_with_end(consumer.anchor, g.in_links[static_cast<std::size_t>(leaf)].front());
      } else if (placement_slot[static_cast<std::size_t>(k.consumer)] >= 0) {
        const int slot = placement_slot[static_cast<std::size_t>(k.consumer)];
        const NodeId comp = comp_nodes[assignment[static_cast<std::size_t>(slot)]];
        append_with_end(g.node(comp).attachment, g.computation_in_link(comp));
      } else {
        // Consumer produces nothing: the commodity may terminate at any
        // computation node.
        for (NodeId comp : comp_nodes)
          append_with_end(g.node(comp).attachment, g.computation_in_link(comp));
      }
      if (list.empty()) return false;
    }
    return true;
  };

  // Instance-size gate: total leaves across all assignments.
  {
    double total_work = 0.0;
    std::vector<Candidate> cand;
    std::fill(assignment.begin(), assignment.end(), 0);
    for (std::size_t a = 0; a < num_assignments; ++a) {
      if (candidates_for(cand)) {
        double product = 1.0;
        for (const Candidate& c : cand) {
          product *= static_cast<double>(c.paths.size());
          if (product > 1e18) break;
        }
        total_work += product;
      }
      // advance mixed-radix counter
      for (std::size_t s = 0; s < assignment.size(); ++s) {
        if (++assignment[s] < comp_nodes.size()) break;
        assignment[s] = 0;
      }
      if (total_work > static_cast<double>(options.budget))
        throw MumeError(ErrorCode::BudgetExceeded, "path enumeration exceeds the configured budget");
    }
  }

  // Search state shared across assignments.
  const auto num_links = g.num_links();
  const auto num_objects = sg.objects.size();
  std::vector<std::vector<double>> mu_obj(num_links, std::vector<double>(num_objects, 0.0));
  std::vector<double> mu(num_links, 0.0);
  std::vector<std::vector<LinkId>> chosen(sg.commodities.size());
  double best_objective = kInf;
  std::vector<std::vector<LinkId>> best_paths;
  std::int64_t visited = 0;

  std::vector<Candidate> cand;
  std::fill(assignment.begin(), assignment.end(), 0);

  for (std::size_t a = 0; a < num_assignments; ++a) {
    const bool ok = candidates_for(cand);
    if (ok) {
      struct Frame {
        double cost;
        double peak;
      };
      // Depth-first over commodities in id order, paths in lexicographic
      // order; pruning is admissible so the first best stays the best.
      auto dfs = [&](auto&& self, std::size_t k_idx, double cost, double peak) -> void {
        if (++visited > options.budget * 4)
          throw MumeError(ErrorCode::BudgetExceeded, "search state budget exhausted");
        if (options.prune) {
          const double partial = objective == ObjectiveKind::MinCost ? cost : peak;
          if (partial >= best_objective) return;
        }
        if (k_idx == sg.commodities.size()) {
          EmbeddingSolution sol = embedding_from_paths(g, sg, chosen, objective, latency);
          // Deadlines and full constraint re-check.
          const ValidationReport check = validate_solution(g, sg, sol, latency, 1e-9);
          if (!check.pass()) return;
          if (sol.objective < best_objective) {
            best_objective = sol.objective;
            best_paths = chosen;
          }
          return;
        }
        const Commodity& k = sg.commodities[k_idx];
        for (const auto& path : cand[k_idx].paths) {
          double new_cost = cost;
          double new_peak = peak;
          bool fits = true;
          std::vector<std::pair<LinkId, double>> touched;  // link, previous mu_obj
          for (LinkId e : path) {
            const Link& link = g.link(e);
            const double need = rate(k, link);
            double& cur = mu_obj[static_cast<std::size_t>(e)][static_cast<std::size_t>(k.object)];
            if (need > cur) {
              const double extra = need - cur;
              if (mu[static_cast<std::size_t>(e)] + extra > link.capacity + 1e-9) {
                fits = false;
                break;
              }
              touched.emplace_back(e, cur);
              mu[static_cast<std::size_t>(e)] += extra;
              cur = need;
              new_cost += extra * link.cost;
              if (link.kind != LinkKind::Source && link.kind != LinkKind::Destination)
                new_peak = std::max(new_peak, mu[static_cast<std::size_t>(e)] / link.capacity);
            }
          }
          if (fits) {
            chosen[k_idx] = path;
            self(self, k_idx + 1, new_cost, new_peak);
            chosen[k_idx].clear();
          }
          for (auto it = touched.rbegin(); it != touched.rend(); ++it) {
            double& cur = mu_obj[static_cast<std::size_t>(it->first)][static_cast<std::size_t>(k.object)];
            mu[static_cast<std::size_t>(it->first)] -= cur - it->second;
            cur = it->second;
          }
        }
      };
      dfs(dfs, 0, 0.0, 0.0);
    }
    for (std::size_t s = 0; s < assignment.size(); ++s) {
      if (++assignment[s] < comp_nodes.size()) break;
      assignment[s] = 0;
    }
    if (assignment.empty()) break;  // single (empty) placement assignment
  }

  result.stats.states_enumerated = visited;
  result.stats.wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t_start)
                             .count();
  if (best_objective == kInf) {
    result.status = SolveStatus::Infeasible;
    return result;
  }
  result.status = SolveStatus::Optimal;
  result.has_solution = true;
  result.solution = embedding_from_paths(g, sg, best_paths, objective, latency);
  result.objective = result.solution.objective;
  result.bound = result.objective;
  result.gap = 0.0;
  return result;
}

}  // namespace mumenet
