#include "mumenet/milp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "mumenet/errors.hpp"

namespace mumenet {

using nlohmann::json;

double RateTable::operator()(const Commodity& k, const Link& link) const {
  switch (link.kind) {
    case LinkKind::Source:
    case LinkKind::ComputationOut:
      return k.rates.prod;
    case LinkKind::Communication:
      return k.rates.comm;
    case LinkKind::ComputationIn:
    case LinkKind::Destination:
      return k.rates.cons;
  }
  return 0.0;
}

std::int64_t LatencyTable::operator()(const Commodity& k, const Link& link) const {
  switch (link.kind) {
    case LinkKind::Communication:
      return link.prop_latency_us;
    case LinkKind::ComputationOut: {
      const double ms = kappa_proc_ms * k.rates.prod / link.capacity;
      return std::llround(ms * 1000.0);
    }
    default:
      return 0;
  }
}

bool commodity_link_legal(const CloudNetworkGraph& g, const ServiceGraph& sg,
                          const Commodity& k, const Link& link) {
  switch (link.kind) {
    case LinkKind::Communication:
      return true;
    case LinkKind::Source: {
      if (k.kind != CommodityKind::Source) return false;
      const NodeId anchor = sg.function(k.producer).anchor;
      return anchor >= 0 && link.tail == g.source_leaf_of(anchor);
    }
    case LinkKind::Destination: {
      if (k.kind != CommodityKind::Destination) return false;
      const NodeId anchor = sg.function(k.consumer).anchor;
      return anchor >= 0 && link.head == g.destination_leaf_of(anchor);
    }
    case LinkKind::ComputationOut:
      return k.kind != CommodityKind::Source;
    case LinkKind::ComputationIn:
      return sg.function(k.consumer).role == FunctionRole::Processor;
  }
  return false;
}

namespace {

std::int64_t deadline_us(const Commodity& k) { return std::llround(k.deadline_ms * 1000.0); }

std::string var_name(const VarRef& ref) {
  std::ostringstream os;
  switch (ref.kind) {
    case VarKind::Flow: os << "f_k" << ref.commodity << "_e" << ref.link; break;
    case VarKind::ObjectFlow: os << "muo_o" << ref.object << "_e" << ref.link; break;
    case VarKind::LinkFlow: os << "mu_e" << ref.link; break;
    case VarKind::LocalLatency: os << "lk_k" << ref.commodity; break;
    case VarKind::CumLatency: os << "lt_k" << ref.commodity; break;
    case VarKind::UtilBound: os << "Z"; break;
  }
  return os.str();
}

}  // namespace

std::size_t MilpModel::num_binaries() const {
  std::size_t n = 0;
  for (const Variable& v : vars) n += v.is_integer ? 1 : 0;
  return n;
}

std::map<std::string, std::size_t> MilpModel::tag_census() const {
  std::map<std::string, std::size_t> census;
  for (const Constraint& c : cons) ++census[c.tag];
  census["eq16"] = vars.size();
  return census;
}

MilpModel build_model(const CloudNetworkGraph& g, const ServiceGraph& sg,
                      ObjectiveKind objective, const LatencyParams& latency) {
  MilpModel m;
  m.objective_kind = objective;
  const auto num_links = static_cast<std::int32_t>(g.num_links());
  const auto num_commodities = static_cast<std::int32_t>(sg.commodities.size());
  const auto num_objects = static_cast<std::int32_t>(sg.objects.size());
  const RateTable rate{};
  const LatencyTable lat{latency.kappa_proc};

  const std::vector<NodeId> comp_nodes = g.nodes_of_kind(NodeKind::Computation);

  // Anchor sanity: the referenced leaves must exist in the graph.
  for (const FunctionNode& f : sg.functions) {
    if (f.role == FunctionRole::Processor) continue;
    if (f.anchor < 0 || f.anchor >= static_cast<NodeId>(g.num_nodes()) ||
        g.node(f.anchor).kind != NodeKind::Communication)
      throw MumeError(ErrorCode::Model, "function " + f.label + " anchor missing from graph");
    if (f.role == FunctionRole::Source && g.source_leaf_of(f.anchor) < 0)
      throw MumeError(ErrorCode::Model, "no source leaf at anchor of " + f.label);
    if (f.role == FunctionRole::Destination && g.destination_leaf_of(f.anchor) < 0)
      throw MumeError(ErrorCode::Model, "no destination leaf at anchor of " + f.label);
  }
  for (const Commodity& k : sg.commodities)
    if (k.kind != CommodityKind::Source && comp_nodes.empty())
      throw MumeError(ErrorCode::Model,
                      "commodity " + std::to_string(k.id) + " has no legal production site");

  auto add_var = [&m](VarRef ref, double lb, double ub, bool integer) {
    const auto idx = static_cast<std::int32_t>(m.vars.size());
    m.vars.push_back({var_name(ref), lb, ub, integer, ref});
    return idx;
  };

  // Flow variables on legal (commodity, link) pairs.
  m.flow_var.assign(num_commodities, std::vector<std::int32_t>(num_links, -1));
  for (const Commodity& k : sg.commodities)
    for (const Link& e : g.links)
      if (commodity_link_legal(g, sg, k, e))
        m.flow_var[k.id][e.id] = add_var({VarKind::Flow, k.id, e.id, -1}, 0.0, 1.0, true);

  // Per-object and total flows only where some commodity may appear.
  m.object_var.assign(num_objects, std::vector<std::int32_t>(num_links, -1));
  m.link_var.assign(num_links, -1);
  for (const Commodity& k : sg.commodities)
    for (LinkId e = 0; e < num_links; ++e)
      if (m.flow_var[k.id][e] >= 0 && m.object_var[k.object][e] < 0)
        m.object_var[k.object][e] = 1;  // mark; allocate in object order below
  for (ObjectId o = 0; o < num_objects; ++o)
    for (LinkId e = 0; e < num_links; ++e)
      if (m.object_var[o][e] > 0)
        m.object_var[o][e] = add_var({VarKind::ObjectFlow, -1, e, o}, 0.0, g.link(e).capacity, false);
      else
        m.object_var[o][e] = -1;
  for (LinkId e = 0; e < num_links; ++e) {
    bool used = false;
    for (ObjectId o = 0; o < num_objects && !used; ++o) used = m.object_var[o][e] >= 0;
    if (used) m.link_var[e] = add_var({VarKind::LinkFlow, -1, e, -1}, 0.0, g.link(e).capacity, false);
  }

  // Latency variables with finite never-binding upper bounds.
  std::int64_t max_deadline = 0;
  for (const Commodity& k : sg.commodities)
    if (k.kind == CommodityKind::Destination) max_deadline = std::max(max_deadline, deadline_us(k));
  m.local_latency_var.assign(num_commodities, -1);
  m.cum_latency_var.assign(num_commodities, -1);
  for (const Commodity& k : sg.commodities) {
    std::int64_t path_bound = 0;
    for (LinkId e = 0; e < num_links; ++e)
      if (m.flow_var[k.id][e] >= 0) path_bound += lat(k, g.link(e));
    m.local_latency_var[k.id] =
        add_var({VarKind::LocalLatency, k.id, -1, -1}, 0.0, static_cast<double>(path_bound), false);
  }
  // Cumulative latencies can stack across the whole chain.
  double cum_bound = static_cast<double>(max_deadline);
  for (const Commodity& k : sg.commodities) cum_bound += m.vars[m.local_latency_var[k.id]].ub;
  for (const Commodity& k : sg.commodities)
    m.cum_latency_var[k.id] = add_var({VarKind::CumLatency, k.id, -1, -1}, 0.0, cum_bound, false);

  if (objective == ObjectiveKind::LoadBalance)
    m.util_bound_var = add_var({VarKind::UtilBound, -1, -1, -1}, 0.0, 1.0, false);

  auto add_con = [&m](std::string name, std::vector<LinTerm> terms, Rel rel, double rhs,
                      const char* tag) {
    m.cons.push_back({std::move(name), std::move(terms), rel, rhs, tag});
  };

  // Flow conservation at every communication node, per commodity.
  for (const Node& v : g.nodes) {
    if (v.kind != NodeKind::Communication) continue;
    for (const Commodity& k : sg.commodities) {
      std::vector<LinTerm> terms;
      for (LinkId e : g.in_links[static_cast<std::size_t>(v.id)])
        if (m.flow_var[k.id][e] >= 0) terms.push_back({m.flow_var[k.id][e], 1.0});
      for (LinkId e : g.out_links[static_cast<std::size_t>(v.id)])
        if (m.flow_var[k.id][e] >= 0) terms.push_back({m.flow_var[k.id][e], -1.0});
      if (terms.empty()) continue;
      add_con("eq6_k" + std::to_string(k.id) + "_n" + std::to_string(v.id), std::move(terms),
              Rel::Eq, 0.0, "eq6");
    }
  }

  // Chaining: an output leaves a computation node iff each required input
  // enters it.
  for (NodeId p : comp_nodes) {
    const LinkId out = g.computation_out_link(p);
    const LinkId in = g.computation_in_link(p);
    for (const Commodity& k : sg.commodities) {
      if (k.kind == CommodityKind::Source) continue;
      for (CommodityId l : k.inputs) {
        add_con("eq7_k" + std::to_string(k.id) + "_l" + std::to_string(l) + "_p" + std::to_string(p),
                {{m.flow_var[k.id][out], 1.0}, {m.flow_var[l][in], -1.0}}, Rel::Eq, 0.0, "eq7");
      }
    }
  }

  // Source and destination fixing.
  for (const Commodity& k : sg.commodities) {
    if (k.kind == CommodityKind::Source) {
      const NodeId s = g.source_leaf_of(sg.function(k.producer).anchor);
      const LinkId e = g.out_links[static_cast<std::size_t>(s)].front();
      add_con("eq8_k" + std::to_string(k.id), {{m.flow_var[k.id][e], 1.0}}, Rel::Eq, 1.0, "eq8");
    } else if (k.kind == CommodityKind::Destination) {
      const NodeId d = g.destination_leaf_of(sg.function(k.consumer).anchor);
      const LinkId e = g.in_links[static_cast<std::size_t>(d)].front();
      add_con("eq9_k" + std::to_string(k.id), {{m.flow_var[k.id][e], 1.0}}, Rel::Eq, 1.0, "eq9");
    }
  }

  // Object flows dominate each commodity's rated flow; totals bounded by capacity.
  for (const Commodity& k : sg.commodities)
    for (LinkId e = 0; e < num_links; ++e) {
      const std::int32_t f = m.flow_var[k.id][e];
      if (f < 0) continue;
      add_con("eq10_k" + std::to_string(k.id) + "_e" + std::to_string(e),
              {{f, rate(k, g.link(e))}, {m.object_var[k.object][e], -1.0}}, Rel::Le, 0.0, "eq10");
    }
  for (LinkId e = 0; e < num_links; ++e) {
    if (m.link_var[e] < 0) continue;
    std::vector<LinTerm> terms;
    for (ObjectId o = 0; o < num_objects; ++o)
      if (m.object_var[o][e] >= 0) terms.push_back({m.object_var[o][e], 1.0});
    terms.push_back({m.link_var[e], -1.0});
    add_con("eq11_e" + std::to_string(e), std::move(terms), Rel::Le, 0.0, "eq11");
  }

  // Local latency identity and cumulative recursion.
  for (const Commodity& k : sg.commodities) {
    std::vector<LinTerm> terms;
    for (LinkId e = 0; e < num_links; ++e) {
      const std::int32_t f = m.flow_var[k.id][e];
      if (f < 0) continue;
      const auto l_us = lat(k, g.link(e));
      if (l_us != 0) terms.push_back({f, static_cast<double>(l_us)});
    }
    terms.push_back({m.local_latency_var[k.id], -1.0});
    add_con("eq12_k" + std::to_string(k.id), std::move(terms), Rel::Eq, 0.0, "eq12");
  }
  for (const Commodity& k : sg.commodities) {
    if (k.kind == CommodityKind::Source) {
      add_con("eq13_k" + std::to_string(k.id),
              {{m.cum_latency_var[k.id], 1.0}, {m.local_latency_var[k.id], -1.0}}, Rel::Eq, 0.0,
              "eq13");
    } else {
      for (CommodityId l : k.inputs)
        add_con("eq14_k" + std::to_string(k.id) + "_l" + std::to_string(l),
                {{m.cum_latency_var[k.id], 1.0},
                 {m.local_latency_var[k.id], -1.0},
                 {m.cum_latency_var[l], -1.0}},
                Rel::Ge, 0.0, "eq14");
    }
  }
  for (const Commodity& k : sg.commodities)
    if (k.kind == CommodityKind::Destination)
      add_con("eq15_k" + std::to_string(k.id), {{m.cum_latency_var[k.id], 1.0}}, Rel::Le,
              static_cast<double>(deadline_us(k)), "eq15");

  if (objective == ObjectiveKind::MinCost) {
    for (LinkId e = 0; e < num_links; ++e)
      if (m.link_var[e] >= 0 && g.link(e).cost != 0.0)
        m.objective.push_back({m.link_var[e], g.link(e).cost});
  } else {
    // Epigraph bound over network and computation links only; ingress and
    // egress links carry the sentinel capacity and never shape the max.
    for (LinkId e = 0; e < num_links; ++e) {
      const Link& link = g.link(e);
      if (link.kind == LinkKind::Source || link.kind == LinkKind::Destination) continue;
      if (m.link_var[e] < 0) continue;
      add_con("eq4_e" + std::to_string(e),
              {{m.link_var[e], 1.0}, {m.util_bound_var, -link.capacity}}, Rel::Le, 0.0, "eq4");
    }
    m.objective.push_back({m.util_bound_var, 1.0});
  }

  return m;
}

EmbeddingSolution embedding_from_paths(const CloudNetworkGraph& g, const ServiceGraph& sg,
                                       std::vector<std::vector<LinkId>> paths,
                                       ObjectiveKind objective, const LatencyParams& latency) {
  EmbeddingSolution sol;
  sol.objective_kind = objective;
  sol.paths = std::move(paths);
  sol.placements.assign(sg.functions.size(), -1);
  sol.mu_objects.assign(g.num_links(), {});
  sol.mu.assign(g.num_links(), 0.0);
  sol.local_latency_us.assign(sg.commodities.size(), 0);
  sol.cum_latency_us.assign(sg.commodities.size(), 0);
  const RateTable rate{};
  const LatencyTable lat{latency.kappa_proc};

  // Anchored functions sit at their access node's leaves.
  for (const FunctionNode& f : sg.functions)
    if (f.role != FunctionRole::Processor) sol.placements[f.id] = f.anchor;

  for (const Commodity& k : sg.commodities) {
    const auto& path = sol.paths[static_cast<std::size_t>(k.id)];
    if (path.empty()) continue;
    // Production site of processor outputs = tail of the leading
    // computation-out link.
    if (k.kind != CommodityKind::Source && g.link(path.front()).kind == LinkKind::ComputationOut)
      sol.placements[k.producer] = g.link(path.front()).tail;

    std::int64_t local = 0;
    for (LinkId e : path) {
      const Link& link = g.link(e);
      local += lat(k, link);
      double& mo = sol.mu_objects[static_cast<std::size_t>(e)][k.object];
      mo = std::max(mo, rate(k, link));
    }
    sol.local_latency_us[static_cast<std::size_t>(k.id)] = local;
  }

  for (std::size_t e = 0; e < g.num_links(); ++e) {
    double total = 0.0;
    for (const auto& [o, v] : sol.mu_objects[e]) total += v;
    sol.mu[e] = total;
  }

  // Cumulative latency by recursion over input sets.
  {
    std::vector<int> state(sg.commodities.size(), 0);
    auto visit = [&](auto&& self, CommodityId id) -> std::int64_t {
      if (state[static_cast<std::size_t>(id)] == 2) return sol.cum_latency_us[static_cast<std::size_t>(id)];
      state[static_cast<std::size_t>(id)] = 1;
      const Commodity& k = sg.commodity(id);
      std::int64_t upstream = 0;
      for (CommodityId l : k.inputs) upstream = std::max(upstream, self(self, l));
      const std::int64_t total = sol.local_latency_us[static_cast<std::size_t>(id)] + upstream;
      sol.cum_latency_us[static_cast<std::size_t>(id)] = total;
      state[static_cast<std::size_t>(id)] = 2;
      return total;
    };
    for (const Commodity& k : sg.commodities) visit(visit, k.id);
  }

  double cost = 0.0;
  double peak = 0.0;
  for (const Link& link : g.links) {
    cost += sol.mu[static_cast<std::size_t>(link.id)] * link.cost;
    if (link.kind != LinkKind::Source && link.kind != LinkKind::Destination)
      peak = std::max(peak, sol.mu[static_cast<std::size_t>(link.id)] / link.capacity);
  }
  sol.total_cost = cost;
  sol.peak_utilization = peak;
  sol.objective = objective == ObjectiveKind::MinCost ? cost : peak;
  return sol;
}

EmbeddingSolution extract_embedding(const MilpModel& model, const CloudNetworkGraph& g,
                                    const ServiceGraph& sg, const std::vector<double>& x,
                                    const LatencyParams& latency, double feas_tol) {
  const auto num_links = static_cast<LinkId>(g.num_links());
  std::vector<std::vector<LinkId>> paths(sg.commodities.size());

  for (const Commodity& k : sg.commodities) {
    std::set<LinkId> active;
    for (LinkId e = 0; e < num_links; ++e) {
      const std::int32_t f = model.flow_var[k.id][e];
      if (f < 0) continue;
      const double v = x[static_cast<std::size_t>(f)];
      if (std::abs(v - 1.0) <= feas_tol) {
        active.insert(e);
      } else if (std::abs(v) > feas_tol) {
        std::ostringstream os;
        os << "flow variable " << model.vars[f].name << " = " << v << " is fractional";
        throw MumeError(ErrorCode::FractionalSolution, os.str());
      }
    }
    if (active.empty()) continue;

    // Locate the production link: source link for source commodities, a
    // computation-out link otherwise (lowest id when degenerate).
    LinkId start = -1;
    for (LinkId e : active) {
      const LinkKind kind = g.link(e).kind;
      if ((k.kind == CommodityKind::Source && kind == LinkKind::Source) ||
          (k.kind != CommodityKind::Source && kind == LinkKind::ComputationOut)) {
        start = e;
        break;
      }
    }
    if (start < 0)
      throw MumeError(ErrorCode::FractionalSolution,
                      "commodity " + std::to_string(k.id) + " has active flow but no production link");

    std::vector<LinkId> path{start};
    active.erase(start);
    NodeId at = g.link(start).head;
    while (g.node(at).kind == NodeKind::Communication) {
      LinkId next = -1;
      for (LinkId e : active)
        if (g.link(e).tail == at) {
          next = e;
          break;
        }
      if (next < 0) break;  // terminates in the communication plane (invalid; caught by validation)
      path.push_back(next);
      active.erase(next);
      at = g.link(next).head;
    }
    // Anything left over is a detached degenerate cycle; drop it.
    paths[static_cast<std::size_t>(k.id)] = std::move(path);
  }

  return embedding_from_paths(g, sg, std::move(paths), model.objective_kind, latency);
}

ValidationReport validate_solution(const CloudNetworkGraph& g, const ServiceGraph& sg,
                                   const EmbeddingSolution& sol, const LatencyParams& latency,
                                   double feas_tol) {
  ValidationReport report;
  auto violate = [&report](const char* tag, const std::string& detail, double magnitude) {
    report.violations.push_back({tag, detail, magnitude});
  };
  const RateTable rate{};
  const LatencyTable lat{latency.kappa_proc};
  const auto num_links = g.num_links();

  if (sol.paths.size() != sg.commodities.size() || sol.mu.size() != num_links) {
    violate("shape", "solution indexing does not match graph/service graph", 0);
    return report;
  }

  // Path structure: contiguity and per-kind link legality.
  for (const Commodity& k : sg.commodities) {
    const auto& path = sol.paths[static_cast<std::size_t>(k.id)];
    if (path.empty()) {
      violate(k.kind == CommodityKind::Source ? "eq8" : "eq6",
              "commodity " + std::to_string(k.id) + " has no path", 1.0);
      continue;
    }
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (path[i] < 0 || path[i] >= static_cast<LinkId>(num_links)) {
        violate("shape", "commodity " + std::to_string(k.id) + " references missing link", 0);
        break;
      }
      if (i > 0 && g.link(path[i]).tail != g.link(path[i - 1]).head)
        violate("eq6", "commodity " + std::to_string(k.id) + " path is not contiguous", 1.0);
      if (!commodity_link_legal(g, sg, k, g.link(path[i])))
        violate(g.link(path[i]).kind == LinkKind::Source ? "eq8"
                : g.link(path[i]).kind == LinkKind::Destination ? "eq9"
                                                                : "eq7",
                "commodity " + std::to_string(k.id) + " uses illegal link " + std::to_string(path[i]),
                1.0);
    }
  }

  // Conservation at communication nodes.
  for (const Commodity& k : sg.commodities) {
    std::map<NodeId, int> balance;
    for (LinkId e : sol.paths[static_cast<std::size_t>(k.id)]) {
      const Link& link = g.link(e);
      if (g.node(link.head).kind == NodeKind::Communication) ++balance[link.head];
      if (g.node(link.tail).kind == NodeKind::Communication) --balance[link.tail];
    }
    for (const auto& [node, net] : balance)
      if (net != 0)
        violate("eq6",
                "commodity " + std::to_string(k.id) + " unbalanced at node " + std::to_string(node),
                std::abs(net));
  }

  // Chaining between production sites and input arrivals.
  for (const NodeId p : g.nodes_of_kind(NodeKind::Computation)) {
    const LinkId out = g.computation_out_link(p);
    const LinkId in = g.computation_in_link(p);
    for (const Commodity& k : sg.commodities) {
      if (k.kind == CommodityKind::Source) continue;
      const auto& path_k = sol.paths[static_cast<std::size_t>(k.id)];
      const bool produced = std::find(path_k.begin(), path_k.end(), out) != path_k.end();
      for (CommodityId l : k.inputs) {
        const auto& path_l = sol.paths[static_cast<std::size_t>(l)];
        const bool delivered = std::find(path_l.begin(), path_l.end(), in) != path_l.end();
        if (produced != delivered)
          violate("eq7",
                  "commodity " + std::to_string(k.id) + " and input " + std::to_string(l) +
                      " disagree at computation node " + std::to_string(p),
                  1.0);
      }
    }
  }

  // Source and destination fixing.
  for (const Commodity& k : sg.commodities) {
    const auto& path = sol.paths[static_cast<std::size_t>(k.id)];
    if (path.empty()) continue;
    if (k.kind == CommodityKind::Source) {
      const NodeId s = g.source_leaf_of(sg.function(k.producer).anchor);
      if (g.link(path.front()).kind != LinkKind::Source || g.link(path.front()).tail != s)
        violate("eq8", "commodity " + std::to_string(k.id) + " does not start at its source", 1.0);
    } else if (g.link(path.front()).kind != LinkKind::ComputationOut) {
      violate("eq7", "commodity " + std::to_string(k.id) + " is not produced at a computation node", 1.0);
    }
    if (k.kind == CommodityKind::Destination) {
      const NodeId d = g.destination_leaf_of(sg.function(k.consumer).anchor);
      if (g.link(path.back()).kind != LinkKind::Destination || g.link(path.back()).head != d)
        violate("eq9", "commodity " + std::to_string(k.id) + " does not end at its destination", 1.0);
    } else if (g.link(path.back()).kind != LinkKind::ComputationIn) {
      violate("eq7", "commodity " + std::to_string(k.id) + " is not delivered to a computation node", 1.0);
    }
  }

  // Object flows dominate rated flows; totals within capacity.
  for (const Commodity& k : sg.commodities) {
    for (LinkId e : sol.paths[static_cast<std::size_t>(k.id)]) {
      const double need = rate(k, g.link(e));
      const auto& mo = sol.mu_objects[static_cast<std::size_t>(e)];
      const auto it = mo.find(k.object);
      const double have = it == mo.end() ? 0.0 : it->second;
      if (have + feas_tol < need)
        violate("eq10",
                "object flow " + std::to_string(k.object) + " on link " + std::to_string(e) +
                    " below rate of commodity " + std::to_string(k.id),
                need - have);
    }
  }
  for (std::size_t e = 0; e < num_links; ++e) {
    double total = 0.0;
    for (const auto& [o, v] : sol.mu_objects[e]) total += v;
    if (total > sol.mu[e] + feas_tol)
      violate("eq11", "object flows exceed total on link " + std::to_string(e), total - sol.mu[e]);
    if (sol.mu[e] > g.link(static_cast<LinkId>(e)).capacity + feas_tol)
      violate("eq11", "total flow exceeds capacity on link " + std::to_string(e),
              sol.mu[e] - g.link(static_cast<LinkId>(e)).capacity);
  }

  // Latency identity, recursion, and deadlines.
  for (const Commodity& k : sg.commodities) {
    std::int64_t local = 0;
    for (LinkId e : sol.paths[static_cast<std::size_t>(k.id)]) local += lat(k, g.link(e));
    if (local != sol.local_latency_us[static_cast<std::size_t>(k.id)])
      violate("eq12", "local latency mismatch for commodity " + std::to_string(k.id),
              std::abs(static_cast<double>(local - sol.local_latency_us[static_cast<std::size_t>(k.id)])));
    const std::int64_t cum = sol.cum_latency_us[static_cast<std::size_t>(k.id)];
    if (k.kind == CommodityKind::Source) {
      if (cum != local)
        violate("eq13", "cumulative latency of source commodity " + std::to_string(k.id),
                std::abs(static_cast<double>(cum - local)));
    } else {
      for (CommodityId l : k.inputs) {
        const std::int64_t need = local + sol.cum_latency_us[static_cast<std::size_t>(l)];
        if (cum < need)
          violate("eq14",
                  "cumulative latency recursion violated for commodity " + std::to_string(k.id) +
                      " via input " + std::to_string(l),
                  static_cast<double>(need - cum));
      }
    }
    if (k.kind == CommodityKind::Destination && cum > deadline_us(k))
      violate("eq15", "deadline exceeded for commodity " + std::to_string(k.id),
              static_cast<double>(cum - deadline_us(k)));
  }

  // Objective re-computation.
  double cost = 0.0;
  double peak = 0.0;
  for (const Link& link : g.links) {
    cost += sol.mu[static_cast<std::size_t>(link.id)] * link.cost;
    if (link.kind != LinkKind::Source && link.kind != LinkKind::Destination)
      peak = std::max(peak, sol.mu[static_cast<std::size_t>(link.id)] / link.capacity);
  }
  report.recomputed_objective = sol.objective_kind == ObjectiveKind::MinCost ? cost : peak;
  const double drift = std::abs(report.recomputed_objective - sol.objective);
  if (drift > std::max(feas_tol, 1e-9 * std::abs(report.recomputed_objective)) + 1e-12)
    violate("objective", "stored objective diverges from recomputation", drift);

  return report;
}

json EmbeddingSolution::to_json() const {
  json doc;
  doc["objective_kind"] = objective_name(objective_kind);
  doc["objective"] = objective;
  doc["total_cost"] = total_cost;
  doc["peak_utilization"] = peak_utilization;
  json paths_json = json::array();
  for (std::size_t k = 0; k < paths.size(); ++k)
    paths_json.push_back({{"commodity", k}, {"links", paths[k]}});
  doc["paths"] = std::move(paths_json);
  json placements_json = json::array();
  for (std::size_t f = 0; f < placements.size(); ++f)
    if (placements[f] >= 0) placements_json.push_back({{"function", f}, {"node", placements[f]}});
  doc["placements"] = std::move(placements_json);
  json links_json = json::array();
  for (std::size_t e = 0; e < mu.size(); ++e) {
    json objs = json::array();
    for (const auto& [o, v] : mu_objects[e]) objs.push_back({{"object", o}, {"flow", v}});
    links_json.push_back({{"id", e}, {"mu", mu[e]}, {"objects", std::move(objs)}});
  }
  doc["links"] = std::move(links_json);
  json lat_json = json::array();
  for (std::size_t k = 0; k < local_latency_us.size(); ++k)
    lat_json.push_back(
        {{"commodity", k}, {"local_us", local_latency_us[k]}, {"cumulative_us", cum_latency_us[k]}});
  doc["latency"] = std::move(lat_json);
  return doc;
}

EmbeddingSolution EmbeddingSolution::from_json(const json& doc) {
  EmbeddingSolution sol;
  try {
    sol.objective_kind = objective_from_name(doc.at("objective_kind").get<std::string>());
    sol.objective = doc.at("objective").get<double>();
    sol.total_cost = doc.at("total_cost").get<double>();
    sol.peak_utilization = doc.at("peak_utilization").get<double>();
    sol.paths.resize(doc.at("paths").size());
    for (const auto& p : doc.at("paths"))
      sol.paths.at(p.at("commodity").get<std::size_t>()) = p.at("links").get<std::vector<LinkId>>();
    std::size_t max_fn = 0;
    for (const auto& p : doc.at("placements"))
      max_fn = std::max(max_fn, p.at("function").get<std::size_t>() + 1);
    sol.placements.assign(max_fn, -1);
    for (const auto& p : doc.at("placements"))
      sol.placements[p.at("function").get<std::size_t>()] = p.at("node").get<NodeId>();
    const auto& links = doc.at("links");
    sol.mu.assign(links.size(), 0.0);
    sol.mu_objects.assign(links.size(), {});
    for (const auto& l : links) {
      const auto e = l.at("id").get<std::size_t>();
      sol.mu.at(e) = l.at("mu").get<double>();
      for (const auto& ov : l.at("objects"))
        sol.mu_objects.at(e)[ov.at("object").get<ObjectId>()] = ov.at("flow").get<double>();
    }
    const auto& lat = doc.at("latency");
    sol.local_latency_us.assign(lat.size(), 0);
    sol.cum_latency_us.assign(lat.size(), 0);
    for (const auto& l : lat) {
      const auto k = l.at("commodity").get<std::size_t>();
      sol.local_latency_us.at(k) = l.at("local_us").get<std::int64_t>();
      sol.cum_latency_us.at(k) = l.at("cumulative_us").get<std::int64_t>();
    }
  } catch (const json::exception& e) {
    throw parse_error(std::string("malformed embedding document: ") + e.what());
  }
  return sol;
}

}  // namespace mumenet
