#ifndef MUMENET_MILP_HPP
#define MUMENET_MILP_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "mumenet/config.hpp"
#include "mumenet/graph.hpp"
#include "mumenet/service_graph.hpp"

namespace mumenet {

enum class VarKind { Flow, ObjectFlow, LinkFlow, LocalLatency, CumLatency, UtilBound };

struct VarRef {
  VarKind kind = VarKind::Flow;
  CommodityId commodity = -1;
  LinkId link = -1;
  ObjectId object = -1;
};

struct Variable {
  std::string name;
  double lb = 0.0;
  double ub = 0.0;
  bool is_integer = false;
  VarRef ref;
};

struct LinTerm {
  std::int32_t var = -1;
  double coef = 0.0;
};

enum class Rel { Le, Ge, Eq };

struct Constraint {
  std::string name;
  std::vector<LinTerm> terms;
  Rel rel = Rel::Eq;
  double rhs = 0.0;
  std::string tag;  // constraint family ("eq6" .. "eq15", "eq4")
};

/// Commodity rate resolved against the link class it traverses: production
/// rate on source and computation-out links, communication rate on network
/// links, consumption rate on computation-in and destination links.
struct RateTable {
  double operator()(const Commodity& k, const Link& link) const;
};

/// Per-unit latency of a commodity on a link, integer microseconds:
/// propagation on communication links, kappa * R_prod / capacity on
/// computation-out links, zero elsewhere.
struct LatencyTable {
  double kappa_proc_ms = 1.0;
  std::int64_t operator()(const Commodity& k, const Link& link) const;
};

struct MilpModel {
  ObjectiveKind objective_kind = ObjectiveKind::MinCost;
  std::vector<Variable> vars;
  std::vector<Constraint> cons;
  std::vector<LinTerm> objective;  // minimize

  // Deterministic index maps (-1 where a variable was pruned as illegal).
  std::vector<std::vector<std::int32_t>> flow_var;    // [commodity][link]
  std::vector<std::vector<std::int32_t>> object_var;  // [object][link]
  std::vector<std::int32_t> link_var;                 // [link]
  std::vector<std::int32_t> local_latency_var;        // [commodity]
  std::vector<std::int32_t> cum_latency_var;          // [commodity]
  std::int32_t util_bound_var = -1;

  std::size_t num_binaries() const;
  /// Count of emitted constraints per family tag, plus the variable-domain
  /// family ("eq16") counting every declared variable.
  std::map<std::string, std::size_t> tag_census() const;
};

/// Translates graph + service graph into the canonical embedding program.
/// Throws ModelError when an anchor is missing from the graph or a
/// commodity has no legal production site.
MilpModel build_model(const CloudNetworkGraph& g, const ServiceGraph& sg,
                      ObjectiveKind objective, const LatencyParams& latency);

/// True when the commodity may appear on the link at all; flow variables
/// are only created for legal pairs.
bool commodity_link_legal(const CloudNetworkGraph& g, const ServiceGraph& sg,
                          const Commodity& k, const Link& link);

struct EmbeddingSolution {
  ObjectiveKind objective_kind = ObjectiveKind::MinCost;
  double objective = 0.0;
  double total_cost = 0.0;
  double peak_utilization = 0.0;
  std::vector<std::vector<LinkId>> paths;              // per commodity, ordered
  std::vector<NodeId> placements;                      // per function; computation node or -1
  std::vector<std::map<ObjectId, double>> mu_objects;  // per link
  std::vector<double> mu;                              // per link
  std::vector<std::int64_t> local_latency_us;          // per commodity
  std::vector<std::int64_t> cum_latency_us;            // per commodity

  nlohmann::json to_json() const;
  static EmbeddingSolution from_json(const nlohmann::json& doc);
};

/// Builds the canonical solution implied by a set of unit paths: placements,
/// tight per-object and total flows, latencies, cost and peak utilization.
EmbeddingSolution embedding_from_paths(const CloudNetworkGraph& g, const ServiceGraph& sg,
                                       std::vector<std::vector<LinkId>> paths,
                                       ObjectiveKind objective, const LatencyParams& latency);

/// Reads a (near-)integral assignment of the model variables back into unit
/// paths. Throws FractionalSolution when any flow variable is farther than
/// feas_tol from {0,1}. Degenerate cycles detached from the paths are dropped.
EmbeddingSolution extract_embedding(const MilpModel& model, const CloudNetworkGraph& g,
                                    const ServiceGraph& sg, const std::vector<double>& x,
                                    const LatencyParams& latency, double feas_tol);

struct ValidationReport {
  struct Violation {
    std::string tag;      // offending constraint family
    std::string detail;
    double magnitude = 0.0;
  };
  std::vector<Violation> violations;
  double recomputed_objective = 0.0;
  bool pass() const { return violations.empty(); }
};

/// Re-checks every constraint family directly from graph and service-graph
/// data, independent of the model object.
ValidationReport validate_solution(const CloudNetworkGraph& g, const ServiceGraph& sg,
                                   const EmbeddingSolution& sol, const LatencyParams& latency,
                                   double feas_tol);

/// Writes the model in CPLEX-LP text form with deterministic ordering.
std::string export_lp(const MilpModel& model, const std::string& path);

/// Parses an external solver's `name value` solution file into a vector
/// aligned with the model's variables. Unmentioned variables default to 0.
std::vector<double> parse_solution_file(const MilpModel& model, const std::string& path);

}  // namespace mumenet

#endif
