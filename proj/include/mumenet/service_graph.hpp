#ifndef MUMENET_SERVICE_GRAPH_HPP
#define MUMENET_SERVICE_GRAPH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mumenet/config.hpp"
#include "mumenet/graph.hpp"

namespace mumenet {

using FunctionId = std::int32_t;
using CommodityId = std::int32_t;
using ObjectId = std::int32_t;
using UserId = std::int32_t;

enum class FunctionRole { Source, Processor, Destination };
enum class CommodityKind { Source, Processing, Destination };

const char* function_role_name(FunctionRole r);
const char* commodity_kind_name(CommodityKind k);

struct FunctionNode {
  FunctionId id = -1;
  FunctionRole role = FunctionRole::Source;
  std::string label;
  /// Communication node whose source (resp. destination) leaf hosts the
  /// function. Processors are unanchored until embedding.
  NodeId anchor = -1;
  UserId user = -1;  // -1 for shared functions
};

struct RateTriple {
  double prod = 0.0;
  double comm = 0.0;
  double cons = 0.0;
};

struct Commodity {
  CommodityId id = -1;
  CommodityKind kind = CommodityKind::Source;
  FunctionId producer = -1;
  FunctionId consumer = -1;
  ObjectId object = -1;
  RateTriple rates;
  std::vector<CommodityId> inputs;  // required input commodities, ascending
  double deadline_ms = 0.0;         // destination commodities only
};

struct InfoObject {
  ObjectId id = -1;
  std::string label;
};

struct UserRecord {
  UserId id = -1;
  NodeId access_node = -1;
};

struct SgReport {
  struct Entry {
    std::string kind;
    std::string detail;
  };
  std::vector<Entry> errors;
  std::vector<Entry> warnings;
  bool pass() const { return errors.empty(); }
};

struct ServiceGraph {
  std::vector<FunctionNode> functions;
  std::vector<Commodity> commodities;
  std::vector<InfoObject> objects;
  std::vector<UserRecord> users;
  std::uint64_t rate_seed = 0;
  double deadline_ms = 100.0;

  const FunctionNode& function(FunctionId id) const { return functions[static_cast<std::size_t>(id)]; }
  const Commodity& commodity(CommodityId id) const { return commodities[static_cast<std::size_t>(id)]; }

  FunctionId find_function(const std::string& label) const;
  CommodityId find_commodity(FunctionId producer, FunctionId consumer) const;
  std::vector<CommodityId> commodities_of_object(ObjectId object) const;
  std::vector<CommodityId> outputs_of(FunctionId fn) const;
  std::vector<CommodityId> inputs_to(FunctionId fn) const;

  /// Processors ordered so every producer precedes its consumers.
  std::vector<FunctionId> processor_topological_order() const;

  nlohmann::json to_json() const;
  static ServiceGraph from_json(const nlohmann::json& doc);
};

/// Builds the virtual-concert template for the given users. `user_access[u]`
/// is the communication node user u attaches to; `access_nodes` is the pool
/// the shared network-monitor feed anchors into. Rates are drawn per object
/// from label-derived streams of `rate_seed`, so the same object always
/// carries the same triple regardless of construction order.
ServiceGraph build_concert_template(const std::vector<NodeId>& user_access,
                                    const std::vector<NodeId>& access_nodes,
                                    const SgParams& params, std::uint64_t rate_seed);

SgReport validate_sg(const ServiceGraph& sg);

/// Returns a copy with one extra user (functions, 9 commodities, 3 objects)
/// wired into the shared processors. Input sets are recomputed.
ServiceGraph add_user(const ServiceGraph& sg, UserId user, NodeId access_node);

/// Returns a copy without the user. Ids are re-compacted; the result of
/// add-then-remove is isomorphic to the original.
ServiceGraph remove_user(const ServiceGraph& sg, UserId user);

}  // namespace mumenet

#endif
