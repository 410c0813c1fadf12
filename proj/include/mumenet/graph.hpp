#ifndef MUMENET_GRAPH_HPP
#define MUMENET_GRAPH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mumenet/config.hpp"

namespace mumenet {

using NodeId = std::int32_t;
using LinkId = std::int32_t;

enum class NodeKind { Communication, Source, Computation, Destination };
enum class LinkKind { Communication, Source, ComputationIn, ComputationOut, Destination };

const char* node_kind_name(NodeKind k);
const char* link_kind_name(LinkKind k);

struct Node {
  NodeId id = -1;
  NodeKind kind = NodeKind::Communication;
  /// Communication node this leaf hangs off (source/destination/computation
  /// nodes only; -1 for communication nodes).
  NodeId attachment = -1;
};

struct Link {
  LinkId id = -1;
  NodeId tail = -1;
  NodeId head = -1;
  LinkKind kind = LinkKind::Communication;
  double capacity = 0.0;  // bps on communication links, bits on computation-in, FLOPs on computation-out
  double cost = 0.0;      // per unit flow
  std::int64_t prop_latency_us = 0;
};

/// Base undirected topology produced by the binomial generator.
struct BaseTopology {
  std::int64_t n = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;  // tail < head, sorted
  std::int64_t resample_count = 0;               // connectivity retries spent

  bool connected() const;
};

struct ConsistencyReport {
  struct Violation {
    std::string kind;
    std::string detail;
  };
  std::vector<Violation> violations;
  bool pass() const { return violations.empty(); }
};

class CloudNetworkGraph {
 public:
  std::vector<Node> nodes;            // indexed by NodeId
  std::vector<Link> links;            // indexed by LinkId
  std::vector<std::vector<LinkId>> out_links;  // per node
  std::vector<std::vector<LinkId>> in_links;   // per node
  std::vector<NodeId> access_nodes;   // communication nodes users may attach to
  double cap_sentinel = 0.0;

  const Node& node(NodeId id) const { return nodes[static_cast<std::size_t>(id)]; }
  const Link& link(LinkId id) const { return links[static_cast<std::size_t>(id)]; }
  std::size_t num_nodes() const { return nodes.size(); }
  std::size_t num_links() const { return links.size(); }

  /// Ids of all nodes of the given kind, ascending.
  std::vector<NodeId> nodes_of_kind(NodeKind kind) const;

  /// The unique source/destination leaf attached to a communication node.
  NodeId source_leaf_of(NodeId comm_node) const;
  NodeId destination_leaf_of(NodeId comm_node) const;

  /// Computation-in/out link of a computation node (each node has exactly one).
  LinkId computation_in_link(NodeId comp_node) const;
  LinkId computation_out_link(NodeId comp_node) const;

  void rebuild_adjacency();

  nlohmann::json to_json() const;
  static CloudNetworkGraph from_json(const nlohmann::json& doc);
};

/// Samples G(n, rho): every unordered pair is an edge independently with
/// probability rho. Disconnected samples are redrawn up to `max_retries`
/// times; the spent retries are recorded on the result.
BaseTopology generate_binomial(std::int64_t n, double rho, std::uint64_t seed,
                               std::int64_t max_retries = 1000);

/// Expands a base topology into the augmented graph: two directed
/// communication links per base edge with independently drawn attributes,
/// one source and one destination leaf per communication node, and with
/// probability comp_percentage a batch of computation leaves per node.
CloudNetworkGraph augment(const BaseTopology& base, const TopologyParams& params,
                          const LatencyParams& latency, std::uint64_t seed);

/// Convenience: generate + augment from config streams derived off `seed`.
CloudNetworkGraph generate_cloud_network(const TopologyParams& params,
                                         const LatencyParams& latency, std::uint64_t seed);

ConsistencyReport check_consistency(const CloudNetworkGraph& g,
                                    const TopologyParams* declared_ranges = nullptr);

/// Assigns each user a uniformly random access (communication) node.
std::vector<NodeId> attach_users(const CloudNetworkGraph& g, std::int64_t num_users,
                                 std::uint64_t seed);

}  // namespace mumenet

#endif
