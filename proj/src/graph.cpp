#include "mumenet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "mumenet/errors.hpp"
#include "mumenet/rng.hpp"

namespace mumenet {

using nlohmann::json;

const char* node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Communication: return "communication";
    case NodeKind::Source: return "source";
    case NodeKind::Computation: return "computation";
    case NodeKind::Destination: return "destination";
  }
  return "?";
}

const char* link_kind_name(LinkKind k) {
  switch (k) {
    case LinkKind::Communication: return "communication";
    case LinkKind::Source: return "source";
    case LinkKind::ComputationIn: return "computation_in";
    case LinkKind::ComputationOut: return "computation_out";
    case LinkKind::Destination: return "destination";
  }
  return "?";
}

namespace {

NodeKind node_kind_from_name(const std::string& s) {
  if (s == "communication") return NodeKind::Communication;
  if (s == "source") return NodeKind::Source;
  if (s == "computation") return NodeKind::Computation;
  if (s == "destination") return NodeKind::Destination;
  throw parse_error("unknown node kind '" + s + "'");
}

LinkKind link_kind_from_name(const std::string& s) {
  if (s == "communication") return LinkKind::Communication;
  if (s == "source") return LinkKind::Source;
  if (s == "computation_in") return LinkKind::ComputationIn;
  if (s == "computation_out") return LinkKind::ComputationOut;
  if (s == "destination") return LinkKind::Destination;
  throw parse_error("unknown link kind '" + s + "'");
}

std::int64_t draw_prop_latency_us(Rng& rng, const UniformRange& range_ms) {
  const double ms = rng.uniform(range_ms.lo, range_ms.hi);
  return std::llround(ms * 1000.0);
}

}  // namespace

bool BaseTopology::connected() const {
  if (n == 0) return false;
  std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(n));
  for (auto [a, b] : edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::queue<NodeId> frontier;
  frontier.push(0);
  seen[0] = true;
  std::int64_t reached = 1;
  while (!frontier.empty()) {
    NodeId v = frontier.front();
    frontier.pop();
    for (NodeId w : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        ++reached;
        frontier.push(w);
      }
    }
  }
  return reached == n;
}

BaseTopology generate_binomial(std::int64_t n, double rho, std::uint64_t seed,
                               std::int64_t max_retries) {
  if (n < 2) throw MumeError(ErrorCode::BadArgument, "binomial topology needs n >= 2");
  if (rho <= 0.0 || rho > 1.0)
    throw MumeError(ErrorCode::BadArgument, "edge probability must be in (0, 1]");
  Rng rng(seed);
  for (std::int64_t attempt = 0; attempt <= max_retries; ++attempt) {
    BaseTopology topo;
    topo.n = n;
    topo.resample_count = attempt;
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = a + 1; b < n; ++b)
        if (rng.bernoulli(rho)) topo.edges.emplace_back(a, b);
    if (topo.connected()) return topo;
  }
  std::ostringstream os;
  os << "no connected G(" << n << ", " << rho << ") sample within " << max_retries << " retries";
  throw MumeError(ErrorCode::Generation, os.str());
}

void CloudNetworkGraph::rebuild_adjacency() {
  out_links.assign(nodes.size(), {});
  in_links.assign(nodes.size(), {});
  for (const Link& l : links) {
    out_links[static_cast<std::size_t>(l.tail)].push_back(l.id);
    in_links[static_cast<std::size_t>(l.head)].push_back(l.id);
  }
}

std::vector<NodeId> CloudNetworkGraph::nodes_of_kind(NodeKind kind) const {
  std::vector<NodeId> out;
  for (const Node& v : nodes)
    if (v.kind == kind) out.push_back(v.id);
  return out;
}

NodeId CloudNetworkGraph::source_leaf_of(NodeId comm_node) const {
  for (LinkId l : in_links[static_cast<std::size_t>(comm_node)])
    if (link(l).kind == LinkKind::Source) return link(l).tail;
  return -1;
}

NodeId CloudNetworkGraph::destination_leaf_of(NodeId comm_node) const {
  for (LinkId l : out_links[static_cast<std::size_t>(comm_node)])
    if (link(l).kind == LinkKind::Destination) return link(l).head;
  return -1;
}

LinkId CloudNetworkGraph::computation_in_link(NodeId comp_node) const {
  for (LinkId l : in_links[static_cast<std::size_t>(comp_node)])
    if (link(l).kind == LinkKind::ComputationIn) return l;
  return -1;
}

LinkId CloudNetworkGraph::computation_out_link(NodeId comp_node) const {
  for (LinkId l : out_links[static_cast<std::size_t>(comp_node)])
    if (link(l).kind == LinkKind::ComputationOut) return l;
  return -1;
}

CloudNetworkGraph augment(const BaseTopology& base, const TopologyParams& params,
                          const LatencyParams& latency, std::uint64_t seed) {
  if (!base.connected()) throw MumeError(ErrorCode::BadArgument, "base topology must be connected");
  Rng rng(seed);
  CloudNetworkGraph g;
  g.cap_sentinel = params.cap_sentinel;

  for (NodeId i = 0; i < base.n; ++i)
    g.nodes.push_back({i, NodeKind::Communication, -1});

  auto add_node = [&g](NodeKind kind, NodeId attachment) {
    NodeId id = static_cast<NodeId>(g.nodes.size());
    g.nodes.push_back({id, kind, attachment});
    return id;
  };
  auto add_link = [&g](NodeId tail, NodeId head, LinkKind kind, double cap, double cost,
                       std::int64_t prop_us) {
    LinkId id = static_cast<LinkId>(g.links.size());
    g.links.push_back({id, tail, head, kind, cap, cost, prop_us});
    return id;
  };

  // Two directed communication links per base edge, attributes drawn
  // independently per direction.
  for (auto [a, b] : base.edges) {
    for (auto [tail, head] : {std::pair{a, b}, std::pair{b, a}}) {
      const double cap = rng.uniform(params.comm_cap_range.lo, params.comm_cap_range.hi);
      const double cost = rng.uniform(params.comm_cost_range.lo, params.comm_cost_range.hi);
      add_link(tail, head, LinkKind::Communication, cap, cost,
               draw_prop_latency_us(rng, latency.comm_prop_ms));
    }
  }

  // Ingress/egress leaves: zero cost, sentinel capacity, zero propagation.
  for (NodeId i = 0; i < base.n; ++i) {
    NodeId src = add_node(NodeKind::Source, i);
    add_link(src, i, LinkKind::Source, params.cap_sentinel, 0.0, 0);
    NodeId dst = add_node(NodeKind::Destination, i);
    add_link(i, dst, LinkKind::Destination, params.cap_sentinel, 0.0, 0);
  }

  // Computation leaves: a node hosts them with probability comp_percentage,
  // and then receives a uniform count from comp_nodes_range.
  for (NodeId i = 0; i < base.n; ++i) {
    if (!rng.bernoulli(params.comp_percentage)) continue;
    const std::int64_t count = rng.uniform_int(params.comp_nodes_range.lo, params.comp_nodes_range.hi);
    for (std::int64_t c = 0; c < count; ++c) {
      NodeId comp = add_node(NodeKind::Computation, i);
      const double ram_cap = rng.uniform(params.ram_cap_range.lo, params.ram_cap_range.hi);
      const double ram_cost = rng.uniform(params.ram_cost_range.lo, params.ram_cost_range.hi);
      add_link(i, comp, LinkKind::ComputationIn, ram_cap, ram_cost, 0);
      const double cpu_cap = rng.uniform(params.cpu_cap_range.lo, params.cpu_cap_range.hi);
      const double cpu_cost = rng.uniform(params.cpu_cost_range.lo, params.cpu_cost_range.hi);
      add_link(comp, i, LinkKind::ComputationOut, cpu_cap, cpu_cost, 0);
    }
  }

  g.rebuild_adjacency();
  for (NodeId i = 0; i < base.n; ++i) g.access_nodes.push_back(i);
  return g;
}

CloudNetworkGraph generate_cloud_network(const TopologyParams& params,
                                         const LatencyParams& latency, std::uint64_t seed) {
  BaseTopology base = generate_binomial(params.n, params.rho, derive_seed(seed, "topology.base"),
                                        params.max_connect_retries);
  return augment(base, params, latency, derive_seed(seed, "topology.augment"));
}

ConsistencyReport check_consistency(const CloudNetworkGraph& g,
                                    const TopologyParams* declared_ranges) {
  ConsistencyReport report;
  auto violation = [&report](const std::string& kind, const std::string& detail) {
    report.violations.push_back({kind, detail});
  };

  // Communication sub-graph connectivity (over undirected reachability).
  {
    std::vector<NodeId> comm = g.nodes_of_kind(NodeKind::Communication);
    if (comm.empty()) {
      violation("disconnected", "no communication nodes");
    } else {
      std::vector<bool> seen(g.num_nodes(), false);
      std::queue<NodeId> frontier;
      frontier.push(comm.front());
      seen[static_cast<std::size_t>(comm.front())] = true;
      while (!frontier.empty()) {
        NodeId v = frontier.front();
        frontier.pop();
        auto visit = [&](NodeId w) {
          if (g.node(w).kind == NodeKind::Communication && !seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = true;
            frontier.push(w);
          }
        };
        for (LinkId l : g.out_links[static_cast<std::size_t>(v)])
          if (g.link(l).kind == LinkKind::Communication) visit(g.link(l).head);
        for (LinkId l : g.in_links[static_cast<std::size_t>(v)])
          if (g.link(l).kind == LinkKind::Communication) visit(g.link(l).tail);
      }
      for (NodeId v : comm)
        if (!seen[static_cast<std::size_t>(v)])
          violation("disconnected", "communication node " + std::to_string(v) + " unreachable");
    }
  }

  double total_comp_capacity = 0.0;
  for (const Link& l : g.links)
    if (l.kind == LinkKind::ComputationOut) total_comp_capacity += l.capacity;
  if (total_comp_capacity <= 0.0)
    violation("no_computation", "total computation capacity is zero");

  auto expect_kind = [&](const Link& l, NodeKind tail, NodeKind head) {
    if (g.node(l.tail).kind != tail || g.node(l.head).kind != head) {
      std::ostringstream os;
      os << "link " << l.id << " (" << link_kind_name(l.kind) << ") joins "
         << node_kind_name(g.node(l.tail).kind) << " -> " << node_kind_name(g.node(l.head).kind);
      violation("orientation", os.str());
    }
  };
  for (const Link& l : g.links) {
    switch (l.kind) {
      case LinkKind::Communication: expect_kind(l, NodeKind::Communication, NodeKind::Communication); break;
      case LinkKind::Source: expect_kind(l, NodeKind::Source, NodeKind::Communication); break;
      case LinkKind::Destination: expect_kind(l, NodeKind::Communication, NodeKind::Destination); break;
      case LinkKind::ComputationIn: expect_kind(l, NodeKind::Communication, NodeKind::Computation); break;
      case LinkKind::ComputationOut: expect_kind(l, NodeKind::Computation, NodeKind::Communication); break;
    }
    if (l.capacity <= 0.0)
      violation("capacity", "link " + std::to_string(l.id) + " has non-positive capacity");
    if (l.cost < 0.0)
      violation("cost", "link " + std::to_string(l.id) + " has negative cost");
    if (l.prop_latency_us < 0)
      violation("latency", "link " + std::to_string(l.id) + " has negative propagation latency");
    if ((l.kind == LinkKind::Source || l.kind == LinkKind::Destination)) {
      if (l.cost != 0.0)
        violation("ingress_cost", "link " + std::to_string(l.id) + " must have zero cost");
      if (g.cap_sentinel > 0.0 && l.capacity != g.cap_sentinel)
        violation("ingress_capacity", "link " + std::to_string(l.id) + " must carry the sentinel capacity");
    }
  }

  // Leaf-degree rules of the augmentation.
  for (const Node& v : g.nodes) {
    const auto& outs = g.out_links[static_cast<std::size_t>(v.id)];
    const auto& ins = g.in_links[static_cast<std::size_t>(v.id)];
    switch (v.kind) {
      case NodeKind::Source:
        if (ins.size() != 0 || outs.size() != 1)
          violation("dangling", "source node " + std::to_string(v.id) + " must have exactly one outgoing link");
        break;
      case NodeKind::Destination:
        if (outs.size() != 0 || ins.size() != 1)
          violation("dangling", "destination node " + std::to_string(v.id) + " must have exactly one incoming link");
        break;
      case NodeKind::Computation: {
        if (ins.size() != 1 || outs.size() != 1) {
          violation("dangling", "computation node " + std::to_string(v.id) + " must have one in and one out link");
        } else if (g.link(ins[0]).tail != g.link(outs[0]).head) {
          violation("dangling", "computation node " + std::to_string(v.id) +
                                    " in/out links attach to different communication nodes");
        }
        break;
      }
      case NodeKind::Communication:
        break;
    }
  }

  if (declared_ranges) {
    auto in_range = [](double x, const UniformRange& r) { return x >= r.lo && x <= r.hi; };
    for (const Link& l : g.links) {
      const UniformRange* cap = nullptr;
      const UniformRange* cost = nullptr;
      switch (l.kind) {
        case LinkKind::Communication: cap = &declared_ranges->comm_cap_range; cost = &declared_ranges->comm_cost_range; break;
        case LinkKind::ComputationIn: cap = &declared_ranges->ram_cap_range; cost = &declared_ranges->ram_cost_range; break;
        case LinkKind::ComputationOut: cap = &declared_ranges->cpu_cap_range; cost = &declared_ranges->cpu_cost_range; break;
        default: break;
      }
      if (cap && !in_range(l.capacity, *cap))
        violation("range", "link " + std::to_string(l.id) + " capacity outside declared range");
      if (cost && !in_range(l.cost, *cost))
        violation("range", "link " + std::to_string(l.id) + " cost outside declared range");
    }
  }
  return report;
}

std::vector<NodeId> attach_users(const CloudNetworkGraph& g, std::int64_t num_users,
                                 std::uint64_t seed) {
  if (g.access_nodes.empty())
    throw MumeError(ErrorCode::BadArgument, "graph has no access nodes");
  Rng rng(seed);
  std::vector<NodeId> assignment;
  assignment.reserve(static_cast<std::size_t>(num_users));
  for (std::int64_t u = 0; u < num_users; ++u) {
    const auto idx = rng.uniform_int(0, static_cast<std::int64_t>(g.access_nodes.size()) - 1);
    assignment.push_back(g.access_nodes[static_cast<std::size_t>(idx)]);
  }
  return assignment;
}

json CloudNetworkGraph::to_json() const {
  json doc;
  json nodes_json = json::array();
  for (const Node& v : nodes) {
    json n = {{"id", v.id}, {"kind", node_kind_name(v.kind)}};
    if (v.attachment >= 0) n["attachment"] = v.attachment;
    nodes_json.push_back(std::move(n));
  }
  json links_json = json::array();
  for (const Link& l : links) {
    links_json.push_back({{"id", l.id},
                          {"tail", l.tail},
                          {"head", l.head},
                          {"kind", link_kind_name(l.kind)},
                          {"capacity", l.capacity},
                          {"cost", l.cost},
                          {"prop_latency", static_cast<double>(l.prop_latency_us) / 1000.0}});
  }
  doc["nodes"] = std::move(nodes_json);
  doc["links"] = std::move(links_json);
  doc["access_nodes"] = access_nodes;
  doc["cap_sentinel"] = cap_sentinel;
  return doc;
}

CloudNetworkGraph CloudNetworkGraph::from_json(const json& doc) {
  CloudNetworkGraph g;
  try {
    g.cap_sentinel = doc.value("cap_sentinel", 0.0);
    for (const auto& n : doc.at("nodes")) {
      Node v;
      v.id = n.at("id").get<NodeId>();
      v.kind = node_kind_from_name(n.at("kind").get<std::string>());
      v.attachment = n.value("attachment", -1);
      if (v.id != static_cast<NodeId>(g.nodes.size()))
        throw parse_error("node ids must be dense and ascending");
      g.nodes.push_back(v);
    }
    for (const auto& e : doc.at("links")) {
      Link l;
      l.id = e.at("id").get<LinkId>();
      l.tail = e.at("tail").get<NodeId>();
      l.head = e.at("head").get<NodeId>();
      l.kind = link_kind_from_name(e.at("kind").get<std::string>());
      l.capacity = e.at("capacity").get<double>();
      l.cost = e.at("cost").get<double>();
      l.prop_latency_us = std::llround(e.at("prop_latency").get<double>() * 1000.0);
      if (l.id != static_cast<LinkId>(g.links.size()))
        throw parse_error("link ids must be dense and ascending");
      if (l.tail < 0 || l.head < 0 || l.tail >= static_cast<NodeId>(g.nodes.size()) ||
          l.head >= static_cast<NodeId>(g.nodes.size()))
        throw parse_error("link endpoint out of range");
      g.links.push_back(l);
    }
    if (doc.contains("access_nodes"))
      g.access_nodes = doc.at("access_nodes").get<std::vector<NodeId>>();
    else
      for (const Node& v : g.nodes)
        if (v.kind == NodeKind::Communication) g.access_nodes.push_back(v.id);
  } catch (const json::exception& e) {
    throw parse_error(std::string("malformed graph document: ") + e.what());
  }
  g.rebuild_adjacency();
  return g;
}

}  // namespace mumenet
