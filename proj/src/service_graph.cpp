#include "mumenet/service_graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "mumenet/errors.hpp"
#include "mumenet/rng.hpp"
#include "mumenet/template_rates.hpp"

namespace mumenet {

using nlohmann::json;

const char* function_role_name(FunctionRole r) {
  switch (r) {
    case FunctionRole::Source: return "source";
    case FunctionRole::Processor: return "processor";
    case FunctionRole::Destination: return "destination";
  }
  return "?";
}

const char* commodity_kind_name(CommodityKind k) {
  switch (k) {
    case CommodityKind::Source: return "source";
    case CommodityKind::Processing: return "processing";
    case CommodityKind::Destination: return "destination";
  }
  return "?";
}

namespace {

FunctionRole function_role_from_name(const std::string& s) {
  if (s == "source") return FunctionRole::Source;
  if (s == "processor") return FunctionRole::Processor;
  if (s == "destination") return FunctionRole::Destination;
  throw parse_error("unknown function role '" + s + "'");
}

CommodityKind commodity_kind_from_name(const std::string& s) {
  if (s == "source") return CommodityKind::Source;
  if (s == "processing") return CommodityKind::Processing;
  if (s == "destination") return CommodityKind::Destination;
  throw parse_error("unknown commodity kind '" + s + "'");
}

RateRowKind object_rate_row(const std::string& object_label) {
  if (object_label.rfind("o(Emotions_", 0) == 0) return RateRowKind::EmotionsToVEControls;
  if (object_label.rfind("o(Gestures_", 0) == 0) return RateRowKind::GesturesStream;
  if (object_label.rfind("o(Sounds_", 0) == 0) return RateRowKind::SoundsStream;
  if (object_label == "o(NetTelemetry)") return RateRowKind::NetMonitorToLatComp;
  if (object_label == "o(VEState)") return RateRowKind::VEControlsOut;
  if (object_label == "o(AvatarState)") return RateRowKind::AvatarSynchOut;
  if (object_label == "o(MixOut)") return RateRowKind::AudienceMixOut;
  if (object_label == "o(MusicStream)") return RateRowKind::StreamingOut;
  if (object_label == "o(PredGestures)") return RateRowKind::PredGestures;
  if (object_label == "o(PredSounds)") return RateRowKind::PredSounds;
  if (object_label == "o(CompDelays)") return RateRowKind::CompDelays;
  throw MumeError(ErrorCode::Internal, "object '" + object_label + "' has no rate row");
}

/// One triple per object, keyed by label so draws are order-independent.
RateTriple draw_rates(std::uint64_t rate_seed, const std::string& object_label) {
  Rng rng(derive_seed(rate_seed, "sg.rates." + object_label));
  const RateRow row = rate_row(object_rate_row(object_label));
  RateTriple t;
  t.prod = rng.uniform(row.prod.lo, row.prod.hi);
  t.comm = rng.uniform(row.comm.lo, row.comm.hi);
  t.cons = rng.uniform(row.cons.lo, row.cons.hi);
  return t;
}

struct Builder {
  ServiceGraph sg;
  std::map<std::string, ObjectId> object_by_label;

  FunctionId add_function(FunctionRole role, std::string label, NodeId anchor, UserId user) {
    FunctionId id = static_cast<FunctionId>(sg.functions.size());
    sg.functions.push_back({id, role, std::move(label), anchor, user});
    return id;
  }

  ObjectId intern_object(const std::string& label) {
    auto it = object_by_label.find(label);
    if (it != object_by_label.end()) return it->second;
    ObjectId id = static_cast<ObjectId>(sg.objects.size());
    sg.objects.push_back({id, label});
    object_by_label[label] = id;
    return id;
  }

  CommodityId add_commodity(CommodityKind kind, FunctionId producer, FunctionId consumer,
                            const std::string& object_label, double deadline_ms) {
    CommodityId id = static_cast<CommodityId>(sg.commodities.size());
    Commodity k;
    k.id = id;
    k.kind = kind;
    k.producer = producer;
    k.consumer = consumer;
    k.object = intern_object(object_label);
    k.rates = draw_rates(sg.rate_seed, object_label);
    k.deadline_ms = kind == CommodityKind::Destination ? deadline_ms : 0.0;
    sg.commodities.push_back(std::move(k));
    return id;
  }
};

/// Input sets are structural: a commodity produced by processor P requires
/// every commodity P consumes.
void rebuild_inputs(ServiceGraph& sg) {
  std::vector<std::vector<CommodityId>> consumed(sg.functions.size());
  for (const Commodity& k : sg.commodities)
    consumed[static_cast<std::size_t>(k.consumer)].push_back(k.id);
  for (auto& list : consumed) std::sort(list.begin(), list.end());
  for (Commodity& k : sg.commodities) {
    if (k.kind == CommodityKind::Source)
      k.inputs.clear();
    else
      k.inputs = consumed[static_cast<std::size_t>(k.producer)];
  }
}

void add_user_block(Builder& b, UserId user, NodeId access_node, double deadline_ms,
                    FunctionId ve_controls, FunctionId avatar_synch, FunctionId audience_mix,
                    FunctionId mm_pred, FunctionId streaming) {
  const std::string u = std::to_string(user);
  FunctionId sounds = b.add_function(FunctionRole::Source, "Sounds(" + u + ")", access_node, user);
  FunctionId gestures = b.add_function(FunctionRole::Source, "Gestures(" + u + ")", access_node, user);
  FunctionId emotions = b.add_function(FunctionRole::Source, "Emotions(" + u + ")", access_node, user);
  FunctionId ve_visuals = b.add_function(FunctionRole::Destination, "VEVisuals(" + u + ")", access_node, user);
  FunctionId avatars_visuals =
      b.add_function(FunctionRole::Destination, "AvatarsVisuals(" + u + ")", access_node, user);
  FunctionId audio3d = b.add_function(FunctionRole::Destination, "Audio3D(" + u + ")", access_node, user);

  b.add_commodity(CommodityKind::Source, emotions, ve_controls, "o(Emotions_" + u + ")", 0);
  b.add_commodity(CommodityKind::Source, gestures, avatar_synch, "o(Gestures_" + u + ")", 0);
  b.add_commodity(CommodityKind::Source, gestures, mm_pred, "o(Gestures_" + u + ")", 0);
  b.add_commodity(CommodityKind::Source, sounds, audience_mix, "o(Sounds_" + u + ")", 0);
  b.add_commodity(CommodityKind::Source, sounds, mm_pred, "o(Sounds_" + u + ")", 0);

  b.add_commodity(CommodityKind::Destination, ve_controls, ve_visuals, "o(VEState)", deadline_ms);
  b.add_commodity(CommodityKind::Destination, avatar_synch, avatars_visuals, "o(AvatarState)", deadline_ms);
  b.add_commodity(CommodityKind::Destination, audience_mix, audio3d, "o(MixOut)", deadline_ms);
  b.add_commodity(CommodityKind::Destination, streaming, audio3d, "o(MusicStream)", deadline_ms);
}

}  // namespace

ServiceGraph build_concert_template(const std::vector<NodeId>& user_access,
                                    const std::vector<NodeId>& access_nodes,
                                    const SgParams& params, std::uint64_t rate_seed) {
  if (user_access.empty()) throw MumeError(ErrorCode::BadArgument, "need at least one user");
  if (access_nodes.empty()) throw MumeError(ErrorCode::BadArgument, "need at least one access node");

  Builder b;
  b.sg.rate_seed = rate_seed;
  b.sg.deadline_ms = params.deadline_ms;

  FunctionId ve_controls = b.add_function(FunctionRole::Processor, "VEControls", -1, -1);
  FunctionId avatar_synch = b.add_function(FunctionRole::Processor, "AvatarSynch", -1, -1);
  FunctionId audience_mix = b.add_function(FunctionRole::Processor, "AudienceMix", -1, -1);
  FunctionId mm_pred = b.add_function(FunctionRole::Processor, "MMPred", -1, -1);
  FunctionId streaming = b.add_function(FunctionRole::Processor, "Streaming", -1, -1);
  FunctionId lat_comp = b.add_function(FunctionRole::Processor, "LatComp", -1, -1);

  Rng anchor_rng(derive_seed(rate_seed, "sg.netmon.anchor"));
  const NodeId netmon_anchor =
      access_nodes[static_cast<std::size_t>(anchor_rng.uniform_int(0, static_cast<std::int64_t>(access_nodes.size()) - 1))];
  FunctionId net_monitor = b.add_function(FunctionRole::Source, "NetMonitor", netmon_anchor, -1);

  for (UserId u = 0; u < static_cast<UserId>(user_access.size()); ++u) {
    b.sg.users.push_back({u, user_access[static_cast<std::size_t>(u)]});
    add_user_block(b, u, user_access[static_cast<std::size_t>(u)], params.deadline_ms, ve_controls,
                   avatar_synch, audience_mix, mm_pred, streaming);
  }

  b.add_commodity(CommodityKind::Source, net_monitor, lat_comp, "o(NetTelemetry)", 0);
  b.add_commodity(CommodityKind::Processing, mm_pred, avatar_synch, "o(PredGestures)", 0);
  b.add_commodity(CommodityKind::Processing, mm_pred, audience_mix, "o(PredSounds)", 0);
  b.add_commodity(CommodityKind::Processing, lat_comp, mm_pred, "o(CompDelays)", 0);
  b.add_commodity(CommodityKind::Processing, lat_comp, streaming, "o(CompDelays)", 0);

  rebuild_inputs(b.sg);
  return b.sg;
}

FunctionId ServiceGraph::find_function(const std::string& label) const {
  for (const FunctionNode& f : functions)
    if (f.label == label) return f.id;
  return -1;
}

CommodityId ServiceGraph::find_commodity(FunctionId producer, FunctionId consumer) const {
  for (const Commodity& k : commodities)
    if (k.producer == producer && k.consumer == consumer) return k.id;
  return -1;
}

std::vector<CommodityId> ServiceGraph::commodities_of_object(ObjectId object) const {
  std::vector<CommodityId> out;
  for (const Commodity& k : commodities)
    if (k.object == object) out.push_back(k.id);
  return out;
}

std::vector<CommodityId> ServiceGraph::outputs_of(FunctionId fn) const {
  std::vector<CommodityId> out;
  for (const Commodity& k : commodities)
    if (k.producer == fn) out.push_back(k.id);
  return out;
}

std::vector<CommodityId> ServiceGraph::inputs_to(FunctionId fn) const {
  std::vector<CommodityId> out;
  for (const Commodity& k : commodities)
    if (k.consumer == fn) out.push_back(k.id);
  return out;
}

std::vector<FunctionId> ServiceGraph::processor_topological_order() const {
  std::vector<FunctionId> procs;
  for (const FunctionNode& f : functions)
    if (f.role == FunctionRole::Processor) procs.push_back(f.id);

  std::map<FunctionId, std::set<FunctionId>> succ;
  std::map<FunctionId, int> indegree;
  for (FunctionId p : procs) indegree[p] = 0;
  for (const Commodity& k : commodities) {
    if (function(k.producer).role == FunctionRole::Processor &&
        function(k.consumer).role == FunctionRole::Processor) {
      if (succ[k.producer].insert(k.consumer).second) ++indegree[k.consumer];
    }
  }
  std::vector<FunctionId> order;
  std::set<FunctionId> ready;
  for (FunctionId p : procs)
    if (indegree[p] == 0) ready.insert(p);
  while (!ready.empty()) {
    FunctionId p = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(p);
    for (FunctionId q : succ[p])
      if (--indegree[q] == 0) ready.insert(q);
  }
  if (order.size() != procs.size())
    throw MumeError(ErrorCode::Validation, "processor dependency graph has a cycle");
  return order;
}

SgReport validate_sg(const ServiceGraph& sg) {
  SgReport report;
  auto err = [&report](const std::string& kind, const std::string& detail) {
    report.errors.push_back({kind, detail});
  };
  auto warn = [&report](const std::string& kind, const std::string& detail) {
    report.warnings.push_back({kind, detail});
  };

  const auto nf = static_cast<FunctionId>(sg.functions.size());
  const auto nk = static_cast<CommodityId>(sg.commodities.size());
  const auto no = static_cast<ObjectId>(sg.objects.size());

  for (const Commodity& k : sg.commodities) {
    if (k.producer < 0 || k.producer >= nf || k.consumer < 0 || k.consumer >= nf) {
      err("reference", "commodity " + std::to_string(k.id) + " references a missing function");
      continue;
    }
    if (k.object < 0 || k.object >= no)
      err("object_mapping", "commodity " + std::to_string(k.id) + " has no information object");
    if (k.rates.prod <= 0 || k.rates.comm <= 0 || k.rates.cons <= 0)
      err("rates", "commodity " + std::to_string(k.id) + " has a non-positive rate");

    const FunctionNode& prod = sg.function(k.producer);
    const FunctionNode& cons = sg.function(k.consumer);
    switch (k.kind) {
      case CommodityKind::Source:
        if (prod.role != FunctionRole::Source || cons.role != FunctionRole::Processor)
          err("kind", "source commodity " + std::to_string(k.id) + " must join source -> processor");
        if (!k.inputs.empty())
          err("inputs", "source commodity " + std::to_string(k.id) + " must have empty input set");
        break;
      case CommodityKind::Processing:
        if (prod.role != FunctionRole::Processor || cons.role != FunctionRole::Processor)
          err("kind", "processing commodity " + std::to_string(k.id) + " must join processor -> processor");
        break;
      case CommodityKind::Destination:
        if (prod.role != FunctionRole::Processor || cons.role != FunctionRole::Destination)
          err("kind", "destination commodity " + std::to_string(k.id) + " must join processor -> destination");
        if (k.deadline_ms <= 0)
          err("deadline", "destination commodity " + std::to_string(k.id) + " needs a positive deadline");
        break;
    }
    if (k.kind != CommodityKind::Source) {
      if (k.inputs.empty())
        err("inputs", "commodity " + std::to_string(k.id) + " requires a non-empty input set");
      for (CommodityId l : k.inputs) {
        if (l < 0 || l >= nk) {
          err("inputs", "commodity " + std::to_string(k.id) + " requires missing commodity " + std::to_string(l));
          continue;
        }
        if (sg.commodity(l).consumer != k.producer)
          err("inputs", "input " + std::to_string(l) + " of commodity " + std::to_string(k.id) +
                            " does not feed its producer");
      }
    }
  }

  // Anchors.
  for (const FunctionNode& f : sg.functions) {
    if (f.role == FunctionRole::Processor) {
      if (f.anchor >= 0)
        err("anchor", "processor " + f.label + " must not be pre-anchored");
    } else if (f.anchor < 0) {
      err("anchor", "function " + f.label + " is not anchored");
    }
  }

  // Object mapping must be surjective.
  {
    std::vector<bool> used(sg.objects.size(), false);
    for (const Commodity& k : sg.commodities)
      if (k.object >= 0 && k.object < no) used[static_cast<std::size_t>(k.object)] = true;
    for (const InfoObject& o : sg.objects)
      if (!used[static_cast<std::size_t>(o.id)])
        err("object_mapping", "object " + o.label + " is not carried by any commodity");
  }

  // Commodities of one object must agree on rates (capacity overlap relies on it).
  {
    std::map<ObjectId, RateTriple> seen;
    for (const Commodity& k : sg.commodities) {
      auto [it, inserted] = seen.emplace(k.object, k.rates);
      if (!inserted) {
        const RateTriple& r = it->second;
        if (r.prod != k.rates.prod || r.comm != k.rates.comm || r.cons != k.rates.cons)
          err("object_rates", "object " + std::to_string(k.object) + " carried at diverging rates");
      }
    }
  }

  // Dependency relation must be acyclic.
  {
    enum class Mark { White, Grey, Black };
    std::vector<Mark> mark(sg.commodities.size(), Mark::White);
    std::vector<CommodityId> stack;
    bool cycle = false;
    auto dfs = [&](auto&& self, CommodityId id) -> void {
      mark[static_cast<std::size_t>(id)] = Mark::Grey;
      for (CommodityId l : sg.commodity(id).inputs) {
        if (l < 0 || l >= nk) continue;
        if (mark[static_cast<std::size_t>(l)] == Mark::Grey) {
          cycle = true;
          return;
        }
        if (mark[static_cast<std::size_t>(l)] == Mark::White) self(self, l);
        if (cycle) return;
      }
      mark[static_cast<std::size_t>(id)] = Mark::Black;
    };
    for (const Commodity& k : sg.commodities) {
      if (mark[static_cast<std::size_t>(k.id)] == Mark::White) dfs(dfs, k.id);
      if (cycle) break;
    }
    if (cycle) err("cycle", "commodity dependency relation has a cycle");
  }

  // Processor completeness: with no users the template degenerates to the
  // monitor/compensation chain; downgraded to warnings there.
  for (const FunctionNode& f : sg.functions) {
    if (f.role != FunctionRole::Processor) continue;
    const bool has_in = !sg.inputs_to(f.id).empty();
    const bool has_out = !sg.outputs_of(f.id).empty();
    if (has_in && has_out) continue;
    const std::string detail = "processor " + f.label + (has_in ? " has no output" : has_out ? " has no input" : " is isolated");
    if (sg.users.empty())
      warn("processor_degree", detail);
    else
      err("processor_degree", detail);
  }

  return report;
}

namespace {

ServiceGraph rebuild_from(const ServiceGraph& sg, const std::vector<bool>& keep_fn,
                          const std::vector<bool>& keep_commodity) {
  ServiceGraph out;
  out.rate_seed = sg.rate_seed;
  out.deadline_ms = sg.deadline_ms;
  std::vector<FunctionId> fn_map(sg.functions.size(), -1);
  for (const FunctionNode& f : sg.functions) {
    if (!keep_fn[static_cast<std::size_t>(f.id)]) continue;
    FunctionNode g = f;
    g.id = static_cast<FunctionId>(out.functions.size());
    fn_map[static_cast<std::size_t>(f.id)] = g.id;
    out.functions.push_back(std::move(g));
  }
  std::vector<ObjectId> obj_map(sg.objects.size(), -1);
  auto intern = [&out, &obj_map, &sg](ObjectId old) {
    if (obj_map[static_cast<std::size_t>(old)] >= 0) return obj_map[static_cast<std::size_t>(old)];
    ObjectId id = static_cast<ObjectId>(out.objects.size());
    out.objects.push_back({id, sg.objects[static_cast<std::size_t>(old)].label});
    obj_map[static_cast<std::size_t>(old)] = id;
    return id;
  };
  for (const Commodity& k : sg.commodities) {
    if (!keep_commodity[static_cast<std::size_t>(k.id)]) continue;
    Commodity c = k;
    c.id = static_cast<CommodityId>(out.commodities.size());
    c.producer = fn_map[static_cast<std::size_t>(k.producer)];
    c.consumer = fn_map[static_cast<std::size_t>(k.consumer)];
    c.object = intern(k.object);
    c.inputs.clear();
    out.commodities.push_back(std::move(c));
  }
  for (const UserRecord& u : sg.users) out.users.push_back(u);
  rebuild_inputs(out);
  return out;
}

}  // namespace

ServiceGraph add_user(const ServiceGraph& sg, UserId user, NodeId access_node) {
  for (const UserRecord& u : sg.users)
    if (u.id == user) throw MumeError(ErrorCode::BadArgument, "user already present");

  ServiceGraph out = sg;
  Builder b;
  b.sg = std::move(out);
  for (const InfoObject& o : b.sg.objects) b.object_by_label[o.label] = o.id;

  FunctionId ve_controls = b.sg.find_function("VEControls");
  FunctionId avatar_synch = b.sg.find_function("AvatarSynch");
  FunctionId audience_mix = b.sg.find_function("AudienceMix");
  FunctionId mm_pred = b.sg.find_function("MMPred");
  FunctionId streaming = b.sg.find_function("Streaming");
  if (ve_controls < 0 || avatar_synch < 0 || audience_mix < 0 || mm_pred < 0 || streaming < 0)
    throw MumeError(ErrorCode::BadArgument, "service graph lacks the concert processors");

  b.sg.users.push_back({user, access_node});
  add_user_block(b, user, access_node, b.sg.deadline_ms, ve_controls, avatar_synch, audience_mix,
                 mm_pred, streaming);
  rebuild_inputs(b.sg);
  return b.sg;
}

ServiceGraph remove_user(const ServiceGraph& sg, UserId user) {
  bool found = false;
  for (const UserRecord& u : sg.users) found |= (u.id == user);
  if (!found) throw MumeError(ErrorCode::UnknownUser, "user " + std::to_string(user) + " not present");

  std::vector<bool> keep_fn(sg.functions.size(), true);
  for (const FunctionNode& f : sg.functions)
    if (f.user == user) keep_fn[static_cast<std::size_t>(f.id)] = false;
  std::vector<bool> keep_commodity(sg.commodities.size(), true);
  for (const Commodity& k : sg.commodities)
    if (!keep_fn[static_cast<std::size_t>(k.producer)] || !keep_fn[static_cast<std::size_t>(k.consumer)])
      keep_commodity[static_cast<std::size_t>(k.id)] = false;

  ServiceGraph out = rebuild_from(sg, keep_fn, keep_commodity);
  out.users.clear();
  for (const UserRecord& u : sg.users)
    if (u.id != user) out.users.push_back(u);
  return out;
}

json ServiceGraph::to_json() const {
  json doc;
  json fns = json::array();
  for (const FunctionNode& f : functions) {
    json e = {{"id", f.id}, {"role", function_role_name(f.role)}, {"label", f.label}};
    if (f.anchor >= 0) e["anchor"] = f.anchor;
    if (f.user >= 0) e["user"] = f.user;
    fns.push_back(std::move(e));
  }
  json ks = json::array();
  for (const Commodity& k : commodities) {
    json e = {{"id", k.id},
              {"kind", commodity_kind_name(k.kind)},
              {"producer", k.producer},
              {"consumer", k.consumer},
              {"object", k.object},
              {"rates", {{"prod", k.rates.prod}, {"comm", k.rates.comm}, {"cons", k.rates.cons}}},
              {"inputs", k.inputs}};
    if (k.kind == CommodityKind::Destination) e["deadline_ms"] = k.deadline_ms;
    ks.push_back(std::move(e));
  }
  json objs = json::array();
  for (const InfoObject& o : objects) objs.push_back({{"id", o.id}, {"label", o.label}});
  json us = json::array();
  for (const UserRecord& u : users) us.push_back({{"id", u.id}, {"access_node", u.access_node}});
  doc["functions"] = std::move(fns);
  doc["commodities"] = std::move(ks);
  doc["objects"] = std::move(objs);
  doc["users"] = std::move(us);
  doc["rate_seed"] = rate_seed;
  doc["deadline_ms"] = deadline_ms;
  return doc;
}

ServiceGraph ServiceGraph::from_json(const json& doc) {
  ServiceGraph sg;
  try {
    sg.rate_seed = doc.value("rate_seed", 0ull);
    sg.deadline_ms = doc.value("deadline_ms", 100.0);
    for (const auto& e : doc.at("functions")) {
      FunctionNode f;
      f.id = e.at("id").get<FunctionId>();
      f.role = function_role_from_name(e.at("role").get<std::string>());
      f.label = e.at("label").get<std::string>();
      f.anchor = e.value("anchor", -1);
      f.user = e.value("user", -1);
      if (f.id != static_cast<FunctionId>(sg.functions.size()))
        throw parse_error("function ids must be dense and ascending");
      sg.functions.push_back(std::move(f));
    }
    for (const auto& e : doc.at("objects")) {
      InfoObject o;
      o.id = e.at("id").get<ObjectId>();
      o.label = e.at("label").get<std::string>();
      if (o.id != static_cast<ObjectId>(sg.objects.size()))
        throw parse_error("object ids must be dense and ascending");
      sg.objects.push_back(std::move(o));
    }
    for (const auto& e : doc.at("commodities")) {
      Commodity k;
      k.id = e.at("id").get<CommodityId>();
      k.kind = commodity_kind_from_name(e.at("kind").get<std::string>());
      k.producer = e.at("producer").get<FunctionId>();
      k.consumer = e.at("consumer").get<FunctionId>();
      k.object = e.at("object").get<ObjectId>();
      k.rates.prod = e.at("rates").at("prod").get<double>();
      k.rates.comm = e.at("rates").at("comm").get<double>();
      k.rates.cons = e.at("rates").at("cons").get<double>();
      k.inputs = e.value("inputs", std::vector<CommodityId>{});
      k.deadline_ms = e.value("deadline_ms", 0.0);
      if (k.id != static_cast<CommodityId>(sg.commodities.size()))
        throw parse_error("commodity ids must be dense and ascending");
      sg.commodities.push_back(std::move(k));
    }
    if (doc.contains("users"))
      for (const auto& e : doc.at("users"))
        sg.users.push_back({e.at("id").get<UserId>(), e.at("access_node").get<NodeId>()});
  } catch (const json::exception& e) {
    throw parse_error(std::string("malformed service graph document: ") + e.what());
  }
  return sg;
}

}  // namespace mumenet
