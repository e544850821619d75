#include "cogh/kernel/document.hpp"

#include <fstream>

namespace cogh {

void Registry::add_node(std::string key, CognitiveNodeSpec bundle) { nodes_.insert_or_assign(std::move(key), std::move(bundle)); }
void Registry::add_world(std::string key, WorldNodeSpec bundle) { worlds_.insert_or_assign(std::move(key), std::move(bundle)); }
void Registry::add_sensing(std::string key, SensingFn fn) { sensing_.insert_or_assign(std::move(key), std::move(fn)); }
void Registry::add_task_params(std::string key, TaskParamFn fn) { task_params_.insert_or_assign(std::move(key), std::move(fn)); }
void Registry::add_context(std::string key, ContextFn fn) { context_.insert_or_assign(std::move(key), std::move(fn)); }

namespace {

template <class Map>
auto lookup(const Map& m, const std::string& key) -> const typename Map::mapped_type* {
  auto it = m.find(key);
  return it == m.end() ? nullptr : &it->second;
}

}  // namespace

const CognitiveNodeSpec* Registry::node(const std::string& key) const { return lookup(nodes_, key); }
const WorldNodeSpec* Registry::world(const std::string& key) const { return lookup(worlds_, key); }
const SensingFn* Registry::sensing(const std::string& key) const { return lookup(sensing_, key); }
const TaskParamFn* Registry::task_params(const std::string& key) const { return lookup(task_params_, key); }
const ContextFn* Registry::context(const std::string& key) const { return lookup(context_, key); }

void register_generic(Registry& registry) {
  CognitiveNodeSpec passthrough;
  passthrough.spaces = {"generic", "generic", "generic", "generic", "generic"};
  passthrough.policies["idle"] = [](const Value&) { return ValueSet{}; };
  passthrough.select_policy = [](const ValueSet&) { return PolicyId("idle"); };
  passthrough.observe = [](const ValueSet&, const Value& belief) { return belief; };
  passthrough.predict = [](const ValueSet&, const ValueSet&, const Value& belief) { return belief; };
  passthrough.initial_belief = Value::make("generic", 0);
  passthrough.initial_policy = "idle";
  registry.add_node("passthrough", std::move(passthrough));

  registry.add_world("static", WorldNodeSpec{NodeId{}, "generic", "generic",
                                             [](const ValueSet&, const Value& state) { return state; }});

  registry.add_sensing("empty", SensingFn{});
  registry.add_task_params("empty", TaskParamFn{});
  registry.add_context("empty", ContextFn{});
}

namespace {

using nlohmann::json;

const json& member(const json& obj, const std::string& key, const std::string& at) {
  if (!obj.is_object()) throw DocumentError(at, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw DocumentError(at, "missing field '" + key + "'");
  return *it;
}

std::string string_member(const json& obj, const std::string& key, const std::string& at) {
  const json& v = member(obj, key, at);
  if (!v.is_string()) throw DocumentError(at + "/" + key, "expected a string");
  return v.get<std::string>();
}

template <class Fn, class Lookup>
Fn optional_fn(const json& edge, const std::string& key, const std::string& at, Lookup&& find) {
  auto it = edge.find(key);
  if (it == edge.end() || it->is_null()) return Fn{};
  if (!it->is_string()) throw DocumentError(at + "/" + key, "expected a function key");
  const Fn* fn = find(it->template get<std::string>());
  if (!fn) throw DocumentError(at + "/" + key, "unregistered function '" + it->template get<std::string>() + "'");
  return *fn;
}

}  // namespace

Hierarchy load_hierarchy(const json& doc, const Registry& registry) {
  if (!doc.is_object()) throw DocumentError("", "hierarchy document must be an object");

  const json& world_doc = member(doc, "world_node", "");
  const std::string world_key = string_member(world_doc, "bundle", "/world_node");
  const WorldNodeSpec* world_bundle = registry.world(world_key);
  if (!world_bundle) throw DocumentError("/world_node/bundle", "unregistered world bundle '" + world_key + "'");
  WorldNodeSpec world = *world_bundle;
  world.id = NodeId(string_member(world_doc, "id", "/world_node"));

  Hierarchy h(std::move(world));

  const json& nodes = member(doc, "nodes", "");
  if (!nodes.is_array()) throw DocumentError("/nodes", "expected an array");
  for (size_t i = 0; i < nodes.size(); ++i) {
    const std::string at = "/nodes/" + std::to_string(i);
    const std::string key = string_member(nodes[i], "bundle", at);
    const CognitiveNodeSpec* bundle = registry.node(key);
    if (!bundle) throw DocumentError(at + "/bundle", "unregistered node bundle '" + key + "'");
    CognitiveNodeSpec spec = *bundle;
    spec.id = NodeId(string_member(nodes[i], "id", at));
    if (h.nodes().count(spec.id)) throw DocumentError(at + "/id", "duplicate node id '" + spec.id.str() + "'");
    h.add_node(std::move(spec));
  }

  const json& edges = member(doc, "edges", "");
  if (!edges.is_array()) throw DocumentError("/edges", "expected an array");
  for (size_t i = 0; i < edges.size(); ++i) {
    const std::string at = "/edges/" + std::to_string(i);
    const json& e = edges[i];
    EdgeTriple edge;
    edge.lower = NodeId(string_member(e, "lower", at));
    edge.upper = NodeId(string_member(e, "upper", at));
    edge.sense = optional_fn<SensingFn>(e, "sensing", at, [&](const std::string& k) { return registry.sensing(k); });
    edge.task_params =
        optional_fn<TaskParamFn>(e, "task_params", at, [&](const std::string& k) { return registry.task_params(k); });
    edge.context = optional_fn<ContextFn>(e, "context", at, [&](const std::string& k) { return registry.context(k); });
    h.add_edge(std::move(edge));
  }
  return h;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError(path.string(), "cannot open file");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError(path.string() + " (byte " + std::to_string(e.byte) + ")", e.what());
  }
}

}  // namespace cogh
