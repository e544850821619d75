#include "cogh/kernel/process.hpp"

#include <algorithm>
#include <set>

namespace cogh {

const ActiveNode& ActiveHierarchy::at(const NodeId& id) const {
  auto it = nodes.find(id);
  if (it == nodes.end()) throw std::out_of_range("no active node '" + id.str() + "'");
  return it->second;
}

InvalidHierarchy::InvalidHierarchy(ValidationReport report)
    : std::invalid_argument("invalid hierarchy:\n" + report.to_string()), report_(std::move(report)) {}

namespace {

std::string describe(const NodeId& node, const std::optional<std::pair<NodeId, NodeId>>& edge,
                     const std::string& what) {
  std::string out = "node " + node.str();
  if (edge) out += " (edge " + edge->first.str() + "->" + edge->second.str() + ")";
  return out + ": " + what;
}

}  // namespace

TickError::TickError(NodeId node, std::optional<std::pair<NodeId, NodeId>> edge, const std::string& what)
    : std::runtime_error(describe(node, edge, what)), node_(std::move(node)), edge_(std::move(edge)) {}

namespace {

using EdgeRef = std::optional<std::pair<NodeId, NodeId>>;

EdgeRef ref(const EdgeTriple& e) { return std::make_pair(e.lower, e.upper); }

// Runs an operator, converting foreign exceptions into TickError.
template <class F>
auto guarded(const NodeId& node, const EdgeRef& edge, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const TickError&) {
    throw;
  } catch (const std::exception& e) {
    throw TickError(node, edge, e.what());
  }
}

void expect_tags(const ValueSet& values, const Tag& tag, const char* slot, const NodeId& node, const EdgeRef& edge) {
  for (const auto& v : values) {
    if (v.tag() != tag) {
      throw TickError(node, edge, std::string(slot) + " value tagged '" + v.tag() + "', expected '" + tag + "'");
    }
  }
}

void expect_tag(const Value& v, const Tag& tag, const char* slot, const NodeId& node) {
  if (v.tag() != tag) {
    throw TickError(node, std::nullopt, std::string(slot) + " tagged '" + v.tag() + "', expected '" + tag + "'");
  }
}

ActiveNode& mutable_node(ActiveHierarchy& ah, const NodeId& id) {
  auto it = ah.nodes.find(id);
  if (it == ah.nodes.end()) throw std::invalid_argument("no active cognitive node '" + id.str() + "'");
  return it->second;
}

const Value& belief_of(const ActiveHierarchy& ah, const NodeId& id) {
  return ah.hierarchy->is_world(id) ? ah.world_state : ah.at(id).belief;
}

void apply_sensing(ActiveHierarchy& ah, const NodeId& id) {
  const Hierarchy& h = *ah.hierarchy;
  if (h.is_world(id)) throw std::invalid_argument("the world node has no sensing update");
  const CognitiveNodeSpec& spec = h.node(id);
  ActiveNode& self = mutable_node(ah, id);

  ValueSet observations;
  for (size_t i : h.edges_below(id)) {
    const EdgeTriple& e = h.edges()[i];
    if (!e.sense) continue;
    const Value& source = belief_of(ah, e.lower);
    ValueSet out = guarded(id, ref(e), [&] { return e.sense(source); });
    expect_tags(out, spec.spaces.observation, "observation", id, ref(e));
    append(observations, out);
  }
  Value next = guarded(id, std::nullopt, [&] { return spec.observe(observations, self.belief); });
  expect_tag(next, spec.spaces.belief, "updated belief", id);
  self.belief = std::move(next);
}

void apply_world_prediction(ActiveHierarchy& ah) {
  const Hierarchy& h = *ah.hierarchy;
  const WorldNodeSpec& world = h.world();
  ValueSet params;
  for (size_t i : h.edges_above(world.id)) {
    const EdgeTriple& e = h.edges()[i];
    if (!e.task_params) continue;
    ValueSet out = guarded(world.id, ref(e), [&] { return e.task_params(ah.at(e.upper).actions); });
    expect_tags(out, world.task_param, "task parameter", world.id, ref(e));
    append(params, out);
  }
  Value next = guarded(world.id, std::nullopt, [&] { return world.actuate(params, ah.world_state); });
  expect_tag(next, world.state, "world state", world.id);
  ah.world_state = std::move(next);
}

void apply_prediction(ActiveHierarchy& ah, const NodeId& id) {
  const Hierarchy& h = *ah.hierarchy;
  if (h.is_world(id)) {
    apply_world_prediction(ah);
    return;
  }
  const CognitiveNodeSpec& spec = h.node(id);
  ActiveNode& self = mutable_node(ah, id);
  const std::vector<size_t> above = h.edges_above(id);

  PolicyId policy = self.policy;
  ValueSet context;
  if (!above.empty()) {
    ValueSet params;
    for (size_t i : above) {
      const EdgeTriple& e = h.edges()[i];
      const ActiveNode& upper = ah.at(e.upper);
      if (e.task_params) {
        ValueSet out = guarded(id, ref(e), [&] { return e.task_params(upper.actions); });
        expect_tags(out, spec.spaces.task_param, "task parameter", id, ref(e));
        append(params, out);
      }
      if (e.context) {
        ValueSet out = guarded(id, ref(e), [&] { return e.context(upper.belief); });
        expect_tags(out, spec.spaces.context, "context", id, ref(e));
        append(context, out);
      }
    }
    policy = guarded(id, std::nullopt, [&] { return spec.select_policy(params); });
  }

  auto chosen = spec.policies.find(policy);
  if (chosen == spec.policies.end()) {
    throw TickError(id, std::nullopt, "policy selector returned unknown policy '" + policy + "'");
  }
  ValueSet actions = guarded(id, std::nullopt, [&] { return chosen->second(self.belief); });
  expect_tags(actions, spec.spaces.action, "action", id, std::nullopt);

  Value next = guarded(id, std::nullopt, [&] { return spec.predict(context, actions, self.belief); });
  expect_tag(next, spec.spaces.belief, "predicted belief", id);

  self.belief = std::move(next);
  self.policy = std::move(policy);
  self.actions = std::move(actions);
}

struct Precedence {
  std::vector<NodeId> nodes;
  std::vector<std::pair<NodeId, NodeId>> before;  // (first, second)
};

Precedence sensing_precedence(const Hierarchy& h) {
  Precedence p;
  for (const auto& [id, _] : h.nodes()) p.nodes.push_back(id);
  for (const auto& e : h.edges()) {
    if (!h.is_world(e.lower)) p.before.emplace_back(e.lower, e.upper);
  }
  return p;
}

Precedence prediction_precedence(const Hierarchy& h) {
  Precedence p;
  p.nodes = h.all_ids();
  for (const auto& e : h.edges()) p.before.emplace_back(e.upper, e.lower);
  return p;
}

bool respects(const Precedence& p, std::span<const NodeId> order) {
  if (order.size() != p.nodes.size()) return false;
  std::map<NodeId, size_t> pos;
  for (size_t i = 0; i < order.size(); ++i) {
    if (!pos.emplace(order[i], i).second) return false;
  }
  for (const auto& id : p.nodes) {
    if (!pos.count(id)) return false;
  }
  return std::all_of(p.before.begin(), p.before.end(),
                     [&](const auto& rel) { return pos.at(rel.first) < pos.at(rel.second); });
}

std::vector<NodeId> canonical(const Precedence& p) {
  std::map<NodeId, int> indegree;
  std::map<NodeId, std::vector<NodeId>> succ;
  for (const auto& id : p.nodes) indegree[id] = 0;
  for (const auto& [a, b] : p.before) {
    succ[a].push_back(b);
    ++indegree[b];
  }
  std::set<NodeId> ready;
  for (const auto& [id, d] : indegree) {
    if (d == 0) ready.insert(id);
  }
  std::vector<NodeId> order;
  while (!ready.empty()) {
    NodeId n = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(n);
    for (const auto& m : succ[n]) {
      if (--indegree[m] == 0) ready.insert(m);
    }
  }
  if (order.size() != p.nodes.size()) throw std::invalid_argument("hierarchy graph has a cycle");
  return order;
}

void extend(const Precedence& p, std::map<NodeId, int>& indegree, const std::map<NodeId, std::vector<NodeId>>& succ,
            std::vector<NodeId>& prefix, std::vector<std::vector<NodeId>>& out, size_t limit) {
  if (out.size() >= limit) return;
  if (prefix.size() == p.nodes.size()) {
    out.push_back(prefix);
    return;
  }
  for (const auto& id : p.nodes) {
    if (indegree[id] != 0) continue;
    indegree[id] = -1;
    auto it = succ.find(id);
    if (it != succ.end()) {
      for (const auto& m : it->second) --indegree[m];
    }
    prefix.push_back(id);
    extend(p, indegree, succ, prefix, out, limit);
    prefix.pop_back();
    if (it != succ.end()) {
      for (const auto& m : it->second) ++indegree[m];
    }
    indegree[id] = 0;
  }
}

std::vector<std::vector<NodeId>> enumerate(const Precedence& p, size_t limit) {
  std::map<NodeId, int> indegree;
  std::map<NodeId, std::vector<NodeId>> succ;
  for (const auto& id : p.nodes) indegree[id] = 0;
  for (const auto& [a, b] : p.before) {
    succ[a].push_back(b);
    ++indegree[b];
  }
  std::vector<std::vector<NodeId>> out;
  std::vector<NodeId> prefix;
  extend(p, indegree, succ, prefix, out, limit);
  return out;
}

}  // namespace

ActiveHierarchy init_active(std::shared_ptr<const Hierarchy> hierarchy, Value world_state) {
  if (!hierarchy) throw std::invalid_argument("null hierarchy");
  ValidationReport report = validate(*hierarchy);
  if (!report.ok()) throw InvalidHierarchy(std::move(report));
  if (world_state.tag() != hierarchy->world().state) {
    throw std::invalid_argument("world state tagged '" + world_state.tag() + "', expected '" +
                                hierarchy->world().state + "'");
  }
  ActiveHierarchy ah;
  for (const auto& [id, spec] : hierarchy->nodes()) {
    if (spec.initial_belief.tag() != spec.spaces.belief) {
      throw std::invalid_argument("initial belief of '" + id.str() + "' has the wrong tag");
    }
    ah.nodes.emplace(id, ActiveNode{id, spec.initial_belief, spec.initial_policy, {}});
  }
  ah.world_state = std::move(world_state);
  ah.hierarchy = std::move(hierarchy);
  return ah;
}

ActiveHierarchy sensing_node_update(const ActiveHierarchy& ah, const NodeId& node) {
  ActiveHierarchy next = ah;
  apply_sensing(next, node);
  return next;
}

ActiveHierarchy prediction_node_update(const ActiveHierarchy& ah, const NodeId& node) {
  ActiveHierarchy next = ah;
  apply_prediction(next, node);
  return next;
}

ActiveHierarchy sensing_process_update(const ActiveHierarchy& ah) {
  return sensing_process_update(ah, sensing_order(*ah.hierarchy));
}

ActiveHierarchy sensing_process_update(const ActiveHierarchy& ah, std::span<const NodeId> order) {
  if (!is_sensing_order(*ah.hierarchy, order)) throw std::invalid_argument("order violates the sensing graph");
  ActiveHierarchy next = ah;
  for (const auto& id : order) apply_sensing(next, id);
  return next;
}

ActiveHierarchy prediction_process_update(const ActiveHierarchy& ah) {
  return prediction_process_update(ah, prediction_order(*ah.hierarchy));
}

ActiveHierarchy prediction_process_update(const ActiveHierarchy& ah, std::span<const NodeId> order) {
  if (!is_prediction_order(*ah.hierarchy, order)) throw std::invalid_argument("order violates the prediction graph");
  ActiveHierarchy next = ah;
  for (const auto& id : order) apply_prediction(next, id);
  return next;
}

ActiveHierarchy process_update(const ActiveHierarchy& ah) {
  const Hierarchy& h = *ah.hierarchy;
  ActiveHierarchy next = ah;
  for (const auto& id : sensing_order(h)) apply_sensing(next, id);
  for (const auto& id : prediction_order(h)) apply_prediction(next, id);
  return next;
}

std::vector<NodeId> sensing_order(const Hierarchy& h) { return canonical(sensing_precedence(h)); }
std::vector<NodeId> prediction_order(const Hierarchy& h) { return canonical(prediction_precedence(h)); }

bool is_sensing_order(const Hierarchy& h, std::span<const NodeId> order) {
  return respects(sensing_precedence(h), order);
}

bool is_prediction_order(const Hierarchy& h, std::span<const NodeId> order) {
  return respects(prediction_precedence(h), order);
}

std::vector<std::vector<NodeId>> all_sensing_orders(const Hierarchy& h, size_t limit) {
  return enumerate(sensing_precedence(h), limit);
}

std::vector<std::vector<NodeId>> all_prediction_orders(const Hierarchy& h, size_t limit) {
  return enumerate(prediction_precedence(h), limit);
}

}  // namespace cogh
