#include "cogh/kernel/hierarchy.hpp"

#include <deque>
#include <set>
#include <sstream>

namespace cogh {

void Hierarchy::add_node(CognitiveNodeSpec node) {
  NodeId id = node.id;
  nodes_.insert_or_assign(std::move(id), std::move(node));
}

const CognitiveNodeSpec& Hierarchy::node(const NodeId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw std::out_of_range("no cognitive node '" + id.str() + "'");
  return it->second;
}

std::vector<size_t> Hierarchy::edges_below(const NodeId& id) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].upper == id) out.push_back(i);
  }
  return out;
}

std::vector<size_t> Hierarchy::edges_above(const NodeId& id) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].lower == id) out.push_back(i);
  }
  return out;
}

std::vector<NodeId> Hierarchy::all_ids() const {
  std::vector<NodeId> ids;
  ids.reserve(nodes_.size() + 1);
  ids.push_back(world_.id);
  for (const auto& [id, _] : nodes_) ids.push_back(id);
  return ids;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::missing_world: return "missing world node";
    case ViolationKind::world_id_clash: return "world id clash";
    case ViolationKind::unknown_node: return "unknown node";
    case ViolationKind::self_loop: return "self loop";
    case ViolationKind::duplicate_edge: return "duplicate edge";
    case ViolationKind::cycle: return "cycle";
    case ViolationKind::world_not_source: return "world node not source";
    case ViolationKind::extra_source: return "extra source";
    case ViolationKind::unreachable: return "unreachable";
    case ViolationKind::bad_initial_policy: return "bad initial policy";
    case ViolationKind::selector_default: return "policy selector default";
    case ViolationKind::missing_operator: return "missing operator";
  }
  return "unknown";
}

bool ValidationReport::has(ViolationKind kind) const {
  for (const auto& v : violations) {
    if (v.kind == kind) return true;
  }
  return false;
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& v : violations) os << cogh::to_string(v.kind) << ": " << v.message << '\n';
  return os.str();
}

namespace {

void check_node_contract(const CognitiveNodeSpec& node, ValidationReport& report) {
  auto add = [&](ViolationKind kind, std::string msg) {
    report.violations.push_back({kind, node.id.str() + ": " + std::move(msg)});
  };
  if (!node.observe || !node.predict || !node.select_policy) {
    add(ViolationKind::missing_operator, "observation/prediction update and policy selector are required");
  }
  if (node.policies.count(node.initial_policy) == 0) {
    add(ViolationKind::bad_initial_policy, "initial policy '" + node.initial_policy + "' is not a policy of the node");
  }
  for (const auto& [pid, policy] : node.policies) {
    if (!policy) add(ViolationKind::missing_operator, "policy '" + pid + "' has no function");
  }
  if (!node.select_policy) return;
  try {
    PolicyId chosen = node.select_policy({});
    if (chosen != node.initial_policy) {
      add(ViolationKind::selector_default,
          "selector({}) returned '" + chosen + "', expected initial policy '" + node.initial_policy + "'");
    }
  } catch (const std::exception& e) {
    add(ViolationKind::selector_default, std::string("selector({}) threw: ") + e.what());
  }
}

}  // namespace

ValidationReport validate(const Hierarchy& h) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string msg) { report.violations.push_back({kind, std::move(msg)}); };

  const NodeId& world = h.world_id();
  if (world.str().empty() || !h.world().actuate) {
    add(ViolationKind::missing_world, "world node needs an id and an actuator");
  }
  if (h.nodes().count(world) > 0) {
    add(ViolationKind::world_id_clash, "cognitive node shares the world node id '" + world.str() + "'");
  }
  for (const auto& [id, node] : h.nodes()) {
    if (node.id != id) add(ViolationKind::unknown_node, "node registered as '" + id.str() + "' has id '" + node.id.str() + "'");
    check_node_contract(node, report);
  }

  // Sensing graph adjacency over known endpoints.
  std::map<NodeId, std::vector<NodeId>> succ;
  std::map<NodeId, int> indegree;
  for (const auto& id : h.all_ids()) indegree[id] = 0;

  std::set<std::pair<NodeId, NodeId>> seen;
  for (const auto& e : h.edges()) {
    const std::string label = e.lower.str() + "->" + e.upper.str();
    bool known = true;
    for (const NodeId* end : {&e.lower, &e.upper}) {
      if (!h.contains(*end)) {
        add(ViolationKind::unknown_node, "edge " + label + " references unknown node '" + end->str() + "'");
        known = false;
      }
    }
    if (e.lower == e.upper) {
      add(ViolationKind::self_loop, "edge " + label);
      continue;
    }
    if (!seen.insert({e.lower, e.upper}).second) {
      add(ViolationKind::duplicate_edge, "edge " + label + " appears more than once");
      continue;
    }
    if (!known) continue;
    succ[e.lower].push_back(e.upper);
    ++indegree[e.upper];
  }

  if (indegree.count(world) && indegree[world] > 0) {
    add(ViolationKind::world_not_source, "world node '" + world.str() + "' has incoming sensing edges");
  }
  for (const auto& [id, node] : h.nodes()) {
    if (indegree[id] == 0) {
      add(ViolationKind::extra_source,
          "node '" + id.str() + "' has no sensing inputs, so '" + world.str() + "' is not the unique source");
    }
  }

  // Kahn's algorithm; leftovers sit on or behind a cycle.
  std::map<NodeId, int> remaining = indegree;
  std::deque<NodeId> ready;
  for (const auto& [id, deg] : remaining) {
    if (deg == 0) ready.push_back(id);
  }
  size_t visited = 0;
  while (!ready.empty()) {
    NodeId n = ready.front();
    ready.pop_front();
    ++visited;
    for (const auto& m : succ[n]) {
      if (--remaining[m] == 0) ready.push_back(m);
    }
  }
  if (visited != remaining.size()) {
    std::string members;
    for (const auto& [id, deg] : remaining) {
      if (deg > 0) members += (members.empty() ? "" : ", ") + id.str();
    }
    add(ViolationKind::cycle, "sensing graph is not acyclic; nodes on or after a cycle: " + members);
  }

  // Reachability from the world node.
  std::set<NodeId> reached{world};
  std::deque<NodeId> frontier{world};
  while (!frontier.empty()) {
    NodeId n = frontier.front();
    frontier.pop_front();
    for (const auto& m : succ[n]) {
      if (reached.insert(m).second) frontier.push_back(m);
    }
  }
  for (const auto& [id, _] : h.nodes()) {
    if (!reached.count(id)) add(ViolationKind::unreachable, "node '" + id.str() + "' is not reachable from '" + world.str() + "'");
  }
  return report;
}

}  // namespace cogh
