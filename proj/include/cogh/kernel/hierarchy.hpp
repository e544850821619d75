#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cogh/kernel/value.hpp"

namespace cogh {

/// Tags a node declares for each of its value slots.
struct NodeValueSpaces {
  Tag belief;
  Tag action;
  Tag task_param;
  Tag observation;
  Tag context;
};

using PolicyId = std::string;

using Policy = std::function<ValueSet(const Value& belief)>;
using PolicySelector = std::function<PolicyId(const ValueSet& task_params)>;
using ObservationUpdate = std::function<Value(const ValueSet& observations, const Value& belief)>;
using PredictionUpdate =
    std::function<Value(const ValueSet& context, const ValueSet& actions, const Value& belief)>;

/// Operator bundle of a single cognitive node.
///
/// Operators must be deterministic. `select_policy({})` has to return
/// `initial_policy`; `validate()` checks this.
struct CognitiveNodeSpec {
  NodeId id;
  NodeValueSpaces spaces;
  std::map<PolicyId, Policy> policies;
  PolicySelector select_policy;
  ObservationUpdate observe;
  PredictionUpdate predict;
  Value initial_belief;
  PolicyId initial_policy;
};

/// The distinguished external-world node. Its internal behaviour is opaque:
/// the kernel only feeds it task parameters through `actuate`.
struct WorldNodeSpec {
  NodeId id;
  Tag state;
  Tag task_param;
  std::function<Value(const ValueSet& task_params, const Value& state)> actuate;
};

using SensingFn = std::function<ValueSet(const Value& lower_belief)>;
using TaskParamFn = std::function<ValueSet(const ValueSet& upper_actions)>;
using ContextFn = std::function<ValueSet(const Value& upper_belief)>;

/// Sensing / task-parameter / context triple linking `lower` to `upper`.
/// An empty std::function is the constant empty-set function.
struct EdgeTriple {
  NodeId lower;
  NodeId upper;
  SensingFn sense;
  TaskParamFn task_params;
  ContextFn context;
};

/// Static structure of a cognitive hierarchy. Construction does not check
/// well-formedness; call `validate()`.
class Hierarchy {
 public:
  Hierarchy() = default;
  explicit Hierarchy(WorldNodeSpec world) : world_(std::move(world)) {}

  void set_world(WorldNodeSpec world) { world_ = std::move(world); }
  /// Replaces any node with the same id.
  void add_node(CognitiveNodeSpec node);
  void add_edge(EdgeTriple edge) { edges_.push_back(std::move(edge)); }

  const WorldNodeSpec& world() const { return world_; }
  const NodeId& world_id() const { return world_.id; }
  const std::map<NodeId, CognitiveNodeSpec>& nodes() const { return nodes_; }
  const std::vector<EdgeTriple>& edges() const { return edges_; }

  bool is_world(const NodeId& id) const { return id == world_.id; }
  bool contains(const NodeId& id) const { return is_world(id) || nodes_.count(id) > 0; }
  const CognitiveNodeSpec& node(const NodeId& id) const;

  /// Indices into edges() of the sensing inputs of `id` (edges with upper == id).
  std::vector<size_t> edges_below(const NodeId& id) const;
  /// Indices into edges() whose lower end is `id`.
  std::vector<size_t> edges_above(const NodeId& id) const;

  /// World node followed by every cognitive node, in id order.
  std::vector<NodeId> all_ids() const;

 private:
  WorldNodeSpec world_;
  std::map<NodeId, CognitiveNodeSpec> nodes_;
  std::vector<EdgeTriple> edges_;
};

enum class ViolationKind {
  missing_world,
  world_id_clash,
  unknown_node,
  self_loop,
  duplicate_edge,
  cycle,
  world_not_source,
  extra_source,
  unreachable,
  bad_initial_policy,
  selector_default,
  missing_operator,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  std::string to_string() const;
};

/// Lists every structural problem; an empty report means the hierarchy is
/// well-formed. Never throws.
ValidationReport validate(const Hierarchy& hierarchy);

}  // namespace cogh
