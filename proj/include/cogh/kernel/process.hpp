#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cogh/kernel/hierarchy.hpp"

namespace cogh {

struct ActiveNode {
  NodeId id;
  Value belief;
  PolicyId policy;
  ValueSet actions;

  bool operator==(const ActiveNode&) const = default;
};

/// Runtime state of a hierarchy: one ActiveNode per cognitive node plus the
/// opaque world state owned by the world node.
///
/// Values are immutable snapshots; every update returns a new instance and
/// leaves its argument untouched.
struct ActiveHierarchy {
  std::shared_ptr<const Hierarchy> hierarchy;
  std::map<NodeId, ActiveNode> nodes;
  Value world_state;

  const ActiveNode& at(const NodeId& id) const;

  /// Compares runtime state only (hierarchies must be the same object).
  friend bool operator==(const ActiveHierarchy& a, const ActiveHierarchy& b) {
    return a.hierarchy == b.hierarchy && a.nodes == b.nodes && a.world_state == b.world_state;
  }
};

class InvalidHierarchy : public std::invalid_argument {
 public:
  explicit InvalidHierarchy(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// An operator failed (or produced/received a value with the wrong tag)
/// during a tick. The tick is abandoned; the input state is unchanged.
class TickError : public std::runtime_error {
 public:
  TickError(NodeId node, std::optional<std::pair<NodeId, NodeId>> edge, const std::string& what);

  const NodeId& node() const { return node_; }
  /// (lower, upper) of the edge whose function was running, if any.
  const std::optional<std::pair<NodeId, NodeId>>& edge() const { return edge_; }

 private:
  NodeId node_;
  std::optional<std::pair<NodeId, NodeId>> edge_;
};

/// Initial active hierarchy: initial beliefs and policies, empty action sets.
/// Throws InvalidHierarchy when validate() reports anything.
ActiveHierarchy init_active(std::shared_ptr<const Hierarchy> hierarchy, Value world_state);

ActiveHierarchy sensing_node_update(const ActiveHierarchy& ah, const NodeId& node);
ActiveHierarchy prediction_node_update(const ActiveHierarchy& ah, const NodeId& node);

/// Sensing sweep in the canonical order (world's successors first).
ActiveHierarchy sensing_process_update(const ActiveHierarchy& ah);
/// Sensing sweep in a caller-supplied order over all cognitive nodes; throws
/// std::invalid_argument unless the order respects the sensing graph.
ActiveHierarchy sensing_process_update(const ActiveHierarchy& ah, std::span<const NodeId> order);

/// Prediction sweep: uppers before lowers, world node last.
ActiveHierarchy prediction_process_update(const ActiveHierarchy& ah);
/// As above with a caller-supplied order over all nodes including the world.
ActiveHierarchy prediction_process_update(const ActiveHierarchy& ah, std::span<const NodeId> order);

/// One tick: full sensing sweep, then full prediction sweep.
ActiveHierarchy process_update(const ActiveHierarchy& ah);

/// Canonical sensing order over cognitive nodes (Kahn, ties broken by id).
std::vector<NodeId> sensing_order(const Hierarchy& h);
/// Canonical prediction order over all nodes, ending with the world node.
std::vector<NodeId> prediction_order(const Hierarchy& h);

bool is_sensing_order(const Hierarchy& h, std::span<const NodeId> order);
bool is_prediction_order(const Hierarchy& h, std::span<const NodeId> order);

/// Every linear extension of the sensing (resp. prediction) partial order,
/// stopping after `limit` orders. Exponential; intended for small fixtures.
std::vector<std::vector<NodeId>> all_sensing_orders(const Hierarchy& h, size_t limit = 100000);
std::vector<std::vector<NodeId>> all_prediction_orders(const Hierarchy& h, size_t limit = 100000);

}  // namespace cogh
