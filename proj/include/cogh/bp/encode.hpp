#pragma once

#include <map>
#include <memory>
#include <string>

#include "cogh/bp/causal_tree.hpp"
#include "cogh/bp/propagate.hpp"
#include "cogh/kernel/process.hpp"

namespace cogh::bp {

/// Belief of an encoded processor: diagnostic components
/// ⟨d_E, d_1, …, d_m⟩ (external input first, then one slot per child in
/// child order) and the causal support c.
struct SupportState {
  std::vector<Vector> diagnostics;
  Vector causal;

  bool operator==(const SupportState&) const = default;
};

/// Observation: one vector per diagnostic slot. Senders zero every slot but
/// their own.
struct DiagnosticTuple {
  std::vector<Vector> slots;

  bool operator==(const DiagnosticTuple&) const = default;
};

/// World state of an encoded tree: the external input of every processor.
struct Evidence {
  std::map<std::string, Vector> inputs;

  bool operator==(const Evidence&) const = default;
};

namespace tags {
inline const Tag support = "bp.support";
inline const Tag diagnostics = "bp.diagnostics";
inline const Tag causal = "bp.causal";
inline const Tag none = "bp.none";
inline const Tag evidence = "bp.evidence";
}  // namespace tags

/// Id of the world node in encoded hierarchies.
inline const NodeId kWorldId{"N0"};

/// Encodes a causal tree as a cognitive hierarchy: one node per processor
/// (same id) plus world node N0, a sensing/context edge per parent-child
/// pair and a sensing edge from N0 to every processor. Task-parameter
/// functions are all the empty-set function.
std::shared_ptr<const Hierarchy> encode(const CausalTree& tree);

/// World state carrying each processor's current external input.
Value evidence_state(const CausalTree& tree);

/// Initial active hierarchy of encode(tree) with the tree's evidence.
ActiveHierarchy init_encoded(const CausalTree& tree);

/// α · d_E · ∏ d_j · c for a SupportState-carrying belief.
NodeBelief node_belief(const Value& belief);
NodeBelief node_belief(const SupportState& state);

/// node_belief of every cognitive node.
BeliefTable hierarchy_beliefs(const ActiveHierarchy& ah);

}  // namespace cogh::bp
