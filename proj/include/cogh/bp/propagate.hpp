#pragma once

#include <map>
#include <string>

#include "cogh/bp/causal_tree.hpp"

namespace cogh::bp {

struct NodeBelief {
  Vector p;
  /// The unnormalized product summed to zero (contradictory evidence); `p`
  /// is then meaningless.
  bool degenerate = false;
};

using BeliefTable = std::map<std::string, NodeBelief>;

/// Reference two-pass propagation over a causal tree.
///
/// Upward: each processor's diagnostic support is its external input times
/// its children's messages, and it sends α·M·λᵀ to its parent. Downward: the
/// root's causal support is its prior; the k-th child receives
/// α·(π · d_E · ∏_{h≠k} λ_h)·M. BEL = α·λ·π.
///
/// Independent of the cognitive-hierarchy kernel. Throws std::invalid_argument
/// on an invalid tree.
BeliefTable propagate(const CausalTree& tree);

}  // namespace cogh::bp
