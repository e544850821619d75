#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cogh/bp/causal_tree.hpp"
#include "cogh/bp/propagate.hpp"

namespace cogh::bp {

/// Outcome of running a tree through both the reference propagation and its
/// encoded hierarchy.
struct EquivalenceReport {
  bool pass = false;
  bool converged = false;
  /// Ticks run before the verification tick (depth + 1).
  size_t ticks = 0;
  /// First tick after which the hierarchy no longer changed (0 if never).
  size_t fixpoint_tick = 0;
  /// Largest support change produced by the verification tick.
  double fixpoint_change = 0.0;
  double max_deviation = 0.0;
  std::vector<std::string> degenerate;
  std::string diagnostics;
  BeliefTable oracle;
  BeliefTable hierarchy;
};

/// Largest change of any support entry below which two states count as the
/// same fixpoint.
inline constexpr double kFixpointTolerance = 1e-12;

/// Runs propagate(tree), then encodes the tree and applies process_update
/// depth+1 times plus one verification tick, and compares beliefs.
EquivalenceReport equivalence_check(const CausalTree& tree, double tolerance);

struct RandomTreeLimits {
  size_t max_depth = 4;
  size_t max_branch = 3;
  size_t min_dim = 2;
  size_t max_dim = 5;
};

/// Random tree with a single feature dimension, random row-stochastic
/// matrices, random prior and random (sometimes absent) evidence. All
/// probabilities are bounded away from zero, so trees are never degenerate.
CausalTree random_tree(uint64_t seed, const RandomTreeLimits& limits);

/// Tree i of a suite uses seed `base + i`, so results do not depend on how
/// the suite is scheduled.
std::vector<EquivalenceReport> random_suite(uint64_t base_seed, size_t count, const RandomTreeLimits& limits,
                                            double tolerance);

/// Single-threaded reference for random_suite.
std::vector<EquivalenceReport> random_suite_serial(uint64_t base_seed, size_t count, const RandomTreeLimits& limits,
                                                   double tolerance);

}  // namespace cogh::bp
