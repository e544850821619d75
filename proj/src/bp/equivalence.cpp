#include "cogh/bp/equivalence.hpp"

#include <cmath>
#include <sstream>

#include "cogh/bp/encode.hpp"

namespace cogh::bp {

namespace {

double max_change(const ActiveHierarchy& a, const ActiveHierarchy& b) {
  double worst = 0.0;
  for (const auto& [id, node] : a.nodes) {
    const auto& x = node.belief.as<SupportState>();
    const auto& y = b.at(id).belief.as<SupportState>();
    for (size_t s = 0; s < x.diagnostics.size(); ++s) {
      for (size_t i = 0; i < x.diagnostics[s].size(); ++i) {
        worst = std::max(worst, std::abs(x.diagnostics[s][i] - y.diagnostics[s][i]));
      }
    }
    for (size_t i = 0; i < x.causal.size(); ++i) worst = std::max(worst, std::abs(x.causal[i] - y.causal[i]));
  }
  return worst;
}

}  // namespace

EquivalenceReport equivalence_check(const CausalTree& tree, double tolerance) {
  EquivalenceReport report;
  std::ostringstream notes;

  report.oracle = propagate(tree);

  ActiveHierarchy state = init_encoded(tree);
  report.ticks = tree.depth() + 1;
  for (size_t t = 1; t <= report.ticks; ++t) {
    ActiveHierarchy next = process_update(state);
    if (report.fixpoint_tick == 0 && t > 1 && max_change(state, next) <= kFixpointTolerance) {
      report.fixpoint_tick = t - 1;
    }
    state = std::move(next);
  }
  ActiveHierarchy verify = process_update(state);
  report.fixpoint_change = max_change(state, verify);
  report.converged = report.fixpoint_change <= kFixpointTolerance;
  if (report.converged && report.fixpoint_tick == 0) report.fixpoint_tick = report.ticks;
  if (!report.converged) {
    notes << "no fixpoint after " << report.ticks << " ticks (last change " << report.fixpoint_change << "); ";
  }

  report.hierarchy = hierarchy_beliefs(state);
  for (const auto& [id, expected] : report.oracle) {
    const NodeBelief& got = report.hierarchy.at(id);
    if (expected.degenerate || got.degenerate) {
      report.degenerate.push_back(id);
      continue;
    }
    for (size_t i = 0; i < expected.p.size(); ++i) {
      report.max_deviation = std::max(report.max_deviation, std::abs(expected.p[i] - got.p[i]));
    }
  }
  if (!report.degenerate.empty()) notes << report.degenerate.size() << " degenerate node belief(s); ";
  report.pass = report.converged && report.degenerate.empty() && report.max_deviation < tolerance;
  if (!report.pass && report.max_deviation >= tolerance) {
    notes << "max deviation " << report.max_deviation << " >= tolerance " << tolerance << "; ";
  }
  report.diagnostics = notes.str();
  return report;
}

std::vector<EquivalenceReport> random_suite(uint64_t base_seed, size_t count, const RandomTreeLimits& limits,
                                            double tolerance) {
  std::vector<EquivalenceReport> out(count);
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    out[i] = equivalence_check(random_tree(base_seed + static_cast<uint64_t>(i), limits), tolerance);
  }
  return out;
}

std::vector<EquivalenceReport> random_suite_serial(uint64_t base_seed, size_t count, const RandomTreeLimits& limits,
                                                   double tolerance) {
  std::vector<EquivalenceReport> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) out.push_back(equivalence_check(random_tree(base_seed + i, limits), tolerance));
  return out;
}

}  // namespace cogh::bp
