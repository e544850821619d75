#pragma once

// Brute-force marginals of a causal tree: enumerate every joint assignment,
// weight it by prior · ∏ P(child | parent) · ∏ evidence, and marginalize.
// Shares nothing with the propagation code beyond the tree's data.

#include <map>
#include <string>
#include <vector>

#include "cogh/bp/causal_tree.hpp"

namespace cogh::testing {

struct JointMarginals {
  std::map<std::string, std::vector<double>> marginals;
  double evidence_mass = 0.0;
};

inline JointMarginals enumerate_joint(const bp::CausalTree& tree) {
  std::vector<const bp::Processor*> procs;
  std::map<std::string, size_t> slot;
  for (const auto& [id, p] : tree.processors()) {
    slot[id] = procs.size();
    procs.push_back(&p);
  }

  JointMarginals out;
  std::vector<std::vector<double>> acc;
  for (const auto* p : procs) acc.emplace_back(p->dim, 0.0);

  std::vector<size_t> value(procs.size(), 0);
  while (true) {
    double w = 1.0;
    for (size_t i = 0; i < procs.size(); ++i) {
      const bp::Processor& p = *procs[i];
      if (p.parent) {
        w *= p.cond(value[slot.at(*p.parent)], value[i]);
      } else {
        double prior_sum = 0.0;
        for (double x : p.causal) prior_sum += x;
        w *= p.causal[value[i]] / prior_sum;
      }
      w *= p.external_input[value[i]];
    }
    out.evidence_mass += w;
    for (size_t i = 0; i < procs.size(); ++i) acc[i][value[i]] += w;

    // odometer increment
    size_t i = 0;
    while (i < procs.size() && ++value[i] == procs[i]->dim) value[i++] = 0;
    if (i == procs.size()) break;
  }

  for (size_t i = 0; i < procs.size(); ++i) {
    for (double& x : acc[i]) x /= out.evidence_mass;
    out.marginals[procs[i]->id] = acc[i];
  }
  return out;
}

}  // namespace cogh::testing
