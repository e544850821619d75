#include "cogh/bp/propagate.hpp"

#include <stdexcept>

namespace cogh::bp {

BeliefTable propagate(const CausalTree& tree) {
  if (auto problems = tree.problems(); !problems.empty()) {
    throw std::invalid_argument("invalid causal tree: " + problems.front());
  }
  const std::vector<std::string> order = tree.pre_order();

  // lambda message each processor sends to its parent, in parent space
  std::map<std::string, Vector> up;
  std::map<std::string, Vector> lambda;
  std::map<std::string, bool> degenerate;

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Processor& p = tree.at(*it);
    Vector l = normalize(p.external_input).p;
    for (const auto& c : p.children) hadamard(l, up.at(c));
    lambda[p.id] = l;
    if (p.parent) {
      up[p.id] = normalize(multiply(p.cond, l)).p;
    }
  }

  std::map<std::string, Vector> pi;
  for (const auto& id : order) {
    const Processor& p = tree.at(id);
    if (!p.parent) {
      pi[id] = normalize(p.causal).p;
    }
    for (size_t k = 0; k < p.children.size(); ++k) {
      Vector support = pi.at(id);
      hadamard(support, normalize(p.external_input).p);
      for (size_t h = 0; h < p.children.size(); ++h) {
        if (h != k) hadamard(support, up.at(p.children[h]));
      }
      const Processor& child = tree.at(p.children[k]);
      Normalized c = normalize(multiply(normalize(support).p, child.cond));
      degenerate[child.id] = degenerate[child.id] || c.degenerate;
      pi[child.id] = std::move(c.p);
    }
  }

  BeliefTable table;
  for (const auto& id : order) {
    Vector bel = lambda.at(id);
    hadamard(bel, pi.at(id));
    Normalized n = normalize(std::move(bel));
    table[id] = NodeBelief{std::move(n.p), n.degenerate || degenerate[id]};
  }
  return table;
}

}  // namespace cogh::bp
