#pragma once

// Exhaustive small causal trees for the enumeration comparisons.

#include <random>
#include <string>
#include <vector>

#include "cogh/bp/causal_tree.hpp"

namespace cogh::testing {

/// Every parent array for n nodes where node i > 0 hangs under some j < i.
/// Covers every rooted tree shape with up to n nodes (with repeats).
inline std::vector<std::vector<size_t>> parent_arrays(size_t n) {
  std::vector<std::vector<size_t>> out;
  std::vector<size_t> parents(n, 0);
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == n) {
      out.push_back(parents);
      return;
    }
    for (size_t j = 0; j < i; ++j) {
      parents[i] = j;
      self(self, i + 1);
    }
  };
  if (n == 1) return {{0}};
  rec(rec, 1);
  return out;
}

/// Tree with the given shape; dims[i] per node, random stochastic matrices,
/// prior and evidence. Entries are drawn from [floor, 1].
inline bp::CausalTree shaped_tree(const std::vector<size_t>& parents, const std::vector<size_t>& dims, uint64_t seed,
                                  double floor = 0.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(floor, 1.0);
  auto vec = [&](size_t n) {
    bp::Vector v(n);
    for (double& x : v) x = u(rng);
    return v;
  };
  bp::CausalTree tree;
  for (size_t i = 0; i < parents.size(); ++i) {
    bp::Processor p;
    p.id = "P" + std::to_string(i);
    p.dim = dims[i];
    p.diagnostic = bp::uniform(p.dim);
    p.external_input = vec(p.dim);
    if (i == 0) {
      p.causal = vec(p.dim);
    } else {
      p.causal = bp::uniform(p.dim);
      p.parent = "P" + std::to_string(parents[i]);
      p.cond = bp::Matrix(dims[parents[i]], p.dim);
      for (size_t r = 0; r < p.cond.rows; ++r) {
        bp::Vector row = bp::normalize(vec(p.dim)).p;
        for (size_t c = 0; c < p.cond.cols; ++c) p.cond(r, c) = row[c];
      }
    }
    tree.add(std::move(p));
  }
  return tree;
}

}  // namespace cogh::testing
