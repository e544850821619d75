#include <random>

#include "cogh/bp/equivalence.hpp"

namespace cogh::bp {

namespace {

Vector positive_vector(std::mt19937_64& rng, size_t n) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Vector v(n);
  for (double& x : v) x = u(rng);
  return v;
}

Matrix stochastic_matrix(std::mt19937_64& rng, size_t rows, size_t cols) {
  Matrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    Vector row = normalize(positive_vector(rng, cols)).p;
    for (size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

}  // namespace

CausalTree random_tree(uint64_t seed, const RandomTreeLimits& limits) {
  std::mt19937_64 rng(seed);
  const size_t dim = std::uniform_int_distribution<size_t>(limits.min_dim, limits.max_dim)(rng);
  std::bernoulli_distribution no_evidence(0.3);
  auto evidence = [&] { return no_evidence(rng) ? Vector(dim, 1.0) : positive_vector(rng, dim); };

  CausalTree tree;
  size_t next_id = 1;
  auto name = [&] { return "P" + std::to_string(next_id++); };

  const std::string root = name();
  tree.add(Processor{root, dim, uniform(dim), normalize(positive_vector(rng, dim)).p, {}, std::nullopt, {}, evidence()});

  // breadth-first growth, one level at a time
  std::vector<std::string> level{root};
  for (size_t depth = 0; depth < limits.max_depth && !level.empty(); ++depth) {
    std::vector<std::string> next_level;
    for (const auto& parent : level) {
      const size_t min_children = (depth == 0 && limits.max_branch > 0) ? 1 : 0;
      const size_t n_children = std::uniform_int_distribution<size_t>(min_children, limits.max_branch)(rng);
      for (size_t c = 0; c < n_children; ++c) {
        const std::string id = name();
        tree.add(Processor{id, dim, uniform(dim), uniform(dim), stochastic_matrix(rng, dim, dim), parent, {}, evidence()});
        next_level.push_back(id);
      }
    }
    level = std::move(next_level);
  }
  return tree;
}

}  // namespace cogh::bp
