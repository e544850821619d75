#include "cogh/bp/causal_tree.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace cogh::bp {

Matrix Matrix::identity(size_t n) {
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector multiply(const Matrix& m, const Vector& v) {
  if (v.size() != m.cols) throw std::invalid_argument("matrix-vector dimension mismatch");
  Vector out(m.rows, 0.0);
  for (size_t r = 0; r < m.rows; ++r) {
    double s = 0.0;
    for (size_t c = 0; c < m.cols; ++c) s += m(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

Vector multiply(const Vector& v, const Matrix& m) {
  if (v.size() != m.rows) throw std::invalid_argument("vector-matrix dimension mismatch");
  Vector out(m.cols, 0.0);
  for (size_t r = 0; r < m.rows; ++r) {
    for (size_t c = 0; c < m.cols; ++c) out[c] += v[r] * m(r, c);
  }
  return out;
}

void hadamard(Vector& acc, const Vector& v) {
  if (acc.size() != v.size()) throw std::invalid_argument("elementwise product dimension mismatch");
  for (size_t i = 0; i < acc.size(); ++i) acc[i] *= v[i];
}

Normalized normalize(Vector v) {
  const double sum = std::accumulate(v.begin(), v.end(), 0.0);
  if (!(sum > 0.0) || !std::isfinite(sum)) return {std::move(v), true};
  for (double& x : v) x /= sum;
  return {std::move(v), false};
}

Vector uniform(size_t n) { return Vector(n, 1.0 / static_cast<double>(n)); }

void CausalTree::add(Processor proc) {
  if (processors_.count(proc.id)) throw std::invalid_argument("duplicate processor '" + proc.id + "'");
  if (proc.parent) {
    auto it = processors_.find(*proc.parent);
    if (it == processors_.end()) throw std::invalid_argument("parent '" + *proc.parent + "' of '" + proc.id + "' is unknown");
    it->second.children.push_back(proc.id);
  } else {
    if (!root_.empty()) throw std::invalid_argument("tree already has root '" + root_ + "'");
    root_ = proc.id;
  }
  proc.children.clear();
  std::string id = proc.id;
  processors_.emplace(std::move(id), std::move(proc));
}

const Processor& CausalTree::at(const std::string& id) const {
  auto it = processors_.find(id);
  if (it == processors_.end()) throw std::out_of_range("no processor '" + id + "'");
  return it->second;
}

Processor& CausalTree::at(const std::string& id) {
  auto it = processors_.find(id);
  if (it == processors_.end()) throw std::out_of_range("no processor '" + id + "'");
  return it->second;
}

std::vector<std::string> CausalTree::pre_order() const {
  std::vector<std::string> order;
  if (root_.empty()) return order;
  std::vector<std::string> stack{root_};
  while (!stack.empty()) {
    std::string id = stack.back();
    stack.pop_back();
    order.push_back(id);
    const auto& children = at(id).children;
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

size_t CausalTree::depth() const {
  std::function<size_t(const std::string&)> walk = [&](const std::string& id) -> size_t {
    size_t d = 0;
    for (const auto& c : at(id).children) d = std::max(d, 1 + walk(c));
    return d;
  };
  return root_.empty() ? 0 : walk(root_);
}

std::vector<std::string> CausalTree::problems() const {
  std::vector<std::string> out;
  if (root_.empty()) {
    out.push_back("tree has no root");
    return out;
  }
  auto nonneg = [](const Vector& v) {
    for (double x : v) {
      if (!(x >= 0.0) || !std::isfinite(x)) return false;
    }
    return true;
  };
  for (const auto& [id, p] : processors_) {
    const std::string who = "processor '" + id + "': ";
    if (p.dim < 2) out.push_back(who + "feature dimension must be at least 2");
    if (p.diagnostic.size() != p.dim || p.causal.size() != p.dim || p.external_input.size() != p.dim) {
      out.push_back(who + "support vectors must have the processor's dimension");
    }
    if (!nonneg(p.diagnostic) || !nonneg(p.causal) || !nonneg(p.external_input)) {
      out.push_back(who + "support vectors must be non-negative");
    }
    if (!p.parent) {
      if (id != root_) out.push_back(who + "second root");
      continue;
    }
    auto parent = processors_.find(*p.parent);
    if (parent == processors_.end()) {
      out.push_back(who + "unknown parent '" + *p.parent + "'");
      continue;
    }
    if (p.cond.rows != parent->second.dim || p.cond.cols != p.dim) {
      out.push_back(who + "conditional matrix must be parent_dim x dim");
      continue;
    }
    for (size_t r = 0; r < p.cond.rows; ++r) {
      double s = 0.0;
      for (size_t c = 0; c < p.cond.cols; ++c) {
        if (!(p.cond(r, c) >= 0.0)) out.push_back(who + "negative conditional probability");
        s += p.cond(r, c);
      }
      if (std::abs(s - 1.0) > 1e-12) out.push_back(who + "conditional matrix row " + std::to_string(r) + " does not sum to 1");
    }
  }
  if (pre_order().size() != processors_.size()) out.push_back("not every processor is reachable from the root");
  return out;
}

CausalTree the_cat_tree() {
  CausalTree tree;
  Processor word{"N4", 2, uniform(2), {0.5, 0.5}, {}, std::nullopt, {}, {1.0, 1.0}};
  tree.add(word);
  const std::pair<const char*, Vector> letters[] = {
      {"N1", {0.0, 1.0}},  // {T, C}: sees C
      {"N2", {0.5, 0.5}},  // {H, A}: ambiguous glyph
      {"N3", {0.0, 1.0}},  // {E, T}: sees T
  };
  for (const auto& [id, evidence] : letters) {
    tree.add(Processor{id, 2, uniform(2), uniform(2), Matrix::identity(2), std::string("N4"), {}, evidence});
  }
  return tree;
}

}  // namespace cogh::bp
