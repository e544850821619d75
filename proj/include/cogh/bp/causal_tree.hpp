#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cogh::bp {

using Vector = std::vector<double>;

/// Dense row-major matrix.
struct Matrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(size_t r, size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  static Matrix identity(size_t n);

  double& operator()(size_t r, size_t c) { return data[r * cols + c]; }
  double operator()(size_t r, size_t c) const { return data[r * cols + c]; }

  bool operator==(const Matrix&) const = default;
};

/// M·v, with v indexed by columns.
Vector multiply(const Matrix& m, const Vector& v);
/// v·M, with v indexed by rows.
Vector multiply(const Vector& v, const Matrix& m);
/// Elementwise product, in place.
void hadamard(Vector& acc, const Vector& v);

struct Normalized {
  Vector p;
  bool degenerate = false;
};

/// Divide by the sum. A non-positive sum leaves the vector unchanged and sets
/// `degenerate`.
Normalized normalize(Vector v);

/// One processor of a causal tree.
///
/// `cond` is P(own value | parent value), indexed [parent value][own value],
/// so every row sums to one. The root carries an empty matrix and its prior
/// in `causal`.
struct Processor {
  std::string id;
  size_t dim = 0;
  Vector diagnostic;
  Vector causal;
  Matrix cond;
  std::optional<std::string> parent;
  std::vector<std::string> children;
  Vector external_input;
};

class CausalTree {
 public:
  CausalTree() = default;

  /// Adds a processor and links it under `proc.parent` (children keep
  /// insertion order). The parent must already exist.
  void add(Processor proc);

  const Processor& at(const std::string& id) const;
  Processor& at(const std::string& id);
  const std::map<std::string, Processor>& processors() const { return processors_; }
  const std::string& root() const { return root_; }
  size_t size() const { return processors_.size(); }

  /// Root first, every parent before its children.
  std::vector<std::string> pre_order() const;
  /// Longest root-to-leaf edge count.
  size_t depth() const;

  /// Problems with structure, dimensions and stochasticity; empty if valid.
  std::vector<std::string> problems() const;

 private:
  std::map<std::string, Processor> processors_;
  std::string root_;
};

/// Uniform vector of length n.
Vector uniform(size_t n);

/// The two-letter/two-word recogniser: root "N4" over {THE, CAT} with
/// children N1 {T, C}, N2 {H, A}, N3 {E, T}, identity matrices, uniform word
/// prior, and evidence C, ambiguous, T.
CausalTree the_cat_tree();

}  // namespace cogh::bp
