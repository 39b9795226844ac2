#pragma once

// Tropical matrices: eliminants, minimal assignments and rank.

#include <string>
#include <string_view>
#include <vector>

#include "tropfact/poly.hpp"

namespace tropfact {

class TropMatrix {
 public:
  TropMatrix() = default;
  /// Infinity-filled rows x cols matrix.
  TropMatrix(int rows, int cols);
  /// Rows must be nonempty and of equal length.
  explicit TropMatrix(std::vector<std::vector<TropScalar>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const TropScalar& operator()(int i, int j) const { return data_[i * cols_ + j]; }
  TropScalar& operator()(int i, int j) { return data_[i * cols_ + j]; }

  TropMatrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;

  friend bool operator==(const TropMatrix&, const TropMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<TropScalar> data_;
};

/// One row per line (or `;`-separated), tokens as for polynomials.
TropMatrix parse_matrix(std::string_view text);
std::string to_string(const TropMatrix& m);

/// Rows f, xf, ..., x^{s-1}f, g, xg, ..., x^{r-1}g for r = deg f, s = deg g.
TropMatrix eliminant(const TropPoly& f, const TropPoly& g);

struct AssignmentResult {
  TropScalar optimal_value;
  /// witness[i] is the column of row i; empty when no finite permutation exists.
  std::vector<int> witness;
  bool unique = false;
};

/// Minimal permutation sum with infinite entries as forbidden edges.
/// Uniqueness is decided by re-solving once per witness edge with that edge
/// forbidden.
AssignmentResult min_assignment(const TropMatrix& m);

/// Unique finite minimal permutation. No finite permutation counts as singular.
bool is_nonsingular(const TropMatrix& m);

/// True when the eliminant is nonsingular, which rules out a common factor
/// of positive degree. False says nothing.
bool common_factor_obstruction(const TropPoly& f, const TropPoly& g);

inline constexpr int kDefaultRankCap = 8;

/// Largest k with a nonsingular k x k submatrix, by exhaustive search.
/// Throws std::invalid_argument when min(rows, cols) exceeds `size_cap`.
int tropical_rank(const TropMatrix& m, int size_cap = kDefaultRankCap, int threads = 1);

/// Rank-k test for a k x n matrix with exactly two finite values, the larger
/// present in every column. Grows a row set: repeatedly take a column whose
/// smaller-value entries outside the set sit in exactly one row. The chain
/// alone misses minors made of such a block plus one isolated larger entry,
/// so that case is tried for every all-larger column and row.
bool two_value_rank_full(const TropMatrix& m);

}  // namespace tropfact
