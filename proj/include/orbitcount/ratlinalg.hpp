#pragma once

#include <optional>
#include <vector>

#include "orbitcount/rational.hpp"

namespace oc {

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;  // row major

// Reduced row echelon form in place; returns pivot column indices.
std::vector<int> rref(RatMat& m);

int rank(RatMat m);

// Basis of the right nullspace of m (columns = unknowns).
std::vector<RatVec> nullspace(const RatMat& m, int ncols);

// One solution of m x = b, or nullopt if inconsistent.
std::optional<RatVec> solve(const RatMat& m, const RatVec& b);

// Minimum-Euclidean-norm point of the affine set {x : m x = b}; nullopt if
// the set is empty.
std::optional<RatVec> min_norm_solution(const RatMat& m, const RatVec& b);

// Solve the square SPD-ish system exactly by Gaussian elimination.
std::optional<RatVec> solve_square(RatMat a, RatVec b);

inline Rational dot(const RatVec& a, const RatVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Span utilities: rows are vectors.
struct RatSpan {
  RatMat rows;          // kept in rref
  std::vector<int> pivots;
  int ncols = 0;

  explicit RatSpan(int cols) : ncols(cols) {}
  int dim() const { return static_cast<int>(rows.size()); }
  // Returns true if v was independent (span grew).
  bool insert(RatVec v);
  bool contains(RatVec v) const;
  // Reduce v modulo the span; the remainder is returned.
  RatVec reduce(RatVec v) const;
};

}  // namespace oc
