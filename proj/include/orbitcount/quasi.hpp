#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitcount/multipoly.hpp"
#include "orbitcount/ratlinalg.hpp"

namespace oc {

// Solution set of { <beta,gamma> = 1 for every monomial beta } together with
// gamma > 0, plus the canonical representative.
struct WeightVector {
  enum class SetKind { Point, Polytope } kind = SetKind::Point;
  RatVec gamma;          // canonical representative, strictly positive
  int free_dim = 0;      // dimension of the affine solution set
  std::string describe() const;
};

// Exact quasi-homogeneity weights for a generator family. Throws
// NotQuasiHomogeneous when no gamma > 0 satisfies all constraints.
WeightVector quasi_weights(const std::vector<MultiPoly>& generators);

// Variant used by the scaling construction: the equality constraints are
// imposed only on the componentwise-maximal monomials of each generator, and
// <beta,gamma> <= 1 is verified for the rest. Exactly quasi-homogeneous
// inputs give the same result as quasi_weights.
WeightVector top_graded_weights(const std::vector<MultiPoly>& generators);

// <beta,gamma> for every monomial equal? Returns the common quasi-degree of p
// under gamma, or nullopt if p mixes quasi-degrees (p must be nonzero).
std::optional<Rational> quasi_degree(const MultiPoly& p, const RatVec& gamma);

// Monomials of p whose quasi-degree equals d.
MultiPoly graded_part(const MultiPoly& p, const RatVec& gamma, const Rational& d);

// Largest quasi-degree present in p (p nonzero).
Rational max_quasi_degree(const MultiPoly& p, const RatVec& gamma);

// Exact identity check: P(t^{gamma_j * D} x_j) == t^D P(x) with D = lcm of
// gamma denominators, as polynomials in (x, t).
bool quasi_identity_holds(const MultiPoly& p, const RatVec& gamma);

}  // namespace oc
