#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitcount/multipoly.hpp"
#include "orbitcount/ratlinalg.hpp"
#include "orbitcount/schrodinger.hpp"

namespace oc {

// Structure-constant view of a nilpotent Lie algebra with abelian commutator
// ideal. Elements are coordinate vectors over the ordered basis `labels`.
struct AbstractLie {
  int dim = 0;
  std::vector<std::string> labels;
  // table[i][j] = coordinates of [E_i, E_j]
  std::vector<std::vector<RatVec>> table;
  // indices of the basis elements playing the role of L_1..L_n (in order)
  std::vector<int> L_indices;
  // coordinates of L0 = i*V (zero vector when V = 0)
  RatVec L0;

  RatVec bracket(const RatVec& u, const RatVec& v) const;
  bool is_abelian() const;
  // number of steps until the lower central series vanishes
  int lower_central_length() const;
  // span of all brackets
  std::vector<RatVec> derived_span() const;
};

// Point of the dual space: values on the basis.
struct LinFunctional {
  RatVec values;
  Rational operator()(const RatVec& v) const { return dot(values, v); }
};

// The Lie algebra generated by L_j = d_j + i a_j and L0 = i V. The basis is
// (L_1..L_n, i m_1..i m_K) with m_r the closure of {V, b_jk} under partial
// derivatives, reduced to a basis in graded-lex descending order.
struct LieAlgebra {
  SchrodingerSpec spec;
  int n = 0;
  std::vector<MultiPoly> mult_basis;
  AbstractLie alg;

  int dim() const { return alg.dim; }
  int mult_dim() const { return static_cast<int>(mult_basis.size()); }

  // coordinates of a multiplication operator i*p in the full basis
  RatVec mult_coords(const MultiPoly& p) const;
  // reconstruct the polynomial of a vector's multiplication part
  MultiPoly mult_part(const RatVec& v) const;

  LinFunctional evaluation_at_origin() const;

  std::string structure_json() const;

private:
  friend LieAlgebra build_lie_algebra(const SchrodingerSpec&);
  // monomial expansion data for exact coordinates in mult_basis
  std::vector<Monomial> mult_monomials_;
  RatMat mult_solve_;  // rref-augmented data
};

LieAlgebra build_lie_algebra(const SchrodingerSpec& spec);

// Discreteness criterion: the common kernel of y -> y . grad W over
// W in {V, b_jk} is trivial.
bool discreteness(const SchrodingerSpec& spec);

// Matrix of B_f(X, Y) = f([X, Y]) on the basis.
RatMat skew_form(const AbstractLie& g, const LinFunctional& f);

std::vector<RatVec> skew_radical(const AbstractLie& g, const LinFunctional& f);

struct Polarization {
  std::vector<RatVec> h_basis;   // spanning vectors of the polarization
  std::vector<int> complement;   // positions into g.L_indices (0-based, ascending)
};

// Maximal isotropic ideal containing g(f) + R L0 + [g, g], with a
// complementary subset of the L_j recorded. Deterministic (L_1 first).
Polarization polarization(const AbstractLie& g, const LinFunctional& f);

// Quotient by the ideal spanned by `ideal`; kept[i] = original basis index of
// the i-th quotient basis vector, proj maps old coords to new.
AbstractLie quotient(const AbstractLie& g, const std::vector<RatVec>& ideal,
                     std::vector<int>* kept, RatMat* proj);

}  // namespace oc
