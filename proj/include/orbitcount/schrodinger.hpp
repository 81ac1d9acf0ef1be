#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitcount/multipoly.hpp"

namespace oc {

// H = -sum_j (d/dx_j + i a_j(x))^2 + V(x) with polynomial data.
struct SchrodingerSpec {
  int n = 0;
  std::vector<MultiPoly> a;  // size n
  MultiPoly V;

  SchrodingerSpec() : V(0) {}
  SchrodingerSpec(int n_, std::vector<MultiPoly> a_, MultiPoly V_);

  static SchrodingerSpec from_expressions(int n, const std::vector<std::string>& a_exprs,
                                          const std::string& v_expr);

  // Magnetic tensor b_jk = d_k a_j - d_j a_k (antisymmetric), 1-based.
  MultiPoly b(int j, int k) const;
  bool has_magnetic() const;
  bool is_zero_potential() const { return V.is_zero() && !has_magnetic(); }

  std::string describe() const;
};

// True iff V1 = V2 and B1 = B2 as polynomials (same n required).
bool is_gauge_invariant_pair(const SchrodingerSpec& s1, const SchrodingerSpec& s2);

// If n = 2, V = 0 and the bracket polynomial d1 a2 - d2 a1 is a single
// monomial c x1^k x2^l with k, l >= 1, return (k, l, c, swapped) normalized
// so k >= l (swapped = the axes were exchanged).
struct MonomialMagnetic {
  int k = 0, l = 0;
  Rational coeff;
  bool swapped = false;
};
std::optional<MonomialMagnetic> monomial_b12(const SchrodingerSpec& spec);

}  // namespace oc
