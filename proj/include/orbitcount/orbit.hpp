#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitcount/liealg.hpp"

namespace oc {

struct LimitMeasure;  // defined in scaling.hpp

// Polynomial chart of the coadjoint orbit of f0: phi(xi, x) in g*, one
// polynomial coordinate per basis element of g, in the 2n' parameters
// (xi_1..xi_n', x_1..x_n'). Kostant measure = (2pi)^{-n'} phi_*(Lebesgue).
struct OrbitChart {
  int nprime = 0;
  std::vector<int> complement;      // positions into g.L_indices
  std::vector<MultiPoly> coords;    // indexed by the g basis
  LinFunctional f0;
  // basis indices of the ideal [h,h] that was annihilated before charting
  // (their coordinates are identically zero); empty when h was abelian.
  std::vector<RatVec> quotiented_ideal;
};

OrbitChart chart(const LieAlgebra& g, const Polarization& pol, const LinFunctional& f0);

// Realization of the induced representation: complement directions become
// d/dx_s + i a_s(x) in the Poincare gauge, everything in h becomes
// multiplication. W_red collects the image of H = -sum L_j^2 - i L0.
struct ReducedOperator {
  int n_red = 0;
  std::vector<MultiPoly> a_red;
  MultiPoly W_red;
  std::string provenance;
  ReducedOperator() : W_red(0) {}
};

ReducedOperator realize_reduced(const LieAlgebra& g, const Polarization& pol,
                                const LinFunctional& f);

// Catalog of quotient families (Q, nu) for the supported structures.
struct QuotientFamily {
  enum class Kind { Abelian, HeisenbergCdV, MonomialChain, TriangularChain };
  Kind kind = Kind::Abelian;
  SchrodingerSpec spec;
  int beta = 0;  // log power carried over from the limit measure

  // HeisenbergCdV: generic rank of B(x) is 2r on a dense stratum
  int rank_r = 0;

  // MonomialChain: bracket polynomial b12 = coeff * x1^k x2^l after a
  // possible axis swap making k >= l.
  int mono_k = 0, mono_l = 0;
  double mono_coeff = 0;
  bool axes_swapped = false;
  // intermediate (k = l) density against dy: dens_coeff * |y|^dens_pow
  double dens_coeff = 0, dens_pow = 0;

  // TriangularChain: [L1,L2] = c1 X, [L1,X] = c2 Y; reduced potential
  // ((c1 c2 / 2) a z^2 + b)^2, nu = (2pi)^{-1} |c2| |a| da db.
  double tri_c1 = 0, tri_c2 = 0;

  std::string kind_name() const;
  std::string json() const;
};

// Decompose the limit measure into a family of coadjoint orbits of the
// quotient algebra. Throws UnsupportedStructure outside the catalog.
QuotientFamily orbit_space(const LieAlgebra& g, const LimitMeasure& mu0);

}  // namespace oc
