#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbitcount/curves.hpp"
#include "orbitcount/orbit.hpp"
#include "orbitcount/quasi.hpp"
#include "orbitcount/sublevel.hpp"

namespace oc {

// Phi* = sum |d^a V|^{1/2} + sum |d^a b_jk|^{1/2};
// Psi* carries exponents 1/(|a|+2). Exact term lists retained.
SublevelFn phi_star(const SchrodingerSpec& spec);
SublevelFn psi_star(const SchrodingerSpec& spec);
// Psi_0 = V^{1/2} + sum |b_jk|^{1/2} (no derivatives)
SublevelFn psi_zero(const SchrodingerSpec& spec);

// Monte Carlo growth curve of meas{ sum_j P_j(z)^2 <= lambda^2 }.
CountingCurve mc_growth(const std::vector<MultiPoly>& coords,
                        const std::vector<double>& lambdas, long long samples,
                        std::uint64_t seed);

// Scaling limit mu_0 = lim lambda^{-alpha} (log lambda)^{-beta} mu_lambda.
struct LimitMeasure {
  double alpha = 0;
  Rational alpha_exact = Rational(0);
  bool alpha_is_exact = true;
  int beta = 0;
  int nprime = 0;
  // g-basis indices of surviving multiplication coordinates, with their
  // limiting polynomial expressions in the chart parameters
  std::vector<int> survivor_basis;
  std::vector<MultiPoly> survivor_coords;
  // g-basis indices spanning the annihilated ideal a (supp mu_0 = a-perp)
  std::vector<int> annihilated;
  // density of mu_0 against the pushforward Lebesgue: coeff * |y|^pow on the
  // distinguished coordinate (intermediate family), otherwise none
  bool has_density = false;
  double density_coeff = 1, density_pow = 0;
  // extra Lebesgue normalization 1/|det J| (triangular family)
  double lebesgue_factor = 1;
  std::string engine;  // quasi-dilation | triangular | monomial-strong | monomial-intermediate | point
  std::string validation;
  std::optional<WeightVector> weights;

  std::string json() const;
};

// Exact scaling limit with Monte Carlo cross-validation (|d alpha| <= 0.1 and
// exact beta match, else ValidationFailure). Throws UnsupportedFamily when no
// catalog engine applies.
LimitMeasure exact_limit(const LieAlgebra& g, const OrbitChart& chart,
                         std::uint64_t seed, bool validate = true);

struct DegenerationReport {
  CountingCurve g1_curve, g2_curve;
  FitResult fit1, fit2;
  std::string classification;  // Strong | WeakIntermediate | Inconclusive
  double kappa = 1;            // extrapolated limit of G2/G1 (WeakIntermediate)
  double kappa_lo = 0, kappa_hi = 0;
  double slope = 0, slope_t = 0;  // log-ratio slope test statistic
  std::string notes;

  std::string json() const;
};

// Monte Carlo sublevel volumes of Phi*, Psi*, power-log fits and the
// strong-vs-weak slope test at 95%.
DegenerationReport classify(const SchrodingerSpec& spec,
                            const std::vector<double>& lambdas, long long samples,
                            std::uint64_t seed);

}  // namespace oc
