#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "orbitcount/multipoly.hpp"

namespace oc {

// F(x) = sum_i |P_i(x)|^{e_i}  (or sum_i P_i(x)^2 in squares mode).
struct SublevelFn {
  int nvars = 0;
  std::vector<std::pair<MultiPoly, double>> terms;  // (P_i, e_i)
  bool squares = false;  // ignore exponents, use P^2

  double eval(const std::vector<double>& x) const;
  // conservative range over a box
  std::pair<double, double> range(const std::vector<std::pair<double, double>>& box) const;
};

struct Box {
  std::vector<std::pair<double, double>> iv;
  double volume() const;
};

struct VolumeEstimate {
  double volume = 0;
  double stderr_ = 0;
  double decided_fraction = 0;  // fraction of the box area settled by pruning
  long long samples_used = 0;
  int leaves = 0;
};

// Stratified, interval-pruned Monte Carlo estimate of meas{F <= threshold}
// within `box`. The recursion splits cells whose range straddles the
// threshold; undecided leaves are sampled uniformly. Deterministic for a
// fixed seed.
VolumeEstimate sublevel_volume(const SublevelFn& f, double threshold, const Box& box,
                               long long samples, std::uint64_t seed,
                               int max_leaves = 40000);

// Bounding box for {sum P_j(x)^2 <= lambda^2} derived from coordinate
// degrees: pure-power coordinates bound their variable directly, the rest by
// interval propagation through the remaining coordinates. Throws
// UnboundedSublevelSet if some direction never acquires a bound.
Box derive_box_squares(const std::vector<MultiPoly>& coords, double lambda);

// Same for sum_i |P_i|^{e_i} <= lambda.
Box derive_box_terms(const SublevelFn& f, double lambda);

// deterministic splittable rng helpers
std::uint64_t splitmix64(std::uint64_t x);
double uniform01(std::uint64_t& state);

}  // namespace oc
