#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace oc {

struct CurvePoint {
  double lambda = 0;
  double value = 0;
  double stderr_ = 0;
  std::string flags;
};

struct CountingCurve {
  std::vector<CurvePoint> points;
  std::string method;
  std::uint64_t seed = 0;
  std::string meta;

  std::string csv() const;  // "lambda,value,stderr,flags"
};

// log N = log C + a log(lambda) + b log log(lambda), b in {0,1} unless free.
struct FitResult {
  double C = 0, a = 0, b = 0;
  double var_logC = 0, var_a = 0, cov = 0;  // covariance of (logC, a)
  double rss = 0;
  int npoints = 0;
  std::string json() const;
};

// Weighted least squares on the log model. b is chosen in {0,1} by BIC when
// force_b < 0, otherwise pinned to force_b. Throws InsufficientSpan when
// fewer than min_points points or less than min_decades decades are present.
FitResult fit_powerlog(const CountingCurve& curve, int force_b = -1,
                       int min_points = 6, double min_decades = 1.5);

}  // namespace oc
