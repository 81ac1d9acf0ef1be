#include "orbitcount/curves.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "orbitcount/errors.hpp"

namespace oc {

std::string CountingCurve::csv() const {
  std::ostringstream os;
  os << "lambda,value,stderr,flags\n";
  char buf[128];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,", p.lambda, p.value, p.stderr_);
    os << buf << p.flags << "\n";
  }
  return os.str();
}

std::string FitResult::json() const {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "{\"C\": %.17g, \"a\": %.17g, \"b\": %.17g, "
                "\"covariance\": [[%.9g, %.9g], [%.9g, %.9g]], "
                "\"rss\": %.9g, \"npoints\": %d}",
                C, a, b, var_logC, cov, cov, var_a, rss, npoints);
  return buf;
}

namespace {

struct WLS {
  double c0 = 0, c1 = 0;
  double var0 = 0, var1 = 0, cov = 0;
  double rss = 0;
  int n = 0;
};

// weighted least squares y = c0 + c1 x
WLS wls(const std::vector<double>& x, const std::vector<double>& y,
        const std::vector<double>& w) {
  double s = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
    sxx += w[i] * x[i] * x[i];
    sxy += w[i] * x[i] * y[i];
  }
  double det = s * sxx - sx * sx;
  WLS r;
  r.n = static_cast<int>(x.size());
  r.c1 = (s * sxy - sx * sy) / det;
  r.c0 = (sxx * sy - sx * sxy) / det;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double e = y[i] - r.c0 - r.c1 * x[i];
    r.rss += w[i] * e * e;
  }
  double sigma2 = r.n > 2 ? r.rss / (r.n - 2) : r.rss;
  r.var0 = sigma2 * sxx / det;
  r.var1 = sigma2 * s / det;
  r.cov = -sigma2 * sx / det;
  return r;
}

}  // namespace

FitResult fit_powerlog(const CountingCurve& curve, int force_b, int min_points,
                       double min_decades) {
  std::vector<double> lx, ly, w, llx;
  for (const auto& p : curve.points) {
    if (p.lambda <= 1.0 || p.value <= 0) continue;
    double rel = p.value > 0 ? p.stderr_ / p.value : 1.0;
    if (rel <= 0) rel = 1e-6;
    if (rel > 0.9) continue;  // starved Monte Carlo point
    lx.push_back(std::log(p.lambda));
    llx.push_back(std::log(std::log(p.lambda)));
    ly.push_back(std::log(p.value));
    w.push_back(1.0 / (rel * rel));
  }
  if (static_cast<int>(lx.size()) < min_points)
    throw Error(ErrorCode::InsufficientSpan,
                "fit needs at least " + std::to_string(min_points) + " usable points, got " +
                    std::to_string(lx.size()));
  double span = (*std::max_element(lx.begin(), lx.end()) -
                 *std::min_element(lx.begin(), lx.end())) / std::log(10.0);
  if (span < min_decades)
    throw Error(ErrorCode::InsufficientSpan,
                "fit needs " + std::to_string(min_decades) + " decades of lambda, got " +
                    std::to_string(span));

  auto fit_b = [&](int b) {
    std::vector<double> y2(ly);
    for (std::size_t i = 0; i < y2.size(); ++i) y2[i] -= b * llx[i];
    return wls(lx, y2, w);
  };
  int b = force_b;
  WLS best;
  if (force_b < 0) {
    WLS f0 = fit_b(0), f1 = fit_b(1);
    // both models have two free parameters; information criterion reduces to
    // the weighted residual comparison
    if (f0.rss <= f1.rss) {
      b = 0;
      best = f0;
    } else {
      b = 1;
      best = f1;
    }
  } else {
    best = fit_b(force_b);
  }
  FitResult r;
  r.C = std::exp(best.c0);
  r.a = best.c1;
  r.b = b;
  r.var_logC = best.var0;
  r.var_a = best.var1;
  r.cov = best.cov;
  r.rss = best.rss;
  r.npoints = best.n;
  return r;
}

}  // namespace oc
