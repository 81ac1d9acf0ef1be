#include "orbitcount/sublevel.hpp"
#include <limits>

#include <algorithm>
#include <cmath>
#include <queue>

#include "orbitcount/errors.hpp"

namespace oc {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(std::uint64_t& state) {
  state = splitmix64(state);
  return static_cast<double>(state >> 11) * 0x1.0p-53;
}

double SublevelFn::eval(const std::vector<double>& x) const {
  double s = 0;
  for (const auto& [p, e] : terms) {
    double v = p.eval(x);
    if (squares)
      s += v * v;
    else
      s += std::pow(std::fabs(v), e);
  }
  return s;
}

namespace {

// range of x^e over [lo, hi]
std::pair<double, double> pow_range(double lo, double hi, std::uint32_t e) {
  if (e == 0) return {1.0, 1.0};
  auto ipow = [](double v, std::uint32_t k) {
    double r = 1;
    while (k) {
      if (k & 1u) r *= v;
      v *= v;
      k >>= 1u;
    }
    return r;
  };
  double a = ipow(lo, e), b = ipow(hi, e);
  if (e % 2 == 1) return {a, b};
  if (lo >= 0) return {a, b};
  if (hi <= 0) return {b, a};
  return {0.0, std::max(a, b)};
}

std::pair<double, double> poly_range(const MultiPoly& p,
                                     const std::vector<std::pair<double, double>>& box) {
  double lo = 0, hi = 0;
  for (const auto& [m, c] : p.terms()) {
    double tlo = 1, thi = 1;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      auto [a, b] = pow_range(box[i].first, box[i].second, m[i]);
      double c1 = tlo * a, c2 = tlo * b, c3 = thi * a, c4 = thi * b;
      tlo = std::min(std::min(c1, c2), std::min(c3, c4));
      thi = std::max(std::max(c1, c2), std::max(c3, c4));
    }
    double cd = rat_double(c);
    double a = cd * tlo, b = cd * thi;
    lo += std::min(a, b);
    hi += std::max(a, b);
  }
  return {lo, hi};
}

}  // namespace

std::pair<double, double> SublevelFn::range(
    const std::vector<std::pair<double, double>>& box) const {
  double lo = 0, hi = 0;
  for (const auto& [p, e] : terms) {
    auto [a, b] = poly_range(p, box);
    double alo, ahi;  // range of |v|
    if (a >= 0) {
      alo = a;
      ahi = b;
    } else if (b <= 0) {
      alo = -b;
      ahi = -a;
    } else {
      alo = 0;
      ahi = std::max(-a, b);
    }
    if (squares) {
      lo += alo * alo;
      hi += ahi * ahi;
    } else {
      lo += std::pow(alo, e);
      hi += std::pow(ahi, e);
    }
  }
  return {lo, hi};
}

double Box::volume() const {
  double v = 1;
  for (const auto& [a, b] : iv) v *= (b - a);
  return v;
}

namespace {

struct Cell {
  std::vector<std::pair<double, double>> iv;
  double vol;
  std::uint64_t id;
};

int pick_split_axis(const Cell& c) {
  // widest axis in log-scaled diameter
  int best = 0;
  double bestw = -1;
  for (std::size_t i = 0; i < c.iv.size(); ++i) {
    auto [a, b] = c.iv[i];
    double w;
    double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
    w = (b - a) / scale;
    if (a < 0 && b > 0) w *= 2;  // prefer splitting sign-mixed axes at zero
    if (w > bestw) {
      bestw = w;
      best = static_cast<int>(i);
    }
  }
  return best;
}

double split_point(double a, double b) {
  if (a < 0 && b > 0) return 0.0;
  if (a >= 0 && a > 0 && b / a > 16) return std::sqrt(a * b);  // geometric
  if (b <= 0 && b < 0 && a / b > 16) return -std::sqrt(a * b);
  return 0.5 * (a + b);
}

}  // namespace

VolumeEstimate sublevel_volume(const SublevelFn& f, double threshold, const Box& box,
                               long long samples, std::uint64_t seed, int max_leaves) {
  VolumeEstimate out;
  if (box.iv.empty()) return out;

  auto cmp = [](const Cell& a, const Cell& b) { return a.vol < b.vol; };
  std::priority_queue<Cell, std::vector<Cell>, decltype(cmp)> work(cmp);
  std::vector<Cell> undecided;
  double inside = 0;
  double total_vol = box.volume();
  double decided = 0;

  work.push(Cell{box.iv, total_vol, 1});
  int processed = 0;
  while (!work.empty()) {
    Cell c = work.top();
    work.pop();
    auto [lo, hi] = f.range(c.iv);
    if (hi <= threshold) {
      inside += c.vol;
      decided += c.vol;
      continue;
    }
    if (lo > threshold) {
      decided += c.vol;
      continue;
    }
    bool can_split = processed + static_cast<int>(work.size()) +
                         static_cast<int>(undecided.size()) <
                     max_leaves;
    // stop splitting tiny cells
    if (c.vol < total_vol * 1e-12) can_split = false;
    if (!can_split) {
      undecided.push_back(c);
      continue;
    }
    ++processed;
    int ax = pick_split_axis(c);
    double mid = split_point(c.iv[ax].first, c.iv[ax].second);
    if (!(mid > c.iv[ax].first && mid < c.iv[ax].second)) {
      undecided.push_back(c);
      continue;
    }
    Cell l = c, r = c;
    l.iv[ax].second = mid;
    r.iv[ax].first = mid;
    l.vol = 1;
    r.vol = 1;
    for (auto& [a, b] : l.iv) l.vol *= (b - a);
    for (auto& [a, b] : r.iv) r.vol *= (b - a);
    l.id = splitmix64(c.id * 2 + 0x1234);
    r.id = splitmix64(c.id * 2 + 0x4321);
    work.push(std::move(l));
    work.push(std::move(r));
  }

  out.leaves = static_cast<int>(undecided.size());
  out.decided_fraction = total_vol > 0 ? decided / total_vol : 1.0;

  // allocate samples proportionally to cell volume with a floor
  double undecided_vol = 0;
  for (const auto& c : undecided) undecided_vol += c.vol;
  double var_sum = 0;
  std::vector<double> x(box.iv.size());
  for (const auto& c : undecided) {
    long long n = undecided_vol > 0
                      ? std::max<long long>(
                            32, static_cast<long long>(samples * (c.vol / undecided_vol)))
                      : 0;
    std::uint64_t st = splitmix64(seed ^ c.id);
    long long hits = 0;
    for (long long s = 0; s < n; ++s) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        double u = uniform01(st);
        x[i] = c.iv[i].first + u * (c.iv[i].second - c.iv[i].first);
      }
      if (f.eval(x) <= threshold) ++hits;
    }
    out.samples_used += n;
    if (n > 0) {
      double p = static_cast<double>(hits) / static_cast<double>(n);
      inside += c.vol * p;
      // add-one smoothing keeps the variance positive for extreme p
      double pv = (static_cast<double>(hits) + 0.5) / (static_cast<double>(n) + 1.0);
      var_sum += c.vol * c.vol * pv * (1 - pv) / static_cast<double>(n);
    }
  }
  out.volume = inside;
  out.stderr_ = std::sqrt(var_sum);
  return out;
}

namespace {

// range of |c| * prod R_i^{e_i} given per-variable bounds (R_i may be inf)
double monomial_bound(const Monomial& m, const Rational& c, const std::vector<double>& R) {
  double v = std::fabs(rat_double(c));
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!std::isfinite(R[i])) return std::numeric_limits<double>::infinity();
    v *= std::pow(R[i], m[i]);
  }
  return v;
}

Box propagate_bounds(const std::vector<std::pair<MultiPoly, double>>& constraints,
                     int nvars, const char* what) {
  // constraint: |P(x)| <= bound. Iteratively derive |x_i| <= R_i.
  std::vector<double> R(nvars, std::numeric_limits<double>::infinity());
  for (int round = 0; round < nvars + 2; ++round) {
    bool changed = false;
    for (const auto& [p, bound] : constraints) {
      for (const auto& [m, c] : p.terms()) {
        // try to bound the variables appearing in monomial m, assuming the
        // other monomials of p are bounded
        double rest = 0;
        bool rest_ok = true;
        for (const auto& [m2, c2] : p.terms()) {
          if (m2 == m) continue;
          double b = monomial_bound(m2, c2, R);
          if (!std::isfinite(b)) {
            rest_ok = false;
            break;
          }
          rest += b;
        }
        if (!rest_ok) continue;
        // |c| * prod |x_i|^{e_i} <= bound + rest
        double rhs = bound + rest;
        // single-variable monomials give |x_i| <= (rhs/|c|)^{1/e}
        int var = -1;
        bool single = true;
        for (int i = 0; i < nvars; ++i) {
          if (m[i] > 0) {
            if (var >= 0) {
              single = false;
              break;
            }
            var = i;
          }
        }
        if (!single || var < 0) continue;
        double cd = std::fabs(rat_double(c));
        if (cd == 0) continue;
        double r = std::pow(rhs / cd, 1.0 / static_cast<double>(m[var]));
        if (r < R[var] * (1 - 1e-12) || !std::isfinite(R[var])) {
          if (r < R[var]) {
            R[var] = r;
            changed = true;
          }
        }
      }
    }
    if (!changed) break;
  }
  for (int i = 0; i < nvars; ++i)
    if (!std::isfinite(R[i]))
      throw Error(ErrorCode::UnboundedSublevelSet,
                  std::string(what) + ": direction x" + std::to_string(i + 1) +
                      " is not bounded by the coordinate system");
  Box b;
  for (int i = 0; i < nvars; ++i) b.iv.push_back({-R[i] * 1.0000001, R[i] * 1.0000001});
  return b;
}

}  // namespace

Box derive_box_squares(const std::vector<MultiPoly>& coords, double lambda) {
  if (coords.empty())
    throw Error(ErrorCode::InvalidArgument, "no coordinates");
  int nvars = coords[0].nvars();
  std::vector<std::pair<MultiPoly, double>> cons;
  for (const auto& p : coords)
    if (!p.is_zero()) cons.push_back({p, lambda});  // |P| <= lambda
  return propagate_bounds(cons, nvars, "sum-of-squares sublevel set");
}

Box derive_box_terms(const SublevelFn& f, double lambda) {
  std::vector<std::pair<MultiPoly, double>> cons;
  for (const auto& [p, e] : f.terms) {
    if (p.is_constant()) continue;
    // |P|^e <= lambda  ->  |P| <= lambda^{1/e}
    cons.push_back({p, std::pow(lambda, 1.0 / e)});
  }
  return propagate_bounds(cons, f.nvars, "sublevel set");
}

}  // namespace oc
