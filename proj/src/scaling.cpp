#include "orbitcount/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orbitcount/errors.hpp"

namespace oc {

namespace {

// all nonzero partial derivatives d^alpha W (alpha over the degree rectangle),
// paired with |alpha|
void all_derivatives(const MultiPoly& w, std::vector<std::pair<MultiPoly, int>>* out) {
  const int n = w.nvars();
  std::vector<int> maxdeg(n);
  for (int j = 1; j <= n; ++j) maxdeg[j - 1] = static_cast<int>(w.degree_in(j));
  std::vector<int> alpha(n, 0);
  for (;;) {
    MultiPoly d = w;
    int order = 0;
    for (int j = 1; j <= n && !d.is_zero(); ++j)
      for (int k = 0; k < alpha[j - 1]; ++k) d = d.partial(j);
    for (int j = 0; j < n; ++j) order += alpha[j];
    if (!d.is_zero()) out->push_back({d, order});
    // odometer
    int j = 0;
    while (j < n) {
      if (alpha[j] < maxdeg[j]) {
        ++alpha[j];
        break;
      }
      alpha[j] = 0;
      ++j;
    }
    if (j == n) break;
  }
}

SublevelFn star_fn(const SchrodingerSpec& spec, bool psi) {
  SublevelFn f;
  f.nvars = spec.n;
  std::vector<MultiPoly> gens;
  if (!spec.V.is_zero()) gens.push_back(spec.V);
  for (int j = 1; j <= spec.n; ++j)
    for (int k = j + 1; k <= spec.n; ++k) {
      MultiPoly b = spec.b(j, k);
      if (!b.is_zero()) gens.push_back(b);
    }
  for (const auto& g : gens) {
    std::vector<std::pair<MultiPoly, int>> ders;
    all_derivatives(g, &ders);
    for (auto& [p, ord] : ders)
      f.terms.push_back({p, psi ? 1.0 / (ord + 2.0) : 0.5});
  }
  return f;
}

}  // namespace

SublevelFn phi_star(const SchrodingerSpec& spec) { return star_fn(spec, false); }
SublevelFn psi_star(const SchrodingerSpec& spec) { return star_fn(spec, true); }

SublevelFn psi_zero(const SchrodingerSpec& spec) {
  SublevelFn f;
  f.nvars = spec.n;
  if (!spec.V.is_zero()) f.terms.push_back({spec.V, 0.5});
  for (int j = 1; j <= spec.n; ++j)
    for (int k = j + 1; k <= spec.n; ++k) {
      MultiPoly b = spec.b(j, k);
      if (!b.is_zero()) f.terms.push_back({b, 0.5});
    }
  return f;
}

CountingCurve mc_growth(const std::vector<MultiPoly>& coords,
                        const std::vector<double>& lambdas, long long samples,
                        std::uint64_t seed) {
  if (samples < 10000)
    throw Error(ErrorCode::InvalidArgument, "mc_growth needs samples >= 10^4");
  for (double l : lambdas)
    if (l < 2)
      throw Error(ErrorCode::InvalidArgument, "mc_growth needs lambda >= 2");
  SublevelFn f;
  f.squares = true;
  f.nvars = coords.empty() ? 0 : coords[0].nvars();
  for (const auto& p : coords) f.terms.push_back({p, 2.0});
  CountingCurve c;
  c.method = "mc-growth";
  c.seed = seed;
  for (double l : lambdas) {
    Box box = derive_box_squares(coords, l);
    auto est = sublevel_volume(f, l * l, box, samples, splitmix64(seed ^ (std::uint64_t)(l * 7919)));
    CurvePoint p;
    p.lambda = l;
    p.value = est.volume;
    p.stderr_ = est.stderr_;
    std::ostringstream fl;
    fl << "leaves=" << est.leaves << ";decided=" << est.decided_fraction;
    p.flags = fl.str();
    c.points.push_back(p);
  }
  return c;
}

std::string LimitMeasure::json() const {
  std::ostringstream os;
  os << "{\n  \"engine\": \"" << engine << "\",\n";
  os << "  \"alpha\": " << alpha;
  if (alpha_is_exact) os << ", \"alpha_exact\": \"" << alpha_exact.get_str() << "\"";
  os << ",\n  \"beta\": " << beta << ",\n  \"nprime\": " << nprime << ",\n";
  os << "  \"survivors\": [";
  for (std::size_t i = 0; i < survivor_coords.size(); ++i) {
    if (i) os << ", ";
    os << '"' << survivor_coords[i].str() << '"';
  }
  os << "],\n  \"annihilated_basis\": [";
  for (std::size_t i = 0; i < annihilated.size(); ++i) {
    if (i) os << ", ";
    os << annihilated[i];
  }
  os << "]";
  if (has_density)
    os << ",\n  \"density\": \"" << density_coeff << " * |y|^" << density_pow << "\"";
  if (lebesgue_factor != 1) os << ",\n  \"lebesgue_factor\": " << lebesgue_factor;
  if (weights) os << ",\n  \"weights\": \"" << weights->describe() << "\"";
  if (!validation.empty()) os << ",\n  \"validation\": \"" << validation << "\"";
  os << "\n}\n";
  return os.str();
}

namespace {

// symbolic determinant of a small polynomial matrix
MultiPoly poly_det(std::vector<std::vector<MultiPoly>> m, int nvars) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return MultiPoly::constant(nvars, 1);
  if (n == 1) return m[0][0];
  MultiPoly det = MultiPoly::zero(nvars);
  for (int j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<MultiPoly>> sub;
    for (int r = 1; r < n; ++r) {
      std::vector<MultiPoly> row;
      for (int c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      sub.push_back(row);
    }
    MultiPoly cof = m[0][j] * poly_det(sub, nvars);
    det = (j % 2 == 0) ? det + cof : det - cof;
  }
  return det;
}

// is the polynomial map x -> (polys) triangular after reordering: some poly
// depends on exactly one unassigned variable, linearly, recursively
bool is_triangular_map(std::vector<MultiPoly> polys, int nx, int x_offset) {
  std::vector<bool> var_used(nx, false), poly_used(polys.size(), false);
  for (int round = 0; round < nx; ++round) {
    bool found = false;
    for (std::size_t p = 0; p < polys.size() && !found; ++p) {
      if (poly_used[p]) continue;
      // variables of this poly not yet assigned
      int last = -1, cnt = 0;
      for (int v = 0; v < nx; ++v) {
        if (var_used[v]) continue;
        if (polys[p].degree_in(x_offset + v + 1) > 0) {
          ++cnt;
          last = v;
        }
      }
      if (cnt == 1 && polys[p].degree_in(x_offset + last + 1) == 1) {
        var_used[last] = true;
        poly_used[p] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

LimitMeasure exact_limit(const LieAlgebra& g, const OrbitChart& ch, std::uint64_t seed,
                         bool validate) {
  LimitMeasure lm;
  lm.nprime = ch.nprime;
  const int np = ch.nprime;
  const int ring = 2 * np;

  if (np == 0) {
    lm.engine = "point";
    lm.alpha = 0;
    lm.alpha_exact = 0;
    lm.beta = 0;
    return lm;
  }

  // first-order coordinates must be plain coexponential xi's
  for (int pos = 0; pos < g.n; ++pos) {
    const MultiPoly& c = ch.coords[pos];
    bool ok = false;
    for (int s = 1; s <= np; ++s)
      if (c == MultiPoly::variable(ring, s)) ok = true;
    if (!ok && !c.is_zero())
      throw Error(ErrorCode::UnsupportedFamily,
                  "a first-order coordinate is not coexponential");
  }

  auto finish_validation = [&](LimitMeasure& out) {
    if (!validate) return;
    std::vector<double> ls = {1e3, 3.16e3, 1e4, 3.16e4, 1e5, 3.16e5, 1e6};
    CountingCurve mc = mc_growth(ch.coords, ls, 200000, seed);
    FitResult fit = fit_powerlog(mc, -1, 5, 1.2);
    std::ostringstream os;
    os << "mc fit a=" << fit.a << " b=" << fit.b << " vs exact alpha=" << out.alpha
       << " beta=" << out.beta;
    out.validation = os.str();
    if (std::fabs(fit.a - out.alpha) > 0.1 || static_cast<int>(fit.b) != out.beta)
      throw Error(ErrorCode::ValidationFailure,
                  "scaling-limit cross-validation failed: " + os.str());
  };

  // ---- triangular family ----
  {
    std::vector<int> nc_idx;
    std::vector<MultiPoly> nc_polys;
    for (int r = 0; r < g.mult_dim(); ++r) {
      const MultiPoly& c = ch.coords[g.n + r];
      if (!c.is_constant()) {
        nc_idx.push_back(g.n + r);
        nc_polys.push_back(c);
      }
    }
    if (static_cast<int>(nc_polys.size()) == np && np >= 1 &&
        is_triangular_map(nc_polys, np, np)) {
      std::vector<std::vector<MultiPoly>> jac(np, std::vector<MultiPoly>(np, MultiPoly::zero(ring)));
      for (int r = 0; r < np; ++r)
        for (int t = 0; t < np; ++t) jac[r][t] = nc_polys[r].partial(np + t + 1);
      MultiPoly det = poly_det(jac, ring);
      if (det.is_constant() && !det.is_zero()) {
        lm.engine = "triangular";
        lm.alpha_exact = Rational(2 * np);
        lm.alpha = 2.0 * np;
        lm.beta = 0;
        lm.lebesgue_factor = 1.0 / std::fabs(rat_double(det.constant_value()));
        lm.survivor_basis = nc_idx;
        lm.survivor_coords = nc_polys;
        for (int r = 0; r < g.mult_dim(); ++r)
          if (ch.coords[g.n + r].is_constant()) lm.annihilated.push_back(g.n + r);
        finish_validation(lm);
        return lm;
      }
    }
  }

  // ---- monomial families ----
  if (auto mm = monomial_b12(g.spec)) {
    const int k = mm->k, l = mm->l;
    // variable carrying the smaller exponent (1-based, original variables)
    const int small_var = mm->swapped ? 1 : 2;
    lm.engine = (k == l) ? "monomial-intermediate" : "monomial-strong";
    if (k > l) {
      lm.alpha_exact = Rational(2) + Rational(1, l);
      lm.beta = 0;
    } else {
      lm.alpha_exact = Rational(2) + Rational(1, k);
      lm.beta = 1;
      lm.has_density = true;
      lm.density_coeff =
          (2.0 / (k * k)) * std::pow(std::fabs(rat_double(mm->coeff)), -1.0 / k);
      lm.density_pow = (1.0 - k) / static_cast<double>(k);
    }
    lm.alpha = rat_double(lm.alpha_exact);
    for (int r = 0; r < g.mult_dim(); ++r) {
      const MultiPoly& m = g.mult_basis[r];
      bool survives = false;
      if (m.term_count() == 1) {
        const auto& mono = m.terms().begin()->first;
        if (k > l) {
          survives = static_cast<int>(mono[small_var - 1]) == l;
        } else {
          survives = mono[0] == static_cast<std::uint32_t>(k) &&
                     mono[1] == static_cast<std::uint32_t>(k);
        }
      }
      if (survives) {
        lm.survivor_basis.push_back(g.n + r);
        lm.survivor_coords.push_back(ch.coords[g.n + r]);
      } else {
        lm.annihilated.push_back(g.n + r);
      }
    }
    finish_validation(lm);
    return lm;
  }

  // ---- quasi-dilation family (Weyl / CdV) ----
  if (np == g.n) {
    std::vector<MultiPoly> gens;
    if (!g.spec.V.is_zero()) gens.push_back(g.spec.V);
    for (int j = 1; j <= g.n; ++j)
      for (int kk = j + 1; kk <= g.n; ++kk) {
        MultiPoly b = g.spec.b(j, kk);
        if (!b.is_zero()) gens.push_back(b);
      }
    if (!gens.empty()) {
      WeightVector w;
      bool have_w = true;
      try {
        w = top_graded_weights(gens);
      } catch (const Error&) {
        have_w = false;
      }
      if (have_w) {
        Rational total(0);
        for (const auto& gm : w.gamma) total += gm;
        lm.engine = "quasi-dilation";
        lm.alpha_exact = Rational(g.n) + total;
        lm.alpha = rat_double(lm.alpha_exact);
        lm.beta = 0;
        lm.weights = w;
        std::vector<MultiPoly> tops;
        for (int r = 0; r < g.mult_dim(); ++r) {
          Rational d = max_quasi_degree(g.mult_basis[r], w.gamma);
          if (d == 1) {
            MultiPoly top = graded_part(g.mult_basis[r], w.gamma, Rational(1));
            lm.survivor_basis.push_back(g.n + r);
            // reindex into the chart ring (x-variables come after the xi's)
            std::vector<MultiPoly> images;
            for (int v = 1; v <= g.n; ++v)
              images.push_back(MultiPoly::variable(ring, np + v));
            lm.survivor_coords.push_back(top.substitute(images));
            tops.push_back(top);
          } else {
            lm.annihilated.push_back(g.n + r);
          }
        }
        // finiteness of the limiting sublevel sets: every direction must be
        // bounded by the surviving coordinates
        try {
          derive_box_squares(tops, 1.0);
        } catch (const Error&) {
          throw Error(ErrorCode::UnsupportedFamily,
                      "surviving coordinates have unbounded sublevel sets (the "
                      "classical Weyl/CdV integral diverges)");
        }
        finish_validation(lm);
        return lm;
      }
    }
  }

  throw Error(ErrorCode::UnsupportedFamily,
              "no scaling-limit engine applies (not triangular, monomial, or "
              "quasi-dilation compatible)");
}

std::string DegenerationReport::json() const {
  std::ostringstream os;
  os << "{\n  \"classification\": \"" << classification << "\",\n";
  os << "  \"kappa\": " << kappa << ",\n";
  os << "  \"kappa_ci\": [" << kappa_lo << ", " << kappa_hi << "],\n";
  os << "  \"slope\": " << slope << ", \"slope_t\": " << slope_t << ",\n";
  os << "  \"fit_G1\": " << fit1.json() << ",\n";
  os << "  \"fit_G2\": " << fit2.json();
  if (!notes.empty()) os << ",\n  \"notes\": \"" << notes << "\"";
  os << "\n}\n";
  return os.str();
}

DegenerationReport classify(const SchrodingerSpec& spec,
                            const std::vector<double>& lambdas, long long samples,
                            std::uint64_t seed) {
  if (!discreteness(spec))
    throw Error(ErrorCode::InvalidArgument,
                "classification requires discrete spectrum");
  SublevelFn phi = phi_star(spec), psi = psi_star(spec);
  DegenerationReport rep;
  rep.g1_curve.method = "mc-G1(phi*)";
  rep.g2_curve.method = "mc-G2(psi*)";
  rep.g1_curve.seed = rep.g2_curve.seed = seed;

  for (double l : lambdas) {
    Box b1 = derive_box_terms(phi, l);
    Box b2 = derive_box_terms(psi, l);
    auto e1 = sublevel_volume(phi, l, b1, samples, splitmix64(seed ^ 0x11 ^ (std::uint64_t)(l * 131)));
    auto e2 = sublevel_volume(psi, l, b2, samples, splitmix64(seed ^ 0x22 ^ (std::uint64_t)(l * 131)));
    rep.g1_curve.points.push_back({l, e1.volume, e1.stderr_, ""});
    rep.g2_curve.points.push_back({l, e2.volume, e2.stderr_, ""});
  }

  // sampled containment check: Phi*(x) <= l and all |d^a W| >= 1 implies
  // Psi*(x) <= l (termwise since t^(1/(o+2)) <= t^(1/2) for t >= 1)
  {
    std::uint64_t st = splitmix64(seed ^ 0x77);
    double l = lambdas.back();
    Box b1 = derive_box_terms(phi, l);
    std::vector<double> x(spec.n);
    for (int s = 0; s < 500; ++s) {
      for (int i = 0; i < spec.n; ++i)
        x[i] = b1.iv[i].first + uniform01(st) * (b1.iv[i].second - b1.iv[i].first);
      if (phi.eval(x) > l) continue;
      bool all_ge1 = true;
      for (const auto& [p, e] : phi.terms)
        if (std::fabs(p.eval(x)) < 1) all_ge1 = false;
      if (all_ge1 && psi.eval(x) > l)
        throw Error(ErrorCode::InternalInconsistency,
                    "G2 >= G1 containment violated on a sample point");
    }
  }

  rep.fit1 = fit_powerlog(rep.g1_curve, -1, 4, 0.9);
  rep.fit2 = fit_powerlog(rep.g2_curve, -1, 4, 0.9);

  // slope test on log(G2/G1) vs log lambda
  std::vector<double> x, y, w;
  for (std::size_t i = 0; i < rep.g1_curve.points.size(); ++i) {
    const auto& p1 = rep.g1_curve.points[i];
    const auto& p2 = rep.g2_curve.points[i];
    if (p1.value <= 0 || p2.value <= 0) continue;
    double rel1 = p1.stderr_ / p1.value, rel2 = p2.stderr_ / p2.value;
    double var = rel1 * rel1 + rel2 * rel2 + 1e-8;
    x.push_back(std::log(p1.lambda));
    y.push_back(std::log(p2.value / p1.value));
    w.push_back(1.0 / var);
  }
  if (x.size() < 3)
    throw Error(ErrorCode::InsufficientSpan, "not enough usable classification points");
  double s = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
    sxx += w[i] * x[i] * x[i];
    sxy += w[i] * x[i] * y[i];
  }
  double det = s * sxx - sx * sx;
  double slope = (s * sxy - sx * sy) / det;
  double icept = (sxx * sy - sx * sxy) / det;
  double rss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double e = y[i] - icept - slope * x[i];
    rss += w[i] * e * e;
  }
  double sigma2 = x.size() > 2 ? rss / (x.size() - 2) : rss;
  double slope_sd = std::sqrt(std::max(sigma2 * s / det, 1e-300));
  rep.slope = slope;
  rep.slope_t = slope / slope_sd;
  const double zc = 1.96;
  double lo = slope - zc * slope_sd, hi = slope + zc * slope_sd;

  if (lo > 0.02) {
    rep.classification = "Strong";
    rep.kappa = 1.0;
    rep.kappa_lo = rep.kappa_hi = 1.0;
    rep.notes = "kappa = 1 (strong degeneration)";
  } else {
    // extrapolate R = kappa + c / log(lambda)
    double s2 = 0, su = 0, sr = 0, suu = 0, sur = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double u = 1.0 / x[i];
      double r = std::exp(y[i]);
      s2 += w[i];
      su += w[i] * u;
      sr += w[i] * r;
      suu += w[i] * u * u;
      sur += w[i] * u * r;
    }
    double det2 = s2 * suu - su * su;
    double kap = (suu * sr - su * sur) / det2;
    double cc = (s2 * sur - su * sr) / det2;
    double rss2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double e = std::exp(y[i]) - kap - cc / x[i];
      rss2 += w[i] * e * e;
    }
    double sg2 = x.size() > 2 ? rss2 / (x.size() - 2) : rss2;
    double kap_sd = std::sqrt(std::max(sg2 * suu / det2, 1e-300));
    rep.kappa = kap;
    rep.kappa_lo = kap - zc * kap_sd;
    rep.kappa_hi = kap + zc * kap_sd;
    if (hi < 0.02) {
      rep.classification = "WeakIntermediate";
    } else {
      rep.classification = "Inconclusive";
      rep.notes =
          "slope test within noise; both hypotheses reported (strong: kappa=1; "
          "weak/intermediate: kappa as extrapolated)";
    }
  }
  return rep;
}

}  // namespace oc
