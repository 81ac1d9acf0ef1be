#include "orbitcount/quasi.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "orbitcount/errors.hpp"

namespace oc {

std::string WeightVector::describe() const {
  std::ostringstream os;
  os << "gamma = (";
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (i) os << ", ";
    os << gamma[i].get_str();
  }
  os << ")";
  if (kind == SetKind::Polytope)
    os << " [min-norm point of a " << free_dim << "-dimensional admissible set]";
  return os.str();
}

namespace {

std::set<Monomial> collect_monomials(const std::vector<MultiPoly>& gens, int* nvars) {
  if (gens.empty())
    throw Error(ErrorCode::InvalidArgument, "quasi_weights: no generators");
  *nvars = gens[0].nvars();
  std::set<Monomial> mons;
  for (const auto& g : gens) {
    if (g.nvars() != *nvars)
      throw Error(ErrorCode::DimensionMismatch, "quasi_weights: mixed rings");
    if (g.is_zero())
      throw Error(ErrorCode::InvalidArgument, "quasi_weights: zero generator");
    for (const auto& m : g.support()) mons.insert(m);
  }
  return mons;
}

bool all_positive(const RatVec& v) {
  for (const auto& x : v)
    if (sgn(x) <= 0) return false;
  return true;
}

// Maximize the minimum slack s over {A gamma = 1, gamma_j >= s}, by
// enumerating active sets in the nullspace parameterization. Exact; used only
// when the min-norm point fails positivity.
std::optional<RatVec> max_min_slack_point(const RatMat& a, const RatVec& b, int n) {
  auto part = solve(a, b);
  if (!part) return std::nullopt;
  auto ns = nullspace(a, n);
  const int k = static_cast<int>(ns.size());
  if (k == 0) return all_positive(*part) ? std::optional<RatVec>(*part) : std::nullopt;

  // Variables (c_1..c_k, s); constraints (p + N c)_j >= s. The optimum of the
  // LP is at a point where k+1 constraints are active (or unbounded, which
  // cannot happen here if some exponent is positive in every variable; we cap
  // by also trying subsets of smaller size with the gradient condition
  // ignored and simply taking the best feasible candidate found).
  Rational best_s;
  std::optional<RatVec> best;
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::vector<int> comb(k + 1);
  // enumerate subsets of size k+1 (and fall back to size k if degenerate)
  std::vector<std::vector<int>> subsets;
  {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(cur.size()) == std::min(k + 1, n)) {
        subsets.push_back(cur);
        return;
      }
      for (int i = start; i < n; ++i) {
        cur.push_back(i);
        rec(i + 1);
        cur.pop_back();
      }
    };
    rec(0);
  }
  for (const auto& sub : subsets) {
    // solve (p + N c)_j = s for j in sub: unknowns c (k) and s (1)
    RatMat sys;
    RatVec rhs;
    for (int j : sub) {
      RatVec row(k + 1, Rational(0));
      for (int t = 0; t < k; ++t) row[t] = ns[t][j];
      row[k] = -1;
      sys.push_back(row);
      rhs.push_back(-(*part)[j]);
    }
    auto sol = solve(sys, rhs);
    if (!sol) continue;
    RatVec gamma = *part;
    for (int t = 0; t < k; ++t)
      for (int j = 0; j < n; ++j) gamma[j] += (*sol)[t] * ns[t][j];
    Rational s = (*sol)[k];
    // feasibility: gamma_j >= s for all j
    bool ok = true;
    for (int j = 0; j < n; ++j)
      if (gamma[j] < s) { ok = false; break; }
    if (!ok) continue;
    if (!best || s > best_s) {
      best_s = s;
      best = gamma;
    }
  }
  if (best && sgn(best_s) > 0) return best;
  return std::nullopt;
}

WeightVector weights_from_monomials(const std::set<Monomial>& eq_mons,
                                    const std::set<Monomial>& le_mons, int n) {
  RatMat a;
  RatVec b;
  for (const auto& m : eq_mons) {
    RatVec row(n);
    for (int i = 0; i < n; ++i) row[i] = Rational(static_cast<long>(m[i]));
    a.push_back(std::move(row));
    b.push_back(1);
  }
  auto mn = min_norm_solution(a, b);
  if (!mn)
    throw Error(ErrorCode::NotQuasiHomogeneous,
                "the weight system <beta,gamma> = 1 is inconsistent");
  int free_dim = static_cast<int>(nullspace(a, n).size());
  RatVec gamma = *mn;
  if (!all_positive(gamma)) {
    auto alt = max_min_slack_point(a, b, n);
    if (!alt)
      throw Error(ErrorCode::NotQuasiHomogeneous,
                  "no strictly positive weight vector exists");
    gamma = *alt;
  }
  // verify the <=1 side constraints
  for (const auto& m : le_mons) {
    Rational d = 0;
    for (int i = 0; i < n; ++i) d += gamma[i] * Rational(static_cast<long>(m[i]));
    if (d > 1)
      throw Error(ErrorCode::NotQuasiHomogeneous,
                  "a lower monomial exceeds quasi-degree 1");
  }
  WeightVector w;
  w.gamma = std::move(gamma);
  w.free_dim = free_dim;
  w.kind = free_dim == 0 ? WeightVector::SetKind::Point
                         : WeightVector::SetKind::Polytope;
  return w;
}

}  // namespace

WeightVector quasi_weights(const std::vector<MultiPoly>& generators) {
  int n = 0;
  auto mons = collect_monomials(generators, &n);
  return weights_from_monomials(mons, {}, n);
}

WeightVector top_graded_weights(const std::vector<MultiPoly>& generators) {
  int n = 0;
  auto mons = collect_monomials(generators, &n);
  // componentwise-maximal monomials form the equality set
  std::set<Monomial> maximal, rest;
  for (const auto& m : mons) {
    bool dominated = false;
    for (const auto& o : mons) {
      if (o == m) continue;
      bool oge = true, strict = false;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (o[i] < m[i]) { oge = false; break; }
        if (o[i] > m[i]) strict = true;
      }
      if (oge && strict) { dominated = true; break; }
    }
    (dominated ? rest : maximal).insert(m);
  }
  return weights_from_monomials(maximal, rest, n);
}

std::optional<Rational> quasi_degree(const MultiPoly& p, const RatVec& gamma) {
  if (p.is_zero()) return std::nullopt;
  std::optional<Rational> deg;
  for (const auto& m : p.support()) {
    Rational d = 0;
    for (std::size_t i = 0; i < gamma.size(); ++i)
      d += gamma[i] * Rational(static_cast<long>(m[i]));
    if (!deg)
      deg = d;
    else if (*deg != d)
      return std::nullopt;
  }
  return deg;
}

MultiPoly graded_part(const MultiPoly& p, const RatVec& gamma, const Rational& d) {
  MultiPoly r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    Rational dd = 0;
    for (std::size_t i = 0; i < gamma.size(); ++i)
      dd += gamma[i] * Rational(static_cast<long>(m[i]));
    if (dd == d) r.add_term(m, c);
  }
  return r;
}

Rational max_quasi_degree(const MultiPoly& p, const RatVec& gamma) {
  if (p.is_zero())
    throw Error(ErrorCode::InvalidArgument, "max_quasi_degree of zero polynomial");
  Rational best(-1);
  bool first = true;
  for (const auto& m : p.support()) {
    Rational d = 0;
    for (std::size_t i = 0; i < gamma.size(); ++i)
      d += gamma[i] * Rational(static_cast<long>(m[i]));
    if (first || d > best) best = d;
    first = false;
  }
  return best;
}

bool quasi_identity_holds(const MultiPoly& p, const RatVec& gamma) {
  const int n = p.nvars();
  Integer d_lcm = denominator_lcm(gamma);
  // images in ring (x1..xn, t): x_j -> t^{gamma_j * D} x_j
  std::vector<MultiPoly> images;
  for (int j = 1; j <= n; ++j) {
    Rational e = gamma[j - 1] * Rational(d_lcm);
    Integer en = e.get_num();  // denominator must be 1 now
    if (e.get_den() != 1) return false;
    Monomial m(n + 1, 0);
    m[j - 1] = 1;
    m[n] = static_cast<std::uint32_t>(en.get_ui());
    images.push_back(MultiPoly::monomial(n + 1, m, Rational(1)));
  }
  MultiPoly lhs = p.substitute(images);
  Monomial td(n + 1, 0);
  td[n] = static_cast<std::uint32_t>(d_lcm.get_ui());
  MultiPoly rhs = p.widened(n + 1) * MultiPoly::monomial(n + 1, td, Rational(1));
  return lhs == rhs;
}

}  // namespace oc
