#include "orbitcount/schrodinger.hpp"

#include <sstream>

#include "orbitcount/errors.hpp"
#include "orbitcount/parse.hpp"

namespace oc {

SchrodingerSpec::SchrodingerSpec(int n_, std::vector<MultiPoly> a_, MultiPoly V_)
    : n(n_), a(std::move(a_)), V(std::move(V_)) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (static_cast<int>(a.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "magnetic potential needs n components");
  for (const auto& p : a)
    if (p.nvars() != n)
      throw Error(ErrorCode::DimensionMismatch, "a_j must live in n variables");
  if (V.nvars() != n)
    throw Error(ErrorCode::DimensionMismatch, "V must live in n variables");
}

SchrodingerSpec SchrodingerSpec::from_expressions(int n,
                                                  const std::vector<std::string>& a_exprs,
                                                  const std::string& v_expr) {
  std::vector<MultiPoly> a;
  for (const auto& e : a_exprs) a.push_back(parse_poly(e, n));
  if (a.empty()) a.assign(n, MultiPoly::zero(n));
  return SchrodingerSpec(n, std::move(a), parse_poly(v_expr, n));
}

MultiPoly SchrodingerSpec::b(int j, int k) const {
  return a[j - 1].partial(k) - a[k - 1].partial(j);
}

bool SchrodingerSpec::has_magnetic() const {
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k)
      if (!b(j, k).is_zero()) return true;
  return false;
}

std::string SchrodingerSpec::describe() const {
  std::ostringstream os;
  os << "n=" << n << "; a=(";
  for (int j = 0; j < n; ++j) {
    if (j) os << ", ";
    os << a[j].str();
  }
  os << "); V=" << V.str();
  return os.str();
}

bool is_gauge_invariant_pair(const SchrodingerSpec& s1, const SchrodingerSpec& s2) {
  if (s1.n != s2.n)
    throw Error(ErrorCode::DimensionMismatch, "gauge comparison needs equal dimensions");
  if (!(s1.V == s2.V)) return false;
  for (int j = 1; j <= s1.n; ++j)
    for (int k = j + 1; k <= s1.n; ++k)
      if (!(s1.b(j, k) == s2.b(j, k))) return false;
  return true;
}

}  // namespace oc

namespace oc {

std::optional<MonomialMagnetic> monomial_b12(const SchrodingerSpec& spec) {
  if (spec.n != 2 || !spec.V.is_zero()) return std::nullopt;
  MultiPoly bb = spec.a[1].partial(1) - spec.a[0].partial(2);
  if (bb.term_count() != 1) return std::nullopt;
  auto [m, c] = *bb.terms().begin();
  MonomialMagnetic mm;
  mm.k = static_cast<int>(m[0]);
  mm.l = static_cast<int>(m[1]);
  mm.coeff = c;
  if (mm.k < 1 || mm.l < 1) return std::nullopt;
  if (mm.k < mm.l) {
    std::swap(mm.k, mm.l);
    mm.swapped = true;
  }
  return mm;
}

}  // namespace oc
