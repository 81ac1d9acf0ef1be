#include "orbitcount/ratlinalg.hpp"

#include "orbitcount/errors.hpp"

namespace oc {

std::vector<int> rref(RatMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && rat_is_zero(m[sel][c])) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    Rational inv = Rational(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || rat_is_zero(m[i][c])) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  m.resize(r);
  return pivots;
}

int rank(RatMat m) { return static_cast<int>(rref(m).size()); }

std::vector<RatVec> nullspace(const RatMat& m, int ncols) {
  RatMat a = m;
  for (auto& row : a) row.resize(ncols, Rational(0));
  std::vector<int> piv = rref(a);
  std::vector<bool> is_pivot(ncols, false);
  for (int p : piv) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (int free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    RatVec v(ncols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r)
      v[piv[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVec> solve(const RatMat& m, const RatVec& b) {
  if (m.size() != b.size())
    throw Error(ErrorCode::DimensionMismatch, "solve: rows mismatch");
  std::size_t cols = m.empty() ? 0 : m[0].size();
  RatMat aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  std::vector<int> piv = rref(aug);
  RatVec x(cols, Rational(0));
  for (std::size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] == static_cast<int>(cols)) return std::nullopt;  // 0 = 1 row
    x[piv[r]] = aug[r][cols];
  }
  return x;
}

std::optional<RatVec> solve_square(RatMat a, RatVec b) {
  return solve(a, b);
}

std::optional<RatVec> min_norm_solution(const RatMat& m, const RatVec& b) {
  auto part = solve(m, b);
  if (!part) return std::nullopt;
  std::size_t cols = m.empty() ? part->size() : m[0].size();
  auto ns = nullspace(m, static_cast<int>(cols));
  if (ns.empty()) return part;
  // minimize ||p + N c||^2 -> (N^T N) c = -N^T p
  std::size_t k = ns.size();
  RatMat gram(k, RatVec(k, Rational(0)));
  RatVec rhs(k, Rational(0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(ns[i], ns[j]);
    rhs[i] = -dot(ns[i], *part);
  }
  auto c = solve(gram, rhs);
  if (!c) return part;  // cannot happen: Gram matrix of independent vectors
  RatVec x = *part;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < cols; ++j) x[j] += (*c)[i] * ns[i][j];
  return x;
}

bool RatSpan::insert(RatVec v) {
  v.resize(ncols, Rational(0));
  RatVec r = reduce(std::move(v));
  int lead = -1;
  for (int i = 0; i < ncols; ++i) {
    if (!rat_is_zero(r[i])) {
      lead = i;
      break;
    }
  }
  if (lead < 0) return false;
  Rational inv = Rational(1) / r[lead];
  for (auto& x : r) x *= inv;
  // eliminate this column from existing rows
  for (auto& row : rows) {
    if (!rat_is_zero(row[lead])) {
      Rational f = row[lead];
      for (int i = 0; i < ncols; ++i) row[i] -= f * r[i];
    }
  }
  // insert keeping pivot order
  std::size_t at = 0;
  while (at < rows.size() && pivots[at] < lead) ++at;
  rows.insert(rows.begin() + at, std::move(r));
  pivots.insert(pivots.begin() + at, lead);
  return true;
}

RatVec RatSpan::reduce(RatVec v) const {
  v.resize(ncols, Rational(0));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    int p = pivots[r];
    if (!rat_is_zero(v[p])) {
      Rational f = v[p];
      for (int i = 0; i < ncols; ++i) v[i] -= f * rows[r][i];
    }
  }
  return v;
}

bool RatSpan::contains(RatVec v) const {
  RatVec r = reduce(std::move(v));
  for (const auto& x : r)
    if (!rat_is_zero(x)) return false;
  return true;
}

}  // namespace oc
