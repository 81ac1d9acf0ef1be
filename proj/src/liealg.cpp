#include "orbitcount/liealg.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "orbitcount/errors.hpp"

namespace oc {

RatVec AbstractLie::bracket(const RatVec& u, const RatVec& v) const {
  RatVec r(dim, Rational(0));
  for (int i = 0; i < dim; ++i) {
    if (rat_is_zero(u[i])) continue;
    for (int j = 0; j < dim; ++j) {
      if (rat_is_zero(v[j])) continue;
      const RatVec& t = table[i][j];
      Rational f = u[i] * v[j];
      for (int k = 0; k < dim; ++k)
        if (!rat_is_zero(t[k])) r[k] += f * t[k];
    }
  }
  return r;
}

bool AbstractLie::is_abelian() const {
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        if (!rat_is_zero(table[i][j][k])) return false;
  return true;
}

std::vector<RatVec> AbstractLie::derived_span() const {
  RatSpan span(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) span.insert(table[i][j]);
  return span.rows;
}

int AbstractLie::lower_central_length() const {
  // g_1 = g, g_{k+1} = [g, g_k]; return smallest k with g_{k+1} = 0
  std::vector<RatVec> cur;
  for (int i = 0; i < dim; ++i) {
    RatVec e(dim, Rational(0));
    e[i] = 1;
    cur.push_back(e);
  }
  int steps = 0;
  while (!cur.empty() && steps < dim + 2) {
    RatSpan next(dim);
    for (int i = 0; i < dim; ++i) {
      RatVec e(dim, Rational(0));
      e[i] = 1;
      for (const auto& v : cur) next.insert(bracket(e, v));
    }
    cur = next.rows;
    ++steps;
  }
  return steps;
}

namespace {

// Closure of {V, b_jk} under partial derivatives; returns a graded-lex
// descending basis (by leading monomial, larger degree first).
std::vector<MultiPoly> derivative_closure(const SchrodingerSpec& spec) {
  const int n = spec.n;
  std::vector<MultiPoly> gens;
  if (!spec.V.is_zero()) gens.push_back(spec.V);
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k) {
      MultiPoly b = spec.b(j, k);
      if (!b.is_zero()) gens.push_back(b);
    }
  // monomial universe: all componentwise sub-monomials of the generators'
  // monomials (closed under taking partial derivatives)
  std::map<Monomial, int, GrlexDesc> col_index;
  {
    std::vector<Monomial> stack;
    for (const auto& g : gens)
      for (const auto& m : g.support()) stack.push_back(m);
    while (!stack.empty()) {
      Monomial m = stack.back();
      stack.pop_back();
      if (!col_index.emplace(m, 0).second) continue;
      for (int j = 0; j < n; ++j) {
        if (m[j] == 0) continue;
        Monomial d = m;
        d[j] -= 1;
        stack.push_back(d);
      }
    }
  }
  int idx = 0;
  for (auto& [m, v] : col_index) v = idx++;
  const int cols = idx;

  auto vec_of = [&](const MultiPoly& p) {
    RatVec v(cols, Rational(0));
    for (const auto& [m, c] : p.terms()) v[col_index.at(m)] = c;
    return v;
  };

  RatSpan span(cols);
  std::vector<MultiPoly> work = gens;
  std::vector<MultiPoly> kept;
  while (!work.empty()) {
    MultiPoly p = work.back();
    work.pop_back();
    if (p.is_zero()) continue;
    if (!span.insert(vec_of(p))) continue;
    kept.push_back(p);
    for (int j = 1; j <= n; ++j) {
      MultiPoly d = p.partial(j);
      if (!d.is_zero()) work.push_back(d);
    }
  }
  // canonical basis: rebuild polynomials from the rref rows of the span so
  // the result is independent of insertion order
  std::vector<std::pair<Monomial, MultiPoly>> rows;
  std::vector<Monomial> mono_by_col(cols);
  for (const auto& [m, v] : col_index) mono_by_col[v] = m;
  for (const auto& row : span.rows) {
    MultiPoly p(n);
    Monomial lead;
    bool first = true;
    for (int cidx = 0; cidx < cols; ++cidx) {
      if (rat_is_zero(row[cidx])) continue;
      if (first) {
        lead = mono_by_col[cidx];
        first = false;
      }
      p.add_term(mono_by_col[cidx], row[cidx]);
    }
    if (!p.is_zero()) rows.emplace_back(lead, p);
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return GrlexDesc()(a.first, b.first); });
  std::vector<MultiPoly> basis;
  for (auto& [m, p] : rows) basis.push_back(std::move(p));
  return basis;
}

}  // namespace

RatVec LieAlgebra::mult_coords(const MultiPoly& p) const {
  // express p in mult_basis by exact elimination against the stored rref
  const int K = mult_dim();
  RatVec out(alg.dim, Rational(0));
  if (p.is_zero()) return out;
  // build augmented system: columns are mult_basis polys over the monomial
  // index, solve B c = p
  RatMat m(mult_monomials_.size(), RatVec(K, Rational(0)));
  std::map<Monomial, int, GrlexDesc> where;
  for (std::size_t i = 0; i < mult_monomials_.size(); ++i)
    where[mult_monomials_[i]] = static_cast<int>(i);
  for (int r = 0; r < K; ++r)
    for (const auto& [mm, c] : mult_basis[r].terms())
      m[where.at(mm)][r] = c;
  RatVec rhs(mult_monomials_.size(), Rational(0));
  for (const auto& [mm, c] : p.terms()) {
    auto it = where.find(mm);
    if (it == where.end())
      throw Error(ErrorCode::InternalInconsistency,
                  "polynomial not in the multiplication span: " + p.str());
    rhs[it->second] = c;
  }
  auto sol = solve(m, rhs);
  if (!sol)
    throw Error(ErrorCode::InternalInconsistency,
                "polynomial not in the multiplication span: " + p.str());
  for (int r = 0; r < K; ++r) out[n + r] = (*sol)[r];
  return out;
}

MultiPoly LieAlgebra::mult_part(const RatVec& v) const {
  MultiPoly p = MultiPoly::zero(spec.n);
  for (int r = 0; r < mult_dim(); ++r)
    if (!rat_is_zero(v[n + r])) p = p + mult_basis[r] * v[n + r];
  return p;
}

LinFunctional LieAlgebra::evaluation_at_origin() const {
  LinFunctional f;
  f.values.assign(alg.dim, Rational(0));
  std::vector<Rational> origin(spec.n, Rational(0));
  for (int r = 0; r < mult_dim(); ++r)
    f.values[n + r] = mult_basis[r].eval(origin);
  return f;
}

std::string LieAlgebra::structure_json() const {
  std::ostringstream os;
  os << "{\n  \"dim\": " << dim() << ",\n  \"basis\": [";
  for (int i = 0; i < dim(); ++i) {
    if (i) os << ", ";
    os << '"' << alg.labels[i] << '"';
  }
  os << "],\n  \"brackets\": [";
  bool first = true;
  for (int i = 0; i < dim(); ++i) {
    for (int j = i + 1; j < dim(); ++j) {
      for (int k = 0; k < dim(); ++k) {
        const Rational& c = alg.table[i][j][k];
        if (rat_is_zero(c)) continue;
        if (!first) os << ",";
        os << "\n    {\"i\": " << i << ", \"j\": " << j << ", \"k\": " << k
           << ", \"c\": \"" << c.get_str() << "\"}";
        first = false;
      }
    }
  }
  os << "\n  ]\n}\n";
  return os.str();
}

LieAlgebra build_lie_algebra(const SchrodingerSpec& spec) {
  LieAlgebra g;
  g.spec = spec;
  g.n = spec.n;
  g.mult_basis = derivative_closure(spec);
  const int K = static_cast<int>(g.mult_basis.size());
  const int dim = g.n + K;

  g.alg.dim = dim;
  g.alg.labels.clear();
  for (int j = 1; j <= g.n; ++j) g.alg.labels.push_back("L" + std::to_string(j));
  for (int r = 0; r < K; ++r) g.alg.labels.push_back("i*(" + g.mult_basis[r].str() + ")");
  for (int j = 0; j < g.n; ++j) g.alg.L_indices.push_back(j);

  // monomial index for exact expansion
  {
    std::map<Monomial, int, GrlexDesc> cols;
    for (const auto& p : g.mult_basis)
      for (const auto& m : p.support()) cols.emplace(m, 0);
    int idx = 0;
    for (auto& [m, v] : cols) v = idx++;
    g.mult_monomials_.clear();
    g.mult_monomials_.resize(idx);
    for (const auto& [m, v] : cols) g.mult_monomials_[v] = m;
  }

  g.alg.table.assign(dim, std::vector<RatVec>(dim, RatVec(dim, Rational(0))));
  auto set_bracket = [&](int i, int j, const RatVec& v) {
    g.alg.table[i][j] = v;
    RatVec neg(dim);
    for (int k = 0; k < dim; ++k) neg[k] = -v[k];
    g.alg.table[j][i] = neg;
  };

  // [L_j, L_k] = i (d_j a_k - d_k a_j)
  for (int j = 1; j <= g.n; ++j) {
    for (int k = j + 1; k <= g.n; ++k) {
      MultiPoly c = spec.a[k - 1].partial(j) - spec.a[j - 1].partial(k);
      if (!c.is_zero()) set_bracket(j - 1, k - 1, g.mult_coords(c));
    }
  }
  // [L_j, i m_r] = i d_j m_r
  for (int j = 1; j <= g.n; ++j) {
    for (int r = 0; r < K; ++r) {
      MultiPoly d = g.mult_basis[r].partial(j);
      if (!d.is_zero()) set_bracket(j - 1, g.n + r, g.mult_coords(d));
    }
  }
  // multiplication operators commute; table already zero there

  g.alg.L0.assign(dim, Rational(0));
  if (!spec.V.is_zero()) g.alg.L0 = g.mult_coords(spec.V);
  return g;
}

bool discreteness(const SchrodingerSpec& spec) {
  const int n = spec.n;
  std::vector<MultiPoly> gens;
  if (!spec.V.is_zero()) gens.push_back(spec.V);
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k) {
      MultiPoly b = spec.b(j, k);
      if (!b.is_zero()) gens.push_back(b);
    }
  if (gens.empty()) return false;  // free Laplacian
  // rows of the system: for each generator W and each monomial of grad W,
  // sum_j y_j * coeff(d_j W, m) = 0
  RatMat rows;
  for (const auto& w : gens) {
    std::map<Monomial, RatVec, GrlexDesc> bym;
    for (int j = 1; j <= n; ++j) {
      MultiPoly d = w.partial(j);
      for (const auto& [m, c] : d.terms()) {
        auto it = bym.find(m);
        if (it == bym.end()) it = bym.emplace(m, RatVec(n, Rational(0))).first;
        it->second[j - 1] = c;
      }
    }
    for (auto& [m, row] : bym) rows.push_back(row);
  }
  if (rows.empty()) return false;  // all generators constant
  return nullspace(rows, n).empty();
}

RatMat skew_form(const AbstractLie& g, const LinFunctional& f) {
  if (static_cast<int>(f.values.size()) != g.dim)
    throw Error(ErrorCode::DimensionMismatch, "functional/basis size mismatch");
  RatMat m(g.dim, RatVec(g.dim, Rational(0)));
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) m[i][j] = f(g.table[i][j]);
  return m;
}

std::vector<RatVec> skew_radical(const AbstractLie& g, const LinFunctional& f) {
  return nullspace(skew_form(g, f), g.dim);
}

Polarization polarization(const AbstractLie& g, const LinFunctional& f) {
  const int dim = g.dim;
  RatMat sf = skew_form(g, f);
  auto rad = nullspace(sf, dim);
  const int target = static_cast<int>((dim + rad.size()));
  if (target % 2 != 0)
    throw Error(ErrorCode::InternalInconsistency,
                "dim g + dim radical must be even");
  const int hdim = target / 2;

  auto pairing_zero = [&](const RatVec& v, const RatVec& w) {
    Rational s = 0;
    for (int i = 0; i < dim; ++i) {
      if (rat_is_zero(v[i])) continue;
      for (int j = 0; j < dim; ++j)
        if (!rat_is_zero(w[j])) s += v[i] * sf[i][j] * w[j];
    }
    return rat_is_zero(s);
  };

  RatSpan h(dim);
  std::vector<RatVec> members;
  auto try_add = [&](const RatVec& v) {
    for (const auto& w : members)
      if (!pairing_zero(v, w)) return false;
    if (!pairing_zero(v, v)) return false;  // always true for alternating form
    if (h.insert(v)) {
      members.push_back(v);
      return true;
    }
    return false;
  };

  for (const auto& r : rad) try_add(r);
  if (!g.L0.empty()) {
    bool nonzero = false;
    for (const auto& c : g.L0) nonzero |= !rat_is_zero(c);
    if (nonzero) try_add(g.L0);
  }
  for (const auto& row : g.derived_span()) try_add(row);
  // all multiplication-type directions: basis vectors not in L_indices
  std::vector<bool> is_L(dim, false);
  for (int j : g.L_indices) is_L[j] = true;
  for (int i = 0; i < dim; ++i) {
    if (is_L[i]) continue;
    RatVec e(dim, Rational(0));
    e[i] = 1;
    try_add(e);
  }
  // greedy pass over L_1, L_2, ... in order
  for (int pos = 0; pos < static_cast<int>(g.L_indices.size()); ++pos) {
    if (h.dim() >= hdim) break;
    RatVec e(dim, Rational(0));
    e[g.L_indices[pos]] = 1;
    try_add(e);
  }
  // completion: extend with arbitrary isotropic vectors if still short
  while (h.dim() < hdim) {
    // solve B_f(v, h_k) = 0 for all current members
    RatMat sys;
    for (const auto& w : members) {
      RatVec row(dim, Rational(0));
      for (int i = 0; i < dim; ++i) {
        Rational s = 0;
        for (int j = 0; j < dim; ++j)
          if (!rat_is_zero(w[j])) s += sf[i][j] * w[j];
        row[i] = s;
      }
      sys.push_back(row);
    }
    auto cand = nullspace(sys, dim);
    bool grew = false;
    for (const auto& v : cand) {
      if (h.contains(v)) continue;
      if (try_add(v)) {
        grew = true;
        break;
      }
    }
    if (!grew)
      throw Error(ErrorCode::InternalInconsistency,
                  "isotropic extension stalled below the polarization dimension");
  }

  Polarization p;
  p.h_basis = h.rows;
  // complementary subset of the L_j
  RatSpan full = h;
  for (int pos = 0; pos < static_cast<int>(g.L_indices.size()); ++pos) {
    RatVec e(dim, Rational(0));
    e[g.L_indices[pos]] = 1;
    if (full.insert(e)) p.complement.push_back(pos);
  }
  if (full.dim() != dim)
    throw Error(ErrorCode::InternalInconsistency,
                "the L_j do not complete the polarization to the full algebra");
  return p;
}

AbstractLie quotient(const AbstractLie& g, const std::vector<RatVec>& ideal,
                     std::vector<int>* kept, RatMat* proj) {
  const int dim = g.dim;
  RatSpan ide(dim);
  for (const auto& v : ideal) ide.insert(v);
  // verify [g, ideal] subset ideal
  for (int i = 0; i < dim; ++i) {
    RatVec e(dim, Rational(0));
    e[i] = 1;
    for (const auto& v : ide.rows)
      if (!ide.contains(g.bracket(e, v)))
        throw Error(ErrorCode::InvalidArgument, "quotient: span is not an ideal");
  }
  std::vector<bool> is_pivot(dim, false);
  for (int p : ide.pivots) is_pivot[p] = true;
  std::vector<int> keep;
  for (int i = 0; i < dim; ++i)
    if (!is_pivot[i]) keep.push_back(i);
  const int qdim = static_cast<int>(keep.size());

  // projection: coords mod ideal. Reduce e_i by the ideal rref, then read off
  // the kept coordinates.
  RatMat pr(qdim, RatVec(dim, Rational(0)));
  for (int i = 0; i < dim; ++i) {
    RatVec e(dim, Rational(0));
    e[i] = 1;
    RatVec r = ide.reduce(e);
    for (int q = 0; q < qdim; ++q) pr[q][i] = r[keep[q]];
  }
  auto project = [&](const RatVec& v) {
    RatVec out(qdim, Rational(0));
    for (int q = 0; q < qdim; ++q) out[q] = dot(pr[q], v);
    return out;
  };

  AbstractLie q;
  q.dim = qdim;
  for (int i : keep) q.labels.push_back(g.labels[i] + "~");
  q.table.assign(qdim, std::vector<RatVec>(qdim, RatVec(qdim, Rational(0))));
  for (int a = 0; a < qdim; ++a) {
    for (int b = 0; b < qdim; ++b) {
      RatVec ea(dim, Rational(0)), eb(dim, Rational(0));
      ea[keep[a]] = 1;
      eb[keep[b]] = 1;
      q.table[a][b] = project(g.bracket(ea, eb));
    }
  }
  for (int pos = 0; pos < static_cast<int>(g.L_indices.size()); ++pos) {
    int li = g.L_indices[pos];
    // L_j must survive the quotient (never inside the ideal for our algebras)
    auto it = std::find(keep.begin(), keep.end(), li);
    if (it == keep.end())
      throw Error(ErrorCode::UnsupportedStructure,
                  "quotient kills a first-order generator");
    q.L_indices.push_back(static_cast<int>(it - keep.begin()));
  }
  q.L0 = g.L0.empty() ? RatVec() : project(g.L0);
  if (kept) *kept = keep;
  if (proj) *proj = pr;
  return q;
}

}  // namespace oc
