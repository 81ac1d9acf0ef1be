#include "orbitcount/orbit.hpp"

#include <algorithm>
#include <sstream>

#include "orbitcount/errors.hpp"
#include "orbitcount/scaling.hpp"

namespace oc {

namespace {

// Working frame for chart/realization computations: an algebra with an
// abelian ideal polarization, a base functional and the complement order.
struct Frame {
  AbstractLie A;
  LinFunctional F;
  std::vector<RatVec> h;           // abelian ideal, spans with complement
  std::vector<int> comp_basis;     // basis indices of complementary L's
  RatMat proj;                     // old coords -> frame coords (identity if no quotient)
  std::vector<RatVec> ideal;       // quotiented ideal in old coords
  int nprime = 0;
};

RatVec project_vec(const RatMat& proj, const RatVec& v) {
  RatVec out(proj.size(), Rational(0));
  for (std::size_t q = 0; q < proj.size(); ++q) out[q] = dot(proj[q], v);
  return out;
}

Frame make_frame(const AbstractLie& alg, const Polarization& pol, const LinFunctional& f) {
  Frame fr;
  // the commutator of h must be annihilated before charting (Prop-style
  // quotient pass); compute [h, h]
  RatSpan hh(alg.dim);
  for (std::size_t i = 0; i < pol.h_basis.size(); ++i)
    for (std::size_t j = i + 1; j < pol.h_basis.size(); ++j)
      hh.insert(alg.bracket(pol.h_basis[i], pol.h_basis[j]));
  if (hh.dim() == 0) {
    fr.A = alg;
    fr.F = f;
    fr.h = pol.h_basis;
    fr.proj.assign(alg.dim, RatVec(alg.dim, Rational(0)));
    for (int i = 0; i < alg.dim; ++i) fr.proj[i][i] = 1;
    for (int pos : pol.complement) fr.comp_basis.push_back(alg.L_indices[pos]);
    fr.nprime = static_cast<int>(pol.complement.size());
    return fr;
  }
  // f must kill [h,h] (isotropy of the polarization)
  for (const auto& v : hh.rows)
    if (!rat_is_zero(f(v)))
      throw Error(ErrorCode::NonAbelianPolarization,
                  "functional does not annihilate [h,h]");
  std::vector<int> kept;
  RatMat proj;
  AbstractLie q = quotient(alg, hh.rows, &kept, &proj);
  Frame fr2;
  fr2.A = q;
  fr2.proj = proj;
  fr2.ideal = hh.rows;
  fr2.F.values.assign(q.dim, Rational(0));
  for (int i = 0; i < q.dim; ++i) fr2.F.values[i] = f.values[kept[i]];
  for (const auto& hv : pol.h_basis) fr2.h.push_back(project_vec(proj, hv));
  for (int pos : pol.complement) {
    int li = alg.L_indices[pos];
    RatVec e(alg.dim, Rational(0));
    e[li] = 1;
    RatVec pe = project_vec(proj, e);
    // complement basis index in the quotient
    int idx = -1;
    for (int i = 0; i < q.dim; ++i) {
      RatVec want(q.dim, Rational(0));
      want[i] = 1;
      if (pe == want) idx = i;
    }
    if (idx < 0)
      throw Error(ErrorCode::InternalInconsistency,
                  "complement direction lost in the [h,h] quotient");
    fr2.comp_basis.push_back(idx);
  }
  fr2.nprime = static_cast<int>(pol.complement.size());
  // verify abelian now
  RatSpan hh2(q.dim);
  for (std::size_t i = 0; i < fr2.h.size(); ++i)
    for (std::size_t j = i + 1; j < fr2.h.size(); ++j)
      hh2.insert(q.bracket(fr2.h[i], fr2.h[j]));
  if (hh2.dim() != 0)
    throw Error(ErrorCode::NonAbelianPolarization,
                "[h,h] nonzero after the quotient pass");
  return fr2;
}

// Taylor polynomial sum_alpha f((ad L_{j1})^{a1}...(ad L_{jn'})^{an'} Y)
// x^alpha / alpha!  in the ring with `ring_vars` variables; the x-variables
// occupy indices x_offset+1 .. x_offset+nprime (1-based).
MultiPoly taylor_poly(const Frame& fr, const RatVec& y, int ring_vars, int x_offset) {
  struct Rec {
    const Frame& fr;
    int ring_vars, x_offset;
    Rec(const Frame& f, int rv, int xo) : fr(f), ring_vars(rv), x_offset(xo) {}
    MultiPoly run(const RatVec& v, int d) {
      bool zero = true;
      for (const auto& c : v) zero &= rat_is_zero(c);
      if (zero) return MultiPoly::zero(ring_vars);
      if (d == static_cast<int>(fr.comp_basis.size()))
        return MultiPoly::constant(ring_vars, fr.F(v));
      MultiPoly acc = MultiPoly::zero(ring_vars);
      RatVec cur = v;
      Rational fact = 1;
      RatVec e(fr.A.dim, Rational(0));
      e[fr.comp_basis[d]] = 1;
      for (int k = 0; k <= fr.A.dim + 2; ++k) {
        bool curzero = true;
        for (const auto& c : cur) curzero &= rat_is_zero(c);
        if (curzero) break;
        MultiPoly inner = run(cur, d + 1);
        if (!inner.is_zero()) {
          Monomial m(ring_vars, 0);
          m[x_offset + d] = static_cast<std::uint32_t>(k);
          acc = acc + inner * MultiPoly::monomial(ring_vars, m, Rational(1) / fact);
        }
        cur = fr.A.bracket(e, cur);
        fact *= Rational(k + 1);
      }
      return acc;
    }
  } rec(fr, ring_vars, x_offset);
  return rec.run(y, 0);
}

// decompose v into h-part + sum c_s e_{comp_s}; returns (h-part, c)
std::pair<RatVec, RatVec> split_against_h(const Frame& fr, const RatVec& v) {
  const int dim = fr.A.dim;
  // solve v = H^T alpha + sum c_s e_s exactly
  RatMat sys(dim, RatVec(fr.h.size() + fr.comp_basis.size(), Rational(0)));
  for (std::size_t k = 0; k < fr.h.size(); ++k)
    for (int i = 0; i < dim; ++i) sys[i][k] = fr.h[k][i];
  for (std::size_t s = 0; s < fr.comp_basis.size(); ++s)
    sys[fr.comp_basis[s]][fr.h.size() + s] = 1;
  auto sol = solve(sys, v);
  if (!sol)
    throw Error(ErrorCode::InternalInconsistency,
                "h + complement do not span the algebra");
  RatVec hpart(dim, Rational(0));
  for (std::size_t k = 0; k < fr.h.size(); ++k)
    for (int i = 0; i < dim; ++i) hpart[i] += (*sol)[k] * fr.h[k][i];
  RatVec c(fr.comp_basis.size(), Rational(0));
  for (std::size_t s = 0; s < fr.comp_basis.size(); ++s) c[s] = (*sol)[fr.h.size() + s];
  return {hpart, c};
}

}  // namespace

OrbitChart chart(const LieAlgebra& g, const Polarization& pol, const LinFunctional& f0) {
  Frame fr = make_frame(g.alg, pol, f0);
  const int np = fr.nprime;
  const int ring = 2 * np;
  OrbitChart ch;
  ch.nprime = np;
  ch.complement = pol.complement;
  ch.f0 = f0;
  ch.quotiented_ideal = fr.ideal;
  for (int i = 0; i < g.dim(); ++i) {
    RatVec e(g.dim(), Rational(0));
    e[i] = 1;
    RatVec v = project_vec(fr.proj, e);
    auto [hpart, c] = split_against_h(fr, v);
    MultiPoly coord = taylor_poly(fr, hpart, ring, np);
    for (int s = 0; s < np; ++s) {
      if (!rat_is_zero(c[s]))
        coord = coord + MultiPoly::variable(ring, s + 1) * c[s];
    }
    ch.coords.push_back(coord);
  }
  return ch;
}

ReducedOperator realize_reduced(const LieAlgebra& g, const Polarization& pol,
                                const LinFunctional& f) {
  Frame fr = make_frame(g.alg, pol, f);
  const int np = fr.nprime;
  ReducedOperator r;
  r.n_red = np;
  r.W_red = MultiPoly::zero(np);

  // images p_Y(x) of the h-side first-order generators contribute squares
  std::vector<bool> in_comp(g.alg.L_indices.size(), false);
  for (int pos : pol.complement) in_comp[pos] = true;
  for (std::size_t pos = 0; pos < g.alg.L_indices.size(); ++pos) {
    if (in_comp[pos]) continue;
    RatVec e(g.dim(), Rational(0));
    e[g.alg.L_indices[pos]] = 1;
    RatVec v = project_vec(fr.proj, e);
    auto [hpart, c] = split_against_h(fr, v);
    for (const auto& cc : c)
      if (!rat_is_zero(cc))
        throw Error(ErrorCode::UnsupportedStructure,
                    "a first-order generator mixes h with the complement");
    MultiPoly p = taylor_poly(fr, hpart, np, 0);
    r.W_red = r.W_red + p * p;
  }
  // the electric part: image of -i L0 is the multiplication by p_V
  {
    bool nonzero = false;
    for (const auto& c : g.alg.L0) nonzero |= !rat_is_zero(c);
    if (nonzero) {
      RatVec v = project_vec(fr.proj, g.alg.L0);
      auto [hpart, c] = split_against_h(fr, v);
      for (const auto& cc : c)
        if (!rat_is_zero(cc))
          throw Error(ErrorCode::UnsupportedStructure, "L0 outside h");
      r.W_red = r.W_red + taylor_poly(fr, hpart, np, 0);
    }
  }
  // reduced magnetic tensor and the Poincare gauge at the origin:
  // a_s(x) = sum_t sum_beta c_beta x^beta x_t / (|beta| + 2),
  // where b'_st = sum c_beta x^beta = p_{[L_s, L_t]}.
  for (int s = 0; s < np; ++s) {
    MultiPoly a_s = MultiPoly::zero(np);
    for (int t = 0; t < np; ++t) {
      if (t == s) continue;
      RatVec es(fr.A.dim, Rational(0)), et(fr.A.dim, Rational(0));
      es[fr.comp_basis[s]] = 1;
      et[fr.comp_basis[t]] = 1;
      RatVec br = fr.A.bracket(es, et);
      // [L_s, L_t] lies in h (contains [g,g])
      MultiPoly bst = taylor_poly(fr, br, np, 0);
      for (const auto& [m, c] : bst.terms()) {
        Monomial mm = m;
        mm[t] += 1;
        Rational denom(static_cast<long>(total_degree(m)) + 2);
        a_s = a_s + MultiPoly::monomial(np, mm, c / denom);
      }
    }
    r.a_red.push_back(a_s);
  }
  std::ostringstream prov;
  prov << "realized at f = (";
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (i) prov << ", ";
    prov << f.values[i].get_str();
  }
  prov << ")";
  r.provenance = prov.str();
  return r;
}

std::string QuotientFamily::kind_name() const {
  switch (kind) {
    case Kind::Abelian: return "Abelian";
    case Kind::HeisenbergCdV: return "HeisenbergCdV";
    case Kind::MonomialChain: return "MonomialChain";
    case Kind::TriangularChain: return "TriangularChain";
  }
  return "?";
}

std::string QuotientFamily::json() const {
  std::ostringstream os;
  os << "{\n  \"kind\": \"" << kind_name() << "\",\n";
  os << "  \"beta\": " << beta << ",\n";
  switch (kind) {
    case Kind::Abelian:
      os << "  \"Q\": \"supp mu0 (points (xi, V-value))\",\n"
         << "  \"nu\": \"mu0\",\n"
         << "  \"reduced\": \"scalar |xi|^2 + V(x)\"\n";
      break;
    case Kind::HeisenbergCdV:
      os << "  \"r\": " << rank_r << ",\n"
         << "  \"Q\": \"R^(n-2r) x {x : rank B(x) = 2r}\",\n"
         << "  \"nu\": \"(2pi)^(r-n) b_1(x)...b_r(x) dxi'' dx\",\n"
         << "  \"reduced\": \"harmonic oscillator sum (2m_j+1) b_j(x) + |xi''|^2 + V(x)\"\n";
      break;
    case Kind::MonomialChain:
      os << "  \"k\": " << mono_k << ", \"l\": " << mono_l
         << ", \"coeff\": " << mono_coeff << ",\n";
      if (mono_k == mono_l) {
        os << "  \"Q\": \"R^x (central value y)\",\n"
           << "  \"nu\": \"" << dens_coeff << " * |y|^" << dens_pow
           << " / (2pi) ... intermediate chain\",\n"
           << "  \"reduced\": \"-d^2/dx^2 + y^2 x^2\"\n";
      } else {
        os << "  \"Q\": \"R x R^x ((xi2, x2))\",\n"
           << "  \"nu\": \"(2pi)^-1 dxi2 dx2\",\n"
           << "  \"reduced\": \"-d^2/dy^2 + (c x2^l y^(k+1)/(k+1) + xi2)^2\"\n";
      }
      break;
    case Kind::TriangularChain:
      os << "  \"c1\": " << tri_c1 << ", \"c2\": " << tri_c2 << ",\n"
         << "  \"invariant\": \"f -> (f(Y), f(L2) - (c1/(2 c2)) f(X)^2 / f(Y))\",\n"
         << "  \"Q\": \"R^x x R ((a, b))\",\n"
         << "  \"nu\": \"(2pi)^-1 |c2| |a| da db\",\n"
         << "  \"reduced\": \"-d^2/dz^2 + ((c1 c2/2) a z^2 + b)^2\"\n";
      break;
  }
  os << "}\n";
  return os.str();
}

namespace {

bool is_zero_vec(const RatVec& v) {
  for (const auto& c : v)
    if (!rat_is_zero(c)) return false;
  return true;
}

// generic rank 2r of the magnetic tensor: largest 2r such that some 2r x 2r
// minor of B(x) is a nonzero polynomial
int generic_rank(const SchrodingerSpec& spec) {
  const int n = spec.n;
  std::vector<std::vector<MultiPoly>> B(n, std::vector<MultiPoly>(n, MultiPoly::zero(n)));
  bool any = false;
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= n; ++k) {
      B[j - 1][k - 1] = spec.b(j, k);
      any |= !B[j - 1][k - 1].is_zero();
    }
  if (!any) return 0;
  if (n <= 3) return 2;  // nonzero antisymmetric matrix of size <= 3 has rank 2
  // n = 4: rank 4 iff the Pfaffian b12 b34 - b13 b24 + b14 b23 is nonzero
  if (n == 4) {
    MultiPoly pf = B[0][1] * B[2][3] - B[0][2] * B[1][3] + B[0][3] * B[1][2];
    return pf.is_zero() ? 2 : 4;
  }
  throw Error(ErrorCode::UnsupportedStructure,
              "generic rank detection implemented for n <= 4");
}

}  // namespace

QuotientFamily orbit_space(const LieAlgebra& g, const LimitMeasure& mu0) {
  QuotientFamily fam;
  fam.spec = g.spec;
  fam.beta = mu0.beta;

  std::vector<RatVec> ideal;
  for (int i : mu0.annihilated) {
    RatVec e(g.dim(), Rational(0));
    e[i] = 1;
    ideal.push_back(e);
  }
  std::vector<int> kept;
  RatMat proj;
  AbstractLie q = ideal.empty() ? g.alg : quotient(g.alg, ideal, &kept, &proj);
  if (ideal.empty()) {
    kept.resize(g.dim());
    for (int i = 0; i < g.dim(); ++i) kept[i] = i;
  }

  if (q.is_abelian()) {
    fam.kind = QuotientFamily::Kind::Abelian;
    return fam;
  }

  // Heisenberg/CdV: commutator central in the quotient, no log factor or
  // density in the limit measure
  if (mu0.beta == 0 && !mu0.has_density) {
    bool central = true;
    auto der = q.derived_span();
    for (const auto& d : der) {
      for (int i = 0; i < q.dim && central; ++i) {
        RatVec e(q.dim, Rational(0));
        e[i] = 1;
        if (!is_zero_vec(q.bracket(e, d))) central = false;
      }
    }
    if (central) {
      fam.kind = QuotientFamily::Kind::HeisenbergCdV;
      fam.rank_r = generic_rank(g.spec) / 2;
      if (fam.rank_r == 0)
        throw Error(ErrorCode::UnsupportedStructure,
                    "central quotient with vanishing magnetic tensor");
      return fam;
    }
  }

  // monomial chain: 2D, V = 0, single monomial bracket polynomial
  if (g.spec.n == 2 && g.spec.V.is_zero()) {
    MultiPoly bb = g.spec.a[1].partial(1) - g.spec.a[0].partial(2);  // [L1,L2] image
    if (bb.term_count() == 1) {
      auto [m, c] = *bb.terms().begin();
      int k = static_cast<int>(m[0]), l = static_cast<int>(m[1]);
      if (k >= 1 && l >= 1) {
        fam.kind = QuotientFamily::Kind::MonomialChain;
        if (k < l) {
          std::swap(k, l);
          fam.axes_swapped = true;
        }
        fam.mono_k = k;
        fam.mono_l = l;
        fam.mono_coeff = rat_double(c);
        fam.dens_coeff = mu0.density_coeff;
        fam.dens_pow = mu0.density_pow;
        return fam;
      }
    }
  }

  // triangular chain: dim-4 quotient with [L1,L2] = c1 X, [L1, X] = c2 Y along
  // single kept basis elements, Y central
  if (q.dim == 4 && q.L_indices.size() == 2) {
    for (int swap = 0; swap < 2; ++swap) {
      int i1 = q.L_indices[swap ? 1 : 0], i2 = q.L_indices[swap ? 0 : 1];
      RatVec e1(q.dim, Rational(0)), e2(q.dim, Rational(0));
      e1[i1] = 1;
      e2[i2] = 1;
      RatVec X = q.bracket(e1, e2);
      // X must be c1 times a single basis vector
      int xi = -1;
      Rational c1;
      bool ok = true;
      for (int i = 0; i < q.dim; ++i) {
        if (rat_is_zero(X[i])) continue;
        if (xi >= 0) ok = false;
        xi = i;
        c1 = X[i];
      }
      if (!ok || xi < 0) continue;
      RatVec ex(q.dim, Rational(0));
      ex[xi] = 1;
      RatVec Y = q.bracket(e1, ex);
      int yi = -1;
      Rational c2;
      ok = true;
      for (int i = 0; i < q.dim; ++i) {
        if (rat_is_zero(Y[i])) continue;
        if (yi >= 0) ok = false;
        yi = i;
        c2 = Y[i];
      }
      if (!ok || yi < 0 || yi == xi) continue;
      RatVec ey(q.dim, Rational(0));
      ey[yi] = 1;
      // Y central, [L2, X] = [L2, Y] = [L1, Y] = 0
      if (!is_zero_vec(q.bracket(e1, ey))) continue;
      if (!is_zero_vec(q.bracket(e2, ey))) continue;
      if (!is_zero_vec(q.bracket(e2, ex))) continue;
      fam.kind = QuotientFamily::Kind::TriangularChain;
      fam.tri_c1 = rat_double(c1);
      fam.tri_c2 = rat_double(c2);
      return fam;
    }
  }

  throw Error(ErrorCode::UnsupportedStructure,
              "quotient algebra outside the family catalog (dim " +
                  std::to_string(q.dim) +
                  "; obstruction: commutator neither central nor a supported chain)");
}

}  // namespace oc
