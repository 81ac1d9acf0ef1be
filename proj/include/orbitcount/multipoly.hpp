#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbitcount/errors.hpp"
#include "orbitcount/rational.hpp"

namespace oc {

// Exponent multi-index. Fixed length = nvars of the owning polynomial.
using Monomial = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Monomial& m) {
  std::uint64_t s = 0;
  for (auto e : m) s += e;
  return s;
}

// Graded lexicographic, descending: larger total degree first, then
// lexicographically larger exponent vector first. Map iteration therefore
// yields the canonical printing order.
struct GrlexDesc {
  bool operator()(const Monomial& a, const Monomial& b) const {
    std::uint64_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

// Multivariate polynomial with exact rational coefficients. Immutable in
// spirit: operations return new values. Zero coefficients are never stored.
class MultiPoly {
public:
  using TermMap = std::map<Monomial, Rational, GrlexDesc>;

  explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}

  static MultiPoly zero(int nvars) { return MultiPoly(nvars); }
  static MultiPoly constant(int nvars, const Rational& c);
  static MultiPoly variable(int nvars, int j);  // 1-based index
  static MultiPoly monomial(int nvars, const Monomial& m, const Rational& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // value if constant (zero poly -> 0)
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  // total degree; -1 for the zero polynomial
  long degree() const;
  long degree_in(int j) const;  // max exponent of variable j (1-based)

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(const Rational& c) const;
  bool operator==(const MultiPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly pow(unsigned e) const;
  MultiPoly partial(int j) const;  // d/dx_j, 1-based

  // Exact evaluation at a rational point.
  Rational eval(const std::vector<Rational>& x) const;
  // Floating evaluation; the only lossy path in this module.
  double eval(const std::vector<double>& x) const;

  // Substitute each variable x_j by images[j-1] (polynomials over a common
  // ring). All images must share a variable count.
  MultiPoly substitute(const std::vector<MultiPoly>& images) const;

  // Widen the ring: same polynomial seen in `nvars` >= current, variables
  // keep their indices.
  MultiPoly widened(int nvars) const;

  // Canonical text form (grlex-descending). parse(print()) round-trips.
  std::string str() const;

  void add_term(const Monomial& m, const Rational& c);  // used by builders

  // Coefficient vector in a fixed monomial enumeration (for exact linear
  // algebra). Monomials listed grlex-descending.
  std::vector<Monomial> support() const;

private:
  void check_var(int j) const;
  int nvars_;
  TermMap terms_;
};

inline MultiPoly operator*(const Rational& c, const MultiPoly& p) { return p * c; }

}  // namespace oc
