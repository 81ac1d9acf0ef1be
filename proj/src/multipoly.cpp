#include "orbitcount/multipoly.hpp"

#include <sstream>

namespace oc {

void MultiPoly::check_var(int j) const {
  if (j < 1 || j > nvars_)
    throw Error(ErrorCode::VariableOutOfRange,
                "variable x" + std::to_string(j) + " out of range (nvars=" +
                    std::to_string(nvars_) + ")");
}

MultiPoly MultiPoly::constant(int nvars, const Rational& c) {
  MultiPoly p(nvars);
  if (!rat_is_zero(c)) p.terms_[Monomial(nvars, 0)] = c;
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int j) {
  MultiPoly p(nvars);
  p.check_var(j);
  Monomial m(nvars, 0);
  m[j - 1] = 1;
  p.terms_[m] = 1;
  return p;
}

MultiPoly MultiPoly::monomial(int nvars, const Monomial& m, const Rational& c) {
  MultiPoly p(nvars);
  if (!rat_is_zero(c)) p.terms_[m] = c;
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0;
}

Rational MultiPoly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  auto it = terms_.find(Monomial(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

long MultiPoly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<long>(total_degree(terms_.begin()->first));
}

long MultiPoly::degree_in(int j) const {
  check_var(j);
  long d = 0;
  for (const auto& [m, c] : terms_) d = std::max<long>(d, m[j - 1]);
  return d;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
  if (rat_is_zero(c)) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_[m] = c;
  } else {
    it->second += c;
    if (rat_is_zero(it->second)) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(nvars_);
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  if (nvars_ != o.nvars_)
    throw Error(ErrorCode::DimensionMismatch, "polynomial ring mismatch in +");
  MultiPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (nvars_ != o.nvars_)
    throw Error(ErrorCode::DimensionMismatch, "polynomial ring mismatch in *");
  MultiPoly r(nvars_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m(nvars_);
      for (int i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

MultiPoly MultiPoly::operator*(const Rational& c) const {
  MultiPoly r(nvars_);
  if (rat_is_zero(c)) return r;
  for (const auto& [m, cc] : terms_) r.terms_[m] = cc * c;
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r = constant(nvars_, 1);
  MultiPoly base = *this;
  while (e) {
    if (e & 1u) r = r * base;
    base = base * base;
    e >>= 1u;
  }
  return r;
}

MultiPoly MultiPoly::partial(int j) const {
  check_var(j);
  MultiPoly r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[j - 1] == 0) continue;
    Monomial d = m;
    Rational cc = c * Rational(static_cast<long>(d[j - 1]));
    d[j - 1] -= 1;
    r.add_term(d, cc);
  }
  return r;
}

Rational MultiPoly::eval(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != nvars_)
    throw Error(ErrorCode::DimensionMismatch, "evaluation point dimension mismatch");
  Rational s = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < nvars_; ++i) {
      for (std::uint32_t k = 0; k < m[i]; ++k) t *= x[i];
    }
    s += t;
  }
  return s;
}

double MultiPoly::eval(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != nvars_)
    throw Error(ErrorCode::DimensionMismatch, "evaluation point dimension mismatch");
  double s = 0;
  for (const auto& [m, c] : terms_) {
    double t = rat_double(c);
    for (int i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      double p = x[i];
      std::uint32_t e = m[i];
      double acc = 1.0;
      while (e) {
        if (e & 1u) acc *= p;
        p *= p;
        e >>= 1u;
      }
      t *= acc;
    }
    s += t;
  }
  return s;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images) const {
  if (static_cast<int>(images.size()) != nvars_)
    throw Error(ErrorCode::DimensionMismatch, "substitute: image count mismatch");
  int target = images.empty() ? 0 : images[0].nvars();
  for (const auto& im : images)
    if (im.nvars() != target)
      throw Error(ErrorCode::DimensionMismatch, "substitute: mixed image rings");
  MultiPoly r(target);
  for (const auto& [m, c] : terms_) {
    MultiPoly t = MultiPoly::constant(target, c);
    for (int i = 0; i < nvars_; ++i)
      if (m[i] > 0) t = t * images[i].pow(m[i]);
    r = r + t;
  }
  return r;
}

MultiPoly MultiPoly::widened(int nvars) const {
  if (nvars < nvars_)
    throw Error(ErrorCode::DimensionMismatch, "widened: shrinking ring");
  MultiPoly r(nvars);
  for (const auto& [m, c] : terms_) {
    Monomial mm(nvars, 0);
    for (int i = 0; i < nvars_; ++i) mm[i] = m[i];
    r.terms_[mm] = c;
  }
  return r;
}

std::vector<Monomial> MultiPoly::support() const {
  std::vector<Monomial> s;
  s.reserve(terms_.size());
  for (const auto& [m, c] : terms_) s.push_back(m);
  return s;
}

namespace {
void print_monomial(std::ostream& os, const Monomial& m) {
  bool first = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!first) os << "*";
    os << "x" << (i + 1);
    if (m[i] > 1) os << "^" << m[i];
    first = false;
  }
}
}  // namespace

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = abs(c);
    bool neg = sgn(c) < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    bool is_const = total_degree(m) == 0;
    if (is_const) {
      os << a.get_str();
    } else if (a == 1) {
      print_monomial(os, m);
    } else {
      os << a.get_str() << "*";
      print_monomial(os, m);
    }
    first = false;
  }
  return os.str();
}

}  // namespace oc
