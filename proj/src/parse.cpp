#include "orbitcount/parse.hpp"

#include <cctype>

namespace oc {

namespace {

class Parser {
public:
  Parser(const std::string& s, int nvars) : s_(s), nvars_(nvars) {}

  MultiPoly run() {
    skip_ws();
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != s_.size())
      throw SyntaxError("unexpected trailing input", pos_);
    return p;
  }

private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool eat(char c) {
    if (peek_is(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    for (;;) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    for (;;) {
      if (eat('*')) {
        acc = acc * factor();
      } else if (eat('/')) {
        std::size_t at = pos_;
        MultiPoly d = factor();
        if (!d.is_constant())
          throw SyntaxError("divisor must be a nonzero constant", at);
        Rational c = d.constant_value();
        if (rat_is_zero(c)) throw SyntaxError("division by zero", at);
        acc = acc * (Rational(1) / c);
      } else {
        return acc;
      }
    }
  }

  MultiPoly factor() {
    skip_ws();
    bool neg = false;
    while (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      if (s_[pos_] == '-') neg = !neg;
      ++pos_;
      skip_ws();
    }
    MultiPoly a = atom();
    while (peek_is('^')) {
      ++pos_;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '-')
        throw Error(ErrorCode::NegativeExponent,
                    "negative exponent at position " + std::to_string(pos_));
      std::size_t at = pos_;
      unsigned long e = uint_literal();
      if (e > 64) throw SyntaxError("exponent too large", at);
      a = a.pow(static_cast<unsigned>(e));
    }
    return neg ? -a : a;
  }

  MultiPoly atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly p = expr();
      if (!eat(')')) throw SyntaxError("expected ')'", pos_);
      return p;
    }
    if (c == 'x') return variable_ref();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  MultiPoly variable_ref() {
    std::size_t at = pos_;
    ++pos_;  // 'x'
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      throw SyntaxError("expected variable index after 'x'", pos_);
    unsigned long idx = uint_literal();
    if (idx < 1 || static_cast<long>(idx) > nvars_)
      throw Error(ErrorCode::VariableOutOfRange,
                  "variable x" + std::to_string(idx) + " out of range (nvars=" +
                      std::to_string(nvars_) + ", at position " + std::to_string(at) + ")");
    return MultiPoly::variable(nvars_, static_cast<int>(idx));
  }

  unsigned long uint_literal() {
    skip_ws();
    std::size_t at = pos_;
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      throw SyntaxError("expected integer", pos_);
    unsigned long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<unsigned long>(s_[pos_] - '0');
      if (v > 1000000000UL) throw SyntaxError("integer literal too large", at);
      ++pos_;
    }
    return v;
  }

  MultiPoly number() {
    std::string digits;
    std::string frac;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      digits += s_[pos_++];
    }
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        frac += s_[pos_++];
      }
      if (digits.empty() && frac.empty())
        throw SyntaxError("malformed decimal literal", pos_);
    }
    if (digits.empty() && frac.empty())
      throw SyntaxError("expected number", pos_);
    Integer num(digits.empty() ? "0" : digits);
    if (!frac.empty()) {
      Integer scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      num = num * scale + Integer(frac);
      Rational r(num, scale);
      r.canonicalize();
      return MultiPoly::constant(nvars_, r);
    }
    return MultiPoly::constant(nvars_, Rational(num));
  }

  const std::string& s_;
  int nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(const std::string& text, int nvars) {
  if (nvars < 0) throw Error(ErrorCode::InvalidArgument, "nvars must be nonnegative");
  return Parser(text, nvars).run();
}

}  // namespace oc
