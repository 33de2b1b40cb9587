#include "dxm/mapexpr.hpp"

#include <cctype>

namespace dxm {

namespace {

// rational function with exact coefficients; the parser's value type
struct RF {
  Polynomial<RatCx> num = Polynomial<RatCx>::constant(RatCx(Rat(0)));
  Polynomial<RatCx> den = Polynomial<RatCx>::constant(RatCx(Rat(1)));
};

RF rf_const(RatCx v) {
  RF r;
  r.num = Polynomial<RatCx>::constant(std::move(v));
  return r;
}

RF rf_add(const RF& a, const RF& b) {
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}
RF rf_sub(const RF& a, const RF& b) {
  return {a.num * b.den - b.num * a.den, a.den * b.den};
}
RF rf_mul(const RF& a, const RF& b) { return {a.num * b.num, a.den * b.den}; }
RF rf_div(const RF& a, const RF& b, size_t at) {
  if (b.num.is_zero()) throw ParseError("division by zero", at);
  return {a.num * b.den, a.den * b.num};
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  RF parse() {
    RF v = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected input", pos_);
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  RF expr() {
    RF v = term();
    for (;;) {
      if (accept('+'))
        v = rf_add(v, term());
      else if (accept('-'))
        v = rf_sub(v, term());
      else
        return v;
    }
  }

  RF term() {
    RF v = unary();
    for (;;) {
      if (accept('*')) {
        v = rf_mul(v, unary());
      } else if (accept('/')) {
        size_t at = pos_ - 1;
        v = rf_div(v, unary(), at);
      } else {
        return v;
      }
    }
  }

  RF unary() {
    if (accept('-')) return rf_sub(rf_const(RatCx(Rat(0))), unary());
    if (accept('+')) return unary();
    return power();
  }

  RF power() {
    RF base = atom();
    if (accept('^')) {
      skip_ws();
      bool neg = false;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
        neg = s_[pos_] == '-';
        ++pos_;
      }
      size_t at = pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("expected integer exponent", at);
      long e = 0;
      while (pos_ < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        e = e * 10 + (s_[pos_] - '0');
        if (e > 4096) throw ParseError("exponent too large", at);
        ++pos_;
      }
      RF v = rf_const(RatCx(Rat(1)));
      for (long k = 0; k < e; ++k) v = rf_mul(v, base);
      if (neg) v = rf_div(rf_const(RatCx(Rat(1))), v, at);
      return v;
    }
    return base;
  }

  RF atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      size_t open = pos_;
      ++pos_;
      RF v = expr();
      skip_ws();
      if (!accept(')'))
        throw ParseError("unclosed parenthesis (opened at offset " +
                             std::to_string(open) + ")",
                         pos_);
      return v;
    }
    if (c == 'z' || c == 'Z') {
      ++pos_;
      RF v;
      v.num = Polynomial<RatCx>::identity();
      return v;
    }
    if (c == 'i' || c == 'I') {
      ++pos_;
      return rf_const(RatCx(Rat(0), Rat(1)));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return rf_const(number());
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  RatCx number() {
    size_t start = pos_;
    Rat value(0);
    bool any = false;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      value = value * 10 + (s_[pos_] - '0');
      any = true;
      ++pos_;
    }
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      Rat place(1, 10);
      while (pos_ < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        value += place * (s_[pos_] - '0');
        place /= 10;
        any = true;
        ++pos_;
      }
    }
    if (!any) throw ParseError("malformed number", start);
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      ++pos_;
      bool neg = false;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
        neg = s_[pos_] == '-';
        ++pos_;
      }
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("malformed exponent", pos_);
      long e = 0;
      while (pos_ < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        e = e * 10 + (s_[pos_] - '0');
        if (e > 400) throw ParseError("exponent too large", pos_);
        ++pos_;
      }
      Rat ten(10);
      for (long k = 0; k < e; ++k) value = neg ? value / ten : value * ten;
    }
    if (pos_ < s_.size() && (s_[pos_] == 'i' || s_[pos_] == 'I')) {
      ++pos_;
      return RatCx(Rat(0), value);
    }
    return RatCx(value, Rat(0));
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

std::pair<Polynomial<RatCx>, Polynomial<RatCx>> parse_map(
    const std::string& text) {
  Parser p(text);
  RF v = p.parse();
  if (v.den.is_zero()) throw ParseError("zero denominator", 0);
  // normalize: gcd-reduce, monic denominator
  Polynomial<RatCx> g = poly_gcd(v.num, v.den);
  if (g.degree() >= 1) {
    v.num = poly_divide_exact(v.num, g);
    v.den = poly_divide_exact(v.den, g);
  }
  RatCx lead = v.den.coeffs().back();
  std::vector<RatCx> nc = v.num.coeffs(), dc = v.den.coeffs();
  for (auto& x : nc) x /= lead;
  for (auto& x : dc) x /= lead;
  return {Polynomial<RatCx>(std::move(nc)), Polynomial<RatCx>(std::move(dc))};
}

}  // namespace dxm
