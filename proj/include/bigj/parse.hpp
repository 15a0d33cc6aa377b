#pragma once

#include <cctype>
#include <string_view>

#include "bigj/laurent.hpp"

namespace bigj {

// Recursive-descent parser for the small expression language used in input
// files: sums of products of rationals, "q", "z{m}" (a root of unity),
// "tau{k}" and "Psi{j}(tau{k})", with integer powers via '^'.
// Example: "1 - q + 1/2*Psi2(tau1)*q^-1".
class ExprParser {
 public:
  ExprParser(std::string_view src, int trunc) : src_(src), trunc_(trunc) {}

  LaurentPoly parse() {
    LaurentPoly v = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("parse error at offset " + std::to_string(pos_) + ": " + msg +
                                " in '" + std::string(src_) + "'");
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  long integer() {
    skip_ws();
    bool neg = eat('-');
    if (!neg) (void)eat('+');
    skip_ws();
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) fail("expected integer");
    long v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      v = v * 10 + (src_[pos_] - '0');
      ++pos_;
    }
    return neg ? -v : v;
  }

  bool lookahead_word(std::string_view w) {
    skip_ws();
    return src_.substr(pos_, w.size()) == w;
  }

  LaurentPoly expr() {
    LaurentPoly v = term();
    while (true) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }

  LaurentPoly term() {
    LaurentPoly v = factor();
    while (eat('*')) v = v * factor();
    return v;
  }

  LaurentPoly factor() {
    skip_ws();
    if (eat('-')) return -factor();
    LaurentPoly v = atom();
    if (eat('^')) {
      long e = integer();
      if (e < 0) {
        // Negative powers only make sense for the monomial q^e.
        if (v.terms().size() != 1 || !(v.terms().begin()->second == LambdaElement::one()))
          fail("negative power of a non-monomial");
        return LaurentPoly::monomial(static_cast<int>(e) * v.terms().begin()->first, LambdaElement::one());
      }
      LaurentPoly r = LaurentPoly::one();
      for (long i = 0; i < e; ++i) r = r * v;
      return r;
    }
    return v;
  }

  LaurentPoly atom() {
    skip_ws();
    if (eat('(')) {
      LaurentPoly v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      long num = integer();
      if (eat('/')) {
        long den = integer();
        if (den == 0) fail("zero denominator");
        return LaurentPoly::constant(Rational(num) / den);
      }
      return LaurentPoly::constant(Rational(num));
    }
    if (lookahead_word("Psi")) {
      pos_ += 3;
      long j = integer();
      if (!eat('(')) fail("expected '(' after Psi");
      if (!lookahead_word("tau")) fail("expected tau inside Psi(...)");
      pos_ += 3;
      long k = integer();
      if (!eat(')')) fail("expected ')'");
      return LaurentPoly::constant(LambdaElement::generator(static_cast<int>(j), static_cast<int>(k), trunc_));
    }
    if (lookahead_word("tau")) {
      pos_ += 3;
      long k = integer();
      return LaurentPoly::constant(LambdaElement::tau(static_cast<int>(k), trunc_));
    }
    if (lookahead_word("z")) {
      pos_ += 1;
      long m = integer();
      return LaurentPoly::constant(LambdaElement::scalar(Cyclotomic::zeta(static_cast<int>(m))));
    }
    if (lookahead_word("q")) {
      pos_ += 1;
      return LaurentPoly::monomial(1, LambdaElement::one());
    }
    fail("expected atom");
  }

  std::string_view src_;
  size_t pos_ = 0;
  int trunc_;
};

inline LaurentPoly parse_laurent(std::string_view s, int trunc) {
  return ExprParser(s, trunc).parse().truncate_to(trunc);
}

inline LambdaElement parse_lambda(std::string_view s, int trunc) {
  LaurentPoly p = parse_laurent(s, trunc);
  for (const auto& [e, c] : p.terms())
    if (e != 0) throw std::invalid_argument("expected a scalar (q-free) expression: '" + std::string(s) + "'");
  return p.coeff(0);
}

}  // namespace bigj
