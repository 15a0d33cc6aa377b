#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace bigj {

// Exact arbitrary-precision arithmetic. cpp_rational keeps values reduced
// with a positive denominator, which is exactly the canonical form the
// serializers rely on.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

inline Rational parse_rational(std::string_view s) {
  auto bad = [&] { throw std::invalid_argument("bad rational: '" + std::string(s) + "'"); };
  size_t i = 0, n = s.size();
  while (i < n && s[i] == ' ') ++i;
  size_t j = n;
  while (j > i && s[j - 1] == ' ') --j;
  if (i >= j) bad();
  std::string_view body = s.substr(i, j - i);
  size_t slash = body.find('/');
  auto is_int = [](std::string_view t) {
    if (t.empty()) return false;
    size_t k = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (k == t.size()) return false;
    for (; k < t.size(); ++k)
      if (t[k] < '0' || t[k] > '9') return false;
    return true;
  };
  if (slash == std::string_view::npos) {
    if (!is_int(body)) bad();
    return Rational(Integer(std::string(body)));
  }
  std::string_view num = body.substr(0, slash), den = body.substr(slash + 1);
  if (!is_int(num) || !is_int(den)) bad();
  Integer d{std::string(den)};
  if (d == 0) bad();
  return Rational(Integer(std::string(num)), d);
}

// Generalized binomial coefficient C(alpha, n) for rational alpha.
inline Rational binomial(const Rational& alpha, int n) {
  if (n < 0) return 0;
  Rational acc = 1;
  for (int i = 0; i < n; ++i) acc = acc * (alpha - i) / (i + 1);
  return acc;
}

inline Rational factorial(int n) {
  Rational acc = 1;
  for (int i = 2; i <= n; ++i) acc *= i;
  return acc;
}

}  // namespace bigj
