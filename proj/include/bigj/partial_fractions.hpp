#pragma once

#include <numeric>
#include <vector>

#include "bigj/cycseries.hpp"
#include "bigj/rational_q.hpp"

namespace bigj {

// Primitive root of unity eta = zeta_order^a, gcd(a, order) = 1 (a = 0 for
// order 1).
struct PolarKey {
  int order;
  int a;
  auto operator<=>(const PolarKey&) const = default;
};

// f = plus_part + sum over eta of sum_j c[j-1] / (q - eta)^j, where each
// polar part vanishes at q = infinity and is finite at q = 0.
struct PartialFractions {
  LaurentPoly plus_part;
  std::map<PolarKey, std::vector<LambdaElement>> polar;
};

namespace detail {

// num = A * den + B with A Laurent, B an ordinary polynomial of degree
// < deg(den); den must have an invertible constant term (true for products
// of (1 - q^k)). This is the K_+ / K_- splitting at the level of numerators.
inline std::pair<LaurentPoly, LaurentPoly> laurent_divmod(LaurentPoly num, const LaurentPoly& den) {
  LaurentPoly quot;
  Rational c0 = den.coeff(0).scalar_part().rational_value();
  if (c0 == 0) throw std::domain_error("laurent_divmod: denominator not a unit at 0");
  // Clear negative exponents from the bottom.
  while (!num.is_zero() && num.min_exp() < 0) {
    int e = num.min_exp();
    LambdaElement a = num.coeff(e).scaled(Rational(1) / c0);
    quot.set_coeff(e, a);
    num = num - LaurentPoly::monomial(e, a) * den;
  }
  // Standard division at the top.
  int dtop = den.max_exp();
  Rational ctop = den.coeff(dtop).scalar_part().rational_value();
  while (!num.is_zero() && num.max_exp() >= dtop) {
    int e = num.max_exp();
    LambdaElement a = num.coeff(e).scaled(Rational(1) / ctop);
    quot.set_coeff(e - dtop, quot.coeff(e - dtop) + a);
    num = num - LaurentPoly::monomial(e - dtop, a) * den;
  }
  return {quot, num};
}

}  // namespace detail

// Laurent-polynomial component of f under the polarization "Laurent
// polynomials" + "proper fractions vanishing at infinity and finite at 0".
inline LaurentPoly project_plus(const RationalQ& f) {
  if (f.is_laurent()) return f.num();
  return detail::laurent_divmod(f.num(), f.den_poly()).first;
}

inline PartialFractions partial_fractions(const RationalQ& f) {
  PartialFractions out;
  if (f.is_laurent()) {
    out.plus_part = f.num();
    return out;
  }
  LaurentPoly den = f.den_poly();
  out.plus_part = detail::laurent_divmod(f.num(), den).first;

  // Pole orders: eta of primitive order d is a root of (1 - q^k) iff d | k.
  std::map<int, int> mult;  // d -> multiplicity
  for (const auto& [k, m] : f.den()) {
    for (int d = 1; d <= k; ++d)
      if (k % d == 0) mult[d] += m;
  }
  for (const auto& [d, mu] : mult) {
    for (int a = (d == 1 ? 0 : 1); a < std::max(d, 1); ++a) {
      if (d > 1 && std::gcd(a, d) != 1) continue;
      Cyclotomic eta = Cyclotomic::zeta(d, a);
      size_t cap = static_cast<size_t>(mu);

      // Numerator expanded at q = eta + u, modulo u^mu; eta^{e-n} = zeta_d^{a(e-n)}.
      std::vector<LambdaElement> nser(cap);
      for (const auto& [e, c] : f.num().terms()) {
        for (size_t n = 0; n < cap; ++n) {
          Rational b = binomial(Rational(e), static_cast<int>(n));
          if (b == 0 && n > static_cast<size_t>(std::max(e, 0))) break;
          if (b == 0) continue;
          long power = (static_cast<long>(a) * (e - static_cast<long>(n))) % d;
          Cyclotomic etapow = Cyclotomic::zeta(d, static_cast<int>((power + d) % d));
          nser[n] = nser[n] + c.scaled(b * etapow);
        }
      }

      // Denominator: each factor with d | k contributes u * (unit); the rest
      // are units. Collect the unit product V modulo u^mu.
      detail::CycSeries V{Cyclotomic(Rational(1))};
      for (const auto& [k, m] : f.den()) {
        detail::CycSeries fac;  // (1 - (eta+u)^k), possibly divided by u
        std::vector<Cyclotomic> pw(static_cast<size_t>(k) + 1);
        for (int n = 0; n <= k; ++n)
          pw[n] = Cyclotomic(binomial(Rational(k), n)) * Cyclotomic::zeta(d, ((k - n) % d) * a);
        if (k % d == 0) {
          // constant term 1 - eta^k = 0; divide by u.
          fac.resize(static_cast<size_t>(k));
          for (int n = 1; n <= k; ++n) fac[n - 1] = -pw[n];
        } else {
          fac.resize(static_cast<size_t>(k) + 1);
          fac[0] = Cyclotomic(Rational(1)) - pw[0];
          for (int n = 1; n <= k; ++n) fac[n] = -pw[n];
        }
        for (int i = 0; i < m; ++i) V = detail::cyc_series_mul(V, fac, cap);
      }
      detail::CycSeries W = detail::cyc_series_inv(V, cap);

      // Principal part coefficients: c_j at (q-eta)^{-j} is [N * V^{-1}]_{mu-j}.
      std::vector<LambdaElement> cj(cap);
      bool any = false;
      for (size_t j = 1; j <= cap; ++j) {
        LambdaElement s;
        size_t target = cap - j;
        for (size_t i = 0; i <= target; ++i)
          s = s + nser[i].scaled(W[target - i]);
        cj[j - 1] = s;
        if (!s.is_zero()) any = true;
      }
      while (!cj.empty() && cj.back().is_zero()) cj.pop_back();
      if (any) out.polar[PolarKey{d, a}] = std::move(cj);
    }
  }
  return out;
}

}  // namespace bigj
