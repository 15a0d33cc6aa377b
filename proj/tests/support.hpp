#pragma once

#include <random>
#include <vector>

#include "bigj/cone.hpp"
#include "bigj/partial_fractions.hpp"

// Deterministic generators and independent oracles shared by the unit tests
// and the acceptance suite. Oracles must not call the code paths they check.
namespace testutil {

using namespace bigj;
using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Rational random_rational(Rng& rng, int max_num = 6, int max_den = 4) {
  int num = uniform(rng, -max_num, max_num);
  int den = uniform(rng, 1, max_den);
  return Rational(num) / den;
}

inline Rational random_rational_nonzero(Rng& rng, int max_num = 6, int max_den = 4) {
  Rational r = random_rational(rng, max_num, max_den);
  return r == 0 ? Rational(1) : r;
}

inline Cyclotomic random_cyclotomic(Rng& rng, int m) {
  Cyclotomic x(random_rational(rng));
  for (int tries = 0; tries < 2; ++tries)
    x = x + Cyclotomic(random_rational(rng)) * Cyclotomic::zeta(m, uniform(rng, 0, m - 1));
  return x;
}

// Random element of Lambda_+ (filtration degree >= 1), a few monomials.
inline LambdaElement random_lambda_plus(Rng& rng, int D, int max_tau = 4, int terms = 2) {
  LambdaElement x = LambdaElement::zero();
  for (int t = 0; t < terms; ++t) {
    LambdaElement mono = LambdaElement::generator(uniform(rng, 1, std::max(1, D)),
                                                  uniform(rng, 1, max_tau), D);
    if (uniform(rng, 0, 2) == 0)
      mono = mono * LambdaElement::generator(1, uniform(rng, 1, max_tau), D);
    x = x + mono.scaled(random_rational_nonzero(rng, 3, 3));
  }
  return x;
}

// Random general element (may include a scalar part).
inline LambdaElement random_lambda(Rng& rng, int D, int max_tau = 4) {
  LambdaElement x = random_lambda_plus(rng, D, max_tau);
  if (uniform(rng, 0, 1)) x = x + LambdaElement::scalar(random_rational(rng));
  return x;
}

inline LaurentPoly random_laurent(Rng& rng, int D, int emin = -2, int emax = 2, int terms = 3) {
  LaurentPoly p;
  for (int t = 0; t < terms; ++t) {
    int e = uniform(rng, emin, emax);
    p.set_coeff(e, p.coeff(e) + LambdaElement::scalar(random_rational(rng)));
  }
  return p;
}

// Laurent polynomial 1 + (Lambda_+ tail), the admissible t-inputs.
inline LaurentPoly random_unit_laurent(Rng& rng, int D, int emin = -1, int emax = 2) {
  LaurentPoly p = LaurentPoly::one();
  for (int t = 0, n = uniform(rng, 0, 2); t < n; ++t) {
    int e = uniform(rng, emin, emax);
    p.set_coeff(e, p.coeff(e) + random_lambda_plus(rng, D, 4, 1));
  }
  return p;
}

// Random rational function with denominator factors (1-q^k), k <= kmax.
inline RationalQ random_rational_q(Rng& rng, int D, int kmax = 6, bool scalar_only = false) {
  LaurentPoly num;
  for (int t = 0, n = uniform(rng, 1, 3); t < n; ++t) {
    int e = uniform(rng, -2, 3);
    LambdaElement c = scalar_only ? LambdaElement::scalar(random_rational_nonzero(rng))
                                  : random_lambda(rng, D);
    num.set_coeff(e, num.coeff(e) + c);
  }
  RationalQ f(num);
  for (int t = 0, n = uniform(rng, 0, 2); t < n; ++t)
    f = f * RationalQ::inv_one_minus_q_pow(uniform(rng, 1, kmax));
  return f;
}

inline PtParams random_params(Rng& rng, const EngineConfig& cfg, int max_tau_index = 0) {
  int top = max_tau_index > 0 ? max_tau_index : cfg.R;
  PtParams p;
  for (int k = 1; k <= top; ++k)
    if (uniform(rng, 0, 1)) p.tau[k] = random_lambda_plus(rng, cfg.D);
  for (int r = 1; r <= cfg.R; ++r)
    if (uniform(rng, 0, 1)) p.t[r] = random_unit_laurent(rng, cfg.D);
  return p;
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

// Independent recombination check for a partial-fraction decomposition:
// with den = prod (1-q^{k_i}) expanded, verifies
//   num - plus * den == sum_eta sum_j c_{eta,j} * den / (q-eta)^j
// using only polynomial arithmetic and synthetic division.
inline bool recombination_exact(const RationalQ& f, const PartialFractions& pf) {
  LaurentPoly den = f.den_poly();
  LaurentPoly lhs = f.num() - pf.plus_part * den;
  LaurentPoly rhs;
  for (const auto& [key, cs] : pf.polar) {
    Cyclotomic eta = Cyclotomic::zeta(key.order, key.a);
    LaurentPoly reduced = den;
    for (size_t j = 1; j <= cs.size(); ++j) {
      auto next = reduced.divided_by_linear(eta);
      if (!next) return false;  // den not divisible: impossible for true poles
      reduced = *next;
      rhs = rhs + reduced.scaled(cs[j - 1]);
    }
  }
  return lhs == rhs;
}

// Residue at q=0 computed from scratch by truncated series arithmetic over
// plain Laurent data (no RationalQ internals).
inline LambdaElement residue_oracle(const RationalQ& f) {
  if (f.num().is_zero() || f.num().min_exp() >= 0) return LambdaElement::zero();
  int order = -1 - f.num().min_exp();
  // den expanded as a power series, inverted naively.
  LaurentPoly den = f.den_poly();
  std::vector<LambdaElement> d(static_cast<size_t>(order) + 1);
  for (int n = 0; n <= order; ++n) d[static_cast<size_t>(n)] = den.coeff(n);
  std::vector<LambdaElement> inv(static_cast<size_t>(order) + 1);
  inv[0] = LambdaElement::one();
  for (int n = 1; n <= order; ++n) {
    LambdaElement s;
    for (int j = 1; j <= n; ++j) s = s + d[static_cast<size_t>(j)] * inv[static_cast<size_t>(n - j)];
    inv[static_cast<size_t>(n)] = -s;
  }
  LambdaElement res;
  for (const auto& [e, c] : f.num().terms()) {
    if (e >= 0) break;
    res = res + c * inv[static_cast<size_t>(-1 - e)];
  }
  return res;
}

inline LambdaElement omega_oracle(const RationalQ& f, const RationalQ& g) {
  RationalQ qinv(LaurentPoly::monomial(-1, LambdaElement::one()));
  return residue_oracle(f * g.invert_q() * qinv) - residue_oracle(f.invert_q() * g * qinv);
}

}  // namespace testutil
