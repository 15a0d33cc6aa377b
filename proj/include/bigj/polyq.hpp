#pragma once

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "bigj/rational.hpp"

namespace bigj {

// Dense univariate polynomials over Q, ascending coefficients, no trailing
// zeros. Only used as scaffolding for the cyclotomic field layer.
using PolyQ = std::vector<Rational>;

inline void poly_trim(PolyQ& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline PolyQ poly_add(const PolyQ& a, const PolyQ& b) {
  PolyQ r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  poly_trim(r);
  return r;
}

inline PolyQ poly_sub(const PolyQ& a, const PolyQ& b) {
  PolyQ r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  poly_trim(r);
  return r;
}

inline PolyQ poly_mul(const PolyQ& a, const PolyQ& b) {
  if (a.empty() || b.empty()) return {};
  PolyQ r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  poly_trim(r);
  return r;
}

// Euclidean division; requires b != 0.
inline std::pair<PolyQ, PolyQ> poly_divmod(PolyQ a, const PolyQ& b) {
  if (b.empty()) throw std::domain_error("poly_divmod: division by zero");
  PolyQ q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  while (a.size() >= b.size()) {
    Rational c = a.back() / b.back();
    size_t shift = a.size() - b.size();
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    poly_trim(a);
  }
  poly_trim(q);
  return {q, a};
}

// n-th cyclotomic polynomial, computed as (x^n - 1) / prod_{d|n, d<n} Phi_d.
inline PolyQ cyclotomic_poly(int n) {
  if (n < 1) throw std::domain_error("cyclotomic_poly: n must be >= 1");
  static std::mutex mu;
  static std::map<int, PolyQ> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0 || cache.count(d)) continue;
    PolyQ num(d + 1, Rational(0));
    num[0] = -1;
    num[d] = 1;
    for (int e = 1; e < d; ++e) {
      if (d % e != 0) continue;
      auto [quot, rem] = poly_divmod(num, cache.at(e));
      if (!rem.empty()) throw std::logic_error("cyclotomic_poly: inexact division");
      num = std::move(quot);
    }
    cache[d] = std::move(num);
  }
  return cache.at(n);
}

}  // namespace bigj
