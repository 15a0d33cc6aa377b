#pragma once

#include <vector>

#include "bigj/cyclotomic.hpp"

namespace bigj::detail {

// Dense truncated power series over Q(zeta), index = power of the local
// parameter. Workhorse for expansions at roots of unity.
using CycSeries = std::vector<Cyclotomic>;

inline CycSeries cyc_series_mul(const CycSeries& a, const CycSeries& b, size_t cap) {
  if (a.empty() || b.empty()) return {};
  CycSeries r(std::min(cap, a.size() + b.size() - 1));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size() && i + j < cap; ++j) {
      if (b[j].is_zero()) continue;
      if (i + j >= r.size()) r.resize(i + j + 1);
      r[i + j] = r[i + j] + a[i] * b[j];
    }
  }
  return r;
}

inline CycSeries cyc_series_inv(const CycSeries& a, size_t cap) {
  if (a.empty() || a[0].is_zero()) throw std::domain_error("series inverse: not a unit");
  CycSeries r(cap);
  Cyclotomic u0 = a[0].inv();
  r[0] = u0;
  for (size_t n = 1; n < cap; ++n) {
    Cyclotomic s;
    for (size_t j = 1; j <= n && j < a.size(); ++j) s = s + a[j] * r[n - j];
    r[n] = -(u0 * s);
  }
  return r;
}

}  // namespace bigj::detail
