#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "bigj/qseries.hpp"
#include "bigj/toyk.hpp"

namespace bigj {

// ---------------------------------------------------------------------------
// Hurwitz / cyclic-cover combinatorics
// ---------------------------------------------------------------------------

// Euler characteristic of a degree-M cyclic cover of a genus-g orbicurve with
// ramification indices m_i: eu = M(2 - 2g - n) + sum_i M/m_i.
struct RamificationProfile {
  int M = 1;
  int g = 0;
  std::vector<int> orders;

  void validate() const {
    if (M < 1) throw std::invalid_argument("profile: M must be >= 1");
    for (int m : orders)
      if (m < 1 || M % m != 0)
        throw std::invalid_argument("profile: each order must divide M");
  }
};

inline long hurwitz_euler(const RamificationProfile& p) {
  p.validate();
  long eu = static_cast<long>(p.M) * (2 - 2 * p.g - static_cast<int>(p.orders.size()));
  for (int m : p.orders) eu += p.M / m;
  return eu;
}

// A realizable genus-0 profile with positive Euler characteristic, together
// with a monodromy witness in Z_M (additive notation).
struct AdeProfile {
  int M = 1;
  std::vector<int> orders;     // nontrivial ramification orders, sorted
  long euler = 2;
  std::vector<int> monodromy;  // elements of Z_M of those exact orders
};

inline int zmod_order(int x, int M) { return M / std::gcd(x, M); }

// Brute force over M <= M_bound: genus-0 profiles of nontrivial orders with
// eu > 0, realizable by elements of Z_M of those exact orders whose sum is 0
// and which generate Z_M (connected cover). Positivity caps the number of
// nontrivial points at 3, so the search space is tiny.
inline std::vector<AdeProfile> ade_enumerate(int M_bound) {
  if (M_bound < 1) throw std::invalid_argument("ade_enumerate: bound must be >= 1");
  std::vector<AdeProfile> out;
  for (int M = 1; M <= M_bound; ++M) {
    for (int n = 0; n <= 3; ++n) {
      std::vector<int> sigma(static_cast<size_t>(n), 0);
      std::vector<AdeProfile> found;
      auto record = [&]() {
        int sum = 0, g = M;
        bool nontrivial = true;
        for (int x : sigma) {
          sum = (sum + x) % M;
          g = std::gcd(g, x);
          nontrivial = nontrivial && zmod_order(x, M) >= 2;
        }
        if (!nontrivial || sum != 0) return;
        if (std::gcd(g, M) != 1 && M > 1) return;  // cover disconnected
        RamificationProfile p;
        p.M = M;
        p.g = 0;
        for (int x : sigma) p.orders.push_back(zmod_order(x, M));
        std::sort(p.orders.begin(), p.orders.end());
        long eu = hurwitz_euler(p);
        if (eu <= 0) return;
        for (const auto& f : found)
          if (f.orders == p.orders) return;  // one witness per profile
        AdeProfile a;
        a.M = M;
        a.orders = p.orders;
        a.euler = eu;
        a.monodromy = sigma;
        found.push_back(std::move(a));
      };
      std::function<void(size_t)> rec = [&](size_t i) {
        if (i == sigma.size()) {
          record();
          return;
        }
        for (int x = 0; x < M; ++x) {
          sigma[i] = x;
          rec(i + 1);
        }
      };
      if (n == 0) {
        if (M == 1) {
          AdeProfile a;
          a.M = 1;
          a.euler = 2;
          found.push_back(std::move(a));
        }
      } else {
        rec(0);
      }
      for (auto& a : found) out.push_back(std::move(a));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Todd twisting identity
// ---------------------------------------------------------------------------

// x/(1-e^{-x}) * (1-e^{-x})/(1-e^{-rx}) == (1/r) td(L^r), both sides built
// by independent series routes and compared through order N. `perturb` adds
// 1 at x^N on the right-hand side (a detection control).
inline bool todd_twist_identity(int r, int N, bool perturb = false) {
  if (r < 1 || N < 1) throw std::invalid_argument("todd_twist_identity: r, N must be >= 1");
  int E = N + 2;
  QSeries x = QSeries::monomial(1, LambdaElement::one(), E);
  QSeries one_minus_exp = QSeries::one(E) - series_exp(-x);               // 1 - e^{-x}
  QSeries one_minus_exp_r = QSeries::one(E) - series_exp(-x.scaled(Rational(r)));  // 1 - e^{-rx}
  QSeries lhs = x * series_inverse(one_minus_exp) * one_minus_exp * series_inverse(one_minus_exp_r);
  QSeries rhs = x.scaled(Rational(r)) * series_inverse(one_minus_exp_r);  // td(L^r)
  rhs = rhs.scaled(Rational(1) / r);
  if (perturb) rhs = rhs + QSeries::monomial(N, LambdaElement::one(), E);
  return series_agree_through(lhs, rhs, N);
}

// ---------------------------------------------------------------------------
// Delta_zeta and Box operators
// ---------------------------------------------------------------------------

// K-theoretic class T*_X - 1 in the toy K-ring. Certified identities require
// zero rank part (nilpotent classes): the rank part makes the k-sums
// genuinely infinite.
using FormalClass = ToyKValued<LambdaElement>;

inline bool has_rank_part(const FormalClass& c) {
  std::vector<int> zero(static_cast<size_t>(c.ring().s()), 0);
  return !c.at(zero).is_zero();
}

// The Box/Delta machinery keeps the expansion roots of unity fixed under
// Adams operations; classes must therefore not carry cyclotomic scalars of
// their own (K-theory classes never do).
inline void require_root_free(const FormalClass& c) {
  for (const auto& [e, lam] : c.terms())
    for (const auto& [mon, coeff] : lam.terms())
      if (!coeff.is_rational())
        throw std::invalid_argument("formal class: cyclotomic scalars are not supported");
}

// Expansion near q = 1 of 1/(1 - zeta_m^{zexp} (1+u)^{p/m}) over Q(zeta_m).
inline QSeries expand_inv_one_minus(int m, int zexp, int p, int E) {
  if (m < 1 || p < 1) throw std::domain_error("expand_inv_one_minus: m, p must be >= 1");
  zexp = ((zexp % m) + m) % m;
  Cyclotomic eta = Cyclotomic::zeta(m, zexp);
  if (zexp == 0) {
    if (p % m != 0) throw std::logic_error("expand_inv_one_minus: fractional pole");
    int j = p / m;  // 1 - (1+u)^j = -u g_j(u)
    size_t cap = static_cast<size_t>(E + 2);
    detail::CycSeries g(static_cast<size_t>(j));
    for (int n = 1; n <= j; ++n) g[static_cast<size_t>(n - 1)] = Cyclotomic(binomial(Rational(j), n));
    detail::CycSeries gi = detail::cyc_series_inv(g, cap);
    QSeries out(E, m);
    for (size_t n = 0; n < cap; ++n)
      if (!gi[n].is_zero())
        out.set_coeff(static_cast<int>(n) - 1, LambdaElement::scalar(-gi[n]));
    return out;
  }
  size_t cap = static_cast<size_t>(E + 1);
  detail::CycSeries w(cap);
  w[0] = Cyclotomic(Rational(1)) - eta;
  Rational alpha = Rational(p) / m;
  Rational bin = 1;
  for (size_t n = 1; n < cap; ++n) {
    bin = bin * (alpha - static_cast<int>(n - 1)) / static_cast<int>(n);
    w[n] = -(Cyclotomic(bin) * eta);
  }
  detail::CycSeries wi = detail::cyc_series_inv(w, cap);
  QSeries out(E, m);
  for (size_t n = 0; n < cap; ++n)
    if (!wi[n].is_zero()) out.set_coeff(static_cast<int>(n), LambdaElement::scalar(wi[n]));
  return out;
}

// Exponent of Delta_zeta, truncated at k <= K_bound:
//   sum_k [ Psi^k(c)/(k(1-zeta^{-k}q^{k/m})) - Psi^{km}(c)/(k(1-q^{km})) ].
inline ToyKValued<QSeries> delta_exponent(const FormalClass& c, int m, int a, int K_bound, int E) {
  if (has_rank_part(c))
    throw std::invalid_argument("delta exponent: non-truncating exponent (class has a rank part)");
  require_root_free(c);
  ToyKValued<QSeries> X(c.ring());
  auto lift = [&](const FormalClass& cls, const QSeries& s) {
    ToyKValued<QSeries> y(c.ring());
    for (const auto& [e, lam] : cls.terms()) {
      QSeries v = s.scaled(lam);
      if (!v.is_zero()) y.set(e, v);
    }
    return y;
  };
  for (int k = 1; k <= K_bound; ++k) {
    FormalClass ck = c.adams(k, [&](const LambdaElement& v) { return v.adams(k); });
    FormalClass ckm = c.adams(k * m, [&](const LambdaElement& v) { return v.adams(k * m); });
    QSeries s1 = expand_inv_one_minus(m, -k * a, k, E).scaled(Rational(1) / k);
    QSeries s2 = expand_inv_one_minus(1, 0, k * m, E).scaled(Rational(1) / k);
    X = X + lift(ck, s1) - lift(ckm, s2.with_root_order(m));
  }
  return X;
}

// Exponent of Box_{zeta,r}, truncated at k <= K_bound:
//   sum_k [ Psi^{kr}(c)/(k(1-zeta^{-k}q^{kr/m})) - Psi^k(c)/(k(1-q^k)) ].
inline ToyKValued<QSeries> box_exponent(const FormalClass& c, int m, int a, int r, int K_bound, int E) {
  if (has_rank_part(c))
    throw std::invalid_argument("box exponent: non-truncating exponent (class has a rank part)");
  require_root_free(c);
  ToyKValued<QSeries> X(c.ring());
  auto lift = [&](const FormalClass& cls, const QSeries& s) {
    ToyKValued<QSeries> y(c.ring());
    for (const auto& [e, lam] : cls.terms()) {
      QSeries v = s.scaled(lam);
      if (!v.is_zero()) y.set(e, v);
    }
    return y;
  };
  for (int k = 1; k <= K_bound; ++k) {
    FormalClass ckr = c.adams(k * r, [&](const LambdaElement& v) { return v.adams(k * r); });
    FormalClass ck = c.adams(k, [&](const LambdaElement& v) { return v.adams(k); });
    QSeries s1 = expand_inv_one_minus(m, -k * a, static_cast<int>(static_cast<long>(k) * r), E)
                     .scaled(Rational(1) / k);
    QSeries s2 = expand_inv_one_minus(1, 0, k, E).scaled(Rational(1) / k);
    X = X + lift(ckr, s1) - lift(ck, s2.with_root_order(m));
  }
  return X;
}

// Multiplier Delta_zeta = exp(delta_exponent); nilpotency makes this finite.
inline ToyKValued<QSeries> delta_zeta(const FormalClass& c, int m, int a, int K_bound, int E) {
  ToyKValued<QSeries> X = delta_exponent(c, m, a, K_bound, E);
  ToyKValued<QSeries> sum = ToyKValued<QSeries>::scalar(c.ring(), QSeries::one(E));
  ToyKValued<QSeries> term = sum;
  int cap = 1;
  for (int N : c.ring().nilp) cap += N;
  for (int n = 1; n <= cap; ++n) {
    term = (term * X).mapped([&](const QSeries& s) { return s.scaled(Rational(1) / n); });
    if (term.is_zero()) break;
    sum = sum + term;
  }
  return sum;
}

// Box_{zeta,r} Box_{1,rm}^{-1} = Psi^r(Delta_zeta) at the level of exponents:
// the left side is assembled from the Box formulas, the right side applies
// Psi^r to the independently expanded Delta_zeta exponent — P -> P^r on the
// class, Psi^r on the Lambda-generators of the coefficients, q -> q^r as a
// series substitution, with the expansion root zeta itself fixed (the
// relation forces the trivial action on the adjoined roots). Exact
// comparison through order E.
inline bool box_delta_identity(const FormalClass& c, int m, int a, int r, int E, int K_bound = 8,
                               bool perturb = false) {
  ToyKValued<QSeries> lhs =
      box_exponent(c, m, a, r, K_bound, E) - box_exponent(c, 1, 0, m * r, K_bound, E)
          .mapped([&](const QSeries& s) { return s.with_root_order(m); });
  ToyKValued<QSeries> rhs =
      delta_exponent(c, m, a, K_bound, E).adams(r, [&](const QSeries& s) {
        return s.adams_coeffs_fixing_roots(r).substitute_q_power(r);
      });
  if (perturb) {
    // Detection control: corrupt one exponent cell and make sure the
    // comparison notices.
    std::vector<int> e(static_cast<size_t>(c.ring().s()), 0);
    if (!e.empty()) e[0] = 1;
    ToyKValued<QSeries> bump(c.ring());
    bump.set(e, QSeries::one(E));
    lhs = lhs + bump;
  }
  ToyKValued<QSeries> diff = lhs - rhs;
  for (const auto& [e, s] : diff.terms()) {
    if (!s.truncate_to(E).is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Expansion lemma: 1/(1-q^k) = 1/(k(1-q)) + (k-1)/(2k) + O(u).
// ---------------------------------------------------------------------------

inline bool expansion_lemma_check(int k_max, int E = 4) {
  for (int k = 1; k <= k_max; ++k) {
    QSeries s = expand_at_one(RationalQ::inv_one_minus_q_pow(k), E);
    if (s.min_order() < -1) return false;
    if (!(s.coeff(-1) == LambdaElement::scalar(Rational(-1) / k))) return false;
    if (!(s.coeff(0) == LambdaElement::scalar(Rational(k - 1) / (2 * k)))) return false;
  }
  return true;
}

}  // namespace bigj
