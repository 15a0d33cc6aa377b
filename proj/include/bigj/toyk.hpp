#pragma once

#include <map>
#include <vector>

#include "bigj/lambda.hpp"

namespace bigj {

// The toy coefficient K-ring: s line classes P_i with (P_i - 1) nilpotent of
// order N_i + 1, i.e. Q[P_i^{+-1}] / ((P_i - 1)^{N_i + 1}). Basis monomials
// are prod (P_i - 1)^{e_i} with e_i <= N_i.
struct ToyKRing {
  std::vector<int> nilp;  // N_i per generator

  int s() const { return static_cast<int>(nilp.size()); }
  friend bool operator==(const ToyKRing&, const ToyKRing&) = default;

  static ToyKRing trivial() { return ToyKRing{}; }
  static ToyKRing line(int N = 1) { return ToyKRing{{N}}; }
};

// (P^k - 1)^e truncated mod (P-1)^{N+1}, as a dense vector in (P-1)-powers.
inline std::vector<Rational> pk_minus_one_pow(long k, int e, int N) {
  std::vector<Rational> base(static_cast<size_t>(N) + 1, Rational(0));
  for (int j = 1; j <= N; ++j) base[static_cast<size_t>(j)] = binomial(Rational(static_cast<long>(k)), j);
  std::vector<Rational> acc(static_cast<size_t>(N) + 1, Rational(0));
  acc[0] = 1;
  for (int t = 0; t < e; ++t) {
    std::vector<Rational> next(static_cast<size_t>(N) + 1, Rational(0));
    for (int i = 0; i <= N; ++i) {
      if (acc[static_cast<size_t>(i)] == 0) continue;
      for (int j = 0; i + j <= N; ++j)
        next[static_cast<size_t>(i + j)] += acc[static_cast<size_t>(i)] * base[static_cast<size_t>(j)];
    }
    acc = std::move(next);
  }
  return acc;
}

// Value of the toy K-ring with coefficients in a ring T (T needs +, *, unary
// minus, is_zero(), scaled(Rational)). Keys are the nilpotent exponent
// vectors e, values the T-coefficients.
template <class T>
class ToyKValued {
 public:
  ToyKValued() : ring_(ToyKRing::trivial()) {}
  explicit ToyKValued(ToyKRing ring) : ring_(std::move(ring)) {}

  static ToyKValued scalar(const ToyKRing& ring, const T& v) {
    ToyKValued x(ring);
    x.set(std::vector<int>(static_cast<size_t>(ring.s()), 0), v);
    return x;
  }

  const ToyKRing& ring() const { return ring_; }
  const std::map<std::vector<int>, T>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  T at(const std::vector<int>& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? T() : it->second;
  }

  void set(const std::vector<int>& e, const T& v) {
    check_key(e);
    if (v.is_zero())
      t_.erase(e);
    else
      t_[e] = v;
  }

  friend ToyKValued operator+(const ToyKValued& a, const ToyKValued& b) {
    a.check_ring(b);
    ToyKValued r = a;
    for (const auto& [e, v] : b.t_) {
      auto [it, fresh] = r.t_.emplace(e, v);
      if (!fresh) it->second = it->second + v;
    }
    r.prune();
    return r;
  }

  friend ToyKValued operator-(const ToyKValued& a, const ToyKValued& b) { return a + (-b); }

  ToyKValued operator-() const {
    ToyKValued r = *this;
    for (auto& [e, v] : r.t_) v = -v;
    return r;
  }

  friend ToyKValued operator*(const ToyKValued& a, const ToyKValued& b) {
    a.check_ring(b);
    ToyKValued r(a.ring_);
    for (const auto& [ea, va] : a.t_)
      for (const auto& [eb, vb] : b.t_) {
        std::vector<int> e(ea.size());
        bool alive = true;
        for (size_t i = 0; i < e.size(); ++i) {
          e[i] = ea[i] + eb[i];
          if (e[i] > a.ring_.nilp[i]) {
            alive = false;
            break;
          }
        }
        if (!alive) continue;
        T v = va * vb;
        if (v.is_zero()) continue;
        auto [it, fresh] = r.t_.emplace(std::move(e), v);
        if (!fresh) it->second = it->second + v;
      }
    r.prune();
    return r;
  }

  ToyKValued scaled(const Rational& c) const {
    ToyKValued r(ring_);
    for (const auto& [e, v] : t_) {
      T w = v.scaled(c);
      if (!w.is_zero()) r.t_[e] = w;
    }
    return r;
  }

  // Apply f to every value (e.g. a RationalQ substitution).
  template <class F>
  ToyKValued mapped(F&& f) const {
    ToyKValued r(ring_);
    for (const auto& [e, v] : t_) {
      T w = f(v);
      if (!w.is_zero()) r.t_[e] = w;
    }
    return r;
  }

  // Multiply by prod_i P_i^{k_i}; P^k = sum_j C(k, j) (P-1)^j, any integer k.
  ToyKValued mul_P(const std::vector<int>& k) const {
    if (static_cast<int>(k.size()) != ring_.s())
      throw std::invalid_argument("mul_P: wrong arity");
    ToyKValued r = *this;
    for (int i = 0; i < ring_.s(); ++i) {
      if (k[static_cast<size_t>(i)] == 0) continue;
      ToyKValued next(ring_);
      int N = ring_.nilp[static_cast<size_t>(i)];
      for (const auto& [e, v] : r.t_) {
        for (int j = 0; e[static_cast<size_t>(i)] + j <= N; ++j) {
          Rational c = binomial(Rational(k[static_cast<size_t>(i)]), j);
          if (c == 0) continue;
          std::vector<int> e2 = e;
          e2[static_cast<size_t>(i)] += j;
          T w = v.scaled(c);
          if (w.is_zero()) continue;
          auto [it, fresh] = next.t_.emplace(std::move(e2), w);
          if (!fresh) it->second = it->second + w;
        }
      }
      next.prune();
      r = std::move(next);
    }
    return r;
  }

  // Adams operation: basis (P_i - 1)^{e_i} |-> (P_i^k - 1)^{e_i}, values
  // transformed by value_adams (identity if the values carry no Lambda or q
  // content of their own).
  template <class F>
  ToyKValued adams(int k, F&& value_adams) const {
    ToyKValued r(ring_);
    for (const auto& [e, v] : t_) {
      T w = value_adams(v);
      if (w.is_zero()) continue;
      // Outer product of the per-generator expansions of (P_i^k - 1)^{e_i}.
      std::map<std::vector<int>, Rational> mult;
      mult[std::vector<int>(e.size(), 0)] = 1;
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        auto pw = pk_minus_one_pow(k, e[i], ring_.nilp[i]);
        std::map<std::vector<int>, Rational> next;
        for (const auto& [f, c] : mult)
          for (int j = 0; j <= ring_.nilp[i]; ++j) {
            if (pw[static_cast<size_t>(j)] == 0) continue;
            std::vector<int> f2 = f;
            f2[i] += j;
            if (f2[i] > ring_.nilp[i]) continue;
            next[f2] += c * pw[static_cast<size_t>(j)];
          }
        mult = std::move(next);
      }
      for (const auto& [f, c] : mult) {
        if (c == 0) continue;
        T w2 = w.scaled(c);
        if (w2.is_zero()) continue;
        auto [it, fresh] = r.t_.emplace(f, w2);
        if (!fresh) it->second = it->second + w2;
      }
    }
    r.prune();
    return r;
  }

  friend bool operator==(const ToyKValued& a, const ToyKValued& b) {
    a.check_ring(b);
    if (a.t_.size() != b.t_.size()) return false;
    auto ia = a.t_.begin(), ib = b.t_.begin();
    for (; ia != a.t_.end(); ++ia, ++ib)
      if (ia->first != ib->first || !(ia->second == ib->second)) return false;
    return true;
  }
  friend bool operator!=(const ToyKValued& a, const ToyKValued& b) { return !(a == b); }

 private:
  void check_key(const std::vector<int>& e) const {
    if (static_cast<int>(e.size()) != ring_.s())
      throw std::invalid_argument("toyk: wrong exponent arity");
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] < 0 || e[i] > ring_.nilp[i])
        throw std::invalid_argument("toyk: exponent outside nilpotency range");
  }
  void check_ring(const ToyKValued& o) const {
    if (!(ring_ == o.ring_)) throw std::invalid_argument("toyk: ring mismatch");
  }
  void prune() {
    for (auto it = t_.begin(); it != t_.end();)
      it = it->second.is_zero() ? t_.erase(it) : std::next(it);
  }

  ToyKRing ring_;
  std::map<std::vector<int>, T> t_;
};

}  // namespace bigj
