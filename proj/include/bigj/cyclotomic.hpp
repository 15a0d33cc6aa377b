#pragma once

#include <numeric>
#include <sstream>
#include <string>

#include "bigj/polyq.hpp"

namespace bigj {

// Element of Q(zeta_m), represented as a polynomial in zeta_m reduced modulo
// the m-th cyclotomic polynomial. Values of different orders are combined by
// embedding both into Q(zeta_lcm). Purely rational values are kept at order 1
// so that pipelines that never leave Q stay cheap.
class Cyclotomic {
 public:
  Cyclotomic() : order_(1) {}
  Cyclotomic(const Rational& r) : order_(1) {
    if (r != 0) c_.push_back(r);
  }
  Cyclotomic(int n) : Cyclotomic(Rational(n)) {}

  // zeta_m^a
  static Cyclotomic zeta(int m, int a = 1) {
    if (m < 1) throw std::domain_error("zeta: order must be >= 1");
    a %= m;
    if (a < 0) a += m;
    PolyQ rep(a + 1, Rational(0));
    rep[a] = 1;
    Cyclotomic z;
    z.order_ = m;
    z.c_ = reduce(std::move(rep), m);
    z.normalize();
    return z;
  }

  int order() const { return order_; }
  const PolyQ& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_rational() const { return c_.size() <= 1; }

  Rational rational_value() const {
    if (!is_rational()) throw std::domain_error("cyclotomic value is not rational");
    return c_.empty() ? Rational(0) : c_[0];
  }

  Cyclotomic embed(int n) const {
    if (n % order_ != 0) throw std::domain_error("embed: target order not a multiple");
    if (n == order_) return *this;
    int step = n / order_;
    PolyQ rep;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      size_t e = i * step;
      if (rep.size() <= e) rep.resize(e + 1, Rational(0));
      rep[e] += c_[i];
    }
    Cyclotomic z;
    z.order_ = n;
    z.c_ = reduce(std::move(rep), n);
    return z;
  }

  // Ring homomorphism zeta |-> zeta^k (the Adams action on roots of unity;
  // k = -1 mod order gives complex conjugation).
  Cyclotomic power_map(long k) const {
    long kk = k % order_;
    if (kk < 0) kk += order_;
    PolyQ rep;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      size_t e = (i * static_cast<size_t>(kk)) % static_cast<size_t>(order_);
      if (rep.size() <= e) rep.resize(e + 1, Rational(0));
      rep[e] += c_[i];
    }
    Cyclotomic z;
    z.order_ = order_;
    z.c_ = reduce(std::move(rep), order_);
    z.normalize();
    return z;
  }

  Cyclotomic conj() const { return power_map(order_ - 1); }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y, n] = aligned(a, b);
    Cyclotomic z;
    z.order_ = n;
    z.c_ = poly_add(x, y);
    z.normalize();
    return z;
  }

  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y, n] = aligned(a, b);
    Cyclotomic z;
    z.order_ = n;
    z.c_ = poly_sub(x, y);
    z.normalize();
    return z;
  }

  Cyclotomic operator-() const {
    Cyclotomic z = *this;
    for (auto& c : z.c_) c = -c;
    return z;
  }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y, n] = aligned(a, b);
    Cyclotomic z;
    z.order_ = n;
    z.c_ = reduce(poly_mul(x, y), n);
    z.normalize();
    return z;
  }

  Cyclotomic inv() const {
    if (is_zero()) throw std::domain_error("cyclotomic inversion of zero");
    if (is_rational()) return Cyclotomic(Rational(1) / c_[0]);
    // Extended Euclid in Q[x] against Phi_m.
    PolyQ r0 = cyclotomic_poly(order_), r1 = c_;
    PolyQ s0 = {}, s1 = {Rational(1)};
    while (!r1.empty()) {
      auto [q, r2] = poly_divmod(r0, r1);
      PolyQ s2 = poly_sub(s0, poly_mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r2);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (r0.size() != 1) throw std::logic_error("cyclotomic inv: gcd not constant");
    Cyclotomic z;
    z.order_ = order_;
    for (auto& c : s0) c /= r0[0];
    z.c_ = reduce(std::move(s0), order_);
    z.normalize();
    return z;
  }

  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inv(); }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y, n] = aligned(a, b);
    (void)n;
    return x == y;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  // Total order for use as a map key; not meaningful arithmetically.
  friend bool operator<(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ != b.order_) return a.order_ < b.order_;
    return a.c_ < b.c_;
  }

  // Canonical text: polynomial in "z{m}", e.g. "1/2 + 3*z4".
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      Rational v = c_[i];
      if (first) {
        if (v < 0) {
          os << "-";
          v = -v;
        }
      } else {
        os << (v < 0 ? " - " : " + ");
        if (v < 0) v = -v;
      }
      first = false;
      if (i == 0) {
        os << bigj::to_string(v);
      } else {
        if (v != 1) os << bigj::to_string(v) << "*";
        os << "z" << order_;
        if (i > 1) os << "^" << i;
      }
    }
    return os.str();
  }

 private:
  static PolyQ reduce(PolyQ rep, int m) {
    PolyQ phi = cyclotomic_poly(m);
    if (rep.size() >= phi.size()) {
      auto [q, r] = poly_divmod(std::move(rep), phi);
      (void)q;
      rep = std::move(r);
    }
    poly_trim(rep);
    return rep;
  }

  void normalize() {
    poly_trim(c_);
    if (order_ > 1 && c_.size() <= 1) order_ = 1;
  }

  static std::tuple<PolyQ, PolyQ, int> aligned(const Cyclotomic& a, const Cyclotomic& b) {
    int n = std::lcm(a.order_, b.order_);
    return {a.embed(n).c_, b.embed(n).c_, n};
  }

  int order_;
  PolyQ c_;
};

inline Cyclotomic operator*(const Rational& a, const Cyclotomic& b) { return Cyclotomic(a) * b; }
inline Cyclotomic operator*(const Cyclotomic& a, const Rational& b) { return a * Cyclotomic(b); }

}  // namespace bigj
