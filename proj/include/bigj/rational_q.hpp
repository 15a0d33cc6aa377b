#pragma once

#include <map>

#include "bigj/laurent.hpp"

namespace bigj {

// K-valued rational function of q with denominator a product of factors
// (1 - q^k), the only shape the theory produces. Representations are not
// reduced; equality is tested by cross-multiplication.
class RationalQ {
 public:
  RationalQ() = default;
  RationalQ(const LaurentPoly& num) : num_(num) {}

  static RationalQ inv_one_minus_q_pow(int k, int mult = 1) {
    RationalQ f(LaurentPoly::one());
    if (mult > 0) f.den_[k] = mult;
    return f;
  }

  const LaurentPoly& num() const { return num_; }
  const std::map<int, int>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_laurent() const { return den_.empty(); }

  // Total number of denominator factors (with multiplicity) = pole depth at q=1.
  int den_factor_count() const {
    int n = 0;
    for (const auto& [k, m] : den_) n += m;
    return n;
  }

  LaurentPoly den_poly() const {
    LaurentPoly p = LaurentPoly::one();
    for (const auto& [k, m] : den_)
      for (int i = 0; i < m; ++i) p = p * LaurentPoly::one_minus_q_pow(k);
    return p;
  }

  friend RationalQ operator+(const RationalQ& a, const RationalQ& b) {
    RationalQ r;
    for (const auto& [k, m] : a.den_) r.den_[k] = m;
    for (const auto& [k, m] : b.den_) {
      auto it = r.den_.find(k);
      if (it == r.den_.end())
        r.den_[k] = m;
      else
        it->second = std::max(it->second, m);
    }
    LaurentPoly na = a.num_, nb = b.num_;
    for (const auto& [k, m] : r.den_) {
      int ma = m - (a.den_.count(k) ? a.den_.at(k) : 0);
      int mb = m - (b.den_.count(k) ? b.den_.at(k) : 0);
      for (int i = 0; i < ma; ++i) na = na * LaurentPoly::one_minus_q_pow(k);
      for (int i = 0; i < mb; ++i) nb = nb * LaurentPoly::one_minus_q_pow(k);
    }
    r.num_ = na + nb;
    r.normalize();
    return r;
  }

  friend RationalQ operator-(const RationalQ& a, const RationalQ& b) { return a + (-b); }

  RationalQ operator-() const {
    RationalQ r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RationalQ operator*(const RationalQ& a, const RationalQ& b) {
    RationalQ r;
    r.num_ = a.num_ * b.num_;
    if (r.num_.is_zero()) return r;
    r.den_ = a.den_;
    for (const auto& [k, m] : b.den_) r.den_[k] += m;
    return r;
  }

  RationalQ scaled(const LambdaElement& c) const {
    RationalQ r;
    r.num_ = num_.scaled(c);
    if (!r.num_.is_zero()) r.den_ = den_;
    return r;
  }
  RationalQ scaled(const Rational& c) const { return scaled(LambdaElement::scalar(c)); }

  RationalQ substitute_power(int s) const {
    RationalQ r;
    r.num_ = num_.substitute_power(s);
    for (const auto& [k, m] : den_) r.den_[k * s] += m;
    return r;
  }

  // f(q) |-> f(1/q). Each factor (1 - q^{-k}) = -q^{-k} (1 - q^k) keeps the
  // denominator in shape, with the unit absorbed into the numerator.
  RationalQ invert_q() const {
    RationalQ r;
    LaurentPoly n;
    for (const auto& [e, c] : num_.terms()) n.set_coeff(-e, c);
    int shift = 0, sign = 0;
    for (const auto& [k, m] : den_) {
      shift += k * m;
      sign += m;
    }
    LaurentPoly unit = LaurentPoly::monomial(shift, LambdaElement::scalar(Rational(sign % 2 == 0 ? 1 : -1)));
    r.num_ = n * unit;
    if (!r.num_.is_zero()) r.den_ = den_;
    return r;
  }

  RationalQ adams_coeffs(int m) const {
    RationalQ r;
    r.num_ = num_.adams_coeffs(m);
    if (!r.num_.is_zero()) r.den_ = den_;
    return r;
  }

  RationalQ truncate_to(int d) const {
    RationalQ r;
    r.num_ = num_.truncate_to(d);
    if (!r.num_.is_zero()) r.den_ = den_;
    return r;
  }

  // Residue at q = 0 of this rational function (coefficient of q^{-1} of the
  // local power-series expansion; denominators are units at 0).
  LambdaElement residue_at_zero() const {
    if (num_.is_zero() || num_.min_exp() >= 0) return LambdaElement::zero();
    int order = -1 - num_.min_exp();  // need den^{-1} through q^order
    std::vector<Rational> d(order + 1, Rational(0));
    d[0] = 1;
    for (const auto& [k, mult] : den_)
      for (int i = 0; i < mult; ++i)
        for (int n = order; n >= k; --n) d[n] -= d[n - k];
    std::vector<Rational> inv(order + 1, Rational(0));
    inv[0] = 1;
    for (int n = 1; n <= order; ++n) {
      Rational s = 0;
      for (int j = 1; j <= n; ++j) s += d[j] * inv[n - j];
      inv[n] = -s;
    }
    LambdaElement res;
    for (const auto& [e, c] : num_.terms()) {
      if (e >= 0) break;
      res = res + c.scaled(inv[-1 - e]);
    }
    return res;
  }

  friend bool operator==(const RationalQ& a, const RationalQ& b) {
    return a.num_ * b.den_poly() == b.num_ * a.den_poly();
  }
  friend bool operator!=(const RationalQ& a, const RationalQ& b) { return !(a == b); }

  std::string to_string() const {
    std::string s = num_.to_string();
    if (den_.empty()) return s;
    std::string d;
    for (const auto& [k, m] : den_) {
      if (!d.empty()) d += " ";
      d += "(1-q";
      if (k != 1) d += "^" + std::to_string(k);
      d += ")";
      if (m != 1) d += "^" + std::to_string(m);
    }
    bool compound = num_.terms().size() > 1;
    return (compound ? "(" + s + ")" : s) + " / " + d;
  }

 private:
  void normalize() {
    if (num_.is_zero()) den_.clear();
  }

  LaurentPoly num_;
  std::map<int, int> den_;
};

}  // namespace bigj
