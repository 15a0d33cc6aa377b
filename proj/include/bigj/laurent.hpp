#pragma once

#include <map>
#include <optional>
#include <sstream>

#include "bigj/lambda.hpp"

namespace bigj {

// K-valued Laurent polynomial in q (finitely many terms, exponents in Z).
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly monomial(int e, const LambdaElement& c) {
    LaurentPoly p;
    if (!c.is_zero()) p.t_[e] = c;
    return p;
  }
  static LaurentPoly constant(const LambdaElement& c) { return monomial(0, c); }
  static LaurentPoly constant(const Rational& r) { return constant(LambdaElement::scalar(r)); }
  static LaurentPoly one() { return constant(Rational(1)); }
  // 1 - q^k
  static LaurentPoly one_minus_q_pow(int k) {
    LaurentPoly p = one();
    p.t_[k] = LambdaElement::scalar(Rational(-1));
    return p;
  }

  const std::map<int, LambdaElement>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  int min_exp() const { return t_.empty() ? 0 : t_.begin()->first; }
  int max_exp() const { return t_.empty() ? 0 : t_.rbegin()->first; }

  LambdaElement coeff(int e) const {
    auto it = t_.find(e);
    return it == t_.end() ? LambdaElement::zero() : it->second;
  }

  void set_coeff(int e, const LambdaElement& c) {
    if (c.is_zero())
      t_.erase(e);
    else
      t_[e] = c;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (const auto& [e, c] : b.t_) {
      auto [it, fresh] = r.t_.emplace(e, c);
      if (!fresh) it->second = it->second + c;
    }
    r.prune();
    return r;
  }

  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) {
        LambdaElement c = ca * cb;
        if (c.is_zero()) continue;
        auto [it, fresh] = r.t_.emplace(ea + eb, c);
        if (!fresh) it->second = it->second + c;
      }
    r.prune();
    return r;
  }

  LaurentPoly scaled(const LambdaElement& c) const {
    LaurentPoly r;
    for (const auto& [e, v] : t_) {
      LambdaElement w = v * c;
      if (!w.is_zero()) r.t_[e] = w;
    }
    return r;
  }
  LaurentPoly scaled(const Rational& c) const { return scaled(LambdaElement::scalar(c)); }

  // f(q) |-> f(q^s), s >= 1.
  LaurentPoly substitute_power(int s) const {
    if (s < 1) throw std::domain_error("substitute_power: s must be >= 1");
    LaurentPoly r;
    for (const auto& [e, c] : t_) r.t_[e * s] = c;
    return r;
  }

  // Adams on coefficients only (exponents untouched).
  LaurentPoly adams_coeffs(int m) const {
    LaurentPoly r;
    for (const auto& [e, c] : t_) {
      LambdaElement a = c.adams(m);
      if (!a.is_zero()) r.t_[e] = a;
    }
    return r;
  }

  LaurentPoly conj() const {
    LaurentPoly r;
    for (const auto& [e, c] : t_) {
      LambdaElement a = c.conj();
      if (!a.is_zero()) r.t_[e] = a;
    }
    return r;
  }

  LaurentPoly truncate_to(int d) const {
    LaurentPoly r;
    for (const auto& [e, c] : t_) {
      LambdaElement v = c.truncate_to(d);
      if (!v.is_zero()) r.t_[e] = v;
    }
    return r;
  }

  LambdaElement eval_at_one() const {
    LambdaElement s;
    for (const auto& [e, c] : t_) s = s + c;
    return s;
  }

  LambdaElement eval_at_root(const Cyclotomic& eta) const {
    LambdaElement s;
    for (const auto& [e, c] : t_) {
      Cyclotomic p(Rational(1));
      Cyclotomic base = e >= 0 ? eta : eta.inv();
      for (int i = 0; i < std::abs(e); ++i) p = p * base;
      s = s + c.scaled(p);
    }
    return s;
  }

  // Exact division by (1 - q); empty if the division has a remainder.
  std::optional<LaurentPoly> divided_by_one_minus_q() const {
    if (t_.empty()) return LaurentPoly();
    LaurentPoly h;
    LambdaElement run;  // h_e = sum of coefficients up to e
    int lo = min_exp(), hi = max_exp();
    for (int e = lo; e < hi; ++e) {
      run = run + coeff(e);
      if (!run.is_zero()) h.t_[e] = run;
    }
    run = run + coeff(hi);
    if (!run.is_zero()) return std::nullopt;
    return h;
  }

  // Exact division by (q - eta) for ordinary polynomials (min_exp >= 0);
  // empty if the remainder is nonzero.
  std::optional<LaurentPoly> divided_by_linear(const Cyclotomic& eta) const {
    if (t_.empty()) return LaurentPoly();
    if (min_exp() < 0) return std::nullopt;
    LaurentPoly h;
    LambdaElement carry;  // synthetic division, descending exponents
    for (int e = max_exp() - 1; e >= 0; --e) {
      carry = coeff(e + 1) + carry.scaled(eta);
      if (!carry.is_zero()) h.t_[e] = carry;
    }
    LambdaElement rem = coeff(0) + carry.scaled(eta);
    if (!rem.is_zero()) return std::nullopt;
    return h;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : t_) {
      if (!first) os << " + ";
      first = false;
      std::string cs = c.to_string();
      bool compound = cs.find(' ') != std::string::npos;
      if (e == 0) {
        os << (compound ? "(" + cs + ")" : cs);
        continue;
      }
      if (cs == "1") {
      } else if (compound) {
        os << "(" << cs << ")*";
      } else {
        os << cs << "*";
      }
      os << "q";
      if (e != 1) os << "^" << e;
    }
    return os.str();
  }

 private:
  void prune() {
    for (auto it = t_.begin(); it != t_.end();)
      it = it->second.is_zero() ? t_.erase(it) : std::next(it);
  }

  std::map<int, LambdaElement> t_;
};

}  // namespace bigj
