#pragma once

#include <limits>
#include <map>
#include <sstream>

#include "bigj/cyclotomic.hpp"

namespace bigj {

// Filtration degree of zero / truncation order of exact scalars.
inline constexpr int kFiltrationInf = std::numeric_limits<int>::max() / 2;
inline constexpr int kScalarTrunc = std::numeric_limits<int>::max() / 2;

// Psi^j(tau_k): the free generators of the ground ring, graded by deg = j.
struct LambdaGen {
  int adams;  // j >= 1
  int tau;    // k >= 1
  auto operator<=>(const LambdaGen&) const = default;
};

// Monomial = multiset of generators; value is the exponent (>= 1).
using LambdaMonomial = std::map<LambdaGen, int>;

inline int monomial_degree(const LambdaMonomial& m) {
  int d = 0;
  for (const auto& [g, e] : m) d += g.adams * e;
  return d;
}

// Element of the free lambda-ring on tau_1, tau_2, ... over cyclotomic
// scalars, truncated beyond filtration degree trunc(). Scalars carry the
// sentinel kScalarTrunc so they never clamp the other operand.
class LambdaElement {
 public:
  LambdaElement() : trunc_(kScalarTrunc) {}

  static LambdaElement scalar(const Cyclotomic& c) {
    LambdaElement x;
    if (!c.is_zero()) x.terms_[{}] = c;
    return x;
  }
  static LambdaElement scalar(const Rational& r) { return scalar(Cyclotomic(r)); }
  static LambdaElement one() { return scalar(Rational(1)); }
  static LambdaElement zero() { return LambdaElement(); }

  static LambdaElement generator(int j, int k, int trunc) {
    if (j < 1 || k < 1) throw std::domain_error("lambda generator needs j,k >= 1");
    LambdaElement x;
    x.trunc_ = trunc;
    if (j <= trunc) x.terms_[LambdaMonomial{{LambdaGen{j, k}, 1}}] = Cyclotomic(Rational(1));
    return x;
  }
  static LambdaElement tau(int k, int trunc) { return generator(1, k, trunc); }

  const std::map<LambdaMonomial, Cyclotomic>& terms() const { return terms_; }
  int trunc() const { return trunc_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_scalar() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }

  Cyclotomic scalar_part() const {
    auto it = terms_.find(LambdaMonomial{});
    return it == terms_.end() ? Cyclotomic() : it->second;
  }

  // Minimal total degree of stored monomials; kFiltrationInf for zero.
  int filtration_degree() const {
    int d = kFiltrationInf;
    for (const auto& [m, c] : terms_) d = std::min(d, monomial_degree(m));
    return d;
  }

  LambdaElement truncate_to(int d) const {
    LambdaElement x;
    x.trunc_ = std::min(trunc_, d);
    for (const auto& [m, c] : terms_)
      if (monomial_degree(m) <= d) x.terms_[m] = c;
    return x;
  }

  friend LambdaElement operator+(const LambdaElement& a, const LambdaElement& b) {
    LambdaElement x;
    x.trunc_ = std::min(a.trunc_, b.trunc_);
    x.terms_ = a.terms_;
    for (const auto& [m, c] : b.terms_) {
      auto [it, fresh] = x.terms_.emplace(m, c);
      if (!fresh) it->second = it->second + c;
    }
    x.prune();
    return x;
  }

  friend LambdaElement operator-(const LambdaElement& a, const LambdaElement& b) {
    return a + (-b);
  }

  LambdaElement operator-() const {
    LambdaElement x = *this;
    for (auto& [m, c] : x.terms_) c = -c;
    return x;
  }

  friend LambdaElement operator*(const LambdaElement& a, const LambdaElement& b) {
    LambdaElement x;
    x.trunc_ = std::min(a.trunc_, b.trunc_);
    for (const auto& [ma, ca] : a.terms_) {
      int da = monomial_degree(ma);
      for (const auto& [mb, cb] : b.terms_) {
        if (da + monomial_degree(mb) > x.trunc_) continue;
        LambdaMonomial m = ma;
        for (const auto& [g, e] : mb) m[g] += e;
        Cyclotomic c = ca * cb;
        auto [it, fresh] = x.terms_.emplace(std::move(m), c);
        if (!fresh) it->second = it->second + c;
      }
    }
    x.prune();
    return x;
  }

  LambdaElement scaled(const Cyclotomic& c) const {
    LambdaElement x;
    x.trunc_ = trunc_;
    if (c.is_zero()) return x;
    for (const auto& [m, v] : terms_) x.terms_[m] = v * c;
    x.prune();
    return x;
  }
  LambdaElement scaled(const Rational& r) const { return scaled(Cyclotomic(r)); }

  // Adams operation: Psi^m Psi^j(tau_k) = Psi^{jm}(tau_k), zeta |-> zeta^m.
  LambdaElement adams(int m) const { return adams_impl(m, /*move_roots=*/true); }

  // Adams on the free generators only, leaving adjoined roots of unity
  // fixed. This is the action needed on expansion coefficients, where the
  // cyclotomic scalars come from the substitution point, not from Lambda.
  LambdaElement adams_fixing_roots(int m) const { return adams_impl(m, /*move_roots=*/false); }

  LambdaElement conj() const {
    LambdaElement x;
    x.trunc_ = trunc_;
    for (const auto& [m, c] : terms_) x.terms_[m] = c.conj();
    x.prune();
    return x;
  }

  friend bool operator==(const LambdaElement& a, const LambdaElement& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const LambdaElement& a, const LambdaElement& b) { return !(a == b); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      std::string cs = c.to_string();
      bool unit = (cs == "1");
      if (m.empty()) {
        os << (c.is_rational() ? cs : "(" + cs + ")");
        continue;
      }
      if (!unit) os << (c.is_rational() && cs.find(' ') == std::string::npos ? cs : "(" + cs + ")") << "*";
      bool fg = true;
      for (const auto& [g, e] : m) {
        if (!fg) os << "*";
        fg = false;
        os << "Psi" << g.adams << "(tau" << g.tau << ")";
        if (e > 1) os << "^" << e;
      }
    }
    return os.str();
  }

 private:
  LambdaElement adams_impl(int m, bool move_roots) const {
    if (m < 1) throw std::domain_error("adams: m must be >= 1");
    if (m == 1) return *this;
    LambdaElement x;
    x.trunc_ = trunc_;
    for (const auto& [mon, c] : terms_) {
      if (static_cast<long>(monomial_degree(mon)) * m > trunc_) continue;
      LambdaMonomial m2;
      for (const auto& [g, e] : mon) m2[LambdaGen{g.adams * m, g.tau}] = e;
      Cyclotomic c2 = move_roots ? c.power_map(m) : c;
      auto [it, fresh] = x.terms_.emplace(std::move(m2), c2);
      if (!fresh) it->second = it->second + c2;
    }
    x.prune();
    return x;
  }

  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second.is_zero() || monomial_degree(it->first) > trunc_)
        it = terms_.erase(it);
      else
        ++it;
    }
  }

  std::map<LambdaMonomial, Cyclotomic> terms_;
  int trunc_;
};

// Truncated exponential; requires filtration_degree(x) >= 1.
inline LambdaElement lambda_exp(const LambdaElement& x) {
  if (!x.is_zero() && x.filtration_degree() < 1)
    throw std::domain_error("lambda_exp: argument not in Lambda_+");
  LambdaElement sum = LambdaElement::one();
  LambdaElement term = LambdaElement::one();
  for (int n = 1; !term.is_zero() && n <= x.trunc() + 1; ++n) {
    term = (term * x).scaled(Rational(1) / n);
    sum = sum + term;
  }
  return sum;
}

// Truncated logarithm; requires filtration_degree(y - 1) >= 1.
inline LambdaElement lambda_log(const LambdaElement& y) {
  LambdaElement w = y - LambdaElement::one();
  if (!w.is_zero() && w.filtration_degree() < 1)
    throw std::domain_error("lambda_log: argument not 1 + Lambda_+");
  LambdaElement sum = LambdaElement::zero();
  LambdaElement pw = LambdaElement::one();
  for (int n = 1; n <= w.trunc() + 1; ++n) {
    pw = pw * w;
    if (pw.is_zero()) break;
    sum = sum + pw.scaled(Rational(n % 2 == 1 ? 1 : -1) / n);
  }
  return sum;
}

}  // namespace bigj
