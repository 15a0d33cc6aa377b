#pragma once

#include <numeric>
#include <optional>
#include <sstream>

#include "bigj/cycseries.hpp"
#include "bigj/rational_q.hpp"

namespace bigj {

// Truncation sentinel for series known at every order (e.g. polynomials).
inline constexpr int kSeriesExact = std::numeric_limits<int>::max() / 4;

// Truncated Laurent series in u = q - 1 over Lambda tensor Q(zeta_m), with
// window semantics: coefficients at powers <= trunc() are stored, higher
// ones are cut. Ring operations work inside the common window; callers keep
// enough margin (E >= D + polar depth + 2) that everything they assert sits
// safely below the window edge. root_order() records the expansion field.
class QSeries {
 public:
  explicit QSeries(int trunc = kSeriesExact, int root_order = 1)
      : trunc_(trunc), root_order_(root_order) {}

  static QSeries constant(const LambdaElement& c, int trunc = kSeriesExact) {
    QSeries s(trunc);
    if (!c.is_zero() && trunc >= 0) s.c_[0] = c;
    return s;
  }
  static QSeries one(int trunc = kSeriesExact) { return constant(LambdaElement::one(), trunc); }
  static QSeries monomial(int p, const LambdaElement& c, int trunc = kSeriesExact) {
    QSeries s(trunc);
    if (!c.is_zero() && p <= trunc) s.c_[p] = c;
    return s;
  }

  const std::map<int, LambdaElement>& coeffs() const { return c_; }
  int trunc() const { return trunc_; }
  int root_order() const { return root_order_; }
  bool is_zero() const { return c_.empty(); }

  int min_order() const { return c_.empty() ? kSeriesExact : c_.begin()->first; }
  int polar_depth() const { return c_.empty() ? 0 : std::max(0, -c_.begin()->first); }

  LambdaElement coeff(int p) const {
    auto it = c_.find(p);
    return it == c_.end() ? LambdaElement::zero() : it->second;
  }

  void set_coeff(int p, const LambdaElement& c) {
    if (c.is_zero() || p > trunc_)
      c_.erase(p);
    else
      c_[p] = c;
  }

  // True iff no nonzero coefficient at negative powers of u. Requires the
  // polar range to be fully known.
  bool is_power_series() const {
    if (trunc_ < -1) throw std::logic_error("is_power_series: series not known through u^{-1}");
    return c_.empty() || c_.begin()->first >= 0;
  }

  QSeries truncate_to(int t) const {
    QSeries s(std::min(trunc_, t), root_order_);
    for (const auto& [p, c] : c_)
      if (p <= t) s.c_[p] = c;
    return s;
  }

  QSeries shifted(int d) const {
    QSeries s(sat_add(trunc_, d), root_order_);
    for (const auto& [p, c] : c_) s.c_[p + d] = c;
    return s;
  }

  friend QSeries operator+(const QSeries& a, const QSeries& b) {
    QSeries s(std::min(a.trunc_, b.trunc_), std::lcm(a.root_order_, b.root_order_));
    s.c_ = a.c_;
    for (const auto& [p, c] : b.c_) {
      auto [it, fresh] = s.c_.emplace(p, c);
      if (!fresh) it->second = it->second + c;
    }
    s.prune();
    return s;
  }

  friend QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

  QSeries operator-() const {
    QSeries s = *this;
    for (auto& [p, c] : s.c_) c = -c;
    return s;
  }

  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    QSeries s(std::min(a.trunc_, b.trunc_), std::lcm(a.root_order_, b.root_order_));
    for (const auto& [pa, ca] : a.c_)
      for (const auto& [pb, cb] : b.c_) {
        if (pa + pb > s.trunc_) continue;
        LambdaElement c = ca * cb;
        if (c.is_zero()) continue;
        auto [it, fresh] = s.c_.emplace(pa + pb, c);
        if (!fresh) it->second = it->second + c;
      }
    s.prune();
    return s;
  }

  QSeries scaled(const LambdaElement& c) const {
    QSeries s(trunc_, root_order_);
    for (const auto& [p, v] : c_) {
      LambdaElement w = v * c;
      if (!w.is_zero()) s.c_[p] = w;
    }
    return s;
  }
  QSeries scaled(const Rational& r) const { return scaled(LambdaElement::scalar(r)); }
  QSeries scaled(const Cyclotomic& z) const { return scaled(LambdaElement::scalar(z)); }

  QSeries adams_coeffs(int m) const {
    QSeries s(trunc_, root_order_);
    for (const auto& [p, c] : c_) {
      LambdaElement a = c.adams(m);
      if (!a.is_zero()) s.c_[p] = a;
    }
    return s;
  }

  // Adams on the Lambda-generators of the coefficients, fixing the adjoined
  // roots of unity of the expansion field.
  QSeries adams_coeffs_fixing_roots(int m) const {
    QSeries s(trunc_, root_order_);
    for (const auto& [p, c] : c_) {
      LambdaElement a = c.adams_fixing_roots(m);
      if (!a.is_zero()) s.c_[p] = a;
    }
    return s;
  }

  QSeries conj() const {
    QSeries s(trunc_, root_order_);
    for (const auto& [p, c] : c_) {
      LambdaElement a = c.conj();
      if (!a.is_zero()) s.c_[p] = a;
    }
    return s;
  }

  QSeries with_root_order(int m) const {
    QSeries s = *this;
    s.root_order_ = std::lcm(s.root_order_, m);
    return s;
  }

  // Substitution q -> q^s, i.e. u -> (1+u)^s - 1.
  QSeries substitute_q_power(int s) const;

  friend bool operator==(const QSeries& a, const QSeries& b) { return a.c_ == b.c_; }
  friend bool operator!=(const QSeries& a, const QSeries& b) { return !(a == b); }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, c] : c_) {
      if (!first) os << " + ";
      first = false;
      std::string cs = c.to_string();
      bool compound = cs.find(' ') != std::string::npos || c.terms().size() > 1;
      if (p == 0) {
        os << (compound ? "(" + cs + ")" : cs);
        continue;
      }
      if (cs != "1") os << (compound ? "(" + cs + ")" : cs) << "*";
      os << "u";
      if (p != 1) os << "^" << p;
    }
    return os.str();
  }

  static int sat_add(int a, int b) {
    long s = static_cast<long>(a) + b;
    if (s >= kSeriesExact) return kSeriesExact;
    if (s <= -kSeriesExact) return -kSeriesExact;
    return static_cast<int>(s);
  }

 private:
  void prune() {
    for (auto it = c_.begin(); it != c_.end();)
      it = (it->second.is_zero() || it->first > trunc_) ? c_.erase(it) : std::next(it);
  }

  std::map<int, LambdaElement> c_;
  int trunc_;
  int root_order_;
};

// Exact equality of coefficients through order t (both series must be known
// that far).
inline bool series_agree_through(const QSeries& a, const QSeries& b, int t) {
  if (a.trunc() < t || b.trunc() < t)
    throw std::logic_error("series_agree_through: order beyond truncation");
  return a.truncate_to(t) == b.truncate_to(t);
}

// Expansion of f(q^{1/m}/zeta) near q = 1 over Q(zeta_m), zeta = zeta_m^a,
// with the principal branch q^{1/m} = (1+u)^{1/m}. A denominator factor
// (1 - q^k) turns into a pole iff m | k. m = 1, a = 0 is the plain expansion
// at q = 1.
inline QSeries expand_adelic(const RationalQ& f, int m, int a, int E) {
  if (m < 1) throw std::domain_error("expand_adelic: m must be >= 1");
  a = ((a % m) + m) % m;
  if (std::gcd(a, m) != 1 && m > 1) throw std::domain_error("expand_adelic: a not coprime to m");
  QSeries out(E, m);
  if (f.is_zero()) return out;

  int mu = 0;
  for (const auto& [k, mult] : f.den())
    if (k % m == 0) mu += mult;
  size_t cap = static_cast<size_t>(E + mu + 1);
  if (E + mu < 0) return out;

  // Numerator: sum_e c_e zeta^{-e} (1+u)^{e/m}.
  std::vector<LambdaElement> nser(cap);
  for (const auto& [e, c] : f.num().terms()) {
    Cyclotomic zpow = Cyclotomic::zeta(m, static_cast<int>(((-static_cast<long>(e) * a) % m + m) % m));
    Rational alpha = Rational(e) / m;
    Rational bin = 1;
    for (size_t n = 0; n < cap; ++n) {
      if (n > 0) bin = bin * (alpha - static_cast<int>(n - 1)) / static_cast<int>(n);
      if (bin == 0 && n > 0) break;  // integer exponent exhausted
      nser[n] = nser[n] + c.scaled(bin * zpow);
    }
  }

  // Denominator: polar factors contribute -u * g(u); the rest are units.
  detail::CycSeries unit{Cyclotomic(Rational(1))};
  for (const auto& [k, mult] : f.den()) {
    detail::CycSeries fac;
    if (k % m == 0) {
      int j = k / m;  // 1 - (1+u)^j = -u * g_j(u)
      fac.resize(static_cast<size_t>(j));
      for (int n = 1; n <= j; ++n) fac[static_cast<size_t>(n - 1)] = Cyclotomic(binomial(Rational(j), n));
    } else {
      Cyclotomic zk = Cyclotomic::zeta(m, static_cast<int>(((-static_cast<long>(k) * a) % m + m) % m));
      Rational alpha = Rational(k) / m;
      fac.resize(cap);
      fac[0] = Cyclotomic(Rational(1)) - zk;
      Rational bin = 1;
      for (size_t n = 1; n < cap; ++n) {
        bin = bin * (alpha - static_cast<int>(n - 1)) / static_cast<int>(n);
        fac[n] = -(Cyclotomic(bin) * zk);
      }
    }
    for (int i = 0; i < mult; ++i) unit = detail::cyc_series_mul(unit, fac, cap);
  }
  detail::CycSeries inv = detail::cyc_series_inv(unit, cap);

  Rational sign(mu % 2 == 0 ? 1 : -1);
  for (size_t n = 0; n < cap; ++n) {
    LambdaElement s;
    for (size_t i = 0; i <= n; ++i) {
      if (nser[i].is_zero() || inv[n - i].is_zero()) continue;
      s = s + nser[i].scaled(inv[n - i]);
    }
    if (!s.is_zero()) out.set_coeff(static_cast<int>(n) - mu, s.scaled(sign));
  }
  return out;
}

inline QSeries expand_at_one(const RationalQ& f, int E) { return expand_adelic(f, 1, 0, E); }

inline QSeries QSeries::substitute_q_power(int s) const {
  if (s < 1) throw std::domain_error("substitute_q_power: s must be >= 1");
  if (s == 1 || c_.empty()) return *this;
  int lo = min_order();
  if (lo < 0 && trunc_ >= kSeriesExact)
    throw std::logic_error("substitute_q_power: polar series needs a finite truncation");
  QSeries v(kSeriesExact, 1);  // (1+u)^s - 1, an exact polynomial
  for (int n = 1; n <= s; ++n) v.set_coeff(n, LambdaElement::scalar(binomial(Rational(s), n)));
  QSeries out(trunc_, root_order_);

  // Positive powers, walking the stored coefficients upward.
  QSeries pw = QSeries::one();
  int cur = 0;
  for (const auto& [p, c] : c_) {
    if (p < 0) continue;
    while (cur < p) {
      pw = pw * v;
      ++cur;
      if (trunc_ < kSeriesExact && cur > trunc_) break;
    }
    if (trunc_ < kSeriesExact && p > trunc_) break;
    out = out + pw.scaled(c).truncate_to(trunc_);
  }

  // Polar powers: v^{-1} = u^{-1} (v/u)^{-1}, the unit inverted far enough.
  if (lo < 0) {
    size_t icap = static_cast<size_t>(std::max(0, trunc_ - lo) + 1);
    detail::CycSeries g(static_cast<size_t>(s));
    for (int n = 1; n <= s; ++n) g[static_cast<size_t>(n - 1)] = Cyclotomic(binomial(Rational(s), n));
    detail::CycSeries gi = detail::cyc_series_inv(g, icap);
    QSeries unitinv(static_cast<int>(icap) - 1, 1);
    for (size_t n = 0; n < icap; ++n)
      if (!gi[n].is_zero()) unitinv.set_coeff(static_cast<int>(n), LambdaElement::scalar(gi[n]));
    QSeries vinv = unitinv.shifted(-1);
    QSeries pwn = QSeries::one();
    int curj = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      if (it->first >= 0) continue;
      int j = -it->first;
      while (curj < j) {
        pwn = pwn * vinv;  // window sized by icap to stay exact through trunc_
        ++curj;
      }
      out = out + pwn.scaled(it->second).truncate_to(trunc_);
    }
  }
  return out.truncate_to(trunc_).with_root_order(root_order_);
}

// Exponential of a truncated series. Requires every coefficient at u^p with
// p <= 0 to lie in Lambda_+, which makes the sum finite: polar and constant
// directions die in the Lambda_+ filtration, positive ones at the window edge.
inline QSeries series_exp(const QSeries& x) {
  for (const auto& [p, c] : x.coeffs()) {
    if (p > 0) break;
    if (c.filtration_degree() < 1)
      throw std::domain_error(
          "series_exp: coefficient at u^" + std::to_string(p) + " not in Lambda_+");
  }
  if (x.trunc() >= kSeriesExact && !x.is_zero() && x.coeffs().rbegin()->first > 0)
    throw std::logic_error("series_exp: positive-order content needs a finite window");
  QSeries sum = QSeries::one();
  QSeries term = QSeries::one();
  for (int n = 1;; ++n) {
    if (n > 100000) throw std::logic_error("series_exp: non-truncating exponential");
    term = (term * x).scaled(Rational(1) / n);
    if (term.is_zero()) break;
    sum = sum + term;
  }
  return sum;
}

struct LogResult {
  int prefix_power = 0;          // k in y = c u^k (1 + w)
  Cyclotomic prefix_scalar;      // c
  QSeries series;                // log(1 + w)
};

// Splits y = c u^k (1 + w) with w having Lambda_+ coefficients at orders
// <= 0, and returns (k, c, log(1+w)). Fails (nullopt) when no such shape
// exists; `why` gets a diagnostic.
inline std::optional<LogResult> series_log_prefixed(const QSeries& y, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) -> std::optional<LogResult> {
    if (why) *why = msg;
    return std::nullopt;
  };
  if (y.is_zero()) return fail("log of zero series");
  int k = kSeriesExact;
  for (const auto& [p, c] : y.coeffs()) {
    if (c.filtration_degree() == 0) {
      k = p;
      break;
    }
  }
  if (k == kSeriesExact) return fail("no unit coefficient (all terms in Lambda_+)");
  // Coefficients below u^k lie in Lambda_+ by the choice of k, so the shape
  // y = c u^k (1 + w) with admissible w is automatic.
  Cyclotomic c0 = y.coeff(k).scalar_part();
  QSeries w = y.scaled(LambdaElement::scalar(c0.inv())).shifted(-k) - QSeries::one();
  // Now every coefficient of w at order <= 0 lies in Lambda_+.
  if (w.trunc() >= kSeriesExact && !w.is_zero() && w.coeffs().rbegin()->first > 0)
    throw std::logic_error("series_log: positive-order content needs a finite window");
  QSeries sum(w.trunc(), w.root_order());
  QSeries pw = QSeries::one();
  for (int n = 1;; ++n) {
    if (n > 100000) throw std::logic_error("series_log: non-truncating logarithm");
    pw = pw * w;
    if (pw.is_zero()) break;
    sum = sum + pw.scaled(Rational(n % 2 == 1 ? 1 : -1) / n);
  }
  LogResult r;
  r.prefix_power = k;
  r.prefix_scalar = c0;
  r.series = sum;
  return r;
}

// Strict logarithm: requires prefix (0, 1), i.e. y = 1 + w.
inline QSeries series_log(const QSeries& y) {
  std::string why;
  auto r = series_log_prefixed(y, &why);
  if (!r) throw std::domain_error("series_log: " + why);
  if (r->prefix_power != 0 || !(r->prefix_scalar == Cyclotomic(Rational(1))))
    throw std::domain_error("series_log: argument is not 1 + (Lambda_+ tail)");
  return r->series;
}

// Inverse of y = c u^k (1 + w): c^{-1} u^{-k} sum (-w)^n.
inline QSeries series_inverse(const QSeries& y) {
  std::string why;
  auto r = series_log_prefixed(y, &why);
  if (!r) throw std::domain_error("series_inverse: " + why);
  int k = r->prefix_power;
  Cyclotomic c0 = r->prefix_scalar;
  QSeries w = y.scaled(LambdaElement::scalar(c0.inv())).shifted(-k) - QSeries::one();
  if (w.trunc() >= kSeriesExact && !w.is_zero() && w.coeffs().rbegin()->first > 0)
    throw std::logic_error("series_inverse: positive-order content needs a finite window");
  QSeries sum = QSeries::one();
  QSeries pw = QSeries::one();
  for (int n = 1;; ++n) {
    if (n > 100000) throw std::logic_error("series_inverse: non-truncating inverse");
    pw = (pw * w).scaled(Rational(-1));
    if (pw.is_zero()) break;
    sum = sum + pw;
  }
  return sum.scaled(LambdaElement::scalar(c0.inv())).shifted(-k);
}

}  // namespace bigj
