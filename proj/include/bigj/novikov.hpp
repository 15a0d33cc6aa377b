#pragma once

#include <numeric>

#include "bigj/config.hpp"
#include "bigj/rational_q.hpp"
#include "bigj/toyk.hpp"

namespace bigj {

using KValue = ToyKValued<RationalQ>;

inline int vec_total(const std::vector<int>& v) {
  int t = 0;
  for (int x : v) t += x;
  return t;
}

inline long vec_dot(const std::vector<int>& a, const std::vector<int>& b) {
  long t = 0;
  for (size_t i = 0; i < a.size(); ++i) t += static_cast<long>(a[i]) * b[i];
  return t;
}

// Series in the Novikov variables Q_1..Q_s with toy-K-valued rational
// coefficients, truncated at total degree G.
class NovikovSeries {
 public:
  NovikovSeries() : ring_(ToyKRing::trivial()), G_(0) {}
  NovikovSeries(ToyKRing ring, int G) : ring_(std::move(ring)), G_(G) {}

  const ToyKRing& ring() const { return ring_; }
  int G() const { return G_; }
  const std::map<std::vector<int>, KValue>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  KValue at(const std::vector<int>& d) const {
    auto it = t_.find(d);
    return it == t_.end() ? KValue(ring_) : it->second;
  }

  void set(const std::vector<int>& d, const KValue& v) {
    check_degree(d);
    if (v.is_zero() || vec_total(d) > G_)
      t_.erase(d);
    else
      t_[d] = v;
  }

  void add_to(const std::vector<int>& d, const KValue& v) {
    check_degree(d);
    if (vec_total(d) > G_ || v.is_zero()) return;
    auto [it, fresh] = t_.emplace(d, v);
    if (!fresh) {
      it->second = it->second + v;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  friend NovikovSeries operator+(const NovikovSeries& a, const NovikovSeries& b) {
    NovikovSeries r = a;
    for (const auto& [d, v] : b.t_) r.add_to(d, v);
    return r;
  }

  NovikovSeries operator-() const {
    NovikovSeries r = *this;
    for (auto& [d, v] : r.t_) v = -v;
    return r;
  }
  friend NovikovSeries operator-(const NovikovSeries& a, const NovikovSeries& b) { return a + (-b); }

  NovikovSeries scaled(const Rational& c) const {
    NovikovSeries r(ring_, G_);
    for (const auto& [d, v] : t_) {
      KValue w = v.scaled(c);
      if (!w.is_zero()) r.t_[d] = w;
    }
    return r;
  }

  NovikovSeries truncate_lambda(int D) const {
    NovikovSeries r(ring_, G_);
    for (const auto& [d, v] : t_) {
      KValue w = v.mapped([&](const RationalQ& f) { return f.truncate_to(D); });
      if (!w.is_zero()) r.t_[d] = w;
    }
    return r;
  }

  // Full Adams operation: Q^d -> Q^{kd}, P -> P^k, Psi^k on Lambda, q -> q^k.
  NovikovSeries adams(int k) const {
    NovikovSeries r(ring_, G_);
    for (const auto& [d, v] : t_) {
      std::vector<int> kd(d.size());
      for (size_t i = 0; i < d.size(); ++i) kd[i] = d[i] * k;
      if (vec_total(kd) > G_) continue;
      KValue w = v.adams(k, [&](const RationalQ& f) { return f.adams_coeffs(k).substitute_power(k); });
      if (!w.is_zero()) r.t_[kd] = w;
    }
    return r;
  }

  friend bool operator==(const NovikovSeries& a, const NovikovSeries& b) {
    if (a.t_.size() != b.t_.size()) return false;
    auto ia = a.t_.begin(), ib = b.t_.begin();
    for (; ia != a.t_.end(); ++ia, ++ib)
      if (ia->first != ib->first || !(ia->second == ib->second)) return false;
    return true;
  }
  friend bool operator!=(const NovikovSeries& a, const NovikovSeries& b) { return !(a == b); }

 private:
  void check_degree(const std::vector<int>& d) const {
    if (static_cast<int>(d.size()) != ring_.s())
      throw std::invalid_argument("novikov: wrong degree arity");
    for (int x : d)
      if (x < 0) throw std::invalid_argument("novikov: negative degree");
  }

  ToyKRing ring_;
  int G_;
  std::map<std::vector<int>, KValue> t_;
};

// Normal-ordered finite-difference operator sum c_{a,b}(q) T^a Q^b with
// T_i = P_i q^{Q_i d/dQ_i}. Powers a may be any integers (T is invertible);
// b >= 0. Coefficients are toy-K-valued rational functions of q.
struct DiffOpKey {
  std::vector<int> t_pow;
  std::vector<int> q_pow;
  auto operator<=>(const DiffOpKey&) const = default;
};

class DiffOp {
 public:
  DiffOp() : ring_(ToyKRing::trivial()) {}
  explicit DiffOp(ToyKRing ring) : ring_(std::move(ring)) {}

  static DiffOp identity(const ToyKRing& ring) {
    DiffOp d(ring);
    size_t s = static_cast<size_t>(ring.s());
    d.add_term(std::vector<int>(s, 0), std::vector<int>(s, 0),
               KValue::scalar(ring, RationalQ(LaurentPoly::one())));
    return d;
  }

  const ToyKRing& ring() const { return ring_; }
  const std::map<DiffOpKey, KValue>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add_term(std::vector<int> a, std::vector<int> b, const KValue& c) {
    if (static_cast<int>(a.size()) != ring_.s() || static_cast<int>(b.size()) != ring_.s())
      throw std::invalid_argument("diffop: wrong arity");
    for (int x : b)
      if (x < 0) throw std::invalid_argument("diffop: Q-power must be >= 0");
    if (c.is_zero()) return;
    DiffOpKey key{std::move(a), std::move(b)};
    auto [it, fresh] = t_.emplace(std::move(key), c);
    if (!fresh) {
      it->second = it->second + c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  friend DiffOp operator+(const DiffOp& x, const DiffOp& y) {
    DiffOp r = x;
    for (const auto& [k, c] : y.t_) r.add_term(k.t_pow, k.q_pow, c);
    return r;
  }

  DiffOp scaled(const Rational& c) const {
    DiffOp r(ring_);
    for (const auto& [k, v] : t_) r.t_[k] = v.scaled(c);
    return r;
  }

  DiffOp scaled_q(const RationalQ& f) const {
    DiffOp r(ring_);
    for (const auto& [k, v] : t_) {
      KValue w = v.mapped([&](const RationalQ& g) { return g * f; });
      if (!w.is_zero()) r.t_[k] = w;
    }
    return r;
  }

 private:
  ToyKRing ring_;
  std::map<DiffOpKey, KValue> t_;

  friend DiffOp op_compose(const DiffOp&, const DiffOp&);
};

// (T^a Q^b) F: Q^b shifts the degree, then each T_i contributes P_i q^{d_i}.
inline NovikovSeries op_apply(const DiffOp& D, const NovikovSeries& F) {
  if (!(D.ring() == F.ring())) throw std::invalid_argument("op_apply: ring mismatch");
  NovikovSeries out(F.ring(), F.G());
  for (const auto& [key, c] : D.terms()) {
    for (const auto& [d, v] : F.terms()) {
      std::vector<int> d2(d.size());
      for (size_t i = 0; i < d.size(); ++i) d2[i] = d[i] + key.q_pow[i];
      if (vec_total(d2) > F.G()) continue;
      long e = vec_dot(key.t_pow, d2);
      KValue w = (c * v).mul_P(key.t_pow);
      if (e != 0)
        w = w.mapped([&](const RationalQ& f) {
          return f * RationalQ(LaurentPoly::monomial(static_cast<int>(e), LambdaElement::one()));
        });
      out.add_to(d2, w);
    }
  }
  return out;
}

// Normal ordering: Q^{b1} T^{a2} = q^{-<a2,b1>} T^{a2} Q^{b1}, forced by the
// action q^{Q d/dQ} (Q F(Q)) = qQ F(qQ).
inline DiffOp op_compose(const DiffOp& x, const DiffOp& y) {
  if (!(x.ring() == y.ring())) throw std::invalid_argument("op_compose: ring mismatch");
  DiffOp r(x.ring());
  for (const auto& [kx, cx] : x.terms())
    for (const auto& [ky, cy] : y.terms()) {
      std::vector<int> a(kx.t_pow.size()), b(kx.q_pow.size());
      for (size_t i = 0; i < a.size(); ++i) {
        a[i] = kx.t_pow[i] + ky.t_pow[i];
        b[i] = kx.q_pow[i] + ky.q_pow[i];
      }
      long e = -vec_dot(ky.t_pow, kx.q_pow);
      KValue c = cx * cy;
      if (e != 0)
        c = c.mapped([&](const RationalQ& f) {
          return f * RationalQ(LaurentPoly::monomial(static_cast<int>(e), LambdaElement::one()));
        });
      r.add_term(std::move(a), std::move(b), c);
    }
  return r;
}

// Commutator [x, y].
inline DiffOp op_commutator(const DiffOp& x, const DiffOp& y) {
  return op_compose(x, y) + op_compose(y, x).scaled(Rational(-1));
}

// An operator expression D(sigma, Q, q) whose sigma-slots are tagged: when
// the Adams operation Psi^k is applied, sigma is read as P q^{k Q d/dQ}.
// Keeping the slot symbolic is what makes Psi^k(D) unambiguous; untagged
// operators cannot be fed to the Adams action.
struct SlottedOp {
  ToyKRing ring;
  std::map<DiffOpKey, KValue> terms;  // key.t_pow = sigma-powers

  void add_term(std::vector<int> a, std::vector<int> b, const KValue& c) {
    DiffOp tmp(ring);
    tmp.add_term(std::move(a), std::move(b), c);
    for (const auto& [k, v] : tmp.terms()) {
      auto [it, fresh] = terms.emplace(k, v);
      if (!fresh) it->second = it->second + v;
    }
  }

  // The slot read with tag k but *without* applying Psi^k: sigma = P q^{kQd/dQ}
  // acts on Q^d as P q^{kd} Q^d.
  NovikovSeries apply_tagged(int tag, const NovikovSeries& F) const {
    NovikovSeries out(F.ring(), F.G());
    for (const auto& [key, c] : terms) {
      for (const auto& [d, v] : F.terms()) {
        std::vector<int> d2(d.size());
        for (size_t i = 0; i < d.size(); ++i) d2[i] = d[i] + key.q_pow[i];
        if (vec_total(d2) > F.G()) continue;
        long e = static_cast<long>(tag) * vec_dot(key.t_pow, d2);
        KValue w = (c * v).mul_P(key.t_pow);
        if (e != 0)
          w = w.mapped([&](const RationalQ& f) {
            return f * RationalQ(LaurentPoly::monomial(static_cast<int>(e), LambdaElement::one()));
          });
        out.add_to(d2, w);
      }
    }
    return out;
  }
};

// Psi^k(D(P q^{kQd/dQ}, Q, q)): sigma^a -> T^{ka}, Q^b -> Q^{kb}, coefficients
// through the full Adams action (P -> P^k, Psi^k on Lambda, q -> q^k).
inline DiffOp adams_on_operator(int k, const SlottedOp& S) {
  DiffOp r(S.ring);
  for (const auto& [key, c] : S.terms) {
    std::vector<int> a(key.t_pow.size()), b(key.q_pow.size());
    for (size_t i = 0; i < a.size(); ++i) {
      a[i] = key.t_pow[i] * k;
      b[i] = key.q_pow[i] * k;
    }
    KValue w = c.adams(k, [&](const RationalQ& f) { return f.adams_coeffs(k).substitute_power(k); });
    r.add_term(std::move(a), std::move(b), w);
  }
  return r;
}

// g = e^{E} f with per-step Lambda_+ truncation; the caller guarantees that
// E raises the joint (Lambda_+, Novikov) filtration so the sum is finite.
inline NovikovSeries op_exp_apply(const DiffOp& E, const NovikovSeries& f, int D, int iter_cap) {
  NovikovSeries sum = f.truncate_lambda(D);
  NovikovSeries term = sum;
  for (int n = 1; n <= iter_cap; ++n) {
    term = op_apply(E, term).scaled(Rational(1) / n).truncate_lambda(D);
    if (term.is_zero()) return sum;
    sum = sum + term;
  }
  throw std::domain_error("op_exp_apply: non-truncating operator exponential");
}

// Exact truncation requires each purely multiplicative term (b = 0) of the
// exponent to carry a coefficient that is Lambda_+ (rank part) or nilpotent.
inline void check_exponent_truncates(const DiffOp& E) {
  for (const auto& [key, c] : E.terms()) {
    bool shifts = false;
    for (int x : key.q_pow) shifts = shifts || x != 0;
    if (shifts) continue;
    std::vector<int> zero(key.t_pow.size(), 0);
    for (const auto& [e, f] : c.terms()) {
      if (e != zero) continue;  // nilpotent component truncates by itself
      for (const auto& [qe, lam] : f.num().terms())
        if (lam.filtration_degree() < 1)
          throw std::invalid_argument("difference flow: free-term violation (non-Lambda_+ multiplicative term)");
    }
  }
}

// f_r |-> e^{sum_k Psi^k(D_{kr}(P q^{kQd/dQ}, Q, q))/k(1-q^k)} f_r. The map
// D has finite support; entry r picks up the operators at indices kr.
inline std::vector<NovikovSeries> difference_flow(const std::vector<NovikovSeries>& f,
                                                  const std::map<int, SlottedOp>& D,
                                                  const EngineConfig& cfg) {
  std::vector<NovikovSeries> out;
  out.reserve(f.size());
  for (size_t idx = 0; idx < f.size(); ++idx) {
    int r = static_cast<int>(idx) + 1;
    DiffOp E(f[idx].ring());
    for (const auto& [j, S] : D) {
      if (j % r != 0) continue;
      int k = j / r;
      DiffOp A = adams_on_operator(k, S).scaled_q(RationalQ::inv_one_minus_q_pow(k).scaled(Rational(1) / k));
      E = E + A;
    }
    check_exponent_truncates(E);
    int cap = cfg.D + cfg.G + 2;
    for (int N : f[idx].ring().nilp) cap += N;
    out.push_back(op_exp_apply(E, f[idx], cfg.D, cap));
  }
  return out;
}

// Closed reconstruction formula: for f_r = sum_d f_{r,d} Q^d,
//   g_r = sum_d f_{r,d} Q^d
//         e^{sum_{k>0} sum_a Psi^k(tau_{a,rk}) P^{k m_a} q^{k(m_a,d)}/k(1-q^k)}
//         sum_a c_{a,r}(q) P^{m_a} q^{(m_a,d)},
// with basis Laurent monomials P^{m_a} of the toy K-ring.
struct ReconstructionData {
  std::vector<std::vector<int>> basis;            // m_a, exponent vectors
  std::map<std::pair<int, int>, LaurentPoly> c;   // (alpha, r) -> c_{alpha,r}(q)
  std::map<std::pair<int, int>, LambdaElement> tau;  // (alpha, k) -> tau_{alpha,k}
};

inline std::vector<NovikovSeries> reconstruction_family(const std::vector<NovikovSeries>& f,
                                                        const ReconstructionData& data,
                                                        const EngineConfig& cfg) {
  for (const auto& [key, v] : data.tau)
    if (!v.is_zero() && v.filtration_degree() < 1)
      throw std::invalid_argument("reconstruction family: tau parameter not in Lambda_+");
  std::vector<NovikovSeries> out;
  out.reserve(f.size());
  for (size_t idx = 0; idx < f.size(); ++idx) {
    int r = static_cast<int>(idx) + 1;
    const ToyKRing& ring = f[idx].ring();
    NovikovSeries g(ring, f[idx].G());
    for (const auto& [d, fv] : f[idx].terms()) {
      // Exponent: a scalar toy-K-valued rational function for this degree d.
      KValue X(ring);
      for (const auto& [key, tv] : data.tau) {
        auto [alpha, j] = key;
        if (j % r != 0 || tv.is_zero()) continue;
        int k = j / r;
        if (k > cfg.D) continue;  // Psi^k raises filtration beyond D
        const std::vector<int>& ma = data.basis.at(static_cast<size_t>(alpha));
        std::vector<int> kma(ma.size());
        for (size_t i = 0; i < kma.size(); ++i) kma[i] = ma[i] * k;
        long e = static_cast<long>(k) * vec_dot(ma, d);
        RationalQ coeff = RationalQ::inv_one_minus_q_pow(k)
                              .scaled(tv.adams(k).scaled(Rational(1) / k)) *
                          RationalQ(LaurentPoly::monomial(static_cast<int>(e), LambdaElement::one()));
        X = X + KValue::scalar(ring, coeff).mul_P(kma);
      }
      KValue A = KValue::scalar(ring, RationalQ(LaurentPoly::one()));
      KValue term = A;
      int cap = cfg.D + 1;
      for (int N : ring.nilp) cap += N;
      for (int n = 1; n <= cap; ++n) {
        term = (term * X).scaled(Rational(1) / n)
                   .mapped([&](const RationalQ& h) { return h.truncate_to(cfg.D); });
        if (term.is_zero()) break;
        A = A + term;
      }
      KValue B(ring);
      for (size_t alpha = 0; alpha < data.basis.size(); ++alpha) {
        auto it = data.c.find({static_cast<int>(alpha), r});
        if (it == data.c.end() || it->second.is_zero()) continue;
        long e = vec_dot(data.basis[alpha], d);
        RationalQ coeff = RationalQ(it->second) *
                          RationalQ(LaurentPoly::monomial(static_cast<int>(e), LambdaElement::one()));
        B = B + KValue::scalar(ring, coeff).mul_P(data.basis[alpha]);
      }
      KValue gv = (fv * A * B).mapped([&](const RationalQ& h) { return h.truncate_to(cfg.D); });
      if (!gv.is_zero()) g.set(d, gv);
    }
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace bigj
