#pragma once

#include <optional>
#include <string>

#include "bigj/loopspace.hpp"

namespace bigj {

// Parameters of the point-target cone: tau_k in Lambda_+ and scalar Laurent
// polynomials t_r that are Lambda_+-close to 1.
struct PtParams {
  std::map<int, LambdaElement> tau;
  std::map<int, LaurentPoly> t;

  void validate() const {
    for (const auto& [k, v] : tau) {
      if (k < 1) throw std::invalid_argument("params: tau index must be >= 1");
      if (!v.is_zero() && v.filtration_degree() < 1)
        throw std::invalid_argument("params: tau_" + std::to_string(k) + " not in Lambda_+");
    }
    for (const auto& [r, poly] : t) {
      if (r < 1) throw std::invalid_argument("params: t index must be >= 1");
      LaurentPoly w = poly - LaurentPoly::one();
      for (const auto& [e, c] : w.terms())
        if (c.filtration_degree() < 1)
          throw std::invalid_argument("params: t_" + std::to_string(r) + " - 1 not in Lambda_+");
    }
  }

  LambdaElement tau_at(int k) const {
    auto it = tau.find(k);
    return it == tau.end() ? LambdaElement::zero() : it->second;
  }
  LaurentPoly t_at(int r) const {
    auto it = t.find(r);
    return it == t.end() ? LaurentPoly::one() : it->second;
  }
};

namespace detail {

// exp(sum_{k>0} Psi^k(x_{k}) / k(1-q^k)) as an exact rational function,
// where x_k is a Lambda_+ element looked up via `at(k)`. Truncation in
// Lambda_+ makes both the k-sum and the exponential finite.
template <class At>
RationalQ flow_exponential(const At& at, int D) {
  RationalQ S;
  for (int k = 1; k <= D; ++k) {
    LambdaElement xk = at(k);
    if (xk.is_zero()) continue;
    if (xk.filtration_degree() < 1)
      throw std::invalid_argument("flow exponent: coefficient not in Lambda_+");
    S = S + RationalQ::inv_one_minus_q_pow(k).scaled(xk.adams(k).scaled(Rational(1) / k));
  }
  RationalQ sum(LaurentPoly::one());
  RationalQ term(LaurentPoly::one());
  for (int n = 1; n <= D; ++n) {
    term = (term * S).scaled(Rational(1) / n);
    term = term.truncate_to(D);
    if (term.is_zero()) break;
    sum = sum + term;
  }
  return sum.truncate_to(D);
}

}  // namespace detail

// f_r = (1-q) exp(sum_{k>0} Psi^k(tau_{kr}) / k(1-q^k)) t_r(q, q^{-1}).
inline SequencePoint generate_point(const PtParams& p, const EngineConfig& cfg) {
  p.validate();
  std::vector<RationalQ> entries;
  entries.reserve(static_cast<size_t>(cfg.R));
  RationalQ dil(LaurentPoly::one_minus_q_pow(1));
  for (int r = 1; r <= cfg.R; ++r) {
    RationalQ e = detail::flow_exponential([&](int k) { return p.tau_at(k * r); }, cfg.D);
    entries.push_back((dil * e * RationalQ(p.t_at(r))).truncate_to(cfg.D));
  }
  return SequencePoint(std::move(entries), cfg);
}

// Membership data for the point-target fake cone: g = (1-q) e^{T/(1-q)} t.
struct FakeConeData {
  LambdaElement tangent;  // T in Lambda_+
  QSeries unit_part;      // t, a power series with t - 1 in Lambda_+
};

// Decides membership of a Laurent series in the fake cone of the point and
// extracts (T, t). On failure returns nullopt with a diagnostic in `why`.
inline std::optional<FakeConeData> fake_cone_membership(const QSeries& g, std::string* why = nullptr) {
  auto fail = [&](const std::string& m) -> std::optional<FakeConeData> {
    if (why) *why = m;
    return std::nullopt;
  };
  // y = g / (1-q) = -g u^{-1}; a cone point gives y = 1 + (Lambda_+ tail).
  QSeries y = (-g).shifted(-1);
  std::string logwhy;
  auto lr = series_log_prefixed(y, &logwhy);
  if (!lr) return fail("log-prefix mismatch: " + logwhy);
  if (lr->prefix_power != 0 || !(lr->prefix_scalar == Cyclotomic(Rational(1))))
    return fail("log-prefix mismatch: g is not a unit multiple of (1-q)");
  const QSeries& h = lr->series;
  if (h.min_order() < -1)
    return fail("polar depth " + std::to_string(h.polar_depth()) + " >= 2 in log(g/(1-q))");
  LambdaElement T = -h.coeff(-1);
  if (!T.is_zero() && T.filtration_degree() < 1)
    return fail("polar coefficient of log(g/(1-q)) not in Lambda_+");
  QSeries reg = h;
  reg.set_coeff(-1, LambdaElement::zero());
  FakeConeData out;
  out.tangent = T;
  out.unit_part = series_exp(reg);
  return out;
}

// True iff e^{-T/(1-q)} g is a power series, where the multiplier is taken
// as a Laurent series at q = 1 and T lies in Lambda_+. This is membership in
// the tangent space e^{T/(1-q)} K_+^fake.
inline bool tangent_membership(const QSeries& g, const LambdaElement& T) {
  if (!T.is_zero() && T.filtration_degree() < 1)
    throw std::invalid_argument("tangent_membership: T not in Lambda_+");
  QSeries expo = expand_at_one(RationalQ::inv_one_minus_q_pow(1), g.trunc()).scaled(-T);
  return (series_exp(expo) * g).is_power_series();
}

enum class Verdict { Pass, Fail, Unchecked };

struct CellReport {
  int r = 0;
  int m = 1;
  int a = 0;
  Verdict verdict = Verdict::Unchecked;
  bool in_window = true;  // part of the configured window (r, m <= M_max, rm <= R)
  std::string reason;
  std::optional<QSeries> witness;  // offending series for failed cells
};

// Certificate for the adelic membership criteria at the point target.
// Criterion (i) is the fake-cone test of the expansion at q = 1 (cells with
// m = 1); criterion (ii) tests, at each primitive root of order m, membership
// in e^{Psi^m(T_{rm})/(1-q^m)} K_+^fake. The twisting multiplier Delta_zeta
// is identically 1 here because T*_pt - 1 = 0.
struct ConeCertificate {
  bool pass = false;             // no failed cells
  bool window_complete = false;  // every in-window cell was checked
  std::vector<CellReport> cells;
  std::map<int, LambdaElement> tangents;  // r -> T_r
  std::map<int, QSeries> unit_parts;      // r -> t_r

  int failed_count() const {
    int n = 0;
    for (const auto& c : cells) n += c.verdict == Verdict::Fail;
    return n;
  }
  int unchecked_in_window() const {
    int n = 0;
    for (const auto& c : cells) n += c.verdict == Verdict::Unchecked && c.in_window;
    return n;
  }
};

inline ConeCertificate check_adelic_criteria(const SequencePoint& f) {
  const EngineConfig& cfg = f.config();
  ConeCertificate cert;
  std::map<int, std::optional<LambdaElement>> tangent;  // r -> T_r if (i) passed

  for (int r = 1; r <= cfg.R; ++r) {
    CellReport rep;
    rep.r = r;
    rep.m = 1;
    rep.a = 0;
    std::string why;
    QSeries g1 = expand_at_one(f.entry(r), cfg.E);
    auto data = fake_cone_membership(g1, &why);
    if (data) {
      rep.verdict = Verdict::Pass;
      tangent[r] = data->tangent;
      cert.tangents[r] = data->tangent;
      cert.unit_parts.emplace(r, data->unit_part);
    } else {
      rep.verdict = Verdict::Fail;
      rep.reason = why;
      rep.witness = g1;
      tangent[r] = std::nullopt;
    }
    cert.cells.push_back(std::move(rep));
  }

  for (int r = 1; r <= cfg.R; ++r) {
    for (int m = 2; m <= cfg.M_max; ++m) {
      for (int a = 1; a < m; ++a) {
        if (std::gcd(a, m) != 1) continue;
        CellReport rep;
        rep.r = r;
        rep.m = m;
        rep.a = a;
        if (static_cast<long>(r) * m > cfg.R) {
          rep.verdict = Verdict::Unchecked;
          // The configured window is the set of checkable cells (rm <= R).
          // A sector whose order exceeds R has no checkable cell at all, so
          // its r = 1 representative is flagged as an in-window gap: the
          // config cannot honestly cover M_max.
          rep.in_window = (m > cfg.R && r == 1);
          rep.reason = "requires f_{rm} with rm > R";
          cert.cells.push_back(std::move(rep));
          continue;
        }
        rep.in_window = true;
        auto Trm = tangent.at(r * m);
        if (!Trm) {
          rep.verdict = Verdict::Fail;
          rep.reason = "tangent space at rm = " + std::to_string(r * m) + " unavailable (criterion (i) failed there)";
          cert.cells.push_back(std::move(rep));
          continue;
        }
        QSeries cell = expand_adelic(f.entry(r), m, a, cfg.E);
        QSeries expo = expand_at_one(RationalQ::inv_one_minus_q_pow(m), cfg.E).scaled(-Trm->adams(m));
        QSeries product = series_exp(expo) * cell;
        bool ok = product.is_power_series();
        rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
        if (!ok) {
          rep.reason = "expansion not in e^{Psi^m(T_rm)/(1-q^m)} K_+";
          rep.witness = product;
        }
        cert.cells.push_back(std::move(rep));
      }
    }
  }

  cert.pass = cert.failed_count() == 0;
  cert.window_complete = cert.unchecked_in_window() == 0;
  return cert;
}

// f_r |-> e^{sum_k Psi^k(tau'_{kr})/k(1-q^k)} f_r.
inline SequencePoint string_flow(const SequencePoint& f, const std::map<int, LambdaElement>& tau_prime) {
  const EngineConfig& cfg = f.config();
  for (const auto& [k, v] : tau_prime)
    if (!v.is_zero() && v.filtration_degree() < 1)
      throw std::invalid_argument("string_flow: parameter not in Lambda_+");
  SequencePoint g = f;
  for (int r = 1; r <= cfg.R; ++r) {
    RationalQ e = detail::flow_exponential(
        [&](int k) {
          auto it = tau_prime.find(k * r);
          return it == tau_prime.end() ? LambdaElement::zero() : it->second;
        },
        cfg.D);
    g.set_entry(r, (f.entry(r) * e).truncate_to(cfg.D));
  }
  return g;
}

// f_r |-> D_r f_r with D_r a Laurent polynomial (the difference-operator
// module structure collapses to multiplication at the point target).
inline SequencePoint dq_multiply(const SequencePoint& f, const std::map<int, LaurentPoly>& mult) {
  SequencePoint g = f;
  for (int r = 1; r <= f.R(); ++r) {
    auto it = mult.find(r);
    if (it == mult.end()) continue;
    g.set_entry(r, (f.entry(r) * RationalQ(it->second)).truncate_to(f.config().D));
  }
  return g;
}

// f_r |-> e^{sum_k Psi^k(D_{kr})(q^k)/k(1-q^k)} f_r, where the D_k are
// Laurent polynomials with all coefficients in Lambda_+ ("small free terms")
// and Psi^k acts on coefficients and sends q to q^k.
inline SequencePoint generalized_flow(const SequencePoint& f, const std::map<int, LaurentPoly>& D) {
  const EngineConfig& cfg = f.config();
  for (const auto& [k, poly] : D)
    for (const auto& [e, c] : poly.terms())
      if (c.filtration_degree() < 1)
        throw std::invalid_argument("generalized_flow: free-term violation (coefficient not in Lambda_+)");
  SequencePoint g = f;
  for (int r = 1; r <= cfg.R; ++r) {
    RationalQ S;
    for (int k = 1; k <= cfg.D; ++k) {
      auto it = D.find(k * r);
      if (it == D.end() || it->second.is_zero()) continue;
      LaurentPoly transformed = it->second.adams_coeffs(k).substitute_power(k);
      S = S + (RationalQ::inv_one_minus_q_pow(k) * RationalQ(transformed)).scaled(Rational(1) / k);
    }
    RationalQ sum(LaurentPoly::one());
    RationalQ term(LaurentPoly::one());
    for (int n = 1; n <= cfg.D; ++n) {
      term = ((term * S).scaled(Rational(1) / n)).truncate_to(cfg.D);
      if (term.is_zero()) break;
      sum = sum + term;
    }
    g.set_entry(r, (f.entry(r) * sum).truncate_to(cfg.D));
  }
  return g;
}

// Solves project_plus_seq(generate_point(p)) = t_target for p, order by
// order in the Lambda_+ filtration. The q = 1 value of the residual feeds
// the tau-direction; the remainder is exactly divisible by (1-q) and feeds
// the t-direction. Feedback through Adams operations only enters at doubled
// filtration order, so D sweeps suffice.
inline std::pair<PtParams, SequencePoint> reconstruct(const std::vector<LaurentPoly>& t_target,
                                                      const EngineConfig& cfg) {
  if (static_cast<int>(t_target.size()) != cfg.R)
    throw std::invalid_argument("reconstruct: need exactly R targets");
  for (int r = 1; r <= cfg.R; ++r) {
    LaurentPoly w = t_target[static_cast<size_t>(r - 1)] - LaurentPoly::one_minus_q_pow(1);
    for (const auto& [e, c] : w.terms())
      if (c.filtration_degree() < 1)
        throw std::invalid_argument("reconstruct: target " + std::to_string(r) +
                                    " not Lambda_+-close to the dilaton vector");
  }
  PtParams p;
  for (int sweep = 1; sweep <= cfg.D; ++sweep) {
    SequencePoint f = generate_point(p, cfg);
    bool changed = false;
    for (int r = 1; r <= cfg.R; ++r) {
      LaurentPoly rho = (t_target[static_cast<size_t>(r - 1)] - project_plus(f.entry(r))).truncate_to(cfg.D);
      if (rho.is_zero()) continue;
      changed = true;
      LambdaElement dtau = rho.eval_at_one();
      if (!dtau.is_zero()) p.tau[r] = (p.tau_at(r) + dtau).truncate_to(cfg.D);
      auto dt = (rho - LaurentPoly::constant(dtau)).divided_by_one_minus_q();
      if (!dt) throw std::logic_error("reconstruct: residual not divisible by (1-q)");
      if (!dt->is_zero()) p.t[r] = (p.t_at(r) + *dt).truncate_to(cfg.D);
    }
    if (!changed) break;
  }
  for (auto it = p.tau.begin(); it != p.tau.end();)
    it = it->second.is_zero() ? p.tau.erase(it) : std::next(it);
  for (auto it = p.t.begin(); it != p.t.end();)
    it = (it->second == LaurentPoly::one()) ? p.t.erase(it) : std::next(it);
  SequencePoint f = generate_point(p, cfg);
  auto proj = project_plus_seq(f);
  for (int r = 1; r <= cfg.R; ++r)
    if (proj[static_cast<size_t>(r - 1)].truncate_to(cfg.D) !=
        t_target[static_cast<size_t>(r - 1)].truncate_to(cfg.D))
      throw std::logic_error("reconstruct: fixed point not reached at r = " + std::to_string(r));
  return {std::move(p), std::move(f)};
}

}  // namespace bigj
