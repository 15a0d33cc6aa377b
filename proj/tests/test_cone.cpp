#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace bigj;
using testutil::Rng;

namespace {

EngineConfig small_cfg(int D = 2, int R = 4, int M = 3) {
  EngineConfig cfg;
  cfg.D = D;
  cfg.R = R;
  cfg.M_max = M;
  return cfg.finalize();
}

// T_r = sum_{k>0} Psi^k(tau_{kr})/k^2, the tangent datum of a generated point.
LambdaElement tangent_formula(const PtParams& p, int r, int D) {
  LambdaElement T = LambdaElement::zero();
  for (int k = 1; k <= D; ++k) {
    LambdaElement t = p.tau_at(k * r);
    if (t.is_zero()) continue;
    T = T + t.adams(k).scaled(Rational(1) / (k * k));
  }
  return T.truncate_to(D);
}

}  // namespace

TEST_CASE("generator: named examples") {
  EngineConfig cfg = small_cfg(1, 2, 2);
  PtParams p;
  p.tau[1] = LambdaElement::tau(1, cfg.D);
  SequencePoint f = generate_point(p, cfg);
  RationalQ expect1 = RationalQ(LaurentPoly::one_minus_q_pow(1) +
                                LaurentPoly::constant(LambdaElement::tau(1, cfg.D)));
  CHECK(f.entry(1) == expect1);
  CHECK(f.entry(2) == RationalQ(LaurentPoly::one_minus_q_pow(1)));

  // tau = 0: f_r = (1-q) t_r.
  Rng rng(17);
  EngineConfig cfg2 = small_cfg(2, 3, 2);
  PtParams p2;
  for (int r = 1; r <= 3; ++r) p2.t[r] = testutil::random_unit_laurent(rng, cfg2.D);
  SequencePoint f2 = generate_point(p2, cfg2);
  for (int r = 1; r <= 3; ++r)
    CHECK(f2.entry(r) == RationalQ(LaurentPoly::one_minus_q_pow(1) * p2.t_at(r)));

  // Empty params give the dilaton point.
  CHECK(generate_point(PtParams{}, cfg2) == dilaton_point(cfg2));

  // Invariant violations are rejected.
  PtParams bad;
  bad.tau[1] = LambdaElement::one();
  CHECK_THROWS_AS(generate_point(bad, cfg), std::invalid_argument);
}

TEST_CASE("fake cone membership") {
  int E = 6;
  QSeries dil = expand_at_one(RationalQ(LaurentPoly::one_minus_q_pow(1)), E);
  auto d = fake_cone_membership(dil);
  REQUIRE(d.has_value());
  CHECK(d->tangent.is_zero());
  CHECK(d->unit_part == QSeries::one(d->unit_part.trunc()));

  LambdaElement tau = LambdaElement::tau(1, 1);
  QSeries g = expand_at_one(
      RationalQ(LaurentPoly::one_minus_q_pow(1) + LaurentPoly::constant(tau)), E);
  auto dg = fake_cone_membership(g);
  REQUIRE(dg.has_value());
  CHECK(dg->tangent == tau);
  CHECK(dg->unit_part == QSeries::one(dg->unit_part.trunc()));

  std::string why;
  CHECK_FALSE(fake_cone_membership(QSeries::one(E), &why).has_value());
  CHECK(why.find("log-prefix mismatch") != std::string::npos);
}

TEST_CASE("tangent membership") {
  int E = 6;
  CHECK(tangent_membership(QSeries::monomial(1, LambdaElement::scalar(Rational(-1)), E),
                           LambdaElement::zero()));
  CHECK_FALSE(tangent_membership(QSeries::monomial(-1, -LambdaElement::tau(1, 2), E),
                                 LambdaElement::zero()));

  // g = e^{tau_1/(1-q)} q^2 lies in e^{tau_1/(1-q)} K_+.
  EngineConfig cfg = small_cfg(2, 1, 2);
  LambdaElement tau = LambdaElement::tau(1, cfg.D);
  PtParams p;
  p.tau[1] = tau;
  RationalQ f = generate_point(p, cfg).entry(1);
  // strip the dilaton factor and shift by q^2
  RationalQ g = f * RationalQ(LaurentPoly::monomial(2, LambdaElement::one()));
  QSeries gs = expand_at_one(g, cfg.E).shifted(-1).scaled(Rational(-1));  // divide by (1-q)
  CHECK(tangent_membership(gs, tau));
  CHECK_FALSE(tangent_membership(gs, LambdaElement::zero()));
}

TEST_CASE("checker: dilaton and generated points pass") {
  EngineConfig cfg = small_cfg(2, 4, 3);
  ConeCertificate c0 = check_adelic_criteria(dilaton_point(cfg));
  CHECK(c0.pass);
  CHECK(c0.window_complete);
  for (const auto& [r, T] : c0.tangents) CHECK(T.is_zero());

  Rng rng(815);
  for (int iter = 0; iter < 3; ++iter) {
    PtParams p = testutil::random_params(rng, cfg);
    SequencePoint f = generate_point(p, cfg);
    ConeCertificate cert = check_adelic_criteria(f);
    CHECK(cert.pass);
    CHECK(cert.window_complete);
    CHECK(cert.failed_count() == 0);
    // T_r matches the closed tangent formula, exactly.
    for (int r = 1; r <= cfg.R; ++r) CHECK(cert.tangents.at(r) == tangent_formula(p, r, cfg.D));
  }
}

TEST_CASE("checker: named failure at zeta = -1") {
  // f_1 = (1-q) + tau_1/(1+q) has a pole in the zeta = -1 expansion that no
  // tangent multiplier can cancel (T_2 = 0).
  EngineConfig cfg = small_cfg(2, 4, 2);
  SequencePoint f = dilaton_point(cfg);
  LambdaElement tau = LambdaElement::tau(1, cfg.D);
  RationalQ inv_one_plus_q =
      RationalQ(LaurentPoly::one_minus_q_pow(1)) * RationalQ::inv_one_minus_q_pow(2);
  f.set_entry(1, f.entry(1) + inv_one_plus_q.scaled(tau));
  ConeCertificate cert = check_adelic_criteria(f);
  CHECK_FALSE(cert.pass);
  bool found = false;
  for (const auto& c : cert.cells)
    if (c.r == 1 && c.m == 2 && c.a == 1) {
      found = true;
      CHECK(c.verdict == Verdict::Fail);
    }
  CHECK(found);
}

TEST_CASE("checker soundness: single polar perturbations are detected") {
  EngineConfig cfg = small_cfg(2, 4, 3);
  PtParams p;
  p.tau[1] = LambdaElement::tau(1, cfg.D);
  SequencePoint base = generate_point(p, cfg);
  int fresh = 40;
  for (int j = 0; j <= 3; ++j) {
    for (int k = 1; k <= 3; ++k) {
      LambdaElement eps = LambdaElement::tau(fresh++, cfg.D);
      RationalQ pert =
          RationalQ(LaurentPoly::monomial(j, LambdaElement::one())).scaled(eps) *
          RationalQ::inv_one_minus_q_pow(k);
      SequencePoint mutant = base;
      mutant.set_entry(1 + (j + k) % cfg.R, base.entry(1 + (j + k) % cfg.R) + pert);
      ConeCertificate cert = check_adelic_criteria(mutant);
      INFO("perturbation q^" << j << "/(1-q^" << k << ")");
      CHECK(cert.failed_count() >= 1);
    }
  }
}

TEST_CASE("window semantics") {
  EngineConfig cfg = small_cfg(1, 2, 4);  // M_max = 4 > R = 2
  ConeCertificate cert = check_adelic_criteria(dilaton_point(cfg));
  CHECK(cert.pass);                   // nothing checked fails
  CHECK_FALSE(cert.window_complete);  // but sectors m = 3, 4 are untestable
  CHECK(cert.unchecked_in_window() > 0);
}

TEST_CASE("string flow") {
  EngineConfig cfg = small_cfg(2, 4, 2);
  Rng rng(99);
  PtParams p = testutil::random_params(rng, cfg);
  p.t.clear();  // exponents add only for t = 1
  SequencePoint f = generate_point(p, cfg);

  std::map<int, LambdaElement> tp;
  tp[1] = LambdaElement::tau(5, cfg.D);
  tp[2] = LambdaElement::generator(1, 6, cfg.D).scaled(Rational(1) / 3);

  PtParams combined = p;
  for (const auto& [k, v] : tp) combined.tau[k] = combined.tau_at(k) + v;
  CHECK(string_flow(f, tp) == generate_point(combined, cfg));

  CHECK(string_flow(f, {}) == f);

  CHECK(check_adelic_criteria(string_flow(f, tp)).pass);
  std::map<int, LambdaElement> bad;
  bad[1] = LambdaElement::one();
  CHECK_THROWS_AS(string_flow(f, bad), std::invalid_argument);
}

TEST_CASE("difference multiplication") {
  EngineConfig cfg = small_cfg(2, 4, 3);
  SequencePoint v = dilaton_point(cfg);
  CHECK(dq_multiply(v, {}) == v);

  LambdaElement tau = LambdaElement::tau(1, cfg.D);
  std::map<int, LaurentPoly> mult;
  mult[1] = LaurentPoly::one() + LaurentPoly::monomial(1, tau);
  SequencePoint g = dq_multiply(v, mult);
  CHECK(g.entry(1) == RationalQ(LaurentPoly::one_minus_q_pow(1) * mult[1]));
  CHECK(check_adelic_criteria(g).pass);

  // (1-q) K_+ lies in the cone: multiplying the dilaton by unit Laurent
  // polynomials keeps the checker green.
  Rng rng(123);
  std::map<int, LaurentPoly> t;
  for (int r = 1; r <= cfg.R; ++r) t[r] = testutil::random_unit_laurent(rng, cfg.D);
  CHECK(check_adelic_criteria(dq_multiply(v, t)).pass);
}

TEST_CASE("generalized flow") {
  EngineConfig cfg = small_cfg(2, 4, 2);
  SequencePoint v = dilaton_point(cfg);
  CHECK(generalized_flow(v, {}) == v);

  // Constant operators reduce to the string flow.
  std::map<int, LambdaElement> tp;
  tp[1] = LambdaElement::tau(1, cfg.D);
  tp[2] = LambdaElement::tau(2, cfg.D).scaled(Rational(-1) / 2);
  std::map<int, LaurentPoly> Dconst;
  for (const auto& [k, tv] : tp) Dconst[k] = LaurentPoly::constant(tv);
  CHECK(generalized_flow(v, Dconst) == string_flow(v, tp));

  // D_1 = tau_1 q.
  std::map<int, LaurentPoly> Dq;
  Dq[1] = LaurentPoly::monomial(1, LambdaElement::tau(1, cfg.D));
  SequencePoint g = generalized_flow(v, Dq);
  CHECK(check_adelic_criteria(g).pass);

  std::map<int, LaurentPoly> bad;
  bad[1] = LaurentPoly::one();
  CHECK_THROWS_AS(generalized_flow(v, bad), std::invalid_argument);
}

TEST_CASE("reconstruction") {
  EngineConfig cfg = small_cfg(2, 3, 2);

  // Dilaton targets give zero parameters.
  auto [p0, f0] = reconstruct(project_plus_seq(dilaton_point(cfg)), cfg);
  CHECK(p0.tau.empty());
  CHECK(p0.t.empty());
  CHECK(f0 == dilaton_point(cfg));

  // Targets (1 - q + tau_r) recover tau_r mod Lambda_+^2.
  std::vector<LaurentPoly> targets;
  for (int r = 1; r <= cfg.R; ++r)
    targets.push_back(LaurentPoly::one_minus_q_pow(1) +
                      LaurentPoly::constant(LambdaElement::tau(r, cfg.D)));
  auto [p1, f1] = reconstruct(targets, cfg);
  for (int r = 1; r <= cfg.R; ++r)
    CHECK(p1.tau_at(r).truncate_to(1) == LambdaElement::tau(r, 1));

  // Round trip through the generator.
  Rng rng(3141);
  for (int iter = 0; iter < 3; ++iter) {
    PtParams p = testutil::random_params(rng, cfg);
    SequencePoint f = generate_point(p, cfg);
    auto [pr, fr] = reconstruct(project_plus_seq(f), cfg);
    CHECK(fr == f);
  }

  // Targets not Lambda_+-close to the dilaton vector are rejected.
  std::vector<LaurentPoly> bad(static_cast<size_t>(cfg.R), LaurentPoly::one());
  CHECK_THROWS_AS(reconstruct(bad, cfg), std::invalid_argument);
}

TEST_CASE("flow closure, randomized") {
  EngineConfig cfg = small_cfg(2, 4, 2);
  Rng rng(2025);
  for (int iter = 0; iter < 2; ++iter) {
    SequencePoint f = generate_point(testutil::random_params(rng, cfg), cfg);
    REQUIRE(check_adelic_criteria(f).pass);

    std::map<int, LambdaElement> tp;
    tp[testutil::uniform(rng, 1, 3)] = testutil::random_lambda_plus(rng, cfg.D, 6, 1);
    CHECK(check_adelic_criteria(string_flow(f, tp)).pass);

    std::map<int, LaurentPoly> mult;
    for (int r = 1; r <= cfg.R; ++r) mult[r] = testutil::random_unit_laurent(rng, cfg.D);
    CHECK(check_adelic_criteria(dq_multiply(f, mult)).pass);

    std::map<int, LaurentPoly> ops;
    ops[1] = LaurentPoly::monomial(testutil::uniform(rng, -1, 1),
                                   testutil::random_lambda_plus(rng, cfg.D, 6, 1));
    CHECK(check_adelic_criteria(generalized_flow(f, ops)).pass);
  }
}
