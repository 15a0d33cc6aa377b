#include <catch2/catch_amalgamated.hpp>

#include "bigj/residue_pairing.hpp"
#include "support.hpp"

using namespace bigj;
using testutil::Rng;

namespace {
RationalQ q_pow(int e) { return RationalQ(LaurentPoly::monomial(e, LambdaElement::one())); }
}  // namespace

TEST_CASE("rational-function arithmetic") {
  RationalQ inv1 = RationalQ::inv_one_minus_q_pow(1);
  CHECK(inv1 + inv1 == inv1.scaled(Rational(2)));
  CHECK(RationalQ(LaurentPoly::one_minus_q_pow(1)) * inv1 == RationalQ(LaurentPoly::one()));
  RationalQ prod = inv1 * RationalQ::inv_one_minus_q_pow(2);
  CHECK(prod.den().at(1) == 1);
  CHECK(prod.den().at(2) == 1);
}

TEST_CASE("substitution q -> q^s") {
  CHECK(q_pow(1).substitute_power(3) == q_pow(3));
  CHECK(RationalQ::inv_one_minus_q_pow(1).substitute_power(2) == RationalQ::inv_one_minus_q_pow(2));
  CHECK(RationalQ::inv_one_minus_q_pow(2).substitute_power(2) == RationalQ::inv_one_minus_q_pow(4));
}

TEST_CASE("partial fractions: named cases") {
  // 1/(1-q^2) = (1/2)/(1-q) + (1/2)/(1+q), no Laurent part.
  RationalQ f = RationalQ::inv_one_minus_q_pow(2);
  PartialFractions pf = partial_fractions(f);
  CHECK(pf.plus_part.is_zero());
  REQUIRE(pf.polar.count(PolarKey{1, 0}) == 1);
  REQUIRE(pf.polar.count(PolarKey{2, 1}) == 1);
  // (1/2)/(1-q) = (-1/2)/(q-1); (1/2)/(1+q) = (1/2)/(q-(-1)).
  CHECK(pf.polar.at(PolarKey{1, 0}) ==
        std::vector<LambdaElement>{LambdaElement::scalar(Rational(-1) / 2)});
  CHECK(pf.polar.at(PolarKey{2, 1}) ==
        std::vector<LambdaElement>{LambdaElement::scalar(Rational(1) / 2)});
  CHECK(testutil::recombination_exact(f, pf));

  // Already-split input stays split.
  LambdaElement tau = LambdaElement::tau(1, 2);
  RationalQ g = RationalQ(LaurentPoly::one_minus_q_pow(1)) + RationalQ::inv_one_minus_q_pow(1).scaled(tau);
  PartialFractions pg = partial_fractions(g);
  CHECK(pg.plus_part == LaurentPoly::one_minus_q_pow(1));
  CHECK(pg.polar.at(PolarKey{1, 0}) == std::vector<LambdaElement>{-tau});
  CHECK(testutil::recombination_exact(g, pg));

  // q^2/(1-q): plus part by the polynomial-division oracle is -q - 1.
  RationalQ h = q_pow(2) * RationalQ::inv_one_minus_q_pow(1);
  PartialFractions ph = partial_fractions(h);
  LaurentPoly expect = LaurentPoly::monomial(1, LambdaElement::scalar(Rational(-1))) -
                       LaurentPoly::one();
  CHECK(ph.plus_part == expect);
  CHECK(ph.polar.at(PolarKey{1, 0}) == std::vector<LambdaElement>{LambdaElement::scalar(Rational(-1))});
  CHECK(testutil::recombination_exact(h, ph));
}

TEST_CASE("project_plus") {
  // (1-q) e^{tau_1/(1-q)} at D=1 projects to 1 - q + tau_1.
  EngineConfig cfg;
  cfg.D = 1;
  cfg.R = 1;
  cfg.finalize();
  PtParams p;
  p.tau[1] = LambdaElement::tau(1, 1);
  RationalQ f = generate_point(p, cfg).entry(1);
  CHECK(project_plus(f) ==
        LaurentPoly::one_minus_q_pow(1) + LaurentPoly::constant(LambdaElement::tau(1, 1)));

  LaurentPoly poly = LaurentPoly::one() + LaurentPoly::monomial(-2, LambdaElement::scalar(Rational(3)));
  CHECK(project_plus(RationalQ(poly)) == poly);
  CHECK(project_plus(RationalQ::inv_one_minus_q_pow(1)).is_zero());
}

TEST_CASE("partial fractions: randomized recombination and idempotence") {
  Rng rng(314159);
  for (int iter = 0; iter < 25; ++iter) {
    RationalQ f = testutil::random_rational_q(rng, 2, 6);
    PartialFractions pf = partial_fractions(f);
    CHECK(testutil::recombination_exact(f, pf));
    // project_plus is idempotent; the polar span is its kernel.
    CHECK(project_plus(RationalQ(pf.plus_part)) == pf.plus_part);
    RationalQ minus = f - RationalQ(pf.plus_part);
    CHECK(project_plus(minus).is_zero());
  }
}

TEST_CASE("conjugate sectors carry conjugate coefficients") {
  Rng rng(2718);
  for (int iter = 0; iter < 8; ++iter) {
    RationalQ f = testutil::random_rational_q(rng, 2, 5, /*scalar_only=*/true);
    PartialFractions pf = partial_fractions(f);
    for (const auto& [key, cs] : pf.polar) {
      if (key.order <= 2) continue;
      PolarKey conj_key{key.order, key.order - key.a};
      REQUIRE(pf.polar.count(conj_key) == 1);
      const auto& ds = pf.polar.at(conj_key);
      REQUIRE(ds.size() == cs.size());
      for (size_t j = 0; j < cs.size(); ++j) CHECK(ds[j] == cs[j].conj());
    }
  }
}

TEST_CASE("residue pairing: grid and named values") {
  for (int a = -6; a <= 6; ++a)
    for (int b = -6; b <= 6; ++b)
      CHECK(omega_pair(q_pow(a), q_pow(b)).is_zero());

  CHECK(omega_pair(RationalQ(LaurentPoly::one()), RationalQ::inv_one_minus_q_pow(1)) ==
        LambdaElement::scalar(Rational(-1)));
  Rng rng(1);
  CHECK(omega_pair(RationalQ(), testutil::random_rational_q(rng, 2)).is_zero());
}

TEST_CASE("residue pairing: oracle agreement and antisymmetry") {
  Rng rng(424242);
  for (int iter = 0; iter < 10; ++iter) {
    RationalQ f = testutil::random_rational_q(rng, 2, 4);
    RationalQ g = testutil::random_rational_q(rng, 2, 4);
    LambdaElement w = omega_pair(f, g);
    CHECK(w == testutil::omega_oracle(f, g));
    CHECK((w + omega_pair(g, f)).is_zero());
  }
}

TEST_CASE("omega_infinity") {
  EngineConfig cfg;
  cfg.R = 3;
  cfg.finalize();
  std::vector<RationalQ> zero(3), zf(3), zg(3);
  CHECK(omega_infinity(zero, zero).is_zero());

  Rng rng(11);
  std::vector<RationalQ> lf, lg;
  for (int r = 0; r < 3; ++r) {
    lf.push_back(RationalQ(testutil::random_laurent(rng, 2)));
    lg.push_back(RationalQ(testutil::random_laurent(rng, 2)));
  }
  CHECK(omega_infinity(lf, lg).is_zero());  // K_+ is isotropic

  zf[0] = RationalQ(LaurentPoly::one());
  zg[0] = RationalQ::inv_one_minus_q_pow(1);
  CHECK(omega_infinity(zf, zg) == LambdaElement::scalar(Rational(-1)));
  std::vector<RationalQ> two(2);
  CHECK_THROWS_AS(omega_infinity(zf, two), std::invalid_argument);
}

TEST_CASE("twisted pairing") {
  LambdaElement one = LambdaElement::one();
  LambdaElement tau = LambdaElement::tau(1, 3);
  CHECK(twisted_pair(1, tau, one) == tau);
  CHECK(twisted_pair(2, one, one) == LambdaElement::scalar(Rational(2)));
  CHECK(twisted_pair(2, tau, one) == tau.adams(2).scaled(Rational(2)));
}
