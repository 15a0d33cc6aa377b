#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace bigj;
using testutil::Rng;

TEST_CASE("rational text round trip") {
  CHECK(to_string(Rational(3) / 6) == "1/2");
  CHECK(to_string(Rational(-4)) == "-4");
  CHECK(parse_rational("7/3") == Rational(7) / 3);
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1) == PolyQ{Rational(-1), Rational(1)});
  // Division-free oracle: prod_{d | n} Phi_d == q^n - 1.
  for (int n : {2, 3, 4, 6, 8, 12}) {
    PolyQ prod{Rational(1)};
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) prod = poly_mul(prod, cyclotomic_poly(d));
    PolyQ expect(static_cast<size_t>(n) + 1, Rational(0));
    expect[0] = -1;
    expect[static_cast<size_t>(n)] = 1;
    CHECK(prod == expect);
  }
  CHECK(cyclotomic_poly(4) == PolyQ{Rational(1), Rational(0), Rational(1)});
  CHECK(cyclotomic_poly(6) == PolyQ{Rational(1), Rational(-1), Rational(1)});
}

TEST_CASE("cyclotomic arithmetic examples") {
  Cyclotomic z4 = Cyclotomic::zeta(4);
  CHECK(z4 * z4 == Cyclotomic(Rational(-1)));

  Cyclotomic z3 = Cyclotomic::zeta(3);
  Cyclotomic x = Cyclotomic(Rational(1)) + z3;
  Cyclotomic xi = x.inv();
  CHECK(x * xi == Cyclotomic(Rational(1)));  // multiply-back oracle
  CHECK(xi == -z3);

  CHECK(Cyclotomic::zeta(2).embed(6) == Cyclotomic(Rational(-1)));
}

TEST_CASE("roots of unity are primitive") {
  for (int m = 1; m <= 12; ++m) {
    Cyclotomic z = Cyclotomic::zeta(m);
    Cyclotomic p(Rational(1));
    for (int j = 1; j <= m; ++j) {
      p = p * z;
      if (j < m) CHECK(p != Cyclotomic(Rational(1)));
    }
    CHECK(p == Cyclotomic(Rational(1)));
  }
}

TEST_CASE("field axioms on randomized triples") {
  Rng rng(20260809);
  for (int m : {1, 2, 3, 4, 5, 6, 8, 12}) {
    for (int iter = 0; iter < 4; ++iter) {
      Cyclotomic a = testutil::random_cyclotomic(rng, m);
      Cyclotomic b = testutil::random_cyclotomic(rng, m);
      Cyclotomic c = testutil::random_cyclotomic(rng, m);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      if (!a.is_zero()) CHECK(a * a.inv() == Cyclotomic(Rational(1)));
    }
  }
}

TEST_CASE("mixed-order arithmetic embeds into the lcm") {
  Cyclotomic z4 = Cyclotomic::zeta(4);
  Cyclotomic z6 = Cyclotomic::zeta(6);
  Cyclotomic s = z4 * z6;
  CHECK(s == Cyclotomic::zeta(12, 3 + 2));  // z12^3 * z12^2
  CHECK_THROWS_AS(Cyclotomic::zeta(4).embed(6), std::domain_error);
}

TEST_CASE("conjugation is an involutive ring homomorphism") {
  Rng rng(7);
  for (int m : {3, 4, 5, 8, 12}) {
    Cyclotomic a = testutil::random_cyclotomic(rng, m);
    Cyclotomic b = testutil::random_cyclotomic(rng, m);
    CHECK(a.conj().conj() == a);
    CHECK((a + b).conj() == a.conj() + b.conj());
    CHECK((a * b).conj() == a.conj() * b.conj());
  }
  CHECK(Cyclotomic::zeta(5).conj() == Cyclotomic::zeta(5, 4));
}

TEST_CASE("inversion of zero rejected") {
  CHECK_THROWS_AS(Cyclotomic().inv(), std::domain_error);
}

TEST_CASE("cyclotomic rendering") {
  Cyclotomic x = Cyclotomic(Rational(1) / 2) + Cyclotomic(Rational(3)) * Cyclotomic::zeta(4);
  CHECK(x.to_string() == "1/2 + 3*z4");
  CHECK(Cyclotomic().to_string() == "0");
}
