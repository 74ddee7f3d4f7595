#include <catch2/catch_amalgamated.hpp>

#include "plderham/polynomial.hpp"
#include "support.hpp"

using namespace plderham;

TEST_CASE("basic arithmetic and pruning") {
  Polynomial t1 = Polynomial::variable(2, 0);
  Polynomial t2 = Polynomial::variable(2, 1);
  Polynomial p = t1 * t1 + t2.scaled(rat(3)) - t1 * t1;
  REQUIRE(p == t2.scaled(rat(3)));
  REQUIRE((p - p).is_zero());
  REQUIRE(p.total_degree() == 1);
}

TEST_CASE("derivative and antiderivative invert each other") {
  plderham::testing::Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    Polynomial p = plderham::testing::rand_polynomial(rng, 3, 4, 4);
    for (int var = 0; var < 3; ++var) {
      REQUIRE(p.antiderivative(var).derivative(var) == p);
    }
  }
}

TEST_CASE("substitution composes with evaluation") {
  plderham::testing::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial p = plderham::testing::rand_polynomial(rng, 2, 3, 3);
    std::vector<Polynomial> images{plderham::testing::rand_polynomial(rng, 2, 2, 2),
                                   plderham::testing::rand_polynomial(rng, 2, 2, 2)};
    Polynomial q = p.substitute(images);
    std::vector<Rational> point{plderham::testing::rand_rational(rng),
                                plderham::testing::rand_rational(rng)};
    std::vector<Rational> mapped{images[0].evaluate(point), images[1].evaluate(point)};
    REQUIRE(q.evaluate(point) == p.evaluate(mapped));
  }
}

TEST_CASE("canonical rendering") {
  Polynomial t1 = Polynomial::variable(2, 0);
  Polynomial t2 = Polynomial::variable(2, 1);
  Polynomial p = Polynomial::constant(2, rat(1)) + t1 * t2.scaled(rat(-2)) + t1;
  REQUIRE(p.to_string() == "1 + t1 - 2*t1*t2");
  REQUIRE(Polynomial(3).to_string() == "0");
  REQUIRE(Polynomial::monomial(1, {2}, rat(1, 2)).to_string() == "1/2*t1^2");
}

TEST_CASE("monomial enumeration is degree-major") {
  auto monos = monomials_up_to(2, 2);
  REQUIRE(monos.size() == 6);
  REQUIRE(monos[0] == Polynomial::Exponents{0, 0});
  REQUIRE(monos[1] == Polynomial::Exponents{0, 1});
  REQUIRE(monos[2] == Polynomial::Exponents{1, 0});
  REQUIRE(monos[3] == Polynomial::Exponents{0, 2});
  // zero variables: only the empty monomial at degree 0
  REQUIRE(monomials_up_to(0, 3).size() == 1);
}
