#include "doctest.h"
#include "qmat/laurent.hpp"

using namespace qmat;

TEST_CASE("laurent arithmetic is exact") {
  LaurentScalar a = LaurentScalar::q_power(2) - LaurentScalar::q_power(-2);
  LaurentScalar q = LaurentScalar::q_power(1);
  LaurentScalar b = q * a;  // q^3 - q^-1
  CHECK(b == LaurentScalar::q_power(3) - LaurentScalar::q_power(-1));
  CHECK((b - b).is_zero());
  CHECK(b.min_exponent() == -1);
  CHECK(b.max_exponent() == 3);
}

TEST_CASE("laurent cancellation removes stored zeros") {
  LaurentScalar a = LaurentScalar::q_power(4, Rational(3, 4));
  LaurentScalar b = LaurentScalar::q_power(4, Rational(-3, 4));
  LaurentScalar s = a + b;
  CHECK(s.is_zero());
  CHECK(s.terms().empty());
}

TEST_CASE("evaluation at rational q is exact") {
  // (1 - q^4) at q = 1/2 is 15/16.
  LaurentScalar c = LaurentScalar(1) - LaurentScalar::q_power(4);
  CHECK(c.eval_exact(Rational(1, 2)) == Rational(15, 16));
  CHECK(c.eval(0.5) == doctest::Approx(15.0 / 16.0).epsilon(1e-15));
}

TEST_CASE("negative exponents evaluate as inverse powers") {
  LaurentScalar c = LaurentScalar::q_power(-2);
  CHECK(c.eval_exact(Rational(1, 2)) == Rational(4));
  CHECK(rational_pow(Rational(2, 3), -2) == Rational(9, 4));
}

TEST_CASE("printed form folds signs and exponents") {
  LaurentScalar c = LaurentScalar(1) - LaurentScalar::q_power(2);
  CHECK(c.str() == "1 - q^2");
  LaurentScalar d = LaurentScalar::q_power(-1, Rational(3, 4));
  CHECK(d.str() == "3/4 q^-1");
  CHECK(LaurentScalar().str() == "0");
  CHECK(LaurentScalar::q_power(1).str() == "q");
}
