#include "doctest.h"
#include "qmat/algebra.hpp"

using namespace qmat;

namespace {
NCPoly gen(Algebra alg, int a, int b, bool st = false) {
  return NCPoly::generator(GeneratorSymbol(alg, a, b, st));
}
}  // namespace

TEST_CASE("letter codes mirror under star") {
  for (Algebra alg : {Algebra::sym2, Algebra::mat2}) {
    const int m = 2 * generator_count(alg);
    for (int c = 0; c < m; ++c) {
      Letter l = static_cast<Letter>(c);
      CHECK(letter_star(alg, letter_star(alg, l)) == l);
      CHECK(letter_is_starred(alg, l) == (c >= m / 2));
      GeneratorSymbol g = letter_symbol(alg, l);
      CHECK(letter_code(g) == l);
    }
  }
}

TEST_CASE("symmetric algebra has no z12 symbol") {
  CHECK_THROWS(GeneratorSymbol(Algebra::sym2, 1, 2, false));
  CHECK_NOTHROW(GeneratorSymbol(Algebra::mat2, 1, 2, false));
}

TEST_CASE("product concatenates words") {
  Algebra alg = Algebra::sym2;
  NCPoly p = gen(alg, 1, 1) * gen(alg, 2, 2);
  REQUIRE(p.term_count() == 1);
  const auto& [w, c] = *p.terms().begin();
  CHECK(w == Word{2, 0});  // z11 then z22 in letter codes
  CHECK(c == LaurentScalar(1));
}

TEST_CASE("star reverses and flips") {
  Algebra alg = Algebra::sym2;
  NCPoly p = gen(alg, 1, 1) * gen(alg, 2, 2);  // z11 z22
  NCPoly s = p.star();                         // z22* z11*
  REQUIRE(s.term_count() == 1);
  CHECK(s.terms().begin()->first == Word{5, 3});
  CHECK(s.star() == p);
}

TEST_CASE("scalar star fixes real coefficients") {
  Algebra alg = Algebra::mat2;
  NCPoly c = NCPoly::scalar(alg, LaurentScalar::q_power(-3, Rational(2, 7)));
  CHECK(c.star() == c);
}

TEST_CASE("addition merges and cancels") {
  Algebra alg = Algebra::sym2;
  NCPoly p = gen(alg, 2, 1) + gen(alg, 2, 1);
  REQUIRE(p.term_count() == 1);
  CHECK(p.coeff(Word{1}) == LaurentScalar(2));
  NCPoly z = p - p;
  CHECK(z.is_zero());
  CHECK(z.max_degree() == 0);
}

TEST_CASE("graded-lex orders by length then bytes") {
  GradedLex less;
  CHECK(less(Word{}, Word{0}));
  CHECK(less(Word{5}, Word{0, 0}));
  CHECK(less(Word{0, 1}, Word{0, 2}));
  CHECK(!less(Word{0, 2}, Word{0, 2}));
}

TEST_CASE("mixed-algebra arithmetic is rejected") {
  NCPoly a = gen(Algebra::sym2, 1, 1);
  NCPoly b = gen(Algebra::mat2, 1, 1);
  CHECK_THROWS(a + b);
  CHECK_THROWS(a * b);
}

TEST_CASE("printing compresses powers and parenthesizes sums") {
  Algebra alg = Algebra::sym2;
  NCPoly p = gen(alg, 2, 1) * gen(alg, 2, 1);
  CHECK(p.str() == "z21^2");
  NCPoly c = NCPoly::scalar(alg, LaurentScalar(1) - LaurentScalar::q_power(2));
  CHECK((c * gen(alg, 2, 2)).str() == "(1 - q^2) z22");
  CHECK(word_str(Algebra::mat2, Word{3, 3, 7}) == "z1^1^2 z2^2*");
  CHECK(NCPoly(alg).str() == "0");
}
