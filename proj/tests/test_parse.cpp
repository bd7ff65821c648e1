#include <random>

#include "doctest.h"
#include "qmat/parse.hpp"
#include "qmat/presentation.hpp"

using namespace qmat;

namespace {

NCPoly gen(Algebra alg, int a, int b, bool st = false) {
  return NCPoly::generator(GeneratorSymbol(alg, a, b, st));
}

NCPoly random_poly(Algebra alg, std::mt19937_64& rng) {
  const int m = 2 * generator_count(alg);
  std::uniform_int_distribution<int> nterms(1, 4), wlen(0, 5), letter(0, m - 1),
      expnt(-2, 2), numer(-3, 3), denom(1, 4);
  NCPoly p(alg);
  int t = nterms(rng);
  for (int i = 0; i < t; ++i) {
    Word w(wlen(rng));
    for (auto& l : w) l = static_cast<Letter>(letter(rng));
    int num = numer(rng);
    if (num == 0) num = 1;
    Rational r(num, denom(rng));
    r.canonicalize();
    p.add_term(w, LaurentScalar::q_power(expnt(rng), r));
  }
  return p;
}

}  // namespace

TEST_CASE("words and scalars parse") {
  Algebra alg = Algebra::sym2;
  CHECK(parse_expression("z11 z21", alg) == gen(alg, 1, 1) * gen(alg, 2, 1));
  CHECK(parse_expression("q^-1", alg) ==
        NCPoly::scalar(alg, LaurentScalar::q_power(-1)));
  CHECK(parse_expression("3/4 q^-1", alg) ==
        NCPoly::scalar(alg, LaurentScalar::q_power(-1, Rational(3, 4))));
  CHECK(parse_expression("0", alg) == NCPoly(alg));
  CHECK(parse_expression("z22^3", alg) ==
        gen(alg, 2, 2) * gen(alg, 2, 2) * gen(alg, 2, 2));
  CHECK(parse_expression("z11 . z22", alg) == gen(alg, 1, 1) * gen(alg, 2, 2));
}

TEST_CASE("a displayed relation parses to its polynomial") {
  Algebra alg = Algebra::sym2;
  NCPoly p = parse_expression("z22* z22 - q^4 z22 z22* - 1 + q^4", alg);
  const auto& rels = Presentation::get(alg).defining_relations();
  CHECK(p == rels.back().poly);
  CHECK(normal_form(p).is_zero());
}

TEST_CASE("derived symbol z12 expands to q z21") {
  Algebra alg = Algebra::sym2;
  CHECK(parse_expression("z12", alg) ==
        NCPoly::scalar(alg, LaurentScalar::q_power(1)) * gen(alg, 2, 1));
  CHECK(parse_expression("z12*", alg) ==
        NCPoly::scalar(alg, LaurentScalar::q_power(1)) *
            gen(alg, 2, 1, true));
}

TEST_CASE("full-algebra generator syntax") {
  Algebra alg = Algebra::mat2;
  CHECK(parse_expression("z1^1* z2^2", alg) ==
        gen(alg, 1, 1, true) * gen(alg, 2, 2));
  CHECK(parse_expression("z1^1^2", alg) == gen(alg, 1, 1) * gen(alg, 1, 1));
  CHECK(parse_expression("z1^1*^2", alg) ==
        gen(alg, 1, 1, true) * gen(alg, 1, 1, true));
  CHECK(parse_expression("(z1^2)*", alg) == gen(alg, 1, 2, true));
}

TEST_CASE("signs parenthesization and unary minus") {
  Algebra alg = Algebra::sym2;
  NCPoly p = parse_expression("-q^2 z22 + (1 - q^2) z21", alg);
  NCPoly expected =
      NCPoly::scalar(alg, LaurentScalar() - LaurentScalar::q_power(2)) *
          gen(alg, 2, 2) +
      NCPoly::scalar(alg, LaurentScalar(1) - LaurentScalar::q_power(2)) *
          gen(alg, 2, 1);
  CHECK(p == expected);
  CHECK(parse_expression("2 (z11 + z22)^2", alg) ==
        NCPoly::scalar(alg, LaurentScalar(2)) *
            (gen(alg, 1, 1) + gen(alg, 2, 2)) *
            (gen(alg, 1, 1) + gen(alg, 2, 2)));
}

TEST_CASE("parse errors carry a position") {
  Algebra alg = Algebra::sym2;
  CHECK_THROWS_AS(parse_expression("z13", alg), ParseError);
  CHECK_THROWS_AS(parse_expression("z11 +", alg), ParseError);
  CHECK_THROWS_AS(parse_expression("(z11", alg), ParseError);
  CHECK_THROWS_AS(parse_expression("z11^-1", alg), ParseError);
  CHECK_THROWS_AS(parse_expression("z22 * z22", alg), ParseError);
  CHECK_THROWS_AS(parse_expression("z1^1", alg), ParseError);
  CHECK_THROWS_AS(parse_expression("z11", Algebra::mat2), ParseError);
  CHECK_THROWS_AS(parse_expression("1/0", alg), ParseError);
  try {
    parse_expression("z11 @ z22", alg);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("negative powers require invertible scalars") {
  Algebra alg = Algebra::sym2;
  CHECK(parse_expression("(2 q^3)^-2", alg) ==
        NCPoly::scalar(alg, LaurentScalar::q_power(-6, Rational(1, 4))));
  CHECK_THROWS_AS(parse_expression("(1 + q)^-1", alg), ParseError);
}

TEST_CASE("printing round-trips through the parser") {
  std::mt19937_64 rng(99);
  for (Algebra alg : {Algebra::sym2, Algebra::mat2}) {
    for (int i = 0; i < 200; ++i) {
      NCPoly p = random_poly(alg, rng);
      CAPTURE(p.str());
      CHECK(parse_expression(p.str(), alg) == p);
      NCPoly nf = normal_form(p);
      CHECK(parse_expression(nf.str(), alg) == nf);
    }
  }
}
