#include "doctest.h"

#include "qmat/parse.hpp"
#include "qmat/presentation.hpp"
#include "qmat/rep.hpp"
#include "test_support.hpp"

using namespace qmat;
using namespace qmat::testsupport;

TEST_CASE("scalar words evaluate to scaled identities") {
  RepInstance rep = ladder_rep(0.5, 6);
  NCPoly one = NCPoly::scalar(Algebra::sym2, LaurentScalar(1));
  TruncOp op = evaluate_poly(rep, one);
  CHECK(op_distance(op, TruncOp::identity(rep.space)) == 0.0);

  NCPoly half = NCPoly::scalar(Algebra::sym2, LaurentScalar(Rational(1, 2)));
  CHECK(op_distance(evaluate_poly(rep, half),
                    Complex(0.5) * TruncOp::identity(rep.space)) == 0.0);
}

TEST_CASE("ladder model: generator images and a diagonal word") {
  const double q = 0.5;
  RepInstance rep = ladder_rep(q, 8);
  rep.validate();

  TruncOp z21 = evaluate_poly(rep, parse_expression("z21", Algebra::sym2));
  CHECK(z21.dense()(0, 0) == Complex(1.0));
  CHECK(z21.dense()(1, 1) == Complex(0.25));
  CHECK(z21.dense()(2, 2) == Complex(0.0625));

  // z11 e_1 = -q^{-1} sqrt(1-q^4) e_0
  TruncOp z11 = evaluate_poly(rep, parse_expression("z11", Algebra::sym2));
  CHECK(z11.dense()(0, 1).real() ==
        doctest::Approx(-std::sqrt(1.0 - 0.0625) / q));

  // Starred letters act as adjoints.
  TruncOp z22s = evaluate_poly(rep, parse_expression("z22*", Algebra::sym2));
  CHECK(op_distance(z22s, rep.unstarred_op(0).adjoint()) == 0.0);
}

TEST_CASE("ladder model satisfies the full relation suite") {
  for (double q : {0.3, 0.5, 0.8}) {
    RepInstance rep = ladder_rep(q, 12);
    auto suite = relation_residual_suite(rep);
    CHECK(suite.size() == 9);
    for (const auto& r : suite) {
      INFO(r.name);
      CHECK(r.residual < 1e-12);
    }
  }
}

TEST_CASE("interior margins absorb the accumulated shifts of each word") {
  RepInstance rep = ladder_rep(0.5, 12);
  NCPoly p = parse_expression("z22* z22 - q^4 z22 z22* - (1 - q^4)",
                              Algebra::sym2);
  // Both length-two words shift by 2 on the single leg.
  CHECK(interior_margins(rep, p) == std::vector<int>{2});
  CHECK(interior_for_poly(rep, p).size() == 10);
  CHECK(poly_residual(rep, p) < 1e-15);

  NCPoly diag = parse_expression("z21", Algebra::sym2);
  CHECK(interior_margins(rep, diag) == std::vector<int>{0});
}

TEST_CASE("leg profiles override shift units and margin tables") {
  LegProfile plain;
  CHECK(plain.margin_for(0) == 0);
  CHECK(plain.margin_for(3) == 3);
  CHECK(plain.margin_for(-2) == 0);

  LegProfile graded;
  graded.letter_shift = 1;
  graded.margins = {0, 3, 5};
  CHECK(graded.margin_for(1) == 3);
  CHECK(graded.margin_for(2) == 5);
  CHECK(graded.margin_for(9) == 5);  // clamped at the table end

  RepInstance rep = ladder_rep(0.5, 12);
  rep.legs = {graded};
  // Every letter now counts 1 regardless of its bandwidth, so the
  // length-two relation words get margin_for(2) = 5.
  NCPoly p = parse_expression("z22* z22", Algebra::sym2);
  CHECK(interior_margins(rep, p) == std::vector<int>{5});
}

TEST_CASE("zero model keeps only constant terms as residuals") {
  RepInstance rep = zero_rep(Algebra::sym2, 0.5, 4);
  bool found = false;
  for (const auto& r : relation_residual_suite(rep)) {
    if (r.name.find("z22* z22") != std::string::npos) {
      found = true;
      CHECK(r.residual == doctest::Approx(1.0 - 0.0625).epsilon(1e-14));
    }
  }
  CHECK(found);
}

TEST_CASE("validate rejects malformed instances") {
  RepInstance rep = ladder_rep(0.5, 6);
  rep.q = 1.0;
  CHECK_THROWS_AS(rep.validate(), std::invalid_argument);
  rep.q = 0.5;
  rep.gens.erase(1);
  CHECK_THROWS_AS(rep.validate(), std::invalid_argument);

  RepInstance other = ladder_rep(0.5, 6);
  NCPoly mat_word = parse_expression("z1^1", Algebra::mat2);
  CHECK_THROWS_AS(evaluate_poly(other, mat_word), std::invalid_argument);
}

TEST_CASE("coordinate text round-trips operators exactly") {
  RepInstance rep = ladder_rep(0.5, 7);
  TruncOp op = evaluate_poly(
      rep, parse_expression("z11 z22 + q z21^2", Algebra::sym2));
  std::string text = export_coordinate_text(op);
  TruncOp back = import_coordinate_text(text, op.dim());
  CHECK(op_distance(op, back) == 0.0);

  CHECK_THROWS_AS(import_coordinate_text("0 1 1.0 qq", 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(import_coordinate_text("5 0 1.0 0.0", 3),
                  std::invalid_argument);
}
