#include "doctest.h"

#include <cmath>

#include "qmat/catalog.hpp"
#include "qmat/spectra.hpp"

using namespace qmat;

namespace {

const Letter L22 = 0, L21 = 1, L11 = 2;  // sym2 letter codes

double relation_residual_named(const RepInstance& rep,
                               const std::string& needle) {
  for (const auto& r : relation_residual_suite(rep))
    if (r.name.find(needle) != std::string::npos) return r.residual;
  throw std::runtime_error("no relation matches " + needle);
}

}  // namespace

TEST_CASE("series arities and names") {
  CHECK(series_phase_arity(SeriesId::pi1) == 2);
  CHECK(series_phase_arity(SeriesId::pi4) == 1);
  CHECK(series_phase_arity(SeriesId::pi5) == 0);
  CHECK(series_leg_arity(SeriesId::pi1) == 0);
  CHECK(series_leg_arity(SeriesId::pi4) == 2);
  CHECK(series_leg_arity(SeriesId::pi5) == 3);
  for (auto id : {SeriesId::pi1, SeriesId::pi2, SeriesId::pi3, SeriesId::pi4,
                  SeriesId::pi5})
    CHECK(series_from_name(series_name(id)) == id);
  CHECK_THROWS_AS(series_from_name("pi6"), std::invalid_argument);

  CHECK_THROWS_AS(build_sym_series(SeriesId::pi2, {}, 0.5, {8}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_sym_series(SeriesId::pi2, {0.0}, 0.5, {8, 8}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_sym_series(SeriesId::pi2, {0.0}, 0.5, {1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_sym_series(SeriesId::pi2, {0.0}, 0.5, {8}, true),
                  std::invalid_argument);
}

TEST_CASE("series formulas: frozen matrix entries") {
  const double q = 0.5;

  auto p2 = build_sym_series(SeriesId::pi2, {0.0}, q, {6});
  CHECK(p2.unstarred_op(L11).dense()(1, 0).real() ==
        doctest::Approx(1.9364916731037085).epsilon(1e-14));
  CHECK(p2.unstarred_op(L21).is_zero_op());

  auto p5 = build_sym_series(SeriesId::pi5, {}, q, {4, 4, 4});
  // e_{0,0,0} -> sqrt(1-q^4) e_{1,0,0}; first leg slowest, stride 16.
  CHECK(p5.unstarred_op(L22).dense()(16, 0).real() ==
        doctest::Approx(std::sqrt(1.0 - 0.0625)));

  auto p1 = build_sym_series(SeriesId::pi1, {0.4, 1.3}, q, {});
  CHECK(p1.dim() == 1);
  CHECK(p1.unstarred_op(L21).is_zero_op());
  CHECK(p1.unstarred_op(L22).dense()(0, 0) == std::polar(1.0, 0.4));
  CHECK(p1.unstarred_op(L11).dense()(0, 0) == std::polar(1.0 / q, 1.3));

  auto p3 = build_sym_series(SeriesId::pi3, {0.0}, q, {6});
  CHECK(p3.unstarred_op(L11).dense()(0, 1).real() ==
        doctest::Approx(-std::sqrt(1.0 - 0.0625) / q));
  CHECK(p3.unstarred_op(L21).dense()(2, 2).real() == doctest::Approx(0.0625));
}

TEST_CASE("all five series pass the relation suite at three q values") {
  for (double q : {0.3, 0.5, 0.8}) {
    for (double phi : {0.0, M_PI / 3.0}) {
      CHECK(max_relation_residual(
                build_sym_series(SeriesId::pi1, {phi, 0.9}, q, {})) < 1e-12);
      CHECK(max_relation_residual(
                build_sym_series(SeriesId::pi2, {phi}, q, {12})) < 1e-12);
      CHECK(max_relation_residual(
                build_sym_series(SeriesId::pi3, {phi}, q, {12})) < 1e-12);
      CHECK(max_relation_residual(
                build_sym_series(SeriesId::pi4, {phi}, q, {12, 12})) < 1e-12);
    }
    CHECK(max_relation_residual(
              build_sym_series(SeriesId::pi5, {}, q, {12, 12, 12})) < 1e-12);
  }
}

TEST_CASE("residuals do not grow with truncation") {
  double prev = -1.0;
  for (int d : {8, 12, 16}) {
    double r = max_relation_residual(
        build_sym_series(SeriesId::pi3, {0.3}, 0.5, {d}));
    if (prev >= 0.0) CHECK(r <= prev + 1e-13);
    prev = r;
  }
}

TEST_CASE("alternate z11 shapes fail exactly the advertised relations") {
  for (double q : {0.3, 0.5}) {
    auto lit1 = build_sym_series(SeriesId::pi1, {0.0, 0.7}, q, {}, true);
    const double expected = std::pow(1.0 / q - q, 2) * (1.0 + q * q);
    CHECK(relation_residual_named(lit1, "z11* z11") ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  // At q = 0.5 the failure is 2.8125 = (q^-1 - q)^2 (1 + q^2).
  auto lit1 = build_sym_series(SeriesId::pi1, {0.2, 0.7}, 0.5, {}, true);
  CHECK(relation_residual_named(lit1, "z11* z11") == doctest::Approx(2.8125));

  auto lit3 = build_sym_series(SeriesId::pi3, {M_PI / 3.0}, 0.5, {10}, true);
  CHECK(relation_residual_named(lit3, "z11 z22") > 1e-3);
  auto fixed3 = build_sym_series(SeriesId::pi3, {M_PI / 3.0}, 0.5, {10});
  CHECK(relation_residual_named(fixed3, "z11 z22") < 1e-13);
  // The two conventions coincide at phase zero.
  auto a = build_sym_series(SeriesId::pi3, {0.0}, 0.5, {10}, true);
  auto b = build_sym_series(SeriesId::pi3, {0.0}, 0.5, {10});
  CHECK(op_distance(a.unstarred_op(L11), b.unstarred_op(L11)) == 0.0);
}

TEST_CASE("phase covariance: phases ride the advertised matrix parts") {
  const double q = 0.5, phi = 1.1;
  auto z0 = build_sym_series(SeriesId::pi3, {0.0}, q, {8});
  auto zp = build_sym_series(SeriesId::pi3, {phi}, q, {8});
  CHECK(op_distance(zp.unstarred_op(L21),
                    std::polar(1.0, phi) * z0.unstarred_op(L21)) < 1e-15);
  CHECK(op_distance(zp.unstarred_op(L11),
                    std::polar(1.0, 2.0 * phi) * z0.unstarred_op(L11)) <
        1e-15);
  CHECK(op_distance(zp.unstarred_op(L22), z0.unstarred_op(L22)) == 0.0);

  auto w0 = build_sym_series(SeriesId::pi4, {0.0}, q, {6, 6});
  auto wp = build_sym_series(SeriesId::pi4, {phi}, q, {6, 6});
  CHECK(op_distance(wp.unstarred_op(L21), w0.unstarred_op(L21)) == 0.0);
  CHECK(op_distance(wp.unstarred_op(L22), w0.unstarred_op(L22)) == 0.0);
  // z11 splits into a diagonal part (which carries the phase) and an
  // off-diagonal part (which does not).
  Eigen::MatrixXcd m0 = w0.unstarred_op(L11).dense();
  Eigen::MatrixXcd mp = wp.unstarred_op(L11).dense();
  Eigen::MatrixXcd d0 = m0.diagonal().asDiagonal();
  Eigen::MatrixXcd expect = std::polar(1.0, phi) * d0 + (m0 - d0);
  CHECK((mp - expect).norm() < 1e-14);
}

TEST_CASE("su2 coordinate operators") {
  const double q = 0.5;
  auto pi = build_su2_rep(Su2Kind::shift, q, 8);
  CHECK(pi.t21.dense()(3, 3).real() == doctest::Approx(-0.125));
  CHECK(pi.t22.dense()(1, 0).real() == doctest::Approx(std::sqrt(0.75)));
  CHECK(op_distance(pi.t11.adjoint(), pi.t22) == 0.0);
  // t11 t22 acts diagonally with entries 1 - q^{2n+2}.
  TruncOp prod = pi.t11 * pi.t22;
  CHECK(prod.dense()(0, 0).real() == doctest::Approx(0.75));
  CHECK(prod.dense()(2, 2).real() == doctest::Approx(1.0 - std::pow(q, 6)));

  auto eps = build_su2_rep(Su2Kind::counit, q, 1);
  CHECK(eps.dim == 1);
  CHECK(eps.t12.is_zero_op());
  CHECK(eps.t21.is_zero_op());
  CHECK(eps.t(1, 1).dense()(0, 0) == Complex(1.0));
  CHECK_THROWS_AS(pi.t(0, 1), std::invalid_argument);
}

TEST_CASE("disc shift solves its relation and kills the vacuum") {
  const double t = 0.7;
  const int d = 10;
  TruncOp z = build_disc_fock(t, d);
  CHECK(z.dense()(1, 0).real() == doctest::Approx(std::sqrt(1.0 - t * t)));
  CHECK(z.adjoint().column(0).norm() == 0.0);

  TruncOp rel = z.adjoint() * z - Complex(t * t) * (z * z.adjoint()) -
                Complex(1.0 - t * t) * TruncOp::identity({d});
  for (Eigen::Index j = 0; j + 2 < d; ++j)
    CHECK(rel.column(j).norm() < 1e-15);
  CHECK_THROWS_AS(build_disc_fock(1.0, 4), std::invalid_argument);
}

TEST_CASE("simplest triple of the symmetric algebra") {
  const double q = 0.5;
  auto f0 = build_simplest(Algebra::sym2, SimplestKind::f0, q, 1);
  CHECK(f0.dim() == 1);
  CHECK(max_relation_residual(f0) < 1e-15);

  auto f1 = build_simplest(Algebra::sym2, SimplestKind::f1, q, 10);
  CHECK(max_relation_residual(f1) < 1e-12);
  auto p2 = build_sym_series(SeriesId::pi2, {0.0}, q, {10});
  for (Letter l : {L11, L21, L22})
    CHECK(op_distance(f1.unstarred_op(l), p2.unstarred_op(l)) == 0.0);

  auto f2 = build_simplest(Algebra::sym2, SimplestKind::f2, q, 5);
  auto p5 = build_sym_series(SeriesId::pi5, {}, q, {5, 5, 5});
  for (Letter l : {L11, L21, L22})
    CHECK(op_distance(f2.unstarred_op(l), p5.unstarred_op(l)) == 0.0);
}

TEST_CASE("simplest triple of the full algebra") {
  const double q = 0.5;
  auto f0 = build_simplest(Algebra::mat2, SimplestKind::f0, q, 1);
  CHECK(f0.dim() == 1);
  CHECK(max_relation_residual(f0) < 1e-15);

  auto f1 = build_simplest(Algebra::mat2, SimplestKind::f1, q, 10);
  CHECK(max_relation_residual(f1) < 1e-12);
  // Letters: 0 z2^2, 1 z2^1, 2 z1^2, 3 z1^1. Identity z2^2 fixes e_0; the
  // starred shifts annihilate it.
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(10);
  e0[0] = 1.0;
  CHECK((f1.unstarred_op(0).adjoint().apply(e0) - e0).norm() == 0.0);
  CHECK(f1.unstarred_op(3).adjoint().apply(e0).norm() == 0.0);
  CHECK(f1.unstarred_op(1).is_zero_op());
  CHECK(f1.unstarred_op(2).is_zero_op());
  CHECK(f1.unstarred_op(3).dense()(1, 0).real() ==
        doctest::Approx(std::sqrt(1.0 - q * q) / q));
}

TEST_CASE("compressed vacuum module instance") {
  const double q = 0.5;
  auto f2 = build_simplest(Algebra::mat2, SimplestKind::f2, q, 2);
  CHECK(f2.dim() == 15);  // words of degree <= 2 in four letters
  REQUIRE(f2.legs.size() == 1);
  CHECK(f2.legs[0].letter_shift == 1);
  CHECK(f2.legs[0].margins == std::vector<int>{0, 10, 14, 15});

  // First-level norms: ||g v||^2 = 1 - q^2 for every generator.
  for (Letter l = 0; l < 4; ++l)
    CHECK(f2.unstarred_op(l).column(0).squaredNorm() ==
          doctest::Approx(1.0 - q * q).epsilon(1e-12));

  CHECK(max_relation_residual(f2) < 1e-12);

  auto f2big = build_simplest(Algebra::mat2, SimplestKind::f2, q, 4);
  CHECK(f2big.dim() == 70);
  CHECK(max_relation_residual(f2big) < 1e-12);
  CHECK_THROWS_AS(build_simplest(Algebra::mat2, SimplestKind::f2, q, 0),
                  std::invalid_argument);
}

TEST_CASE("series joint spectra have the predicted shapes") {
  const double q = 0.5;
  auto pairs_of = [&](const RepInstance& rep) {
    TruncOp z21 = rep.unstarred_op(L21), z22 = rep.unstarred_op(L22);
    return joint_spectrum(z21 * z21.adjoint(), z22 * z22.adjoint()).pairs;
  };

  auto p1 = pairs_of(build_sym_series(SeriesId::pi1, {0.3, 0.4}, q, {}));
  REQUIRE(p1.size() == 1);
  CHECK(p1[0].first == 0.0);
  CHECK(p1[0].second == 1.0);

  auto p2 = pairs_of(build_sym_series(SeriesId::pi2, {0.0}, q, {8}));
  for (auto& [x1, x2] : p2) {
    CHECK(x1 == 0.0);
    CHECK(x2 == 1.0);
  }

  auto p3 = pairs_of(build_sym_series(SeriesId::pi3, {0.2}, q, {16}));
  REQUIRE(p3.size() == 16);
  for (auto& [x1, x2] : p3) {
    // x1 = q^{4k}, x2 = 1 - q^{4k} exactly.
    CHECK(x1 + x2 == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(p3.back().first == doctest::Approx(1.0));
  CHECK(p3.back().second == doctest::Approx(0.0));

  auto p4 = pairs_of(build_sym_series(SeriesId::pi4, {0.0}, q, {8, 8}));
  for (auto& [x1, x2] : p4) {
    // x1 = (1-q^{2k}) q^{4l}, x2 = 1 - q^{4l}: check x1/(1-x2) hits 1-q^{2k}.
    double scaled = x1 / (1.0 - x2);
    double k = std::log(std::max(1.0 - scaled, 1e-300)) / (2.0 * std::log(q));
    CHECK(k == doctest::Approx(std::round(k)).epsilon(1e-6));
  }

  // pi5: the third leg contributes pure multiplicity.
  auto p5rep = build_sym_series(SeriesId::pi5, {}, q, {6, 6, 6});
  auto clusters = cluster_pairs(pairs_of(p5rep), 1e-9);
  for (const auto& c : clusters) CHECK(c.multiplicity % 6 == 0);
}

TEST_CASE("interleaved direct sums") {
  const double q = 0.5;
  auto one = build_sym_series(SeriesId::pi1, {0.3, 1.1}, q, {});
  auto two = direct_sum(one, one);
  CHECK(two.dim() == 2);
  CHECK(max_relation_residual(two) < 1e-15);
  CHECK(commutant_dimension(two).dimension == 4);

  auto other = build_sym_series(SeriesId::pi1, {1.9, 1.1}, q, {});
  CHECK(commutant_dimension(direct_sum(one, other)).dimension == 2);

  // Mixed shift summands: the interleaved margin covers both boundaries.
  auto p2 = build_sym_series(SeriesId::pi2, {0.0}, q, {10});
  auto p3 = build_sym_series(SeriesId::pi3, {0.0}, q, {10});
  auto mix = direct_sum(p2, p3);
  CHECK(mix.dim() == 20);
  CHECK(max_relation_residual(mix) < 1e-12);
  CHECK(commutant_dimension(mix).dimension == 2);

  CHECK_THROWS_AS(direct_sum(p2, build_sym_series(SeriesId::pi5, {}, q,
                                                  {4, 4, 4})),
                  std::invalid_argument);
}
