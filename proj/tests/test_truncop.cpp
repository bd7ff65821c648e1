#include "doctest.h"

#include <random>

#include "qmat/truncop.hpp"

using namespace qmat;

namespace {

Eigen::MatrixXcd dense_kron(const Eigen::MatrixXcd& a,
                            const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd random_dense(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(d(rng), d(rng));
  return m;
}

}  // namespace

TEST_CASE("single-leg builders place entries where advertised") {
  auto up = shift_up_op(5, 2, [](int k) { return Complex(k + 1.0); });
  CHECK(up.coeff(2, 0) == Complex(1.0));
  CHECK(up.coeff(4, 2) == Complex(3.0));
  CHECK(up.nonZeros() == 3);
  CHECK(scan_bandwidth(up) == 2);

  auto down = shift_down_op(5, 1, [](int k) { return Complex(2.0 * k); });
  CHECK(down.coeff(0, 1) == Complex(2.0));
  CHECK(down.coeff(3, 4) == Complex(8.0));
  CHECK(down.nonZeros() == 4);

  auto dg = diag_op(4, [](int k) { return k == 2 ? Complex(0.0)
                                                 : Complex(1.0, k); });
  CHECK(dg.nonZeros() == 3);
  CHECK(scan_bandwidth(dg) == 0);
}

TEST_CASE("kron_sparse matches the dense Kronecker product") {
  std::mt19937 rng(7);
  Eigen::MatrixXcd a = random_dense(3, rng), b = random_dense(4, rng);
  SpMat ks = kron_sparse(a.sparseView(), b.sparseView());
  CHECK((Eigen::MatrixXcd(ks) - dense_kron(a, b)).norm() == doctest::Approx(0.0));
}

TEST_CASE("operator algebra agrees with dense arithmetic") {
  std::mt19937 rng(21);
  Eigen::MatrixXcd a0 = random_dense(3, rng), a1 = random_dense(4, rng);
  Eigen::MatrixXcd b0 = random_dense(3, rng), b1 = random_dense(4, rng);

  TruncOp A = tensor(TruncOp::from_dense(a0), TruncOp::from_dense(a1));
  TruncOp B = tensor(TruncOp::from_dense(b0), TruncOp::from_dense(b1));
  REQUIRE(A.factor_dims() == std::vector<int>{3, 4});
  REQUIRE(A.dim() == 12);

  Eigen::MatrixXcd da = dense_kron(a0, a1), db = dense_kron(b0, b1);
  CHECK((A.dense() - da).norm() < 1e-14);
  CHECK(((A + B).dense() - (da + db)).norm() < 1e-13);
  CHECK(((A - B).dense() - (da - db)).norm() < 1e-13);
  CHECK(((A * B).dense() - da * db).norm() < 1e-12);
  CHECK(((Complex(0.0, 2.0) * A).dense() - Complex(0.0, 2.0) * da).norm() <
        1e-13);
  CHECK((A.adjoint().dense() - da.adjoint()).norm() < 1e-14);

  TruncOp S = A + B;
  S += S;
  CHECK((S.dense() - 2.0 * (da + db)).norm() < 1e-12);

  CHECK((0.0 * A).is_zero_op());
  CHECK(TruncOp(std::vector<int>{3, 4}).is_zero_op());
  CHECK_THROWS_AS(A + TruncOp::identity({12}), std::invalid_argument);
}

TEST_CASE("column and apply agree with the materialized matrix") {
  std::mt19937 rng(5);
  TruncOp A = tensor(TruncOp::from_dense(random_dense(3, rng)),
                     TruncOp::from_dense(random_dense(2, rng)));
  TruncOp B = tensor(TruncOp::from_dense(random_dense(3, rng)),
                     TruncOp::from_dense(random_dense(2, rng)));
  TruncOp op = A * B + Complex(0.5, -1.0) * B;

  Eigen::MatrixXcd m = op.dense();
  for (Eigen::Index j = 0; j < op.dim(); ++j)
    CHECK((op.column(j) - m.col(j)).norm() < 1e-12);

  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Eigen::VectorXcd v(op.dim());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(d(rng), d(rng));
  CHECK((op.apply(v) - m * v).norm() < 1e-12);
  CHECK_THROWS_AS(op.apply(Eigen::VectorXcd::Zero(5)),
                  std::invalid_argument);
}

TEST_CASE("three-leg composite indexing keeps the first factor slowest") {
  // A acts only on leg 0, B only on leg 2; basis index is i0*6 + i1*3 + i2.
  SpMat up2 = shift_up_op(2, 1, [](int) { return Complex(1.0); });
  SpMat up3 = shift_up_op(3, 1, [](int) { return Complex(1.0); });
  SpMat id2(2, 2), id3(3, 3);
  id2.setIdentity();
  id3.setIdentity();

  TruncOp A = TruncOp::from_term({2, 2, 3}, {Complex(1.0), {up2, id2, id3}});
  CHECK(A.matrix().coeff(6, 0) == Complex(1.0));  // e_{0,0,0} -> e_{1,0,0}

  TruncOp B = TruncOp::from_term({2, 2, 3}, {Complex(1.0), {id2, id2, up3}});
  CHECK(B.matrix().coeff(1, 0) == Complex(1.0));  // e_{0,0,0} -> e_{0,0,1}

  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(12);
  v[0] = 1.0;
  CHECK((A.apply(v) - Eigen::VectorXcd(A.matrix() * v)).norm() == 0.0);
  CHECK(A.column(0)[6] == Complex(1.0));
}

TEST_CASE("declared bandwidths bound actual ones through arithmetic") {
  SpMat up = shift_up_op(6, 1, [](int k) { return Complex(1.0 + k); });
  SpMat dn = shift_down_op(6, 1, [](int) { return Complex(1.0); });
  TruncOp U = TruncOp::from_sparse(up), D = TruncOp::from_sparse(dn);

  TruncOp prod = U * U;          // declared 2
  CHECK(prod.bandwidths() == std::vector<int>{2});
  CHECK(prod.actual_bandwidths() == std::vector<int>{2});

  TruncOp mixed = U * D + D * U;  // declared 2, actually diagonal
  CHECK(mixed.bandwidths() == std::vector<int>{2});
  CHECK(mixed.actual_bandwidths() == std::vector<int>{0});

  TruncOp t = tensor(U, D);
  CHECK(t.bandwidths() == std::vector<int>{1, 1});

  // Honesty: no materialized entry may violate the declared bound.
  auto actual = (U * D * U).actual_bandwidths();
  auto declared = (U * D * U).bandwidths();
  for (std::size_t k = 0; k < actual.size(); ++k)
    CHECK(actual[k] <= declared[k]);
}

TEST_CASE("interior_indices walks the top margins only") {
  auto idx = interior_indices({4, 3}, {1, 0});
  // factor 0 restricted to 0..2, factor 1 unrestricted.
  REQUIRE(idx.size() == 9);
  CHECK(idx.front() == 0);
  CHECK(idx.back() == 2 * 3 + 2);

  auto all = interior_indices({5}, {0});
  CHECK(all.size() == 5);

  CHECK_THROWS_WITH_AS(interior_indices({3}, {3}),
                       "truncation too small: no interior vectors remain",
                       std::invalid_argument);
  CHECK_THROWS_AS(interior_indices({3, 3}, {1}), std::invalid_argument);
}

TEST_CASE("op_distance separates operators and vanishes on equals") {
  TruncOp I3 = TruncOp::identity({3});
  CHECK(op_distance(I3, I3) == 0.0);
  TruncOp J = Complex(2.0) * I3;
  CHECK(op_distance(I3, J) == doctest::Approx(std::sqrt(3.0)));
}
