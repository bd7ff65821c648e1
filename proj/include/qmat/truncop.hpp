#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <functional>
#include <memory>
#include <vector>

namespace qmat {

using Complex = std::complex<double>;
using SpMat = Eigen::SparseMatrix<Complex>;

// One Kronecker product of per-factor matrices, with a scalar in front.
struct KronTerm {
  Complex coeff;
  std::vector<SpMat> factors;
};

// Operator on a truncated tensor product of l^2(Z+) legs, stored as a sum
// of Kronecker terms. Composite basis order is lexicographic with the first
// factor slowest. Keeping the factored form is what makes relation residuals
// on large composites affordable: columns are sums of small outer products.
class TruncOp {
 public:
  TruncOp() = default;
  explicit TruncOp(std::vector<int> factor_dims);  // zero operator
  static TruncOp identity(const std::vector<int>& factor_dims);
  static TruncOp from_dense(const Eigen::MatrixXcd& m);
  static TruncOp from_sparse(SpMat m);
  static TruncOp from_term(std::vector<int> factor_dims, KronTerm term);

  const std::vector<int>& factor_dims() const { return factor_dims_; }
  Eigen::Index dim() const;
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<KronTerm>& terms() const { return terms_; }

  // Declared per-factor shift bounds; maintained conservatively through
  // arithmetic (max under addition, sum under products). The actual pattern
  // never exceeds them.
  const std::vector<int>& bandwidths() const { return bandwidths_; }
  std::vector<int> actual_bandwidths() const;

  TruncOp adjoint() const;
  Eigen::VectorXcd column(Eigen::Index j) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  const SpMat& matrix() const;  // materialized and cached
  Eigen::MatrixXcd dense() const;
  bool is_zero_op() const { return terms_.empty(); }

  TruncOp& operator+=(const TruncOp& o);
  TruncOp& operator-=(const TruncOp& o);
  friend TruncOp operator+(TruncOp a, const TruncOp& b) { return a += b; }
  friend TruncOp operator-(TruncOp a, const TruncOp& b) { return a -= b; }
  friend TruncOp operator*(Complex c, TruncOp a);
  friend TruncOp operator*(const TruncOp& a, const TruncOp& b);
  friend TruncOp tensor(const TruncOp& a, const TruncOp& b);

 private:
  void refresh_bandwidths();

  std::vector<int> factor_dims_;
  std::vector<int> bandwidths_;
  std::vector<KronTerm> terms_;
  mutable std::shared_ptr<const SpMat> cache_;
};

SpMat kron_sparse(const SpMat& a, const SpMat& b);
int scan_bandwidth(const SpMat& m);

// Single-leg builders. Amplitudes take the source index k.
SpMat diag_op(int dim, const std::function<Complex(int)>& f);
// e_k -> amp(k) e_{k+steps}, truncated at the top.
SpMat shift_up_op(int dim, int steps, const std::function<Complex(int)>& amp);
// e_k -> amp(k) e_{k-steps}; amp must vanish for k < steps to be meaningful,
// entries for k < steps are simply not emitted.
SpMat shift_down_op(int dim, int steps,
                    const std::function<Complex(int)>& amp);

// Composite indices whose factor indices stay at least margin[k] away from
// the top of factor k. Bottom indices are untouched: catalog shifts
// annihilate the bottom states exactly, so truncation only corrupts the top.
std::vector<Eigen::Index> interior_indices(const std::vector<int>& dims,
                                           const std::vector<int>& margins);

// Frobenius distance between materialized operators on the same space.
double op_distance(const TruncOp& a, const TruncOp& b);

}  // namespace qmat
