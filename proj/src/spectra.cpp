#include "qmat/spectra.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace qmat {

namespace {

bool is_diagonal(const SpMat& m) {
  for (int col = 0; col < m.outerSize(); ++col)
    for (SpMat::InnerIterator it(m, col); it; ++it)
      if (it.row() != it.col() && it.value() != Complex(0.0)) return false;
  return true;
}

double hermiticity_defect(const Eigen::MatrixXcd& m) {
  return (m - m.adjoint()).norm();
}

std::vector<bool> interior_mask(const std::vector<int>& dims,
                                const std::vector<int>& margins) {
  Eigen::Index n = 1;
  for (int d : dims) n *= d;
  std::vector<bool> mask(n, false);
  for (Eigen::Index j : interior_indices(dims, margins)) mask[j] = true;
  return mask;
}

}  // namespace

JointSpectrumResult joint_spectrum(const TruncOp& a, const TruncOp& b,
                                   const JointSpectrumOptions& opts) {
  if (a.factor_dims() != b.factor_dims())
    throw std::invalid_argument("joint_spectrum: space mismatch");

  JointSpectrumResult res;

  const SpMat& ma = a.matrix();
  const SpMat& mb = b.matrix();
  if (is_diagonal(ma) && is_diagonal(mb)) {
    // Exact diagonal shortcut: read the pairs off, no clustering involved.
    for (Eigen::Index i = 0; i < a.dim(); ++i)
      res.pairs.emplace_back(ma.coeff(i, i).real(), mb.coeff(i, i).real());
    std::sort(res.pairs.begin(), res.pairs.end());
    return res;
  }

  Eigen::MatrixXcd da = a.dense(), db = b.dense();
  const double scale = std::max({1.0, da.norm(), db.norm()});
  if (hermiticity_defect(da) > opts.tol * scale ||
      hermiticity_defect(db) > opts.tol * scale)
    throw std::invalid_argument("joint_spectrum: input not self-adjoint");

  // Commutation is only meaningful away from the truncation boundary.
  std::vector<int> margins = opts.boundary_margins;
  if (margins.empty()) {
    margins.resize(a.factor_dims().size());
    for (std::size_t k = 0; k < margins.size(); ++k)
      margins[k] = a.bandwidths()[k] + b.bandwidths()[k];
  }
  Eigen::MatrixXcd comm = da * db - db * da;
  double worst = 0.0;
  for (Eigen::Index j : interior_indices(a.factor_dims(), margins))
    worst = std::max(worst, comm.col(j).norm());
  if (worst > opts.tol * scale * scale)
    throw std::invalid_argument(
        "joint_spectrum: operators do not commute on the interior");

  std::mt19937 rng(opts.seed);
  std::uniform_real_distribution<double> dist(1.0, 2.0);
  res.lambda = dist(rng);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(da + res.lambda * db);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("joint_spectrum: eigensolver failed");
  Eigen::VectorXd evals = es.eigenvalues();
  Eigen::MatrixXcd vecs = es.eigenvectors();

  // Refine clustered eigenspaces of A + lambda B against A so degenerate
  // mixtures get separated before taking Rayleigh quotients.
  const double cluster_tol = std::max(opts.tol * scale, 1e-12);
  Eigen::Index i = 0;
  while (i < evals.size()) {
    Eigen::Index jend = i + 1;
    while (jend < evals.size() && evals[jend] - evals[jend - 1] < cluster_tol)
      ++jend;
    if (jend - i > 1) {
      Eigen::MatrixXcd block = vecs.middleCols(i, jend - i);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> sub(
          block.adjoint() * da * block);
      vecs.middleCols(i, jend - i) = block * sub.eigenvectors();
    }
    i = jend;
  }

  std::vector<bool> mask = interior_mask(a.factor_dims(), margins);
  for (Eigen::Index k = 0; k < evals.size(); ++k) {
    Eigen::VectorXcd v = vecs.col(k);
    double boundary = 0.0;
    for (Eigen::Index r = 0; r < v.size(); ++r)
      if (!mask[r]) boundary += std::norm(v[r]);
    if (boundary > opts.boundary_mass) {
      ++res.discarded_boundary;
      continue;
    }
    double x1 = (v.adjoint() * da * v).value().real();
    double x2 = (v.adjoint() * db * v).value().real();
    res.pairs.emplace_back(x1, x2);
  }
  std::sort(res.pairs.begin(), res.pairs.end());
  return res;
}

std::vector<ClusteredPair> cluster_pairs(
    const std::vector<std::pair<double, double>>& pairs, double tol) {
  std::vector<ClusteredPair> out;
  for (const auto& [x1, x2] : pairs) {
    bool merged = false;
    for (auto& c : out) {
      if (std::abs(c.x1 - x1) <= tol && std::abs(c.x2 - x2) <= tol) {
        // Running mean keeps cluster centers stable.
        c.x1 = (c.x1 * c.multiplicity + x1) / (c.multiplicity + 1);
        c.x2 = (c.x2 * c.multiplicity + x2) / (c.multiplicity + 1);
        ++c.multiplicity;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back({x1, x2, 1});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.x1, a.x2) < std::tie(b.x1, b.x2);
  });
  return out;
}

CommutantEstimate commutant_dimension(const RepInstance& rep, double tol) {
  rep.validate();
  const Eigen::Index n = rep.dim();

  // Interior margin of one letter: the largest per-leg shift over all
  // generators, so every constrained commutator entry is truncation-clean.
  std::vector<int> margins(rep.space.size(), 0);
  for (const auto& [l, op] : rep.gens)
    for (std::size_t k = 0; k < rep.space.size(); ++k) {
      LegProfile prof = k < rep.legs.size() ? rep.legs[k] : LegProfile{};
      margins[k] =
          std::max(margins[k], prof.margin_for(rep.letter_shift(k, l)));
    }
  std::vector<Eigen::Index> interior = interior_indices(rep.space, margins);
  const std::size_t m = interior.size();

  std::vector<Eigen::MatrixXcd> ops;
  for (const auto& [l, op] : rep.gens) {
    ops.push_back(op.dense());
    ops.push_back(op.dense().adjoint());
  }

  // Unknown X is n x n. Constraints: (XG - GX)[i][j] = 0 for interior rows
  // i and every column j. Assembled sparse (2n entries per row), then the
  // singular values come from the normal matrix.
  std::vector<Eigen::Triplet<Complex>> trips;
  Eigen::Index row = 0;
  for (const auto& g : ops) {
    for (std::size_t a = 0; a < m; ++a) {
      const Eigen::Index i = interior[a];
      for (Eigen::Index j = 0; j < n; ++j) {
        // sum_k X(i,k) g(k,j) - g(i,k) X(k,j)
        for (Eigen::Index k = 0; k < n; ++k) {
          if (g(k, j) != Complex(0.0))
            trips.emplace_back(row, i * n + k, g(k, j));
          if (g(i, k) != Complex(0.0))
            trips.emplace_back(row, k * n + j, -g(i, k));
        }
        ++row;
      }
    }
  }
  SpMat sys(row, n * n);
  sys.setFromTriplets(trips.begin(), trips.end());

  Eigen::MatrixXcd normal = Eigen::MatrixXcd(SpMat(sys.adjoint() * sys));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(normal);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("commutant_dimension: eigensolver failed");

  CommutantEstimate est;
  const Eigen::Index vars = n * n;
  Eigen::VectorXd sv(vars);
  for (Eigen::Index k = 0; k < vars; ++k)
    sv[k] = std::sqrt(std::max(0.0, es.eigenvalues()[k]));  // ascending
  // Rank cut is relative to the largest singular value: eigenvalue noise in
  // the normal matrix scales with its norm, not with machine epsilon alone.
  const double cut = tol * std::max(1.0, sv[vars - 1]);
  Eigen::Index null_count = 0;
  while (null_count < vars && sv[null_count] < cut) ++null_count;
  est.dimension = static_cast<int>(null_count);
  est.largest_discarded = null_count > 0 ? sv[null_count - 1] : 0.0;
  est.smallest_kept = null_count < vars ? sv[null_count] : 0.0;
  return est;
}

}  // namespace qmat
