#pragma once

#include "qmat/rep.hpp"

namespace qmat {

struct JointSpectrumOptions {
  double tol = 1e-9;
  // Eigenvectors carrying more than this mass on boundary indices are
  // truncation artifacts and get dropped (set to 1.0 to keep everything).
  double boundary_mass = 0.25;
  std::vector<int> boundary_margins;  // empty: derive from bandwidths
  unsigned seed = 20250819;           // fixes the mixing parameter lambda
};

struct JointSpectrumResult {
  std::vector<std::pair<double, double>> pairs;  // one per kept eigenvector
  int discarded_boundary = 0;
  double lambda = 0.0;  // 0 when the diagonal shortcut was taken
};

// Simultaneous eigenvalue pairs of two commuting self-adjoint operators.
// Exactly diagonal inputs short-circuit to their diagonals; otherwise
// diagonalize A + lambda B for a seeded lambda in [1,2] and refine clustered
// eigenspaces against A. Throws if inputs fail the self-adjointness or
// interior-commutation checks at opts.tol.
JointSpectrumResult joint_spectrum(const TruncOp& a, const TruncOp& b,
                                   const JointSpectrumOptions& opts = {});

struct ClusteredPair {
  double x1 = 0.0, x2 = 0.0;
  int multiplicity = 0;
};

std::vector<ClusteredPair> cluster_pairs(
    const std::vector<std::pair<double, double>>& pairs, double tol);

struct CommutantEstimate {
  int dimension = 0;
  double smallest_kept = 0.0;      // smallest singular value above the cut
  double largest_discarded = 0.0;  // largest singular value below the cut
};

// Numeric commutant of the generator set: null-space dimension of the
// system [X, g] = 0, [X, g*] = 0 with commutator entries constrained on
// interior rows. The rank cut is tol relative to the largest singular
// value. A count of 1 is the irreducibility proxy.
CommutantEstimate commutant_dimension(const RepInstance& rep,
                                      double tol = 1e-7);

}  // namespace qmat
