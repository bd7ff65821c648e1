#pragma once

#include <string>
#include <vector>

#include "qmat/rep.hpp"

namespace qmat {

// The five bounded irreducible families over the symmetric algebra. Tensor
// rank and phase count per family:
//   pi1: 0 legs, phases (phi on z22, psi on z11)
//   pi2: 1 leg,  phase phi on z22
//   pi3: 1 leg,  phase phi on z21 (and squared on z11)
//   pi4: 2 legs, phase phi on the diagonal part of z11
//   pi5: 3 legs, no phase
enum class SeriesId { pi1, pi2, pi3, pi4, pi5 };

int series_phase_arity(SeriesId id);
int series_leg_arity(SeriesId id);
std::string series_name(SeriesId id);
SeriesId series_from_name(const std::string& name);

// Builds one member of a series at a concrete q and truncation. dims must
// match the series leg arity, every entry >= 2. With alternate_z11 the two
// families whose z11 shape admits a second convention are built in that
// shape instead (pi1: unit modulus; pi3: no phase doubling); the alternate
// shapes fail specific relations and exist so tests can measure by how much.
RepInstance build_sym_series(SeriesId id, const std::vector<double>& phases,
                             double q, const std::vector<int>& dims,
                             bool alternate_z11 = false);

// Quantum SU(2) coordinate operators: the shift realization on l^2 and the
// one-dimensional counit. Entries t(i,j), 1-based. Products of entries are
// formed by operator composition.
struct Su2Rep {
  double q = 0.5;
  int dim = 1;
  bool counit = false;
  TruncOp t11, t12, t21, t22;

  const TruncOp& t(int i, int j) const;
};

enum class Su2Kind { shift, counit };
Su2Rep build_su2_rep(Su2Kind kind, double q, int dim);

// Weighted shift z e_n = sqrt(1 - t^{2n+2}) e_{n+1}: the unique Fock-type
// solution of z* z = t^2 z z* + (1 - t^2) with z* e_0 = 0.
TruncOp build_disc_fock(double t, int dim);

// The simplest representation triple of either algebra. size is the leg
// truncation for f1, the per-leg truncation for the symmetric f2, and the
// word degree bound for the full-algebra f2 (compressed vacuum module).
enum class SimplestKind { f0, f1, f2 };
RepInstance build_simplest(Algebra alg, SimplestKind kind, double q,
                           int size);

// Interleaved direct sum of two instances on equal single-leg spaces:
// summand A occupies even indices, B odd ones, so the top index margin
// covers both summands' truncation boundaries at once.
RepInstance direct_sum(const RepInstance& a, const RepInstance& b);

}  // namespace qmat
