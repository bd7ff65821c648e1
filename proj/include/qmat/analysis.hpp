#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "qmat/orbit.hpp"
#include "qmat/rep.hpp"
#include "qmat/spectra.hpp"

namespace qmat {

// The commuting positive pair (g1 g1*, g0 g0*) built from letter codes 1
// and 0. Its joint spectrum carries the orbit data of the instance.
std::pair<TruncOp, TruncOp> diagonal_pair(const RepInstance& rep);

// Lattice parameter for spectrum matching: q itself for the symmetric
// algebra, sqrt(q) for the full one whose pair spectra live on the
// half-step lattice.
double lattice_q(const RepInstance& rep);

// Boundary margins covering the diagonal pair: two letters of shift per
// leg, mapped through each leg's profile.
std::vector<int> pair_margins(const RepInstance& rep);

// Per-index lattice labels read off a diagonal pair. Requires both pair
// products numerically diagonal (catalog families are exact). Indices
// whose classification does not land on a resolvable lattice site are left
// unresolved, so deep tails are excluded from structure checks instead of
// mislabeled.
struct SpectralLabels {
  std::vector<Classification> at;  // per flat basis index
  std::vector<char> resolved;     // lattice indices usable at this index
  double offdiag = 0.0;           // worst off-diagonal entry of the pair
};
SpectralLabels spectral_labels(const RepInstance& rep,
                               double label_tol = 1e-12, int window = 20);

// Entries of one generator connecting resolved labels displaced by exactly
// (dm, dn); everything else, including entries touching unresolved
// indices, is zeroed.
Eigen::MatrixXcd lattice_component(const RepInstance& rep, Letter l,
                                   const SpectralLabels& s, int dm, int dn);

// Largest off-pattern entry of one generator: max |entry| over resolved
// interior columns and resolved rows whose label displacement is outside
// allowed. The interior margin is the letter's own shift.
double transport_residual(const RepInstance& rep, Letter l,
                          const SpectralLabels& s,
                          const std::vector<std::pair<int, int>>& allowed);

// Orthonormal numerical joint kernel of the listed letter operators
// (starred codes welcome), restricted to interior vectors. The rank cut is
// tol relative to the stack's largest singular value; vectors come
// smallest singular value first.
std::vector<Eigen::VectorXcd> joint_kernel(const RepInstance& rep,
                                           const std::vector<Letter>& letters,
                                           double tol = 1e-9);

// Joint kernel of every starred generator; each vector generates a
// vacuum-type submodule.
std::vector<Eigen::VectorXcd> null_cyclic_vectors(const RepInstance& rep,
                                                  double tol = 1e-9);

// Compression to the span of all words of length <= depth in the
// generators and their adjoints applied to a unit vector. The result lives
// on a single leg graded by word length, with margins recording how many
// top grades one shift may corrupt. Throws when a word would cross the
// truncation boundary (depth too large for the instance).
struct CyclicCompression {
  RepInstance rep;
  Eigen::MatrixXcd basis;        // columns: orthonormal span basis
  std::vector<int> layer_sizes;  // new directions per word length 0..depth
  double leakage = 0.0;  // worst discarded near-in-span defect; clean cyclic
                         // modules sit at roundoff level
};
CyclicCompression cyclic_compress(const RepInstance& rep,
                                  const Eigen::VectorXcd& v, int depth);

struct FingerprintOptions {
  double tol = 1e-9;           // kernel and clustering tolerance
  double relation_tol = 1e-8;  // admissibility bound on the residual suite
  int window = 20;             // lattice search window
};

// Truncation-stable identity card: the lattice class of the diagonal
// pair's joint spectrum, the clustered multiplicity table, the eigenvalue
// phases of generators acting invariantly on the distinguished kernel
// (kernel of starred letter 0, else the first interior basis vector), and
// the space profile. Unitary conjugation and diagonal gauge change no
// field. Throws if the relation residual suite exceeds relation_tol.
struct Fingerprint {
  OrbitClass cls = OrbitClass::Inadmissible;
  double class_residual = 0.0;
  std::vector<ClusteredPair> table;
  std::vector<std::pair<std::string, double>> phases;  // name, angle [0,2pi)
  std::vector<int> space;
};
Fingerprint fingerprint(const RepInstance& rep,
                        const FingerprintOptions& opts = {});

// Strict comparison: equal classes, matching phase lists, and multiplicity
// tables with the same clustered values and counts. Space profiles are not
// compared; the table already reflects the truncation window.
bool fingerprint_match(const Fingerprint& a, const Fingerprint& b,
                       double tol);

// Unitary equivalence at truncation scale. False when class, phase lists,
// or clustered spectrum geometry differ. Otherwise blocks are cut per
// well-separated cluster on both sides and a least-squares intertwiner
// U g_a = g_b U is solved over those blocks; true when the solution is
// unitary with relative residual below tol. Throws when matching blocks
// have different dimensions (truncations out of step).
bool equivalent(const RepInstance& a, const RepInstance& b,
                double tol = 1e-6);

}  // namespace qmat
