#pragma once

#include <map>
#include <string>

#include "qmat/algebra.hpp"
#include "qmat/truncop.hpp"

namespace qmat {

// Boundary behaviour of one tensor leg. Plain l^2 legs translate an
// accumulated shift of s steps into an index margin of s. Legs whose basis
// is graded by something other than the index (the compressed vacuum
// module, graded by word degree) override both the per-letter shift unit
// and the shift -> margin table.
struct LegProfile {
  int letter_shift = -1;     // -1: read the letter's bandwidth on this leg
  std::vector<int> margins;  // margins[s]; empty means margin = s

  int margin_for(int shift) const {
    if (shift < 0) shift = 0;
    if (margins.empty()) return shift;
    if (shift >= static_cast<int>(margins.size())) return margins.back();
    return margins[shift];
  }
};

// A concrete *-representation at one truncation. Starred generators act as
// numeric adjoints of the stored unstarred operators.
struct RepInstance {
  Algebra algebra = Algebra::sym2;
  double q = 0.5;
  std::map<Letter, TruncOp> gens;  // keys are unstarred letter codes
  std::vector<std::pair<std::string, double>> phases;
  std::vector<int> space;
  std::vector<LegProfile> legs;  // sized like space; default profiles
  std::string provenance;

  const TruncOp& unstarred_op(Letter l) const;
  TruncOp letter_op(Letter l) const;  // adjoint for starred letters
  TruncOp generator_op(const GeneratorSymbol& g) const;
  Eigen::Index dim() const;
  void validate() const;

  // Per-leg shift contributed by one letter (starred letters shift like
  // their unstarred partners).
  int letter_shift(std::size_t leg, Letter l) const;
};

TruncOp evaluate_word(const RepInstance& rep, const Word& w);
TruncOp evaluate_poly(const RepInstance& rep, const NCPoly& p);

// Interior composite indices for a polynomial: per leg, the margin absorbs
// the largest accumulated shift over the polynomial's words.
std::vector<int> interior_margins(const RepInstance& rep, const NCPoly& p);
std::vector<Eigen::Index> interior_for_poly(const RepInstance& rep,
                                            const NCPoly& p);

struct RelationResidual {
  std::string name;
  double residual;
};

// Max interior column norm of every defining relation of the algebra.
std::vector<RelationResidual> relation_residual_suite(const RepInstance& rep);
double max_relation_residual(const RepInstance& rep);

// Residual of one arbitrary polynomial (same interior convention).
double poly_residual(const RepInstance& rep, const NCPoly& p);

// Coordinate text export: one "row col re im" line per stored entry,
// 0-based. The factor structure is not recoverable from coordinates, so
// imports come back on a single flat leg; callers keep dims as metadata.
std::string export_coordinate_text(const TruncOp& op);
TruncOp import_coordinate_text(const std::string& text, Eigen::Index dim);

}  // namespace qmat
