#pragma once

#include <functional>
#include <optional>
#include <random>

#include "qmat/algebra.hpp"

namespace qmat {

// A defining relation, stored as lhs - rhs so that it vanishes identically in
// the algebra. `name` is the human-readable equation it came from.
struct NamedRelation {
  std::string name;
  NCPoly poly;
};

// Oriented rewriting system for one algebra. Every rule has a two-letter
// leading word (a descent a > b in letter codes) and a replacement whose
// words are strictly smaller in graded-lex order, which the constructor
// checks; that ordering argument is what makes normal_form terminate.
// Confluence is not proven here, it is exercised by the strategy-randomizing
// tests.
class Presentation {
 public:
  static const Presentation& get(Algebra alg);

  Algebra algebra() const { return alg_; }

  // Replacement for the descent (a, b), or nullptr when (a, b) is ordered.
  const NCPoly* rule(Letter a, Letter b) const;

  // Relations as displayed in the source presentation (lhs - rhs form).
  // They generate the same two-sided ideal as the full rule table; the rules
  // missing from this list are their images under the star involution.
  const std::vector<NamedRelation>& defining_relations() const {
    return relations_;
  }

 private:
  Presentation(Algebra alg);
  void add_rule(Letter a, Letter b, NCPoly replacement);
  void validate() const;

  Algebra alg_;
  std::vector<std::optional<NCPoly>> table_;  // index a * 2n + b
  std::vector<NamedRelation> relations_;
};

// Picks which reducible term/position to rewrite next. Position is an index
// into the word such that (w[i], w[i+1]) is a descent.
struct RewriteStrategy {
  // Given the word and the list of descent positions, return the chosen one.
  std::function<std::size_t(const Word&, const std::vector<std::size_t>&)>
      pick_position;
  // Whether to process the graded-lex largest pending word first (false:
  // smallest first). Randomized strategies flip this per step.
  std::function<bool()> largest_first = [] { return false; };
};

RewriteStrategy leftmost_strategy();
RewriteStrategy random_strategy(std::uint64_t seed);

NCPoly normal_form(const NCPoly& p);
NCPoly normal_form(const NCPoly& p, const RewriteStrategy& strategy);

bool is_normal_word(const Word& w);

// True when lhs and rhs are the same element of the algebra, decided by
// exact rewriting of the difference.
bool check_identity(const NCPoly& lhs, const NCPoly& rhs);

// The printed adjoint cross-relations of the full matrix algebra carry the
// off-diagonal generator un-transposed in their trailing term; that variant
// is inconsistent with the torus symmetry and fails on honest
// representations. Exposed so tests and reports can demonstrate the failure.
std::vector<NamedRelation> mat2_adjoint_cross_printed_variant();

}  // namespace qmat
