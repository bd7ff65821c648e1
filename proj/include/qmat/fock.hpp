#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "qmat/presentation.hpp"

namespace qmat {

// Element of the vacuum module: finite combination of basis vectors w|0>
// indexed by normal unstarred words w. Starred generators annihilate |0>.
using FockVector = std::map<Word, LaurentScalar, GradedLex>;

FockVector fock_vacuum();
FockVector fock_basis_vector(const Word& w);

// Left action of one letter (starred allowed), exact. Terms whose normal
// word ends in a starred letter act as zero on the vacuum and are dropped.
FockVector fock_act_letter(Algebra alg, Letter l, const FockVector& v);
FockVector fock_act(const GeneratorSymbol& g, const FockVector& v);
FockVector fock_act_poly(const NCPoly& p, const FockVector& v);

// Coefficient of the empty word in the normal form: the vacuum state <0|p|0>.
LaurentScalar vacuum_expectation(const NCPoly& p);

// All normal unstarred words of degree <= max_degree, in graded-lex order.
// Counts are binomial: C(n + d - 1, d) words in degree d for n generators.
std::vector<Word> normal_unstarred_words(Algebra alg, int max_degree);

// Exact Gram matrix G[i][j] = <w_i|0>, w_j|0>> = <0| w_i* w_j |0> over the
// graded-lex word basis. Symmetric; block-diagonal across degrees because
// the relations preserve the starred/unstarred letter-count difference.
std::vector<std::vector<LaurentScalar>> fock_gram(Algebra alg,
                                                  int max_degree);

// Positive-definiteness of the Gram at an exact rational q, by fraction-free
// symmetric elimination (all leading principal minors positive).
bool fock_gram_positive_definite(Algebra alg, int max_degree,
                                 const Rational& q);

// Numeric compression of the vacuum module onto degrees <= max_degree at a
// concrete q. Matrices are written in the orthonormalized word basis, so the
// compression of g* is exactly the conjugate transpose of the compression
// of g.
class FockCompression {
 public:
  FockCompression(Algebra alg, int max_degree, double q);

  Algebra algebra() const { return alg_; }
  int max_degree() const { return max_degree_; }
  double q() const { return q_; }
  const std::vector<Word>& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }

  Eigen::MatrixXcd letter_matrix(Letter l) const;
  Eigen::MatrixXcd generator_matrix(const GeneratorSymbol& g) const;

 private:
  Algebra alg_;
  int max_degree_;
  double q_;
  std::vector<Word> basis_;      // degree <= max_degree
  std::vector<Word> extended_;   // degree <= max_degree + 1
  std::map<Word, std::size_t, GradedLex> extended_index_;
  Eigen::MatrixXd gram_ext_;     // rows: basis, cols: extended
  Eigen::LLT<Eigen::MatrixXd> llt_;  // of the basis Gram block
};

}  // namespace qmat
