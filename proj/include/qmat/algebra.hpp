#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qmat/laurent.hpp"

namespace qmat {

// The two *-algebras handled by this library: the symmetric quantum 2x2
// matrix space (three generators z11, z21, z22) and the full quantum 2x2
// matrix space (four generators z1^1, z1^2, z2^1, z2^2).
enum class Algebra { sym2, mat2 };

int generator_count(Algebra alg);  // unstarred generators
std::string algebra_name(Algebra alg);
Algebra algebra_from_name(const std::string& name);

// One generator, possibly starred. For sym2 the index pair is a matrix
// position restricted to {(1,1),(2,1),(2,2)}; z12 is not a symbol of its own
// (the expression parser expands it as q z21). For mat2 the pair is
// (subscript, superscript), all four combinations valid.
struct GeneratorSymbol {
  Algebra alg;
  int a = 1, b = 1;
  bool starred = false;

  GeneratorSymbol(Algebra alg_, int a_, int b_, bool starred_ = false);
  std::string str() const;
  bool operator==(const GeneratorSymbol&) const = default;
};

// Words are byte strings of letter codes. Codes enumerate the unstarred
// generators by rewrite precedence 0..n-1 and the starred ones n..2n-1 so
// that a word is in normal form exactly when its codes are non-decreasing:
//   sym2: 0=z22 1=z21 2=z11 3=z11* 4=z21* 5=z22*
//   mat2: 0=z2^2 1=z2^1 2=z1^2 3=z1^1 4=z1^1* 5=z1^2* 6=z2^1* 7=z2^2*
// The star involution on letters is c -> 2n-1-c.
using Letter = std::uint8_t;
using Word = std::vector<Letter>;

Letter letter_code(const GeneratorSymbol& g);
GeneratorSymbol letter_symbol(Algebra alg, Letter c);
Letter letter_star(Algebra alg, Letter c);
bool letter_is_starred(Algebra alg, Letter c);
std::string letter_name(Algebra alg, Letter c);

// Graded lexicographic word order: shorter words first, ties broken by the
// leftmost differing letter code. Every rewrite strictly decreases it.
struct GradedLex {
  bool operator()(const Word& x, const Word& y) const {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  }
};

// Noncommutative polynomial: a finite LaurentScalar-combination of words.
// Multiplication concatenates words; no rewriting happens implicitly.
class NCPoly {
 public:
  explicit NCPoly(Algebra alg) : alg_(alg) {}
  NCPoly(Algebra alg, const Word& w, LaurentScalar c = LaurentScalar(1))
      : alg_(alg) {
    add_term(w, c);
  }
  static NCPoly scalar(Algebra alg, LaurentScalar c) {
    return NCPoly(alg, Word{}, std::move(c));
  }
  static NCPoly generator(const GeneratorSymbol& g) {
    return NCPoly(g.alg, Word{letter_code(g)});
  }

  Algebra algebra() const { return alg_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Word, LaurentScalar, GradedLex>& terms() const {
    return terms_;
  }
  LaurentScalar coeff(const Word& w) const;

  void add_term(const Word& w, const LaurentScalar& c);

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
  friend NCPoly operator*(const LaurentScalar& c, NCPoly p);
  bool operator==(const NCPoly& o) const {
    return alg_ == o.alg_ && terms_ == o.terms_;
  }

  // Reverses every word and stars every letter; coefficients are real so the
  // involution leaves them alone.
  NCPoly star() const;

  int max_degree() const;  // 0 for the zero polynomial
  std::string str() const;

 private:
  Algebra alg_;
  std::map<Word, LaurentScalar, GradedLex> terms_;
};

std::string word_str(Algebra alg, const Word& w);

}  // namespace qmat
