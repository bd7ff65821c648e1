#pragma once

#include <stdexcept>

#include "qmat/algebra.hpp"

namespace qmat {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Grammar:
//   expr    := ['-'] term (('+' | '-') term)*
//   term    := factor (['.'] factor)*          products by juxtaposition
//   factor  := primary ('*' | '^' ['-'] int)*  postfix, no space before them
//   primary := int ['/' int] | 'q' | generator | '(' expr ')'
// Generators are z11, z21, z22 (symmetric algebra; z12 expands to q z21)
// or z1^1, z1^2, z2^1, z2^2 (full algebra). Negative powers are accepted
// only on invertible scalars such as q.
NCPoly parse_expression(const std::string& text, Algebra alg);

}  // namespace qmat
