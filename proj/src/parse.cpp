#include "qmat/parse.hpp"

#include <cctype>

namespace qmat {

ParseError::ParseError(const std::string& msg, std::size_t position)
    : std::runtime_error(msg + " at position " + std::to_string(position)),
      position_(position) {}

namespace {

class Parser {
 public:
  Parser(const std::string& text, Algebra alg) : text_(text), alg_(alg) {}

  NCPoly run() {
    NCPoly p = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char peek_at(std::size_t off) const {
    return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
  }

  bool starts_factor() const {
    char c = peek();
    return c == 'z' || c == 'q' || c == '(' ||
           std::isdigit(static_cast<unsigned char>(c));
  }

  long parse_uint() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digit");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1000000) fail("integer too large");
      ++pos_;
    }
    return v;
  }

  NCPoly parse_expr() {
    skip_ws();
    bool neg = false;
    while (peek() == '-') {
      neg = !neg;
      ++pos_;
      skip_ws();
    }
    NCPoly p = parse_term();
    if (neg) p = NCPoly::scalar(alg_, LaurentScalar(-1)) * p;
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      NCPoly rhs = parse_term();
      if (c == '+')
        p += rhs;
      else
        p -= rhs;
    }
    return p;
  }

  NCPoly parse_term() {
    skip_ws();
    NCPoly p = parse_factor();
    for (;;) {
      skip_ws();
      if (peek() == '.') {
        ++pos_;
        skip_ws();
        p = p * parse_factor();
        continue;
      }
      if (starts_factor()) {
        p = p * parse_factor();
        continue;
      }
      break;
    }
    return p;
  }

  // Postfix operators bind without intervening whitespace, so "z22* z22"
  // is star-then-product while "z22 * z22" is rejected.
  NCPoly parse_factor() {
    NCPoly p = parse_primary();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        p = p.star();
        continue;
      }
      if (c == '^') {
        ++pos_;
        bool neg = false;
        if (peek() == '-') {
          neg = true;
          ++pos_;
        }
        std::size_t at = pos_;
        long k = parse_uint();
        p = power(p, neg ? -k : k, at);
        continue;
      }
      break;
    }
    return p;
  }

  NCPoly power(const NCPoly& p, long k, std::size_t at) const {
    if (k >= 0) {
      NCPoly out = NCPoly::scalar(alg_, LaurentScalar(1));
      for (long i = 0; i < k; ++i) out = out * p;
      return out;
    }
    // Negative powers only for a single Laurent monomial (scalar term).
    const auto& ts = p.terms();
    if (ts.size() != 1 || !ts.begin()->first.empty())
      throw ParseError("negative power of a non-invertible expression", at);
    const LaurentScalar& c = ts.begin()->second;
    if (c.terms().size() != 1)
      throw ParseError("negative power of a non-invertible expression", at);
    const auto& [expnt, coeff] = *c.terms().begin();
    LaurentScalar inv =
        LaurentScalar::q_power(-expnt, Rational(coeff.get_den(),
                                                coeff.get_num()));
    NCPoly out = NCPoly::scalar(alg_, LaurentScalar(1));
    NCPoly base = NCPoly::scalar(alg_, inv);
    for (long i = 0; i < -k; ++i) out = out * base;
    return out;
  }

  NCPoly parse_primary() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      NCPoly p = parse_expr();
      skip_ws();
      if (peek() != ')') fail("expected )");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long num = parse_uint();
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        std::size_t at = pos_;
        long den = parse_uint();
        if (den == 0) throw ParseError("zero denominator", at);
        Rational r(num, den);
        r.canonicalize();
        return NCPoly::scalar(alg_, LaurentScalar(r));
      }
      return NCPoly::scalar(alg_, LaurentScalar(static_cast<int>(num)));
    }
    if (c == 'q') {
      ++pos_;
      return NCPoly::scalar(alg_, LaurentScalar::q_power(1));
    }
    if (c == 'z') return parse_generator();
    fail("expected a factor");
  }

  NCPoly parse_generator() {
    std::size_t at = pos_;
    ++pos_;  // 'z'
    int a = digit_index();
    if (alg_ == Algebra::sym2) {
      int b = digit_index();
      if (a == 1 && b == 2) {
        // Derived symbol of the symmetric algebra: z12 = q z21.
        return NCPoly::scalar(alg_, LaurentScalar::q_power(1)) *
               NCPoly::generator(GeneratorSymbol(alg_, 2, 1, false));
      }
      if (a == 1 && b == 1) {
        // Index pairs are row-major with row >= column.
        return NCPoly::generator(GeneratorSymbol(alg_, 1, 1, false));
      }
      if (a == 2 && (b == 1 || b == 2))
        return NCPoly::generator(GeneratorSymbol(alg_, a, b, false));
      throw ParseError("unknown generator for the symmetric algebra", at);
    }
    if (peek() != '^')
      throw ParseError("full-algebra generators are written z<sub>^<sup>",
                       pos_);
    ++pos_;
    int b = digit_index();
    return NCPoly::generator(GeneratorSymbol(alg_, a, b, false));
  }

  int digit_index() {
    char c = peek();
    if (c != '1' && c != '2') fail("generator index must be 1 or 2");
    ++pos_;
    return c - '0';
  }

  const std::string& text_;
  Algebra alg_;
  std::size_t pos_ = 0;
};

}  // namespace

NCPoly parse_expression(const std::string& text, Algebra alg) {
  return Parser(text, alg).run();
}

}  // namespace qmat
