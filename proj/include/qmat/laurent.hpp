#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

namespace qmat {

using Rational = mpq_class;

// q^k for integer k at an exact rational point. Throws for q = 0, k < 0.
Rational rational_pow(const Rational& q, int k);

// Exact scalar: a finite sum  sum_k c_k q^k  with rational c_k and k ranging
// over (possibly negative) integers. This is the coefficient ring for all
// symbolic computation; it is closed under the star involution (coefficients
// are real) so star only acts on words.
class LaurentScalar {
 public:
  LaurentScalar() = default;
  LaurentScalar(int constant);  // NOLINT: implicit by design, matches int math
  LaurentScalar(const Rational& constant);
  static LaurentScalar q_power(int k, const Rational& coeff = 1);

  bool is_zero() const { return terms_.empty(); }
  bool operator==(const LaurentScalar& o) const { return terms_ == o.terms_; }

  LaurentScalar& operator+=(const LaurentScalar& o);
  LaurentScalar& operator-=(const LaurentScalar& o);
  LaurentScalar operator-() const;
  friend LaurentScalar operator+(LaurentScalar a, const LaurentScalar& b) {
    a += b;
    return a;
  }
  friend LaurentScalar operator-(LaurentScalar a, const LaurentScalar& b) {
    a -= b;
    return a;
  }
  friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b);

  double eval(double q) const;
  Rational eval_exact(const Rational& q) const;

  // Lowest/highest exponent present; only valid when nonzero.
  int min_exponent() const;
  int max_exponent() const;

  // Grammar-compatible rendering, e.g. "1 - q^2", "3/4 q^-1". Zero prints "0".
  std::string str() const;

  const std::map<int, Rational>& terms() const { return terms_; }

 private:
  void prune(int k);
  std::map<int, Rational> terms_;
};

}  // namespace qmat
