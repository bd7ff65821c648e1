#include "qmat/laurent.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qmat {

Rational rational_pow(const Rational& q, int k) {
  if (k == 0) return 1;
  if (q == 0) throw std::domain_error("rational_pow: q must be nonzero");
  Rational base = k > 0 ? q : Rational(q.get_den(), q.get_num());
  int n = k > 0 ? k : -k;
  Rational out = 1;
  while (n > 0) {
    if (n & 1) out *= base;
    base *= base;
    n >>= 1;
  }
  out.canonicalize();
  return out;
}

LaurentScalar::LaurentScalar(int constant) {
  if (constant != 0) terms_[0] = constant;
}

LaurentScalar::LaurentScalar(const Rational& constant) {
  if (constant != 0) terms_[0] = constant;
}

LaurentScalar LaurentScalar::q_power(int k, const Rational& coeff) {
  LaurentScalar s;
  if (coeff != 0) s.terms_[k] = coeff;
  return s;
}

void LaurentScalar::prune(int k) {
  auto it = terms_.find(k);
  if (it != terms_.end() && it->second == 0) terms_.erase(it);
}

LaurentScalar& LaurentScalar::operator+=(const LaurentScalar& o) {
  for (const auto& [k, c] : o.terms_) {
    terms_[k] += c;
    prune(k);
  }
  return *this;
}

LaurentScalar& LaurentScalar::operator-=(const LaurentScalar& o) {
  for (const auto& [k, c] : o.terms_) {
    terms_[k] -= c;
    prune(k);
  }
  return *this;
}

LaurentScalar LaurentScalar::operator-() const {
  LaurentScalar out;
  for (const auto& [k, c] : terms_) out.terms_[k] = -c;
  return out;
}

LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) {
  LaurentScalar out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      out.terms_[ka + kb] += ca * cb;
      out.prune(ka + kb);
    }
  return out;
}

double LaurentScalar::eval(double q) const {
  double out = 0;
  for (const auto& [k, c] : terms_) out += c.get_d() * std::pow(q, k);
  return out;
}

Rational LaurentScalar::eval_exact(const Rational& q) const {
  Rational out = 0;
  for (const auto& [k, c] : terms_) out += c * rational_pow(q, k);
  out.canonicalize();
  return out;
}

int LaurentScalar::min_exponent() const {
  if (terms_.empty()) throw std::logic_error("min_exponent of zero scalar");
  return terms_.begin()->first;
}

int LaurentScalar::max_exponent() const {
  if (terms_.empty()) throw std::logic_error("max_exponent of zero scalar");
  return terms_.rbegin()->first;
}

std::string LaurentScalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    if (k == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << " ";
      os << "q";
      if (k != 1) os << "^" << k;
    }
  }
  return os.str();
}

}  // namespace qmat
