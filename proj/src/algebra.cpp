#include "qmat/algebra.hpp"

#include <sstream>
#include <stdexcept>

namespace qmat {

int generator_count(Algebra alg) { return alg == Algebra::sym2 ? 3 : 4; }

std::string algebra_name(Algebra alg) {
  return alg == Algebra::sym2 ? "sym" : "mat2";
}

Algebra algebra_from_name(const std::string& name) {
  if (name == "sym" || name == "sym2") return Algebra::sym2;
  if (name == "mat2" || name == "mat") return Algebra::mat2;
  throw std::invalid_argument("unknown algebra: " + name);
}

GeneratorSymbol::GeneratorSymbol(Algebra alg_, int a_, int b_, bool starred_)
    : alg(alg_), a(a_), b(b_), starred(starred_) {
  if (a < 1 || a > 2 || b < 1 || b > 2)
    throw std::invalid_argument("generator index out of range");
  if (alg == Algebra::sym2 && a == 1 && b == 2)
    throw std::invalid_argument(
        "z12 is not a symbol of the symmetric algebra; write q z21");
}

std::string GeneratorSymbol::str() const {
  std::ostringstream os;
  if (alg == Algebra::sym2)
    os << "z" << a << b;
  else
    os << "z" << a << "^" << b;
  if (starred) os << "*";
  return os.str();
}

namespace {

// Unstarred precedence ranks; rewriting sorts words toward ascending rank.
int rank_of(const GeneratorSymbol& g) {
  if (g.alg == Algebra::sym2) {
    if (g.a == 2 && g.b == 2) return 0;
    if (g.a == 2 && g.b == 1) return 1;
    return 2;  // z11
  }
  // mat2, indices are (subscript, superscript)
  if (g.a == 2 && g.b == 2) return 0;
  if (g.a == 2 && g.b == 1) return 1;
  if (g.a == 1 && g.b == 2) return 2;
  return 3;  // z1^1
}

GeneratorSymbol rank_symbol(Algebra alg, int rank) {
  if (alg == Algebra::sym2) {
    switch (rank) {
      case 0: return {alg, 2, 2};
      case 1: return {alg, 2, 1};
      case 2: return {alg, 1, 1};
    }
  } else {
    switch (rank) {
      case 0: return {alg, 2, 2};
      case 1: return {alg, 2, 1};
      case 2: return {alg, 1, 2};
      case 3: return {alg, 1, 1};
    }
  }
  throw std::invalid_argument("bad generator rank");
}

}  // namespace

Letter letter_code(const GeneratorSymbol& g) {
  int n = generator_count(g.alg);
  int r = rank_of(g);
  return static_cast<Letter>(g.starred ? 2 * n - 1 - r : r);
}

GeneratorSymbol letter_symbol(Algebra alg, Letter c) {
  int n = generator_count(alg);
  if (c >= 2 * n) throw std::invalid_argument("letter code out of range");
  bool st = c >= n;
  GeneratorSymbol g = rank_symbol(alg, st ? 2 * n - 1 - c : c);
  g.starred = st;
  return g;
}

Letter letter_star(Algebra alg, Letter c) {
  int n = generator_count(alg);
  if (c >= 2 * n) throw std::invalid_argument("letter code out of range");
  return static_cast<Letter>(2 * n - 1 - c);
}

bool letter_is_starred(Algebra alg, Letter c) {
  return c >= generator_count(alg);
}

std::string letter_name(Algebra alg, Letter c) {
  return letter_symbol(alg, c).str();
}

LaurentScalar NCPoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? LaurentScalar() : it->second;
}

void NCPoly::add_term(const Word& w, const LaurentScalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  if (alg_ != o.alg_) throw std::invalid_argument("algebra mismatch");
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  if (alg_ != o.alg_) throw std::invalid_argument("algebra mismatch");
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
  if (a.alg_ != b.alg_) throw std::invalid_argument("algebra mismatch");
  NCPoly out(a.alg_);
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(w, ca * cb);
    }
  return out;
}

NCPoly operator*(const LaurentScalar& c, NCPoly p) {
  NCPoly out(p.alg_);
  for (const auto& [w, pc] : p.terms_) out.add_term(w, c * pc);
  return out;
}

NCPoly NCPoly::star() const {
  NCPoly out(alg_);
  for (const auto& [w, c] : terms_) {
    Word sw(w.rbegin(), w.rend());
    for (Letter& l : sw) l = letter_star(alg_, l);
    out.add_term(sw, c);
  }
  return out;
}

int NCPoly::max_degree() const {
  int d = 0;
  for (const auto& [w, c] : terms_) d = std::max<int>(d, w.size());
  return d;
}

std::string word_str(Algebra alg, const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (i) os << " ";
    os << letter_name(alg, w[i]);
    if (j - i > 1) os << "^" << (j - i);
    i = j;
  }
  return os.str();
}

std::string NCPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    std::string cs = c.str();
    bool negated = false;
    if (c.terms().size() == 1 && cs.front() == '-') {
      negated = true;
      cs = cs.substr(1);
    }
    if (first)
      os << (negated ? "-" : "");
    else
      os << (negated ? " - " : " + ");
    first = false;
    bool wrap = c.terms().size() > 1;
    bool trivial = !wrap && cs == "1";
    if (wrap)
      os << "(" << cs << ")";
    else if (!trivial || w.empty())
      os << cs;
    if (!w.empty()) {
      if (!trivial || wrap) os << " ";
      os << word_str(alg_, w);
    }
  }
  return os.str();
}

}  // namespace qmat
