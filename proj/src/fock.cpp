#include "qmat/fock.hpp"

#include <stdexcept>

namespace qmat {

FockVector fock_vacuum() {
  FockVector v;
  v.emplace(Word{}, LaurentScalar(1));
  return v;
}

FockVector fock_basis_vector(const Word& w) {
  if (!is_normal_word(w)) throw std::invalid_argument("word not normal");
  FockVector v;
  v.emplace(w, LaurentScalar(1));
  return v;
}

FockVector fock_act_letter(Algebra alg, Letter l, const FockVector& v) {
  const int n = generator_count(alg);
  NCPoly p(alg);
  for (const auto& [w, c] : v) {
    Word lw;
    lw.reserve(w.size() + 1);
    lw.push_back(l);
    lw.insert(lw.end(), w.begin(), w.end());
    p.add_term(lw, c);
  }
  NCPoly nf = normal_form(p);
  FockVector out;
  for (const auto& [w, c] : nf.terms()) {
    if (!w.empty() && w.back() >= n) continue;  // starred tail kills |0>
    out.emplace(w, c);
  }
  return out;
}

FockVector fock_act(const GeneratorSymbol& g, const FockVector& v) {
  return fock_act_letter(g.alg, letter_code(g), v);
}

FockVector fock_act_poly(const NCPoly& p, const FockVector& v) {
  const Algebra alg = p.algebra();
  FockVector out;
  for (const auto& [w, c] : p.terms()) {
    FockVector cur = v;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      cur = fock_act_letter(alg, *it, cur);
    for (const auto& [bw, bc] : cur) {
      auto [pit, inserted] = out.try_emplace(bw, c * bc);
      if (!inserted) {
        pit->second += c * bc;
        if (pit->second.is_zero()) out.erase(pit);
      }
    }
  }
  return out;
}

LaurentScalar vacuum_expectation(const NCPoly& p) {
  NCPoly nf = normal_form(p);
  auto it = nf.terms().find(Word{});
  return it == nf.terms().end() ? LaurentScalar() : it->second;
}

namespace {

void enumerate_words(int n, int max_degree, Letter min_letter, Word& cur,
                     std::vector<Word>& out) {
  out.push_back(cur);
  if (static_cast<int>(cur.size()) == max_degree) return;
  for (Letter l = min_letter; l < n; ++l) {
    cur.push_back(l);
    enumerate_words(n, max_degree, l, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Word> normal_unstarred_words(Algebra alg, int max_degree) {
  std::vector<Word> out;
  Word cur;
  enumerate_words(generator_count(alg), max_degree, 0, cur, out);
  std::sort(out.begin(), out.end(), GradedLex());
  return out;
}

std::vector<std::vector<LaurentScalar>> fock_gram(Algebra alg,
                                                  int max_degree) {
  const std::vector<Word> basis = normal_unstarred_words(alg, max_degree);
  const std::size_t n = basis.size();
  std::vector<std::vector<LaurentScalar>> g(n,
                                            std::vector<LaurentScalar>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      // <0| w_i* w_j |0>: act the letters of w_i*, rightmost letter first,
      // on w_j|0>, then read off the vacuum coefficient. The rightmost
      // letter of w_i* is the star of the first letter of w_i.
      FockVector v = fock_basis_vector(basis[j]);
      for (Letter l : basis[i]) {
        if (v.empty()) break;
        v = fock_act_letter(alg, letter_star(alg, l), v);
      }
      auto vit = v.find(Word{});
      g[i][j] = vit == v.end() ? LaurentScalar() : vit->second;
      if (i != j) g[j][i] = g[i][j];
    }
  }
  return g;
}

bool fock_gram_positive_definite(Algebra alg, int max_degree,
                                 const Rational& q) {
  auto gl = fock_gram(alg, max_degree);
  const std::size_t n = gl.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = gl[i][j].eval_exact(q);
  // Symmetric elimination; positive definite iff every pivot is positive.
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) {
        a[i][j] -= f * a[k][j];
        a[i][j].canonicalize();
      }
    }
  }
  return true;
}

FockCompression::FockCompression(Algebra alg, int max_degree, double q)
    : alg_(alg), max_degree_(max_degree), q_(q) {
  basis_ = normal_unstarred_words(alg, max_degree);
  extended_ = normal_unstarred_words(alg, max_degree + 1);
  for (std::size_t i = 0; i < extended_.size(); ++i)
    extended_index_.emplace(extended_[i], i);

  auto gl = fock_gram(alg, max_degree + 1);
  const std::size_t n = basis_.size();
  const std::size_t m = extended_.size();
  Eigen::MatrixXd gram(n, n);
  gram_ext_.resize(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      gram_ext_(i, j) = gl[i][j].eval(q);
      if (j < n) gram(i, j) = gram_ext_(i, j);
    }
  llt_.compute(gram);
  if (llt_.info() != Eigen::Success)
    throw std::runtime_error("vacuum-module Gram not positive definite");
}

Eigen::MatrixXcd FockCompression::letter_matrix(Letter l) const {
  const std::size_t n = basis_.size();
  const std::size_t m = extended_.size();
  // Module action g . w_j expanded over words of degree <= max_degree + 1.
  Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    FockVector v = fock_act_letter(alg_, l, fock_basis_vector(basis_[j]));
    for (const auto& [w, c] : v) {
      auto it = extended_index_.find(w);
      if (it == extended_index_.end())
        throw std::logic_error("module action left the extended basis");
      coeffs(static_cast<Eigen::Index>(it->second),
             static_cast<Eigen::Index>(j)) = c.eval(q_);
    }
  }
  // <w_i, g w_j> in the word basis, then orthonormalize both sides:
  // M = L^-1 (G_ext C) L^-T with G = L L^T.
  Eigen::MatrixXd b = gram_ext_ * coeffs;
  Eigen::MatrixXd x = llt_.matrixL().solve(b);
  Eigen::MatrixXd mt = llt_.matrixL().solve(x.transpose());
  return mt.transpose().cast<std::complex<double>>();
}

Eigen::MatrixXcd FockCompression::generator_matrix(
    const GeneratorSymbol& g) const {
  if (g.alg != alg_) throw std::invalid_argument("algebra mismatch");
  return letter_matrix(letter_code(g));
}

}  // namespace qmat
