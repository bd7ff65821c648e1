#include "qmat/presentation.hpp"

#include <memory>
#include <stdexcept>

namespace qmat {

namespace {

LaurentScalar qp(int k, int num = 1, int den = 1) {
  return LaurentScalar::q_power(k, Rational(num, den));
}

NCPoly make_poly(Algebra alg,
                 const std::vector<std::pair<LaurentScalar, Word>>& terms) {
  NCPoly p(alg);
  for (const auto& [c, w] : terms) p.add_term(w, c);
  return p;
}

Word star_word(Algebra alg, const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& l : out) l = letter_star(alg, l);
  return out;
}

NCPoly star_poly(const NCPoly& p) { return p.star(); }

}  // namespace

Presentation::Presentation(Algebra alg) : alg_(alg) {
  const int m = 2 * generator_count(alg);
  table_.resize(static_cast<std::size_t>(m) * m);

  const LaurentScalar one = qp(0);
  const LaurentScalar q1 = qp(1);
  const LaurentScalar q2 = qp(2);
  const LaurentScalar q4 = qp(4);

  if (alg == Algebra::sym2) {
    // Letters: 0 z22, 1 z21, 2 z11, 3 z11*, 4 z21*, 5 z22*.
    const LaurentScalar c3 = qp(3) - qp(-1);            // q^3 - q^-1
    const LaurentScalar e2 = one - q2;                  // 1 - q^2
    const LaurentScalar e4 = one - q4;                  // 1 - q^4
    const LaurentScalar c41 = qp(6) + qp(4) - qp(2) - one;
    const LaurentScalar c42 = qp(4) - qp(2) - one + qp(-2);

    add_rule(2, 1, make_poly(alg, {{q2, {1, 2}}}));
    add_rule(1, 0, make_poly(alg, {{q2, {0, 1}}}));
    add_rule(2, 0, make_poly(alg, {{one, {0, 2}}, {c3, {1, 1}}}));

    add_rule(4, 3, make_poly(alg, {{q2, {3, 4}}}));
    add_rule(5, 4, make_poly(alg, {{q2, {4, 5}}}));
    add_rule(5, 3, make_poly(alg, {{one, {3, 5}}, {c3, {4, 4}}}));

    add_rule(3, 2, make_poly(alg, {{q4, {2, 3}},
                                   {c41, {1, 4}},
                                   {c42, {0, 5}},
                                   {e4, {}}}));
    add_rule(3, 1, make_poly(alg, {{q2, {1, 3}}, {c3, {0, 4}}}));
    add_rule(3, 0, make_poly(alg, {{one, {0, 3}}}));
    add_rule(4, 2, make_poly(alg, {{q2, {2, 4}}, {c3, {1, 5}}}));
    add_rule(4, 1, make_poly(alg, {{q2, {1, 4}},
                                   {LaurentScalar() - e2, {0, 5}},
                                   {e2, {}}}));
    add_rule(4, 0, make_poly(alg, {{q2, {0, 4}}}));
    add_rule(5, 2, make_poly(alg, {{one, {2, 5}}}));
    add_rule(5, 1, make_poly(alg, {{q2, {1, 5}}}));
    add_rule(5, 0, make_poly(alg, {{q4, {0, 5}}, {e4, {}}}));

    auto rel = [&](Letter a, Letter b, const char* name) {
      NCPoly lhs(alg);
      lhs.add_term(Word{a, b}, one);
      relations_.push_back({name, lhs - *rule(a, b)});
    };
    rel(2, 1, "z11 z21 = q^2 z21 z11");
    rel(1, 0, "z21 z22 = q^2 z22 z21");
    rel(2, 0, "z11 z22 = z22 z11 + (q^3 - q^-1) z21^2");
    rel(3, 2,
        "z11* z11 = q^4 z11 z11* + (q^6 + q^4 - q^2 - 1) z21 z21* + "
        "(q^4 - q^2 - 1 + q^-2) z22 z22* + 1 - q^4");
    rel(3, 1, "z11* z21 = q^2 z21 z11* + (q^3 - q^-1) z22 z21*");
    rel(3, 0, "z11* z22 = z22 z11*");
    rel(4, 0, "z21* z22 = q^2 z22 z21*");
    rel(4, 1, "z21* z21 = q^2 z21 z21* - (1 - q^2) z22 z22* + 1 - q^2");
    rel(5, 0, "z22* z22 = q^4 z22 z22* + 1 - q^4");
  } else {
    // Letters: 0 z2^2, 1 z2^1, 2 z1^2, 3 z1^1, 4 z1^1*, 5 z1^2*,
    //          6 z2^1*, 7 z2^2*.
    const LaurentScalar d = q1 - qp(-1);                // q - q^-1
    const LaurentScalar e = one - q2;                   // 1 - q^2
    const LaurentScalar f = qp(-2) + qp(0, -2) + q2;    // (q^-1 - q)^2

    add_rule(3, 2, make_poly(alg, {{q1, {2, 3}}}));
    add_rule(3, 1, make_poly(alg, {{q1, {1, 3}}}));
    add_rule(3, 0, make_poly(alg, {{one, {0, 3}}, {d, {1, 2}}}));
    add_rule(2, 1, make_poly(alg, {{one, {1, 2}}}));
    add_rule(2, 0, make_poly(alg, {{q1, {0, 2}}}));
    add_rule(1, 0, make_poly(alg, {{q1, {0, 1}}}));

    add_rule(5, 4, make_poly(alg, {{q1, {4, 5}}}));
    add_rule(6, 4, make_poly(alg, {{q1, {4, 6}}}));
    add_rule(7, 4, make_poly(alg, {{one, {4, 7}}, {d, {5, 6}}}));
    add_rule(6, 5, make_poly(alg, {{one, {5, 6}}}));
    add_rule(7, 5, make_poly(alg, {{q1, {5, 7}}}));
    add_rule(7, 6, make_poly(alg, {{q1, {6, 7}}}));

    add_rule(4, 3, make_poly(alg, {{q2, {3, 4}},
                                   {LaurentScalar() - e, {1, 6}},
                                   {LaurentScalar() - e, {2, 5}},
                                   {f, {0, 7}},
                                   {e, {}}}));
    add_rule(4, 2, make_poly(alg, {{q1, {2, 4}}, {d, {0, 6}}}));
    add_rule(4, 1, make_poly(alg, {{q1, {1, 4}}, {d, {0, 5}}}));
    add_rule(4, 0, make_poly(alg, {{one, {0, 4}}}));
    add_rule(5, 3, make_poly(alg, {{q1, {3, 5}}, {d, {1, 7}}}));
    add_rule(5, 2, make_poly(alg, {{q2, {2, 5}},
                                   {LaurentScalar() - e, {0, 7}},
                                   {e, {}}}));
    add_rule(5, 1, make_poly(alg, {{one, {1, 5}}}));
    add_rule(5, 0, make_poly(alg, {{q1, {0, 5}}}));
    add_rule(6, 3, make_poly(alg, {{q1, {3, 6}}, {d, {2, 7}}}));
    add_rule(6, 2, make_poly(alg, {{one, {2, 6}}}));
    add_rule(6, 1, make_poly(alg, {{q2, {1, 6}},
                                   {LaurentScalar() - e, {0, 7}},
                                   {e, {}}}));
    add_rule(6, 0, make_poly(alg, {{q1, {0, 6}}}));
    add_rule(7, 3, make_poly(alg, {{one, {3, 7}}}));
    add_rule(7, 2, make_poly(alg, {{q1, {2, 7}}}));
    add_rule(7, 1, make_poly(alg, {{q1, {1, 7}}}));
    add_rule(7, 0, make_poly(alg, {{q2, {0, 7}}, {e, {}}}));

    auto rel = [&](Letter a, Letter b, const char* name) {
      NCPoly lhs(alg);
      lhs.add_term(Word{a, b}, one);
      relations_.push_back({name, lhs - *rule(a, b)});
    };
    rel(3, 2, "z1^1 z1^2 = q z1^2 z1^1");
    rel(3, 1, "z1^1 z2^1 = q z2^1 z1^1");
    rel(2, 0, "z1^2 z2^2 = q z2^2 z1^2");
    rel(1, 0, "z2^1 z2^2 = q z2^2 z2^1");
    rel(2, 1, "z1^2 z2^1 = z2^1 z1^2");
    rel(3, 0, "z1^1 z2^2 = z2^2 z1^1 + (q - q^-1) z2^1 z1^2");
    rel(4, 3,
        "(z1^1)* z1^1 = q^2 z1^1 (z1^1)* - (1 - q^2) (z2^1 (z2^1)* + "
        "z1^2 (z1^2)*) + (q^-1 - q)^2 z2^2 (z2^2)* + 1 - q^2");
    rel(4, 2, "(z1^1)* z1^2 = q z1^2 (z1^1)* + (q - q^-1) z2^2 (z2^1)*");
    rel(4, 1, "(z1^1)* z2^1 = q z2^1 (z1^1)* + (q - q^-1) z2^2 (z1^2)*");
    rel(4, 0, "(z1^1)* z2^2 = z2^2 (z1^1)*");
    rel(5, 2, "(z1^2)* z1^2 = q^2 z1^2 (z1^2)* - (1 - q^2) z2^2 (z2^2)* "
              "+ 1 - q^2");
    rel(6, 1, "(z2^1)* z2^1 = q^2 z2^1 (z2^1)* - (1 - q^2) z2^2 (z2^2)* "
              "+ 1 - q^2");
    rel(6, 2, "(z2^1)* z1^2 = z1^2 (z2^1)*");
    rel(7, 2, "(z2^2)* z1^2 = q z1^2 (z2^2)*");
    rel(7, 1, "(z2^2)* z2^1 = q z2^1 (z2^2)*");
    rel(7, 0, "(z2^2)* z2^2 = q^2 z2^2 (z2^2)* + 1 - q^2");
  }

  validate();
}

void Presentation::add_rule(Letter a, Letter b, NCPoly replacement) {
  const int m = 2 * generator_count(alg_);
  table_[static_cast<std::size_t>(a) * m + b] = std::move(replacement);
}

const NCPoly* Presentation::rule(Letter a, Letter b) const {
  const int m = 2 * generator_count(alg_);
  const auto& slot = table_[static_cast<std::size_t>(a) * m + b];
  return slot ? &*slot : nullptr;
}

void Presentation::validate() const {
  const int m = 2 * generator_count(alg_);
  GradedLex less;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const NCPoly* r = rule(static_cast<Letter>(a), static_cast<Letter>(b));
      if (a <= b) {
        if (r) throw std::logic_error("rule on an ordered pair");
        continue;
      }
      if (!r) throw std::logic_error("missing rule for a descent pair");
      const Word lhs{static_cast<Letter>(a), static_cast<Letter>(b)};
      for (const auto& [w, c] : r->terms()) {
        if (!less(w, lhs))
          throw std::logic_error("replacement word not smaller than lhs");
        if (!is_normal_word(w))
          throw std::logic_error("replacement word not normal");
      }
      // The table must be closed under the star involution: the rule for the
      // starred descent is the star of the rule.
      const Word slhs = star_word(alg_, lhs);
      const NCPoly* sr = rule(slhs[0], slhs[1]);
      NCPoly lhs_poly(alg_);
      lhs_poly.add_term(lhs, LaurentScalar(1));
      NCPoly expected = star_poly(*r);
      NCPoly actual = *sr;
      if (!(expected == actual))
        throw std::logic_error("rule table not star-closed");
    }
  }
}

const Presentation& Presentation::get(Algebra alg) {
  static const Presentation sym(Algebra::sym2);
  static const Presentation mat(Algebra::mat2);
  return alg == Algebra::sym2 ? sym : mat;
}

bool is_normal_word(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] > w[i + 1]) return false;
  return true;
}

RewriteStrategy leftmost_strategy() {
  RewriteStrategy s;
  s.pick_position = [](const Word&, const std::vector<std::size_t>& ds) {
    return ds.front();
  };
  s.largest_first = [] { return true; };
  return s;
}

RewriteStrategy random_strategy(std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  RewriteStrategy s;
  s.pick_position = [rng](const Word&, const std::vector<std::size_t>& ds) {
    std::uniform_int_distribution<std::size_t> dist(0, ds.size() - 1);
    return ds[dist(*rng)];
  };
  s.largest_first = [rng] { return (*rng)() & 1u; };
  return s;
}

NCPoly normal_form(const NCPoly& p, const RewriteStrategy& strategy) {
  const Presentation& pres = Presentation::get(p.algebra());
  NCPoly result(p.algebra());
  std::map<Word, LaurentScalar, GradedLex> pending(p.terms().begin(),
                                                   p.terms().end());
  while (!pending.empty()) {
    auto it = strategy.largest_first() ? std::prev(pending.end())
                                       : pending.begin();
    const Word w = it->first;
    const LaurentScalar c = it->second;
    pending.erase(it);
    if (c.is_zero()) continue;

    std::vector<std::size_t> descents;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] > w[i + 1]) descents.push_back(i);
    if (descents.empty()) {
      result.add_term(w, c);
      continue;
    }

    const std::size_t pos = strategy.pick_position(w, descents);
    const NCPoly* r = pres.rule(w[pos], w[pos + 1]);
    for (const auto& [rw, rc] : r->terms()) {
      Word nw;
      nw.reserve(w.size() - 2 + rw.size());
      nw.insert(nw.end(), w.begin(), w.begin() + pos);
      nw.insert(nw.end(), rw.begin(), rw.end());
      nw.insert(nw.end(), w.begin() + pos + 2, w.end());
      LaurentScalar add = c * rc;
      auto [pit, inserted] = pending.try_emplace(std::move(nw), add);
      if (!inserted) {
        pit->second += add;
        if (pit->second.is_zero()) pending.erase(pit);
      }
    }
  }
  return result;
}

NCPoly normal_form(const NCPoly& p) {
  return normal_form(p, leftmost_strategy());
}

bool check_identity(const NCPoly& lhs, const NCPoly& rhs) {
  return normal_form(lhs - rhs).is_zero();
}

std::vector<NamedRelation> mat2_adjoint_cross_printed_variant() {
  const Algebra alg = Algebra::mat2;
  const LaurentScalar one(1), q1 = LaurentScalar::q_power(1);
  const LaurentScalar d = q1 - LaurentScalar::q_power(-1);
  std::vector<NamedRelation> out;
  {
    NCPoly p(alg);
    p.add_term(Word{4, 2}, one);
    p.add_term(Word{2, 4}, LaurentScalar() - q1);
    p.add_term(Word{0, 5}, LaurentScalar() - d);
    out.push_back(
        {"(z1^1)* z1^2 = q z1^2 (z1^1)* + (q - q^-1) z2^2 (z1^2)*  "
         "[printed variant]",
         std::move(p)});
  }
  {
    NCPoly p(alg);
    p.add_term(Word{4, 1}, one);
    p.add_term(Word{1, 4}, LaurentScalar() - q1);
    p.add_term(Word{0, 6}, LaurentScalar() - d);
    out.push_back(
        {"(z1^1)* z2^1 = q z2^1 (z1^1)* + (q - q^-1) z2^2 (z2^1)*  "
         "[printed variant]",
         std::move(p)});
  }
  return out;
}

}  // namespace qmat
