#include "qmat/rep.hpp"

#include <sstream>
#include <stdexcept>

#include "qmat/presentation.hpp"

namespace qmat {

const TruncOp& RepInstance::unstarred_op(Letter l) const {
  auto it = gens.find(l);
  if (it == gens.end())
    throw std::invalid_argument("no operator stored for letter");
  return it->second;
}

TruncOp RepInstance::letter_op(Letter l) const {
  if (letter_is_starred(algebra, l))
    return unstarred_op(letter_star(algebra, l)).adjoint();
  return unstarred_op(l);
}

TruncOp RepInstance::generator_op(const GeneratorSymbol& g) const {
  if (g.alg != algebra) throw std::invalid_argument("algebra mismatch");
  return letter_op(letter_code(g));
}

Eigen::Index RepInstance::dim() const {
  Eigen::Index d = 1;
  for (int x : space) d *= x;
  return d;
}

void RepInstance::validate() const {
  if (q <= 0.0 || q >= 1.0)
    throw std::invalid_argument("q must lie in (0,1)");
  const int n = generator_count(algebra);
  if (static_cast<int>(gens.size()) != n)
    throw std::invalid_argument("wrong number of generator operators");
  for (const auto& [l, op] : gens) {
    if (l >= n) throw std::invalid_argument("starred letter stored in gens");
    if (op.factor_dims() != space)
      throw std::invalid_argument("operator space mismatch");
  }
  if (!legs.empty() && legs.size() != space.size())
    throw std::invalid_argument("leg profile arity mismatch");
}

int RepInstance::letter_shift(std::size_t leg, Letter l) const {
  if (leg < legs.size() && legs[leg].letter_shift >= 0)
    return legs[leg].letter_shift;
  Letter base = letter_is_starred(algebra, l) ? letter_star(algebra, l) : l;
  return unstarred_op(base).bandwidths()[leg];
}

TruncOp evaluate_word(const RepInstance& rep, const Word& w) {
  TruncOp out = TruncOp::identity(rep.space);
  for (Letter l : w) out = out * rep.letter_op(l);
  return out;
}

TruncOp evaluate_poly(const RepInstance& rep, const NCPoly& p) {
  if (p.algebra() != rep.algebra)
    throw std::invalid_argument("algebra mismatch");
  TruncOp out(rep.space);
  for (const auto& [w, c] : p.terms()) {
    Complex cv(c.eval(rep.q), 0.0);
    out += cv * evaluate_word(rep, w);
  }
  return out;
}

std::vector<int> interior_margins(const RepInstance& rep, const NCPoly& p) {
  std::vector<int> shifts(rep.space.size(), 0);
  for (const auto& [w, c] : p.terms()) {
    for (std::size_t k = 0; k < rep.space.size(); ++k) {
      int s = 0;
      for (Letter l : w) s += rep.letter_shift(k, l);
      shifts[k] = std::max(shifts[k], s);
    }
  }
  std::vector<int> margins(rep.space.size(), 0);
  for (std::size_t k = 0; k < rep.space.size(); ++k) {
    LegProfile prof = k < rep.legs.size() ? rep.legs[k] : LegProfile{};
    margins[k] = prof.margin_for(shifts[k]);
  }
  return margins;
}

std::vector<Eigen::Index> interior_for_poly(const RepInstance& rep,
                                            const NCPoly& p) {
  return interior_indices(rep.space, interior_margins(rep, p));
}

double poly_residual(const RepInstance& rep, const NCPoly& p) {
  TruncOp op = evaluate_poly(rep, p);
  double worst = 0.0;
  for (Eigen::Index j : interior_for_poly(rep, p))
    worst = std::max(worst, op.column(j).norm());
  return worst;
}

std::vector<RelationResidual> relation_residual_suite(
    const RepInstance& rep) {
  rep.validate();
  std::vector<RelationResidual> out;
  for (const auto& rel : Presentation::get(rep.algebra).defining_relations())
    out.push_back({rel.name, poly_residual(rep, rel.poly)});
  return out;
}

double max_relation_residual(const RepInstance& rep) {
  double worst = 0.0;
  for (const auto& r : relation_residual_suite(rep))
    worst = std::max(worst, r.residual);
  return worst;
}

std::string export_coordinate_text(const TruncOp& op) {
  std::ostringstream os;
  os.precision(17);
  const SpMat& m = op.matrix();
  for (int col = 0; col < m.outerSize(); ++col)
    for (SpMat::InnerIterator it(m, col); it; ++it)
      os << it.row() << " " << it.col() << " " << it.value().real() << " "
         << it.value().imag() << "\n";
  return os.str();
}

TruncOp import_coordinate_text(const std::string& text, Eigen::Index dim) {
  std::vector<Eigen::Triplet<Complex>> trips;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Eigen::Index r, c;
    double re, im;
    if (!(ls >> r >> c >> re >> im))
      throw std::invalid_argument("malformed coordinate line: " + line);
    if (r < 0 || c < 0 || r >= dim || c >= dim)
      throw std::invalid_argument("coordinate out of range: " + line);
    trips.emplace_back(r, c, Complex(re, im));
  }
  SpMat m(dim, dim);
  m.setFromTriplets(trips.begin(), trips.end());
  return TruncOp::from_sparse(std::move(m));
}

}  // namespace qmat
