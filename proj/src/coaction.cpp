#include "qmat/coaction.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qmat {

namespace {

Letter sym_letter(int a, int b) {
  return letter_code(GeneratorSymbol(Algebra::sym2, a, b, false));
}

Letter mat_letter(int sub, int sup) {
  return letter_code(GeneratorSymbol(Algebra::mat2, sub, sup, false));
}

void check_leg(const Su2Rep& leg, double q) {
  if (leg.counit) return;
  if (leg.q != q)
    throw std::invalid_argument("leg q does not match the base q");
  const std::vector<int> want{leg.dim};
  for (const TruncOp* t : {&leg.t11, &leg.t12, &leg.t21, &leg.t22})
    if (t->factor_dims() != want)
      throw std::invalid_argument("leg operator dimension mismatch");
}

std::string leg_desc(const Su2Rep& leg) {
  if (leg.counit) return "eps";
  return "pi[" + std::to_string(leg.dim) + "]";
}

// Space bookkeeping shared by both coactions: base legs keep their
// profiles, every shift leg appends a plain profile.
RepInstance composite_shell(const RepInstance& base,
                            const std::vector<const Su2Rep*>& legs) {
  RepInstance out;
  out.algebra = base.algebra;
  out.q = base.q;
  out.space = base.space;
  out.legs = base.legs;
  out.legs.resize(base.space.size());
  out.phases = base.phases;
  for (const Su2Rep* leg : legs) {
    if (leg->counit) continue;
    out.space.push_back(leg->dim);
    out.legs.push_back(LegProfile{});
  }
  return out;
}

}  // namespace

RepInstance coact_sym(const RepInstance& base, const Su2Rep& leg) {
  if (base.algebra != Algebra::sym2)
    throw std::invalid_argument("coact_sym needs a symmetric-algebra base");
  base.validate();
  check_leg(leg, base.q);

  RepInstance out = composite_shell(base, {&leg});
  out.provenance = "(" + base.provenance + " (x) " + leg_desc(leg) + ")coact";

  const Letter L11 = sym_letter(1, 1), L21 = sym_letter(2, 1),
               L22 = sym_letter(2, 2);

  // One structural summand of out(z_jk): base letter, leg entry rows, and
  // the scalar in front.
  struct Piece {
    Letter src;
    int r1, r2;
    Complex coeff;
  };
  const Complex qc(base.q, 0.0);

  for (Letter lo : {L11, L21, L22}) {
    const GeneratorSymbol sym = letter_symbol(Algebra::sym2, lo);
    const int j = sym.a, k = sym.b;
    const Piece pieces[4] = {{L11, 1, 1, Complex(1.0)},
                             {L21, 1, 2, qc},
                             {L21, 2, 1, Complex(1.0)},
                             {L22, 2, 2, Complex(1.0)}};
    if (leg.counit) {
      // eps(t_ab) = delta_ab: exactly one summand survives, unscaled.
      TruncOp acc(out.space);
      for (const Piece& p : pieces) {
        if (p.r1 != j || p.r2 != k) continue;
        acc += p.coeff * base.unstarred_op(p.src);
      }
      out.gens[lo] = acc;
      continue;
    }
    TruncOp acc(out.space);
    for (const Piece& p : pieces) {
      if (base.unstarred_op(p.src).is_zero_op()) continue;
      TruncOp entry = leg.t(p.r1, j) * leg.t(p.r2, k);
      acc += p.coeff * tensor(base.unstarred_op(p.src), entry);
    }
    out.gens[lo] = acc;
  }
  return out;
}

RepInstance coact_mat2(const RepInstance& base, const Su2Rep& leg_a,
                       const Su2Rep& leg_b) {
  if (base.algebra != Algebra::mat2)
    throw std::invalid_argument("coact_mat2 needs a full-algebra base");
  base.validate();
  check_leg(leg_a, base.q);
  check_leg(leg_b, base.q);

  RepInstance out = composite_shell(base, {&leg_a, &leg_b});
  out.provenance = "(" + base.provenance + " (x) " + leg_desc(leg_a) +
                   " (x) " + leg_desc(leg_b) + ")coact";

  for (int j = 1; j <= 2; ++j)
    for (int i = 1; i <= 2; ++i) {
      TruncOp acc(out.space);
      for (int a = 1; a <= 2; ++a) {
        if (leg_b.counit && a != i) continue;
        for (int b = 1; b <= 2; ++b) {
          if (leg_a.counit && b != j) continue;
          const TruncOp& src = base.unstarred_op(mat_letter(b, a));
          if (src.is_zero_op()) continue;
          TruncOp term = src;
          if (!leg_a.counit) term = tensor(term, leg_a.t(b, j));
          if (!leg_b.counit) term = tensor(term, leg_b.t(a, i));
          acc += term;
        }
      }
      out.gens[mat_letter(j, i)] = acc;
    }
  return out;
}

RepInstance torus_twist(const RepInstance& rep,
                        const std::vector<double>& angles) {
  rep.validate();
  const std::size_t need = rep.algebra == Algebra::sym2 ? 2 : 4;
  if (angles.size() != need)
    throw std::invalid_argument(
        "torus twist needs 2 angles for sym and 4 for mat2");

  RepInstance out = rep;
  for (auto& [l, op] : out.gens) {
    const GeneratorSymbol sym = letter_symbol(rep.algebra, l);
    double phase = 0.0;
    if (rep.algebra == Algebra::sym2) {
      phase = angles[sym.a - 1] + angles[sym.b - 1];
    } else {
      // z_j^i picks up the row phase of index i and sheds the column phase
      // of index j; angles are (th_1, th_2, ps_1, ps_2).
      phase = angles[sym.b - 1] - angles[2 + sym.a - 1];
    }
    if (phase != 0.0) op = std::polar(1.0, phase) * op;
  }
  for (std::size_t k = 0; k < angles.size(); ++k)
    out.phases.emplace_back("twist" + std::to_string(k + 1), angles[k]);
  std::ostringstream os;
  os << rep.provenance << " twist(";
  for (std::size_t k = 0; k < angles.size(); ++k)
    os << (k ? "," : "") << angles[k];
  os << ")";
  out.provenance = os.str();
  return out;
}

std::string su2_kind_name(Su2Kind kind) {
  return kind == Su2Kind::shift ? "pi" : "eps";
}

Su2Kind su2_kind_from_name(const std::string& name) {
  if (name == "pi") return Su2Kind::shift;
  if (name == "eps") return Su2Kind::counit;
  throw std::invalid_argument("unknown leg kind: " + name);
}

std::string simplest_name(SimplestKind kind) {
  switch (kind) {
    case SimplestKind::f0: return "f0";
    case SimplestKind::f1: return "f1";
    case SimplestKind::f2: return "f2";
  }
  throw std::logic_error("unreachable");
}

SimplestKind simplest_from_name(const std::string& name) {
  if (name == "f0") return SimplestKind::f0;
  if (name == "f1") return SimplestKind::f1;
  if (name == "f2") return SimplestKind::f2;
  throw std::invalid_argument("unknown simplest representation: " + name);
}

void CompositeSpec::validate() const {
  const std::size_t want_legs = algebra == Algebra::sym2 ? 1 : 2;
  if (legs.size() != want_legs)
    throw std::invalid_argument("leg count does not match the algebra");
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("q must lie in (0, 1)");
  std::size_t want_dims = 1;
  for (Su2Kind k : legs)
    if (k == Su2Kind::shift) ++want_dims;
  if (dims.size() != want_dims)
    throw std::invalid_argument(
        "dims must list the base size, then one entry per shift leg");
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("truncation sizes must be >= 1");
  if (!angles.empty() && angles.size() != (algebra == Algebra::sym2 ? 2 : 4))
    throw std::invalid_argument(
        "angles must be empty, or 2 for sym and 4 for mat2");
}

std::string CompositeSpec::to_json() const {
  nlohmann::ordered_json j;
  j["algebra"] = algebra_name(algebra);
  j["base"] = simplest_name(base);
  nlohmann::ordered_json legs_j = nlohmann::ordered_json::array();
  for (Su2Kind k : legs) legs_j.push_back(su2_kind_name(k));
  j["legs"] = std::move(legs_j);
  j["q"] = q;
  j["dims"] = dims;
  j["angles"] = angles;
  return j.dump();
}

CompositeSpec CompositeSpec::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("composite JSON: ") + e.what());
  }
  CompositeSpec spec;
  try {
    spec.algebra = algebra_from_name(j.at("algebra").get<std::string>());
    spec.base = simplest_from_name(j.at("base").get<std::string>());
    for (const auto& l : j.at("legs"))
      spec.legs.push_back(su2_kind_from_name(l.get<std::string>()));
    spec.q = j.at("q").get<double>();
    spec.dims = j.at("dims").get<std::vector<int>>();
    if (j.contains("angles"))
      spec.angles = j.at("angles").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("composite JSON: ") + e.what());
  }
  spec.validate();
  return spec;
}

RepInstance build_composite(const CompositeSpec& spec) {
  spec.validate();
  RepInstance base = build_simplest(spec.algebra, spec.base, spec.q,
                                    spec.dims[0]);
  std::vector<Su2Rep> legs;
  std::size_t di = 1;
  for (Su2Kind k : spec.legs) {
    if (k == Su2Kind::shift)
      legs.push_back(build_su2_rep(Su2Kind::shift, spec.q,
                                   spec.dims[di++]));
    else
      legs.push_back(build_su2_rep(Su2Kind::counit, spec.q, 1));
  }
  RepInstance out = spec.algebra == Algebra::sym2
                        ? coact_sym(base, legs[0])
                        : coact_mat2(base, legs[0], legs[1]);
  if (!spec.angles.empty()) out = torus_twist(out, spec.angles);
  return out;
}

}  // namespace qmat
