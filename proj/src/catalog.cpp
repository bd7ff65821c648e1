#include "qmat/catalog.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qmat/fock.hpp"

namespace qmat {

namespace {

Letter sym_letter(int a, int b) {
  return letter_code(GeneratorSymbol(Algebra::sym2, a, b, false));
}

Letter mat_letter(int sub, int sup) {
  return letter_code(GeneratorSymbol(Algebra::mat2, sub, sup, false));
}

TruncOp scalar_op(Complex c) {
  return TruncOp::from_term({}, KronTerm{c, {}});
}

SpMat identity_sp(int dim) {
  SpMat id(dim, dim);
  id.setIdentity();
  return id;
}

// Single-leg operator wrappers
TruncOp leg_op(SpMat m) { return TruncOp::from_sparse(std::move(m)); }

std::string format_phases(const std::vector<double>& phases) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < phases.size(); ++i)
    os << (i ? "," : "") << phases[i];
  return os.str();
}

void check_dims(const std::vector<int>& dims) {
  for (int d : dims)
    if (d < 2) throw std::invalid_argument("truncation dims must be >= 2");
}

}  // namespace

int series_phase_arity(SeriesId id) {
  switch (id) {
    case SeriesId::pi1: return 2;
    case SeriesId::pi2:
    case SeriesId::pi3:
    case SeriesId::pi4: return 1;
    case SeriesId::pi5: return 0;
  }
  throw std::logic_error("unknown series");
}

int series_leg_arity(SeriesId id) {
  switch (id) {
    case SeriesId::pi1: return 0;
    case SeriesId::pi2:
    case SeriesId::pi3: return 1;
    case SeriesId::pi4: return 2;
    case SeriesId::pi5: return 3;
  }
  throw std::logic_error("unknown series");
}

std::string series_name(SeriesId id) {
  switch (id) {
    case SeriesId::pi1: return "pi1";
    case SeriesId::pi2: return "pi2";
    case SeriesId::pi3: return "pi3";
    case SeriesId::pi4: return "pi4";
    case SeriesId::pi5: return "pi5";
  }
  throw std::logic_error("unknown series");
}

SeriesId series_from_name(const std::string& name) {
  if (name == "pi1") return SeriesId::pi1;
  if (name == "pi2") return SeriesId::pi2;
  if (name == "pi3") return SeriesId::pi3;
  if (name == "pi4") return SeriesId::pi4;
  if (name == "pi5") return SeriesId::pi5;
  throw std::invalid_argument("unknown series name: " + name);
}

RepInstance build_sym_series(SeriesId id, const std::vector<double>& phases,
                             double q, const std::vector<int>& dims,
                             bool alternate_z11) {
  if (static_cast<int>(phases.size()) != series_phase_arity(id))
    throw std::invalid_argument("wrong phase count for " + series_name(id));
  if (static_cast<int>(dims.size()) != series_leg_arity(id))
    throw std::invalid_argument("wrong dims count for " + series_name(id));
  check_dims(dims);
  if (q <= 0.0 || q >= 1.0)
    throw std::invalid_argument("q must lie in (0,1)");
  if (alternate_z11 && id != SeriesId::pi1 && id != SeriesId::pi3)
    throw std::invalid_argument("alternate z11 shape exists for pi1 and pi3");

  RepInstance rep;
  rep.algebra = Algebra::sym2;
  rep.q = q;
  rep.space = dims;
  auto pw = [q](int e) { return std::pow(q, e); };
  const Letter L11 = sym_letter(1, 1), L21 = sym_letter(2, 1),
               L22 = sym_letter(2, 2);

  switch (id) {
    case SeriesId::pi1: {
      const double phi = phases[0], psi = phases[1];
      const double mod = alternate_z11 ? 1.0 : 1.0 / q;
      rep.gens[L11] = scalar_op(std::polar(mod, psi));
      rep.gens[L21] = TruncOp(dims);
      rep.gens[L22] = scalar_op(std::polar(1.0, phi));
      rep.phases = {{"phi", phi}, {"psi", psi}};
      break;
    }
    case SeriesId::pi2: {
      const double phi = phases[0];
      const int d = dims[0];
      rep.gens[L11] = leg_op(shift_up_op(d, 1, [&](int k) {
        return Complex(std::sqrt(1.0 - pw(4 * k + 4)) / q);
      }));
      rep.gens[L21] = TruncOp(dims);
      rep.gens[L22] = leg_op(diag_op(
          d, [&](int) { return std::polar(1.0, phi); }));
      rep.phases = {{"phi", phi}};
      break;
    }
    case SeriesId::pi3: {
      const double phi = phases[0];
      const int d = dims[0];
      const Complex z11_phase =
          alternate_z11 ? Complex(1.0) : std::polar(1.0, 2.0 * phi);
      rep.gens[L11] = leg_op(shift_down_op(d, 1, [&](int k) {
        return -z11_phase * std::sqrt(1.0 - pw(4 * k)) / q;
      }));
      rep.gens[L21] = leg_op(
          diag_op(d, [&](int k) { return std::polar(pw(2 * k), phi); }));
      rep.gens[L22] = leg_op(shift_up_op(d, 1, [&](int k) {
        return Complex(std::sqrt(1.0 - pw(4 * k + 4)));
      }));
      rep.phases = {{"phi", phi}};
      break;
    }
    case SeriesId::pi4: {
      const double phi = phases[0];
      const int dk = dims[0], dl = dims[1];
      SpMat diag_k = diag_op(dk, [&](int k) { return std::polar(pw(2 * k), phi); });
      SpMat up2_k = shift_up_op(dk, 2, [&](int k) {
        return Complex(std::sqrt((1.0 - pw(2 * k + 2)) * (1.0 - pw(2 * k + 4))));
      });
      SpMat down_l = shift_down_op(dl, 1, [&](int l) {
        return Complex(std::sqrt(1.0 - pw(4 * l)));
      });
      TruncOp z11 =
          TruncOp::from_term({dk, dl}, {Complex(1.0), {diag_k, identity_sp(dl)}});
      z11 -= Complex(1.0 / q) *
             TruncOp::from_term({dk, dl}, {Complex(1.0), {up2_k, down_l}});
      rep.gens[L11] = z11;

      SpMat up_k = shift_up_op(dk, 1, [&](int k) {
        return Complex(std::sqrt(1.0 - pw(2 * k + 2)));
      });
      SpMat diag_l = diag_op(dl, [&](int l) { return Complex(pw(2 * l)); });
      rep.gens[L21] =
          TruncOp::from_term({dk, dl}, {Complex(1.0), {up_k, diag_l}});

      SpMat up_l = shift_up_op(dl, 1, [&](int l) {
        return Complex(std::sqrt(1.0 - pw(4 * l + 4)));
      });
      rep.gens[L22] =
          TruncOp::from_term({dk, dl}, {Complex(1.0), {identity_sp(dk), up_l}});
      rep.phases = {{"phi", phi}};
      break;
    }
    case SeriesId::pi5: {
      const int dk = dims[0], dl = dims[1], dm = dims[2];
      SpMat diag_l = diag_op(dl, [&](int l) { return Complex(pw(2 * l)); });
      SpMat up_m = shift_up_op(dm, 1, [&](int m) {
        return Complex(std::sqrt(1.0 - pw(4 * m + 4)));
      });
      SpMat down_k = shift_down_op(dk, 1, [&](int k) {
        return Complex(std::sqrt(1.0 - pw(4 * k)));
      });
      SpMat up2_l = shift_up_op(dl, 2, [&](int l) {
        return Complex(std::sqrt((1.0 - pw(2 * l + 2)) * (1.0 - pw(2 * l + 4))));
      });
      TruncOp z11 = TruncOp::from_term(
          {dk, dl, dm}, {Complex(1.0), {identity_sp(dk), diag_l, up_m}});
      z11 -= Complex(1.0 / q) *
             TruncOp::from_term({dk, dl, dm},
                                {Complex(1.0), {down_k, up2_l, identity_sp(dm)}});
      rep.gens[L11] = z11;

      SpMat diag_k = diag_op(dk, [&](int k) { return Complex(pw(2 * k)); });
      SpMat up_l = shift_up_op(dl, 1, [&](int l) {
        return Complex(std::sqrt(1.0 - pw(2 * l + 2)));
      });
      rep.gens[L21] = TruncOp::from_term(
          {dk, dl, dm}, {Complex(1.0), {diag_k, up_l, identity_sp(dm)}});

      SpMat up_k = shift_up_op(dk, 1, [&](int k) {
        return Complex(std::sqrt(1.0 - pw(4 * k + 4)));
      });
      rep.gens[L22] = TruncOp::from_term(
          {dk, dl, dm},
          {Complex(1.0), {up_k, identity_sp(dl), identity_sp(dm)}});
      break;
    }
  }

  std::ostringstream prov;
  prov << series_name(id);
  if (!phases.empty()) prov << "(" << format_phases(phases) << ")";
  if (alternate_z11) prov << "[alternate z11]";
  rep.provenance = prov.str();
  return rep;
}

const TruncOp& Su2Rep::t(int i, int j) const {
  if (i == 1 && j == 1) return t11;
  if (i == 1 && j == 2) return t12;
  if (i == 2 && j == 1) return t21;
  if (i == 2 && j == 2) return t22;
  throw std::invalid_argument("entry index out of range");
}

Su2Rep build_su2_rep(Su2Kind kind, double q, int dim) {
  Su2Rep rep;
  rep.q = q;
  if (kind == Su2Kind::counit) {
    rep.dim = 1;
    rep.counit = true;
    rep.t11 = TruncOp::identity({1});
    rep.t12 = TruncOp(std::vector<int>{1});
    rep.t21 = TruncOp(std::vector<int>{1});
    rep.t22 = TruncOp::identity({1});
    return rep;
  }
  if (dim < 2) throw std::invalid_argument("shift realization needs dim >= 2");
  rep.dim = dim;
  auto pw = [q](int e) { return std::pow(q, e); };
  rep.t11 = leg_op(shift_down_op(
      dim, 1, [&](int n) { return Complex(std::sqrt(1.0 - pw(2 * n))); }));
  rep.t12 = leg_op(diag_op(dim, [&](int n) { return Complex(pw(n + 1)); }));
  rep.t21 = leg_op(diag_op(dim, [&](int n) { return Complex(-pw(n)); }));
  rep.t22 = leg_op(shift_up_op(
      dim, 1, [&](int n) { return Complex(std::sqrt(1.0 - pw(2 * n + 2))); }));
  return rep;
}

TruncOp build_disc_fock(double t, int dim) {
  if (t <= 0.0 || t >= 1.0)
    throw std::invalid_argument("deformation parameter must lie in (0,1)");
  return leg_op(shift_up_op(dim, 1, [&](int n) {
    return Complex(std::sqrt(1.0 - std::pow(t, 2 * n + 2)));
  }));
}

namespace {

// Compressed vacuum module as a representation instance. Basis states are
// graded by word degree; one letter moves degree by one, and states of
// degree <= bound - s are exactly represented after s letters, which the
// leg profile records as margins.
RepInstance compressed_fock_rep(Algebra alg, int degree_bound, double q) {
  if (degree_bound < 1)
    throw std::invalid_argument("degree bound must be >= 1");
  FockCompression comp(alg, degree_bound, q);
  const int n = static_cast<int>(comp.dimension());

  RepInstance rep;
  rep.algebra = alg;
  rep.q = q;
  rep.space = {n};

  LegProfile prof;
  prof.letter_shift = 1;
  std::vector<Word> words = normal_unstarred_words(alg, degree_bound);
  for (int s = 0; s <= degree_bound; ++s) {
    std::size_t keep = 0;  // states of degree <= degree_bound - s
    for (const Word& w : words)
      if (static_cast<int>(w.size()) <= degree_bound - s) ++keep;
    prof.margins.push_back(n - static_cast<int>(keep));
  }
  prof.margins.push_back(n);  // deeper words have no exact interior
  rep.legs = {prof};

  for (int l = 0; l < generator_count(alg); ++l)
    rep.gens[static_cast<Letter>(l)] =
        TruncOp::from_dense(comp.letter_matrix(static_cast<Letter>(l)));
  std::ostringstream prov;
  prov << algebra_name(alg) << " fock compression deg<=" << degree_bound;
  rep.provenance = prov.str();
  return rep;
}

}  // namespace

RepInstance build_simplest(Algebra alg, SimplestKind kind, double q,
                           int size) {
  if (q <= 0.0 || q >= 1.0)
    throw std::invalid_argument("q must lie in (0,1)");
  RepInstance rep;
  rep.algebra = alg;
  rep.q = q;

  if (alg == Algebra::sym2) {
    const Letter L11 = sym_letter(1, 1), L21 = sym_letter(2, 1),
                 L22 = sym_letter(2, 2);
    switch (kind) {
      case SimplestKind::f0:
        rep.space = {};
        rep.gens[L11] = scalar_op(Complex(1.0 / q));
        rep.gens[L21] = scalar_op(Complex(0.0));
        rep.gens[L22] = scalar_op(Complex(1.0));
        rep.provenance = "sym F0";
        return rep;
      case SimplestKind::f1: {
        if (size < 2) throw std::invalid_argument("truncation must be >= 2");
        rep.space = {size};
        rep.gens[L11] = Complex(1.0 / q) * build_disc_fock(q * q, size);
        rep.gens[L21] = TruncOp(rep.space);
        rep.gens[L22] = TruncOp::identity(rep.space);
        rep.provenance = "sym F1";
        return rep;
      }
      case SimplestKind::f2: {
        RepInstance out =
            build_sym_series(SeriesId::pi5, {}, q, {size, size, size});
        out.provenance = "sym F2 = pi5";
        return out;
      }
    }
  }

  const Letter M11 = mat_letter(1, 1), M12 = mat_letter(1, 2),
               M21 = mat_letter(2, 1), M22 = mat_letter(2, 2);
  switch (kind) {
    case SimplestKind::f0:
      rep.space = {};
      rep.gens[M11] = scalar_op(Complex(1.0 / q));
      rep.gens[M12] = scalar_op(Complex(0.0));
      rep.gens[M21] = scalar_op(Complex(0.0));
      rep.gens[M22] = scalar_op(Complex(1.0));
      rep.provenance = "mat F0";
      return rep;
    case SimplestKind::f1: {
      if (size < 2) throw std::invalid_argument("truncation must be >= 2");
      rep.space = {size};
      rep.gens[M11] = Complex(1.0 / q) * build_disc_fock(q, size);
      rep.gens[M12] = TruncOp(rep.space);
      rep.gens[M21] = TruncOp(rep.space);
      rep.gens[M22] = TruncOp::identity(rep.space);
      rep.provenance = "mat F1";
      return rep;
    }
    case SimplestKind::f2:
      return compressed_fock_rep(Algebra::mat2, size, q);
  }
  throw std::logic_error("unknown simplest kind");
}

RepInstance direct_sum(const RepInstance& a, const RepInstance& b) {
  if (a.algebra != b.algebra || a.q != b.q)
    throw std::invalid_argument("direct sum needs matching algebra and q");
  if (a.space.size() > 1 || b.space.size() > 1 || a.space != b.space)
    throw std::invalid_argument(
        "direct sum supports equal spaces with at most one leg");
  const int d = static_cast<int>(a.dim());

  RepInstance out;
  out.algebra = a.algebra;
  out.q = a.q;
  out.space = {2 * d};
  for (const auto& [l, opa] : a.gens) {
    const SpMat &ma = opa.matrix(), &mb = b.unstarred_op(l).matrix();
    SpMat m(2 * d, 2 * d);
    std::vector<Eigen::Triplet<Complex>> trips;
    for (int col = 0; col < ma.outerSize(); ++col)
      for (SpMat::InnerIterator it(ma, col); it; ++it)
        trips.emplace_back(2 * it.row(), 2 * it.col(), it.value());
    for (int col = 0; col < mb.outerSize(); ++col)
      for (SpMat::InnerIterator it(mb, col); it; ++it)
        trips.emplace_back(2 * it.row() + 1, 2 * it.col() + 1, it.value());
    m.setFromTriplets(trips.begin(), trips.end());
    out.gens[l] = TruncOp::from_sparse(std::move(m));
  }
  out.phases = a.phases;
  out.phases.insert(out.phases.end(), b.phases.begin(), b.phases.end());
  out.provenance = "(" + a.provenance + ")+(" + b.provenance + ")";
  return out;
}

}  // namespace qmat
