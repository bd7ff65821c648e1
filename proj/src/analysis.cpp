#include "qmat/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qmat {

namespace {

constexpr double kSupportTol = 1e-13;  // entries below this carry no support
constexpr double kSpanRankCut = 1e-7;  // relative cut for a new span direction
constexpr double kInvarianceCut = 1e-6;   // relative invariant-subspace bound
constexpr double kLabelDistFloor = 1e-14;  // classifier slack for exact sites
constexpr double kAngleTol = 1e-6;         // phase comparison resolution
constexpr double kCellTol = 1e-6;   // cluster cell radius for block matching
constexpr double kCellGap = 1e-5;   // required separation between used cells
constexpr double kCellBlockCut = 4e-6;  // singular-value cut inside one cell

// Diagonal up to roundoff relative to the largest entry, so products
// assembled through dense intermediates still qualify.
bool is_diagonal_sparse(const SpMat& m) {
  double scale = 0.0, offdiag = 0.0;
  for (int col = 0; col < m.outerSize(); ++col)
    for (SpMat::InnerIterator it(m, col); it; ++it) {
      const double a = std::abs(it.value());
      scale = std::max(scale, a);
      if (it.row() != it.col()) offdiag = std::max(offdiag, a);
    }
  return offdiag <= 1e-12 * std::max(1.0, scale);
}

std::vector<Eigen::Index> leg_strides(const std::vector<int>& dims) {
  std::vector<Eigen::Index> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k)
    s[k] = s[k + 1] * dims[k + 1];
  return s;
}

LegProfile leg_profile(const RepInstance& rep, std::size_t k) {
  return k < rep.legs.size() ? rep.legs[k] : LegProfile{};
}

// Margins covering one application of any of the listed letters.
std::vector<int> letter_margins(const RepInstance& rep,
                                const std::vector<Letter>& letters) {
  std::vector<int> m(rep.space.size(), 0);
  for (Letter l : letters)
    for (std::size_t k = 0; k < rep.space.size(); ++k)
      m[k] = std::max(
          m[k], leg_profile(rep, k).margin_for(rep.letter_shift(k, l)));
  return m;
}

std::vector<Letter> letter_range(Algebra alg, bool starred_only) {
  const int n = generator_count(alg);
  std::vector<Letter> out;
  for (int c = starred_only ? n : 0; c < 2 * n; ++c)
    out.push_back(static_cast<Letter>(c));
  return out;
}

std::vector<char> interior_mask(const std::vector<int>& dims,
                                const std::vector<int>& margins) {
  Eigen::Index n = 1;
  for (int d : dims) n *= d;
  std::vector<char> mask(n, 0);
  for (Eigen::Index j : interior_indices(dims, margins)) mask[j] = 1;
  return mask;
}

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  if (a < 0.0) a += 2.0 * M_PI;
  if (2.0 * M_PI - a < kAngleTol) a = 0.0;  // fold the seam onto zero
  return a;
}

double angle_gap(double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d, 2.0 * M_PI - d);
}

// A label is usable only when the classifier hit its site at floating
// accuracy and the site is separated from its lattice neighbours by more
// than the labeling tolerance; anything closer is a deep tail that a
// coarser site can impersonate.
bool site_resolved(const Classification& c, double q, double label_tol) {
  if (c.distance > kLabelDistFloor) return false;
  const double floor = 10.0 * label_tol;
  const double sep = 1.0 - q * q;
  if (c.cls == OrbitClass::Omega00)
    return std::pow(q, 4.0 * c.n + 2.0 * c.m) * sep > floor;
  if (c.cls == OrbitClass::Omega10) return std::pow(q, 4.0 * c.n) * sep > floor;
  return false;
}

}  // namespace

std::pair<TruncOp, TruncOp> diagonal_pair(const RepInstance& rep) {
  const TruncOp& g1 = rep.unstarred_op(Letter{1});
  const TruncOp& g0 = rep.unstarred_op(Letter{0});
  return {g1 * g1.adjoint(), g0 * g0.adjoint()};
}

double lattice_q(const RepInstance& rep) {
  return rep.algebra == Algebra::mat2 ? std::sqrt(rep.q) : rep.q;
}

std::vector<int> pair_margins(const RepInstance& rep) {
  std::vector<int> m(rep.space.size(), 0);
  for (Letter l : {Letter{0}, Letter{1}})
    for (std::size_t k = 0; k < rep.space.size(); ++k)
      m[k] = std::max(
          m[k], leg_profile(rep, k).margin_for(2 * rep.letter_shift(k, l)));
  return m;
}

SpectralLabels spectral_labels(const RepInstance& rep, double label_tol,
                               int window) {
  rep.validate();
  auto [p1, p2] = diagonal_pair(rep);
  const SpMat& m1 = p1.matrix();
  const SpMat& m2 = p2.matrix();

  SpectralLabels out;
  double scale = 0.0;
  for (const SpMat* m : {&m1, &m2})
    for (int col = 0; col < m->outerSize(); ++col)
      for (SpMat::InnerIterator it(*m, col); it; ++it) {
        if (it.row() == it.col())
          scale = std::max(scale, std::abs(it.value()));
        else
          out.offdiag = std::max(out.offdiag, std::abs(it.value()));
      }
  if (out.offdiag > 1e-9 * std::max(1.0, scale))
    throw std::invalid_argument(
        "spectral_labels: pair products are not diagonal");

  const double qq = lattice_q(rep);
  const Eigen::Index n = rep.dim();
  out.at.resize(n);
  out.resolved.assign(n, 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const OrbitPoint p{m1.coeff(i, i).real(), m2.coeff(i, i).real()};
    out.at[i] = classify_seed(p, qq, window, label_tol);
    out.resolved[i] = site_resolved(out.at[i], qq, label_tol) ? 1 : 0;
  }
  return out;
}

namespace {

// Heights (n) are read off the spectrum exactly; widths (m) only exist on
// family sites. A displacement is comparable when both ends resolve, its n
// part always counts, and its m part counts only between two family sites.
enum class Disp { incomparable, full, height_only };

Disp displacement(const SpectralLabels& s, Eigen::Index i, Eigen::Index j,
                  int& dm, int& dn) {
  if (!s.resolved[i] || !s.resolved[j]) return Disp::incomparable;
  dn = s.at[i].n - s.at[j].n;
  const bool width = s.at[i].cls == OrbitClass::Omega00 &&
                     s.at[j].cls == OrbitClass::Omega00;
  if (s.at[i].cls != s.at[j].cls) return Disp::incomparable;
  dm = width ? s.at[i].m - s.at[j].m : 0;
  return width ? Disp::full : Disp::height_only;
}

}  // namespace

Eigen::MatrixXcd lattice_component(const RepInstance& rep, Letter l,
                                   const SpectralLabels& s, int dm, int dn) {
  if (static_cast<Eigen::Index>(s.at.size()) != rep.dim())
    throw std::invalid_argument("lattice_component: label size mismatch");
  Eigen::MatrixXcd d = rep.letter_op(l).dense();
  for (Eigen::Index j = 0; j < d.cols(); ++j)
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
      if (d(i, j) == Complex(0.0)) continue;
      int em = 0, en = 0;
      const Disp kind = displacement(s, i, j, em, en);
      const bool keep =
          (kind == Disp::full && em == dm && en == dn) ||
          (kind == Disp::height_only && en == dn);
      if (!keep) d(i, j) = Complex(0.0);
    }
  return d;
}

double transport_residual(const RepInstance& rep, Letter l,
                          const SpectralLabels& s,
                          const std::vector<std::pair<int, int>>& allowed) {
  if (static_cast<Eigen::Index>(s.at.size()) != rep.dim())
    throw std::invalid_argument("transport_residual: label size mismatch");
  const Eigen::MatrixXcd d = rep.letter_op(l).dense();
  const std::vector<char> interior =
      interior_mask(rep.space, letter_margins(rep, {l}));
  double worst = 0.0;
  for (Eigen::Index j = 0; j < d.cols(); ++j) {
    if (!interior[j] || !s.resolved[j]) continue;
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
      if (d(i, j) == Complex(0.0)) continue;
      int dm = 0, dn = 0;
      const Disp kind = displacement(s, i, j, dm, dn);
      if (kind == Disp::incomparable) continue;
      bool ok = false;
      for (const auto& [am, an] : allowed)
        if ((kind == Disp::height_only || am == dm) && an == dn) {
          ok = true;
          break;
        }
      if (!ok) worst = std::max(worst, std::abs(d(i, j)));
    }
  }
  return worst;
}

std::vector<Eigen::VectorXcd> joint_kernel(const RepInstance& rep,
                                           const std::vector<Letter>& letters,
                                           double tol) {
  rep.validate();
  if (letters.empty())
    throw std::invalid_argument("joint_kernel: no letters given");
  const std::vector<Eigen::Index> interior =
      interior_indices(rep.space, letter_margins(rep, letters));
  const Eigen::Index n = rep.dim();
  const Eigen::Index cols = static_cast<Eigen::Index>(interior.size());
  if (cols == 0) return {};

  Eigen::MatrixXcd stack(static_cast<Eigen::Index>(letters.size()) * n, cols);
  for (std::size_t t = 0; t < letters.size(); ++t) {
    const TruncOp op = rep.letter_op(letters[t]);
    for (Eigen::Index c = 0; c < cols; ++c)
      stack.block(static_cast<Eigen::Index>(t) * n, c, n, 1) =
          op.column(interior[c]);
  }

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(stack, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cut = tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  std::vector<Eigen::VectorXcd> out;
  for (Eigen::Index k = sv.size() - 1; k >= 0; --k) {
    if (sv(k) > cut) break;
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(n);
    for (Eigen::Index c = 0; c < cols; ++c)
      full[interior[c]] = svd.matrixV()(c, k);
    out.push_back(std::move(full));
  }
  return out;
}

std::vector<Eigen::VectorXcd> null_cyclic_vectors(const RepInstance& rep,
                                                  double tol) {
  return joint_kernel(rep, letter_range(rep.algebra, true), tol);
}

CyclicCompression cyclic_compress(const RepInstance& rep,
                                  const Eigen::VectorXcd& v, int depth) {
  rep.validate();
  if (depth < 0) throw std::invalid_argument("cyclic_compress: negative depth");
  if (v.size() != rep.dim())
    throw std::invalid_argument("cyclic_compress: vector dimension mismatch");
  if (std::abs(v.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("cyclic_compress: vector must be unit length");

  const std::vector<Letter> letters = letter_range(rep.algebra, false);
  std::vector<TruncOp> ops;
  ops.reserve(letters.size());
  for (Letter l : letters) ops.push_back(rep.letter_op(l));
  const std::vector<Eigen::Index> strides = leg_strides(rep.space);

  auto assert_headroom = [&](const Eigen::VectorXcd& u, Letter l) {
    for (std::size_t k = 0; k < rep.space.size(); ++k) {
      const int margin =
          leg_profile(rep, k).margin_for(rep.letter_shift(k, l));
      if (margin == 0) continue;
      const Eigen::Index top = rep.space[k] - margin;  // first unsafe index
      for (Eigen::Index i = 0; i < u.size(); ++i)
        if (std::abs(u[i]) > kSupportTol &&
            (i / strides[k]) % rep.space[k] >= top)
          throw std::runtime_error(
              "cyclic_compress: span escapes the interior (depth too large "
              "for the truncation)");
    }
  };

  // Letters outer, so that single-step letters populate their grade before
  // the multi-term ones revisit it; their extra components then fall inside
  // the span and the basis stays aligned with the lattice.
  std::vector<Eigen::VectorXcd> basis{v / v.norm()};
  std::vector<int> layer_sizes{1};
  std::size_t layer_begin = 0, layer_end = 1;
  double leakage = 0.0;
  for (int d = 0; d < depth; ++d) {
    for (std::size_t li = 0; li < letters.size(); ++li)
      for (std::size_t ui = layer_begin; ui < layer_end; ++ui) {
        assert_headroom(basis[ui], letters[li]);
        Eigen::VectorXcd w = ops[li].apply(basis[ui]);
        const double wn = w.norm();
        if (wn <= kSupportTol) continue;
        for (int pass = 0; pass < 2; ++pass)  // twice keeps orthonormality
          for (const auto& b : basis) w -= b.dot(w) * b;
        const double rn = w.norm();
        if (rn > kSpanRankCut * wn)
          basis.push_back(w / rn);
        else
          leakage = std::max(leakage, rn);  // discarded in-span defect
      }
    layer_begin = layer_end;
    layer_end = basis.size();
    layer_sizes.push_back(static_cast<int>(layer_end - layer_begin));
    if (layer_begin == layer_end) break;  // span closed early: invariant
  }

  const Eigen::Index r = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd B(rep.dim(), r);
  for (Eigen::Index i = 0; i < r; ++i) B.col(i) = basis[i];

  CyclicCompression out;
  out.basis = B;
  out.layer_sizes = layer_sizes;
  out.leakage = leakage;

  RepInstance& c = out.rep;
  c.algebra = rep.algebra;
  c.q = rep.q;
  c.phases = rep.phases;
  c.space = {static_cast<int>(r)};
  LegProfile prof;
  const bool closed = layer_sizes.back() == 0;
  if (closed) {
    prof.letter_shift = 0;  // invariant span: nothing corrupted
    prof.margins = {0};
  } else {
    prof.letter_shift = 1;
    prof.margins = {0};
    int acc = 0;
    const int grades = static_cast<int>(layer_sizes.size());
    for (int s = 1; s <= depth; ++s) {
      const int g = grades - s;  // grades above depth - s are unsafe
      if (g >= 0) acc += layer_sizes[g];
      prof.margins.push_back(acc);
    }
    prof.margins.push_back(static_cast<int>(r));
  }
  c.legs = {prof};
  const int ngen = generator_count(rep.algebra);
  for (int l = 0; l < ngen; ++l) {
    Eigen::MatrixXcd w(rep.dim(), r);
    const TruncOp& g = rep.unstarred_op(static_cast<Letter>(l));
    for (Eigen::Index i = 0; i < r; ++i) w.col(i) = g.apply(B.col(i));
    c.gens.emplace(static_cast<Letter>(l),
                   TruncOp::from_dense(B.adjoint() * w));
  }
  c.provenance = rep.provenance + " | cyclic depth " + std::to_string(depth);
  c.validate();
  return out;
}

Fingerprint fingerprint(const RepInstance& rep,
                        const FingerprintOptions& opts) {
  rep.validate();
  const double rel = max_relation_residual(rep);
  if (!(rel <= opts.relation_tol))
    throw std::invalid_argument(
        "fingerprint: relation residuals exceed the bound; input is not a "
        "representation at this tolerance");

  Fingerprint fp;
  fp.space = rep.space;

  auto [p1, p2] = diagonal_pair(rep);
  const std::vector<int> margins = pair_margins(rep);
  std::vector<std::pair<double, double>> pts;
  if (is_diagonal_sparse(p1.matrix()) && is_diagonal_sparse(p2.matrix())) {
    // Diagonal pairs are read off directly so the window can be cut to the
    // interior, matching what the eigenvector path keeps.
    for (Eigen::Index j : interior_indices(rep.space, margins))
      pts.emplace_back(p1.matrix().coeff(j, j).real(),
                       p2.matrix().coeff(j, j).real());
    std::sort(pts.begin(), pts.end());
  } else {
    JointSpectrumOptions jopts;
    jopts.tol = opts.tol;
    jopts.boundary_margins = margins;
    pts = joint_spectrum(p1, p2, jopts).pairs;
  }

  const SpectrumMatch sm =
      match_spectrum(pts, lattice_q(rep), opts.window, opts.tol);
  fp.cls = sm.cls;
  fp.class_residual = sm.residual;
  fp.table = cluster_pairs(pts, opts.tol);

  // Distinguished kernel: the starred top letter, else the first interior
  // basis vector.
  const Letter distinguished = letter_star(rep.algebra, Letter{0});
  const std::vector<Eigen::VectorXcd> ker =
      joint_kernel(rep, {distinguished}, opts.tol);
  Eigen::MatrixXcd K;
  if (ker.empty()) {
    const auto idx = interior_indices(
        rep.space, letter_margins(rep, {distinguished}));
    K = Eigen::MatrixXcd::Zero(rep.dim(), 1);
    K(idx.empty() ? 0 : idx.front(), 0) = 1.0;
  } else {
    K.resize(rep.dim(), static_cast<Eigen::Index>(ker.size()));
    for (std::size_t i = 0; i < ker.size(); ++i)
      K.col(static_cast<Eigen::Index>(i)) = ker[i];
  }

  const int ngen = generator_count(rep.algebra);
  for (int l = ngen - 1; l >= 0; --l) {
    const TruncOp& g = rep.unstarred_op(static_cast<Letter>(l));
    Eigen::MatrixXcd w(rep.dim(), K.cols());
    for (Eigen::Index c = 0; c < K.cols(); ++c) w.col(c) = g.apply(K.col(c));
    const double wn = w.norm();
    if (wn <= 1e-12 * std::sqrt(static_cast<double>(K.cols()))) continue;
    const Eigen::MatrixXcd m = K.adjoint() * w;
    if ((w - K * m).norm() > kInvarianceCut * wn) continue;
    // Truncation can cut off a shift so that it looks invariant; its
    // compression is then far from normal and its eigenvalues carry no
    // phase information.
    const double mn2 = m.squaredNorm();
    if ((m * m.adjoint() - m.adjoint() * m).norm() > kInvarianceCut * mn2)
      continue;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(m);
    double lmax = 0.0;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i)
      lmax = std::max(lmax, std::abs(eig.eigenvalues()(i)));
    std::vector<double> angles;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
      const Complex ev = eig.eigenvalues()(i);
      if (std::abs(ev) > std::max(opts.tol, 1e-6 * lmax))
        angles.push_back(wrap_angle(std::arg(ev)));
    }
    std::sort(angles.begin(), angles.end());
    std::vector<double> kept;
    for (double a : angles)
      if (kept.empty() || a - kept.back() > kAngleTol) kept.push_back(a);
    if (kept.size() > 1 && 2.0 * M_PI - (kept.back() - kept.front()) < kAngleTol)
      kept.pop_back();
    for (double a : kept)
      fp.phases.emplace_back(letter_name(rep.algebra, static_cast<Letter>(l)),
                             a);
  }
  return fp;
}

bool fingerprint_match(const Fingerprint& a, const Fingerprint& b,
                       double tol) {
  if (a.cls != b.cls) return false;
  if (a.phases.size() != b.phases.size()) return false;
  for (std::size_t i = 0; i < a.phases.size(); ++i) {
    if (a.phases[i].first != b.phases[i].first) return false;
    if (angle_gap(a.phases[i].second, b.phases[i].second) > tol) return false;
  }
  // Cluster order is sort-jitter sensitive near ties; match as a multiset.
  if (a.table.size() != b.table.size()) return false;
  std::vector<bool> used(b.table.size(), false);
  for (const auto& ca : a.table) {
    bool hit = false;
    for (std::size_t j = 0; j < b.table.size() && !hit; ++j) {
      if (used[j]) continue;
      const auto& cb = b.table[j];
      if (std::abs(ca.x1 - cb.x1) <= tol && std::abs(ca.x2 - cb.x2) <= tol &&
          ca.multiplicity == cb.multiplicity)
        used[j] = hit = true;
    }
    if (!hit) return false;
  }
  return true;
}

namespace {

// Orthonormal near-eigenbasis of the diagonal pair at one spectral cell,
// restricted to interior columns.
Eigen::MatrixXcd cell_block(const RepInstance& rep, double x1, double x2) {
  auto [p1, p2] = diagonal_pair(rep);
  const std::vector<Eigen::Index> interior =
      interior_indices(rep.space, pair_margins(rep));
  const Eigen::Index n = rep.dim();
  const Eigen::Index cols = static_cast<Eigen::Index>(interior.size());
  Eigen::MatrixXcd stack(2 * n, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    Eigen::VectorXcd col1 = p1.column(interior[c]);
    Eigen::VectorXcd col2 = p2.column(interior[c]);
    col1[interior[c]] -= Complex(x1);
    col2[interior[c]] -= Complex(x2);
    stack.block(0, c, n, 1) = col1;
    stack.block(n, c, n, 1) = col2;
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(stack, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Eigen::Index m = 0;
  while (m < sv.size() && sv(sv.size() - 1 - m) <= kCellBlockCut) ++m;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Eigen::Index vc = sv.size() - 1 - k;
    for (Eigen::Index c = 0; c < cols; ++c)
      out(interior[c], k) = svd.matrixV()(c, vc);
  }
  return out;
}

}  // namespace

bool equivalent(const RepInstance& a, const RepInstance& b, double tol) {
  if (a.algebra != b.algebra)
    throw std::invalid_argument("equivalent: different algebras");
  if (std::abs(a.q - b.q) > 1e-12)
    throw std::invalid_argument(
        "equivalent: different deformation parameters");

  const FingerprintOptions fopts;
  const Fingerprint fa = fingerprint(a, fopts);
  const Fingerprint fb = fingerprint(b, fopts);
  if (fa.cls != fb.cls) return false;
  if (fa.phases.size() != fb.phases.size()) return false;
  for (std::size_t i = 0; i < fa.phases.size(); ++i) {
    if (fa.phases[i].first != fb.phases[i].first) return false;
    if (angle_gap(fa.phases[i].second, fb.phases[i].second) > kAngleTol)
      return false;
  }

  // Coarse spectral cells; both sides must populate the same cells. Counts
  // may drift with the truncation window, so they are not compared here;
  // the block dimensions below are the sharp check.
  struct Cell {
    double x1, x2;
    int ca = 0, cb = 0;
  };
  std::vector<Cell> cells;
  auto feed = [&cells](const std::vector<ClusteredPair>& table, bool second) {
    for (const auto& c : table) {
      bool placed = false;
      for (auto& cell : cells)
        if (std::hypot(cell.x1 - c.x1, cell.x2 - c.x2) <= kCellTol) {
          (second ? cell.cb : cell.ca) += c.multiplicity;
          placed = true;
          break;
        }
      if (!placed)
        cells.push_back({c.x1, c.x2, second ? 0 : c.multiplicity,
                         second ? c.multiplicity : 0});
    }
  };
  feed(fa.table, false);
  feed(fb.table, true);
  for (const Cell& c : cells)
    if ((c.ca == 0) != (c.cb == 0)) return false;

  // When both spectra come straight off diagonals the per-cell counts are
  // exact multiplicities on the window and must agree; eigenvector-path
  // counts drift near the boundary and are left to the block stage.
  auto [pa1, pa2] = diagonal_pair(a);
  auto [pb1, pb2] = diagonal_pair(b);
  if (is_diagonal_sparse(pa1.matrix()) && is_diagonal_sparse(pa2.matrix()) &&
      is_diagonal_sparse(pb1.matrix()) && is_diagonal_sparse(pb2.matrix()))
    for (const Cell& c : cells)
      if (c.ca != c.cb) return false;

  // Blocks are cut only at cells isolated from every other cell, away from
  // the unresolvable deep tail.
  std::vector<const Cell*> used;
  for (const Cell& c : cells) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const Cell& o : cells)
      if (&o != &c)
        nearest = std::min(nearest, std::hypot(c.x1 - o.x1, c.x2 - o.x2));
    if (nearest > kCellGap) used.push_back(&c);
  }
  if (used.empty())
    throw std::invalid_argument(
        "equivalent: no resolvable spectral blocks to match");

  std::vector<Eigen::MatrixXcd> ka, kb;
  std::vector<Eigen::Index> offset;
  Eigen::Index nvars = 0;
  for (const Cell* c : used) {
    ka.push_back(cell_block(a, c->x1, c->x2));
    kb.push_back(cell_block(b, c->x1, c->x2));
    if (ka.back().cols() != kb.back().cols())
      throw std::invalid_argument(
          "equivalent: truncation mismatch prevents block matching");
    offset.push_back(nvars);
    nvars += ka.back().cols() * ka.back().cols();
  }

  // Least-squares intertwiner U g_a = g_b U over the matched blocks, one
  // unknown square block of U per cell.
  const std::size_t ncell = used.size();
  Eigen::Index nrows = 0;
  struct Eq {
    std::size_t lam, mu;
    Eigen::MatrixXcd ta, tb;
  };
  std::vector<Eq> eqs;
  for (Letter l : letter_range(a.algebra, false)) {
    const TruncOp ga = a.letter_op(l);
    const TruncOp gb = b.letter_op(l);
    for (std::size_t lam = 0; lam < ncell; ++lam) {
      Eigen::MatrixXcd wa(a.dim(), ka[lam].cols());
      Eigen::MatrixXcd wb(b.dim(), kb[lam].cols());
      for (Eigen::Index c = 0; c < ka[lam].cols(); ++c) {
        wa.col(c) = ga.apply(ka[lam].col(c));
        wb.col(c) = gb.apply(kb[lam].col(c));
      }
      for (std::size_t mu = 0; mu < ncell; ++mu) {
        Eq e{lam, mu, ka[mu].adjoint() * wa, kb[mu].adjoint() * wb};
        if (e.ta.norm() <= 1e-12 && e.tb.norm() <= 1e-12) continue;
        nrows += e.ta.rows() * e.ta.cols();
        eqs.push_back(std::move(e));
      }
    }
  }
  if (eqs.empty()) return true;  // nothing transported: vacuously intertwined

  Eigen::MatrixXcd sys = Eigen::MatrixXcd::Zero(nrows, nvars);
  Eigen::Index row0 = 0;
  for (const Eq& e : eqs) {
    const Eigen::Index mm = e.ta.rows();  // block dim at mu
    const Eigen::Index ml = e.ta.cols();  // block dim at lam
    // Row (i, j): sum_k U_mu(i, k) ta(k, j) - sum_k tb(i, k) U_lam(k, j).
    for (Eigen::Index j = 0; j < e.ta.cols(); ++j)
      for (Eigen::Index i = 0; i < mm; ++i) {
        const Eigen::Index r = row0 + j * mm + i;
        for (Eigen::Index k = 0; k < mm; ++k)
          sys(r, offset[e.mu] + k * mm + i) += e.ta(k, j);
        for (Eigen::Index k = 0; k < ml; ++k)
          sys(r, offset[e.lam] + j * ml + k) -= e.tb(i, k);
      }
    row0 += mm * ml;
  }

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(sys, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double smin = sv.size() >= nvars ? sv(nvars - 1) : 0.0;
  Eigen::VectorXcd x = svd.matrixV().col(nvars - 1);

  // Unitary normalization: scale so the mean of U*U's diagonal is one,
  // then measure the deviation from the identity.
  double scale = x.squaredNorm();
  Eigen::Index total = 0;
  for (const Eigen::MatrixXcd& k : ka) total += k.cols();
  if (total == 0) return true;
  x *= std::sqrt(static_cast<double>(total) / scale);
  double dev2 = 0.0;
  for (std::size_t c = 0; c < ncell; ++c) {
    const Eigen::Index m = ka[c].cols();
    Eigen::MatrixXcd u(m, m);
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index i = 0; i < m; ++i) u(i, j) = x[offset[c] + j * m + i];
    dev2 += (u.adjoint() * u - Eigen::MatrixXcd::Identity(m, m)).squaredNorm();
  }
  const double unit_dev = std::sqrt(dev2 / static_cast<double>(total));

  return smin <= tol * std::max(1.0, smax) && unit_dev <= std::sqrt(tol);
}

}  // namespace qmat
