#include "qmat/truncop.hpp"

#include <stdexcept>

namespace qmat {

namespace {

Eigen::Index product_dim(const std::vector<int>& dims) {
  Eigen::Index d = 1;
  for (int x : dims) {
    if (x <= 0) throw std::invalid_argument("factor dimension must be >= 1");
    d *= x;
  }
  return d;
}

void check_same_space(const TruncOp& a, const TruncOp& b) {
  if (a.factor_dims() != b.factor_dims())
    throw std::invalid_argument("operator factor dimensions differ");
}

}  // namespace

TruncOp::TruncOp(std::vector<int> factor_dims)
    : factor_dims_(std::move(factor_dims)),
      bandwidths_(factor_dims_.size(), 0) {
  product_dim(factor_dims_);
}

TruncOp TruncOp::identity(const std::vector<int>& factor_dims) {
  KronTerm t;
  t.coeff = 1.0;
  for (int d : factor_dims) {
    SpMat id(d, d);
    id.setIdentity();
    t.factors.push_back(std::move(id));
  }
  return from_term(factor_dims, std::move(t));
}

TruncOp TruncOp::from_dense(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("not square");
  return from_sparse(m.sparseView());
}

TruncOp TruncOp::from_sparse(SpMat m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("not square");
  KronTerm t;
  t.coeff = 1.0;
  int d = static_cast<int>(m.rows());
  t.factors.push_back(std::move(m));
  return from_term({d}, std::move(t));
}

TruncOp TruncOp::from_term(std::vector<int> factor_dims, KronTerm term) {
  TruncOp op(std::move(factor_dims));
  if (term.factors.size() != op.factor_dims_.size())
    throw std::invalid_argument("factor count mismatch");
  for (std::size_t k = 0; k < term.factors.size(); ++k)
    if (term.factors[k].rows() != op.factor_dims_[k] ||
        term.factors[k].cols() != op.factor_dims_[k])
      throw std::invalid_argument("factor dimension mismatch");
  if (term.coeff != 0.0) op.terms_.push_back(std::move(term));
  op.refresh_bandwidths();
  return op;
}

Eigen::Index TruncOp::dim() const { return product_dim(factor_dims_); }

void TruncOp::refresh_bandwidths() {
  bandwidths_.assign(factor_dims_.size(), 0);
  for (const auto& t : terms_)
    for (std::size_t k = 0; k < t.factors.size(); ++k)
      bandwidths_[k] = std::max(bandwidths_[k], scan_bandwidth(t.factors[k]));
}

std::vector<int> TruncOp::actual_bandwidths() const {
  std::vector<int> out(factor_dims_.size(), 0);
  const SpMat& m = matrix();
  // Decompose composite indices, first factor slowest.
  std::vector<Eigen::Index> strides(factor_dims_.size(), 1);
  for (int k = static_cast<int>(factor_dims_.size()) - 2; k >= 0; --k)
    strides[k] = strides[k + 1] * factor_dims_[k + 1];
  for (int col = 0; col < m.outerSize(); ++col)
    for (SpMat::InnerIterator it(m, col); it; ++it) {
      Eigen::Index r = it.row(), c = it.col();
      for (std::size_t k = 0; k < factor_dims_.size(); ++k) {
        int rk = static_cast<int>(r / strides[k] % factor_dims_[k]);
        int ck = static_cast<int>(c / strides[k] % factor_dims_[k]);
        out[k] = std::max(out[k], std::abs(rk - ck));
      }
    }
  return out;
}

TruncOp TruncOp::adjoint() const {
  TruncOp out(factor_dims_);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    KronTerm s;
    s.coeff = std::conj(t.coeff);
    s.factors.reserve(t.factors.size());
    for (const auto& f : t.factors) s.factors.push_back(SpMat(f.adjoint()));
    out.terms_.push_back(std::move(s));
  }
  out.bandwidths_ = bandwidths_;
  return out;
}

Eigen::VectorXcd TruncOp::column(Eigen::Index j) const {
  const Eigen::Index n = dim();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  const std::size_t nf = factor_dims_.size();
  std::vector<int> jk(nf);
  {
    Eigen::Index rem = j;
    for (std::size_t k = nf; k-- > 0;) {
      jk[k] = static_cast<int>(rem % factor_dims_[k]);
      rem /= factor_dims_[k];
    }
  }
  // Per term, the column is the outer product of the factor columns.
  std::vector<std::pair<Eigen::Index, Complex>> partial, next;
  for (const auto& t : terms_) {
    partial.assign({{0, t.coeff}});
    for (std::size_t k = 0; k < nf; ++k) {
      next.clear();
      for (SpMat::InnerIterator it(t.factors[k], jk[k]); it; ++it)
        for (const auto& [idx, val] : partial)
          next.emplace_back(idx * factor_dims_[k] + it.row(),
                            val * it.value());
      partial.swap(next);
      if (partial.empty()) break;
    }
    for (const auto& [idx, val] : partial) out[idx] += val;
  }
  return out;
}

Eigen::VectorXcd TruncOp::apply(const Eigen::VectorXcd& v) const {
  const Eigen::Index n = dim();
  if (v.size() != n) throw std::invalid_argument("vector dimension mismatch");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  const std::size_t nf = factor_dims_.size();
  for (const auto& t : terms_) {
    Eigen::VectorXcd cur = v;
    // Apply factor k along its mode; inner stride is the product of later
    // dimensions, outer count the product of earlier ones.
    Eigen::Index inner = n;
    for (std::size_t k = 0; k < nf; ++k) {
      const int d = factor_dims_[k];
      inner /= d;
      const Eigen::Index outer = n / (inner * d);
      Eigen::VectorXcd nxt = Eigen::VectorXcd::Zero(n);
      const SpMat& f = t.factors[k];
      for (int col = 0; col < f.outerSize(); ++col)
        for (SpMat::InnerIterator it(f, col); it; ++it)
          for (Eigen::Index o = 0; o < outer; ++o)
            nxt.segment((o * d + it.row()) * inner, inner) +=
                it.value() * cur.segment((o * d + col) * inner, inner);
      cur.swap(nxt);
    }
    out += t.coeff * cur;
  }
  return out;
}

const SpMat& TruncOp::matrix() const {
  if (cache_) return *cache_;
  const Eigen::Index n = dim();
  auto m = std::make_shared<SpMat>(n, n);
  for (const auto& t : terms_) {
    SpMat acc(1, 1);
    acc.insert(0, 0) = t.coeff;
    for (const auto& f : t.factors) acc = kron_sparse(acc, f);
    *m += acc;
  }
  m->prune([](Eigen::Index, Eigen::Index, const Complex& v) {
    return v != Complex(0.0);
  });
  m->makeCompressed();
  cache_ = m;
  return *cache_;
}

Eigen::MatrixXcd TruncOp::dense() const { return Eigen::MatrixXcd(matrix()); }

TruncOp& TruncOp::operator+=(const TruncOp& o) {
  check_same_space(*this, o);
  if (&o == this) {
    std::vector<KronTerm> copy = terms_;
    terms_.insert(terms_.end(), copy.begin(), copy.end());
    cache_.reset();
    return *this;
  }
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  for (std::size_t k = 0; k < bandwidths_.size(); ++k)
    bandwidths_[k] = std::max(bandwidths_[k], o.bandwidths_[k]);
  cache_.reset();
  return *this;
}

TruncOp& TruncOp::operator-=(const TruncOp& o) {
  return *this += Complex(-1.0) * o;
}

TruncOp operator*(Complex c, TruncOp a) {
  a.cache_.reset();
  if (c == 0.0) {
    a.terms_.clear();
    a.refresh_bandwidths();
    return a;
  }
  for (auto& t : a.terms_) t.coeff *= c;
  return a;
}

TruncOp operator*(const TruncOp& a, const TruncOp& b) {
  check_same_space(a, b);
  TruncOp out(a.factor_dims_);
  out.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) {
      KronTerm t;
      t.coeff = ta.coeff * tb.coeff;
      t.factors.reserve(ta.factors.size());
      for (std::size_t k = 0; k < ta.factors.size(); ++k)
        t.factors.push_back(SpMat(ta.factors[k] * tb.factors[k]));
      out.terms_.push_back(std::move(t));
    }
  for (std::size_t k = 0; k < out.bandwidths_.size(); ++k)
    out.bandwidths_[k] = a.bandwidths_[k] + b.bandwidths_[k];
  return out;
}

TruncOp tensor(const TruncOp& a, const TruncOp& b) {
  std::vector<int> dims = a.factor_dims_;
  dims.insert(dims.end(), b.factor_dims_.begin(), b.factor_dims_.end());
  TruncOp out(std::move(dims));
  out.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) {
      KronTerm t;
      t.coeff = ta.coeff * tb.coeff;
      t.factors = ta.factors;
      t.factors.insert(t.factors.end(), tb.factors.begin(), tb.factors.end());
      out.terms_.push_back(std::move(t));
    }
  out.bandwidths_ = a.bandwidths_;
  out.bandwidths_.insert(out.bandwidths_.end(), b.bandwidths_.begin(),
                         b.bandwidths_.end());
  return out;
}

SpMat kron_sparse(const SpMat& a, const SpMat& b) {
  SpMat out(a.rows() * b.rows(), a.cols() * b.cols());
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(a.nonZeros()) * b.nonZeros());
  for (int ca = 0; ca < a.outerSize(); ++ca)
    for (SpMat::InnerIterator ia(a, ca); ia; ++ia)
      for (int cb = 0; cb < b.outerSize(); ++cb)
        for (SpMat::InnerIterator ib(b, cb); ib; ++ib)
          trips.emplace_back(ia.row() * b.rows() + ib.row(),
                             ia.col() * b.cols() + ib.col(),
                             ia.value() * ib.value());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

int scan_bandwidth(const SpMat& m) {
  int bw = 0;
  for (int col = 0; col < m.outerSize(); ++col)
    for (SpMat::InnerIterator it(m, col); it; ++it)
      bw = std::max(bw, static_cast<int>(std::abs(it.row() - it.col())));
  return bw;
}

SpMat diag_op(int dim, const std::function<Complex(int)>& f) {
  SpMat m(dim, dim);
  for (int k = 0; k < dim; ++k) {
    Complex v = f(k);
    if (v != 0.0) m.insert(k, k) = v;
  }
  m.makeCompressed();
  return m;
}

SpMat shift_up_op(int dim, int steps,
                  const std::function<Complex(int)>& amp) {
  SpMat m(dim, dim);
  for (int k = 0; k + steps < dim; ++k) {
    Complex v = amp(k);
    if (v != 0.0) m.insert(k + steps, k) = v;
  }
  m.makeCompressed();
  return m;
}

SpMat shift_down_op(int dim, int steps,
                    const std::function<Complex(int)>& amp) {
  SpMat m(dim, dim);
  for (int k = steps; k < dim; ++k) {
    Complex v = amp(k);
    if (v != 0.0) m.insert(k - steps, k) = v;
  }
  m.makeCompressed();
  return m;
}

std::vector<Eigen::Index> interior_indices(const std::vector<int>& dims,
                                           const std::vector<int>& margins) {
  if (dims.size() != margins.size())
    throw std::invalid_argument("margin arity mismatch");
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (dims[k] <= margins[k])
      throw std::invalid_argument(
          "truncation too small: no interior vectors remain");
  std::vector<Eigen::Index> out;
  std::vector<int> idx(dims.size(), 0);
  for (;;) {
    Eigen::Index flat = 0;
    bool ok = true;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (idx[k] > dims[k] - 1 - margins[k]) ok = false;
      flat = flat * dims[k] + idx[k];
    }
    if (ok) out.push_back(flat);
    std::size_t k = dims.size();
    while (k-- > 0) {
      if (++idx[k] < dims[k]) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
    if (dims.empty()) break;
  }
  return out;
}

double op_distance(const TruncOp& a, const TruncOp& b) {
  check_same_space(a, b);
  return SpMat(a.matrix() - b.matrix()).norm();
}

}  // namespace qmat
