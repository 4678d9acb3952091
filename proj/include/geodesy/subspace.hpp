#pragma once

#include "geodesy/linalg.hpp"

#include <stdexcept>
#include <vector>

namespace geodesy {

/// Linear subspace of R^n kept in reduced echelon form, so two equal
/// subspaces have identical rows.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(int ambient) : n_(ambient), rows_(0, ambient) {}

  static Subspace zero(int ambient) { return Subspace(ambient); }
  static Subspace full(int ambient) { return span(SMat::identity(ambient)); }

  static Subspace span(const SMat& raw_rows) {
    Subspace s(raw_rows.cols);
    SMat m = raw_rows;
    int r = rref(m);
    s.rows_ = SMat(r, m.cols);
    for (int i = 0; i < r; ++i) s.rows_.set_row(i, m.row(i));
    return s;
  }
  static Subspace span(const std::vector<Vec>& vecs, int ambient) {
    SMat m((int)vecs.size(), ambient);
    for (size_t i = 0; i < vecs.size(); ++i) m.set_row((int)i, vecs[i]);
    return span(m);
  }

  int ambient() const { return n_; }
  int dim() const { return rows_.rows; }
  const SMat& rows() const { return rows_; }
  Vec basis_vector(int i) const { return rows_.row(i); }

  bool contains(const Vec& v, double t = tol::pivot) const {
    Vec r = reduce(v);
    return vec_is_zero(r, t);
  }
  bool contains(const Subspace& other, double t = tol::pivot) const {
    for (int i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_vector(i), t)) return false;
    return true;
  }

  /// Residual of v after elimination against the echelon rows.
  Vec reduce(const Vec& v) const {
    Vec r = v;
    for (int i = 0; i < rows_.rows; ++i) {
      int p = pivot_col(i);
      Scalar f = r[(size_t)p];
      if (f.is_zero()) continue;
      for (int j = 0; j < n_; ++j) r[(size_t)j] -= f * rows_.at(i, j);
    }
    return r;
  }

  friend Subspace operator+(const Subspace& a, const Subspace& b) {
    SMat m(a.dim() + b.dim(), a.n_);
    for (int i = 0; i < a.dim(); ++i) m.set_row(i, a.basis_vector(i));
    for (int i = 0; i < b.dim(); ++i) m.set_row(a.dim() + i, b.basis_vector(i));
    return span(m);
  }

  Subspace intersect(const Subspace& b) const {
    // x = alpha'A = beta'B  <=>  (alpha;beta) in ker [A' | -B']
    const Subspace& a = *this;
    SMat sys(n_, a.dim() + b.dim());
    for (int j = 0; j < a.dim(); ++j)
      for (int i = 0; i < n_; ++i) sys.at(i, j) = a.rows_.at(j, i);
    for (int j = 0; j < b.dim(); ++j)
      for (int i = 0; i < n_; ++i) sys.at(i, a.dim() + j) = Scalar(-1) * b.rows_.at(j, i);
    SMat k = kernel(sys);
    SMat vecs(k.rows, n_);
    for (int i = 0; i < k.rows; ++i)
      for (int c = 0; c < n_; ++c) {
        Scalar s(0);
        for (int j = 0; j < a.dim(); ++j) s += k.at(i, j) * a.rows_.at(j, c);
        vecs.at(i, c) = s;
      }
    return span(vecs);
  }

  /// Orthogonal complement; pass a Gram matrix for a metric other than the
  /// standard one.
  Subspace perp(const SMat* gram = nullptr) const {
    SMat m = gram ? SMat(rows_ * *gram) : rows_;
    return span(kernel(m));
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    if (a.n_ != b.n_ || a.dim() != b.dim()) return false;
    bool exact = a.rows_.is_exact() && b.rows_.is_exact();
    for (size_t k = 0; k < a.rows_.a.size(); ++k) {
      Scalar d = a.rows_.a[k] - b.rows_.a[k];
      if (!d.is_zero(exact ? 0.0 : 1e-9)) return false;
    }
    return true;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

  /// Indices of standard basis vectors that extend this subspace to R^n.
  std::vector<int> complement_indices() const {
    std::vector<int> out;
    SMat acc = rows_;
    int have = dim();
    for (int j = 0; j < n_ && have + (int)out.size() < n_; ++j) {
      SMat cand(have + (int)out.size() + 1, n_);
      int r = 0;
      for (; r < have; ++r) cand.set_row(r, rows_.row(r));
      for (int k : out) cand.set_row(r++, unit(n_, k));
      cand.set_row(r, unit(n_, j));
      if (rank_of(cand) == cand.rows) out.push_back(j);
    }
    if (have + (int)out.size() != n_) throw std::logic_error("failed to complete basis");
    return out;
  }

  /// Coordinates of v in the row basis; throws if v is not in the subspace.
  Vec coordinates(const Vec& v, double t = tol::pivot) const {
    Vec c((size_t)dim(), rows_.is_exact() && std::all_of(v.begin(), v.end(), [](const Scalar& s) {
            return s.is_exact();
          }) ? Scalar(0) : Scalar(0.0));
    Vec r = v;
    for (int i = 0; i < dim(); ++i) {
      int p = pivot_col(i);
      c[(size_t)i] = r[(size_t)p];
      if (c[(size_t)i].is_zero()) continue;
      for (int j = 0; j < n_; ++j) r[(size_t)j] -= c[(size_t)i] * rows_.at(i, j);
    }
    if (!vec_is_zero(r, t)) throw std::domain_error("vector not in subspace");
    return c;
  }

 private:
  int pivot_col(int i) const {
    for (int j = 0; j < n_; ++j)
      if (!rows_.at(i, j).is_zero(rows_.is_exact() ? 0.0 : tol::pivot / 10)) return j;
    throw std::logic_error("zero row in echelon basis");
  }

  int n_ = 0;
  SMat rows_;
};

}  // namespace geodesy
