#pragma once

#include "geodesy/subspace.hpp"

#include <string>
#include <vector>

namespace geodesy {

/// A finite-dimensional real Lie algebra given by its structure constants
/// c_{ij}^k in a fixed basis. Immutable after construction apart from the
/// builder calls used while assembling.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(int n, std::string name = "") : n_(n), name_(std::move(name)), c_((size_t)n * n * n, Scalar(0)) {
    labels_.reserve((size_t)n);
    for (int i = 1; i <= n; ++i) labels_.push_back("X" + std::to_string(i));
  }

  int dim() const { return n_; }
  const std::string& name() const { return name_; }
  void set_name(std::string s) { name_ = std::move(s); }
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> l) { labels_ = std::move(l); }

  const Scalar& c(int i, int j, int k) const { return c_[idx(i, j, k)]; }
  void set_c(int i, int j, int k, const Scalar& v) { c_[idx(i, j, k)] = v; }

  /// Declares [e_i, e_j] = v (and the antisymmetric mirror).
  void set_bracket(int i, int j, const Vec& v) {
    for (int k = 0; k < n_; ++k) {
      c_[idx(i, j, k)] = v[(size_t)k];
      c_[idx(j, i, k)] = -v[(size_t)k];
    }
  }
  void set_bracket_term(int i, int j, int k, const Scalar& v) {
    c_[idx(i, j, k)] = v;
    c_[idx(j, i, k)] = -v;
  }

  bool is_exact() const {
    return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.is_exact(); });
  }

 private:
  size_t idx(int i, int j, int k) const { return ((size_t)i * n_ + j) * n_ + k; }

  int n_ = 0;
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<Scalar> c_;
};

struct Violation {
  enum Kind { kAntisymmetry, kJacobi } kind;
  int i, j, k, l;     // l unused for antisymmetry
  double residual;
  std::string describe() const {
    char buf[128];
    if (kind == kAntisymmetry)
      std::snprintf(buf, sizeof buf, "antisymmetry violated at (%d,%d,%d), residual %.3g", i + 1, j + 1, k + 1, residual);
    else
      std::snprintf(buf, sizeof buf, "Jacobi violated at (%d,%d,%d)->%d, residual %.3g", i + 1, j + 1, k + 1, l + 1, residual);
    return buf;
  }
};

/// Checks antisymmetry and the Jacobi identity; exact algebras are checked
/// exactly, float ones against the residual tolerance.
inline std::vector<Violation> validate(const LieAlgebra& g) {
  std::vector<Violation> out;
  int n = g.dim();
  double t = g.is_exact() ? 0.0 : tol::jacobi;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Scalar r = g.c(i, j, k) + g.c(j, i, k);
        if (!r.is_zero(t)) out.push_back({Violation::kAntisymmetry, i, j, k, 0, std::abs(r.to_double())});
      }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Scalar s(g.is_exact() ? Scalar(0) : Scalar(0.0));
          for (int m = 0; m < n; ++m)
            s += g.c(i, j, m) * g.c(m, k, l) + g.c(j, k, m) * g.c(m, i, l) + g.c(k, i, m) * g.c(m, j, l);
          if (!s.is_zero(t)) out.push_back({Violation::kJacobi, i, j, k, l, std::abs(s.to_double())});
        }
  return out;
}

inline void require_dim(const LieAlgebra& g, const Vec& x) {
  if ((int)x.size() != g.dim()) throw std::invalid_argument("vector/algebra dimension mismatch");
}

inline Vec bracket(const LieAlgebra& g, const Vec& x, const Vec& y) {
  require_dim(g, x);
  require_dim(g, y);
  int n = g.dim();
  Vec z((size_t)n, Scalar(0));
  for (int i = 0; i < n; ++i) {
    if (x[(size_t)i].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (y[(size_t)j].is_zero()) continue;
      Scalar f = x[(size_t)i] * y[(size_t)j];
      for (int k = 0; k < n; ++k) z[(size_t)k] += f * g.c(i, j, k);
    }
  }
  return z;
}

/// Matrix of ad(X): column j holds [X, e_j].
inline SMat ad_matrix(const LieAlgebra& g, const Vec& x) {
  require_dim(g, x);
  int n = g.dim();
  SMat m(n, n);
  for (int i = 0; i < n; ++i) {
    if (x[(size_t)i].is_zero()) continue;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) m.at(k, j) += x[(size_t)i] * g.c(i, j, k);
  }
  return m;
}

/// Operator with a recorded domain; matrix is square of size domain.dim()
/// when restricted, or ambient when the domain is the full space.
struct LinearOperator {
  SMat matrix;
  Subspace domain;
};

/// ad(X) as an operator on the whole algebra.
inline LinearOperator ad_operator(const LieAlgebra& g, const Vec& x) {
  return {ad_matrix(g, x), Subspace::full(g.dim())};
}

/// Restriction of ad(X) to an invariant subspace, in the subspace's own
/// echelon coordinates. Throws if the subspace is not invariant.
inline LinearOperator ad_restrict(const LieAlgebra& g, const Vec& x, const Subspace& h) {
  int r = h.dim();
  SMat m(r, r);
  for (int j = 0; j < r; ++j) {
    Vec img = bracket(g, x, h.basis_vector(j));
    Vec coords = h.coordinates(img, 1e-8);
    for (int i = 0; i < r; ++i) m.at(i, j) = coords[(size_t)i];
  }
  return {m, h};
}

/// Symmetric positive definite Gram matrix over the algebra basis.
class InnerProduct {
 public:
  InnerProduct() = default;
  explicit InnerProduct(SMat gram) : gram_(std::move(gram)) {}

  static InnerProduct standard(int n) { return InnerProduct(SMat::identity(n)); }

  /// Metric in which the columns of `frame` are declared orthonormal:
  /// Gram = (F F^t)^{-1}.
  static InnerProduct from_orthonormal_frame(const SMat& frame) {
    return InnerProduct(inverse(frame * frame.transpose()));
  }

  const SMat& gram() const { return gram_; }
  int dim() const { return gram_.rows; }
  bool is_exact() const { return gram_.is_exact(); }

  Scalar ip(const Vec& u, const Vec& v) const { return dot(u, mat_vec(gram_, v)); }
  Scalar norm2(const Vec& u) const { return ip(u, u); }

  bool is_symmetric(double t = tol::spd) const {
    for (int i = 0; i < gram_.rows; ++i)
      for (int j = i + 1; j < gram_.cols; ++j)
        if (!(gram_.at(i, j) - gram_.at(j, i)).is_zero(gram_.is_exact() ? 0.0 : t)) return false;
    return true;
  }

  /// Positive definiteness via leading principal minors.
  bool is_positive_definite(double t = tol::spd) const {
    for (int k = 1; k <= gram_.rows; ++k) {
      SMat lead(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) lead.at(i, j) = gram_.at(i, j);
      Scalar d = det(lead);
      if (d.is_exact() ? d.sign() <= 0 : d.to_double() <= -t) return false;
    }
    return true;
  }

  bool is_spd(double t = tol::spd) const { return is_symmetric(t) && is_positive_definite(t); }

 private:
  SMat gram_;
};

}  // namespace geodesy
