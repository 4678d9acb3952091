#pragma once

#include "geodesy/scalar.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace geodesy {

using Vec = std::vector<Scalar>;

namespace tol {
inline constexpr double jacobi = 1e-9;         // float-mode structure residuals
inline constexpr double spd = 1e-12;           // positive-definiteness slack
inline constexpr double pivot = 1e-10;         // float echelon pivot threshold
inline constexpr double defect = 1e-9;         // float-mode geodesic defect
inline constexpr double rank_witness = 1e-8;   // basis independence |det|
inline constexpr double eig_cluster = 1e-8;    // eigenvalue clustering / residuals
inline constexpr double newton = 1e-10;        // sampler convergence
inline constexpr double dedupe = 1e-6;         // sampler dedup distance
inline constexpr double zero_diag = 1e-10;     // rotated diagonal residual
inline constexpr double orthogonality = 1e-12; // Q'Q - I residual
inline constexpr double fd_residual = 1e-6;    // finite-difference check
}  // namespace tol

/// Dense row-major matrix of Scalars; tiny sizes only.
struct SMat {
  int rows = 0, cols = 0;
  std::vector<Scalar> a;

  SMat() = default;
  SMat(int r, int c) : rows(r), cols(c), a((size_t)r * c, Scalar(0)) {}

  static SMat identity(int n) {
    SMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
  }

  Scalar& at(int i, int j) { return a[(size_t)i * cols + j]; }
  const Scalar& at(int i, int j) const { return a[(size_t)i * cols + j]; }

  bool is_exact() const {
    return std::all_of(a.begin(), a.end(), [](const Scalar& s) { return s.is_exact(); });
  }

  SMat transpose() const {
    SMat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Vec row(int i) const { return Vec(a.begin() + (size_t)i * cols, a.begin() + (size_t)(i + 1) * cols); }
  Vec col(int j) const {
    Vec v((size_t)rows);
    for (int i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
  }
  void set_row(int i, const Vec& v) {
    for (int j = 0; j < cols; ++j) at(i, j) = v[j];
  }

  friend SMat operator+(const SMat& x, const SMat& y) {
    SMat z(x.rows, x.cols);
    for (size_t k = 0; k < z.a.size(); ++k) z.a[k] = x.a[k] + y.a[k];
    return z;
  }
  friend SMat operator-(const SMat& x, const SMat& y) {
    SMat z(x.rows, x.cols);
    for (size_t k = 0; k < z.a.size(); ++k) z.a[k] = x.a[k] - y.a[k];
    return z;
  }
  friend SMat operator*(const SMat& x, const SMat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
    SMat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        if (x.at(i, k).is_zero()) continue;
        for (int j = 0; j < y.cols; ++j) z.at(i, j) += x.at(i, k) * y.at(k, j);
      }
    return z;
  }
  friend SMat operator*(const Scalar& c, const SMat& x) {
    SMat z(x.rows, x.cols);
    for (size_t k = 0; k < z.a.size(); ++k) z.a[k] = c * x.a[k];
    return z;
  }

  Eigen::MatrixXd to_eigen() const {
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = at(i, j).to_double();
    return m;
  }
  static SMat from_eigen(const Eigen::MatrixXd& m) {
    SMat z((int)m.rows(), (int)m.cols());
    for (int i = 0; i < z.rows; ++i)
      for (int j = 0; j < z.cols; ++j) z.at(i, j) = Scalar(m(i, j));
    return z;
  }
};

// ---- vector helpers ----

inline Vec operator+(const Vec& x, const Vec& y) {
  Vec z(x.size());
  for (size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return z;
}
inline Vec operator-(const Vec& x, const Vec& y) {
  Vec z(x.size());
  for (size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
  return z;
}
inline Vec operator*(const Scalar& c, const Vec& x) {
  Vec z(x.size());
  for (size_t i = 0; i < x.size(); ++i) z[i] = c * x[i];
  return z;
}
inline Vec operator-(const Vec& x) { return Scalar(-1) * x; }

inline Scalar dot(const Vec& x, const Vec& y) {
  Scalar s(0);
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline Vec mat_vec(const SMat& m, const Vec& x) {
  if ((size_t)m.cols != x.size()) throw std::invalid_argument("matrix/vector shape mismatch");
  Vec z((size_t)m.rows, Scalar(0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) z[(size_t)i] += m.at(i, j) * x[(size_t)j];
  return z;
}

inline bool vec_is_zero(const Vec& x, double t = 0.0) {
  return std::all_of(x.begin(), x.end(), [&](const Scalar& s) { return s.is_zero(t); });
}

inline double max_abs(const Vec& x) {
  double m = 0;
  for (auto& s : x) m = std::max(m, std::abs(s.to_double()));
  return m;
}

inline Vec unit(int n, int i) {
  Vec v((size_t)n, Scalar(0));
  v[(size_t)i] = Scalar(1);
  return v;
}

inline Eigen::VectorXd vec_to_eigen(const Vec& v) {
  Eigen::VectorXd e((Eigen::Index)v.size());
  for (size_t i = 0; i < v.size(); ++i) e[(Eigen::Index)i] = v[i].to_double();
  return e;
}
inline Vec vec_from_eigen(const Eigen::VectorXd& e) {
  Vec v((size_t)e.size());
  for (Eigen::Index i = 0; i < e.size(); ++i) v[(size_t)i] = Scalar(e[i]);
  return v;
}

// ---- elimination ----

/// Reduced row echelon form in place. Pivot column = first column with a
/// usable entry; pivots scaled to 1; exact matrices eliminate exactly, float
/// ones use the pivot threshold and pick the largest entry in the column.
inline int rref(SMat& m, std::vector<int>* pivot_cols = nullptr) {
  bool exact = m.is_exact();
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int piv = -1;
    if (exact) {
      for (int i = r; i < m.rows; ++i)
        if (!m.at(i, c).is_zero()) { piv = i; break; }
    } else {
      double best = tol::pivot;
      for (int i = r; i < m.rows; ++i) {
        double v = std::abs(m.at(i, c).to_double());
        if (v > best) { best = v; piv = i; }
      }
    }
    if (piv < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    Scalar p = m.at(r, c);
    for (int j = c; j < m.cols; ++j) m.at(r, j) /= p;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      Scalar f = m.at(i, c);
      if (f.is_zero()) continue;
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
      m.at(i, c) = exact ? Scalar(0) : Scalar(0.0);
    }
    if (pivot_cols) pivot_cols->push_back(c);
    ++r;
  }
  // drop numerically dead rows below the rank line
  for (int i = r; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (!exact && std::abs(m.at(i, j).to_double()) <= tol::pivot) m.at(i, j) = Scalar(0.0);
  return r;
}

inline int rank_of(SMat m) { return rref(m); }

/// Canonical basis of the null space, one row per kernel vector.
inline SMat kernel(const SMat& m_in) {
  SMat m = m_in;
  std::vector<int> piv;
  int r = rref(m, &piv);
  std::vector<bool> is_piv((size_t)m.cols, false);
  for (int c : piv) is_piv[(size_t)c] = true;
  SMat out(m.cols - r, m.cols);
  int k = 0;
  for (int c = 0; c < m.cols; ++c) {
    if (is_piv[(size_t)c]) continue;
    out.at(k, c) = Scalar(1);
    for (int i = 0; i < r; ++i) out.at(k, piv[(size_t)i]) = -m.at(i, c);
    ++k;
  }
  rref(out);  // canonical ordering
  return out;
}

inline Scalar det(SMat m) {
  if (m.rows != m.cols) throw std::invalid_argument("det of non-square matrix");
  bool exact = m.is_exact();
  Scalar d(1);
  for (int c = 0; c < m.cols; ++c) {
    int piv = -1;
    if (exact) {
      for (int i = c; i < m.rows; ++i)
        if (!m.at(i, c).is_zero()) { piv = i; break; }
    } else {
      double best = 0;
      for (int i = c; i < m.rows; ++i) {
        double v = std::abs(m.at(i, c).to_double());
        if (v > best) { best = v; piv = i; }
      }
      if (best == 0) piv = -1;
    }
    if (piv < 0) return exact ? Scalar(0) : Scalar(0.0);
    if (piv != c) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    for (int i = c + 1; i < m.rows; ++i) {
      Scalar f = m.at(i, c) / m.at(c, c);
      if (f.is_zero()) continue;
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return d;
}

inline SMat inverse(const SMat& m_in) {
  if (m_in.rows != m_in.cols) throw std::invalid_argument("inverse of non-square matrix");
  int n = m_in.rows;
  SMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m_in.at(i, j);
    aug.at(i, n + i) = Scalar(1);
  }
  std::vector<int> piv;
  int r = rref(aug, &piv);
  if (r < n || piv[(size_t)n - 1] >= n) throw std::domain_error("matrix is singular");
  SMat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

/// Solves m x = b; throws on inconsistency. Underdetermined systems get
/// zeros in the free coordinates.
inline Vec solve(const SMat& m_in, const Vec& b) {
  SMat aug(m_in.rows, m_in.cols + 1);
  for (int i = 0; i < m_in.rows; ++i) {
    for (int j = 0; j < m_in.cols; ++j) aug.at(i, j) = m_in.at(i, j);
    aug.at(i, m_in.cols) = b[(size_t)i];
  }
  std::vector<int> piv;
  int r = rref(aug, &piv);
  bool exact = aug.is_exact();
  for (int i = 0; i < r; ++i)
    if (piv[(size_t)i] == m_in.cols) throw std::domain_error("inconsistent linear system");
  Vec x((size_t)m_in.cols, exact ? Scalar(0) : Scalar(0.0));
  for (int i = 0; i < r; ++i)
    if (piv[(size_t)i] < m_in.cols) x[(size_t)piv[(size_t)i]] = aug.at(i, m_in.cols);
  return x;
}

/// Characteristic polynomial coefficients [1, c_1, ..., c_n] of
/// t^n + c_1 t^{n-1} + ... + c_n, by the Faddeev-LeVerrier recurrence.
inline std::vector<Scalar> char_poly(const SMat& A) {
  if (A.rows != A.cols) throw std::invalid_argument("char_poly of non-square matrix");
  int n = A.rows;
  std::vector<Scalar> c((size_t)n + 1, Scalar(0));
  c[0] = Scalar(1);
  SMat M = SMat(n, n);
  for (int k = 1; k <= n; ++k) {
    // M <- A (M + c_{k-1} I)
    SMat t = M;
    for (int i = 0; i < n; ++i) t.at(i, i) += c[(size_t)k - 1];
    M = A * t;
    Scalar tr(0);
    for (int i = 0; i < n; ++i) tr += M.at(i, i);
    c[(size_t)k] = Scalar(Rational(-1, k)) * tr;
    if (!A.is_exact()) c[(size_t)k] = Scalar(c[(size_t)k].to_double());
  }
  return c;
}

}  // namespace geodesy
