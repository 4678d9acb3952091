#pragma once

#include "geodesy/errors.hpp"
#include "geodesy/lie_algebra.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace geodesy {

/// Span of [u, v] over basis pairs of s.
inline Subspace derived_of(const LieAlgebra& g, const Subspace& s) {
  std::vector<Vec> brackets;
  for (int i = 0; i < s.dim(); ++i)
    for (int j = i + 1; j < s.dim(); ++j)
      brackets.push_back(bracket(g, s.basis_vector(i), s.basis_vector(j)));
  return Subspace::span(brackets, g.dim());
}

inline Subspace derived_subalgebra(const LieAlgebra& g) {
  return derived_of(g, Subspace::full(g.dim()));
}

/// g' >= g'' >= ... until stabilization (the terminal term is included).
inline std::vector<Subspace> derived_series(const LieAlgebra& g) {
  std::vector<Subspace> out;
  Subspace cur = derived_subalgebra(g);
  out.push_back(cur);
  while (cur.dim() > 0) {
    Subspace nxt = derived_of(g, cur);
    if (nxt.dim() == cur.dim()) break;
    out.push_back(nxt);
    cur = nxt;
  }
  return out;
}

/// [g, C^k] chain starting at C^2 = g'.
inline std::vector<Subspace> lower_central_series(const LieAlgebra& g) {
  std::vector<Subspace> out;
  Subspace full = Subspace::full(g.dim());
  Subspace cur = derived_subalgebra(g);
  out.push_back(cur);
  while (cur.dim() > 0) {
    std::vector<Vec> brackets;
    for (int i = 0; i < g.dim(); ++i)
      for (int j = 0; j < cur.dim(); ++j)
        brackets.push_back(bracket(g, unit(g.dim(), i), cur.basis_vector(j)));
    Subspace nxt = Subspace::span(brackets, g.dim());
    if (nxt.dim() == cur.dim()) break;
    out.push_back(nxt);
    cur = nxt;
  }
  return out;
}

inline bool is_solvable(const LieAlgebra& g) { return derived_series(g).back().dim() == 0; }
inline bool is_nilpotent(const LieAlgebra& g) { return lower_central_series(g).back().dim() == 0; }

/// Null space of X -> ad(X), flattened as an n^2 x n system.
inline Subspace center(const LieAlgebra& g) {
  int n = g.dim();
  SMat sys(n * n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) sys.at(j * n + k, i) = g.c(i, j, k);
  return Subspace::span(kernel(sys));
}

/// chi(X) = Tr ad(X) as a covector on the basis.
inline Vec trace_character(const LieAlgebra& g) {
  int n = g.dim();
  Vec chi((size_t)n, Scalar(0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) chi[(size_t)i] += g.c(i, k, k);
  return chi;
}

inline bool is_unimodular(const LieAlgebra& g) {
  return vec_is_zero(trace_character(g), g.is_exact() ? 0.0 : tol::jacobi);
}

inline Subspace unimodular_kernel(const LieAlgebra& g) {
  if (is_unimodular(g)) return Subspace::full(g.dim());
  SMat row(1, g.dim());
  row.set_row(0, trace_character(g));
  return Subspace::span(kernel(row));
}

/// Killing form matrix B(e_i, e_j) = Tr(ad e_i ad e_j).
inline SMat killing_form(const LieAlgebra& g) {
  int n = g.dim();
  std::vector<SMat> ads;
  ads.reserve((size_t)n);
  for (int i = 0; i < n; ++i) ads.push_back(ad_matrix(g, unit(n, i)));
  SMat k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Scalar tr(0);
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) tr += ads[(size_t)i].at(p, q) * ads[(size_t)j].at(q, p);
      k.at(i, j) = tr;
      k.at(j, i) = tr;
    }
  return k;
}

inline bool is_ideal(const LieAlgebra& g, const Subspace& h, double t = tol::pivot) {
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < h.dim(); ++j)
      if (!h.contains(bracket(g, unit(g.dim(), i), h.basis_vector(j)), t)) return false;
  return true;
}

struct Quotient {
  LieAlgebra algebra;
  SMat projection;              // q x n, coordinates in the quotient basis
  std::vector<int> section;     // standard-basis indices lifting the quotient basis
};

/// g / h for an ideal h; the quotient basis is the image of the standard
/// basis vectors that complete h.
inline Quotient quotient_by_ideal(const LieAlgebra& g, const Subspace& h) {
  if (!is_ideal(g, h)) throw NotAnIdeal();
  int n = g.dim();
  std::vector<int> comp = h.complement_indices();
  int q = (int)comp.size();
  // columns: chosen lifts first, then h basis; projection = top rows of B^{-1}
  SMat b(n, n);
  for (int j = 0; j < q; ++j) b.at(comp[(size_t)j], j) = Scalar(1);
  for (int j = 0; j < h.dim(); ++j) {
    Vec hv = h.basis_vector(j);
    for (int i = 0; i < n; ++i) b.at(i, q + j) = hv[(size_t)i];
  }
  SMat binv = inverse(b);
  SMat proj(q, n);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < n; ++j) proj.at(i, j) = binv.at(i, j);
  LieAlgebra quot(q, g.name().empty() ? "" : g.name() + "/ideal");
  std::vector<std::string> labels;
  for (int j = 0; j < q; ++j) labels.push_back(g.labels()[(size_t)comp[(size_t)j]] + "~");
  quot.set_labels(labels);
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j) {
      Vec br = bracket(g, unit(n, comp[(size_t)i]), unit(n, comp[(size_t)j]));
      quot.set_bracket(i, j, mat_vec(proj, br));
    }
  return {quot, proj, comp};
}

inline bool is_derivation(const LieAlgebra& h, const SMat& phi, double t = tol::jacobi) {
  int n = h.dim();
  bool exact = h.is_exact() && phi.is_exact();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec lhs = mat_vec(phi, bracket(h, unit(n, i), unit(n, j)));
      Vec rhs = bracket(h, phi.col(i), unit(n, j)) + bracket(h, unit(n, i), phi.col(j));
      if (!vec_is_zero(lhs - rhs, exact ? 0.0 : t)) return false;
    }
  return true;
}

/// Extension of h by one generator X0 acting as the derivation phi.
inline LieAlgebra suspension(const LieAlgebra& h, const SMat& phi, const std::string& name = "") {
  if (!is_derivation(h, phi)) throw NotADerivation();
  int n = h.dim();
  LieAlgebra g(n + 1, name);
  std::vector<std::string> labels{"X0"};
  for (auto& l : h.labels()) labels.push_back(l);
  g.set_labels(labels);
  for (int j = 0; j < n; ++j) {
    Vec img((size_t)n + 1, Scalar(0));
    for (int k = 0; k < n; ++k) img[(size_t)k + 1] = phi.at(k, j);
    g.set_bracket(0, j + 1, img);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) g.set_bracket_term(i + 1, j + 1, k + 1, h.c(i, j, k));
  return g;
}

inline LieAlgebra direct_sum(const LieAlgebra& g1, const LieAlgebra& g2, const std::string& name = "") {
  int n1 = g1.dim(), n2 = g2.dim();
  LieAlgebra g(n1 + n2, name);
  std::vector<std::string> labels;
  for (auto& l : g1.labels()) labels.push_back(l);
  for (auto& l : g2.labels()) labels.push_back(l + "'");
  g.set_labels(labels);
  for (int i = 0; i < n1; ++i)
    for (int j = i + 1; j < n1; ++j)
      for (int k = 0; k < n1; ++k) g.set_bracket_term(i, j, k, g1.c(i, j, k));
  for (int i = 0; i < n2; ++i)
    for (int j = i + 1; j < n2; ++j)
      for (int k = 0; k < n2; ++k) g.set_bracket_term(n1 + i, n1 + j, n1 + k, g2.c(i, j, k));
  return g;
}

// ---- nilradical of a solvable algebra ----

namespace detail {

using Cplx = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;

inline MatC kernel_orthobasis(const MatC& m, double t) {
  Eigen::JacobiSVD<MatC> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double scale = sv.size() ? sv[0] : 0.0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > t * std::max(1.0, scale)) ++r;
  return svd.matrixV().rightCols(m.cols() - r);
}

/// Common eigenvector of the representation of the solvable real algebra
/// spanned by s (a subspace of g), by the inductive codimension-one-ideal
/// argument behind Lie's theorem.
inline VecC common_eigenvector(const LieAlgebra& g, const Subspace& s,
                               const std::function<MatC(const Vec&)>& rep, int space_dim) {
  if (s.dim() == 0) {
    VecC v = VecC::Zero(space_dim);
    v[0] = 1.0;
    return v;
  }
  Subspace der = derived_of(g, s);
  if (der.dim() >= s.dim()) throw NotSolvable();
  // codimension-one ideal: derived algebra plus all but one spanning vector
  int skip = -1;
  Subspace h;
  for (int j = 0; j < s.dim() && skip < 0; ++j) {
    std::vector<Vec> rows;
    for (int i = 0; i < der.dim(); ++i) rows.push_back(der.basis_vector(i));
    for (int i = 0; i < s.dim(); ++i)
      if (i != j) rows.push_back(s.basis_vector(i));
    Subspace cand = Subspace::span(rows, g.dim());
    if (cand.dim() == s.dim() - 1) { skip = j; h = cand; }
  }
  if (skip < 0) throw NumericalFailure("no codimension-one ideal found");
  Vec x = s.basis_vector(skip);

  VecC w = common_eigenvector(g, h, rep, space_dim);
  // weight space of h through w
  if (h.dim() == 0) {
    MatC m = rep(x);
    Eigen::ComplexEigenSolver<MatC> es(m);
    return es.eigenvectors().col(0);
  }
  MatC stacked(space_dim * h.dim(), space_dim);
  for (int i = 0; i < h.dim(); ++i) {
    MatC m = rep(h.basis_vector(i));
    Cplx lambda = w.dot(m * w) / w.dot(w);
    stacked.block(i * space_dim, 0, space_dim, space_dim) = m - lambda * MatC::Identity(space_dim, space_dim);
  }
  MatC wsp = kernel_orthobasis(stacked, tol::eig_cluster);
  if (wsp.cols() == 0) throw NumericalFailure("weight space extraction stalled");
  // rep(x) preserves the weight space; take an eigenvector inside it
  MatC m = wsp.adjoint() * rep(x) * wsp;
  Eigen::ComplexEigenSolver<MatC> es(m);
  VecC v = wsp * es.eigenvectors().col(0);
  return v / v.norm();
}

}  // namespace detail

/// Weight functionals lambda_i : g -> C of the adjoint representation of a
/// solvable algebra (diagonal of a simultaneous triangularization). Weights
/// vanish on the derived algebra, so each one is rebuilt from its values on
/// a complement, which scrubs the numerical residue off the g' directions.
inline std::vector<Eigen::RowVectorXcd> adjoint_weights(const LieAlgebra& g) {
  if (!is_solvable(g)) throw NotSolvable();
  int n = g.dim();
  std::vector<Eigen::MatrixXd> ads;
  for (int i = 0; i < n; ++i) ads.push_back(ad_matrix(g, unit(n, i)).to_eigen());

  // projection onto the complement coordinates along g'
  Subspace der = derived_subalgebra(g);
  std::vector<int> comp = der.complement_indices();
  int q = (int)comp.size();
  SMat basis_cols(n, n);
  for (int j = 0; j < q; ++j) basis_cols.at(comp[(size_t)j], j) = Scalar(1);
  for (int j = 0; j < der.dim(); ++j) {
    Vec hv = der.basis_vector(j);
    for (int i = 0; i < n; ++i) basis_cols.at(i, q + j) = hv[(size_t)i];
  }
  SMat binv = inverse(basis_cols);
  Eigen::MatrixXd comp_proj(q, n);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < n; ++j) comp_proj(i, j) = binv.at(i, j).to_double();

  detail::MatC basis = detail::MatC::Identity(n, n);  // columns span the current quotient
  std::vector<Eigen::RowVectorXcd> weights;
  Subspace whole = Subspace::full(n);
  while (basis.cols() > 0) {
    int k = (int)basis.cols();
    auto rep = [&](const Vec& x) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        double xi = x[(size_t)i].to_double();
        if (xi != 0.0) m += xi * ads[(size_t)i];
      }
      return detail::MatC(basis.adjoint() * m.cast<detail::Cplx>() * basis);
    };
    detail::VecC v = detail::common_eigenvector(g, whole, rep, k);
    Eigen::RowVectorXcd raw(n);
    for (int i = 0; i < n; ++i) {
      detail::MatC m = rep(unit(n, i));
      detail::Cplx mu = v.dot(m * v) / v.dot(v);
      if ((m * v - mu * v).norm() > tol::eig_cluster * (1.0 + m.norm()))
        throw NumericalFailure("common eigenvector extraction stalled");
      raw[i] = mu;
    }
    // rebuild from the complement values so the functional kills g' exactly
    Eigen::RowVectorXcd lambda = Eigen::RowVectorXcd::Zero(n);
    for (int t = 0; t < q; ++t) lambda += raw[comp[(size_t)t]] * comp_proj.row(t).cast<detail::Cplx>();
    weights.push_back(lambda);
    detail::MatC stacked(1, k);
    stacked.row(0) = v.adjoint();
    basis = detail::MatC(basis * detail::kernel_orthobasis(stacked, tol::eig_cluster));
  }
  return weights;
}

/// Maximal nilpotent ideal of a solvable algebra: the joint kernel of the
/// adjoint weights, computed in floating point and snapped back to exact
/// rationals when that survives exact re-verification.
inline Subspace nilradical_solvable(const LieAlgebra& g) {
  if (!is_solvable(g)) throw NotSolvable();
  if (is_nilpotent(g)) return Subspace::full(g.dim());
  int n = g.dim();
  auto weights = adjoint_weights(g);
  SMat sys(2 * (int)weights.size(), n);
  for (size_t w = 0; w < weights.size(); ++w)
    for (int i = 0; i < n; ++i) {
      sys.at(2 * (int)w, i) = Scalar(weights[w][i].real());
      sys.at(2 * (int)w + 1, i) = Scalar(weights[w][i].imag());
    }
  SMat ker = kernel(sys);
  Subspace nil = Subspace::span(ker);

  auto verify = [&](const Subspace& cand, double t) {
    Subspace der = derived_subalgebra(g);
    if (der.dim() > 0 && !cand.contains(der, std::max(t, 1e-8))) return false;
    if (!is_ideal(g, cand, std::max(t, 1e-8))) return false;
    // restricted structure must be nilpotent
    LieAlgebra sub((int)cand.dim());
    for (int i = 0; i < cand.dim(); ++i)
      for (int j = i + 1; j < cand.dim(); ++j) {
        Vec br = bracket(g, cand.basis_vector(i), cand.basis_vector(j));
        sub.set_bracket(i, j, cand.coordinates(br, std::max(t, 1e-8)));
      }
    return is_nilpotent(sub);
  };

  if (g.is_exact()) {
    // snap the echelon rows to rationals and re-verify exactly
    SMat snapped(nil.dim(), n);
    bool ok = true;
    for (int i = 0; i < nil.dim() && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        Rational q;
        ok = rational_reconstruct(nil.rows().at(i, j).to_double(), 1 << 20, 1e-7, &q);
        if (ok) snapped.at(i, j) = Scalar(q);
      }
    if (ok) {
      Subspace exact_nil = Subspace::span(snapped);
      if (exact_nil.dim() == nil.dim() && verify(exact_nil, 0.0)) return exact_nil;
    }
  }
  if (!verify(nil, tol::eig_cluster)) throw NumericalFailure("nilradical post-verification failed");
  return nil;
}

}  // namespace geodesy
