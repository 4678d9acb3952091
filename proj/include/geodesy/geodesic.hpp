#pragma once

#include "geodesy/invariants.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace geodesy {

/// Pairings <X, [X, e_i]>; X is geodesic iff all entries vanish.
struct DefectVector {
  Vec entries;
  bool exact;
  double max_abs() const { return geodesy::max_abs(entries); }
  bool all_zero(double t) const {
    for (auto& e : entries)
      if (!e.is_zero(exact ? 0.0 : t)) return false;
    return true;
  }
};

inline DefectVector defect(const LieAlgebra& g, const InnerProduct& metric, const Vec& x) {
  require_dim(g, x);
  if (metric.dim() != g.dim()) throw std::invalid_argument("metric/algebra dimension mismatch");
  int n = g.dim();
  DefectVector d;
  d.exact = g.is_exact() && metric.is_exact() &&
            std::all_of(x.begin(), x.end(), [](const Scalar& s) { return s.is_exact(); });
  Vec gx = mat_vec(metric.gram(), x);
  d.entries.resize((size_t)n);
  for (int i = 0; i < n; ++i) d.entries[(size_t)i] = dot(gx, bracket(g, x, unit(n, i)));
  return d;
}

inline bool is_geodesic(const LieAlgebra& g, const InnerProduct& metric, const Vec& x,
                        double t = tol::defect) {
  return defect(g, metric, x).all_zero(t);
}

/// Verification record for a claimed geodesic basis: per-vector worst defect,
/// an independence witness, and the orthonormality flag.
struct BasisCertificate {
  InnerProduct metric;
  std::vector<Vec> vectors;
  std::vector<Scalar> defects;  // max-abs defect entry per vector
  Scalar gram_rank_witness;     // det of the coordinate matrix
  bool orthonormal = false;
  bool ok = false;
  std::vector<std::string> violations;
  double tolerance = tol::defect;
};

inline BasisCertificate verify_basis(const LieAlgebra& g, const InnerProduct& metric,
                                     const std::vector<Vec>& vectors, bool require_orthonormal,
                                     double t = tol::defect) {
  BasisCertificate cert;
  cert.metric = metric;
  cert.vectors = vectors;
  cert.tolerance = t;
  int n = g.dim();
  if ((int)vectors.size() != n) {
    cert.violations.push_back("expected " + std::to_string(n) + " vectors, got " +
                              std::to_string(vectors.size()));
    return cert;
  }
  if (!metric.is_spd()) cert.violations.push_back("metric is not symmetric positive definite");

  bool exact = true;
  for (size_t i = 0; i < vectors.size(); ++i) {
    DefectVector d = defect(g, metric, vectors[i]);
    exact = exact && d.exact;
    Scalar worst(0);
    for (auto& e : d.entries)
      if (e.abs().to_double() > worst.abs().to_double()) worst = e.abs();
    cert.defects.push_back(worst);
    if (!d.all_zero(t))
      cert.violations.push_back("vector " + std::to_string(i + 1) + " has defect " +
                                render_double(d.max_abs()));
  }

  SMat coords(n, n);
  for (int i = 0; i < n; ++i) coords.set_row(i, vectors[(size_t)i]);
  cert.gram_rank_witness = det(coords);
  bool independent = exact ? !cert.gram_rank_witness.is_zero()
                           : std::abs(cert.gram_rank_witness.to_double()) > tol::rank_witness;
  if (!independent)
    cert.violations.push_back("vectors are not linearly independent (|det| = " +
                              render_double(std::abs(cert.gram_rank_witness.to_double())) + ")");

  bool ortho = true;
  for (int i = 0; i < n && ortho; ++i)
    for (int j = i; j < n && ortho; ++j) {
      Scalar v = metric.ip(vectors[(size_t)i], vectors[(size_t)j]) - Scalar(i == j ? 1 : 0);
      if (!v.is_zero(exact ? 0.0 : t)) ortho = false;
    }
  cert.orthonormal = ortho;
  if (require_orthonormal && !ortho) cert.violations.push_back("basis is not orthonormal");

  cert.ok = cert.violations.empty();
  return cert;
}

/// exp(A) by scaling and squaring with a truncated series on the scaled
/// matrix; ample for the small operators handled here.
inline Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
  double nrm = a.norm();
  int s = 0;
  while (nrm > 0.5) { nrm /= 2; ++s; }
  Eigen::MatrixXd b = a / std::pow(2.0, s);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  Eigen::MatrixXd sum = term;
  for (int k = 1; k <= 18; ++k) {
    term = (term * b) / double(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

/// |central difference of ||exp(t ad X) Z||^2 at 0  -  2<[X,Z],Z>|.
inline double orbit_derivative_check(const LieAlgebra& g, const InnerProduct& metric, const Vec& x,
                                     const Vec& z, double h = 1e-4) {
  Eigen::MatrixXd adx = ad_matrix(g, x).to_eigen();
  Eigen::MatrixXd gram = metric.gram().to_eigen();
  Eigen::VectorXd z0 = vec_to_eigen(z);
  auto norm2 = [&](const Eigen::VectorXd& v) { return v.dot(gram * v); };
  double plus = norm2(expm(h * adx) * z0);
  double minus = norm2(expm(-h * adx) * z0);
  double fd = (plus - minus) / (2 * h);
  double analytic = 2.0 * (adx * z0).dot(gram * z0);
  return std::abs(fd - analytic);
}

}  // namespace geodesy
