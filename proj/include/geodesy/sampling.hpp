#pragma once

#include "geodesy/geodesic.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace geodesy {

/// Newton iteration on F(X) = (defect entries, |X|^2 - 1) from random unit
/// starts; converged points are deduplicated up to sign. Deterministic for a
/// fixed seed.
inline std::vector<Vec> sample_geodesics(const LieAlgebra& g, const InnerProduct& metric,
                                         int trials, std::uint64_t seed) {
  // extended precision: near branch crossings of the solution variety the
  // residual is quadratic in the distance, so double-only refinement strands
  // samples ~1e-8 away from it
  using LD = long double;
  using MatLD = Eigen::Matrix<LD, Eigen::Dynamic, Eigen::Dynamic>;
  using VecLD = Eigen::Matrix<LD, Eigen::Dynamic, 1>;
  int n = g.dim();
  MatLD gram = metric.gram().to_eigen().cast<LD>();
  // bracket matrices: [X, e_i] = M_i X
  std::vector<MatLD> ms;
  for (int i = 0; i < n; ++i) {
    MatLD m(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) m(k, j) = (LD)g.c(j, i, k).to_double();
    ms.push_back(m);
  }
  auto residual = [&](const VecLD& x) {
    VecLD f(n + 1);
    VecLD gx = gram * x;
    for (int i = 0; i < n; ++i) f[i] = gx.dot(ms[(size_t)i] * x);
    f[n] = x.dot(gx) - (LD)1;
    return f;
  };
  auto jacobian = [&](const VecLD& x) {
    MatLD j(n + 1, n);
    for (int i = 0; i < n; ++i)
      j.row(i) = (gram * ms[(size_t)i] * x + ms[(size_t)i].transpose() * gram * x).transpose();
    j.row(n) = ((LD)2 * gram * x).transpose();
    return j;
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Vec> kept;
  for (int t = 0; t < trials; ++t) {
    VecLD x(n);
    for (int i = 0; i < n; ++i) x[i] = (LD)gauss(rng);
    LD nr = std::sqrt((double)x.dot(gram * x));
    if (nr < 1e-12) continue;
    x /= nr;
    // iterate past the acceptance bar to polish converged points
    for (int it = 0; it < 80; ++it) {
      VecLD f = residual(x);
      if ((double)f.norm() <= 1e-17) break;
      VecLD step = jacobian(x).colPivHouseholderQr().solve(-f);
      if (!step.allFinite()) break;
      VecLD next = x + step;
      if (!next.allFinite() || (double)next.norm() > 1e6) break;
      if (it > 60 && residual(next).norm() >= f.norm()) break;
      x = next;
    }
    if (!x.allFinite() || (double)residual(x).norm() > tol::newton) continue;
    // sign normalization: first significantly nonzero coordinate positive
    for (int i = 0; i < n; ++i) {
      if (std::abs((double)x[i]) > 1e-8) {
        if (x[i] < 0) x = -x;
        break;
      }
    }
    Eigen::VectorXd xd = x.cast<double>();
    bool dup = false;
    for (auto& k : kept)
      if ((vec_to_eigen(k) - xd).norm() <= tol::dedupe) { dup = true; break; }
    if (!dup) kept.push_back(vec_from_eigen(xd));
  }
  return kept;
}

/// Rank of the span of the samples (singular values above 1e-6 of the max).
inline int span_rank(const std::vector<Vec>& samples) {
  if (samples.empty()) return 0;
  Eigen::MatrixXd m((Eigen::Index)samples.size(), (Eigen::Index)samples[0].size());
  for (size_t i = 0; i < samples.size(); ++i) m.row((Eigen::Index)i) = vec_to_eigen(samples[i]).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  double top = svd.singularValues()[0];
  if (top <= 0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-6 * top) ++r;
  return r;
}

enum class ObstructionKind { kIdentitySuspension, kHeisenbergNonunimodular, kSearchEvidence };

inline std::string to_string(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::kIdentitySuspension: return "A_n";
    case ObstructionKind::kHeisenbergNonunimodular: return "heisenberg_nonunimodular";
    case ObstructionKind::kSearchEvidence: return "search_evidence";
  }
  return "?";
}

/// Machine evidence that the geodesic elements lie in a proper subspace.
/// For the analytic kinds the witness vector is metric-orthogonal to every
/// geodesic; search evidence just records the sampled span.
struct ObstructionCertificate {
  ObstructionKind kind;
  Vec witness;        // vector w with <w, X> = 0 for every geodesic X (analytic kinds)
  int trials = 0;
  int max_span_rank = 0;
  bool sampled_orthogonal = true;  // all samples orthogonal to the witness
};

namespace detail {

/// ad(Y)|_h for the first complement direction of h; requires h to be an
/// ideal with one-dimensional complement.
inline std::pair<Vec, LinearOperator> codim1_action(const LieAlgebra& g, const Subspace& h) {
  if (h.dim() != g.dim() - 1) throw WrongShape("ideal is not codimension one");
  if (!is_ideal(g, h)) throw NotAnIdeal();
  Vec y = unit(g.dim(), h.complement_indices().at(0));
  return {y, ad_restrict(g, y, h)};
}

}  // namespace detail

/// Checks the hypotheses of the named obstruction on g and assembles the
/// certificate, cross-checking with a short sampling run.
inline ObstructionCertificate obstruction_certificate(const LieAlgebra& g, const InnerProduct& metric,
                                                      ObstructionKind kind, int trials = 100,
                                                      std::uint64_t seed = 42) {
  ObstructionCertificate cert;
  cert.kind = kind;
  cert.trials = trials;
  int n = g.dim();
  if (kind == ObstructionKind::kIdentitySuspension) {
    Subspace der = derived_subalgebra(g);
    if (der.dim() != n - 1) throw WrongShape("derived algebra is not codimension one");
    if (derived_of(g, der).dim() != 0) throw WrongShape("derived algebra is not abelian");
    auto [y, a] = detail::codim1_action(g, der);
    // action must be c*id with c != 0
    bool exact = a.matrix.is_exact();
    Scalar c = a.matrix.at(0, 0);
    for (int i = 0; i < a.matrix.rows; ++i)
      for (int j = 0; j < a.matrix.cols; ++j) {
        Scalar want = (i == j) ? c : Scalar(0);
        if (!(a.matrix.at(i, j) - want).is_zero(exact ? 0.0 : tol::eig_cluster))
          throw WrongShape("complement action is not a multiple of the identity");
      }
    if (c.is_zero(tol::eig_cluster)) throw WrongShape("complement acts trivially");
    cert.witness = der.basis_vector(0);
  } else if (kind == ObstructionKind::kHeisenbergNonunimodular) {
    if (is_unimodular(g)) throw WrongShape("algebra is unimodular");
    Subspace h = unimodular_kernel(g);
    // centre of the ideal's own structure
    LieAlgebra sub(h.dim());
    for (int i = 0; i < h.dim(); ++i)
      for (int j = i + 1; j < h.dim(); ++j)
        sub.set_bracket(i, j, h.coordinates(bracket(g, h.basis_vector(i), h.basis_vector(j)), 1e-8));
    Subspace zc = center(sub);
    if (zc.dim() != 1) throw WrongShape("ideal centre is not one-dimensional");
    Vec zeta((size_t)n, Scalar(0));
    for (int i = 0; i < h.dim(); ++i) zeta = zeta + zc.basis_vector(0)[(size_t)i] * h.basis_vector(i);
    cert.witness = zeta;
  } else {
    cert.witness = Vec((size_t)n, Scalar(0));
  }

  auto samples = sample_geodesics(g, metric, trials, seed);
  cert.max_span_rank = span_rank(samples);
  if (kind != ObstructionKind::kSearchEvidence) {
    for (auto& s : samples)
      if (std::abs(metric.ip(cert.witness, s).to_double()) > 1e-6) cert.sampled_orthogonal = false;
  }
  return cert;
}

}  // namespace geodesy
