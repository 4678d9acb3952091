#pragma once

#include "geodesy/decompose.hpp"
#include "geodesy/quadratic.hpp"
#include "geodesy/sampling.hpp"

#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace geodesy {

/// Inner product plus candidate geodesic basis, already re-verified.
struct ConstructionResult {
  InnerProduct metric;
  std::vector<Vec> basis;
  BasisCertificate certificate;
  std::string method;
};

struct Undetermined {
  std::vector<std::string> failures;
};

using ConstructOutcome = std::variant<ConstructionResult, ObstructionCertificate>;
using AutoOutcome = std::variant<ConstructionResult, ObstructionCertificate, Undetermined>;

namespace detail {

inline ConstructionResult finish(const LieAlgebra& g, InnerProduct metric, std::vector<Vec> basis,
                                 const std::string& method, bool require_orthonormal) {
  BasisCertificate cert = verify_basis(g, metric, basis, require_orthonormal);
  if (!cert.ok) {
    std::string msg = method + " produced an invalid certificate:";
    for (auto& v : cert.violations) msg += " " + v;
    throw NumericalFailure(msg);
  }
  return {std::move(metric), std::move(basis), std::move(cert), method};
}

inline ConstructionResult trivial_abelian(const LieAlgebra& g) {
  std::vector<Vec> basis;
  for (int i = 0; i < g.dim(); ++i) basis.push_back(unit(g.dim(), i));
  return finish(g, InnerProduct::standard(g.dim()), basis, "abelian", true);
}

inline SMat frame_from_columns(const std::vector<Vec>& cols) {
  int n = (int)cols[0].size();
  SMat f(n, (int)cols.size());
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < n; ++i) f.at(i, (int)j) = cols[j][(size_t)i];
  return f;
}

inline std::vector<Vec> greedy_independent(const std::vector<Vec>& cands, int want) {
  std::vector<Vec> picked;
  Eigen::MatrixXd acc(cands.empty() ? 0 : (int)cands[0].size(), 0);
  for (auto& c : cands) {
    if ((int)picked.size() == want) break;
    Eigen::MatrixXd trial(acc.rows(), acc.cols() + 1);
    if (acc.cols() > 0) trial << acc, vec_to_eigen(c);
    else trial = vec_to_eigen(c);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(trial);
    if (svd.singularValues()[trial.cols() - 1] > 1e-9 * std::max(1.0, svd.singularValues()[0])) {
      acc = trial;
      picked.push_back(c);
    }
  }
  if ((int)picked.size() != want) throw NumericalFailure("independent selection fell short");
  return picked;
}

}  // namespace detail

/// Central quotient data; throws TrivialCenter when the centre vanishes.
inline std::pair<Subspace, Quotient> central_quotient(const LieAlgebra& g) {
  Subspace z = center(g);
  if (z.dim() == 0) throw TrivialCenter();
  return {z, quotient_by_ideal(g, z)};
}

/// Lifts a construction on g/z through a central subspace z: the section
/// lifts the quotient basis, z keeps the standard metric, and the two parts
/// are declared orthogonal. Orthonormality survives the lift.
inline ConstructionResult lift_center_quotient(const LieAlgebra& g, const Subspace& z,
                                               const Quotient& quot, const ConstructionResult& inner) {
  if (z.dim() == 0) throw TrivialCenter();
  if (!center(g).contains(z)) throw std::invalid_argument("subspace is not central");
  int n = g.dim();
  int q = quot.algebra.dim();
  // columns: section lifts, then z basis
  std::vector<Vec> cols;
  for (int t = 0; t < q; ++t) cols.push_back(unit(n, quot.section[(size_t)t]));
  for (int i = 0; i < z.dim(); ++i) cols.push_back(z.basis_vector(i));
  SMat f = detail::frame_from_columns(cols);
  SMat finv = inverse(f);
  // block metric: quotient Gram on the section, identity on z
  SMat block(n, n);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) block.at(i, j) = inner.metric.gram().at(i, j);
  for (int i = q; i < n; ++i) block.at(i, i) = Scalar(1);
  InnerProduct metric(finv.transpose() * block * finv);

  std::vector<Vec> basis;
  for (auto& b : inner.basis) {
    Vec w((size_t)n, Scalar(0));
    for (int t = 0; t < q; ++t) w = w + b[(size_t)t] * unit(n, quot.section[(size_t)t]);
    basis.push_back(w);
  }
  for (int i = 0; i < z.dim(); ++i) basis.push_back(z.basis_vector(i));
  return detail::finish(g, metric, basis, "center_lift(" + inner.method + ")", false);
}

/// Any inner product on a unimodular algebra with a codimension-one abelian
/// ideal admits an orthonormal geodesic basis: rotate the symmetrized normal
/// action to zero diagonal.
inline ConstructionResult construct_unimodular_codim1(const LieAlgebra& g, const Subspace& h,
                                                      const InnerProduct& metric) {
  int n = g.dim();
  if (!is_unimodular(g)) throw HypothesisFailed("unimodular");
  if (h.dim() != n - 1) throw HypothesisFailed("codimension-one ideal");
  if (!is_ideal(g, h)) throw HypothesisFailed("ideal");
  if (derived_of(g, h).dim() != 0) throw HypothesisFailed("abelian ideal");
  if (!metric.is_spd()) throw HypothesisFailed("positive definite metric");

  // unit normal to h
  Subspace normal = h.perp(&metric.gram());
  Vec y = normal.basis_vector(0);
  y = (Scalar(1) / metric.norm2(y).sqrt()) * y;

  // orthonormal basis of h under the metric (modified Gram-Schmidt)
  std::vector<Vec> f;
  for (int i = 0; i < h.dim(); ++i) {
    Vec v = h.basis_vector(i);
    for (auto& prev : f) v = v - metric.ip(v, prev) * prev;
    v = (Scalar(1) / metric.norm2(v).sqrt()) * v;
    f.push_back(v);
  }

  Eigen::MatrixXd m(n - 1, n - 1);
  for (int i = 0; i < n - 1; ++i) {
    Vec img = bracket(g, y, f[(size_t)i]);
    for (int k = 0; k < n - 1; ++k) m(k, i) = metric.ip(img, f[(size_t)k]).to_double();
  }
  Eigen::MatrixXd s = 0.5 * (m + m.transpose());
  Eigen::MatrixXd qrot = zero_diagonal_rotate(s);

  std::vector<Vec> basis{y};
  bool rotated = (qrot - Eigen::MatrixXd::Identity(n - 1, n - 1)).norm() > 0;
  for (int i = 0; i < n - 1; ++i) {
    if (!rotated) {
      basis.push_back(f[(size_t)i]);
      continue;
    }
    Vec b((size_t)n, Scalar(0.0));
    for (int k = 0; k < n - 1; ++k) b = b + Scalar(qrot(k, i)) * f[(size_t)k];
    basis.push_back(b);
  }
  return detail::finish(g, metric, basis, "unimodular_codim1", true);
}

namespace detail {

struct HeisenbergShape {
  Vec zeta;   // ambient generator of the ideal's centre
  int half;   // m with dim h = 2m+1
};

/// Recognizes h as a Heisenberg algebra: one-dimensional centre, brackets
/// landing on it, and a nondegenerate induced skew form.
inline std::optional<HeisenbergShape> heisenberg_shape(const LieAlgebra& g, const Subspace& h) {
  int r = h.dim();
  if (r < 3 || r % 2 == 0) return std::nullopt;
  LieAlgebra sub(r);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      Vec br = bracket(g, h.basis_vector(i), h.basis_vector(j));
      try {
        sub.set_bracket(i, j, h.coordinates(br, 1e-8));
      } catch (const std::domain_error&) {
        return std::nullopt;
      }
    }
  Subspace zc = center(sub);
  if (zc.dim() != 1) return std::nullopt;
  Vec zeta_local = zc.basis_vector(0);
  // brackets must be multiples of zeta, with a nondegenerate coefficient form
  // on a complement of zeta inside h
  Subspace zline = Subspace::span({zeta_local}, r);
  std::vector<int> comp = zline.complement_indices();
  SMat sigma((int)comp.size(), (int)comp.size());
  bool exact = sub.is_exact();
  for (size_t i = 0; i < comp.size(); ++i)
    for (size_t j = 0; j < comp.size(); ++j) {
      Vec br = bracket(sub, unit(r, comp[i]), unit(r, comp[j]));
      // br = s * zeta_local required
      int lead = 0;
      while (lead < r && zeta_local[(size_t)lead].is_zero(1e-10)) ++lead;
      Scalar s = br[(size_t)lead] / zeta_local[(size_t)lead];
      if (!vec_is_zero(br - s * zeta_local, exact ? 0.0 : 1e-8)) return std::nullopt;
      sigma.at((int)i, (int)j) = s;
    }
  Scalar d = det(sigma);
  if (std::abs(d.to_double()) <= 1e-10) return std::nullopt;
  Vec zeta((size_t)g.dim(), Scalar(0));
  for (int i = 0; i < r; ++i) zeta = zeta + zeta_local[(size_t)i] * h.basis_vector(i);
  return HeisenbergShape{zeta, (r - 1) / 2};
}

}  // namespace detail

/// Codimension-one Heisenberg ideal: nonunimodular algebras are obstructed
/// (every geodesic is orthogonal to the centre generator); unimodular ones
/// get an orthonormal geodesic basis through the central quotient.
inline ConstructOutcome construct_heisenberg_codim1(const LieAlgebra& g, const Subspace& h,
                                                    std::uint64_t seed = 42) {
  int n = g.dim();
  if (h.dim() != n - 1 || !is_ideal(g, h)) throw NotHeisenbergIdeal();
  auto shape = detail::heisenberg_shape(g, h);
  if (!shape) throw NotHeisenbergIdeal();
  Vec y = unit(n, h.complement_indices().at(0));
  Vec br = bracket(g, y, shape->zeta);
  int lead = 0;
  while (lead < n && shape->zeta[(size_t)lead].is_zero(1e-10)) ++lead;
  Scalar lambda = br[(size_t)lead] / shape->zeta[(size_t)lead];
  if (!vec_is_zero(br - lambda * shape->zeta, g.is_exact() ? 0.0 : 1e-8))
    throw NumericalFailure("centre generator is not an eigenvector of the complement action");

  if (!lambda.is_zero(1e-9)) {
    if (is_unimodular(g)) throw NumericalFailure("nonzero centre eigenvalue on a unimodular algebra");
    return obstruction_certificate(g, InnerProduct::standard(n), ObstructionKind::kHeisenbergNonunimodular,
                                   200, seed);
  }
  // unimodular branch: quotient by the (now central) centre line
  Subspace zline = Subspace::span({shape->zeta}, n);
  Quotient quot = quotient_by_ideal(g, zline);
  std::vector<Vec> himg;
  for (int i = 0; i < h.dim(); ++i) himg.push_back(mat_vec(quot.projection, h.basis_vector(i)));
  Subspace hq = Subspace::span(himg, quot.algebra.dim());
  ConstructionResult inner =
      construct_unimodular_codim1(quot.algebra, hq, InnerProduct::standard(quot.algebra.dim()));
  ConstructionResult lifted = lift_center_quotient(g, zline, quot, inner);
  lifted.method = "heisenberg_codim1";
  if (!lifted.certificate.orthonormal)
    throw NumericalFailure("Heisenberg unimodular branch lost orthonormality");
  return lifted;
}

/// Codimension-one abelian ideal: either the algebra is the identity
/// suspension (obstructed), or a metric making the normal-action form
/// indefinite yields a geodesic basis from the form's zero set.
inline ConstructOutcome construct_codim1_abelian(const LieAlgebra& g, const Subspace& h,
                                                 std::uint64_t seed = 42) {
  int n = g.dim();
  if (h.dim() != n - 1 || !is_ideal(g, h) || derived_of(g, h).dim() != 0) throw NotCodim1Abelian();
  Vec y = unit(n, h.complement_indices().at(0));
  SMat a = ad_restrict(g, y, h).matrix;
  Eigen::MatrixXd ae = a.to_eigen();
  double scale = std::max(1.0, ae.norm());
  int r = n - 1;

  if (ae.norm() <= 1e-12 * scale) return detail::trivial_abelian(g);

  // scalar action: the identity suspension, no geodesic basis exists
  bool scalar_action = true;
  double c = ae(0, 0);
  for (int i = 0; i < r && scalar_action; ++i)
    for (int j = 0; j < r && scalar_action; ++j)
      if (std::abs(ae(i, j) - (i == j ? c : 0.0)) > 1e-10 * scale) scalar_action = false;
  if (scalar_action)
    return obstruction_certificate(g, InnerProduct::standard(n), ObstructionKind::kIdentitySuspension,
                                   200, seed);

  // choose G making the form phi(x) = <G A x, x> indefinite (or zero)
  Eigen::MatrixXd gmat = Eigen::MatrixXd::Identity(r, r);
  Eigen::MatrixXd sym0 = 0.5 * (ae + ae.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es0(sym0);
  double lmin = es0.eigenvalues().minCoeff(), lmax = es0.eigenvalues().maxCoeff();
  double delta = 1e-10 * scale;
  if (!(lmax > delta && lmin < -delta) && !(std::abs(lmax) <= delta && std::abs(lmin) <= delta)) {
    // semidefinite nonzero: build the rank-one tilt from a noncollinear pair
    double sgn = (lmin >= -delta) ? 1.0 : -1.0;
    Eigen::MatrixXd b = sgn * ae;
    Eigen::VectorXd xp;
    bool found = false;
    for (int i = 0; i < r && !found; ++i) {
      Eigen::VectorXd cand = Eigen::VectorXd::Unit(r, i);
      Eigen::VectorXd img = b * cand;
      if ((img - img.dot(cand) * cand).norm() > 1e-8 * scale) { xp = cand; found = true; }
    }
    for (int i = 0; i < r && !found; ++i)
      for (int j = i + 1; j < r && !found; ++j) {
        Eigen::VectorXd cand = (Eigen::VectorXd::Unit(r, i) + Eigen::VectorXd::Unit(r, j)).normalized();
        Eigen::VectorXd img = b * cand;
        if ((img - img.dot(cand) * cand).norm() > 1e-8 * scale) { xp = cand; found = true; }
      }
    if (!found) throw NumericalFailure("no direction with independent image found");
    Eigen::VectorXd bx = b * xp;
    Eigen::VectorXd t = bx.norm() * xp - xp.norm() * bx;
    bool ok = false;
    double eps = 1.0;
    for (int it = 0; it < 60; ++it, eps /= 2) {
      gmat = t * t.transpose() + eps * Eigen::MatrixXd::Identity(r, r);
      Eigen::MatrixXd symg = 0.5 * (gmat * ae + ae.transpose() * gmat);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symg);
      if (es.eigenvalues().minCoeff() < -delta && es.eigenvalues().maxCoeff() > delta) { ok = true; break; }
    }
    if (!ok) throw NumericalFailure("no epsilon made the form indefinite");
  }

  // ambient metric: G on h, unit normal direction
  std::vector<Vec> cols{y};
  for (int i = 0; i < r; ++i) cols.push_back(h.basis_vector(i));
  SMat f = detail::frame_from_columns(cols);
  SMat finv = inverse(f);
  SMat block(n, n);
  block.at(0, 0) = Scalar(1);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) block.at(i + 1, j + 1) = Scalar(gmat(i, j));
  InnerProduct metric(finv.transpose() * block * finv);

  Eigen::MatrixXd phi = 0.5 * (gmat * ae + ae.transpose() * gmat);
  std::vector<Vec> basis{y};
  for (auto& v : indefinite_zero_span(phi)) {
    Vec b((size_t)n, Scalar(0.0));
    for (int i = 0; i < r; ++i) b = b + Scalar(v[i]) * h.basis_vector(i);
    basis.push_back(b);
  }
  return detail::finish(g, metric, basis, "codim1_abelian", false);
}

/// Unimodular solvable with abelian nilradical: block-orthonormal metric and
/// the square-root-weighted sign patterns over the joint blocks.
inline ConstructionResult construct_abelian_nilradical(const LieAlgebra& g) {
  int n = g.dim();
  if (!is_solvable(g)) throw HypothesisFailed("solvable");
  if (!is_unimodular(g)) throw HypothesisFailed("unimodular");
  Subspace nil = nilradical_solvable(g);
  if (derived_of(g, nil).dim() != 0) throw HypothesisFailed("abelian nilradical");
  if (nil.dim() == n) return detail::trivial_abelian(g);

  std::vector<int> comp = nil.complement_indices();
  int m = (int)comp.size(), r = nil.dim();
  std::vector<SMat> ops;
  for (int idx : comp) ops.push_back(ad_restrict(g, unit(n, idx), nil).matrix);
  CommutingBlockDecomposition dec = decompose_commuting_family(ops);

  // trace-zero sanity on every operator (forced by unimodularity)
  for (auto& op : ops) {
    Scalar tr(0);
    for (int i = 0; i < op.rows; ++i) tr += op.at(i, i);
    if (std::abs(tr.to_double()) > 1e-9) throw HypothesisFailed("trace-free complement action");
  }

  // ambient frame: complement vectors, then all block basis vectors
  std::vector<Vec> cols;
  for (int idx : comp) cols.push_back(unit(n, idx));
  std::vector<std::vector<Vec>> block_vecs;
  for (auto& b : dec.blocks) {
    std::vector<Vec> bv;
    for (int i = 0; i < b.dim(); ++i) {
      Vec amb((size_t)n, Scalar(0));
      for (int j = 0; j < r; ++j) amb = amb + b.basis.at(i, j) * nil.basis_vector(j);
      bv.push_back(amb);
      cols.push_back(amb);
    }
    block_vecs.push_back(bv);
  }
  InnerProduct metric = InnerProduct::from_orthonormal_frame(detail::frame_from_columns(cols));

  // sign patterns: all-plus, one flip per block, and per-block index variants
  int p = (int)dec.blocks.size();
  auto make_z = [&](int flip_block, int variant_block, int variant_index) {
    Vec z((size_t)n, Scalar(0.0));
    for (int alpha = 0; alpha < p; ++alpha) {
      int idx = (alpha == variant_block) ? variant_index : 0;
      Scalar w = Scalar((long long)dec.blocks[(size_t)alpha].dim()).sqrt();
      if (alpha == flip_block) w = -w;
      z = z + w * block_vecs[(size_t)alpha][(size_t)idx];
    }
    return z;
  };
  std::vector<Vec> zs;
  zs.push_back(make_z(-1, -1, 0));
  for (int beta = 0; beta < p; ++beta) zs.push_back(make_z(beta, -1, 0));
  for (int alpha = 0; alpha < p; ++alpha)
    for (int i = 1; i < dec.blocks[(size_t)alpha].dim(); ++i) zs.push_back(make_z(-1, alpha, i));
  std::vector<Vec> chosen = detail::greedy_independent(zs, r);

  std::vector<Vec> basis;
  for (int idx : comp) basis.push_back(unit(n, idx));
  for (auto& z : chosen) basis.push_back(z);
  return detail::finish(g, metric, basis, "abelian_nilradical", false);
}

/// Abelian derived algebra with R-diagonal action: tilt the complement by
/// small rational vectors and harvest geodesics from the per-block spheres.
inline ConstructionResult construct_rdiag(const LieAlgebra& g, std::uint64_t seed = 42) {
  int n = g.dim();
  Subspace der = derived_subalgebra(g);
  if (der.dim() == 0) return detail::trivial_abelian(g);

  Subspace z = center(g);
  if (z.dim() > 0) {
    auto [zz, quot] = central_quotient(g);
    ConstructionResult inner = construct_rdiag(quot.algebra, seed);
    ConstructionResult lifted = lift_center_quotient(g, zz, quot, inner);
    lifted.method = "rdiag";
    return lifted;
  }
  if (derived_of(g, der).dim() != 0) throw HypothesisFailed("abelian derived algebra");

  int m = n - der.dim();
  if (m == 1) {
    // scalar action is exactly the identity-suspension case
    Vec y = unit(n, der.complement_indices().at(0));
    SMat a = ad_restrict(g, y, der).matrix;
    Eigen::MatrixXd ae = a.to_eigen();
    bool scalar_action = true;
    for (int i = 0; i < ae.rows() && scalar_action; ++i)
      for (int j = 0; j < ae.cols() && scalar_action; ++j)
        if (std::abs(ae(i, j) - (i == j ? ae(0, 0) : 0.0)) > 1e-10 * std::max(1.0, ae.norm()))
          scalar_action = false;
    if (scalar_action && std::abs(ae(0, 0)) > 1e-10) throw IsomorphicToAn();
    auto out = construct_codim1_abelian(g, der, seed);
    if (!std::holds_alternative<ConstructionResult>(out)) throw IsomorphicToAn();
    ConstructionResult res = std::get<ConstructionResult>(out);
    res.method = "rdiag";
    return res;
  }

  RootDecomposition rd = flatten_complement(g, root_space_decomposition(g));
  int p = (int)rd.blocks.size();

  // kernel vector of each root: least-index echelon basis vector
  std::vector<Vec> mus;
  for (auto& root : rd.roots) {
    SMat row(1, m);
    for (int a = 0; a < m; ++a) row.at(0, a) = root[(size_t)a];
    SMat ker = kernel(row);
    if (ker.rows == 0) throw NumericalFailure("root kernel is empty with m > 1");
    mus.push_back(ker.row(0));
  }

  // tilt vectors X'_a, retried until every block component is nonzero
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(-3, 3);
  int q = der.dim();
  std::vector<Vec> tilts;
  std::vector<Vec> comps;  // per alpha: block coordinates of sum_a mu_a X'_a
  for (int attempt = 0; attempt < 100; ++attempt) {
    tilts.clear();
    comps.clear();
    for (int a = 0; a < m; ++a) {
      Vec x((size_t)n, Scalar(0));
      for (int j = 0; j < q; ++j)
        x = x + Scalar(Rational(pick(rng), 2)) * der.basis_vector(j);
      tilts.push_back(x);
    }
    bool good = true;
    for (int alpha = 0; alpha < p && good; ++alpha) {
      Vec sum((size_t)n, Scalar(0));
      for (int a = 0; a < m; ++a) sum = sum + mus[(size_t)alpha][(size_t)a] * tilts[(size_t)a];
      Vec coords = detail::joint_block_coordinates(rd, sum, n);
      int off = 0;
      for (int beta = 0; beta < alpha; ++beta) off += rd.blocks[(size_t)beta].dim();
      Vec comp_coords((size_t)rd.blocks[(size_t)alpha].dim(), Scalar(0));
      double norm = 0;
      for (int i = 0; i < rd.blocks[(size_t)alpha].dim(); ++i) {
        comp_coords[(size_t)i] = coords[(size_t)(off + i)];
        norm += comp_coords[(size_t)i].to_double() * comp_coords[(size_t)i].to_double();
      }
      if (std::sqrt(norm) < 1e-6) { good = false; break; }
      comps.push_back(comp_coords);
    }
    if (good) break;
    if (attempt == 99) throw NumericalFailure("no admissible tilt vectors found");
  }

  // frame: tilted complement, then block bases
  std::vector<Vec> cols;
  for (int a = 0; a < m; ++a) cols.push_back(rd.complement[(size_t)a] + tilts[(size_t)a]);
  for (int alpha = 0; alpha < p; ++alpha)
    for (int i = 0; i < rd.blocks[(size_t)alpha].dim(); ++i)
      cols.push_back(rd.blocks[(size_t)alpha].basis_vector(i));
  InnerProduct metric = InnerProduct::from_orthonormal_frame(detail::frame_from_columns(cols));

  std::vector<Vec> basis;
  for (int a = 0; a < m; ++a) basis.push_back(rd.complement[(size_t)a] + tilts[(size_t)a]);
  for (int alpha = 0; alpha < p; ++alpha) {
    int d = rd.blocks[(size_t)alpha].dim();
    const Vec& c = comps[(size_t)alpha];
    Scalar norm = dot(c, c).sqrt();
    Vec perp((size_t)n, Scalar(0));
    for (int a = 0; a < m; ++a)
      perp = perp + mus[(size_t)alpha][(size_t)a] * (rd.complement[(size_t)a] + tilts[(size_t)a]);
    // sphere points -c/2 + (|c|/2) R e_k with sign pattern R making them span
    for (int pattern = 0; pattern < (1 << d); ++pattern) {
      std::vector<Vec> pts;
      SMat coord_mat(d, d);
      for (int k = 0; k < d; ++k) {
        Vec x((size_t)d, Scalar(0));
        for (int i = 0; i < d; ++i) x[(size_t)i] = Scalar(Rational(-1, 2)) * c[(size_t)i];
        Scalar s = ((pattern >> k) & 1) ? -(norm / Scalar(2)) : (norm / Scalar(2));
        x[(size_t)k] += s;
        pts.push_back(x);
        coord_mat.set_row(k, x);
      }
      if (std::abs(det(coord_mat).to_double()) > 1e-9 * std::pow(std::max(1e-9, norm.to_double() / 2), d)) {
        for (auto& x : pts) {
          Vec zvec = perp;
          for (int i = 0; i < d; ++i)
            zvec = zvec + x[(size_t)i] * rd.blocks[(size_t)alpha].basis_vector(i);
          basis.push_back(zvec);
        }
        break;
      }
      if (pattern == (1 << d) - 1) throw NumericalFailure("no spanning sphere points found");
    }
  }
  return detail::finish(g, metric, basis, "rdiag", false);
}

/// Dispatcher mirroring the case analysis: central quotient first, then the
/// codimension-one ideal handlers, the abelian-nilradical constructor, and
/// the abelian-derived constructor.
inline AutoOutcome auto_construct(const LieAlgebra& g, std::uint64_t seed = 42) {
  std::vector<std::string> failures;
  int n = g.dim();
  if (derived_subalgebra(g).dim() == 0) return detail::trivial_abelian(g);

  Subspace z = center(g);
  if (z.dim() > 0) {
    auto [zz, quot] = central_quotient(g);
    AutoOutcome sub = auto_construct(quot.algebra, seed);
    if (std::holds_alternative<ConstructionResult>(sub))
      return lift_center_quotient(g, zz, quot, std::get<ConstructionResult>(sub));
    failures.push_back("central quotient gave no construction");
  }

  // codimension-one ideal candidates
  std::vector<Subspace> candidates;
  auto add_candidate = [&](const Subspace& s) {
    if (s.dim() != n - 1) return;
    for (auto& c : candidates)
      if (c == s) return;
    candidates.push_back(s);
  };
  add_candidate(unimodular_kernel(g));
  add_candidate(derived_subalgebra(g));
  if (is_solvable(g)) {
    try {
      add_candidate(nilradical_solvable(g));
    } catch (const std::exception&) {
    }
  }

  for (auto& h : candidates) {
    if (detail::heisenberg_shape(g, h)) {
      auto out = construct_heisenberg_codim1(g, h, seed);
      if (std::holds_alternative<ConstructionResult>(out)) return std::get<ConstructionResult>(out);
      return std::get<ObstructionCertificate>(out);
    }
  }
  failures.push_back("no codimension-one Heisenberg ideal");

  for (auto& h : candidates) {
    if (derived_of(g, h).dim() == 0) {
      auto out = construct_codim1_abelian(g, h, seed);
      if (std::holds_alternative<ConstructionResult>(out)) return std::get<ConstructionResult>(out);
      return std::get<ObstructionCertificate>(out);
    }
  }
  failures.push_back("no codimension-one abelian ideal");

  try {
    return construct_abelian_nilradical(g);
  } catch (const HypothesisFailed& e) {
    failures.push_back(std::string("abelian nilradical: ") + e.what());
  } catch (const NotSolvable&) {
    failures.push_back("abelian nilradical: not solvable");
  }

  try {
    return construct_rdiag(g, seed);
  } catch (const IsomorphicToAn&) {
    return obstruction_certificate(g, InnerProduct::standard(n), ObstructionKind::kIdentitySuspension, 200, seed);
  } catch (const HypothesisFailed& e) {
    failures.push_back(std::string("abelian derived: ") + e.what());
  } catch (const NotRDiagonal& e) {
    failures.push_back(std::string("abelian derived: ") + e.what());
  }

  return Undetermined{failures};
}

}  // namespace geodesy
