#pragma once

#include "geodesy/errors.hpp"
#include "geodesy/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <stdexcept>
#include <vector>

namespace geodesy {

/// Orthogonal Q with diag(Q' S Q) = 0 for a symmetric trace-zero S.
/// Rotates the most-positive against the most-negative diagonal entry in
/// a Givens plane that zeroes the former, freezing one index per step;
/// at most n-1 rotations.
inline Eigen::MatrixXd zero_diagonal_rotate(const Eigen::MatrixXd& s_in, double t = 1e-10) {
  int n = (int)s_in.rows();
  double scale = std::max(1.0, s_in.norm());
  if (std::abs(s_in.trace()) > t * scale) throw NonzeroTrace();
  Eigen::MatrixXd s = 0.5 * (s_in + s_in.transpose());
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
  std::vector<bool> frozen((size_t)n, false);
  const double dead = 1e-14 * scale;
  for (int step = 0; step < n - 1; ++step) {
    int ip = -1, im = -1;
    double dp = dead, dm = -dead;
    for (int i = 0; i < n; ++i) {
      if (frozen[(size_t)i]) continue;
      if (s(i, i) > dp) { dp = s(i, i); ip = i; }
      if (s(i, i) < dm) { dm = s(i, i); im = i; }
    }
    if (ip < 0 || im < 0) break;  // active diagonal already flat
    double di = s(ip, ip), dj = s(im, im), sij = s(ip, im);
    double disc = std::sqrt(sij * sij - di * dj);
    double t1 = (-sij + disc) / dj, t2 = (-sij - disc) / dj;
    double tt = std::abs(t1) < std::abs(t2) ? t1 : t2;
    double c = 1.0 / std::sqrt(1.0 + tt * tt), sn = c * tt;
    // columns ip, im rotate; new (ip,ip) diagonal entry vanishes
    Eigen::VectorXd ci = s.col(ip), cj = s.col(im);
    s.col(ip) = c * ci + sn * cj;
    s.col(im) = -sn * ci + c * cj;
    Eigen::VectorXd ri = s.row(ip), rj = s.row(im);
    s.row(ip) = c * ri + sn * rj;
    s.row(im) = -sn * ri + c * rj;
    s(ip, ip) = 0.0;
    Eigen::VectorXd qi = q.col(ip), qj = q.col(im);
    q.col(ip) = c * qi + sn * qj;
    q.col(im) = -sn * qi + c * qj;
    frozen[(size_t)ip] = true;
  }
  return q;
}

/// For an indefinite (or zero) symmetric form, m independent vectors in its
/// zero set: positive eigendirections pair against a fixed negative one and
/// vice versa, kernel directions pass through, and one sign flip supplies
/// the last vector.
inline std::vector<Eigen::VectorXd> indefinite_zero_span(const Eigen::MatrixXd& phi_in,
                                                         double t = 1e-10) {
  int m = (int)phi_in.rows();
  Eigen::MatrixXd phi = 0.5 * (phi_in + phi_in.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(phi);
  Eigen::VectorXd mu = es.eigenvalues();
  Eigen::MatrixXd v = es.eigenvectors();
  double scale = std::max(1.0, mu.cwiseAbs().maxCoeff());
  double delta = t * scale;

  std::vector<int> pos, neg, ker;
  for (int i = 0; i < m; ++i) {
    if (mu[i] > delta)
      pos.push_back(i);
    else if (mu[i] < -delta)
      neg.push_back(i);
    else
      ker.push_back(i);
  }
  std::vector<Eigen::VectorXd> out;
  if (pos.empty() && neg.empty()) {
    for (int i = 0; i < m; ++i) out.push_back(Eigen::VectorXd::Unit(m, i));
    return out;
  }
  if (pos.empty() || neg.empty()) throw DefiniteForm();

  int em = 0;                      // most negative (ascending order)
  int ep = m - 1;                  // most positive
  std::vector<Eigen::VectorXd> cand;
  double sign = 1.0;
  double first_sign = sign;
  for (int i : pos) {
    cand.push_back(std::sqrt(-mu[em]) * v.col(i) + sign * std::sqrt(mu[i]) * v.col(em));
    if (i == pos.front()) first_sign = sign;
    sign = -sign;
  }
  cand.push_back(std::sqrt(-mu[em]) * v.col(pos.front()) -
                 first_sign * std::sqrt(mu[pos.front()]) * v.col(em));
  for (int j : neg) {
    if (j == em) continue;
    cand.push_back(std::sqrt(mu[ep]) * v.col(j) + sign * std::sqrt(-mu[j]) * v.col(ep));
    sign = -sign;
  }
  for (int k : ker) cand.push_back(v.col(k));

  // greedy independent selection
  Eigen::MatrixXd picked(m, 0);
  for (auto& c : cand) {
    if (picked.cols() == m) break;
    Eigen::MatrixXd trial(m, picked.cols() + 1);
    trial << picked, c;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(trial);
    if (svd.singularValues()[trial.cols() - 1] > 1e-9 * std::max(1.0, svd.singularValues()[0])) {
      picked = trial;
      out.push_back(c);
    }
  }
  if ((int)out.size() != m) throw NumericalFailure("zero-set spanning selection failed");
  return out;
}

}  // namespace geodesy
