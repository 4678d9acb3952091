#include "geodesy/quadratic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace geodesy;

TEST_CASE("diag(1,-1) rotates by 45 degrees") {
  Eigen::MatrixXd s = Eigen::Vector2d(1, -1).asDiagonal();
  Eigen::MatrixXd q = zero_diagonal_rotate(s);
  Eigen::MatrixXd r = q.transpose() * s * q;
  CHECK(r.diagonal().cwiseAbs().maxCoeff() <= 1e-12);
  // a 45-degree rotation: all entries of Q have magnitude 1/sqrt(2)
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(std::abs(std::abs(q(i, j)) - 1 / std::sqrt(2.0)) <= 1e-12);
}

TEST_CASE("zero matrix needs no rotation") {
  Eigen::MatrixXd q = zero_diagonal_rotate(Eigen::MatrixXd::Zero(3, 3));
  CHECK((q - Eigen::MatrixXd::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("diag(2,-1,-1) flattens within tolerance") {
  Eigen::MatrixXd s = Eigen::Vector3d(2, -1, -1).asDiagonal();
  Eigen::MatrixXd q = zero_diagonal_rotate(s);
  CHECK((q.transpose() * q - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((q.transpose() * s * q).diagonal().cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("100 random trace-zero matrices satisfy both residual bounds") {
  std::mt19937_64 rng(55);
  std::normal_distribution<double> gauss(0, 1);
  std::uniform_int_distribution<int> npick(2, 8);
  for (int t = 0; t < 100; ++t) {
    int n = npick(rng);
    Eigen::MatrixXd s(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) s(i, j) = s(j, i) = gauss(rng);
    s -= (s.trace() / n) * Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd q = zero_diagonal_rotate(s);
    CHECK((q.transpose() * q - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((q.transpose() * s * q).diagonal().cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("nonzero trace is rejected") {
  CHECK_THROWS_AS(zero_diagonal_rotate(Eigen::MatrixXd::Identity(2, 2)), NonzeroTrace);
}

TEST_CASE("difference of squares splits into the two diagonals") {
  Eigen::MatrixXd phi = Eigen::Vector2d(1, -1).asDiagonal();
  auto zs = indefinite_zero_span(phi);
  REQUIRE(zs.size() == 2);
  for (auto& v : zs) CHECK(std::abs(v.dot(phi * v)) <= 1e-10);
  Eigen::MatrixXd m(2, 2);
  m << zs[0], zs[1];
  CHECK(std::abs(m.determinant()) > 1e-8);
}

TEST_CASE("the zero form passes the standard basis through") {
  auto zs = indefinite_zero_span(Eigen::MatrixXd::Zero(3, 3));
  REQUIRE(zs.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK((zs[(size_t)i] - Eigen::VectorXd::Unit(3, i)).norm() == 0.0);
}

TEST_CASE("x1^2 + x2^2 - 2 x3^2 yields three independent zeros") {
  Eigen::MatrixXd phi = Eigen::Vector3d(1, 1, -2).asDiagonal();
  auto zs = indefinite_zero_span(phi);
  REQUIRE(zs.size() == 3);
  Eigen::MatrixXd m(3, 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(zs[(size_t)i].dot(phi * zs[(size_t)i])) <= 1e-10);
    m.col(i) = zs[(size_t)i];
  }
  CHECK(std::abs(m.determinant()) > 1e-8);
}

TEST_CASE("random indefinite forms always span with zeros") {
  std::mt19937_64 rng(56);
  std::normal_distribution<double> gauss(0, 1);
  int built = 0;
  while (built < 50) {
    int n = 2 + (int)(rng() % 5);
    Eigen::MatrixXd phi(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) phi(i, j) = phi(j, i) = gauss(rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(phi);
    if (es.eigenvalues().minCoeff() > -1e-6 || es.eigenvalues().maxCoeff() < 1e-6) continue;
    auto zs = indefinite_zero_span(phi);
    REQUIRE((int)zs.size() == n);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(zs[(size_t)i].dot(phi * zs[(size_t)i])) <= 1e-10 * std::max(1.0, phi.norm()));
      m.col(i) = zs[(size_t)i];
    }
    CHECK(std::abs(m.determinant()) > 1e-8);
    ++built;
  }
}

TEST_CASE("definite forms are rejected") {
  CHECK_THROWS_AS(indefinite_zero_span(Eigen::MatrixXd::Identity(3, 3)), DefiniteForm);
  Eigen::MatrixXd psd = Eigen::Vector3d(1, 1, 0).asDiagonal();
  CHECK_THROWS_AS(indefinite_zero_span(psd), DefiniteForm);
}
