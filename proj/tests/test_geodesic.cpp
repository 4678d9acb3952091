#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace geodesy;
using geodesy::testing::abelian;
using geodesy::testing::h3;

TEST_CASE("central vectors have zero defect for any metric") {
  LieAlgebra g = h3();
  std::mt19937_64 rng(101);
  for (int t = 0; t < 100; ++t) {
    InnerProduct metric = detail::random_spd(3, rng);
    DefectVector d = defect(g, metric, unit(3, 2));
    CHECK(d.max_abs() == 0.0);
  }
}

TEST_CASE("vectors orthogonal to the derived algebra have zero defect") {
  LieAlgebra g = instantiate("M12");
  std::mt19937_64 rng(102);
  for (int t = 0; t < 100; ++t) {
    InnerProduct metric = detail::random_spd(4, rng);
    Subspace perp = derived_subalgebra(g).perp(&metric.gram());
    for (int i = 0; i < perp.dim(); ++i) {
      DefectVector d = defect(g, metric, perp.basis_vector(i));
      CHECK(d.max_abs() <= 1e-9);
    }
  }
}

TEST_CASE("the g35 witness direction Y3 is geodesic") {
  auto w = catalog_witness("g35");
  LieAlgebra g = instantiate("g35");
  DefectVector d = defect(g, w->metric, w->basis[2]);  // Y3 = X3 + X4
  CHECK(d.exact);
  for (auto& e : d.entries) CHECK(e.is_zero());
  CHECK(is_geodesic(g, w->metric, w->basis[2], 0.0));
}

TEST_CASE("defect is quadratic under scaling") {
  LieAlgebra g = instantiate("sl2");
  InnerProduct metric = InnerProduct::standard(3);
  std::mt19937_64 rng(103);
  for (int t = 0; t < 40; ++t) {
    Vec x = geodesy::testing::random_rational_vec(3, rng);
    Scalar c(Rational(rng() % 13 + 1, rng() % 7 + 1));
    DefectVector d1 = defect(g, metric, x);
    DefectVector d2 = defect(g, metric, c * x);
    for (int i = 0; i < 3; ++i) CHECK((d2.entries[(size_t)i] - c * c * d1.entries[(size_t)i]).is_zero());
  }
}

TEST_CASE("verify_basis on the M8 witness") {
  auto w = catalog_witness("M8");
  LieAlgebra g = instantiate("M8");
  BasisCertificate cert = verify_basis(g, w->metric, w->basis, false);
  CHECK(cert.ok);
  CHECK_FALSE(cert.gram_rank_witness.is_zero());
  for (auto& d : cert.defects) CHECK(d.is_zero());
  // idempotence: each member re-passes is_geodesic at the same tolerance
  for (auto& v : w->basis) CHECK(is_geodesic(g, w->metric, v, cert.tolerance));
}

TEST_CASE("verify_basis accepts the abelian standard basis as orthonormal") {
  LieAlgebra g = abelian(4);
  std::vector<Vec> basis;
  for (int i = 0; i < 4; ++i) basis.push_back(unit(4, i));
  BasisCertificate cert = verify_basis(g, InnerProduct::standard(4), basis, true);
  CHECK(cert.ok);
  CHECK(cert.orthonormal);
}

TEST_CASE("verify_basis reports defects instead of throwing") {
  LieAlgebra g = instantiate("A_n", {{"n", Rational(3)}});
  std::vector<Vec> basis;
  for (int i = 0; i < 4; ++i) basis.push_back(unit(4, i));
  BasisCertificate cert = verify_basis(g, InnerProduct::standard(4), basis, false);
  CHECK_FALSE(cert.ok);
  // each abelian-part vector has <[X0,ei],ei> = 1
  int nonzero = 0;
  for (auto& d : cert.defects) nonzero += !d.is_zero();
  CHECK(nonzero == 3);
  CHECK_FALSE(cert.violations.empty());
}

TEST_CASE("verify_basis rejects rank-deficient collections") {
  LieAlgebra g = abelian(3);
  std::vector<Vec> basis = {unit(3, 0), unit(3, 1), unit(3, 0) + unit(3, 1)};
  BasisCertificate cert = verify_basis(g, InnerProduct::standard(3), basis, false);
  CHECK_FALSE(cert.ok);
  CHECK(cert.gram_rank_witness.is_zero());
}

TEST_CASE("orbit derivative: analytic term vanishes on geodesics and at X = Z") {
  LieAlgebra g = instantiate("g33");
  InnerProduct metric = InnerProduct::standard(5);
  std::mt19937_64 rng(104);
  // X = Z: the analytic term <[X,X],X> is zero and the residual is tiny
  for (int t = 0; t < 20; ++t) {
    Vec x = geodesy::testing::random_vec(5, rng);
    CHECK(std::abs(2 * metric.ip(bracket(g, x, x), x).to_double()) == 0.0);
    CHECK(orbit_derivative_check(g, metric, x, x, 1e-4) <= 1e-6);
  }
  // Z geodesic: finite difference alone stays below the tolerance for any X
  Vec z = unit(5, 0);  // X1 is geodesic for the standard metric
  REQUIRE(is_geodesic(g, metric, z, 0.0));
  for (int t = 0; t < 20; ++t) {
    Vec x = geodesy::testing::random_vec(5, rng);
    CHECK(orbit_derivative_check(g, metric, x, z, 1e-4) <= 1e-6);
  }
}

TEST_CASE("orbit derivative matches the finite difference on random pairs") {
  LieAlgebra g = instantiate("g33");
  InnerProduct metric = InnerProduct::standard(5);
  std::mt19937_64 rng(105);
  for (int t = 0; t < 50; ++t) {
    Vec x = geodesy::testing::random_vec(5, rng, -1, 1);
    Vec z = geodesy::testing::random_vec(5, rng, -1, 1);
    CHECK(orbit_derivative_check(g, metric, x, z, 1e-4) <= 1e-6);
  }
}

TEST_CASE("sampling on the abelian algebra covers the sphere") {
  LieAlgebra g = abelian(3);
  auto samples = sample_geodesics(g, InnerProduct::standard(3), 60, 7);
  CHECK(samples.size() >= 30);  // every start converges, dedup only kills collisions
  CHECK(span_rank(samples) == 3);
}

TEST_CASE("sampling on the identity suspension finds one direction only") {
  LieAlgebra g = instantiate("A_n", {{"n", Rational(3)}});
  std::mt19937_64 rng(106);
  for (int t = 0; t < 5; ++t) {
    InnerProduct metric = detail::random_spd(4, rng);
    auto samples = sample_geodesics(g, metric, 40, rng());
    REQUIRE(!samples.empty());
    CHECK(span_rank(samples) == 1);
  }
}

TEST_CASE("sampling on M12 stays orthogonal to X3") {
  LieAlgebra g = instantiate("M12");
  std::mt19937_64 rng(107);
  InnerProduct metric = detail::random_spd(4, rng);
  auto samples = sample_geodesics(g, metric, 200, 2024);
  REQUIRE(!samples.empty());
  for (auto& s : samples) CHECK(std::abs(metric.ip(unit(4, 2), s).to_double()) <= 1e-6);
}

TEST_CASE("obstruction certificates") {
  // identity suspension: witness spans the derived algebra, rank stays 1
  LieAlgebra a3 = instantiate("A_n", {{"n", Rational(3)}});
  auto cert = obstruction_certificate(a3, InnerProduct::standard(4), ObstructionKind::kIdentitySuspension);
  CHECK(cert.kind == ObstructionKind::kIdentitySuspension);
  CHECK(cert.max_span_rank == 1);
  CHECK(cert.sampled_orthogonal);
  CHECK(derived_subalgebra(a3).contains(cert.witness));

  // nonunimodular Heisenberg extension: witness is the centre generator X3
  LieAlgebra m13 = instantiate("M13", {{"a", Rational(1)}});
  auto hcert = obstruction_certificate(m13, InnerProduct::standard(4), ObstructionKind::kHeisenbergNonunimodular);
  CHECK(vec_is_zero(hcert.witness - unit(4, 2), 1e-12));
  CHECK(hcert.sampled_orthogonal);
  CHECK(hcert.max_span_rank < 4);

  // search evidence on M9: span stays below the dimension
  LieAlgebra m9 = instantiate("M9");
  std::mt19937_64 rng(108);
  int worst = 0;
  for (int t = 0; t < 20; ++t) {
    auto ev = obstruction_certificate(m9, detail::random_spd(4, rng), ObstructionKind::kSearchEvidence,
                                      25, rng());
    worst = std::max(worst, ev.max_span_rank);
  }
  CHECK(worst <= 3);

  CHECK_THROWS_AS(obstruction_certificate(h3(), InnerProduct::standard(3), ObstructionKind::kIdentitySuspension),
                  WrongShape);
}
