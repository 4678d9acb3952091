#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace geodesy;
using geodesy::testing::abelian;
using geodesy::testing::h3;
using geodesy::testing::max_defect;

TEST_CASE("abelian nilradical constructor on g33 emits sign patterns") {
  LieAlgebra g = instantiate("g33");
  ConstructionResult res = construct_abelian_nilradical(g);
  REQUIRE(res.certificate.ok);
  CHECK(res.metric.is_spd());
  CHECK(max_defect(res.certificate) <= 1e-9);
  REQUIRE(res.basis.size() == 5);
  // complement first: X1, X2
  CHECK(vec_is_zero(res.basis[0] - unit(5, 0), 1e-12));
  CHECK(vec_is_zero(res.basis[1] - unit(5, 1), 1e-12));
  // then three +-X3 +-X4 +-X5 patterns
  for (size_t i = 2; i < 5; ++i) {
    CHECK(std::abs(res.basis[i][0].to_double()) <= 1e-9);
    CHECK(std::abs(res.basis[i][1].to_double()) <= 1e-9);
    for (size_t k = 2; k < 5; ++k)
      CHECK(std::abs(std::abs(res.basis[i][k].to_double()) - 1.0) <= 1e-9);
  }
  // the trace identity <A_j Z, Z> = 0 for the nilradical part
  for (size_t i = 2; i < 5; ++i)
    for (int c : {0, 1})
      CHECK(std::abs(res.metric.ip(bracket(g, unit(5, c), res.basis[i]), res.basis[i]).to_double()) <= 1e-9);
}

TEST_CASE("abelian nilradical constructor handles the abelian algebra and g35") {
  ConstructionResult triv = construct_abelian_nilradical(abelian(3));
  CHECK(triv.certificate.ok);
  CHECK(triv.certificate.orthonormal);
  for (int i = 0; i < 3; ++i) CHECK(vec_is_zero(triv.basis[(size_t)i] - unit(3, i)));

  ConstructionResult res = construct_abelian_nilradical(instantiate("g35"));
  CHECK(res.certificate.ok);
  CHECK(max_defect(res.certificate) <= 1e-9);
}

TEST_CASE("abelian nilradical constructor rejects bad hypotheses with a tag") {
  CHECK_THROWS_AS(construct_abelian_nilradical(instantiate("M8")), HypothesisFailed);   // nonunimodular
  CHECK_THROWS_AS(construct_abelian_nilradical(instantiate("g19")), HypothesisFailed);  // nilradical not abelian
  CHECK_THROWS_AS(construct_abelian_nilradical(instantiate("sl2")), HypothesisFailed);  // not solvable
}

TEST_CASE("rdiag constructor on M8, g33, and the abelian algebra") {
  ConstructionResult m8 = construct_rdiag(instantiate("M8"), 42);
  CHECK(m8.certificate.ok);
  CHECK(max_defect(m8.certificate) <= 1e-9);

  ConstructionResult g33 = construct_rdiag(instantiate("g33"), 42);
  CHECK(g33.certificate.ok);
  CHECK(max_defect(g33.certificate) <= 1e-9);

  ConstructionResult triv = construct_rdiag(abelian(4), 42);
  CHECK(triv.certificate.orthonormal);
}

TEST_CASE("rdiag detects the identity suspension and non-diagonal actions") {
  CHECK_THROWS_AS(construct_rdiag(instantiate("A_n", {{"n", Rational(3)}}), 42), IsomorphicToAn);
  CHECK_THROWS_AS(construct_rdiag(instantiate("M9"), 42), NotRDiagonal);
  CHECK_THROWS_AS(construct_rdiag(instantiate("g19", {{"alpha", Rational(1)}}), 42), HypothesisFailed);
}

TEST_CASE("codimension-one abelian constructor: split action gives the exact basis") {
  // dim-3 solvable with A = diag(1,-1)
  LieAlgebra g(3);
  g.set_bracket_term(2, 0, 0, Scalar(1));
  g.set_bracket_term(2, 1, 1, Scalar(-1));
  REQUIRE(validate(g).empty());
  Subspace h = Subspace::span({unit(3, 0), unit(3, 1)}, 3);
  auto out = construct_codim1_abelian(g, h, 42);
  REQUIRE(std::holds_alternative<ConstructionResult>(out));
  const auto& res = std::get<ConstructionResult>(out);
  REQUIRE(res.certificate.ok);
  CHECK(max_defect(res.certificate) <= 1e-12);
  // basis {Y, X1+X2, X1-X2} up to order and scaling
  bool plus = false, minus = false;
  for (auto& b : res.basis) {
    double x = b[0].to_double(), y = b[1].to_double();
    if (std::abs(x) > 1e-9 && std::abs(x - y) <= 1e-9) plus = true;
    if (std::abs(x) > 1e-9 && std::abs(x + y) <= 1e-9) minus = true;
  }
  CHECK(plus);
  CHECK(minus);
}

TEST_CASE("codimension-one abelian constructor: zero action falls back to the standard basis") {
  LieAlgebra g = abelian(3);
  Subspace h = Subspace::span({unit(3, 0), unit(3, 1)}, 3);
  auto out = construct_codim1_abelian(g, h, 42);
  REQUIRE(std::holds_alternative<ConstructionResult>(out));
  CHECK(std::get<ConstructionResult>(out).certificate.orthonormal);
}

TEST_CASE("codimension-one abelian constructor on M4 and the scalar obstruction") {
  LieAlgebra m4 = instantiate("M4");
  auto out = construct_codim1_abelian(m4, unimodular_kernel(m4), 42);
  REQUIRE(std::holds_alternative<ConstructionResult>(out));
  CHECK(std::get<ConstructionResult>(out).certificate.ok);

  LieAlgebra a3 = instantiate("A_n", {{"n", Rational(3)}});
  auto obs = construct_codim1_abelian(a3, derived_subalgebra(a3), 42);
  REQUIRE(std::holds_alternative<ObstructionCertificate>(obs));
  CHECK(std::get<ObstructionCertificate>(obs).kind == ObstructionKind::kIdentitySuspension);

  CHECK_THROWS_AS(construct_codim1_abelian(instantiate("M12"), unimodular_kernel(instantiate("M12")), 42),
                  NotCodim1Abelian);
}

TEST_CASE("heisenberg handler: M12 and M13 obstruct with witness X3") {
  for (auto& [name, params] : std::vector<std::pair<std::string, Params>>{
           {"M12", {}}, {"M13", {{"a", Rational(0)}}}, {"M13", {{"a", Rational(1)}}},
           {"M13", {{"a", Rational(-2)}}}}) {
    LieAlgebra g = instantiate(name, params);
    auto out = construct_heisenberg_codim1(g, unimodular_kernel(g), 42);
    REQUIRE(std::holds_alternative<ObstructionCertificate>(out));
    const auto& oc = std::get<ObstructionCertificate>(out);
    CHECK(oc.kind == ObstructionKind::kHeisenbergNonunimodular);
    CHECK(vec_is_zero(oc.witness - unit(4, 2), 1e-12));
    CHECK(oc.sampled_orthogonal);
  }
}

TEST_CASE("heisenberg handler: the oscillator gets an orthonormal basis") {
  LieAlgebra g = instantiate("oscillator");
  Subspace h = Subspace::span({unit(4, 1), unit(4, 2), unit(4, 3)}, 4);
  auto out = construct_heisenberg_codim1(g, h, 42);
  REQUIRE(std::holds_alternative<ConstructionResult>(out));
  const auto& res = std::get<ConstructionResult>(out);
  CHECK(res.certificate.ok);
  CHECK(res.certificate.orthonormal);
  CHECK(max_defect(res.certificate) <= 1e-9);
}

TEST_CASE("heisenberg handler rejects non-Heisenberg ideals") {
  LieAlgebra m4 = instantiate("M4");
  CHECK_THROWS_AS(construct_heisenberg_codim1(m4, unimodular_kernel(m4), 42), NotHeisenbergIdeal);
}

TEST_CASE("central lift: H3 through its centre, abelian corner case, and the trivial-centre error") {
  LieAlgebra g = h3();
  auto [z, quot] = central_quotient(g);
  ConstructionResult inner = construct_rdiag(quot.algebra, 42);  // R^2, standard
  ConstructionResult lifted = lift_center_quotient(g, z, quot, inner);
  CHECK(lifted.certificate.ok);
  CHECK(lifted.certificate.orthonormal);

  LieAlgebra r2 = abelian(2);
  auto [z2, quot2] = central_quotient(r2);
  CHECK(quot2.algebra.dim() == 0);
  ConstructionResult inner2{InnerProduct::standard(0), {}, verify_basis(quot2.algebra, InnerProduct::standard(0), {}, true), "abelian"};
  ConstructionResult lifted2 = lift_center_quotient(r2, z2, quot2, inner2);
  CHECK(lifted2.certificate.ok);
  CHECK(lifted2.certificate.orthonormal);

  CHECK_THROWS_AS(central_quotient(instantiate("g23")), TrivialCenter);
}

TEST_CASE("unimodular codimension-one: e2 keeps the standard basis") {
  LieAlgebra g = instantiate("e2");
  Subspace h = Subspace::span({unit(3, 1), unit(3, 2)}, 3);
  ConstructionResult res = construct_unimodular_codim1(g, h, InnerProduct::standard(3));
  REQUIRE(res.certificate.ok);
  CHECK(res.certificate.orthonormal);
  for (int i = 0; i < 3; ++i) CHECK(vec_is_zero(res.basis[(size_t)i] - unit(3, i), 1e-12));
  CHECK_THROWS_AS(construct_unimodular_codim1(instantiate("M2"), unimodular_kernel(instantiate("M2")),
                                              InnerProduct::standard(4)),
                  HypothesisFailed);
}

TEST_CASE("dispatcher: obstructions, constructions, and the undetermined case") {
  AutoOutcome a3 = auto_construct(instantiate("A_n", {{"n", Rational(3)}}), 42);
  REQUIRE(std::holds_alternative<ObstructionCertificate>(a3));
  CHECK(std::get<ObstructionCertificate>(a3).kind == ObstructionKind::kIdentitySuspension);

  for (const char* name : {"M3", "M4", "M6", "M8"}) {
    AutoOutcome out = auto_construct(instantiate(name), 42);
    INFO(name);
    REQUIRE(std::holds_alternative<ConstructionResult>(out));
    CHECK(std::get<ConstructionResult>(out).certificate.ok);
  }
  for (const char* name : {"M2", "M12", "M13"}) {
    AutoOutcome out = auto_construct(instantiate(name), 42);
    INFO(name);
    CHECK(std::holds_alternative<ObstructionCertificate>(out));
  }
  AutoOutcome m9 = auto_construct(instantiate("M9"), 42);
  CHECK(std::holds_alternative<Undetermined>(m9));

  AutoOutcome sl = auto_construct(instantiate("sl2_semidirect_r2"), 42);
  REQUIRE(std::holds_alternative<Undetermined>(sl));
  CHECK_FALSE(std::get<Undetermined>(sl).failures.empty());
}

TEST_CASE("dispatcher recurses through the centre") {
  AutoOutcome h5 = auto_construct(instantiate("H5"), 42);
  REQUIRE(std::holds_alternative<ConstructionResult>(h5));
  const auto& res = std::get<ConstructionResult>(h5);
  CHECK(res.certificate.orthonormal);
  CHECK(res.method.find("center_lift") != std::string::npos);

  AutoOutcome osc = auto_construct(instantiate("oscillator"), 42);
  REQUIRE(std::holds_alternative<ConstructionResult>(osc));
  CHECK(std::get<ConstructionResult>(osc).certificate.ok);
}

TEST_CASE("dispatcher output is byte-deterministic for a fixed seed") {
  for (const char* name : {"g33", "M8", "M12"}) {
    LieAlgebra g = instantiate(name);
    auto run = [&] {
      AutoOutcome out = auto_construct(g, 1234);
      if (std::holds_alternative<ConstructionResult>(out)) {
        const auto& r = std::get<ConstructionResult>(out);
        AlgebraDocument doc{g, r.metric, r.basis, !r.metric.is_exact()};
        return render_document(doc);
      }
      return obstruction_to_json(std::get<ObstructionCertificate>(out)).dump();
    };
    CHECK(run() == run());
  }
}

TEST_CASE("every construction re-verifies through the geodesic module") {
  for (const char* name : {"g33", "g35", "M3", "M4", "M6", "M8", "H5", "oscillator", "e2"}) {
    AutoOutcome out = auto_construct(instantiate(name), 42);
    REQUIRE(std::holds_alternative<ConstructionResult>(out));
    const auto& res = std::get<ConstructionResult>(out);
    BasisCertificate again = verify_basis(instantiate(name), res.metric, res.basis, false);
    INFO(name);
    CHECK(again.ok);
    CHECK(res.metric.is_spd());
    CHECK(geodesy::testing::max_defect(again) <= 1e-9);
  }
}
