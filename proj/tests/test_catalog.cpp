#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace geodesy;

TEST_CASE("the catalog carries every required entry") {
  std::set<std::string> names;
  for (auto& e : catalog()) names.insert(e.name);
  for (const char* need : {"Rn", "A_n", "H3", "H5", "e2", "sl2", "so3", "sl2_semidirect_r2", "m0_4",
                           "m04_suspension", "M2", "M3", "M4", "M6", "M8", "M9", "M12", "M13", "g19",
                           "g23", "g25", "g28", "g33", "g35", "sl2_plus_r2", "so3_plus_r2"})
    CHECK(names.count(need) == 1);
}

TEST_CASE("instantiation validates exactly across random admissible parameters") {
  std::mt19937_64 rng(2718);
  std::uniform_int_distribution<int> num(-8, 8), den(1, 4);
  for (auto& e : catalog()) {
    INFO(e.name);
    LieAlgebra g = e.make(resolve_params(e, {}));
    CHECK(g.is_exact());
    CHECK(validate(g).empty());
    int done = 0;
    while (done < 20 && !e.params.empty()) {
      Params p;
      bool ok = true;
      for (auto& ps : e.params) {
        Rational v(num(rng), den(rng));
        ok = ok && ps.admissible(v);
        p[ps.name] = v;
      }
      if (!ok) continue;
      CHECK(validate(e.make(resolve_params(e, p))).empty());
      ++done;
    }
  }
}

TEST_CASE("unknown names and inadmissible parameters are rejected") {
  CHECK_THROWS_AS(instantiate("nosuch"), UnknownName);
  CHECK_THROWS_AS(instantiate("g25", {{"p", Rational(0)}}), ParamOutOfRange);
  CHECK_THROWS_AS(instantiate("g19", {{"alpha", Rational(-1)}}), ParamOutOfRange);
  CHECK_THROWS_AS(instantiate("A_n", {{"n", Rational(9)}}), ParamOutOfRange);
  CHECK_THROWS_AS(instantiate("A_n", {{"n", Rational(1, 2)}}), ParamOutOfRange);
  CHECK_THROWS_AS(instantiate("H3", {{"m", Rational(2)}}), ParamOutOfRange);
}

TEST_CASE("witnesses verify exactly where the entries live in a surd field") {
  for (auto& e : catalog()) {
    Params p = resolve_params(e, {});
    auto w = e.witness(p);
    if (!w) continue;
    INFO(e.name);
    LieAlgebra g = e.make(p);
    BasisCertificate cert = verify_basis(g, w->metric, w->basis, false, 1e-12);
    CHECK(cert.ok);
    if (g.is_exact() && w->metric.is_exact())
      for (auto& d : cert.defects) CHECK((d.is_exact() && d.is_zero()));
  }
}

TEST_CASE("the g28 witness uses the printed square roots") {
  auto w = catalog_witness("g28");
  REQUIRE(w);
  // X0, X1 +- sqrt(3/2) X2, +- sqrt(2) X3 + X4
  Scalar s32 = Scalar::sqrt_rational(Rational(3, 2));
  Scalar s2 = Scalar::sqrt_rational(Rational(2));
  CHECK(vec_is_zero(w->basis[0] - unit(5, 0)));
  CHECK(vec_is_zero(w->basis[1] - (unit(5, 1) + s32 * unit(5, 2))));
  CHECK(vec_is_zero(w->basis[2] - (unit(5, 1) - s32 * unit(5, 2))));
  CHECK(vec_is_zero(w->basis[3] - (s2 * unit(5, 3) + unit(5, 4))));
  CHECK(vec_is_zero(w->basis[4] - (Scalar(-1) * s2 * unit(5, 3) + unit(5, 4))));
  LieAlgebra g = instantiate("g28");
  BasisCertificate cert = verify_basis(g, w->metric, w->basis, false);
  CHECK(cert.ok);
}

TEST_CASE("the g19 negative-branch witness keeps five independent vectors") {
  for (Rational a : {Rational(-2), Rational(-1, 2)}) {
    auto w = catalog_witness("g19", {{"alpha", a}});
    REQUIRE(w);
    SMat coords(5, 5);
    for (int i = 0; i < 5; ++i) coords.set_row(i, w->basis[(size_t)i]);
    CHECK_FALSE(det(coords).is_zero());
  }
}

TEST_CASE("unimodularity flags match the classification split") {
  for (auto& e : catalog()) {
    LieAlgebra g = e.make(resolve_params(e, {}));
    bool expect = e.name[0] != 'M' && e.name != "A_n";
    INFO(e.name);
    CHECK(is_unimodular(g) == expect);
  }
}

TEST_CASE("the filiform suspension has eigenvalues 3, -4, -1, 2 exactly") {
  LieAlgebra g = instantiate("m04_suspension");
  Subspace nil = Subspace::span({unit(5, 1), unit(5, 2), unit(5, 3), unit(5, 4)}, 5);
  auto cp = char_poly(ad_restrict(g, unit(5, 0), nil).matrix);
  // (t-3)(t+4)(t+1)(t-2) = t^4 - 15 t^2 + 10 t + 24
  std::vector<long long> expect{1, 0, -15, 10, 24};
  REQUIRE(cp.size() == expect.size());
  for (size_t i = 0; i < cp.size(); ++i) CHECK((cp[i] - Scalar(expect[i])).is_zero());
  // and its nilradical really is the filiform algebra
  Subspace computed = nilradical_solvable(g);
  CHECK(computed == nil);
}

TEST_CASE("verdicts carry the parameter conditions") {
  auto [gb, on] = catalog_verdict("g19", {{"alpha", Rational(2)}});
  CHECK(gb == Verdict::kYes);
  CHECK(on == Verdict::kNo);
  CHECK_THROWS_AS(catalog_verdict("g19", {{"alpha", Rational(-1)}}), ParamOutOfRange);
  auto [gb2, on2] = catalog_verdict("g35");
  CHECK(gb2 == Verdict::kYes);
  CHECK(on2 == Verdict::kYes);
  auto [gb3, on3] = catalog_verdict("A_n", {{"n", Rational(2)}});
  CHECK(gb3 == Verdict::kNo);
  CHECK(on3 == Verdict::kNo);
}

TEST_CASE("witness source flags mark what came from the classification texts") {
  for (const char* quoted : {"M8", "g19", "g23", "g25", "g28", "g35", "sl2_semidirect_r2"})
    CHECK(catalog_entry(quoted).witness_is_quoted);
  CHECK_FALSE(catalog_entry("m04_suspension").witness_is_quoted);
}
