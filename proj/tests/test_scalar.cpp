#include "geodesy/scalar.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace geodesy;

TEST_CASE("rational parsing and rendering") {
  CHECK(render_rational(parse_rational("6/4")) == "3/2");
  CHECK(render_rational(parse_rational("-8")) == "-8");
  CHECK(parse_rational("-3/2") == Rational(-3, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("surd arithmetic closure and canonical form") {
  Scalar a = Scalar::parse("1/2*sqrt(6)");
  Scalar b = Scalar::parse("sqrt(2)");
  CHECK((a * b).render() == "sqrt(3)");            // sqrt(12)/2
  CHECK(Scalar::parse("sqrt(8)").render() == "2*sqrt(2)");
  CHECK(Scalar::parse("sqrt(9)").render() == "3");
  CHECK(Scalar::parse("sqrt(0)").render() == "0");
  CHECK((b * b).render() == "2");
  Scalar c = Scalar::parse("1-sqrt(2)+3/4*sqrt(8)");
  CHECK(c.render() == "1+1/2*sqrt(2)");
  CHECK((c - c).is_zero());
}

TEST_CASE("surd division by nonzero") {
  Scalar d = Scalar::parse("1+1/2*sqrt(2)");
  Scalar inv = Scalar(1) / d;
  CHECK(inv.render() == "2-sqrt(2)");
  CHECK((inv * d).render() == "1");
  // a three-generator element
  Scalar e = Scalar::parse("1+sqrt(2)+sqrt(3)+sqrt(6)");
  CHECK(((Scalar(1) / e) * e).render() == "1");
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), std::domain_error);
}

TEST_CASE("sqrt stays exact on rationals, drops to float elsewhere") {
  CHECK(Scalar::sqrt_rational(Rational(3, 2)).render() == "1/2*sqrt(6)");
  CHECK(Scalar(Rational(9, 4)).sqrt().render() == "3/2");
  Scalar irr = Scalar::parse("1+sqrt(2)");
  CHECK_FALSE(irr.sqrt().is_exact());
  CHECK(irr.sqrt().to_double() == Catch::Approx(std::sqrt(1 + std::sqrt(2.0))));
}

TEST_CASE("zero test and sign are exact") {
  // sqrt(2)*sqrt(3) - sqrt(6) == 0 exactly
  Scalar z = Scalar::parse("sqrt(2)") * Scalar::parse("sqrt(3)") - Scalar::parse("sqrt(6)");
  CHECK(z.is_zero());
  CHECK(z.sign() == 0);
  CHECK(Scalar::parse("sqrt(2)-3/2").sign() < 0);
  CHECK(Scalar::parse("sqrt(2)-7/5").sign() > 0);
}

TEST_CASE("parse(render(s)) round-trips random exact scalars") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  std::uniform_int_distribution<int> rad(0, 4);
  const long long radicands[] = {1, 2, 3, 5, 6};
  for (int t = 0; t < 300; ++t) {
    Scalar s(0);
    for (int k = 0; k < 3; ++k)
      s += Scalar(Rational(num(rng), den(rng))) * Scalar::sqrt_rational(Rational(radicands[rad(rng)]));
    CHECK(Scalar::parse(s.render()) == s);
  }
}

TEST_CASE("float literals and mode demotion") {
  Scalar f = Scalar::parse("0.5");
  CHECK_FALSE(f.is_exact());
  Scalar mixed = f + Scalar(Rational(1, 2));
  CHECK_FALSE(mixed.is_exact());
  CHECK(mixed.to_double() == 1.0);
  // 17-significant-digit rendering round-trips doubles
  double v = 0.1234567890123456789;
  CHECK(Scalar::parse(Scalar(v).render()).to_double() == v);
}

TEST_CASE("grammar rejections") {
  CHECK_THROWS_AS(Scalar::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Scalar::parse("sqrt(-2)"), std::invalid_argument);
  CHECK_THROWS_AS(Scalar::parse("sqrt(2"), std::invalid_argument);
  CHECK_THROWS_AS(Scalar::parse("2sqrt(2)"), std::invalid_argument);
  CHECK_THROWS_AS(Scalar::parse("sqrt(2)*sqrt(3)"), std::invalid_argument);
  CHECK_THROWS_AS(Scalar::parse("1/2/3"), std::invalid_argument);
}

TEST_CASE("negative leading surd renders inside the grammar") {
  Scalar s = -Scalar::parse("sqrt(2)");
  CHECK(s.render() == "-1*sqrt(2)");
  CHECK(Scalar::parse(s.render()) == s);
  Scalar t = Scalar::parse("1-sqrt(2)");
  CHECK(t.render() == "1-sqrt(2)");
}
