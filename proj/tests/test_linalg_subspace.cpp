#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace geodesy;

namespace {

SMat random_rational_matrix(int r, int c, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
  SMat m(r, c);
  for (auto& v : m.a) v = Scalar(Rational(num(rng), den(rng)));
  return m;
}

}  // namespace

TEST_CASE("echelon form is canonical under row mixing") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int t = 0; t < 50; ++t) {
    SMat m = random_rational_matrix(3, 5, rng);
    Subspace s = Subspace::span(m);
    // integer row mixing: shuffled sums of the original rows
    SMat mixed(4, 5);
    for (int i = 0; i < 4; ++i) {
      Vec row((size_t)5, Scalar(0));
      for (int j = 0; j < 3; ++j) row = row + Scalar(coef(rng)) * m.row(j);
      mixed.set_row(i, row);
    }
    Subspace s2 = Subspace::span(mixed);
    if (s2.dim() == s.dim()) CHECK(s2 == s);
    CHECK(s.contains(s2));
    CHECK(s == s);  // reflexive
  }
}

TEST_CASE("sum, intersection, orthogonal complement") {
  // span{(1,0,0),(0,1,0)} meet span{(0,1,0),(0,0,1)} = span{(0,1,0)}
  Subspace a = Subspace::span({unit(3, 0), unit(3, 1)}, 3);
  Subspace b = Subspace::span({unit(3, 1), unit(3, 2)}, 3);
  CHECK((a + b).dim() == 3);
  Subspace meet = a.intersect(b);
  REQUIRE(meet.dim() == 1);
  CHECK(meet.contains(unit(3, 1)));
  Subspace p = a.perp();
  REQUIRE(p.dim() == 1);
  CHECK(p.contains(unit(3, 2)));
  // dimension formula on random spans
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    Subspace x = Subspace::span(random_rational_matrix(2, 4, rng));
    Subspace y = Subspace::span(random_rational_matrix(2, 4, rng));
    CHECK((x + y).dim() + x.intersect(y).dim() == x.dim() + y.dim());
    CHECK(x.perp().dim() == 4 - x.dim());
  }
}

TEST_CASE("metric orthogonal complement") {
  SMat gram = SMat::identity(3);
  gram.at(0, 0) = Scalar(2);
  gram.at(0, 2) = Scalar(1);
  gram.at(2, 0) = Scalar(1);
  Subspace h = Subspace::span({unit(3, 0)}, 3);
  Subspace hp = h.perp(&gram);
  REQUIRE(hp.dim() == 2);
  InnerProduct metric(gram);
  for (int i = 0; i < hp.dim(); ++i) CHECK(metric.ip(unit(3, 0), hp.basis_vector(i)).is_zero());
}

TEST_CASE("determinant, inverse, solve are exact") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    SMat m = random_rational_matrix(4, 4, rng);
    Scalar d = det(m);
    if (d.is_zero()) continue;
    SMat mi = inverse(m);
    SMat prod = m * mi;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK((prod.at(i, j) - Scalar(i == j ? 1 : 0)).is_zero());
    Vec b = {Scalar(1), Scalar(Rational(1, 2)), Scalar(-2), Scalar(0)};
    Vec x = solve(m, b);
    CHECK(vec_is_zero(mat_vec(m, x) - b));
  }
  CHECK_THROWS_AS(inverse(SMat(3, 3)), std::domain_error);
}

TEST_CASE("kernel is canonical and annihilates") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    SMat m = random_rational_matrix(2, 5, rng);
    SMat k = kernel(m);
    CHECK(k.rows == 5 - rank_of(m));
    for (int i = 0; i < k.rows; ++i) CHECK(vec_is_zero(mat_vec(m, k.row(i))));
  }
}

TEST_CASE("characteristic polynomial via the trace recurrence") {
  SMat m(2, 2);
  m.at(0, 0) = Scalar(1);
  m.at(0, 1) = Scalar(2);
  m.at(1, 0) = Scalar(3);
  m.at(1, 1) = Scalar(4);
  auto cp = char_poly(m);  // t^2 - 5t - 2
  REQUIRE(cp.size() == 3);
  CHECK(cp[0] == Scalar(1));
  CHECK(cp[1] == Scalar(-5));
  CHECK(cp[2] == Scalar(-2));
}

TEST_CASE("subspace coordinates recover combinations") {
  Subspace s = Subspace::span({unit(4, 0) + unit(4, 2), unit(4, 1)}, 4);
  Vec v = Scalar(3) * s.basis_vector(0) + Scalar(Rational(-1, 2)) * s.basis_vector(1);
  Vec c = s.coordinates(v);
  CHECK(c[0] == Scalar(3));
  CHECK(c[1] == Scalar(Rational(-1, 2)));
  CHECK_THROWS_AS(s.coordinates(unit(4, 3)), std::domain_error);
}
