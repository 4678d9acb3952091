#pragma once

#include "geodesy/verify_paper.hpp"

#include <random>

namespace geodesy::testing {

inline LieAlgebra h3() { return instantiate("H3"); }

inline LieAlgebra abelian(int n) { return instantiate("Rn", {{"n", Rational(n)}}); }

inline Vec random_vec(int n, std::mt19937_64& rng, double lo = -2, double hi = 2) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v((size_t)n);
  for (int i = 0; i < n; ++i) v[(size_t)i] = Scalar(u(rng));
  return v;
}

inline Vec random_rational_vec(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 3);
  Vec v((size_t)n);
  for (int i = 0; i < n; ++i) v[(size_t)i] = Scalar(Rational(num(rng), den(rng)));
  return v;
}

inline double max_defect(const BasisCertificate& cert) {
  double mx = 0;
  for (auto& d : cert.defects) mx = std::max(mx, std::abs(d.to_double()));
  return mx;
}

}  // namespace geodesy::testing
