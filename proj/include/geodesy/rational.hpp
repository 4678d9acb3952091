#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace geodesy {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer rat_num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer rat_den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sign(const Rational& q) { return q.sign(); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Renders "p" or "p/q" with q > 0 and gcd(p,q)=1.
inline std::string render_rational(const Rational& q) {
  std::string s = rat_num(q).str();
  if (rat_den(q) != 1) s += "/" + rat_den(q).str();
  return s;
}

/// Parses "p" or "p/q"; throws std::invalid_argument on junk.
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("rational denominator must be positive: " + s);
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("bad rational: " + s);
  }
}

/// Best rational p/q with q <= max_den approximating x (continued fractions);
/// returns false when the residual exceeds tol.
inline bool rational_reconstruct(double x, long long max_den, double rtol, Rational* out) {
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(v);
    if (fl > 9e17 || fl < -9e17) return false;
    long long a = (long long)fl;
    long long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = v - fl;
    if (rem < 1e-13) break;
    v = 1.0 / rem;
  }
  if (q1 == 0) return false;
  double approx = (double)p1 / (double)q1;
  if (std::abs(approx - x) > rtol * (1.0 + std::abs(x))) return false;
  *out = Rational(p1, q1);
  return true;
}

/// u = s^2 * m with m squarefree; returns (s, m). u >= 0 required.
inline std::pair<Integer, Integer> squarefree_split(Integer u) {
  if (u < 0) throw std::invalid_argument("squarefree_split of negative value");
  if (u == 0) return {1, 0};
  Integer s = 1, m = 1;
  for (Integer p = 2; p * p <= u; p += (p == 2 ? 1 : 2)) {
    if (u % p != 0) continue;
    int e = 0;
    while (u % p == 0) { u /= p; ++e; }
    for (int i = 0; i < e / 2; ++i) s *= p;
    if (e % 2) m *= p;
  }
  // whatever is left is prime (or 1)
  m *= u;
  return {s, m};
}

}  // namespace geodesy
