#pragma once

#include "geodesy/rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace geodesy {

/// Element of the real field Q(sqrt(d_1),...,sqrt(d_m)): a finite sum of
/// rational multiples of square roots of squarefree positive integers.
/// Radicand 1 holds the rational part. Closed under +,-,* and division by
/// nonzero; equality and the zero test are exact.
class Surd {
 public:
  Surd() = default;
  Surd(const Rational& q) {
    if (q != 0) terms_[1] = q;
  }
  Surd(long long n) : Surd(Rational(n)) {}

  /// sqrt(r) for a nonnegative rational r, reduced to canonical form.
  static Surd sqrt_of(const Rational& r) {
    if (r < 0) throw std::domain_error("sqrt of negative rational");
    if (r == 0) return Surd();
    // sqrt(p/q) = sqrt(p*q)/q
    Integer pq = rat_num(r) * rat_den(r);
    auto [s, m] = squarefree_split(pq);
    Surd out;
    out.terms_[m] = Rational(s, rat_den(r));
    out.prune();
    return out;
  }

  static Surd sqrt_of_int(const Integer& u) { return sqrt_of(Rational(u)); }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
  }
  Rational rational_part() const {
    auto it = terms_.find(1);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  /// Throws unless the value is rational.
  Rational as_rational() const {
    if (!is_rational()) throw std::domain_error("surd is not rational");
    return rational_part();
  }

  const std::map<Integer, Rational>& terms() const { return terms_; }

  friend Surd operator-(const Surd& a) {
    Surd out;
    for (auto& [r, c] : a.terms_) out.terms_[r] = -c;
    return out;
  }
  friend Surd operator+(const Surd& a, const Surd& b) {
    Surd out = a;
    for (auto& [r, c] : b.terms_) out.terms_[r] += c;
    out.prune();
    return out;
  }
  friend Surd operator-(const Surd& a, const Surd& b) { return a + (-b); }
  friend Surd operator*(const Surd& a, const Surd& b) {
    Surd out;
    for (auto& [r1, c1] : a.terms_)
      for (auto& [r2, c2] : b.terms_) {
        Integer g = boost::multiprecision::gcd(r1, r2);
        // sqrt(r1)*sqrt(r2) = g*sqrt((r1/g)*(r2/g)), the product squarefree
        out.terms_[(r1 / g) * (r2 / g)] += c1 * c2 * g;
      }
    out.prune();
    return out;
  }
  friend Surd operator/(const Surd& a, const Surd& b) { return a * b.inverse(); }

  Surd& operator+=(const Surd& b) { return *this = *this + b; }
  Surd& operator-=(const Surd& b) { return *this = *this - b; }
  Surd& operator*=(const Surd& b) { return *this = *this * b; }
  Surd& operator/=(const Surd& b) { return *this = *this / b; }

  friend bool operator==(const Surd& a, const Surd& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Surd& a, const Surd& b) { return !(a == b); }

  /// Multiplicative inverse via conjugation over each prime appearing in a
  /// radicand; the norm ends up rational after at most one pass per prime.
  Surd inverse() const {
    if (is_zero()) throw std::domain_error("division by zero surd");
    if (is_rational()) {
      Surd out;
      out.terms_[1] = Rational(1) / rational_part();
      return out;
    }
    Integer p = first_prime_factor_of_radicands();
    // split  x = a + sqrt(p) * b  with a, b free of sqrt(p)
    Surd a, b;
    for (auto& [r, c] : terms_) {
      if (r % p == 0)
        b.terms_[r / p] += c;  // sqrt(r) = sqrt(p) * sqrt(r/p)
      else
        a.terms_[r] += c;
    }
    a.prune();
    b.prune();
    Surd conj = a - Surd::sqrt_of_int(p) * b;
    Surd norm = *this * conj;  // free of sqrt(p)
    return conj * norm.inverse();
  }

  double to_double() const {
    double acc = 0;
    for (auto& [r, c] : terms_) acc += geodesy::to_double(c) * std::sqrt(r.convert_to<double>());
    return acc;
  }

  /// Exact zero test plus high-precision sign evaluation (50 decimal digits,
  /// plenty for desk-scale coefficients).
  int sign() const {
    if (is_zero()) return 0;
    if (is_rational()) return rational_part().sign();
    using bf = boost::multiprecision::cpp_bin_float_50;
    bf acc = 0;
    for (auto& [r, c] : terms_) acc += bf(c) * sqrt(bf(r));
    return acc == 0 ? 0 : (acc > 0 ? 1 : -1);
  }

 private:
  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = (it->second == 0) ? terms_.erase(it) : std::next(it);
  }

  Integer first_prime_factor_of_radicands() const {
    Integer r = terms_.rbegin()->first;  // largest radicand, > 1 here
    for (Integer p = 2; p * p <= r; ++p)
      if (r % p == 0) return p;
    return r;
  }

  std::map<Integer, Rational> terms_;  // squarefree radicand -> coefficient
};

}  // namespace geodesy
