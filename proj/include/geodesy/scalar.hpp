#pragma once

#include "geodesy/surd.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <variant>

namespace geodesy {

/// A number in one of two modes: exact (element of Q extended by square
/// roots) or IEEE double. Mixing modes in arithmetic demotes to double.
class Scalar {
 public:
  Scalar() : v_(Surd()) {}
  Scalar(const Surd& s) : v_(s) {}
  Scalar(const Rational& q) : v_(Surd(q)) {}
  Scalar(long long n) : v_(Surd(n)) {}
  Scalar(int n) : v_(Surd((long long)n)) {}
  Scalar(double d) : v_(d) {}

  static Scalar sqrt_rational(const Rational& r) { return Scalar(Surd::sqrt_of(r)); }

  bool is_exact() const { return std::holds_alternative<Surd>(v_); }
  const Surd& surd() const { return std::get<Surd>(v_); }

  double to_double() const {
    return is_exact() ? surd().to_double() : std::get<double>(v_);
  }

  bool is_zero(double tol = 0.0) const {
    return is_exact() ? surd().is_zero() : std::abs(std::get<double>(v_)) <= tol;
  }

  int sign() const {
    if (is_exact()) return surd().sign();
    double d = std::get<double>(v_);
    return d == 0 ? 0 : (d > 0 ? 1 : -1);
  }

  friend Scalar operator-(const Scalar& a) {
    return a.is_exact() ? Scalar(-a.surd()) : Scalar(-a.to_double());
  }
#define GEODESY_SCALAR_BINOP(op)                                         \
  friend Scalar operator op(const Scalar& a, const Scalar& b) {          \
    if (a.is_exact() && b.is_exact()) return Scalar(a.surd() op b.surd()); \
    return Scalar(a.to_double() op b.to_double());                       \
  }
  GEODESY_SCALAR_BINOP(+)
  GEODESY_SCALAR_BINOP(-)
  GEODESY_SCALAR_BINOP(*)
  GEODESY_SCALAR_BINOP(/)
#undef GEODESY_SCALAR_BINOP

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return a.surd() == b.surd();
    return a.to_double() == b.to_double();
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// sqrt; stays exact for nonnegative rationals, otherwise drops to double.
  Scalar sqrt() const {
    if (is_exact()) {
      if (surd().is_rational()) return Scalar(Surd::sqrt_of(surd().as_rational()));
      double d = to_double();
      if (d < -1e-12) throw std::domain_error("sqrt of negative value");
      return Scalar(std::sqrt(std::max(0.0, d)));
    }
    double d = std::get<double>(v_);
    if (d < -1e-12) throw std::domain_error("sqrt of negative value");
    return Scalar(std::sqrt(std::max(0.0, d)));
  }

  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  std::string render() const;
  static Scalar parse(const std::string& s);

 private:
  std::variant<Surd, double> v_;
};

inline std::string render_double(double d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

inline std::string Scalar::render() const {
  if (!is_exact()) return render_double(std::get<double>(v_));
  const auto& t = surd().terms();
  if (t.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [r, c] : t) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (r == 1)
        out += render_rational(c);
      else if (c == 1)
        out += "sqrt(" + r.str() + ")";
      else
        out += render_rational(c) + "*sqrt(" + r.str() + ")";
      first = false;
      continue;
    }
    out += (c < 0) ? "-" : "+";
    if (r == 1)
      out += render_rational(mag);
    else if (mag == 1)
      out += "sqrt(" + r.str() + ")";
    else
      out += render_rational(mag) + "*sqrt(" + r.str() + ")";
  }
  return out;
}

namespace detail {

inline bool looks_like_decimal(const std::string& s) {
  return s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
         s.find('E') != std::string::npos || s == "inf" || s == "-inf" || s == "nan";
}

/// One grammar term: rational, rational*sqrt(u), or sqrt(u).
inline Scalar parse_term(const std::string& term) {
  if (term.empty()) throw std::invalid_argument("empty scalar term");
  auto sq = term.find("sqrt(");
  if (sq == std::string::npos) {
    if (looks_like_decimal(term)) {
      size_t used = 0;
      double d = std::stod(term, &used);
      if (used != term.size()) throw std::invalid_argument("bad numeric literal: " + term);
      return Scalar(d);
    }
    return Scalar(parse_rational(term));
  }
  if (term.back() != ')') throw std::invalid_argument("unterminated sqrt: " + term);
  std::string inside = term.substr(sq + 5, term.size() - sq - 6);
  if (inside.empty()) throw std::invalid_argument("empty radicand: " + term);
  for (char ch : inside)
    if (!std::isdigit((unsigned char)ch))
      throw std::invalid_argument("radicand must be an unsigned integer: " + term);
  Scalar root = Scalar::sqrt_rational(Rational(Integer(inside)));
  if (sq == 0) return root;
  if (sq == 1 && term[0] == '-') return -root;  // lenient: "-sqrt(u)"
  if (term[sq - 1] != '*') throw std::invalid_argument("expected '*' before sqrt: " + term);
  return Scalar(parse_rational(term.substr(0, sq - 1))) * root;
}

}  // namespace detail

inline Scalar Scalar::parse(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace((unsigned char)c)) s += c;
  if (s.empty()) throw std::invalid_argument("empty scalar string");
  Scalar acc = Scalar(0);
  size_t start = 0;
  bool any = false;
  for (size_t i = 1; i <= s.size(); ++i) {
    bool split = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      char prev = s[i - 1];
      split = !(prev == 'e' || prev == 'E');  // keep float exponents intact
    }
    if (i == s.size() || split) {
      std::string piece = s.substr(start, i - start);
      Scalar term = (piece[0] == '+') ? detail::parse_term(piece.substr(1))
                                      : detail::parse_term(piece);
      acc += term;
      any = true;
      start = i;
    }
  }
  if (!any) throw std::invalid_argument("no terms in scalar string: " + raw);
  return acc;
}

}  // namespace geodesy
