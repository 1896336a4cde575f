#pragma once

/**
 * @file qext.hpp
 * @brief Exact arithmetic in real quadratic fields Q(sqrt(D)).
 *
 * A Quad is the real number x + y*sqrt(D) with x, y, D rational and D >= 0.
 * Every sign, comparison and floor is decided exactly: no decision made
 * here ever depends on a floating-point rounding.
 *
 * Canonical form:
 * - if D is the square of a rational r, the value y*r is folded into x and
 *   y is set to 0;
 * - a Quad with y == 0 is a plain rational and mixes freely with any other
 *   Quad regardless of its stored radicand.
 *
 * Two irrational operands must live in the same field. Radicands D1 and D2
 * generate the same field iff D1/D2 is a rational square; such operands are
 * rebased silently (sqrt(9q) = 3*sqrt(q)), anything else raises
 * RadicandMismatch.
 */

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "wob/errors.hpp"

namespace wob {

// Expression templates off: Quad converts implicitly from both types.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  return Rational(num, den);
}

/// floor(sqrt(n)) for n >= 0.
inline Integer isqrt(const Integer& n) {
  if (n < 0) throw DomainError("isqrt of a negative integer");
  return boost::multiprecision::sqrt(n);
}

inline std::optional<Integer> exact_sqrt(const Integer& n) {
  if (n < 0) return std::nullopt;
  Integer r = isqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

/// The rational r >= 0 with r*r == v, if there is one.
inline std::optional<Rational> exact_sqrt(const Rational& v) {
  if (v < 0) return std::nullopt;
  auto n = exact_sqrt(Integer(numerator(v)));
  if (!n) return std::nullopt;
  auto d = exact_sqrt(Integer(denominator(v)));
  if (!d) return std::nullopt;
  return Rational(*n, *d);
}

inline Integer floor_of(const Rational& v) {
  const Integer& n = numerator(v);
  const Integer& d = denominator(v);
  Integer q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) --q;
  return q;
}

inline Integer ceil_of(const Rational& v) { return -floor_of(-v); }

inline bool is_integer(const Rational& v) { return denominator(v) == 1; }

inline int sign_of(const Rational& v) { return v.sign(); }

class Quad {
 public:
  Quad() = default;
  Quad(const Rational& x) : x_(x) {}  // NOLINT: rational embedding
  Quad(const Integer& x) : x_(x) {}   // NOLINT
  Quad(std::int64_t x) : x_(x) {}     // NOLINT
  Quad(int x) : x_(x) {}              // NOLINT

  /// x + y*sqrt(radicand) in canonical form.
  static Quad make(const Rational& x, const Rational& y, const Rational& radicand) {
    if (radicand < 0) throw DomainError("negative radicand " + radicand.str());
    if (y == 0) return Quad(x, Rational(0), radicand, Raw{});
    if (auto r = exact_sqrt(radicand)) return Quad(x + y * *r, Rational(0), radicand, Raw{});
    return Quad(x, y, radicand, Raw{});
  }

  static Quad sqrt(const Rational& radicand) { return make(0, 1, radicand); }

  const Rational& x() const noexcept { return x_; }
  const Rational& y() const noexcept { return y_; }
  const Rational& radicand() const noexcept { return d_; }

  bool is_rational() const noexcept { return y_ == 0; }
  bool is_zero() const noexcept { return x_ == 0 && y_ == 0; }

  /// Only meaningful when is_rational().
  const Rational& as_rational() const {
    if (!is_rational()) throw DomainError("value " + str() + " is irrational");
    return x_;
  }

  /// Exact sign of x + y*sqrt(D).
  int sign() const {
    const int sx = x_.sign();
    const int sy = y_.sign();
    if (sy == 0) return sx;
    if (sx == 0) return sy;
    if (sx == sy) return sx;
    const Rational lhs = x_ * x_;
    const Rational rhs = y_ * y_ * d_;
    if (lhs > rhs) return sx;
    if (lhs < rhs) return sy;
    return 0;
  }

  /// The unique n with n <= value < n + 1.
  Integer floor() const {
    if (is_rational()) return floor_of(x_);
    // |y|*sqrt(D) = sqrt(y^2 D) lies in [s, s+1); x lies in [fx, fx+1).
    const Integer s = isqrt(floor_of(y_ * y_ * d_));
    Integer n = floor_of(x_) + (y_ > 0 ? s : Integer(-s - 1));
    while ((*this - Quad(n)).sign() < 0) --n;
    while ((*this - Quad(n + 1)).sign() >= 0) ++n;
    return n;
  }

  Integer ceil() const { return -(-*this).floor(); }

  Quad conjugate() const { return Quad(x_, -y_, d_, Raw{}); }

  /// x^2 - y^2 D, the field norm.
  Rational norm() const { return x_ * x_ - y_ * y_ * d_; }

  Quad inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    const Rational n = norm();
    return Quad(x_ / n, -y_ / n, d_, Raw{});
  }

  Quad operator-() const { return Quad(-x_, -y_, d_, Raw{}); }

  friend Quad operator+(const Quad& u, const Quad& v) {
    const Aligned a = align(u, v);
    return Quad(a.x1 + a.x2, a.y1 + a.y2, a.d, Raw{});
  }
  friend Quad operator-(const Quad& u, const Quad& v) { return u + (-v); }
  friend Quad operator*(const Quad& u, const Quad& v) {
    const Aligned a = align(u, v);
    return Quad(a.x1 * a.x2 + a.y1 * a.y2 * a.d, a.x1 * a.y2 + a.x2 * a.y1, a.d, Raw{});
  }
  friend Quad operator/(const Quad& u, const Quad& v) { return u * v.inverse(); }

  Quad& operator+=(const Quad& v) { return *this = *this + v; }
  Quad& operator-=(const Quad& v) { return *this = *this - v; }
  Quad& operator*=(const Quad& v) { return *this = *this * v; }
  Quad& operator/=(const Quad& v) { return *this = *this / v; }

  /// Value equality. Irrationals from different fields are never equal.
  friend bool operator==(const Quad& u, const Quad& v) {
    if (u.is_rational() && v.is_rational()) return u.x_ == v.x_;
    if (u.is_rational() != v.is_rational()) return false;
    if (!same_field(u.d_, v.d_)) return false;
    return (u - v).is_zero();
  }

  /// Exact order. Throws RadicandMismatch across different fields.
  friend std::strong_ordering operator<=>(const Quad& u, const Quad& v) {
    const int s = (u - v).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "x" for rationals, "x + y*sqrt(D)" otherwise, parts as reduced fractions.
  std::string str() const {
    if (is_rational()) return x_.str();
    const std::string root = "*sqrt(" + d_.str() + ")";
    if (x_ == 0) return y_.str() + root;
    return x_.str() + (y_ < 0 ? " - " + Rational(-y_).str() : " + " + y_.str()) + root;
  }

  /// Float approximation; heuristics only, never used for decisions.
  long double approx() const {
    return to_ld(x_) + to_ld(y_) * std::sqrt(to_ld(d_));
  }

 private:
  struct Raw {};
  // y != 0 implies d is not a rational square (callers guarantee it).
  Quad(Rational x, Rational y, Rational d, Raw) : x_(std::move(x)), y_(std::move(y)), d_(std::move(d)) {
    if (y_ == 0 && d_ < 0) d_ = 0;
  }

  struct Aligned {
    Rational x1, y1, x2, y2, d;
  };

  static bool same_field(const Rational& d1, const Rational& d2) {
    return d1 == d2 || exact_sqrt(Rational(d2 / d1)).has_value();
  }

  static Aligned align(const Quad& u, const Quad& v) {
    if (v.y_ == 0) return {u.x_, u.y_, v.x_, Rational(0), u.d_};
    if (u.y_ == 0) return {u.x_, Rational(0), v.x_, v.y_, v.d_};
    if (u.d_ == v.d_) return {u.x_, u.y_, v.x_, v.y_, u.d_};
    // sqrt(Dv) = s * sqrt(Du) when Dv/Du = s^2
    auto s = exact_sqrt(Rational(v.d_ / u.d_));
    if (!s) throw RadicandMismatch("radicands " + u.d_.str() + " and " + v.d_.str() + " span different fields");
    return {u.x_, u.y_, v.x_, v.y_ * *s, u.d_};
  }

  static long double to_ld(const Rational& r) {
    return numerator(r).convert_to<long double>() / denominator(r).convert_to<long double>();
  }

  Rational x_{0};
  Rational y_{0};
  Rational d_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Quad& u) { return os << u.str(); }

// Free-function spellings of the field operations.
inline Quad quad_make(const Rational& x, const Rational& y, const Rational& d) { return Quad::make(x, y, d); }
inline int quad_sign(const Quad& u) { return u.sign(); }
inline Integer quad_floor(const Quad& u) { return u.floor(); }
inline std::strong_ordering quad_cmp(const Quad& u, const Quad& v) { return u <=> v; }

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

inline Integer parse_integer(std::string_view s) {
  s = trim(s);
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw ParseError("empty integer");
  Integer v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw ParseError("invalid digit '" + std::string(1, c) + "' in integer");
    v = v * 10 + (c - '0');
  }
  return neg ? Integer(-v) : v;
}

}  // namespace detail

inline Rational parse_rational(std::string_view s) {
  s = detail::trim(s);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(detail::parse_integer(s));
  const Integer den = detail::parse_integer(s.substr(slash + 1));
  if (den <= 0) throw ParseError("denominator must be positive in '" + std::string(s) + "'");
  return Rational(detail::parse_integer(s.substr(0, slash)), den);
}

/// Inverse of Quad::str(): "x", "y*sqrt(D)", "x + y*sqrt(D)" or "x - y*sqrt(D)".
inline Quad parse_quad(std::string_view s) {
  s = detail::trim(s);
  const auto root = s.find("*sqrt(");
  if (root == std::string_view::npos) return Quad(parse_rational(s));
  if (s.back() != ')') throw ParseError("unterminated sqrt in '" + std::string(s) + "'");
  const Rational d = parse_rational(s.substr(root + 6, s.size() - root - 7));
  std::string_view head = s.substr(0, root);
  Rational x = 0;
  bool negate = false;
  auto op = head.find(" + ");
  if (op == std::string_view::npos) {
    op = head.find(" - ");
    negate = op != std::string_view::npos;
  }
  if (op != std::string_view::npos) {
    x = parse_rational(head.substr(0, op));
    head = head.substr(op + 3);
  }
  const Rational y = parse_rational(head);
  return Quad::make(x, negate ? Rational(-y) : y, d);
}

}  // namespace wob
