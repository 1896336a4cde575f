#pragma once

/**
 * @file classical.hpp
 * @brief Weil, Weil-Serre and Ihara lower bounds on the trace t1.
 *
 * For a curve of genus g over F_q, t1 = q + 1 - N1, so every lower bound on
 * t1 is an upper bound N1 <= floor(q + 1 - t1). The genus thresholds g2 and
 * g3 delimit the Ihara range [g2, g3] where the order-2 Weil-Oesterle bound
 * (Ihara) is the best of the hierarchy.
 */

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "wob/errors.hpp"
#include "wob/qext.hpp"

namespace wob {

/// Trial factorization; q >= 2.
inline bool is_prime_power(std::int64_t q) {
  if (q < 2) return false;
  for (std::int64_t p = 2; p * p <= q; ++p) {
    if (q % p == 0) {
      while (q % p == 0) q /= p;
      return q == 1;
    }
  }
  return true;  // q itself is prime
}

struct CurveParams {
  std::int64_t q = 0;
  std::int64_t g = 0;

  /// Validates q >= 2, g >= 1 and (unless disabled) that q is a prime power.
  static CurveParams make(std::int64_t q, std::int64_t g, bool check_prime_power = true) {
    if (q < 2) throw InvalidParams("q must be >= 2, got " + std::to_string(q));
    if (g < 1) throw InvalidParams("g must be >= 1, got " + std::to_string(g));
    if (check_prime_power && !is_prime_power(q))
      throw InvalidParams("q = " + std::to_string(q) + " is not a prime power");
    return CurveParams{q, g};
  }

  Integer Q() const { return Integer(q); }
  Integer G() const { return Integer(g); }
};

enum class Method { Weil, WeilSerre, Ihara, IharaSerre, BoundA2, WO3, WO3Serre, Generic };

inline std::string_view method_tag(Method m) {
  switch (m) {
    case Method::Weil: return "weil";
    case Method::WeilSerre: return "weil-serre";
    case Method::Ihara: return "ihara";
    case Method::IharaSerre: return "ihara-serre";
    case Method::BoundA2: return "a2";
    case Method::WO3: return "wo3";
    case Method::WO3Serre: return "wo3-serre";
    case Method::Generic: return "generic";
  }
  return "unknown";
}

/// Closed interval with exact rational endpoints.
struct RationalInterval {
  Rational lo;
  Rational hi;
};

struct BoundReport {
  Method method = Method::Weil;
  std::int64_t q = 0;
  std::int64_t g = 0;
  std::variant<Quad, RationalInterval> t1_lower;
  Integer n1_upper;
  bool in_validity_range = false;
  std::string notes;
};

inline Quad sqrt_q(std::int64_t q) { return Quad::sqrt(Rational(q)); }

/// floor(q + 1 - t1): the point-count bound implied by t1 >= t.
inline Integer n1_upper_from(const CurveParams& p, const Quad& t) { return (Quad(p.q + 1) - t).floor(); }

// ---------------------------------------------------------------------------
// Genus thresholds

struct Threshold {
  Quad exact;       // the real threshold
  Integer rounded;  // ceiling for g2, floor for g3
};

/// g2 = sqrt(q)(sqrt(q) - 1)/2 = (q - sqrt(q))/2, rounded up.
inline Threshold g2_threshold(std::int64_t q) {
  Quad v = Quad::make(Rational(q, 2), Rational(-1, 2), Rational(q));
  Integer c = v.ceil();
  return {std::move(v), std::move(c)};
}

/// g3 = sqrt(q)(q - 1)/sqrt(2) = (q - 1) sqrt(q/2), rounded down.
inline Threshold g3_threshold(std::int64_t q) {
  Quad v = Quad::make(0, Rational(q - 1), Rational(q, 2));
  Integer f = v.floor();
  return {std::move(v), std::move(f)};
}

inline bool in_ihara_range(const CurveParams& p) { return p.G() >= g2_threshold(p.q).rounded; }

inline void require_ihara_range(const CurveParams& p, std::string_view what) {
  const Integer g2 = g2_threshold(p.q).rounded;
  if (p.G() < g2)
    throw BelowIharaRange(std::string(what) + " requires g >= g2 = " + g2.str() + " for q = " + std::to_string(p.q) +
                          " (got g = " + std::to_string(p.g) + "); use weil or weil-serre below g2");
}

// ---------------------------------------------------------------------------
// Bounds on t1

/// Weil: t1 >= -2g sqrt(q).
inline Quad weil_t(const CurveParams& p) { return Quad::make(0, Rational(-2 * p.G()), Rational(p.q)); }

/// Weil-Serre: t1 >= -g floor(2 sqrt(q)).
inline Rational weil_serre_t(const CurveParams& p) {
  const Integer m = isqrt(Integer(4 * p.Q()));  // floor(2 sqrt q) = floor(sqrt(4q))
  return Rational(-p.G() * m);
}

/// r = 1 + 8q + 4(q^2 - q)/g, the radicand of the Ihara trace.
inline Rational ihara_radicand(const CurveParams& p) {
  const Integer q = p.Q();
  return Rational(1 + 8 * q) + Rational(4 * (q * q - q), p.G());
}

/// Ihara: the smaller root of t^2/g - t - 2qg - q^2 + q, i.e. g(1 - sqrt(r))/2.
inline Quad ihara_t(const CurveParams& p) {
  require_ihara_range(p, "ihara");
  const Rational half_g(p.G(), 2);
  return Quad::make(half_g, -half_g, ihara_radicand(p));
}

// ---------------------------------------------------------------------------
// Reports

namespace detail {

// Order-1 bounds are the optimal Weil-Oesterle bound for g <= g2.
inline bool order1_optimal(const CurveParams& p) { return (Quad(p.g) - g2_threshold(p.q).exact).sign() <= 0; }

inline bool order2_optimal(const CurveParams& p) {
  const Quad g(p.g);
  return (g - g2_threshold(p.q).exact).sign() >= 0 && (g - g3_threshold(p.q).exact).sign() <= 0;
}

}  // namespace detail

inline BoundReport weil_report(const CurveParams& p) {
  Quad t = weil_t(p);
  Integer n = n1_upper_from(p, t);
  return {Method::Weil, p.q, p.g, std::move(t), std::move(n), detail::order1_optimal(p), ""};
}

inline BoundReport weil_serre_report(const CurveParams& p) {
  Quad t(weil_serre_t(p));
  Integer n = n1_upper_from(p, t);
  std::string notes = exact_sqrt(p.Q()) ? "q is a square; coincides with Weil" : "";
  return {Method::WeilSerre, p.q, p.g, std::move(t), std::move(n), detail::order1_optimal(p), std::move(notes)};
}

inline BoundReport ihara_report(const CurveParams& p) {
  Quad t = ihara_t(p);
  Integer n = n1_upper_from(p, t);
  return {Method::Ihara, p.q, p.g, std::move(t), std::move(n), detail::order2_optimal(p), ""};
}

}  // namespace wob
