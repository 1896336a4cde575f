#pragma once

// Independent 100-digit oracles for the exact modules.
//
// weil_domain_min2 solves the order-2 Weil domain geometrically (line meets
// parabola, or the parabola's top corner) instead of reusing the Ihara
// formula. psd4_feasible_point checks the block-diagonal order-3 Gram
// matrix numerically. scan_halfinteger brute-forces the d = 1 matrices.

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "wob/classical.hpp"
#include "wob/refine2.hpp"
#include "wob/verify/real.hpp"

namespace wob::verify {

struct WeilDomainPoint {
  std::vector<Rational> t;  // t_1 ... t_n

  /// Order-2 membership: t2 <= 2qg, t2 >= t1^2/g - 2qg, t2 <= t1 + q^2 - q.
  bool in_order2_domain(const CurveParams& p) const {
    const Rational q(p.q), g(p.g);
    const Rational& t1 = t.at(0);
    const Rational& t2 = t.at(1);
    return t2 <= 2 * q * g && t2 >= t1 * t1 / g - 2 * q * g && t2 <= t1 + q * q - q;
  }
};

/// Minimal t1 over the order-2 Weil domain.
inline Real weil_domain_min2(const CurveParams& p) {
  const Real q(p.q), g(p.g);
  const Real s = boost::multiprecision::sqrt(q);
  // Corner of parabola t2 = t1^2/g - 2qg and horizontal line t2 = 2qg.
  const Real corner_t1 = -2 * g * s;
  const Real corner_t2 = 2 * q * g;
  if (corner_t2 <= corner_t1 + q * q - q) return corner_t1;
  // Otherwise the line t2 = t1 + q^2 - q cuts the parabola:
  // t1^2 - g t1 - g(2qg + q^2 - q) = 0, smaller root.
  const Real c = g * (2 * q * g + q * q - q);
  return (g - boost::multiprecision::sqrt(g * g + 4 * c)) / 2;
}

/// PSD of both 2x2 blocks of the order-3 Gram matrix, within the 1e-30 margin.
inline bool psd4_feasible_point(const CurveParams& p, const std::array<Real, 3>& t) {
  const Real q(p.q), g(p.g);
  const Real s = boost::multiprecision::sqrt(q);
  const Real off1 = s * t[0] + t[1];
  const Real off2 = s * t[0] - t[1];
  const Real a1 = 2 * g * q * s + t[2], c1 = 2 * g * s + t[0];
  const Real a2 = 2 * g * s - t[0], c2 = 2 * g * q * s - t[2];
  const Real tol = -margin();
  return a1 >= tol && c1 >= tol && a1 * c1 - off1 * off1 >= tol && a2 >= tol && c2 >= tol &&
         a2 * c2 - off2 * off2 >= tol;
}

inline bool psd4_feasible_point(const CurveParams& p, const WeilDomainPoint& t) {
  return psd4_feasible_point(p, {to_real(t.t.at(0)), to_real(t.t.at(1)), to_real(t.t.at(2))});
}

/// t_k = sum_j 2 q^{k/2} cos(k theta_j) for k = 1..3.
inline std::array<Real, 3> traces_from_angles(std::int64_t q, const std::vector<Real>& angles) {
  std::array<Real, 3> t{0, 0, 0};
  const Real s = boost::multiprecision::sqrt(Real(q));
  for (const Real& th : angles) {
    Real pw = s;
    for (int k = 1; k <= 3; ++k) {
      t[k - 1] += 2 * pw * boost::multiprecision::cos(k * th);
      pw *= s;
    }
  }
  return t;
}

/// argmax over a in {1/2, 1, ..., a_max} of bound_A2(d = 1, a, floor(a^2) + 1); ties keep the smallest a.
inline Rational scan_halfinteger(const CurveParams& p, const Rational& a_max) {
  require_ihara_range(p, "scan_halfinteger");
  const Integer top = floor_of(2 * a_max);
  if (top < 1) throw InvalidParams("a_max must be at least 1/2");
  Rational best_a = 0;
  Rational best_t = 0;
  for (Integer two_a = 1; two_a <= top; ++two_a) {
    const Integer b = floor_of(Rational(two_a * two_a, 4)) + 1;
    const Rational t = bound_A2(p, RefineMatrix2::make(1, two_a, b));
    if (two_a == 1 || t > best_t) {
      best_t = t;
      best_a = Rational(two_a, 2);
    }
  }
  return best_a;
}

}  // namespace wob::verify
