#pragma once

/**
 * @file refine2.hpp
 * @brief Serre-type integral refinement of Ihara's bound.
 *
 * An affine cut a_0 + sum a_k tau_k(w) > 0 with integer coefficients that
 * holds on the whole circle |w| = sqrt(q) forces, by the AM-GM/Galois
 * argument, sum a_k t_k + g a_0 >= g. With a_k >= 0 and t_k <= t_1 + q^k - q
 * this becomes a lower bound on t_1 (general_bound).
 *
 * Every positive definite [[d, a], [a, b]] with d, 2a, b natural yields such a
 * cut of order 2 (bound_A2). With d = 1 the optimal matrix is
 * a = floor(alpha) + 1/2, b = floor(a^2) + 1, where alpha = -t_I / g, and
 * the gain over Ihara is g (alpha - floor)(ceil - alpha) / (2 ceil(alpha)).
 */

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wob/classical.hpp"
#include "wob/errors.hpp"
#include "wob/qext.hpp"
#include "wob/verify/positivity.hpp"

namespace wob {

/// Integer cut a_0 + sum_{k=1..n} a_k tau_k > 0, coeffs = {a_0, ..., a_n}.
class AffineCut {
 public:
  static AffineCut make(std::vector<Integer> coeffs) {
    if (coeffs.size() < 2) throw InvalidCut("an affine cut needs a_0 and at least a_1");
    Integer total = 0;
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
      if (coeffs[k] < 0) throw InvalidCut("coefficient a_" + std::to_string(k) + " is negative");
      total += coeffs[k];
    }
    if (total == 0) throw InvalidCut("a_1 + ... + a_n must be positive");
    AffineCut c;
    c.coeffs_ = std::move(coeffs);
    return c;
  }

  /// Runs the positivity oracle on |w| = sqrt(q); throws UncertifiedCut unless it holds strictly.
  AffineCut certified(std::int64_t q) const {
    const auto check = verify::check_affine_ineq(q, coeffs_);
    if (!check.holds)
      throw UncertifiedCut("cut is not strictly positive on the circle of radius sqrt(" + std::to_string(q) + ")");
    AffineCut c = *this;
    c.certified_q_ = q;
    return c;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  std::optional<std::int64_t> certified_for() const { return certified_q_; }

 private:
  friend class RefineMatrix2;
  std::vector<Integer> coeffs_;
  std::optional<std::int64_t> certified_q_;
};

/// [[d, a], [a, b]] with d, b natural, 2a natural, positive definite.
class RefineMatrix2 {
 public:
  static RefineMatrix2 make(Integer d, Integer two_a, Integer b) {
    if (d < 0 || two_a < 0 || b < 0) throw IntegralityViolation("d, 2a and b must be natural integers");
    // d >= 1 and d b - a^2 > 0, i.e. 4 d b > (2a)^2
    if (d < 1 || 4 * d * b <= two_a * two_a)
      throw NotPositiveDefinite("[[" + d.str() + ", " + Rational(two_a, 2).str() + "], [., " + b.str() +
                                "]] is not positive definite");
    RefineMatrix2 m;
    m.d_ = std::move(d);
    m.two_a_ = std::move(two_a);
    m.b_ = std::move(b);
    return m;
  }

  const Integer& d() const { return d_; }
  const Integer& two_a() const { return two_a_; }
  Rational a() const { return Rational(two_a_, 2); }
  const Integer& b() const { return b_; }

  /// d tau_2 + 2a tau_1 + 2qd + b > 0, positive by the PSD pairing with M(w).
  AffineCut cut(std::int64_t q) const {
    AffineCut c;
    c.coeffs_ = {2 * Integer(q) * d_ + b_, two_a_, d_};
    c.certified_q_ = q;
    return c;
  }

 private:
  Integer d_, two_a_, b_;
};

/// t1 >= (g(1 - a_0) - sum a_k (q^k - q)) / sum a_k.
inline Rational general_bound(const CurveParams& p, const AffineCut& cut) {
  if (!cut.certified_for() || *cut.certified_for() != p.q)
    throw UncertifiedCut("cut has no positivity certificate for q = " + std::to_string(p.q));
  const auto& a = cut.coeffs();
  const Integer q = p.Q();
  Integer num = p.G() * (1 - a[0]);
  Integer den = 0;
  Integer qk = q;
  for (std::size_t k = 1; k < a.size(); ++k) {
    num -= a[k] * (qk - q);
    den += a[k];
    qk *= q;
  }
  return Rational(num, den);
}

/// t1 >= (g(1 - 2qd - b) - d(q^2 - q)) / (d + 2a).
inline Rational bound_A2(const CurveParams& p, const RefineMatrix2& A) {
  const Integer q = p.Q();
  return Rational(p.G() * (1 - 2 * q * A.d() - A.b()) - A.d() * (q * q - q), A.d() + A.two_a());
}

/// alpha = -t_I / g = (sqrt(r) - 1)/2.
inline Quad alpha(const CurveParams& p) {
  require_ihara_range(p, "alpha");
  return Quad::make(Rational(-1, 2), Rational(1, 2), ihara_radicand(p));
}

/// floor(alpha); alpha(alpha + 1) = 2q + (q^2 - q)/g is asserted on the way.
inline Integer alpha_floor(const CurveParams& p) {
  const Quad a = alpha(p);
  const Integer q = p.Q();
  if (a * (a + 1) != Quad(Rational(2 * q) + Rational(q * q - q, p.G())))
    throw Error("alpha(alpha + 1) identity failed");  // unreachable for exact arithmetic
  return a.floor();
}

/// The d = 1 optimum: a = k + 1/2, b = k(k+1) + 1 with k = floor(alpha).
inline RefineMatrix2 ihara_serre_matrix(const CurveParams& p) {
  const Integer k = alpha_floor(p);
  return RefineMatrix2::make(1, 2 * k + 1, k * (k + 1) + 1);
}

/// t_IS = -(g k(k+1) + 2qg + q^2 - q) / (2(k+1)), k = floor(alpha).
inline Rational ihara_serre_t(const CurveParams& p) {
  const Integer k = alpha_floor(p);
  const Integer q = p.Q();
  const Integer g = p.G();
  return Rational(-(g * k * (k + 1) + 2 * q * g + q * q - q), 2 * (k + 1));
}

/// g (alpha - floor alpha)(ceil alpha - alpha) / (2 ceil alpha); equals t_IS - t_I.
inline Quad gain(const CurveParams& p) {
  const Quad a = alpha(p);
  const Integer lo = a.floor();
  const Integer hi = a.ceil();
  return Quad(p.G()) * (a - Quad(lo)) * (Quad(hi) - a) / Quad(Integer(2 * hi));
}

struct Asymptotics {
  Quad alpha_inf;   // (sqrt(1 + 8q) - 1)/2
  Quad Aq_upper;    // alpha_inf - slope
  Quad slope;       // limit of gain / g
  Quad const_term;  // intercept of the asymptote of gain(g)
};

inline Asymptotics asymptotics(std::int64_t q) {
  if (q < 2) throw InvalidParams("q must be >= 2");
  const Rational r(1 + 8 * Integer(q));
  const Quad a = Quad::make(Rational(-1, 2), Rational(1, 2), r);
  const Integer lo = a.floor();
  const Integer hi = a.ceil();
  const Quad slope = (a - Quad(lo)) * (Quad(hi) - a) / Quad(Integer(2 * hi));
  const Integer qq = Integer(q) * q - q;
  // (floor - alpha + 1/2)(q^2 - q) / ((floor + 1) sqrt(8q + 1))
  const Quad c = (Quad(lo) - a + Quad(Rational(1, 2))) * Quad(qq) / (Quad(lo + 1) * Quad::sqrt(r));
  return {a, a - slope, slope, c};
}

/// Gain at g = 4q through alpha = (3 sqrt(q) - 1)/2; needs q >= 34.
inline Quad seq_gain_4q(std::int64_t q) {
  if (q < 34) throw OutOfIharaRange("g = 4q lies in [g2, g3] only for q >= 34 (got q = " + std::to_string(q) + ")");
  const Quad a = Quad::make(Rational(-1, 2), Rational(3, 2), Rational(q));
  const Integer lo = a.floor();
  const Integer hi = a.ceil();
  return Quad(Integer(2 * Integer(q))) / Quad(hi) * (a - Quad(lo)) * (Quad(hi) - a);
}

/// The best conceivable gain at g = 4q: q / (2 ceil((3 sqrt(q) - 1)/2)).
inline Rational seq_gain_4q_cap(std::int64_t q) {
  const Integer c = Quad::make(Rational(-1, 2), Rational(3, 2), Rational(q)).ceil();
  return Rational(Integer(q), 2 * c);
}

// ---------------------------------------------------------------------------
// Reports

inline BoundReport ihara_serre_report(const CurveParams& p) {
  const Quad a = alpha(p);
  Quad t(ihara_serre_t(p));
  Integer n = n1_upper_from(p, t);
  std::string notes;
  if (a.is_rational() && is_integer(a.x())) {
    notes = "alpha integral; coincides with Ihara";
  } else {
    const RefineMatrix2 A = ihara_serre_matrix(p);
    notes = "A = [[1, " + A.a().str() + "], [" + A.a().str() + ", " + A.b().str() + "]]";
  }
  return {Method::IharaSerre, p.q, p.g, std::move(t), std::move(n), detail::order2_optimal(p), std::move(notes)};
}

inline BoundReport bound_a2_report(const CurveParams& p, const RefineMatrix2& A) {
  Quad t(bound_A2(p, A));
  Integer n = n1_upper_from(p, t);
  return {Method::BoundA2, p.q, p.g, std::move(t), std::move(n), detail::order2_optimal(p),
          "A = [[" + A.d().str() + ", " + A.a().str() + "], [" + A.a().str() + ", " + A.b().str() + "]]"};
}

inline BoundReport generic_report(const CurveParams& p, const AffineCut& cut) {
  Quad t(general_bound(p, cut));
  Integer n = n1_upper_from(p, t);
  return {Method::Generic, p.q, p.g, std::move(t), std::move(n), true, "order " + std::to_string(cut.order())};
}

}  // namespace wob
