#pragma once

/**
 * @file order3.hpp
 * @brief Order-3 Weil-Oesterle bound and its integral refinement.
 *
 * With s = sqrt(q), the first diagonal block of the order-3 Gram matrix is
 *
 *   M = [[2g q s + t3, s t1 + t2], [s t1 + t2, 2g s + t1]].
 *
 * On the line t2 = t1 + q^2 - q, t3 = t1 + q^3 - q its determinant is a
 * quadratic in t1 with coefficients in Q(s); its smaller root t_W is the
 * order-3 baseline. A PSD matrix A = [[d, a], [a, b]] with d, 2a and
 * 2a s + b natural gives the refined bound
 *
 *   t1 >= (-g floor(2 q s d + 2 b s) - d(q^3 - q) - 2a(q^2 - q)) / (d + 2a + 2a s + b).
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wob/classical.hpp"
#include "wob/errors.hpp"
#include "wob/qext.hpp"

namespace wob {

class RefineMatrix3 {
 public:
  /// b = b_x + b_y sqrt(q). Checks d, 2a, 2a sqrt(q) + b natural and A PSD.
  static RefineMatrix3 make(std::int64_t q, Integer d, Integer two_a, Integer b_x, Integer b_y) {
    if (d < 0 || two_a < 0) throw IntegralityViolation("d and 2a must be natural integers");
    const Quad s = sqrt_q(q);
    const Quad b = Quad(b_x) + Quad(b_y) * s;
    const Quad c = Quad(two_a) * s + b;
    if (!c.is_rational() || !is_integer(c.x()) || c.x() < 0)
      throw IntegralityViolation("2a sqrt(q) + b = " + c.str() + " is not a natural integer");
    const Quad a(Rational(two_a, 2));
    if (b.sign() < 0 || (Quad(d) * b - a * a).sign() < 0)
      throw NotPSD("[[" + d.str() + ", " + a.str() + "], [., " + b.str() + "]] is not positive semi-definite");
    if (d == 0 && two_a == 0 && c.x() == 0) throw IntegralityViolation("d + 2a + 2a sqrt(q) + b must be positive");
    RefineMatrix3 m;
    m.q_ = q;
    m.d_ = std::move(d);
    m.two_a_ = std::move(two_a);
    m.b_x_ = std::move(b_x);
    m.b_y_ = std::move(b_y);
    m.b_ = b;
    m.cert_ = numerator(c.x());
    return m;
  }

  std::int64_t q() const { return q_; }
  const Integer& d() const { return d_; }
  const Integer& two_a() const { return two_a_; }
  Rational a() const { return Rational(two_a_, 2); }
  const Quad& b() const { return b_; }
  const Integer& b_x() const { return b_x_; }
  const Integer& b_y() const { return b_y_; }
  /// The natural integer 2a sqrt(q) + b.
  const Integer& certificate() const { return cert_; }

  std::string str() const {
    return "[[" + d_.str() + ", " + a().str() + "], [" + a().str() + ", " + b_.str() + "]]";
  }

 private:
  std::int64_t q_ = 0;
  Integer d_, two_a_, b_x_, b_y_, cert_;
  Quad b_;
};

struct RootEnclosure {
  Rational lo;
  Rational hi;
  Rational width_bound;
};

namespace detail {

/// det of the first order-3 block on the line, as a function of t1.
inline Quad order3_det(const CurveParams& p, const Quad& t) {
  const Quad s = sqrt_q(p.q);
  const Integer q = p.Q();
  const Quad g(p.G());
  const Quad t2 = t + Quad(Integer(q * q - q));
  const Quad t3 = t + Quad(Integer(q * q * q - q));
  const Quad A = Quad(2) * g * Quad(q) * s + t3;
  const Quad B = Quad(2) * g * s + t;
  const Quad C = s * t + t2;
  return A * B - C * C;
}

struct Quadratic {
  Quad c0, c1, c2;
  Quad operator()(const Quad& t) const { return (c2 * t + c1) * t + c0; }
};

inline Quadratic order3_quadratic(const CurveParams& p) {
  const Quad d0 = order3_det(p, Quad(0));
  const Quad dp = order3_det(p, Quad(1));
  const Quad dm = order3_det(p, Quad(-1));
  return {d0, (dp - dm) / Quad(2), (dp + dm) / Quad(2) - d0};
}

inline Rational dyadic_floor(const Quad& v, unsigned bits) {
  const Integer scale = Integer(1) << bits;
  return Rational((v * Quad(scale)).floor(), scale);
}

}  // namespace detail

inline Rational precision_from_bits(unsigned bits) { return Rational(Integer(1), Integer(1) << bits); }

/**
 * Encloses the smallest root of det M on the line by exact-sign bisection.
 *
 * The endpoints are certified by a strict sign change of the quadratic
 * (lo == hi when a dyadic midpoint hits the root exactly).
 */
inline RootEnclosure wo3_t(const CurveParams& p, const Rational& precision = precision_from_bits(60)) {
  if (precision <= 0) throw InvalidParams("precision must be positive");
  const auto P = detail::order3_quadratic(p);
  const Quad disc = P.c1 * P.c1 - Quad(4) * P.c2 * P.c0;
  if (disc.sign() < 0)
    throw NoRealRoot("det M has no real root on the line for q = " + std::to_string(p.q) + ", g = " +
                     std::to_string(p.g));
  const Quad vertex = -P.c1 / (Quad(2) * P.c2);

  unsigned bits = 60;
  while (precision_from_bits(bits) > precision) bits += 8;

  if (disc.sign() == 0) {
    const Rational lo = detail::dyadic_floor(vertex, bits);
    if (vertex.is_rational()) return {vertex.x(), vertex.x(), precision};
    return {lo, lo + precision_from_bits(bits), precision};
  }

  // c2 = -(q + 2 sqrt q) < 0: P > 0 strictly between the roots.
  Rational hi;
  for (unsigned k = 60;; k += 30) {
    hi = detail::dyadic_floor(vertex, k);
    const int s = P(Quad(hi)).sign();
    if (s > 0) break;
    if (s == 0) return {hi, hi, precision};  // landed on the smaller root
  }
  const long double c2 = P.c2.approx(), c1 = P.c1.approx(), root_disc = std::sqrt(std::max(disc.approx(), 0.0L));
  const long double est = std::min((-c1 + root_disc) / (2 * c2), (-c1 - root_disc) / (2 * c2));
  Rational lo(Integer(static_cast<long long>(std::floor(est))) - 1);
  if (lo >= hi) lo = Rational(floor_of(hi) - 1);
  for (Integer step = 1;; step *= 2) {
    const int s = P(Quad(lo)).sign();
    if (s == 0) return {lo, lo, precision};
    if (s < 0) break;
    lo -= Rational(step);
  }
  while (hi - lo > precision) {
    const Rational m = (lo + hi) / 2;
    const int s = P(Quad(m)).sign();
    if (s == 0) return {m, m, precision};
    if (s < 0) {
      lo = m;
    } else {
      hi = m;
    }
  }
  return {lo, hi, precision};
}

/// PSD of [[2g s - t1, s t1 - t2], [s t1 - t2, 2g q s - t3]] on the line, exactly.
///
/// The off-diagonal comes from the basis vectors (s G1 - G2) and (q s G0 - G3).
inline bool second_block_psd(const CurveParams& p, const Rational& t1) {
  const Quad s = sqrt_q(p.q);
  const Integer q = p.Q();
  const Quad g(p.G());
  const Quad t(t1);
  const Quad t2 = t + Quad(Integer(q * q - q));
  const Quad t3 = t + Quad(Integer(q * q * q - q));
  const Quad a = Quad(2) * g * s - t;
  const Quad c = Quad(2) * g * Quad(q) * s - t3;
  const Quad b = s * t - t2;
  return a.sign() >= 0 && c.sign() >= 0 && (a * c - b * b).sign() >= 0;
}

/// t1 lower bound from a certified matrix.
inline Quad bound_A3(const CurveParams& p, const RefineMatrix3& A) {
  if (A.q() != p.q) throw IntegralityViolation("matrix was certified for a different q");
  const Quad s = sqrt_q(p.q);
  const Integer q = p.Q();
  const Quad F = Quad(2) * Quad(A.d()) * Quad(q) * s + Quad(2) * A.b() * s;  // 2 q^{3/2} d + 2 b sqrt(q)
  const Integer num = -p.G() * F.floor() - A.d() * (q * q * q - q) - A.two_a() * (q * q - q);
  const Integer den = A.d() + A.two_a() + A.certificate();
  return Quad(Rational(num, den));
}

struct SearchBudget {
  int scale_grid = 32;
  int d_max = 4;
  int neighborhood = 2;
};

struct SearchResult {
  RefineMatrix3 A;
  Quad t1_lower;
  std::size_t candidates = 0;
};

/// Smallest natural b_x with d (b_x - 2a sqrt q) - a^2 >= 0.
inline Integer minimal_b_x(std::int64_t q, const Integer& d, const Integer& two_a) {
  const Quad v = Quad(Rational(two_a * two_a, 4 * d)) + Quad(two_a) * sqrt_q(q);
  return v.ceil();
}

/**
 * Kernel-seeded enumeration of integral PSD matrices near A0 = v v^T.
 *
 * For every d in [1, d_max] and scale lambda = d - 1/2 + s/scale_grid the
 * scaled kernel entry 2 lambda a0 is rounded and widened by +-neighborhood.
 * b = b_x - 2a sqrt(q) with b_x minimal. The returned matrix maximizes
 * bound_A3; ties go to the smallest (d, 2a, b_x).
 */
inline SearchResult search_A3(const CurveParams& p, const SearchBudget& budget = {},
                              const Rational& precision = precision_from_bits(60)) {
  if (budget.scale_grid < 1 || budget.d_max < 1 || budget.neighborhood < 1)
    throw InvalidParams("search budget fields must be >= 1");
  const RootEnclosure enc = wo3_t(p, precision);
  const long double t = Quad((enc.lo + enc.hi) / 2).approx();
  const long double s = std::sqrt(static_cast<long double>(p.q));
  const long double q = static_cast<long double>(p.q);
  const long double g = static_cast<long double>(p.g);
  const long double m11 = 2 * g * q * s + t + q * q * q - q;
  const long double m12 = s * t + t + q * q - q;
  const long double m22 = 2 * g * s + t;
  // eigenvector for the smallest eigenvalue of M(t_W)
  const long double lambda = (m11 + m22) / 2 - std::hypot((m11 - m22) / 2, m12);
  std::array<long double, 2> v1{m12, lambda - m11};
  std::array<long double, 2> v2{lambda - m22, m12};
  auto norm = [](const std::array<long double, 2>& v) { return std::hypot(v[0], v[1]); };
  const auto& v = norm(v1) >= norm(v2) ? v1 : v2;
  long double a0 = 0;
  if (std::fabs(v[0]) > 1e-12L * norm(v)) a0 = std::max(0.0L, v[1] / v[0]);

  std::set<std::pair<Integer, Integer>> pool;  // (d, 2a), lexicographic
  for (int d = 1; d <= budget.d_max; ++d) {
    for (int k = 1; k <= budget.scale_grid; ++k) {
      const long double scale = d - 0.5L + static_cast<long double>(k) / budget.scale_grid;
      const long long center = std::llround(2 * scale * a0);
      for (long long off = -budget.neighborhood; off <= budget.neighborhood; ++off)
        if (center + off >= 0) pool.emplace(Integer(d), Integer(center + off));
    }
  }

  std::optional<SearchResult> best;
  for (const auto& [d, two_a] : pool) {
    const Integer b_x = minimal_b_x(p.q, d, two_a);
    RefineMatrix3 A;
    try {
      A = RefineMatrix3::make(p.q, d, two_a, b_x, -two_a);
    } catch (const InputError&) {
      continue;
    }
    Quad value = bound_A3(p, A);
    if (!best || value > best->t1_lower) best = SearchResult{std::move(A), std::move(value), 0};
  }
  if (!best) throw EmptySearch("no integral PSD candidate for q = " + std::to_string(p.q));
  best->candidates = pool.size();
  return *std::move(best);
}

// ---------------------------------------------------------------------------
// Reports

inline bool order3_optimal(const CurveParams& p) { return (Quad(p.g) - g3_threshold(p.q).exact).sign() >= 0; }

/// Baseline report; the enclosure is tightened until the N1 floor is decided.
inline BoundReport wo3_report(const CurveParams& p, unsigned precision_bits = 60) {
  unsigned bits = precision_bits;
  RootEnclosure enc = wo3_t(p, precision_from_bits(bits));
  auto floor_at = [&](const Rational& t) { return n1_upper_from(p, Quad(t)); };
  std::string notes;
  while (floor_at(enc.lo) != floor_at(enc.hi)) {
    if (bits >= 1024) {
      notes = "enclosure still straddles an integer at 2^-1024; reporting floor at the lower endpoint";
      break;
    }
    bits *= 2;
    enc = wo3_t(p, precision_from_bits(bits));
  }
  if (!second_block_psd(p, enc.lo)) {
    if (!notes.empty()) notes += "; ";
    notes += "warning: second block not PSD at the baseline point";
  }
  Integer n = floor_at(enc.lo);
  return {Method::WO3, p.q, p.g, RationalInterval{enc.lo, enc.hi}, std::move(n), order3_optimal(p), std::move(notes)};
}

inline BoundReport a3_report(const CurveParams& p, const RefineMatrix3& A, Method tag = Method::WO3Serre) {
  Quad t = bound_A3(p, A);
  Integer n = n1_upper_from(p, t);
  return {tag, p.q, p.g, std::move(t), std::move(n), order3_optimal(p),
          "A = " + A.str() + " {d=" + A.d().str() + ", two_a=" + A.two_a().str() + ", b_x=" + A.b_x().str() +
              ", b_y=" + A.b_y().str() + "}"};
}

inline BoundReport wo3_serre_report(const CurveParams& p, const SearchBudget& budget = {},
                                    unsigned precision_bits = 60) {
  const SearchResult r = search_A3(p, budget, precision_from_bits(precision_bits));
  return a3_report(p, r.A);
}

struct Rec3Row {
  std::int64_t q, g;
  int d, two_a, b_x, b_y;
};

/// The four order-3 matrices that give new upper bounds on N_q(g).
inline constexpr std::array<Rec3Row, 4> kRec3Matrices{{
    {5, 19, 1, 7, 28, -7},
    {7, 21, 3, 29, 147, -29},
    {8, 36, 3, 30, 160, -30},
    {11, 35, 2, 28, 191, -28},
}};

inline std::vector<BoundReport> rec3_table() {
  std::vector<BoundReport> out;
  for (const auto& r : kRec3Matrices) {
    const auto p = CurveParams::make(r.q, r.g);
    out.push_back(a3_report(p, RefineMatrix3::make(r.q, r.d, r.two_a, r.b_x, r.b_y)));
  }
  return out;
}

}  // namespace wob
