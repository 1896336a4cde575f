#pragma once

/**
 * @file positivity.hpp
 * @brief Certifies affine integral inequalities on the Frobenius circle.
 *
 * For |w| = sqrt(q) the traces tau_k(w) = w^k + conj(w)^k are polynomials
 * in u = tau_1(w) in [-2 sqrt(q), 2 sqrt(q)]:
 *
 *   tau_0 = 2, tau_1 = u, tau_{k+1} = u tau_k - q tau_{k-1}.
 *
 * sum a_k tau_k + a_0 > 0 on the circle is therefore a statement about a
 * univariate integer polynomial on an interval. Its minimum is located by
 * isolating the real roots of the derivative with Sturm sequences (exact
 * rational arithmetic), refining them, and comparing the critical values
 * with the two endpoint values in 100-digit arithmetic.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "wob/errors.hpp"
#include "wob/qext.hpp"
#include "wob/verify/real.hpp"

namespace wob::verify {

/// Dense univariate polynomial with rational coefficients, lowest degree first.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& lead() const { return c_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Real eval(const Real& x) const {
    Real acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_real(*it);
    return acc;
  }

  Poly derivative() const {
    std::vector<Rational> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long long>(k));
    return Poly(std::move(d));
  }

  friend Poly operator-(const Poly& p) {
    std::vector<Rational> c = p.c_;
    for (auto& v : c) v = -v;
    return Poly(std::move(c));
  }

  /// Euclidean division; returns {quotient, remainder}.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    std::vector<Rational> r = a.c_;
    const int db = b.degree();
    std::vector<Rational> q(std::max(0, a.degree() - db + 1));
    for (int k = a.degree(); k >= db; --k) {
      const Rational f = r[k] / b.lead();
      if (f == 0) continue;
      q[k - db] = f;
      for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.c_[j];
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
  }

  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    if (a.is_zero()) return a;
    const Rational l = a.lead();
    for (auto& v : a.c_) v /= l;
    return a;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// tau_k as an integer polynomial in u = tau_1.
inline Poly tau_poly(int k, std::int64_t q) {
  std::vector<Rational> prev{2};
  if (k == 0) return Poly(prev);
  std::vector<Rational> cur{0, 1};
  for (int j = 1; j < k; ++j) {
    std::vector<Rational> next(cur.size() + 1, Rational(0));
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= Rational(q) * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return Poly(cur);
}

/// a_0 + sum_{k>=1} a_k tau_k(u).
inline Poly affine_poly(std::int64_t q, std::span<const Integer> coeffs) {
  std::vector<Rational> acc(coeffs.size() + 1, Rational(0));
  if (!coeffs.empty()) acc[0] = Rational(coeffs[0]);
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    const Poly t = tau_poly(static_cast<int>(k), q);
    for (std::size_t i = 0; i < t.coeffs().size(); ++i) acc[i] += Rational(coeffs[k]) * t.coeffs()[i];
  }
  return Poly(std::move(acc));
}

/// Sturm chain of a square-free polynomial.
class SturmChain {
 public:
  explicit SturmChain(const Poly& f) {
    chain_.push_back(f);
    if (f.degree() < 1) return;
    chain_.push_back(f.derivative());
    while (chain_.back().degree() > 0) {
      Poly r = Poly::divmod(chain_[chain_.size() - 2], chain_.back()).second;
      if (r.is_zero()) break;
      chain_.push_back(-r);
    }
  }

  int variations(const Rational& x) const {
    int count = 0;
    int last = 0;
    for (const auto& p : chain_) {
      const int s = p(x).sign();
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  /// Distinct roots in (a, b]; the caller keeps f(a), f(b) nonzero.
  int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

  const Poly& base() const { return chain_.front(); }

 private:
  std::vector<Poly> chain_;
};

struct RootInterval {
  Rational lo;
  Rational hi;  // lo == hi for a root found exactly
};

/// Isolates every real root of f in (lo, hi); f must be nonzero at lo and hi.
inline std::vector<RootInterval> isolate_roots(const Poly& f, const Rational& lo, const Rational& hi) {
  std::vector<RootInterval> out;
  if (f.degree() < 1) return out;
  const Poly sf = Poly::divmod(f, Poly::gcd(f, f.derivative())).first;
  const SturmChain chain(sf);
  std::vector<RootInterval> work{{lo, hi}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    const int n = chain.count(a, b);
    if (n == 0) continue;
    if (n == 1) {
      out.push_back({a, b});
      continue;
    }
    const Rational m = (a + b) / 2;
    if (sf(m) != 0) {
      work.push_back({a, m});
      work.push_back({m, b});
      continue;
    }
    out.push_back({m, m});
    Rational delta = (b - a) / 4;
    while (sf(m - delta) == 0 || sf(m + delta) == 0 || chain.count(m - delta, m + delta) != 1) delta /= 2;
    work.push_back({a, m - delta});
    work.push_back({m + delta, b});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  return out;
}

/// Bisects an isolating interval of a simple root of f down to width <= eps.
inline RootInterval refine_root(const Poly& f, RootInterval r, const Rational& eps) {
  if (r.lo == r.hi) return r;
  const int s_lo = f(r.lo).sign();
  while (r.hi - r.lo > eps) {
    const Rational m = (r.lo + r.hi) / 2;
    const int s = f(m).sign();
    if (s == 0) return {m, m};
    if (s == s_lo) {
      r.lo = m;
    } else {
      r.hi = m;
    }
  }
  return r;
}

enum class Positivity { Holds, Boundary, Fails };

struct AffineCheck {
  Positivity status = Positivity::Fails;
  bool holds = false;
  Real min_value;
  Real argmin;
};

/**
 * Minimum of a_0 + sum a_k tau_k(u) over u in [-2 sqrt(q), 2 sqrt(q)].
 *
 * coeffs = {a_0, a_1, ..., a_n} with n <= 8. holds is true only when the
 * minimum exceeds the 1e-30 margin; a minimum within the margin of zero is
 * reported as Boundary.
 */
inline AffineCheck check_affine_ineq(std::int64_t q, std::span<const Integer> coeffs) {
  if (coeffs.size() > 9) throw DegreeTooHigh("affine inequalities are certified up to order 8");
  const Poly p = affine_poly(q, coeffs);
  const Real edge = 2 * boost::multiprecision::sqrt(Real(q));

  AffineCheck best;
  best.min_value = p.eval(-edge);
  best.argmin = -edge;
  if (const Real v = p.eval(edge); v < best.min_value) {
    best.min_value = v;
    best.argmin = edge;
  }

  const Poly dp = p.derivative();
  if (dp.degree() >= 1) {
    // Integer bracket strictly containing [-2 sqrt q, 2 sqrt q] with dp nonzero at both ends.
    Integer b = isqrt(Integer(4 * q)) + 1;
    while (dp(Rational(b)) == 0 || dp(Rational(-b)) == 0) ++b;
    const Quad two_sqrt_q = Quad::make(0, 2, Rational(q));
    const Rational coarse = Rational(1, Integer(1) << 80);

    const Poly sf = Poly::divmod(dp, Poly::gcd(dp, dp.derivative())).first;
    for (RootInterval r : isolate_roots(dp, Rational(-b), Rational(b))) {
      r = refine_root(sf, r, coarse);
      // Decide on which side of the domain edges the root lies.
      bool inside = true;
      for (int guard = 0;; ++guard) {
        const bool left_in = (Quad(r.lo) + two_sqrt_q).sign() >= 0;
        const bool right_in = (two_sqrt_q - Quad(r.hi)).sign() >= 0;
        const bool left_out = (Quad(r.hi) + two_sqrt_q).sign() <= 0;
        const bool right_out = (two_sqrt_q - Quad(r.lo)).sign() <= 0;
        if (left_out || right_out) {
          inside = false;
          break;
        }
        if ((left_in && right_in) || guard > 200 || r.lo == r.hi) break;
        r = refine_root(sf, r, (r.hi - r.lo) / 4);
      }
      if (!inside) continue;
      // Newton polish in Real, kept inside the bracket.
      Real u = to_real(Rational((r.lo + r.hi) / 2));
      if (r.lo != r.hi) {
        const Real lo = to_real(r.lo);
        const Real hi = to_real(r.hi);
        const Poly d2 = sf.derivative();
        for (int it = 0; it < 8; ++it) {
          const Real den = d2.eval(u);
          if (den == 0) break;
          const Real next = u - sf.eval(u) / den;
          if (next < lo || next > hi) break;
          u = next;
        }
      }
      u = std::clamp(u, Real(-edge), edge);
      if (const Real v = p.eval(u); v < best.min_value) {
        best.min_value = v;
        best.argmin = u;
      }
    }
  }

  if (best.min_value > margin()) {
    best.status = Positivity::Holds;
  } else if (boost::multiprecision::abs(best.min_value) <= margin()) {
    best.status = Positivity::Boundary;
  } else {
    best.status = Positivity::Fails;
  }
  best.holds = best.status == Positivity::Holds;
  return best;
}

}  // namespace wob::verify
