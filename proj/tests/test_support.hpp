#pragma once

// Seeded generators shared by the property tests and the acceptance binary.

#include <cstdint>
#include <random>
#include <vector>

#include "wob/wob.hpp"

namespace wob::testkit {

inline Rational random_rational(std::mt19937_64& rng, std::int64_t num_bound = 1000, std::int64_t den_bound = 50) {
  std::uniform_int_distribution<std::int64_t> num(-num_bound, num_bound);
  std::uniform_int_distribution<std::int64_t> den(1, den_bound);
  return Rational(Integer(num(rng)), Integer(den(rng)));
}

/// Non-negative radicand; squares show up often enough to exercise folding.
inline Rational random_radicand(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_int_distribution<std::int64_t> small(0, 60);
  std::uniform_int_distribution<std::int64_t> den(1, 6);
  if (pick(rng) == 0) {
    const std::int64_t r = small(rng);
    return Rational(r * r);
  }
  return Rational(Integer(small(rng)), Integer(den(rng)));
}

inline Quad random_quad(std::mt19937_64& rng, const Rational& d) {
  return Quad::make(random_rational(rng), random_rational(rng), d);
}

/// Prime powers up to qmax, cached per call site by the caller.
inline std::vector<std::int64_t> prime_powers(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = lo; q <= hi; ++q)
    if (is_prime_power(q)) out.push_back(q);
  return out;
}

/// A random (q, g) with q <= qmax a prime power and g2 <= g <= g_hi(q).
template <class GenusHi>
CurveParams random_ihara_params(std::mt19937_64& rng, const std::vector<std::int64_t>& qs, GenusHi g_hi) {
  std::uniform_int_distribution<std::size_t> pick(0, qs.size() - 1);
  const std::int64_t q = qs[pick(rng)];
  const auto lo = static_cast<std::int64_t>(g2_threshold(q).rounded);
  const std::int64_t hi = std::max(lo, g_hi(q));
  std::uniform_int_distribution<std::int64_t> g(std::max<std::int64_t>(lo, 1), hi);
  return CurveParams::make(q, g(rng));
}

}  // namespace wob::testkit
