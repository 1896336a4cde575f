#pragma once

// High-precision floating substrate for the independent oracles.
//
// Real carries 100 significant decimal digits. Oracles evaluate closed forms
// and trigonometric identities in Real; the exact modules never read it.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "wob/qext.hpp"

namespace wob::verify {

using Real = boost::multiprecision::cpp_bin_float_100;

/// Values within this distance of zero are treated as boundary cases.
inline const Real& margin() {
  static const Real m("1e-30");
  return m;
}

inline Real to_real(const Integer& v) { return Real(v); }

inline Real to_real(const Rational& v) { return Real(numerator(v)) / Real(denominator(v)); }

inline Real to_real(const Quad& v) {
  if (v.is_rational()) return to_real(v.x());
  return to_real(v.x()) + to_real(v.y()) * boost::multiprecision::sqrt(to_real(v.radicand()));
}

}  // namespace wob::verify
