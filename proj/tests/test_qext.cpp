#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "wob/qext.hpp"
#include "wob/verify/real.hpp"

using namespace wob;
using verify::Real;
using verify::to_real;

namespace {

Real tolerance_for(const Real& v) { return Real("1e-80") * (1 + boost::multiprecision::abs(v)); }

}  // namespace

TEST(Quad, CanonicalizesSquareRadicands) {
  const Quad u = Quad::make(1, 3, 49);
  EXPECT_TRUE(u.is_rational());
  EXPECT_EQ(u.x(), Rational(22));
  const Quad v = Quad::make(Rational(1, 2), 1, Rational(9, 4));
  EXPECT_EQ(v, Quad(2));
  EXPECT_TRUE(Quad::make(5, 0, 7).is_rational());
}

TEST(Quad, RejectsNegativeRadicand) { EXPECT_THROW(Quad::make(0, 1, -3), DomainError); }

TEST(Quad, SignHandlesMixedSigns) {
  EXPECT_EQ(Quad::make(3, -1, 8).sign(), 1);    // 3 - 2.828
  EXPECT_EQ(Quad::make(3, -1, 10).sign(), -1);  // 3 - 3.162
  EXPECT_EQ(Quad::make(-3, 1, 8).sign(), -1);
  EXPECT_EQ(Quad::make(0, -2, 5).sign(), -1);
  EXPECT_EQ(Quad().sign(), 0);
}

TEST(Quad, FloorOfIrrationals) {
  EXPECT_EQ(Quad::sqrt(2).floor(), 1);
  EXPECT_EQ((-Quad::sqrt(2)).floor(), -2);
  EXPECT_EQ(Quad::make(Rational(1, 3), 66, 5).floor(), 147);  // 147.91...
  EXPECT_EQ(Quad::make(-70, 66, 5).floor(), 77);
  EXPECT_EQ(Quad(Rational(-7, 2)).floor(), -4);
  EXPECT_EQ(Quad(Rational(-7, 2)).ceil(), -3);
}

TEST(Quad, FloorNearIntegers) {
  // sqrt(1 +- 2^-200): a double estimate cannot separate these from 1
  const Rational d = Rational(Integer(1) << 200) + 1;
  const Quad v = Quad::make(0, Rational(1, Integer(1) << 100), d);  // just above 1
  EXPECT_EQ(v.floor(), 1);
  EXPECT_EQ((-v).floor(), -2);
  const Quad w = Quad::make(0, Rational(1, Integer(1) << 100), d - 2);  // just below 1
  EXPECT_EQ(w.floor(), 0);
}

TEST(Quad, SameFieldRadicandsAreRebased) {
  const Quad a = Quad::sqrt(45);  // 3 sqrt(5)
  const Quad b = Quad::sqrt(5);
  EXPECT_EQ(a - Quad(3) * b, Quad(0));
  EXPECT_EQ(a / b, Quad(3));
}

TEST(Quad, DifferentFieldsThrowOnArithmetic) {
  EXPECT_THROW(Quad::sqrt(2) + Quad::sqrt(3), RadicandMismatch);
  EXPECT_THROW((void)(Quad::sqrt(2) < Quad::sqrt(3)), RadicandMismatch);
  EXPECT_FALSE(Quad::sqrt(2) == Quad::sqrt(3));
}

TEST(Quad, DivisionByZeroThrows) { EXPECT_THROW(Quad::sqrt(2) / Quad(0), DivisionByZero); }

TEST(Quad, InverseAndNorm) {
  const Quad u = Quad::make(3, 2, 7);
  EXPECT_EQ(u.norm(), Rational(9 - 28));
  EXPECT_EQ(u * u.inverse(), Quad(1));
  EXPECT_EQ(u.conjugate(), Quad::make(3, -2, 7));
}

TEST(Quad, StringRoundTrip) {
  for (const Quad& u : {Quad::make(Rational(-1, 2), Rational(1, 2), 61), Quad::make(28, -7, 5),
                        Quad::make(0, Rational(-3, 4), 11), Quad(Rational(-1723, 36))}) {
    EXPECT_EQ(parse_quad(u.str()), u) << u.str();
  }
  EXPECT_EQ(Quad::make(28, -7, 5).str(), "28 - 7*sqrt(5)");
  EXPECT_EQ(Quad::make(0, 2, 3).str(), "2*sqrt(3)");
  EXPECT_THROW(parse_quad("1 + 2*sqrt(3"), ParseError);
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("x"), ParseError);
}

TEST(Quad, CompareFreeFunctions) {
  EXPECT_EQ(quad_cmp(Quad::sqrt(2), Quad(Rational(3, 2))), std::strong_ordering::less);
  EXPECT_EQ(quad_sign(quad_make(-2, 1, 4)), 0);
  EXPECT_EQ(quad_floor(quad_make(0, 1, 99)), 9);
}

// Randomized field axioms, sign and floor against the 100-digit oracle.
TEST(QuadProperty, AgreesWithHighPrecisionOracle) {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 2000; ++i) {
    const Rational d = testkit::random_radicand(rng);
    const Quad u = testkit::random_quad(rng, d);
    const Quad v = testkit::random_quad(rng, d);
    const Quad w = testkit::random_quad(rng, d);
    const Real ru = to_real(u), rv = to_real(v);

    EXPECT_EQ((u + v) * w, u * w + v * w);
    EXPECT_EQ(u + (v + w), (u + v) + w);
    EXPECT_EQ(u - u, Quad(0));
    EXPECT_LT(boost::multiprecision::abs(to_real(u * v) - ru * rv), tolerance_for(ru * rv));
    if (!v.is_zero()) {
      EXPECT_EQ(u / v * v, u);
      EXPECT_LT(boost::multiprecision::abs(to_real(u / v) - ru / rv), tolerance_for(ru / rv));
    }
    if (boost::multiprecision::abs(ru) > Real("1e-60")) {
      EXPECT_EQ(u.sign(), ru > 0 ? 1 : -1);
    }
    const Real fl = boost::multiprecision::floor(ru);
    if (ru - fl > Real("1e-60") && fl + 1 - ru > Real("1e-60")) {
      EXPECT_EQ(Real(u.floor()), fl) << u.str();
    }
    // canonical form: irrational part only for non-square radicands
    if (!u.is_rational()) {
      EXPECT_FALSE(exact_sqrt(u.radicand()).has_value());
    }
  }
}
