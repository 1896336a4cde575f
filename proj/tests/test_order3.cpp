#include <gtest/gtest.h>

#include "wob/order3.hpp"
#include "wob/verify/oracles.hpp"

using namespace wob;
using verify::Real;
using verify::to_real;

namespace {

struct Baseline {
  std::int64_t q, g;
  const char* t_w;  // smallest root of det M on the line, independent solve
  int n1_floor;
};

// Roots from an independent 50-digit polynomial solve.
constexpr Baseline kBaselines[] = {
    {5, 19, "-48.03857344788864", 54},
    {7, 21, "-69.03696349060256", 77},
    {8, 36, "-121.0873560321174", 130},
    {11, 35, "-152.0116017192761", 164},
};

}  // namespace

TEST(RefineMatrix3, Validation) {
  EXPECT_NO_THROW(RefineMatrix3::make(5, 1, 7, 28, -7));
  // 2a sqrt(q) + b irrational
  EXPECT_THROW(RefineMatrix3::make(5, 1, 7, 28, 0), IntegralityViolation);
  // d b - a^2 < 0: b_x one too small
  EXPECT_THROW(RefineMatrix3::make(5, 1, 7, 27, -7), NotPSD);
  EXPECT_THROW(RefineMatrix3::make(5, -1, 7, 28, -7), IntegralityViolation);
  EXPECT_THROW(RefineMatrix3::make(5, 0, 0, 0, 0), IntegralityViolation);
  EXPECT_EQ(RefineMatrix3::make(5, 1, 7, 28, -7).certificate(), 28);
}

TEST(Wo3, EnclosesIndependentRoot) {
  for (const auto& b : kBaselines) {
    const auto p = CurveParams::make(b.q, b.g);
    const auto enc = wo3_t(p);
    EXPECT_LE(enc.hi - enc.lo, precision_from_bits(60));
    const Real root(b.t_w);
    EXPECT_LT(boost::multiprecision::abs(to_real(enc.lo) - root), Real("1e-12")) << b.q;
    const auto r = wo3_report(p);
    EXPECT_EQ(r.n1_upper, b.n1_floor) << b.q;
    EXPECT_TRUE(r.notes.empty()) << r.notes;  // second block PSD at the root
    EXPECT_TRUE(second_block_psd(p, enc.lo));
  }
}

TEST(Wo3, DeterminantChangesSignAcrossEnclosure) {
  const auto p = CurveParams::make(5, 19);
  const auto enc = wo3_t(p, precision_from_bits(120));
  EXPECT_LT(detail::order3_det(p, Quad(enc.lo)).sign(), 0);
  EXPECT_GT(detail::order3_det(p, Quad(enc.hi)).sign(), 0);
}

TEST(Wo3, EnclosureIsFeasibleForTheOracle) {
  // Just above the root, both blocks are PSD per the 100-digit oracle.
  const auto p = CurveParams::make(7, 21);
  const auto enc = wo3_t(p);
  const Real t1 = to_real(enc.hi);
  const Real q(7);
  EXPECT_TRUE(verify::psd4_feasible_point(p, {t1, t1 + q * q - q, t1 + q * q * q - q}));
}

TEST(BoundA3, RecordMatrices) {
  const char* expected[] = {"-1723/36", "-12348/179", "-23352/193", "-33580/221"};
  const int n1[] = {53, 76, 129, 163};
  const auto rows = rec3_table();
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(std::get<Quad>(rows[i].t1_lower), parse_quad(expected[i]));
    EXPECT_EQ(rows[i].n1_upper, n1[i]);
    EXPECT_EQ(rows[i].n1_upper + 1, kBaselines[i].n1_floor);
  }
}

TEST(BoundA3, HandComputedRow) {
  // floor(2*5^{3/2} + 2(28 - 7 sqrt 5) sqrt 5) = floor(66 sqrt 5 - 70) = 77
  const auto p = CurveParams::make(5, 19);
  const auto A = RefineMatrix3::make(5, 1, 7, 28, -7);
  EXPECT_EQ((Quad(2) * Quad(5) * sqrt_q(5) + Quad(2) * A.b() * sqrt_q(5)).floor(), 77);
  EXPECT_EQ(bound_A3(p, A), Quad(Rational(-19 * 77 - 120 - 7 * 20, 1 + 7 + 28)));
  EXPECT_THROW(bound_A3(CurveParams::make(7, 19), A), IntegralityViolation);
}

TEST(MinimalBx, ReproducesRecordMatrices) {
  for (const auto& r : kRec3Matrices) EXPECT_EQ(minimal_b_x(r.q, r.d, r.two_a), r.b_x) << r.q;
}

TEST(SearchA3, FindsRecordMatrices) {
  for (const auto& r : kRec3Matrices) {
    const auto p = CurveParams::make(r.q, r.g);
    const auto s = search_A3(p);
    const auto target = bound_A3(p, RefineMatrix3::make(r.q, r.d, r.two_a, r.b_x, r.b_y));
    EXPECT_GE(s.t1_lower, target) << r.q;
    EXPECT_GT(s.candidates, 0u);
  }
}

TEST(SearchA3, BudgetValidation) {
  EXPECT_THROW(search_A3(CurveParams::make(5, 19), {0, 4, 2}), InvalidParams);
}

TEST(SearchA3, DeterministicTieBreak) {
  const auto p = CurveParams::make(5, 19);
  const auto a = search_A3(p);
  const auto b = search_A3(p);
  EXPECT_EQ(a.A.str(), b.A.str());
  EXPECT_EQ(a.A.d(), 1);
  EXPECT_EQ(a.A.two_a(), 7);
}

TEST(Wo3, SmallGenusDegenerateKernel) {
  // At (4, 1) the off-diagonal entry vanishes at the root.
  const auto p = CurveParams::make(4, 1);
  EXPECT_NO_THROW(wo3_t(p));
  EXPECT_NO_THROW(search_A3(p));
}
