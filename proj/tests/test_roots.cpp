#include <gtest/gtest.h>

#include <cmath>

#include "dragon/roots.hpp"

using namespace dragon;

namespace {
// 30-digit reference values from an independent arbitrary-precision solve.
constexpr double kX0 = 1.52470257992985177015834395726;
constexpr double kXi0 = 0.703857721301476517491760825842;
constexpr double kTheta0Deg = 99.3438463834601117353725901854;
constexpr double kPhi = 1.6180339887498948482;
}  // namespace

TEST(PolyP, Values) {
  EXPECT_NEAR(poly_P(std::sqrt(2.0)), -1.0, 1e-14);
  EXPECT_NEAR(poly_P(kPhi), kPhi, 1e-14);
  EXPECT_EQ(poly_P(0.0), -1.0);
  EXPECT_NEAR(poly_P(2.0), 64 - 48 + 8 - 1, 1e-12);
}

TEST(PolyP, SingleSignChangeOnBracket) {
  const double lo = std::sqrt(2.0), hi = kPhi;
  int changes = 0;
  double prev = poly_P(lo);
  for (int i = 1; i <= 10000; ++i) {
    const double v = poly_P(lo + (hi - lo) * i / 10000.0);
    if ((prev < 0) != (v < 0)) ++changes;
    prev = v;
  }
  EXPECT_EQ(changes, 1);
}

TEST(Solve, MatchesReference) {
  const auto c = solve_constants();
  EXPECT_NEAR(c.x0, kX0, 1e-14);
  EXPECT_NEAR(c.xi0, kXi0, 1e-13);
  EXPECT_NEAR(c.theta0_deg, kTheta0Deg, 1e-11);
  EXPECT_LE(c.residual, 1e-12);
  EXPECT_NEAR(c.theta0_rad, 3.14159265358979323846 - 2 * c.xi0, 1e-15);
  EXPECT_GT(c.x0, std::sqrt(2.0));
  EXPECT_LT(c.x0, kPhi);
}

TEST(Solve, StatedRoundings) {
  const auto c = solve_constants();
  EXPECT_NEAR(c.x0, 1.5247, 5e-5);
  EXPECT_NEAR(c.xi0, 0.703858, 1e-6);
  EXPECT_NEAR(c.theta0_deg, 99.3438, 1e-3);
}

TEST(Solve, DeterministicAndLooseTolerance) {
  EXPECT_EQ(solve_constants().x0, solve_constants().x0);
  EXPECT_NEAR(solve_constants(1e-4).x0, kX0, 1e-12);
  EXPECT_THROW(solve_constants(0.0), std::invalid_argument);
}
