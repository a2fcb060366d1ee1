#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "dragon/geometry.hpp"

namespace dragon::test {

inline constexpr double kPi = 3.14159265358979323846;

/// Fixed-seed generator so failures reproduce.
inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed'd2a9);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Point random_point(double r = 2.0) { return {uniform(-r, r), uniform(-r, r)}; }

inline double rel_err(Point a, Point b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace dragon::test
