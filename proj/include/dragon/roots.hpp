#pragma once

// The critical constants: the root x0 of x^6 - 3x^4 + 2x^2 - 1 on
// (sqrt 2, golden ratio), the fold angle xi0 = arccos(x0/2) and theta0.

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dragon {

struct CriticalConstants {
  double x0 = 0.0;
  double xi0 = 0.0;
  double theta0_rad = 0.0;
  double theta0_deg = 0.0;
  double residual = 0.0;
};

inline double poly_P(double x) {
  const double s = x * x;
  return ((s - 3.0) * s + 2.0) * s - 1.0;
}

inline double poly_P_derivative(double x) {
  const double s = x * x;
  return x * ((6.0 * s - 12.0) * s + 4.0);
}

/// Bisection on the bracket down to width tol, then two Newton steps kept
/// inside the bracket.
inline CriticalConstants solve_constants(double tol = 1e-14) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  double lo = std::numbers::sqrt2;
  double hi = std::numbers::phi;
  if (!(poly_P(lo) < 0.0 && poly_P(hi) > 0.0))
    throw std::runtime_error("root bracket lost its sign change");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (poly_P(mid) < 0.0 ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 2; ++i) {
    const double step = poly_P(x) / poly_P_derivative(x);
    const double next = x - step;
    if (next > std::numbers::sqrt2 && next < std::numbers::phi) x = next;
  }
  CriticalConstants c;
  c.x0 = x;
  c.xi0 = std::acos(x / 2.0);
  c.theta0_rad = std::numbers::pi - 2.0 * c.xi0;
  c.theta0_deg = c.theta0_rad * 180.0 / std::numbers::pi;
  c.residual = std::abs(poly_P(x));
  return c;
}

}  // namespace dragon
