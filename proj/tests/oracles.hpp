#pragma once

// Reference computations used to freeze expected values. Nothing here calls
// into the library: quadrature comes from Boost.Math, special functions from
// the C library, and the searches are brute force.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

/// ln((k-1)!) = ln Gamma(k) by summing logs.
inline double log_factorial_gamma(unsigned k) {
  double acc = 0.0;
  for (unsigned i = 2; i < k; ++i) acc += std::log(static_cast<double>(i));
  return acc;
}

/// Smooth integrand on a finite interval.
inline double integrate(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

/// (1/2pi) integral over the circle of g(theta).
inline double circle_average(const std::function<double(double)>& g) {
  // Split at multiples of pi/4 so kinks of max(.,.) integrands sit on nodes.
  double total = 0.0;
  const double quarter = std::numbers::pi / 4.0;
  for (int k = 0; k < 8; ++k) total += integrate(g, k * quarter, (k + 1) * quarter);
  return total / (2.0 * std::numbers::pi);
}

/// P(|X| > z) for X ~ N(0, 1).
inline double normal_two_sided_tail(double z) { return std::erfc(z / std::sqrt(2.0)); }

/// Minimizer of f on [lo, hi] by exhaustive evaluation at the given step.
inline double grid_argmin(const std::function<double(double)>& f, double lo, double hi,
                          double step) {
  double best_x = lo;
  double best = f(lo);
  const auto steps = static_cast<std::int64_t>(std::floor((hi - lo) / step));
  for (std::int64_t i = 1; i <= steps; ++i) {
    const double x = lo + static_cast<double>(i) * step;
    const double v = f(x);
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  return best_x;
}

/// `points` log-spaced reals over [lo, hi].
inline std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> grid;
  for (int i = 0; i < points; ++i) {
    grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
  }
  return grid;
}

}  // namespace oracle
