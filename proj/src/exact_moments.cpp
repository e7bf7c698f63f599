#include "spherebound/exact_moments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "spherebound/errors.hpp"
#include "spherebound/specfun.hpp"

namespace spherebound {

namespace {

void require_dimension(std::size_t n) {
  if (n < 2) {
    throw DimensionError("dimension must be >= 2, got " + std::to_string(n));
  }
}

void require_matching(std::size_t n, const DirectionVector& s) {
  require_dimension(n);
  if (s.dimension() != n) {
    throw DimensionError("direction has dimension " + std::to_string(s.dimension()) +
                         " but the sphere has dimension " + std::to_string(n));
  }
}

const double kHalfLogPi = 0.5 * std::log(std::numbers::pi);

}  // namespace

DirectionVector::DirectionVector(std::vector<double> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw DimensionError("direction vector must be nonempty");
  }
  std::size_t nonzero = 0;
  long last_one = -1;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const double c = components_[i];
    if (!std::isfinite(c)) {
      throw std::domain_error("direction vector has a non-finite component");
    }
    squared_norm_ += c * c;
    if (c != 0.0) {
      ++nonzero;
      if (c == 1.0) last_one = static_cast<long>(i);
    }
  }
  if (nonzero == 1 && last_one >= 0) basis_index_ = last_one;
}

DirectionVector DirectionVector::basis(std::size_t n, std::size_t k) {
  if (k >= n) {
    throw DimensionError("basis index " + std::to_string(k) + " out of range for dimension " +
                         std::to_string(n));
  }
  std::vector<double> c(n, 0.0);
  c[k] = 1.0;
  return DirectionVector(std::move(c));
}

DirectionVector DirectionVector::scaled(double factor) const {
  std::vector<double> c = components_;
  for (double& v : c) v *= factor;
  return DirectionVector(std::move(c));
}

double log_component_abs_moment(std::size_t n, double q) {
  require_dimension(n);
  if (!std::isfinite(q) || !(q > 0.0)) {
    throw std::domain_error("moment order q must be finite and > 0, got " + std::to_string(q));
  }
  const double half_n = 0.5 * static_cast<double>(n);
  // ln Gamma((q+1)/2) - [ln Gamma(n/2 + q/2) - ln Gamma(n/2)] - ln(pi)/2
  return log_gamma(0.5 * (q + 1.0)) - log_gamma_ratio(half_n, 0.5 * q) - kHalfLogPi;
}

double component_abs_moment(std::size_t n, double q) {
  return std::exp(log_component_abs_moment(n, q));
}

double jensen_q_norm_sq_bound(std::size_t n, double q) {
  if (!std::isfinite(q) || q < 2.0) {
    throw std::domain_error("Jensen bound needs 2 <= q < inf, got " + std::to_string(q));
  }
  const double log_value =
      (2.0 / q) * (std::log(static_cast<double>(n)) + log_component_abs_moment(n, q));
  return std::exp(log_value);
}

double inner_product_sq_moment(std::size_t n, const DirectionVector& s) {
  require_matching(n, s);
  return s.squared_norm() / static_cast<double>(n);
}

double inner_product_fourth_moment(std::size_t n, const DirectionVector& s) {
  require_matching(n, s);
  const double nn = static_cast<double>(n);
  const double s2 = s.squared_norm();
  return 3.0 * s2 * s2 / (nn * (nn + 2.0));
}

}  // namespace spherebound
