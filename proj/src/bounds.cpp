#include "spherebound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "spherebound/errors.hpp"

namespace spherebound {

namespace {

constexpr std::size_t kTheoremMinDimension = 8;
constexpr std::size_t kFourthMomentMinDimension = 3;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dimension(std::size_t n, std::size_t minimum) {
  if (n < minimum) {
    throw DimensionError("dimension must be >= " + std::to_string(minimum) + ", got " +
                         std::to_string(n));
  }
}

void require_q_at_least_two(QExponent q) {
  if (q.value() < 2.0) {
    throw std::domain_error("moment bounds need q >= 2, got " + q.to_string());
  }
}

void require_finite_q_at_least_two(double q) {
  if (!std::isfinite(q) || q < 2.0) {
    throw std::domain_error("need finite q >= 2, got " + std::to_string(q));
  }
}

// Ties go to the polynomial branch.
BoundEvaluation min_branch(double polynomial, double logarithmic, double factor,
                           double n_power) {
  BoundEvaluation result;
  if (polynomial <= logarithmic) {
    result.branch = Branch::polynomial;
    result.constant = factor * polynomial;
  } else {
    result.branch = Branch::logarithmic;
    result.constant = factor * logarithmic;
  }
  result.value = result.constant * n_power;
  return result;
}

void flag_theorem_domain(BoundEvaluation& eval, std::size_t n) {
  if (n < kTheoremMinDimension) {
    eval.valid = false;
    eval.validity_note = "n = " + std::to_string(n) + " < 8: outside the proved range";
  } else {
    eval.valid = true;
    eval.validity_note = "n >= 8";
  }
}

double log_n(std::size_t n) { return std::log(static_cast<double>(n)); }

}  // namespace

std::string_view to_string(Branch branch) {
  return branch == Branch::polynomial ? "polynomial" : "logarithmic";
}

std::string_view to_string(TailKind kind) {
  switch (kind) {
    case TailKind::cap: return "cap";
    case TailKind::infinity_norm: return "infinity_norm";
    case TailKind::median: return "median";
  }
  return "unknown";
}

BoundEvaluation bound_q_norm_sq(std::size_t n, QExponent q) {
  require_dimension(n, 2);
  require_q_at_least_two(q);
  const double polynomial = q.is_infinite() ? kInf : q.value() - 1.0;
  const double logarithmic = 16.0 * log_n(n) - 8.0;
  const double n_power = std::exp((q.two_over() - 1.0) * log_n(n));
  BoundEvaluation eval = min_branch(polynomial, logarithmic, 1.0, n_power);
  flag_theorem_domain(eval, n);
  return eval;
}

BoundEvaluation bound_inner_product_weighted(std::size_t n, QExponent q, const DirectionVector& s) {
  require_dimension(n, 2);
  require_q_at_least_two(q);
  if (s.dimension() != n) {
    throw DimensionError("direction has dimension " + std::to_string(s.dimension()) +
                         ", expected " + std::to_string(n));
  }
  const double polynomial = q.is_infinite() ? kInf : 2.0 * q.value() - 1.0;
  const double logarithmic = 32.0 * log_n(n) - 8.0;
  const double n_power = std::exp((q.two_over() - 2.0) * log_n(n));
  BoundEvaluation eval =
      min_branch(polynomial, logarithmic, std::sqrt(3.0) * s.squared_norm(), n_power);
  flag_theorem_domain(eval, n);
  return eval;
}

BoundEvaluation bound_q_norm_fourth_root(std::size_t n, QExponent q) {
  require_dimension(n, kFourthMomentMinDimension);
  require_q_at_least_two(q);
  const double polynomial = q.is_infinite() ? kInf : 2.0 * q.value() - 1.0;
  const double logarithmic = 32.0 * log_n(n) - 8.0;
  const double n_power = std::exp((q.two_over() - 1.0) * log_n(n));
  BoundEvaluation eval = min_branch(polynomial, logarithmic, 1.0, n_power);
  eval.valid = true;
  eval.validity_note = "n >= 3";
  return eval;
}

double component_moment_bound(std::size_t n, double q) {
  require_dimension(n, 2);
  require_finite_q_at_least_two(q);
  return std::exp(0.5 * q * (std::log(q - 1.0) - log_n(n)));
}

double polynomial_q_norm_sq_bound(std::size_t n, double q) {
  require_dimension(n, 2);
  require_finite_q_at_least_two(q);
  return (q - 1.0) * std::exp((2.0 / q - 1.0) * log_n(n));
}

double polynomial_q_norm_fourth_root_bound(std::size_t n, double q) {
  require_dimension(n, 2);
  require_finite_q_at_least_two(q);
  return (2.0 * q - 1.0) * std::exp((2.0 / q - 1.0) * log_n(n));
}

double optimal_q_expectation(std::size_t n) {
  require_dimension(n, kTheoremMinDimension);
  const double L = log_n(n);
  return L * (1.0 + std::sqrt(1.0 - 2.0 / L));
}

double optimal_q_fourth(std::size_t n) {
  require_dimension(n, kFourthMomentMinDimension);
  const double L = log_n(n);
  return std::max(2.0, L * (1.0 + std::sqrt(1.0 - 1.0 / L)));
}

TailBound cap_tail_bound(std::size_t n, double c) {
  require_dimension(n, 2);
  if (!std::isfinite(c) || !(c > 0.0)) {
    throw std::domain_error("cap width c must be finite and > 0, got " + std::to_string(c));
  }
  TailBound tb;
  tb.kind = TailKind::cap;
  tb.threshold = c / std::sqrt(static_cast<double>(n - 1));
  tb.probability_bound = std::clamp(2.0 / c * std::exp(-0.5 * c * c), 0.0, 1.0);
  return tb;
}

TailBound infinity_norm_tail(std::size_t n) {
  require_dimension(n, 2);
  TailBound tb;
  tb.kind = TailKind::infinity_norm;
  tb.threshold = 2.0 * std::sqrt(log_n(n)) / std::sqrt(static_cast<double>(n - 1));
  tb.probability_bound = std::clamp(std::exp(-1.5 * log_n(n)), 0.0, 1.0);
  return tb;
}

double median_concentration_bound(double t) {
  if (!std::isfinite(t) || !(t > 0.0)) {
    throw std::domain_error("deviation t must be finite and > 0, got " + std::to_string(t));
  }
  return std::clamp(4.0 * std::exp(-0.25 * t * t), 0.0, 1.0);
}

}  // namespace spherebound
