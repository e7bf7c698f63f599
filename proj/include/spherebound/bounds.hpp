#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "spherebound/exact_moments.hpp"
#include "spherebound/sampler.hpp"

namespace spherebound {

/// Which argument of min{polynomial-in-q, logarithmic-in-n} was attained.
enum class Branch { polynomial, logarithmic };

std::string_view to_string(Branch branch);

struct BoundEvaluation {
  double value = 0.0;
  /// The bound with its power of n divided out (the min{...} factor, times
  /// sqrt(3) ||s||^2 for the weighted bound).
  double constant = 0.0;
  Branch branch = Branch::polynomial;
  /// False when the input lies outside the range the inequality is proved
  /// for. The value is still computed.
  bool valid = true;
  std::string validity_note;
};

enum class TailKind { cap, infinity_norm, median };

std::string_view to_string(TailKind kind);

struct TailBound {
  double threshold = 0.0;
  /// Upper bound on the probability of exceeding `threshold`, clamped to [0, 1].
  double probability_bound = 1.0;
  TailKind kind = TailKind::cap;
};

// Moment bounds. Every q argument must satisfy q >= 2 (q = inf allowed);
// smaller q throws std::domain_error.

/// E||e||_q^2 <= min{q - 1, 16 ln n - 8} n^(2/q - 1). Proved for n >= 8;
/// smaller n is evaluated with valid = false.
BoundEvaluation bound_q_norm_sq(std::size_t n, QExponent q);

/// E[<s,e>^2 ||e||_q^2] <= sqrt(3) ||s||^2 min{2q - 1, 32 ln n - 8} n^(2/q - 2).
/// Proved for n >= 8.
BoundEvaluation bound_inner_product_weighted(std::size_t n, QExponent q, const DirectionVector& s);

/// sqrt(E||e||_q^4) <= min{2q - 1, 32 ln n - 8} n^(2/q - 1), n >= 3.
BoundEvaluation bound_q_norm_fourth_root(std::size_t n, QExponent q);

/// ((q - 1)/n)^(q/2), the upper bound on E|e_k|^q for q >= 2 finite.
double component_moment_bound(std::size_t n, double q);

/// (q - 1) n^(2/q - 1): the polynomial branch of bound_q_norm_sq.
double polynomial_q_norm_sq_bound(std::size_t n, double q);

/// (2q - 1) n^(2/q - 1): the polynomial branch of bound_q_norm_fourth_root.
double polynomial_q_norm_fourth_root_bound(std::size_t n, double q);

/// Minimizer over [2, inf) of (q - 1) n^(2/q - 1): the larger root of
/// q^2 - 2q ln n + 2 ln n = 0. Requires n >= 8.
double optimal_q_expectation(std::size_t n);

/// Minimizer over [2, inf) of (2q - 1) n^(2/q - 1): the larger root of
/// q^2 - 2q ln n + ln n = 0, clamped to 2 where that root falls below 2
/// (n = 3). Requires n >= 3.
double optimal_q_fourth(std::size_t n);

/// P{|<s,e>| > c / sqrt(n - 1)} <= (2/c) exp(-c^2/2) for unit s.
TailBound cap_tail_bound(std::size_t n, double c);

/// P{||e||_inf >= 2 sqrt(ln n) / sqrt(n - 1)} <= n^(-3/2).
TailBound infinity_norm_tail(std::size_t n);

/// P{|f(e) - M_f| > t} <= 4 exp(-t^2/4) for 1-Lipschitz f with median M_f.
double median_concentration_bound(double t);

}  // namespace spherebound
