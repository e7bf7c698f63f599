#include "spherebound/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spherebound {

namespace {

// Below this point the asymptotic series is not used directly; the argument is
// shifted upward with Gamma(x + 1) = x Gamma(x). At x = 12 the eighth Stirling
// term is ~2e-18.
constexpr double kAsymptoticFrom = 12.0;

// B_{2k} / (2k (2k - 1)), k = 1..8
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0,  1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
};

// B_{2k} / (2k), k = 1..7
constexpr std::array<double, 7> kDigammaSeries = {
    1.0 / 12.0,  -1.0 / 120.0, 1.0 / 252.0,       -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0,
};

const double kHalfLogTwoPi = 0.5 * std::log(2.0 * std::numbers::pi);

// Near the zeros of ln Gamma at 1 and 2 the shifted Stirling form loses all
// relative precision, so a Taylor series in z = x - 1 or z = x - 2 is used
// within this distance.
constexpr double kNearZeroRadius = 0.25;
constexpr int kZetaTerms = 30;

// zeta(k) - 1 for k = 2..kZetaTerms+1 (index k - 2): direct sum to N - 1 plus
// the Euler-Maclaurin tail from N.
std::array<double, kZetaTerms> zeta_minus_one_table() {
  constexpr int N = 16;
  // B_{2j} / (2j)!, j = 1..5
  constexpr double kB[] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0,
                           1.0 / 47900160.0};
  std::array<double, kZetaTerms> table{};
  for (int i = 0; i < kZetaTerms; ++i) {
    const double k = i + 2.0;
    double tail = std::pow(N, 1.0 - k) / (k - 1.0) + 0.5 * std::pow(N, -k);
    double rising = k;  // k (k + 1) ... (k + 2j - 2)
    for (int j = 1; j <= 5; ++j) {
      tail += kB[j - 1] * rising * std::pow(N, -k - 2.0 * j + 1.0);
      rising *= (k + 2.0 * j - 1.0) * (k + 2.0 * j);
    }
    double head = 0.0;
    for (int n = N - 1; n >= 2; --n) head += std::pow(n, -k);
    table[static_cast<std::size_t>(i)] = head + tail;
  }
  return table;
}

// ln Gamma(2 + z) = (1 - gamma) z + sum_{k>=2} (-1)^k (zeta(k) - 1) z^k / k
double log_gamma_two_plus(double z) {
  static const auto zeta1 = zeta_minus_one_table();
  constexpr double kEulerGamma = 0.57721566490153286061;
  double sum = 0.0;
  for (int i = kZetaTerms - 1; i >= 0; --i) {
    const double k = i + 2.0;
    sum = sum * z + ((i % 2 == 0) ? 1.0 : -1.0) * zeta1[static_cast<std::size_t>(i)] / k;
  }
  return z * ((1.0 - kEulerGamma) + z * sum);
}

// Correction term of ln Gamma beyond (x - 1/2) ln x - x + ln(2 pi)/2.
double stirling_correction(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double sum = 0.0;
  for (auto it = kStirling.rbegin(); it != kStirling.rend(); ++it) {
    sum = sum * inv2 + *it;
  }
  return sum * inv;
}

double log_gamma_asymptotic(double x) {
  return (x - 0.5) * std::log(x) - x + kHalfLogTwoPi + stirling_correction(x);
}

double digamma_asymptotic(double x) {
  const double inv2 = 1.0 / (x * x);
  double sum = 0.0;
  for (auto it = kDigammaSeries.rbegin(); it != kDigammaSeries.rend(); ++it) {
    sum = sum * inv2 + *it;
  }
  return std::log(x) - 0.5 / x - sum * inv2;
}

}  // namespace

PositiveReal::PositiveReal(double value) : value_(value) {
  if (!std::isfinite(value) || !(value > 0.0)) {
    throw std::domain_error("expected a finite positive argument, got " +
                            std::to_string(value));
  }
}

double log_gamma(PositiveReal arg) {
  double x = arg.value();
  if (x >= kAsymptoticFrom) {
    return log_gamma_asymptotic(x);
  }
  if (std::abs(x - 2.0) <= kNearZeroRadius) {
    return log_gamma_two_plus(x - 2.0);
  }
  if (std::abs(x - 1.0) <= kNearZeroRadius) {
    // ln Gamma(1 + z) = ln Gamma(2 + z) - ln(1 + z)
    return log_gamma_two_plus(x - 1.0) - std::log1p(x - 1.0);
  }
  // ln Gamma(x) = ln Gamma(x + k) - ln(x (x + 1) ... (x + k - 1))
  double product = 1.0;
  while (x < kAsymptoticFrom) {
    product *= x;
    x += 1.0;
  }
  return log_gamma_asymptotic(x) - std::log(product);
}

double digamma(PositiveReal arg) {
  double x = arg.value();
  double shift = 0.0;
  while (x < kAsymptoticFrom) {
    shift += 1.0 / x;
    x += 1.0;
  }
  return digamma_asymptotic(x) - shift;
}

double log_gamma_ratio(PositiveReal arg, double delta) {
  if (!std::isfinite(delta) || delta < 0.0) {
    throw std::domain_error("log_gamma_ratio: delta must be finite and >= 0, got " +
                            std::to_string(delta));
  }
  if (delta == 0.0) {
    return 0.0;
  }
  double x = arg.value();
  double shift = 0.0;
  while (x < kAsymptoticFrom) {
    // ln(x / (x + delta))
    shift -= std::log1p(delta / x);
    x += 1.0;
  }
  const double y = x + delta;
  return (x - 0.5) * std::log1p(delta / x) + delta * std::log(y) - delta +
         (stirling_correction(y) - stirling_correction(x)) + shift;
}

double log_beta(PositiveReal a, PositiveReal b) {
  // Put the larger argument in the ratio so the remaining log_gamma is the
  // smaller (better conditioned) one.
  const double big = std::max(a.value(), b.value());
  const double small = std::min(a.value(), b.value());
  return log_gamma(small) - log_gamma_ratio(big, small);
}

}  // namespace spherebound
