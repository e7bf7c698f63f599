#include "spherebound/sampler.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "spherebound/errors.hpp"

namespace spherebound {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t splitmix_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  return mix64(state);
}

// Beyond this the direct power form is replaced by log-sum-exp.
constexpr double kLogSumExpFromQ = 700.0;
// Integer exponents up to this use repeated multiplication.
constexpr double kIntegerPowLimit = 64.0;

double int_pow(double base, unsigned exponent) {
  double result = 1.0;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    base *= base;
    exponent >>= 1U;
  }
  return result;
}

// Largest |x_k|, NaN if any component is NaN. The lane maxima drop NaN, so
// a parallel sum of x_k * 0 (NaN exactly for NaN or infinite x_k) flags it.
double max_abs(std::span<const double> x) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  double poison[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double a = std::abs(x[i + j]);
      lane[j] = std::max(lane[j], a);
      poison[j] += a * 0.0;
    }
  }
  for (; i < x.size(); ++i) {
    const double a = std::abs(x[i]);
    lane[0] = std::max(lane[0], a);
    poison[0] += a * 0.0;
  }
  const double m = std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
  if (std::isnan(poison[0] + poison[1] + poison[2] + poison[3])) {
    for (double v : x) {
      if (std::isnan(v)) return v;
    }
  }
  return m;
}

}  // namespace

QExponent::QExponent(double value) : value_(value) {
  if (std::isnan(value) || value < 1.0) {
    throw std::domain_error("q must lie in [1, inf], got " + std::to_string(value));
  }
}

QExponent QExponent::parse(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "inf" || lower == "infinity" || lower == "+inf") {
    return infinity();
  }
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw std::domain_error("cannot parse q exponent '" + std::string(text) + "'");
  }
  return QExponent(value);
}

std::string QExponent::to_string() const {
  if (is_infinite()) return "inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value_);
  return std::string(buf, ptr);
}

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed, std::uint64_t stream_id) {
  // mix64 is a bijection, so distinct (seed, stream_id) pairs with a shared
  // seed or a shared stream id never collide in the splitmix start state.
  std::uint64_t sm = seed ^ mix64(stream_id + 0x632BE59BD9B4E019ULL);
  for (auto& word : s_) word = splitmix_next(sm);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

SamplerState::SamplerState(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(seed, stream_id) {}

UnitSphereVector UnitSphereVector::from_components(std::vector<double> components) {
  if (components.size() < 2) {
    throw DimensionError("unit sphere vector needs dimension >= 2, got " +
                         std::to_string(components.size()));
  }
  double sumsq = 0.0;
  for (double c : components) sumsq += c * c;
  if (!std::isfinite(sumsq) || sumsq == 0.0) {
    throw std::domain_error("cannot normalize a zero or non-finite vector");
  }
  const double inv = 1.0 / std::sqrt(sumsq);
  for (double& c : components) c *= inv;
  return UnitSphereVector(std::move(components));
}

double standard_normal(SamplerState& state) { return state.standard_normal(); }

void sample_sphere_into(std::span<double> out, SamplerState& state) {
  if (out.size() < 2) {
    throw DimensionError("sphere dimension must be >= 2, got " + std::to_string(out.size()));
  }
  double sumsq = 0.0;
  do {
    // Four partial sums keep the accumulation off the generator's critical path.
    double partial[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= out.size(); i += 4) {
      for (std::size_t j = 0; j < 4; ++j) {
        const double x = state.standard_normal();
        out[i + j] = x;
        partial[j] += x * x;
      }
    }
    for (; i < out.size(); ++i) {
      const double x = state.standard_normal();
      out[i] = x;
      partial[0] += x * x;
    }
    sumsq = (partial[0] + partial[1]) + (partial[2] + partial[3]);
  } while (sumsq == 0.0);
  const double inv = 1.0 / std::sqrt(sumsq);
  for (double& x : out) x *= inv;
}

UnitSphereVector sample_sphere(std::size_t n, SamplerState& state) {
  if (n < 2) {
    throw DimensionError("sphere dimension must be >= 2, got " + std::to_string(n));
  }
  std::vector<double> components(n);
  sample_sphere_into(components, state);
  return UnitSphereVector(std::move(components));
}

double q_norm(std::span<const double> x, QExponent q) {
  if (x.empty()) {
    throw std::domain_error("q_norm of an empty vector");
  }
  const double m = max_abs(x);
  if (m == 0.0 || q.is_infinite() || !std::isfinite(m)) {
    return m;
  }
  const double p = q.value();
  const double inv_m = 1.0 / m;

  if (p > kLogSumExpFromQ) {
    // m * exp((1/q) ln sum exp(q ln(|x_k| / m))); the largest term is exactly 1.
    double sum = 0.0;
    for (double v : x) sum += std::exp(p * std::log(std::abs(v) * inv_m));
    return m * std::exp(std::log(sum) / p);
  }

  double sum = 0.0;
  if (p == 1.0) {
    for (double v : x) sum += std::abs(v);
    return sum;
  }
  if (p == 2.0) {
    for (double v : x) {
      const double r = v * inv_m;
      sum += r * r;
    }
    return m * std::sqrt(sum);
  }
  if (p == std::floor(p) && p <= kIntegerPowLimit) {
    const auto k = static_cast<unsigned>(p);
    for (double v : x) sum += int_pow(std::abs(v) * inv_m, k);
  } else {
    for (double v : x) sum += std::pow(std::abs(v) * inv_m, p);
  }
  return m * std::pow(sum, 1.0 / p);
}

}  // namespace spherebound
