#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/random/normal_distribution.hpp>

namespace spherebound {

/// Hoelder exponent q in [1, inf]. Infinity is an ordinary value here
/// (spelled "inf" when parsed or printed).
class QExponent {
public:
  QExponent(double value);  // NOLINT(google-explicit-constructor)

  static QExponent infinity() { return QExponent(std::numeric_limits<double>::infinity()); }
  /// Accepts "inf" / "infinity" (any case) or a decimal number.
  static QExponent parse(std::string_view text);

  bool is_infinite() const noexcept { return value_ == std::numeric_limits<double>::infinity(); }
  double value() const noexcept { return value_; }
  /// 2/q with 2/inf = 0.
  double two_over() const noexcept { return is_infinite() ? 0.0 : 2.0 / value_; }
  std::string to_string() const;

  friend bool operator==(QExponent, QExponent) = default;

private:
  double value_;
};

/// xoshiro256++ (Blackman & Vigna). Small, fast, and good enough for
/// Monte-Carlo work; satisfies UniformRandomBitGenerator.
class Xoshiro256pp {
public:
  using result_type = std::uint64_t;

  explicit Xoshiro256pp(std::uint64_t seed, std::uint64_t stream_id = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  friend bool operator==(const Xoshiro256pp&, const Xoshiro256pp&) = default;

private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

/// Single-owner random stream. (seed, stream_id) fully determines the
/// sequence; distinct stream ids give independent substreams for parallel
/// workers.
class SamplerState {
public:
  explicit SamplerState(std::uint64_t seed, std::uint64_t stream_id = 0);

  SamplerState(const SamplerState&) = delete;
  SamplerState& operator=(const SamplerState&) = delete;
  SamplerState(SamplerState&&) noexcept = default;
  SamplerState& operator=(SamplerState&&) noexcept = default;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  double standard_normal() { return normal_(engine_); }
  void fill_standard_normal(std::span<double> out) {
    for (double& x : out) x = normal_(engine_);
  }
  Xoshiro256pp& engine() noexcept { return engine_; }

private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  Xoshiro256pp engine_;
  boost::random::normal_distribution<double> normal_;
};

/// Point on the unit Euclidean sphere in R^n, n >= 2. Immutable.
class UnitSphereVector {
public:
  /// Normalizes `components`. Throws DimensionError for n < 2 and
  /// std::domain_error for a zero or non-finite vector.
  static UnitSphereVector from_components(std::vector<double> components);

  std::size_t dimension() const noexcept { return components_.size(); }
  std::span<const double> components() const noexcept { return components_; }
  double operator[](std::size_t i) const { return components_[i]; }

private:
  explicit UnitSphereVector(std::vector<double> c) : components_(std::move(c)) {}
  friend UnitSphereVector sample_sphere(std::size_t, SamplerState&);

  std::vector<double> components_;
};

double standard_normal(SamplerState& state);

/// Uniform draw on the unit sphere: a standard Gaussian vector divided by its
/// Euclidean length. Throws DimensionError for n < 2.
UnitSphereVector sample_sphere(std::size_t n, SamplerState& state);

/// Same distribution as sample_sphere, written into caller storage
/// (out.size() is the dimension). Used by the estimators' inner loop.
void sample_sphere_into(std::span<double> out, SamplerState& state);

/// (sum |x_k|^q)^(1/q), or max |x_k| for q = inf. Evaluated on x / max|x_k|
/// so neither overflow nor underflow of |x_k|^q can occur.
double q_norm(std::span<const double> x, QExponent q);

}  // namespace spherebound
