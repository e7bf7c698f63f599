#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "spherebound/exact_moments.hpp"
#include "spherebound/sampler.hpp"

namespace spherebound {

enum class EstimandKind { q_norm_sq, q_norm_4th, ip_sq, ip_4th, ip_sq_times_qnorm_sq, tail_indicator };

/// Statistic compared against the threshold of a tail_indicator estimand.
enum class TailStatistic { inner_product_sq, q_norm };

std::string_view to_string(EstimandKind kind);
EstimandKind parse_estimand_kind(std::string_view text);

/// What to average over uniform sphere draws e. Built through the named
/// factories, which guarantee that q, s and threshold are set exactly for the
/// kinds that use them.
class Estimand {
public:
  static Estimand q_norm_sq(QExponent q);
  static Estimand q_norm_4th(QExponent q);
  static Estimand ip_sq(DirectionVector s);
  static Estimand ip_4th(DirectionVector s);
  static Estimand ip_sq_times_qnorm_sq(QExponent q, DirectionVector s);
  /// 1{<s,e>^2 > threshold}
  static Estimand tail_ip_sq(DirectionVector s, double threshold);
  /// 1{||e||_q > threshold}
  static Estimand tail_q_norm(QExponent q, double threshold);

  EstimandKind kind() const noexcept { return kind_; }
  const std::optional<QExponent>& q() const noexcept { return q_; }
  const std::optional<DirectionVector>& s() const noexcept { return s_; }
  const std::optional<double>& threshold() const noexcept { return threshold_; }
  const std::optional<TailStatistic>& tail_statistic() const noexcept { return tail_stat_; }

private:
  explicit Estimand(EstimandKind kind) : kind_(kind) {}

  EstimandKind kind_;
  std::optional<QExponent> q_;
  std::optional<DirectionVector> s_;
  std::optional<double> threshold_;
  std::optional<TailStatistic> tail_stat_;
};

struct EstimatorConfig {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  /// Number of random substreams the samples are split across. Results depend
  /// on (seed, streams, samples) but not on the number of worker threads.
  std::uint32_t streams = 1;
  /// Worker threads; 0 means default_worker_count().
  unsigned workers = 0;
};

struct MomentEstimate {
  double mean = 0.0;
  /// Sample standard deviation / sqrt(samples).
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint32_t streams = 1;
  /// Tail estimands only: one-sided 99% Clopper-Pearson upper limit on the
  /// exceedance probability. A zero count is reported as mean 0 with this
  /// limit rather than refined by importance sampling.
  std::optional<double> upper_limit_99;
};

/// Running mean and variance (Welford), mergeable with Chan's pairwise
/// update.
class RunningStats {
public:
  void add(double x) noexcept {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }
  void merge(const RunningStats& other) noexcept;

  std::uint64_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance; 0 for fewer than two observations.
  double variance() const noexcept;

private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Worker count from the SPHEREBOUND_WORKERS environment variable, else the
/// hardware concurrency (at least 1).
unsigned default_worker_count();

/// Samples assigned to stream `stream` when `samples` are split over `streams`.
std::uint64_t stream_sample_count(std::uint64_t samples, std::uint32_t streams, std::uint32_t stream);

/// Mean and standard error of the estimand's per-draw statistic. Throws
/// std::invalid_argument for samples < 2 or streams == 0, DimensionError for
/// n < 2 or a direction of the wrong dimension.
MomentEstimate estimate(std::size_t n, const Estimand& est, const EstimatorConfig& config);

/// Several estimands over one shared set of draws. Each entry equals what the
/// single-estimand call would return for the same configuration.
std::vector<MomentEstimate> estimate(std::size_t n, std::span<const Estimand> estimands,
                                     const EstimatorConfig& config);

enum class Figure { figure1, figure2 };

struct ConstantEstimate {
  /// Empirical constant C_p.
  double value = 0.0;
  double std_error = 0.0;
  MomentEstimate moment;
};

/// figure1: C_p = n^(1 - 2/q) * mean ||e||_q^2.
/// figure2: C_p = n^(2 - 2/q) * mean <s,e>^2 ||e||_q^2 / ||s||^2 (s != 0).
ConstantEstimate empirical_constant(std::size_t n, QExponent q, Figure figure,
                                    const DirectionVector& s, const EstimatorConfig& config);

/// Fraction of draws whose statistic exceeds the threshold (threshold >= 0),
/// with binomial standard error and the 99% upper limit.
MomentEstimate empirical_tail(std::size_t n, const Estimand& tail, const EstimatorConfig& config);

/// One-sided upper confidence limit for a binomial proportion with
/// `successes` out of `trials` (Clopper-Pearson).
double binomial_upper_limit(std::uint64_t successes, std::uint64_t trials, double confidence);

struct DeviationPoint {
  double t = 0.0;
  MomentEstimate fraction;
};

struct MedianDeviationCurve {
  /// Middle order statistic of ||e||_q over all draws.
  double median = 0.0;
  std::vector<DeviationPoint> points;
};

/// For each t in `t_grid`, the fraction of draws with | ||e||_q - median | > t.
/// Requires samples >= 100 and t >= 0.
MedianDeviationCurve empirical_median_deviation(std::size_t n, QExponent q,
                                                std::span<const double> t_grid,
                                                const EstimatorConfig& config);

}  // namespace spherebound
