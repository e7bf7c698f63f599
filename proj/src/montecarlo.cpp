#include "spherebound/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include <boost/math/special_functions/beta.hpp>

#include "spherebound/errors.hpp"

namespace spherebound {

namespace {

constexpr std::uint64_t kMinMedianSamples = 100;

void validate_config(const EstimatorConfig& config) {
  if (config.samples < 2) {
    throw std::invalid_argument("need at least 2 samples, got " + std::to_string(config.samples));
  }
  if (config.streams == 0) {
    throw std::invalid_argument("need at least one stream");
  }
}

void validate_estimand(std::size_t n, const Estimand& est) {
  if (const auto& s = est.s(); s && s->dimension() != n) {
    throw DimensionError("direction has dimension " + std::to_string(s->dimension()) +
                         " but the sphere has dimension " + std::to_string(n));
  }
}

// Runs fn(stream_id) for every stream, spreading streams over worker threads.
// Each stream writes only its own slot, so the result does not depend on the
// worker count or scheduling.
template <class Fn>
void for_each_stream(std::uint32_t streams, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = default_worker_count();
  workers = std::max(1U, std::min<unsigned>(workers, streams));
  if (workers == 1) {
    for (std::uint32_t k = 0; k < streams; ++k) fn(k);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::uint32_t k = w; k < streams; k += workers) fn(k);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

double dot(std::span<const double> e, const DirectionVector& s) {
  if (s.is_basis_vector()) return e[static_cast<std::size_t>(s.basis_index())];
  const auto c = s.components();
  double acc = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) acc += c[i] * e[i];
  return acc;
}

// Per-draw evaluation of a list of estimands, sharing q-norms between
// estimands that use the same exponent.
class StatisticEvaluator {
public:
  explicit StatisticEvaluator(std::span<const Estimand> estimands) : estimands_(estimands) {
    q_slot_.assign(estimands.size(), -1);
    for (std::size_t i = 0; i < estimands.size(); ++i) {
      const auto& q = estimands[i].q();
      if (!q) continue;
      auto it = std::find(qs_.begin(), qs_.end(), *q);
      if (it == qs_.end()) {
        qs_.push_back(*q);
        it = qs_.end() - 1;
      }
      q_slot_[i] = static_cast<int>(it - qs_.begin());
    }
    norms_.resize(qs_.size());
  }

  void evaluate(std::span<const double> e, std::span<double> out) {
    // Draws are unit vectors by construction; recomputing the 2-norm would
    // only add rounding noise to a statistic that is identically 1.
    for (std::size_t j = 0; j < qs_.size(); ++j) {
      norms_[j] = qs_[j].value() == 2.0 ? 1.0 : q_norm(e, qs_[j]);
    }
    for (std::size_t i = 0; i < estimands_.size(); ++i) out[i] = statistic(i, e);
  }

private:
  double statistic(std::size_t i, std::span<const double> e) const {
    const Estimand& est = estimands_[i];
    const double norm = q_slot_[i] >= 0 ? norms_[static_cast<std::size_t>(q_slot_[i])] : 0.0;
    switch (est.kind()) {
      case EstimandKind::q_norm_sq: return norm * norm;
      case EstimandKind::q_norm_4th: {
        const double sq = norm * norm;
        return sq * sq;
      }
      case EstimandKind::ip_sq: {
        const double d = dot(e, *est.s());
        return d * d;
      }
      case EstimandKind::ip_4th: {
        const double d = dot(e, *est.s());
        return d * d * d * d;
      }
      case EstimandKind::ip_sq_times_qnorm_sq: {
        const double d = dot(e, *est.s());
        return d * d * norm * norm;
      }
      case EstimandKind::tail_indicator: {
        double value = norm;
        if (*est.tail_statistic() == TailStatistic::inner_product_sq) {
          const double d = dot(e, *est.s());
          value = d * d;
        }
        return value > *est.threshold() ? 1.0 : 0.0;
      }
    }
    return 0.0;
  }

  std::span<const Estimand> estimands_;
  std::vector<QExponent> qs_;
  std::vector<int> q_slot_;
  std::vector<double> norms_;
};

}  // namespace

std::string_view to_string(EstimandKind kind) {
  switch (kind) {
    case EstimandKind::q_norm_sq: return "q_norm_sq";
    case EstimandKind::q_norm_4th: return "q_norm_4th";
    case EstimandKind::ip_sq: return "ip_sq";
    case EstimandKind::ip_4th: return "ip_4th";
    case EstimandKind::ip_sq_times_qnorm_sq: return "ip_sq_times_qnorm_sq";
    case EstimandKind::tail_indicator: return "tail_indicator";
  }
  return "unknown";
}

EstimandKind parse_estimand_kind(std::string_view text) {
  for (auto kind : {EstimandKind::q_norm_sq, EstimandKind::q_norm_4th, EstimandKind::ip_sq,
                    EstimandKind::ip_4th, EstimandKind::ip_sq_times_qnorm_sq,
                    EstimandKind::tail_indicator}) {
    if (to_string(kind) == text) return kind;
  }
  throw std::invalid_argument("unknown estimand kind '" + std::string(text) + "'");
}

Estimand Estimand::q_norm_sq(QExponent q) {
  Estimand e(EstimandKind::q_norm_sq);
  e.q_ = q;
  return e;
}

Estimand Estimand::q_norm_4th(QExponent q) {
  Estimand e(EstimandKind::q_norm_4th);
  e.q_ = q;
  return e;
}

Estimand Estimand::ip_sq(DirectionVector s) {
  Estimand e(EstimandKind::ip_sq);
  e.s_ = std::move(s);
  return e;
}

Estimand Estimand::ip_4th(DirectionVector s) {
  Estimand e(EstimandKind::ip_4th);
  e.s_ = std::move(s);
  return e;
}

Estimand Estimand::ip_sq_times_qnorm_sq(QExponent q, DirectionVector s) {
  Estimand e(EstimandKind::ip_sq_times_qnorm_sq);
  e.q_ = q;
  e.s_ = std::move(s);
  return e;
}

namespace {
double checked_threshold(double threshold) {
  if (!std::isfinite(threshold) || threshold < 0.0) {
    throw std::domain_error("tail threshold must be finite and >= 0, got " +
                            std::to_string(threshold));
  }
  return threshold;
}
}  // namespace

Estimand Estimand::tail_ip_sq(DirectionVector s, double threshold) {
  Estimand e(EstimandKind::tail_indicator);
  e.s_ = std::move(s);
  e.threshold_ = checked_threshold(threshold);
  e.tail_stat_ = TailStatistic::inner_product_sq;
  return e;
}

Estimand Estimand::tail_q_norm(QExponent q, double threshold) {
  Estimand e(EstimandKind::tail_indicator);
  e.q_ = q;
  e.threshold_ = checked_threshold(threshold);
  e.tail_stat_ = TailStatistic::q_norm;
  return e;
}

void RunningStats::merge(const RunningStats& other) noexcept {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double total = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * (nb / total);
  m2_ += other.m2_ + delta * delta * (na * nb / total);
  count_ += other.count_;
}

double RunningStats::variance() const noexcept {
  return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

unsigned default_worker_count() {
  if (const char* env = std::getenv("SPHEREBOUND_WORKERS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::uint64_t stream_sample_count(std::uint64_t samples, std::uint32_t streams,
                                  std::uint32_t stream) {
  const std::uint64_t base = samples / streams;
  const std::uint64_t extra = samples % streams;
  return base + (stream < extra ? 1 : 0);
}

std::vector<MomentEstimate> estimate(std::size_t n, std::span<const Estimand> estimands,
                                     const EstimatorConfig& config) {
  validate_config(config);
  if (n < 2) {
    throw DimensionError("sphere dimension must be >= 2, got " + std::to_string(n));
  }
  for (const auto& est : estimands) validate_estimand(n, est);

  const std::size_t m = estimands.size();
  // stats[stream * m + estimand]
  std::vector<RunningStats> stats(static_cast<std::size_t>(config.streams) * m);

  for_each_stream(config.streams, config.workers, [&](std::uint32_t stream) {
    SamplerState state(config.seed, stream);
    StatisticEvaluator evaluator(estimands);
    std::vector<double> e(n);
    std::vector<double> values(m);
    RunningStats* slot = stats.data() + static_cast<std::size_t>(stream) * m;
    const std::uint64_t count = stream_sample_count(config.samples, config.streams, stream);
    for (std::uint64_t i = 0; i < count; ++i) {
      sample_sphere_into(e, state);
      evaluator.evaluate(e, values);
      for (std::size_t j = 0; j < m; ++j) slot[j].add(values[j]);
    }
  });

  std::vector<MomentEstimate> results(m);
  for (std::size_t j = 0; j < m; ++j) {
    RunningStats pooled;
    for (std::uint32_t k = 0; k < config.streams; ++k) {
      pooled.merge(stats[static_cast<std::size_t>(k) * m + j]);
    }
    MomentEstimate& r = results[j];
    r.mean = pooled.mean();
    r.std_error = std::sqrt(pooled.variance() / static_cast<double>(pooled.count()));
    r.samples = pooled.count();
    r.seed = config.seed;
    r.streams = config.streams;
    if (estimands[j].kind() == EstimandKind::tail_indicator) {
      const auto hits = static_cast<std::uint64_t>(std::llround(r.mean * static_cast<double>(r.samples)));
      r.upper_limit_99 = binomial_upper_limit(hits, r.samples, 0.99);
    }
  }
  return results;
}

MomentEstimate estimate(std::size_t n, const Estimand& est, const EstimatorConfig& config) {
  return estimate(n, std::span<const Estimand>(&est, 1), config).front();
}

ConstantEstimate empirical_constant(std::size_t n, QExponent q, Figure figure,
                                    const DirectionVector& s, const EstimatorConfig& config) {
  const double log_n = std::log(static_cast<double>(n));
  ConstantEstimate result;
  double factor = 1.0;
  if (figure == Figure::figure1) {
    result.moment = estimate(n, Estimand::q_norm_sq(q), config);
    factor = std::exp((1.0 - q.two_over()) * log_n);
  } else {
    if (!(s.squared_norm() > 0.0)) {
      throw std::domain_error("figure-2 constant needs a nonzero direction");
    }
    result.moment = estimate(n, Estimand::ip_sq_times_qnorm_sq(q, s), config);
    factor = std::exp((2.0 - q.two_over()) * log_n) / s.squared_norm();
  }
  result.value = factor * result.moment.mean;
  result.std_error = factor * result.moment.std_error;
  return result;
}

MomentEstimate empirical_tail(std::size_t n, const Estimand& tail, const EstimatorConfig& config) {
  if (tail.kind() != EstimandKind::tail_indicator) {
    throw std::invalid_argument("empirical_tail needs a tail_indicator estimand");
  }
  return estimate(n, tail, config);
}

double binomial_upper_limit(std::uint64_t successes, std::uint64_t trials, double confidence) {
  if (trials == 0 || successes > trials) {
    throw std::invalid_argument("binomial_upper_limit: need 0 <= successes <= trials, trials > 0");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::domain_error("confidence must lie in (0, 1)");
  }
  if (successes == trials) return 1.0;
  if (successes == 0) {
    // 1 - (1 - confidence)^(1/trials), written to survive tiny results
    return -std::expm1(std::log1p(-confidence) / static_cast<double>(trials));
  }
  return boost::math::ibeta_inv(static_cast<double>(successes + 1),
                                static_cast<double>(trials - successes), confidence);
}

MedianDeviationCurve empirical_median_deviation(std::size_t n, QExponent q,
                                                std::span<const double> t_grid,
                                                const EstimatorConfig& config) {
  validate_config(config);
  if (config.samples < kMinMedianSamples) {
    throw std::invalid_argument("median deviation needs at least 100 samples");
  }
  if (n < 2) {
    throw DimensionError("sphere dimension must be >= 2, got " + std::to_string(n));
  }
  for (double t : t_grid) {
    if (!std::isfinite(t) || t < 0.0) {
      throw std::domain_error("deviation grid values must be finite and >= 0");
    }
  }

  // Draws are stored at the stream's offset so the array layout is
  // independent of scheduling.
  std::vector<double> norms(config.samples);
  std::vector<std::uint64_t> offsets(config.streams + 1, 0);
  for (std::uint32_t k = 0; k < config.streams; ++k) {
    offsets[k + 1] = offsets[k] + stream_sample_count(config.samples, config.streams, k);
  }
  for_each_stream(config.streams, config.workers, [&](std::uint32_t stream) {
    SamplerState state(config.seed, stream);
    std::vector<double> e(n);
    for (std::uint64_t i = offsets[stream]; i < offsets[stream + 1]; ++i) {
      sample_sphere_into(e, state);
      norms[i] = q_norm(e, q);
    }
  });

  std::vector<double> sorted = norms;
  const auto mid = sorted.begin() + static_cast<std::ptrdiff_t>((sorted.size() - 1) / 2);
  std::nth_element(sorted.begin(), mid, sorted.end());

  MedianDeviationCurve curve;
  curve.median = *mid;
  curve.points.reserve(t_grid.size());
  for (double t : t_grid) {
    RunningStats stats;
    for (double v : norms) stats.add(std::abs(v - curve.median) > t ? 1.0 : 0.0);
    DeviationPoint point;
    point.t = t;
    point.fraction.mean = stats.mean();
    point.fraction.std_error = std::sqrt(stats.variance() / static_cast<double>(stats.count()));
    point.fraction.samples = stats.count();
    point.fraction.seed = config.seed;
    point.fraction.streams = config.streams;
    const auto hits = static_cast<std::uint64_t>(
        std::llround(stats.mean() * static_cast<double>(stats.count())));
    point.fraction.upper_limit_99 = binomial_upper_limit(hits, stats.count(), 0.99);
    curve.points.push_back(point);
  }
  return curve;
}

}  // namespace spherebound
