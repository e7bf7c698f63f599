#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "spherebound/exact_moments.hpp"
#include "spherebound/montecarlo.hpp"
#include "spherebound/sampler.hpp"

namespace spherebound {

/// How the fixed direction s is chosen at each grid dimension.
struct DirectionSpec {
  enum class Kind { first_basis, random_unit, explicit_list };

  Kind kind = Kind::first_basis;
  std::vector<double> values;  // explicit_list only

  /// "first_basis", "random_unit", or a comma-separated list of reals.
  static DirectionSpec parse(const std::string& text);
  std::string to_string() const;

  /// Direction in R^n. random_unit draws from a reserved substream of `seed`
  /// keyed by n; explicit_list must have exactly n entries.
  DirectionVector resolve(std::size_t n, std::uint64_t seed) const;
};

struct ExperimentConfig {
  std::vector<std::size_t> n_grid = default_n_grid();
  QExponent q = QExponent::infinity();
  DirectionSpec s;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::uint32_t streams = 1;
  unsigned workers = 0;
  std::string output_path;  // empty: standard output

  /// `points` log-spaced integers over [lo, hi], rounded, duplicates dropped.
  static std::vector<std::size_t> log_grid(double lo, double hi, std::size_t points);
  /// 20 log-spaced dimensions in [10, 1e5].
  static std::vector<std::size_t> default_n_grid() { return log_grid(10.0, 1e5, 20); }

  /// Throws std::invalid_argument describing the first problem found.
  void validate() const;
  EstimatorConfig estimator() const { return {samples, seed, streams, workers}; }
};

/// Overlays the keys present in a JSON config object onto `base`. Keys:
/// n_grid (array of integers), q (number or "inf"), s ("first_basis",
/// "random_unit" or array of numbers), samples, seed, streams, workers, out.
ExperimentConfig apply_config_json(ExperimentConfig base, const nlohmann::json& doc);

/// Reads and applies a JSON config file.
ExperimentConfig load_config_file(ExperimentConfig base, const std::string& path);

struct ExperimentRecord {
  std::size_t n = 0;
  QExponent q = QExponent::infinity();
  double c_p = 0.0;   // empirical constant
  double c_t = 0.0;   // theoretical constant
  double ratio = 0.0; // c_p / c_t
  double std_error = 0.0;
  bool valid = true;
};

/// Theoretical constant of the moment bound, i.e. the bound with its power of
/// n removed: min{q - 1, 16 ln n - 8} for figure1 and
/// sqrt(3) min{2q - 1, 32 ln n - 8} for figure2 (unit direction).
double theoretical_constant(Figure figure, std::size_t n, QExponent q);

/// E||e||_q^2 sweep: one record per grid dimension, ascending in n.
std::vector<ExperimentRecord> run_figure1(const ExperimentConfig& config);

/// E[<s,e>^2 ||e||_q^2] sweep.
std::vector<ExperimentRecord> run_figure2(const ExperimentConfig& config);

inline constexpr const char* kCsvHeader = "n,q,C_p,C_t,ratio,std_error,valid";

/// Shortest round-trip decimal form, independent of the global locale.
std::string format_real(double value);

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);

/// Writes the CSV to config.output_path, or to `fallback` when the path is
/// empty. Throws std::runtime_error naming the path on I/O failure.
void write_records(const ExperimentConfig& config, const std::vector<ExperimentRecord>& records,
                   std::ostream& fallback);

nlohmann::json summary_json(Figure figure, const ExperimentConfig& config,
                            const std::vector<ExperimentRecord>& records);

}  // namespace spherebound
