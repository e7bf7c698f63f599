#include "spherebound/experiments.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "spherebound/bounds.hpp"
#include "spherebound/errors.hpp"

namespace spherebound {

namespace {

// Substreams at and above this id are reserved for drawing random directions,
// keyed by dimension; estimator streams count up from 0.
constexpr std::uint64_t kDirectionStreamBase = std::uint64_t{1} << 63;

double parse_real(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first != last && *first == ' ') ++first;
  while (last != first && *(last - 1) == ' ') --last;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw std::invalid_argument("cannot parse '" + text + "' as a real number");
  }
  return value;
}

std::vector<ExperimentRecord> run_sweep(Figure figure, const ExperimentConfig& config) {
  config.validate();
  std::vector<ExperimentRecord> records;
  records.reserve(config.n_grid.size());
  for (const std::size_t n : config.n_grid) {
    const DirectionVector s = config.s.resolve(n, config.seed);
    const ConstantEstimate cp = empirical_constant(n, config.q, figure, s, config.estimator());
    ExperimentRecord r;
    r.n = n;
    r.q = config.q;
    r.c_p = cp.value;
    r.c_t = theoretical_constant(figure, n, config.q);
    r.ratio = r.c_p / r.c_t;
    r.std_error = cp.std_error;
    r.valid = figure == Figure::figure1 ? bound_q_norm_sq(n, config.q).valid
                                        : bound_inner_product_weighted(n, config.q, s).valid;
    records.push_back(r);
  }
  return records;
}

}  // namespace

DirectionSpec DirectionSpec::parse(const std::string& text) {
  DirectionSpec spec;
  if (text == "first_basis") return spec;
  if (text == "random_unit") {
    spec.kind = Kind::random_unit;
    return spec;
  }
  spec.kind = Kind::explicit_list;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) spec.values.push_back(parse_real(item));
  if (spec.values.empty()) {
    throw std::invalid_argument("direction list is empty");
  }
  return spec;
}

std::string DirectionSpec::to_string() const {
  switch (kind) {
    case Kind::first_basis: return "first_basis";
    case Kind::random_unit: return "random_unit";
    case Kind::explicit_list: break;
  }
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_real(values[i]);
  }
  return out;
}

DirectionVector DirectionSpec::resolve(std::size_t n, std::uint64_t seed) const {
  switch (kind) {
    case Kind::first_basis: return DirectionVector::basis(n, 0);
    case Kind::random_unit: {
      SamplerState state(seed, kDirectionStreamBase + n);
      const UnitSphereVector u = sample_sphere(n, state);
      return DirectionVector({u.components().begin(), u.components().end()});
    }
    case Kind::explicit_list:
      if (values.size() != n) {
        throw DimensionError("explicit direction has " + std::to_string(values.size()) +
                             " entries but n = " + std::to_string(n));
      }
      return DirectionVector(values);
  }
  throw std::logic_error("unhandled direction kind");
}

std::vector<std::size_t> ExperimentConfig::log_grid(double lo, double hi, std::size_t points) {
  if (!(lo >= 2.0) || !(hi >= lo) || points == 0) {
    throw std::invalid_argument("log grid needs 2 <= lo <= hi and at least one point");
  }
  std::vector<std::size_t> grid;
  const double step = points > 1 ? std::log(hi / lo) / static_cast<double>(points - 1) : 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const auto n = static_cast<std::size_t>(std::llround(lo * std::exp(step * static_cast<double>(i))));
    if (grid.empty() || n > grid.back()) grid.push_back(n);
  }
  return grid;
}

void ExperimentConfig::validate() const {
  if (n_grid.empty()) throw std::invalid_argument("n grid is empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 2) throw std::invalid_argument("grid dimensions must be >= 2");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
      throw std::invalid_argument("n grid must be strictly increasing");
    }
  }
  if (q.value() < 2.0) throw std::invalid_argument("figure sweeps need q >= 2");
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");
  if (streams == 0) throw std::invalid_argument("need at least one stream");
}

ExperimentConfig apply_config_json(ExperimentConfig base, const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "n_grid") {
      base.n_grid = value.get<std::vector<std::size_t>>();
    } else if (key == "q") {
      base.q = value.is_string() ? QExponent::parse(value.get<std::string>())
                                 : QExponent(value.get<double>());
    } else if (key == "s") {
      if (value.is_array()) {
        base.s.kind = DirectionSpec::Kind::explicit_list;
        base.s.values = value.get<std::vector<double>>();
      } else {
        base.s = DirectionSpec::parse(value.get<std::string>());
      }
    } else if (key == "samples") {
      base.samples = value.get<std::uint64_t>();
    } else if (key == "seed") {
      base.seed = value.get<std::uint64_t>();
    } else if (key == "streams") {
      base.streams = value.get<std::uint32_t>();
    } else if (key == "workers") {
      base.workers = value.get<unsigned>();
    } else if (key == "out") {
      base.output_path = value.get<std::string>();
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  return base;
}

ExperimentConfig load_config_file(ExperimentConfig base, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("config file '" + path + "': " + e.what());
  }
  return apply_config_json(std::move(base), doc);
}

double theoretical_constant(Figure figure, std::size_t n, QExponent q) {
  if (figure == Figure::figure1) return bound_q_norm_sq(n, q).constant;
  return bound_inner_product_weighted(n, q, DirectionVector::basis(n, 0)).constant;
}

std::vector<ExperimentRecord> run_figure1(const ExperimentConfig& config) {
  return run_sweep(Figure::figure1, config);
}

std::vector<ExperimentRecord> run_figure2(const ExperimentConfig& config) {
  return run_sweep(Figure::figure2, config);
}

std::string format_real(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.n << ',' << r.q.to_string() << ',' << format_real(r.c_p) << ','
        << format_real(r.c_t) << ',' << format_real(r.ratio) << ',' << format_real(r.std_error)
        << ',' << (r.valid ? "true" : "false") << '\n';
  }
}

void write_records(const ExperimentConfig& config, const std::vector<ExperimentRecord>& records,
                   std::ostream& fallback) {
  if (config.output_path.empty()) {
    write_csv(fallback, records);
    return;
  }
  std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file '" + config.output_path + "'");
  write_csv(file, records);
  file.flush();
  if (!file) throw std::runtime_error("failed writing output file '" + config.output_path + "'");
}

nlohmann::json summary_json(Figure figure, const ExperimentConfig& config,
                            const std::vector<ExperimentRecord>& records) {
  nlohmann::json doc;
  doc["figure"] = figure == Figure::figure1 ? "figure1" : "figure2";
  doc["q"] = config.q.to_string();
  doc["s"] = config.s.to_string();
  doc["samples"] = config.samples;
  doc["seed"] = config.seed;
  doc["streams"] = config.streams;
  double lo = 0.0;
  double hi = 0.0;
  bool all_below_one = true;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const double ratio = records[i].ratio;
    if (i == 0 || ratio < lo) lo = ratio;
    if (i == 0 || ratio > hi) hi = ratio;
    all_below_one = all_below_one && ratio <= 1.0;
  }
  doc["records"] = records.size();
  doc["min_ratio"] = lo;
  doc["max_ratio"] = hi;
  doc["flatness"] = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  doc["all_ratios_at_most_one"] = all_below_one;
  return doc;
}

}  // namespace spherebound
