// spherebound: command-line access to the exact moments, bounds and
// Monte-Carlo estimators, plus the two constant-refinement sweeps.
//
//   spherebound figure1 --q inf --samples 100000 --out fig1.csv
//   spherebound exact --n 10 --kind ip_4th
//   spherebound bound --n 7 --q 4
//   spherebound estimate --n 50 --kind ip_sq --samples 1000000
//   spherebound sample --n 3 --count 2 --seed 1

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spherebound/bounds.hpp"
#include "spherebound/errors.hpp"
#include "spherebound/exact_moments.hpp"
#include "spherebound/experiments.hpp"
#include "spherebound/montecarlo.hpp"
#include "spherebound/sampler.hpp"

namespace sb = spherebound;
using nlohmann::json;

namespace {

constexpr const char* kFooter =
    "Environment:\n"
    "  SPHEREBOUND_WORKERS  number of worker threads used by the Monte-Carlo\n"
    "                       estimators (default: hardware concurrency). Results\n"
    "                       depend only on --seed, --streams and --samples.\n"
    "\n"
    "q is a real >= 1 or 'inf'. --s is first_basis, random_unit, or a comma-\n"
    "separated list of n reals.";

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::vector<std::size_t> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad grid entry '" + item + "'");
    grid.push_back(static_cast<std::size_t>(v));
  }
  return grid;
}

void print_json(const json& doc) { std::cout << doc.dump() << '\n'; }

json bound_json(const sb::BoundEvaluation& b) {
  return {{"value", b.value},
          {"constant", b.constant},
          {"branch", std::string(sb::to_string(b.branch))},
          {"valid", b.valid},
          {"validity_note", b.validity_note}};
}

json tail_json(const sb::TailBound& t) {
  return {{"threshold", t.threshold},
          {"probability_bound", t.probability_bound},
          {"kind", std::string(sb::to_string(t.kind))}};
}

json estimate_json(const sb::MomentEstimate& m) {
  json doc = {{"mean", m.mean},
              {"std_error", m.std_error},
              {"samples", m.samples},
              {"seed", m.seed},
              {"streams", m.streams}};
  if (m.upper_limit_99) doc["upper_limit_99"] = *m.upper_limit_99;
  return doc;
}

struct SweepFlags {
  std::optional<std::size_t> n;
  std::optional<std::string> n_grid;
  std::optional<std::string> q;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> streams;
  std::optional<std::string> s;
  std::optional<std::string> out;
  std::optional<std::string> config;
};

void add_sweep_options(CLI::App* cmd, SweepFlags& f) {
  cmd->add_option("--n", f.n, "Single dimension (instead of a grid)");
  cmd->add_option("--n-grid", f.n_grid, "Comma-separated dimensions (default: 20 log-spaced in [10, 1e5])");
  cmd->add_option("--q", f.q, "Hoelder exponent, >= 2 or inf (default inf)");
  cmd->add_option("--samples", f.samples, "Monte-Carlo samples per grid point (default 100000)");
  cmd->add_option("--seed", f.seed, "Random seed (default 1)");
  cmd->add_option("--streams", f.streams, "Random substreams (default 1)");
  cmd->add_option("--s", f.s, "Direction: first_basis, random_unit or explicit list");
  cmd->add_option("--out", f.out, "CSV output path (default: standard output)");
  cmd->add_option("--config", f.config, "JSON config file; flags override its values");
  cmd->get_option("--n")->excludes("--n-grid");
}

// defaults < config file < flags
sb::ExperimentConfig resolve_sweep(const SweepFlags& f) {
  sb::ExperimentConfig config;
  if (f.config) config = sb::load_config_file(config, *f.config);
  if (f.n) config.n_grid = {*f.n};
  if (f.n_grid) config.n_grid = parse_grid(*f.n_grid);
  if (f.q) config.q = sb::QExponent::parse(*f.q);
  if (f.samples) config.samples = *f.samples;
  if (f.seed) config.seed = *f.seed;
  if (f.streams) config.streams = *f.streams;
  if (f.s) config.s = sb::DirectionSpec::parse(*f.s);
  if (f.out) config.output_path = *f.out;
  return config;
}

void run_sweep_command(sb::Figure figure, const SweepFlags& flags) {
  const sb::ExperimentConfig config = resolve_sweep(flags);
  const auto records =
      figure == sb::Figure::figure1 ? sb::run_figure1(config) : sb::run_figure2(config);
  sb::write_records(config, records, std::cout);
  if (!config.output_path.empty()) {
    json summary = sb::summary_json(figure, config, records);
    summary["out"] = config.output_path;
    print_json(summary);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moments, bounds and Monte-Carlo estimates for uniform unit-sphere vectors"};
  app.footer(kFooter);
  app.require_subcommand(1);

  SweepFlags fig1_flags;
  SweepFlags fig2_flags;
  auto* fig1 = app.add_subcommand("figure1", "Sweep C_p/C_t for E||e||_q^2 over a dimension grid (CSV)");
  auto* fig2 = app.add_subcommand("figure2", "Sweep C_p/C_t for E[<s,e>^2 ||e||_q^2] over a dimension grid (CSV)");
  add_sweep_options(fig1, fig1_flags);
  add_sweep_options(fig2, fig2_flags);

  std::size_t n = 0;
  std::string q_text = "2";
  std::string s_text = "first_basis";
  std::string kind;
  std::uint64_t seed = 1;

  auto* exact = app.add_subcommand("exact", "Closed-form moment (JSON)");
  exact->add_option("--n", n, "Dimension")->required();
  exact->add_option("--kind", kind, "component | jensen | ip_sq | ip_4th")->required();
  exact->add_option("--q", q_text, "Moment order q (component, jensen)");
  exact->add_option("--s", s_text, "Direction (ip_sq, ip_4th)");
  exact->add_option("--seed", seed, "Seed for --s random_unit");

  double c = 10.0;
  double t = 1.0;
  auto* bound = app.add_subcommand("bound", "Theoretical bound (JSON)");
  bound->add_option("--n", n, "Dimension");
  bound->add_option("--q", q_text, "Exponent q >= 2 or inf");
  bound->add_option("--kind", kind,
                    "q_norm_sq (default) | inner_product_weighted | q_norm_fourth_root | "
                    "optimal_q_expectation | optimal_q_fourth | cap | infinity_norm | median");
  bound->add_option("--s", s_text, "Direction (inner_product_weighted)");
  bound->add_option("--seed", seed, "Seed for --s random_unit");
  bound->add_option("--c", c, "Cap width c (cap)");
  bound->add_option("--t", t, "Deviation t (median)");

  std::uint64_t samples = 100000;
  std::uint32_t streams = 1;
  double threshold = 0.0;
  std::string tail_stat = "ip_sq";
  auto* est = app.add_subcommand("estimate", "Monte-Carlo estimate (JSON)");
  est->add_option("--n", n, "Dimension")->required();
  est->add_option("--kind", kind,
                  "q_norm_sq | q_norm_4th | ip_sq | ip_4th | ip_sq_times_qnorm_sq | tail_indicator")
      ->required();
  est->add_option("--q", q_text, "Exponent q >= 1 or inf");
  est->add_option("--s", s_text, "Direction");
  est->add_option("--threshold", threshold, "Tail threshold (tail_indicator)");
  est->add_option("--tail-stat", tail_stat, "ip_sq | q_norm (tail_indicator)");
  est->add_option("--samples", samples, "Sample count");
  est->add_option("--seed", seed, "Random seed");
  est->add_option("--streams", streams, "Random substreams");

  std::size_t count = 1;
  std::uint64_t stream_id = 0;
  auto* sample = app.add_subcommand("sample", "Draw unit-sphere vectors (CSV, one per line)");
  sample->add_option("--n", n, "Dimension")->required();
  sample->add_option("--count", count, "Number of vectors");
  sample->add_option("--seed", seed, "Random seed");
  sample->add_option("--stream", stream_id, "Substream id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*fig1) {
      run_sweep_command(sb::Figure::figure1, fig1_flags);
    } else if (*fig2) {
      run_sweep_command(sb::Figure::figure2, fig2_flags);
    } else if (*exact) {
      json doc = {{"command", "exact"}, {"kind", kind}, {"n", n}};
      double value = 0.0;
      if (kind == "component" || kind == "jensen") {
        const double q = sb::QExponent::parse(q_text).value();
        value = kind == "component" ? sb::component_abs_moment(n, q)
                                    : sb::jensen_q_norm_sq_bound(n, q);
        doc["q"] = q_text;
      } else if (kind == "ip_sq" || kind == "ip_4th") {
        const auto s = sb::DirectionSpec::parse(s_text).resolve(n, seed);
        value = kind == "ip_sq" ? sb::inner_product_sq_moment(n, s)
                                : sb::inner_product_fourth_moment(n, s);
        doc["s"] = s_text;
      } else {
        throw std::invalid_argument("unknown exact kind '" + kind + "'");
      }
      doc["value"] = value;
      print_json(doc);
    } else if (*bound) {
      if (kind.empty()) kind = "q_norm_sq";
      json doc = {{"command", "bound"}, {"kind", kind}};
      const auto q = sb::QExponent::parse(q_text);
      if (kind == "median") {
        doc["t"] = t;
        doc["probability_bound"] = sb::median_concentration_bound(t);
      } else {
        doc["n"] = n;
        if (kind == "q_norm_sq") {
          doc["q"] = q.to_string();
          doc.update(bound_json(sb::bound_q_norm_sq(n, q)));
        } else if (kind == "inner_product_weighted") {
          doc["q"] = q.to_string();
          doc["s"] = s_text;
          doc.update(bound_json(sb::bound_inner_product_weighted(
              n, q, sb::DirectionSpec::parse(s_text).resolve(n, seed))));
        } else if (kind == "q_norm_fourth_root") {
          doc["q"] = q.to_string();
          doc.update(bound_json(sb::bound_q_norm_fourth_root(n, q)));
        } else if (kind == "optimal_q_expectation") {
          doc["value"] = sb::optimal_q_expectation(n);
        } else if (kind == "optimal_q_fourth") {
          doc["value"] = sb::optimal_q_fourth(n);
        } else if (kind == "cap") {
          doc["c"] = c;
          doc.update(tail_json(sb::cap_tail_bound(n, c)));
        } else if (kind == "infinity_norm") {
          doc.update(tail_json(sb::infinity_norm_tail(n)));
        } else {
          throw std::invalid_argument("unknown bound kind '" + kind + "'");
        }
      }
      print_json(doc);
    } else if (*est) {
      const auto estimand_kind = sb::parse_estimand_kind(kind);
      const auto q = sb::QExponent::parse(q_text);
      auto direction = [&] { return sb::DirectionSpec::parse(s_text).resolve(n, seed); };
      std::optional<sb::Estimand> estimand;
      switch (estimand_kind) {
        case sb::EstimandKind::q_norm_sq: estimand = sb::Estimand::q_norm_sq(q); break;
        case sb::EstimandKind::q_norm_4th: estimand = sb::Estimand::q_norm_4th(q); break;
        case sb::EstimandKind::ip_sq: estimand = sb::Estimand::ip_sq(direction()); break;
        case sb::EstimandKind::ip_4th: estimand = sb::Estimand::ip_4th(direction()); break;
        case sb::EstimandKind::ip_sq_times_qnorm_sq:
          estimand = sb::Estimand::ip_sq_times_qnorm_sq(q, direction());
          break;
        case sb::EstimandKind::tail_indicator:
          if (tail_stat == "ip_sq") {
            estimand = sb::Estimand::tail_ip_sq(direction(), threshold);
          } else if (tail_stat == "q_norm") {
            estimand = sb::Estimand::tail_q_norm(q, threshold);
          } else {
            throw std::invalid_argument("unknown tail statistic '" + tail_stat + "'");
          }
          break;
      }
      const sb::EstimatorConfig config{samples, seed, streams, 0};
      json doc = {{"command", "estimate"}, {"kind", kind}, {"n", n}, {"q", q.to_string()}};
      doc.update(estimate_json(sb::estimate(n, *estimand, config)));
      print_json(doc);
    } else if (*sample) {
      sb::SamplerState state(seed, stream_id);
      for (std::size_t i = 0; i < count; ++i) {
        const auto e = sb::sample_sphere(n, state);
        for (std::size_t k = 0; k < e.dimension(); ++k) {
          if (k) std::cout << ',';
          std::cout << sb::format_real(e[k]);
        }
        std::cout << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::cout.flush();
  return std::cout ? 0 : 1;
}
