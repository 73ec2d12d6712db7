// mvph: fixed-scale persistent homology of a point cloud, computed on an
// overlapping grid covering and assembled with Mayer-Vietoris.

#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mvph/core/error.hpp"
#include "mvph/engine/engine.hpp"
#include "mvph/io/csv_input.hpp"
#include "mvph/io/json_report.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kBudget = 3,
  kVerifyMismatch = 4,
};

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::stringstream conv(item);
    T v;
    if (!(conv >> v) || !(conv >> std::ws).eof())
      throw CLI::ValidationError(what, "'" + item + "' is not a valid entry");
    out.push_back(v);
  }
  if (out.empty()) throw CLI::ValidationError(what, "empty list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Betti numbers of a point cloud's Rips complexes up to a scale epsilon, "
               "computed piecewise on a grid covering"};

  std::string input;
  double epsilon = 0.0;
  std::string scales_text;
  std::size_t scale_steps = 10;
  int max_dim = 1;
  unsigned field = 2;
  std::size_t parallel = std::max(1u, std::thread::hardware_concurrency());
  std::string grid_text;
  std::size_t budget = mvph::kDefaultSimplexBudget;
  bool do_verify = false;
  std::string output = "-";
  double slack = 0.0;
  bool clearing = false;
  bool no_timings = false;
  bool corrupt_f = false;

  app.add_option("input", input, "CSV file, one point per line")->required();
  app.add_option("--epsilon", epsilon, "Largest scale; the covering is built for it")
      ->required()
      ->check(CLI::PositiveNumber);
  auto* scales_opt = app.add_option("--scales", scales_text, "Comma-separated scales in (0, epsilon]");
  app.add_option("--scale-steps", scale_steps, "Use m evenly spaced scales epsilon*i/m")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}))
      ->excludes(scales_opt);
  app.add_option("--max-dim", max_dim, "Highest homology dimension")->check(CLI::NonNegativeNumber);
  app.add_option("--field", field, "Prime coefficient field");
  app.add_option("--parallel", parallel,
                 "Concurrent jobs; also the parallelism used to pick cells per axis")
      ->check(CLI::PositiveNumber);
  app.add_option("--grid", grid_text, "Cells per axis k1,..,kd (overrides the automatic choice)");
  app.add_option("--budget", budget, "Simplex budget per complex")->check(CLI::PositiveNumber);
  app.add_flag("--verify", do_verify, "Compare against the global persistence barcode");
  app.add_option("--output", output, "Report path, '-' for stdout");
  app.add_option("--slack", slack, "Added to every distance threshold")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--clearing", clearing, "Use the clearing optimisation in leaf reductions");
  app.add_flag("--no-timings", no_timings, "Omit wall-clock figures from the report");
  // negative control for the verify path; zeroes f at the top dimension
  app.add_flag("--corrupt-f", corrupt_f)->group("");

  mvph::EngineConfig config;
  try {
    app.parse(argc, argv);
    if (!mvph::is_prime(field)) throw CLI::ValidationError("--field", "must be a prime");
    config.epsilon = epsilon;
    config.scales = scales_text.empty() ? mvph::even_scales(epsilon, scale_steps)
                                        : parse_list<double>(scales_text, "--scales");
    for (double s : config.scales)
      if (!(s > 0.0 && s <= epsilon))
        throw CLI::ValidationError("--scales", "every scale must lie in (0, epsilon]");
    if (!grid_text.empty()) config.grid = parse_list<std::size_t>(grid_text, "--grid");
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  config.n_max = max_dim;
  config.field = field;
  config.workers = parallel;
  config.grid_parallelism = parallel;
  config.budget = budget;
  config.slack = slack;
  config.clearing = clearing;
  config.mv.corrupt_top_f = corrupt_f;

  try {
    const mvph::PointCloud cloud = mvph::parse_input(input);
    if (config.grid && config.grid->size() != cloud.dim()) {
      std::cerr << "error: --grid needs " << cloud.dim() << " entries for this input\n";
      return kUsage;
    }
    const mvph::BettiReport report =
        do_verify ? mvph::verify(cloud, config) : mvph::run(cloud, config);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    mvph::emit_report(report, output, {.include_timings = !no_timings});
    if (report.verify && !report.verify->feasible) {
      std::cerr << "error: " << report.verify->reason << '\n';
      return kBudget;
    }
    if (report.verify && !report.verify->pass) return kVerifyMismatch;
  } catch (const mvph::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const mvph::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const mvph::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kOk;
}
