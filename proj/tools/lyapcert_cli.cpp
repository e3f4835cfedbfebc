// Batch front end: reads an experiment file, runs every sweep point, writes CSV.

#include "lyapcert/config.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <thread>

using namespace lyapcert;

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lyapunov certificate synthesis for first-order methods"};
  std::string config_path, out_path;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::optional<double> tol;
  bool no_timestamp = false;
  app.add_option("--config", config_path, "experiment file")->required();
  app.add_option("--out", out_path, "CSV output path (default: config 'output', else stdout)");
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--tol", tol, "solver tolerance (overrides the config)")->check(CLI::PositiveNumber);
  app.add_flag("--no-timestamp", no_timestamp, "omit the '# generated' line");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  ExperimentConfig cfg;
  std::vector<SweepPoint> points;
  try {
    cfg = load_config(config_path);
    points = expand_sweep(cfg);
    for (const auto& p : points) validate_point(cfg, p);
  } catch (const std::exception& e) {
    std::cerr << config_path << ": " << e.what() << "\n";
    return 1;
  }

  SolverSettings settings;
  settings.tol = tol ? *tol : cfg.tol;

  std::vector<PointResult> results(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r; (r = next.fetch_add(1)) < points.size();) {
      try {
        results[r] = run_point(cfg, points[r], settings);
      } catch (const std::exception& e) {
        // A point that throws after validation is a solver-side problem.
        std::cerr << "point " << r + 1 << ": " << e.what() << "\n";
        results[r] = PointResult{};
      }
    }
  };
  const std::size_t nthreads = std::min<std::size_t>(jobs, points.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  const std::string csv =
      format_csv(cfg, points, results, no_timestamp ? std::nullopt : std::optional<std::string>(utc_now()));
  const std::string target = !out_path.empty() ? out_path : cfg.output.value_or("");
  if (target.empty() || target == "-") {
    std::cout << csv;
  } else {
    std::ofstream out(target, std::ios::binary);
    if (!(out << csv)) {
      std::cerr << "cannot write '" << target << "'\n";
      return 1;
    }
  }
  return exit_code_for(results);
}
