#pragma once

#include "lyapcert/sdp.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lyapcert {

// Experiment files are INI text:
//
//   mode = bisect-rho            ; verify-independent | bisect-rho | verify-dependent | sweep
//   tol = 1e-9                   ; solver tolerance, optional
//   seed = 0                     ; optional
//   output = dr.csv              ; optional, --out wins
//
//   [problem]
//   component1 = MaximallyMonotone
//   component2 = StronglyMonotone(mu=$mu) & LipschitzOperator(L=2)
//   mu = 1                       ; referenced above as $mu
//
//   [algorithm]
//   name = douglas_rachford
//   gamma = 1
//   lambda = 2
//   functions = 1,2              ; optional override of the function components
//
//   [analysis]
//   params = linear_distance     ; independent constructors, see below
//   h = 0 / alpha = 0 / i = 1 / j = 1 / tau = 0 / rho = 1
//   remove_C4 = true, Q_equals_P = false, ...
//   rho_lower = 0 / rho_upper = 1 / rho_tol = 1e-4   ; bisect-rho
//   K = 10 / first = distance(i=1, j=2) / last = funcval(j=2)  ; verify-dependent
//
//   [sweep]
//   task = bisect-rho            ; required with mode = sweep
//   algorithm.gamma = linspace(0.05, 4.95, 100)
//   analysis.K = range(1, 100)   ; inclusive integer range
//   problem.mu = 0.5, 1, 2       ; explicit list
//
// Sweep axes combine as a cartesian product, first axis slowest.

class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

enum class RunMode { VerifyIndependent, BisectRho, VerifyDependent, Sweep };
std::string mode_name(RunMode mode);

struct SweepAxis {
  std::string section;  // problem | algorithm | analysis
  std::string key;
  std::vector<double> values;
  int line = 0;
  std::string name() const { return section + "." + key; }
};

struct ConfigEntry {
  std::string value;
  int line = 0;
};
using ConfigSection = std::map<std::string, ConfigEntry>;

struct ExperimentConfig {
  RunMode mode = RunMode::VerifyIndependent;
  RunMode task = RunMode::VerifyIndependent;  // what each point runs
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::optional<std::string> output;
  ConfigSection problem, algorithm, analysis;
  std::vector<SweepAxis> axes;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// One assignment of the sweep axes, in axis order.
using SweepPoint = std::vector<double>;
std::vector<SweepPoint> expand_sweep(const ExperimentConfig& cfg);

struct PointResult {
  VerdictStatus status = VerdictStatus::NumericalFailure;
  std::optional<double> rho;       // bisect-rho
  std::optional<bool> feasible;    // verify-independent
  std::optional<double> c;         // verify-dependent
};

// Builds every object of the point without solving; throws ConfigError.
void validate_point(const ExperimentConfig& cfg, const SweepPoint& point);
PointResult run_point(const ExperimentConfig& cfg, const SweepPoint& point,
                      const SolverSettings& settings);

// CSV with a header row, 12 significant digits; the timestamp line is a
// leading comment.
std::string format_csv(const ExperimentConfig& cfg, const std::vector<SweepPoint>& points,
                       const std::vector<PointResult>& results,
                       const std::optional<std::string>& timestamp);

// 0 all good, 2 when any point hit numerical_failure.
int exit_code_for(const std::vector<PointResult>& results);

// Number text with 12 significant digits.
std::string format_number(double v);

}  // namespace lyapcert
