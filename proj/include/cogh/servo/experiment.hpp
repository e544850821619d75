#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "cogh/servo/servo.hpp"

namespace cogh::servo {

struct ModeSummary {
  Mode mode = Mode::context;
  /// Episode mean errors, trial i run with seed `params.seed + i`.
  std::vector<double> trial_means;
  double mean = 0.0;
  /// Sample standard deviation of trial_means (0 for a single trial).
  double stddev = 0.0;
};

struct ExperimentSummary {
  ServoParams params;
  std::vector<ModeSummary> modes;

  const ModeSummary* find(Mode mode) const;
  /// 100 · (1 − context/no_context) when both modes ran.
  std::optional<double> reduction_percent() const;
  /// Context episode error below the no-context error for every trial
  /// (vacuously true unless both modes ran).
  bool context_dominates() const;
};

/// Runs params.trials episodes per requested mode; trials run in parallel.
ExperimentSummary run_experiment(const ServoParams& params, const std::vector<Mode>& modes);
/// Single-threaded reference for run_experiment.
ExperimentSummary run_experiment_serial(const ServoParams& params, const std::vector<Mode>& modes);

/// `trial,mode,mean_error` rows, '.' decimal separator, 12 significant digits.
void write_csv(std::ostream& os, const ExperimentSummary& summary);
/// {mode: {mean, std, n}, reduction_percent}
nlohmann::json summary_json(const ExperimentSummary& summary);

/// Rounds to 12 significant digits so JSON output is stable across platforms.
double round12(double x);

}  // namespace cogh::servo
