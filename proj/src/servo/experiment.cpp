#include "cogh/servo/experiment.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

namespace cogh::servo {

const ModeSummary* ExperimentSummary::find(Mode mode) const {
  for (const auto& m : modes) {
    if (m.mode == mode) return &m;
  }
  return nullptr;
}

std::optional<double> ExperimentSummary::reduction_percent() const {
  const ModeSummary* with = find(Mode::context);
  const ModeSummary* without = find(Mode::no_context);
  if (!with || !without || without->mean == 0.0) return std::nullopt;
  return 100.0 * (1.0 - with->mean / without->mean);
}

bool ExperimentSummary::context_dominates() const {
  const ModeSummary* with = find(Mode::context);
  const ModeSummary* without = find(Mode::no_context);
  if (!with || !without) return true;
  for (size_t i = 0; i < with->trial_means.size() && i < without->trial_means.size(); ++i) {
    if (!(with->trial_means[i] < without->trial_means[i])) return false;
  }
  return true;
}

namespace {

void summarize(ModeSummary& s) {
  const auto n = static_cast<double>(s.trial_means.size());
  if (s.trial_means.empty()) return;
  double sum = 0.0;
  for (double x : s.trial_means) sum += x;
  s.mean = sum / n;
  if (s.trial_means.size() > 1) {
    double sq = 0.0;
    for (double x : s.trial_means) sq += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(sq / (n - 1.0));
  }
}

ServoParams trial_params(const ServoParams& base, Mode mode, size_t trial) {
  ServoParams p = base;
  p.mode = mode;
  p.seed = base.seed + trial;
  return p;
}

}  // namespace

ExperimentSummary run_experiment(const ServoParams& params, const std::vector<Mode>& modes) {
  params.validate();
  if (params.trials == 0) throw std::invalid_argument("trials must be at least 1");
  ExperimentSummary out{params, {}};
  for (Mode mode : modes) {
    ModeSummary s{mode, std::vector<double>(params.trials, 0.0), 0.0, 0.0};
    const auto n = static_cast<long long>(params.trials);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
      s.trial_means[i] = run_episode(trial_params(params, mode, static_cast<size_t>(i))).mean_error;
    }
    summarize(s);
    out.modes.push_back(std::move(s));
  }
  return out;
}

ExperimentSummary run_experiment_serial(const ServoParams& params, const std::vector<Mode>& modes) {
  params.validate();
  if (params.trials == 0) throw std::invalid_argument("trials must be at least 1");
  ExperimentSummary out{params, {}};
  for (Mode mode : modes) {
    ModeSummary s{mode, {}, 0.0, 0.0};
    for (size_t i = 0; i < params.trials; ++i) {
      s.trial_means.push_back(run_episode(trial_params(params, mode, i)).mean_error);
    }
    summarize(s);
    out.modes.push_back(std::move(s));
  }
  return out;
}

double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  const std::string text = fmt::format("{:.12g}", x);
  double out = x;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

void write_csv(std::ostream& os, const ExperimentSummary& summary) {
  os << "trial,mode,mean_error\n";
  for (const auto& m : summary.modes) {
    for (size_t i = 0; i < m.trial_means.size(); ++i) {
      os << fmt::format("{},{},{:.12g}\n", i, to_string(m.mode), m.trial_means[i]);
    }
  }
}

nlohmann::json summary_json(const ExperimentSummary& summary) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& m : summary.modes) {
    out[to_string(m.mode)] = {{"mean", round12(m.mean)}, {"std", round12(m.stddev)}, {"n", m.trial_means.size()}};
  }
  if (auto r = summary.reduction_percent()) {
    out["reduction_percent"] = round12(*r);
  } else {
    out["reduction_percent"] = nullptr;
  }
  return out;
}

}  // namespace cogh::servo
