// cogh: validate hierarchy documents, check the causal-tree embedding and
// run the visual-servoing experiment.
//
// Exit codes: 0 success, 1 semantic failure (validation, equivalence or
// context dominance), 2 input error.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "cogh/bp/encode.hpp"
#include "cogh/bp/equivalence.hpp"
#include "cogh/bp/tree_document.hpp"
#include "cogh/kernel/document.hpp"
#include "cogh/servo/experiment.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

using nlohmann::json;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("cogh");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("COGH_LOG_LEVEL")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

bool write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    spdlog::error("cannot write {}", path);
    return false;
  }
  out << text;
  return static_cast<bool>(out);
}

std::string format_vector(const cogh::bp::Vector& v) {
  std::vector<std::string> parts;
  for (double x : v) parts.push_back(fmt::format("{:.12g}", cogh::servo::round12(x)));
  return fmt::format("<{}>", fmt::join(parts, ", "));
}

cogh::Registry cli_registry() {
  cogh::Registry registry;
  cogh::register_generic(registry);
  cogh::servo::register_servo(registry, cogh::servo::ServoParams{});
  return registry;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string& path) {
  json doc;
  try {
    doc = cogh::read_json_file(path);
  } catch (const cogh::DocumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }

  std::shared_ptr<const cogh::Hierarchy> hierarchy;
  try {
    if (cogh::bp::looks_like_tree(doc)) {
      hierarchy = cogh::bp::encode(cogh::bp::tree_from_json(doc));
      spdlog::info("{}: causal tree, encoded to {} nodes", path, hierarchy->nodes().size());
    } else {
      hierarchy = std::make_shared<cogh::Hierarchy>(cogh::load_hierarchy(doc, cli_registry()));
    }
  } catch (const cogh::DocumentError& e) {
    std::cerr << "error: " << path << e.where() << ": " << e.what() << '\n';
    return kInputError;
  }

  const cogh::ValidationReport report = cogh::validate(*hierarchy);
  if (report.ok()) {
    std::cout << path << ": valid\n";
    return kOk;
  }
  std::cout << path << ": " << report.violations.size() << " violation(s)\n" << report.to_string();
  return kFailed;
}

// ---------------------------------------------------------------------- bp

struct BpOptions {
  std::string path;
  double tolerance = 1e-9;
  size_t random = 0;
  uint64_t seed = 7;
  cogh::bp::RandomTreeLimits limits;
  std::string output;
};

json report_json(const cogh::bp::EquivalenceReport& r) {
  return json{{"pass", r.pass},
              {"converged", r.converged},
              {"ticks", r.ticks},
              {"max_deviation", cogh::servo::round12(r.max_deviation)},
              {"degenerate", r.degenerate},
              {"beliefs", cogh::bp::beliefs_to_json(r.hierarchy)},
              {"oracle", cogh::bp::beliefs_to_json(r.oracle)}};
}

int cmd_bp(const BpOptions& opt) {
  if (opt.tolerance < 0.0) {
    std::cerr << "error: tolerance must be non-negative\n";
    return kInputError;
  }
  if (opt.path.empty() == (opt.random == 0)) {
    std::cerr << "error: give either a tree document or --random N\n";
    return kInputError;
  }

  std::vector<cogh::bp::EquivalenceReport> reports;
  std::vector<std::string> labels;
  if (!opt.path.empty()) {
    try {
      const cogh::bp::CausalTree tree = cogh::bp::tree_from_json(cogh::read_json_file(opt.path));
      reports.push_back(cogh::bp::equivalence_check(tree, opt.tolerance));
      labels.push_back(opt.path);
    } catch (const cogh::DocumentError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kInputError;
    }
  } else {
    if (opt.limits.min_dim < 2 || opt.limits.max_dim < opt.limits.min_dim) {
      std::cerr << "error: need 2 <= --min-dim <= --max-dim\n";
      return kInputError;
    }
    reports = cogh::bp::random_suite(opt.seed, opt.random, opt.limits, opt.tolerance);
    for (size_t i = 0; i < reports.size(); ++i) labels.push_back(fmt::format("tree {} (seed {})", i, opt.seed + i));
  }

  size_t passed = 0;
  json trees = json::array();
  for (size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    passed += r.pass ? 1 : 0;
    std::cout << fmt::format("{}: {} nodes={} max_deviation={:.3g}{}\n", labels[i], r.pass ? "PASS" : "FAIL",
                             r.oracle.size(), r.max_deviation, r.diagnostics.empty() ? "" : "  " + r.diagnostics);
    if (!opt.path.empty()) {
      for (const auto& [id, b] : r.hierarchy) {
        std::cout << fmt::format("  BEL({}) = {}\n", id, b.degenerate ? "degenerate" : format_vector(b.p));
      }
    }
    json j = report_json(r);
    j["label"] = labels[i];
    trees.push_back(std::move(j));
  }
  std::cout << fmt::format("{}/{} pass at tolerance {:g}\n", passed, reports.size(), opt.tolerance);

  if (!opt.output.empty()) {
    json out{{"tolerance", opt.tolerance}, {"passed", passed}, {"total", reports.size()}, {"trees", std::move(trees)}};
    if (!write_text(opt.output, out.dump(2) + "\n")) return kInputError;
  }
  return passed == reports.size() ? kOk : kFailed;
}

// ------------------------------------------------------------------- servo

struct ServoOptions {
  cogh::servo::ServoParams params;
  std::string mode = "both";
  std::string config;
  std::string csv;
  std::string json_path;
};

// Applies fields present in a JSON config; explicit flags win.
void apply_config(const json& cfg, cogh::servo::ServoParams& p, std::string& mode, const CLI::App& app) {
  auto take = [&](const char* key, const char* flag, auto& field) {
    if (cfg.contains(key) && app.count(flag) == 0) cfg.at(key).get_to(field);
  };
  take("accel", "--accel", p.accel);
  take("dt", "--dt", p.dt);
  take("duration", "--duration", p.duration);
  take("noise_sigma", "--noise-sigma", p.noise_sigma);
  take("kalman_gain", "--gain", p.kalman_gain);
  take("seed", "--seed", p.seed);
  take("trials", "--trials", p.trials);
  take("mode", "--mode", mode);
}

int cmd_servo(ServoOptions opt, const CLI::App& app) {
  try {
    if (!opt.config.empty()) apply_config(cogh::read_json_file(opt.config), opt.params, opt.mode, app);
    opt.params.validate();
    if (opt.params.trials == 0) throw std::invalid_argument("trials must be at least 1");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }

  std::vector<cogh::servo::Mode> modes;
  if (opt.mode == "both") {
    modes = {cogh::servo::Mode::no_context, cogh::servo::Mode::context};
  } else {
    modes = {cogh::servo::parse_mode(opt.mode)};
  }

  spdlog::info("servo: {} trial(s), seed {}", opt.params.trials, opt.params.seed);
  const auto summary = cogh::servo::run_experiment(opt.params, modes);

  for (const auto& m : summary.modes) {
    std::cout << fmt::format("{:<10} mean_error={:.6f} std={:.6f} n={}\n", cogh::servo::to_string(m.mode), m.mean,
                             m.stddev, m.trial_means.size());
  }
  if (auto r = summary.reduction_percent()) std::cout << fmt::format("reduction={:.2f}%\n", *r);

  if (!opt.csv.empty()) {
    std::ostringstream os;
    cogh::servo::write_csv(os, summary);
    if (!write_text(opt.csv, os.str())) return kInputError;
  }
  if (!opt.json_path.empty() && !write_text(opt.json_path, cogh::servo::summary_json(summary).dump(2) + "\n")) {
    return kInputError;
  }

  if (!summary.context_dominates()) {
    std::cout << "context dominance violated\n";
    return kFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"cognitive hierarchy toolkit"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check a hierarchy or causal-tree document");
  validate->add_option("path", validate_path, "JSON document")->required();

  BpOptions bp;
  auto* bpc = app.add_subcommand("bp", "compare the hierarchy encoding of causal trees against direct propagation");
  bpc->add_option("path", bp.path, "causal-tree document");
  bpc->add_option("--tolerance", bp.tolerance, "maximum belief deviation")->capture_default_str();
  bpc->add_option("--random", bp.random, "number of random trees instead of a document");
  bpc->add_option("--seed", bp.seed, "seed of the first random tree")->capture_default_str();
  bpc->add_option("--max-depth", bp.limits.max_depth)->capture_default_str();
  bpc->add_option("--max-branch", bp.limits.max_branch)->capture_default_str();
  bpc->add_option("--min-dim", bp.limits.min_dim)->capture_default_str();
  bpc->add_option("--max-dim", bp.limits.max_dim)->capture_default_str();
  bpc->add_option("--output", bp.output, "write a JSON report");

  ServoOptions servo;
  auto* sc = app.add_subcommand("servo", "run the visual-servoing experiment");
  sc->add_option("--accel", servo.params.accel, "object acceleration (m/s^2)")->capture_default_str();
  sc->add_option("--dt", servo.params.dt, "time step (s)")->capture_default_str();
  sc->add_option("--duration", servo.params.duration, "episode length (s)")->capture_default_str();
  sc->add_option("--noise-sigma", servo.params.noise_sigma, "sensor noise std (m)")->capture_default_str();
  sc->add_option("--gain", servo.params.kalman_gain, "fixed filter gain")->capture_default_str();
  sc->add_option("--mode", servo.mode, "context, no_context or both")
      ->check(CLI::IsMember({"context", "no_context", "both"}))
      ->capture_default_str();
  sc->add_option("--seed", servo.params.seed, "seed of trial 0")->capture_default_str();
  sc->add_option("--trials", servo.params.trials, "episodes per mode")->capture_default_str();
  sc->add_option("--config", servo.config, "JSON file with parameter fields");
  sc->add_option("--csv", servo.csv, "per-trial CSV output");
  sc->add_option("--json", servo.json_path, "summary JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*validate) return cmd_validate(validate_path);
    if (*bpc) return cmd_bp(bp);
    if (*sc) return cmd_servo(servo, *sc);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
