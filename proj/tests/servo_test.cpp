#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cogh/servo/experiment.hpp"

using namespace cogh;
using namespace cogh::servo;

namespace {

ServoParams quiet(Mode mode) {
  ServoParams p;
  p.noise_sigma = 0.0;
  p.mode = mode;
  return p;
}

struct Frozen {
  double true_position, camera, n1, n2_position, n2_velocity, error;
};

// Worked by hand with k = 8.49, dt = 0.05, g = 0.25 and no noise.
const Frozen kContextTicks[] = {
    {0.0106125, 0.002653125, 0.013265625, 0.013265625, 0.4245, 0.007959375},
    {0.04245, 0.02056171875, 0.05239921875, 0.05239921875, 0.849, 0.02188828125},
    {0.0955125, 0.0631775390625, 0.1162400390625, 0.1162400390625, 1.2735, 0.0323349609375},
    {0.1698, 0.129630029296875, 0.203917529296875, 0.203917529296875, 1.698, 0.040169970703125},
    {0.2653125, 0.21926627197265625, 0.31477877197265625, 0.31477877197265625, 2.1225, 0.04604622802734375},
};

const Frozen kNoContextTicks[] = {
    {0.0106125, 0.002653125, 0.002653125, 0.013265625, 0.4245, 0.007959375},
    {0.04245, 0.01260234375, 0.01260234375, 0.04443984375, 0.849, 0.02984765625},
    {0.0955125, 0.0333298828125, 0.0333298828125, 0.0863923828125, 1.2735, 0.0621826171875},
    {0.1698, 0.067447412109375, 0.067447412109375, 0.141734912109375, 1.698, 0.102352587890625},
    {0.2653125, 0.11691368408203125, 0.11691368408203125, 0.21242618408203126, 2.1225, 0.14839881591796875},
};

void check_frozen(const ServoEpisode& ep, const Frozen (&want)[5]) {
  for (size_t i = 0; i < 5; ++i) {
    CAPTURE(i);
    const auto& s = ep.steps[i];
    CHECK(std::abs(s.true_position - want[i].true_position) < 1e-12);
    CHECK(std::abs(s.camera_position - want[i].camera) < 1e-12);
    CHECK(std::abs(s.n1_belief - want[i].n1) < 1e-12);
    CHECK(std::abs(s.n2_belief.position - want[i].n2_position) < 1e-12);
    CHECK(std::abs(s.n2_belief.velocity - want[i].n2_velocity) < 1e-12);
    CHECK(std::abs(s.abs_error - want[i].error) < 1e-12);
  }
}

const CognitiveNodeSpec& node(const ServoParams& p, const NodeId& id) {
  static std::shared_ptr<const Hierarchy> keep;
  keep = build_servo_hierarchy(p);
  return keep->node(id);
}

}  // namespace

TEST_SUITE("parameters") {
  TEST_CASE("defaults") {
    ServoParams p;
    CHECK_NOTHROW(p.validate());
    CHECK(p.ticks() == 60);
  }

  TEST_CASE("bad values are rejected") {
    auto bad = [](auto tweak) {
      ServoParams p;
      tweak(p);
      CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    };
    bad([](ServoParams& p) { p.dt = 0.0; });
    bad([](ServoParams& p) { p.duration = -1.0; });
    bad([](ServoParams& p) { p.noise_sigma = -0.1; });
    bad([](ServoParams& p) { p.kalman_gain = 1.5; });
    bad([](ServoParams& p) { p.trials = 0; });
    bad([](ServoParams& p) { p.accel = std::nan(""); });
  }

  TEST_CASE("mode names") {
    CHECK(parse_mode("context") == Mode::context);
    CHECK(parse_mode(to_string(Mode::no_context)) == Mode::no_context);
    CHECK_THROWS_AS(parse_mode("both"), std::invalid_argument);
  }
}

TEST_SUITE("node operators") {
  TEST_CASE("filter blends belief and reading") {
    const auto& n1 = node(ServoParams{}, kFilter);
    auto b = n1.observe({Value::make(tags::position, 4.0)}, Value::make(tags::position, 0.0));
    CHECK(b.as<double>() == 1.0);
  }

  TEST_CASE("physics step from rest") {
    Motion m = physics_step({0.0, 0.0}, 8.49, 0.05);
    CHECK(std::abs(m.position - 0.0106125) < 1e-15);
    CHECK(std::abs(m.velocity - 0.4245) < 1e-15);
  }

  TEST_CASE("filter prediction follows the action without context") {
    const auto& n1 = node(quiet(Mode::no_context), kFilter);
    auto y = Value::make(tags::position, 0.7);
    auto b = n1.predict({}, {y}, Value::make(tags::position, 0.1));
    CHECK(b.as<double>() == 0.7);
  }

  TEST_CASE("filter prediction takes the context when present") {
    const auto& n1 = node(quiet(Mode::context), kFilter);
    auto b = n1.predict({Value::make(tags::position, 2.5)}, {Value::make(tags::position, 0.7)},
                        Value::make(tags::position, 0.1));
    CHECK(b.as<double>() == 2.5);
  }

  TEST_CASE("hierarchy is well formed in both modes") {
    CHECK(validate(*build_servo_hierarchy(quiet(Mode::context))).ok());
    CHECK(validate(*build_servo_hierarchy(quiet(Mode::no_context))).ok());
  }
}

TEST_SUITE("episodes") {
  TEST_CASE("first ticks with context") {
    auto ep = run_episode(quiet(Mode::context));
    REQUIRE(ep.steps.size() == 60);
    check_frozen(ep, kContextTicks);
  }

  TEST_CASE("first ticks without context") {
    auto ep = run_episode(quiet(Mode::no_context));
    REQUIRE(ep.steps.size() == 60);
    check_frozen(ep, kNoContextTicks);
  }

  TEST_CASE("true position follows the closed form") {
    ServoParams p;
    auto ep = run_episode(p);
    for (size_t i = 0; i < ep.steps.size(); ++i) {
      const double t = static_cast<double>(i + 1) * p.dt;
      CHECK(std::abs(ep.steps[i].true_position - 0.5 * p.accel * t * t) < 1e-12);
    }
  }

  TEST_CASE("mean error is the mean of the step errors") {
    auto ep = run_episode(ServoParams{});
    double total = 0.0;
    for (const auto& s : ep.steps) {
      CHECK(s.abs_error == std::abs(s.camera_position - s.true_position));
      total += s.abs_error;
    }
    CHECK(std::abs(ep.mean_error - total / 60.0) < 1e-15);
  }

  TEST_CASE("same seed, same episode") {
    for (Mode m : {Mode::context, Mode::no_context}) {
      ServoParams p;
      p.mode = m;
      p.seed = 1234;
      auto a = run_episode(p);
      auto b = run_episode(p);
      CHECK(a.steps == b.steps);
      CHECK(a.mean_error == b.mean_error);
    }
  }

  TEST_CASE("different seeds differ when noisy") {
    ServoParams a;
    ServoParams b;
    b.seed = a.seed + 1;
    CHECK(run_episode(a).mean_error != run_episode(b).mean_error);
  }

  TEST_CASE("the seed is irrelevant without noise") {
    for (Mode m : {Mode::context, Mode::no_context}) {
      ServoParams a = quiet(m);
      ServoParams b = quiet(m);
      b.seed = 999;
      CHECK(run_episode(a).steps == run_episode(b).steps);
    }
  }

  TEST_CASE("without context the lag grows every tick") {
    auto ep = run_episode(quiet(Mode::no_context));
    for (size_t i = 1; i < ep.steps.size(); ++i) CHECK(ep.steps[i].abs_error > ep.steps[i - 1].abs_error);
  }

  TEST_CASE("context beats no context for every seed") {
    for (uint64_t seed = 0; seed < 50; ++seed) {
      ServoParams c;
      c.seed = seed;
      ServoParams n = c;
      n.mode = Mode::no_context;
      CHECK(run_episode(c).mean_error < run_episode(n).mean_error);
    }
  }

  TEST_CASE("more noise, more error with context") {
    double last = -1.0;
    for (double sigma : {0.0, 0.1, 0.5, 2.0}) {
      ServoParams p;
      p.noise_sigma = sigma;
      double mean = 0.0;
      for (uint64_t s = 0; s < 20; ++s) {
        p.seed = s;
        mean += run_episode(p).mean_error;
      }
      CHECK(mean > last);
      last = mean;
    }
  }

  TEST_CASE("physics drift stays within the bound") {
    ServoParams p;
    Motion m;
    for (size_t i = 0; i < p.ticks(); ++i) m = physics_step(m, p.accel, p.dt);
    const double closed = 0.5 * p.accel * p.duration * p.duration;
    CHECK(std::abs(m.position - closed) <= 0.5 * p.accel * p.dt * p.duration);
  }

  TEST_CASE("document-loaded hierarchy reproduces the built one") {
    ServoParams p;
    Registry reg;
    register_servo(reg, p);
    auto loaded = std::make_shared<const Hierarchy>(
        load_hierarchy(read_json_file(COGH_FIXTURES "/servo_hierarchy.json"), reg));
    CHECK(validate(*loaded).ok());

    ActiveHierarchy ah = init_active(loaded, initial_world(p.seed));
    double total = 0.0;
    for (size_t i = 0; i < p.ticks(); ++i) {
      ah.world_state = advance_world(ah.world_state, p);
      ah = process_update(ah);
      const auto& w = ah.world_state.as<WorldState>();
      total += std::abs(w.camera_position - w.true_position);
    }
    CHECK(std::abs(total / static_cast<double>(p.ticks()) - run_episode(p).mean_error) < 1e-15);
  }
}

TEST_SUITE("experiment") {
  TEST_CASE("parallel equals serial") {
    ServoParams p;
    p.trials = 16;
    auto a = run_experiment(p, {Mode::context, Mode::no_context});
    auto b = run_experiment_serial(p, {Mode::context, Mode::no_context});
    REQUIRE(a.modes.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
      CHECK(a.modes[i].trial_means == b.modes[i].trial_means);
      CHECK(a.modes[i].mean == b.modes[i].mean);
      CHECK(a.modes[i].stddev == b.modes[i].stddev);
    }
  }

  TEST_CASE("trial i uses seed + i") {
    ServoParams p;
    p.trials = 3;
    p.seed = 10;
    auto s = run_experiment(p, {Mode::context});
    for (size_t i = 0; i < 3; ++i) {
      ServoParams one = p;
      one.seed = 10 + i;
      CHECK(s.modes[0].trial_means[i] == run_episode(one).mean_error);
    }
  }

  TEST_CASE("summary statistics") {
    ServoParams p;
    p.trials = 5;
    auto s = run_experiment(p, {Mode::context, Mode::no_context});
    for (const auto& m : s.modes) {
      double mean = 0.0;
      for (double x : m.trial_means) mean += x;
      mean /= 5.0;
      double ss = 0.0;
      for (double x : m.trial_means) ss += (x - mean) * (x - mean);
      CHECK(std::abs(m.mean - mean) < 1e-15);
      CHECK(std::abs(m.stddev - std::sqrt(ss / 4.0)) < 1e-15);
    }
    const double want = 100.0 * (1.0 - s.find(Mode::context)->mean / s.find(Mode::no_context)->mean);
    CHECK(std::abs(*s.reduction_percent() - want) < 1e-12);
    CHECK(s.context_dominates());
  }

  TEST_CASE("one mode has no reduction") {
    ServoParams p;
    p.trials = 2;
    auto s = run_experiment(p, {Mode::no_context});
    CHECK_FALSE(s.reduction_percent());
    CHECK(s.find(Mode::context) == nullptr);
  }

  TEST_CASE("csv and json layout") {
    ServoParams p;
    p.trials = 2;
    auto s = run_experiment(p, {Mode::context, Mode::no_context});
    std::ostringstream os;
    write_csv(os, s);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "trial,mode,mean_error");
    size_t rows = 0;
    while (std::getline(is, line)) {
      CHECK((line.rfind("0,", 0) == 0 || line.rfind("1,", 0) == 0));
      ++rows;
    }
    CHECK(rows == 4);

    auto j = summary_json(s);
    CHECK(j["context"]["n"] == 2);
    CHECK(j["no_context"]["mean"].get<double>() == round12(s.find(Mode::no_context)->mean));
    CHECK(j.contains("reduction_percent"));
  }

  TEST_CASE("round12") {
    CHECK(round12(0.1 + 0.2) == 0.3);
    CHECK(round12(1.0 / 3.0) == 0.333333333333);
    CHECK(round12(0.0) == 0.0);
  }
}
