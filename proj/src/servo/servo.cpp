#include "cogh/servo/servo.hpp"

#include <cmath>
#include <stdexcept>

namespace cogh::servo {

std::string to_string(Mode mode) { return mode == Mode::context ? "context" : "no_context"; }

Mode parse_mode(const std::string& text) {
  if (text == "context") return Mode::context;
  if (text == "no_context") return Mode::no_context;
  throw std::invalid_argument("unknown servo mode '" + text + "'");
}

void ServoParams::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(duration >= dt)) throw std::invalid_argument("duration must be at least dt");
  if (!(noise_sigma >= 0.0)) throw std::invalid_argument("noise_sigma must be non-negative");
  if (!(kalman_gain >= 0.0 && kalman_gain <= 1.0)) throw std::invalid_argument("kalman_gain must lie in [0, 1]");
  if (!std::isfinite(accel)) throw std::invalid_argument("accel must be finite");
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
}

size_t ServoParams::ticks() const { return static_cast<size_t>(std::llround(duration / dt)); }

Motion physics_step(const Motion& m, double accel, double dt) {
  return {m.position + m.velocity * dt + 0.5 * accel * dt * dt, m.velocity + accel * dt};
}

namespace {

double single_position(const ValueSet& values, const char* what) {
  if (values.size() != 1) throw std::invalid_argument(std::string(what) + " must hold exactly one position");
  return values.front().as<double>();
}

CognitiveNodeSpec filter_node(const ServoParams& p) {
  const double gain = p.kalman_gain;
  const Mode mode = p.mode;

  CognitiveNodeSpec n;
  n.id = kFilter;
  n.spaces = {tags::position, tags::position, tags::track, tags::position, tags::position};
  n.policies["follow"] = [](const Value& belief) { return ValueSet{belief}; };
  n.select_policy = [](const ValueSet&) { return PolicyId("follow"); };
  n.observe = [gain](const ValueSet& obs, const Value& belief) {
    const double x = single_position(obs, "filter observation");
    return Value::make(tags::position, (1.0 - gain) * belief.as<double>() + gain * x);
  };
  if (mode == Mode::context) {
    // no context yet: fall back to the commanded action
    n.predict = [](const ValueSet& context, const ValueSet& actions, const Value&) {
      const double x = context.empty() ? single_position(actions, "filter action") : single_position(context, "filter context");
      return Value::make(tags::position, x);
    };
  } else {
    n.predict = [](const ValueSet&, const ValueSet& actions, const Value&) {
      return Value::make(tags::position, single_position(actions, "filter action"));
    };
  }
  n.initial_belief = Value::make(tags::position, 0.0);
  n.initial_policy = "follow";
  return n;
}

CognitiveNodeSpec physics_node(const ServoParams& p) {
  const double accel = p.accel;
  const double dt = p.dt;

  CognitiveNodeSpec n;
  n.id = kPhysics;
  n.spaces = {tags::motion, tags::track, tags::track, tags::position, tags::position};
  n.policies["track"] = [](const Value&) { return ValueSet{Value::make(tags::track, std::string("follow"))}; };
  n.select_policy = [](const ValueSet&) { return PolicyId("track"); };
  n.observe = [](const ValueSet& obs, const Value& belief) {
    Motion m = belief.as<Motion>();
    m.position = single_position(obs, "physics observation");
    return Value::make(tags::motion, m);
  };
  n.predict = [accel, dt](const ValueSet&, const ValueSet&, const Value& belief) {
    return Value::make(tags::motion, physics_step(belief.as<Motion>(), accel, dt));
  };
  n.initial_belief = Value::make(tags::motion, Motion{});
  n.initial_policy = "track";
  return n;
}

WorldNodeSpec world_node() {
  return WorldNodeSpec{kWorld, tags::world, tags::position, [](const ValueSet& params, const Value& state) {
                         if (params.empty()) return state;
                         WorldState w = state.as<WorldState>();
                         w.camera_position = single_position(params, "camera command");
                         return Value::make(tags::world, std::move(w));
                       }};
}

ValueSet sense_world(const Value& world) {
  return {Value::make(tags::position, world.as<WorldState>().measurement)};
}

ValueSet pass_position(const Value& belief) { return {Value::make(tags::position, belief.as<double>())}; }

ValueSet pass_through(const ValueSet& values) { return values; }

ValueSet physics_context(const Value& belief) { return {Value::make(tags::position, belief.as<Motion>().position)}; }

}  // namespace

std::shared_ptr<const Hierarchy> build_servo_hierarchy(const ServoParams& params) {
  params.validate();
  auto h = std::make_shared<Hierarchy>(world_node());
  h->add_node(filter_node(params));
  h->add_node(physics_node(params));
  // N1's actions drive the camera; N2's actions select N1's policy.
  h->add_edge(EdgeTriple{kWorld, kFilter, sense_world, pass_through, {}});
  h->add_edge(EdgeTriple{kFilter, kPhysics, pass_position, pass_through,
                         params.mode == Mode::context ? ContextFn(physics_context) : ContextFn{}});
  return h;
}

void register_servo(Registry& registry, const ServoParams& params) {
  params.validate();
  ServoParams with_context = params;
  with_context.mode = Mode::context;
  ServoParams without_context = params;
  without_context.mode = Mode::no_context;
  registry.add_node("servo.filter.context", filter_node(with_context));
  registry.add_node("servo.filter.no_context", filter_node(without_context));
  registry.add_node("servo.physics", physics_node(params));
  registry.add_world("servo.world", world_node());
  registry.add_sensing("servo.sense_world", sense_world);
  registry.add_sensing("servo.pass_position", pass_position);
  registry.add_task_params("servo.pass_through", pass_through);
  registry.add_context("servo.physics_context", physics_context);
}

Value initial_world(uint64_t seed) {
  WorldState w;
  w.rng.seed(seed);
  return Value::make(tags::world, std::move(w));
}

Value advance_world(const Value& world, const ServoParams& params) {
  WorldState w = world.as<WorldState>();
  ++w.step;
  w.t = static_cast<double>(w.step) * params.dt;
  w.true_position = 0.5 * params.accel * w.t * w.t;
  double noise = 0.0;
  if (params.noise_sigma > 0.0) noise = std::normal_distribution<double>(0.0, params.noise_sigma)(w.rng);
  w.measurement = w.true_position + noise;
  return Value::make(tags::world, std::move(w));
}

ServoEpisode run_episode(const ServoParams& params) {
  params.validate();
  ActiveHierarchy ah = init_active(build_servo_hierarchy(params), initial_world(params.seed));

  ServoEpisode ep;
  const size_t ticks = params.ticks();
  ep.steps.reserve(ticks);
  double total = 0.0;
  for (size_t i = 0; i < ticks; ++i) {
    ah.world_state = advance_world(ah.world_state, params);
    ah = process_update(ah);

    const auto& w = ah.world_state.as<WorldState>();
    StepRecord rec;
    rec.t = w.t;
    rec.true_position = w.true_position;
    rec.camera_position = w.camera_position;
    rec.n1_belief = ah.at(kFilter).belief.as<double>();
    rec.n2_belief = ah.at(kPhysics).belief.as<Motion>();
    rec.abs_error = std::abs(w.camera_position - w.true_position);
    total += rec.abs_error;
    ep.steps.push_back(rec);
  }
  ep.mean_error = ticks ? total / static_cast<double>(ticks) : 0.0;
  return ep;
}

}  // namespace cogh::servo
