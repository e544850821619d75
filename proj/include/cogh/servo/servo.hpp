#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "cogh/kernel/document.hpp"
#include "cogh/kernel/process.hpp"

namespace cogh::servo {

enum class Mode { context, no_context };

std::string to_string(Mode mode);
/// Accepts "context" and "no_context"; throws std::invalid_argument.
Mode parse_mode(const std::string& text);

/// Camera tracking an object sliding down a frictionless incline.
/// Units: metres, seconds.
struct ServoParams {
  double accel = 8.49;
  double dt = 0.05;
  double duration = 3.0;
  double noise_sigma = 0.1;
  double kalman_gain = 0.25;
  Mode mode = Mode::context;
  uint64_t seed = 42;
  size_t trials = 100;

  /// Throws std::invalid_argument describing the first bad field.
  void validate() const;
  /// round(duration / dt)
  size_t ticks() const;
};

/// Payload of the world node. The true position is the closed form at `t`;
/// `measurement` is the noisy reading drawn when the world last advanced.
struct WorldState {
  uint64_t step = 0;
  double t = 0.0;
  double true_position = 0.0;
  double camera_position = 0.0;
  double measurement = 0.0;
  std::mt19937_64 rng;

  bool operator==(const WorldState&) const = default;
};

/// Belief of the physics node.
struct Motion {
  double position = 0.0;
  double velocity = 0.0;

  bool operator==(const Motion&) const = default;
};

inline const NodeId kWorld{"N0"};
inline const NodeId kFilter{"N1"};
inline const NodeId kPhysics{"N2"};

namespace tags {
inline const Tag world = "servo.world";
inline const Tag position = "servo.position";
inline const Tag motion = "servo.motion";
inline const Tag track = "servo.track";
}  // namespace tags

/// Three-node controller: world N0, fixed-gain filter N1 (drives the camera),
/// physics predictor N2 (feeds its position estimate to N1 as context in
/// Mode::context).
std::shared_ptr<const Hierarchy> build_servo_hierarchy(const ServoParams& params);

/// Registers the servo bundles under "servo.*" keys so the hierarchy can also
/// be loaded from a topology document (see fixtures/servo_hierarchy.json).
void register_servo(Registry& registry, const ServoParams& params);

/// World at t = 0 with the RNG seeded from `seed`.
Value initial_world(uint64_t seed);

/// Advances world time by one step: recomputes the true position in closed
/// form and draws the measurement noise for this step.
Value advance_world(const Value& world, const ServoParams& params);

/// The N2 physics step ⟨x + v·dt + ½·k·dt², v + k·dt⟩.
Motion physics_step(const Motion& m, double accel, double dt);

struct StepRecord {
  double t = 0.0;
  double true_position = 0.0;
  double camera_position = 0.0;
  double n1_belief = 0.0;
  Motion n2_belief;
  double abs_error = 0.0;

  bool operator==(const StepRecord&) const = default;
};

struct ServoEpisode {
  std::vector<StepRecord> steps;
  double mean_error = 0.0;
};

/// One episode of params.ticks() ticks. Per tick: advance the world, run
/// process_update (sense, predict, actuate camera), then record
/// |camera - true|.
ServoEpisode run_episode(const ServoParams& params);

}  // namespace cogh::servo
