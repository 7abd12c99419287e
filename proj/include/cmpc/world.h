// Copyright 2026 The clutter-mpc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cmpc/geometry.h"

namespace cmpc {

// Planar pose; theta is kept in (-pi, pi] by everything that mutates it.
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

// Gripper configuration: palm position, heading and symmetric finger opening
// (distance from the centerline to each finger's inner face).
struct RobotState {
  double x = 0.0;
  double y = 0.0;
  double rot = 0.0;
  double grip = 0.0;
};

struct CircleShape {
  double radius = 0.0;
};

struct BoxShape {
  double half_x = 0.0;
  double half_y = 0.0;
};

using ObjectShape = std::variant<CircleShape, BoxShape>;

struct ObjectSpec {
  ObjectShape shape;
  double mass = 0.0;
  double friction = 0.0;
  bool is_target = false;
  Pose2 initial_pose;
  std::optional<double> height;  // bookkeeping only, no dynamic effect
};

struct TableSpec {
  double half_x = 0.3;
  double half_y = 0.3;
  double safe_margin = 0.05;  // safe zone = table shrunk by this margin
};

// Palm bar with two parallel fingers attached to its front face. The local x
// axis points forward (out between the fingers).
struct RobotGeometry {
  double palm_half_depth = 0.01;
  double palm_half_width = 0.04;
  double finger_half_length = 0.03;
  double finger_half_width = 0.01;
  double grip_min = 0.03;
  double grip_max = 0.06;
};

struct SceneSpec {
  TableSpec table;
  RobotGeometry robot;
  RobotState robot_initial;
  std::vector<ObjectSpec> objects;

  // Index of the unique target object; throws if the scene is malformed.
  int target_index() const;
};

struct WorldState {
  RobotState robot;
  std::vector<Pose2> objects;
  std::vector<std::uint8_t> dropped;  // sticky per-object flag

  bool operator==(const WorldState&) const;
};

// Commanded gripper velocities held for `duration` seconds.
struct Control {
  double vx = 0.0;
  double vy = 0.0;
  double vrot = 0.0;
  double vgrip = 0.0;
  double duration = 1.0;

  bool operator==(const Control&) const = default;
};

struct ControlBounds {
  double max_translation = 0.1;  // resultant planar speed, m/s
  double max_rotation = 1.0;     // rad/s
  double max_grip = 0.05;        // m/s
};

// Scales (vx, vy) down to the resultant bound and clamps the joint speeds.
Control clamp_control(Control u, const ControlBounds& bounds);

// Raw term sums plus the weighted total; see cost.h for the weighting.
struct CostBreakdown {
  double goal = 0.0;
  double disturbance = 0.0;
  double edge = 0.0;
  double acceleration = 0.0;
  double total = 0.0;
};

// Open-loop control sequence with its predicted states. predicted_states has
// exactly one more entry than controls; per_step_costs lines up with controls.
struct Plan {
  std::vector<Control> controls;
  std::vector<WorldState> predicted_states;
  double total_cost = 0.0;
  std::vector<CostBreakdown> per_step_costs;
};

struct DeviationWeights {
  double w_ang = 0.05;
  double w_robot = 1.0;
  bool include_robot = true;
};

// Weighted Euclidean distance between two states of the same scene. Angle
// differences are wrapped, so a full revolution counts as zero.
double state_deviation(const WorldState& a, const WorldState& b,
                       const DeviationWeights& weights = {});

class SceneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checks every scene invariant (positive dims, exactly one target, footprints
// inside the table, no initial overlap, ...); throws SceneError with the
// offending field path.
void validate_scene(const SceneSpec& scene);

SceneSpec load_scene(const std::string& path);
void save_scene(const SceneSpec& scene, const std::string& path);

WorldState initial_world_state(const SceneSpec& scene);

// Collider for an object at the given pose.
Collider object_collider(const ObjectShape& shape, const Pose2& pose);

// Palm, left finger, right finger, in that order.
std::array<ObbCol, 3> robot_links(const RobotState& robot,
                                  const RobotGeometry& geom);

// Midpoint of the palm's front face, the point steered towards the target.
Vec2 gripper_reference_point(const RobotState& robot,
                             const RobotGeometry& geom);
Vec2 gripper_forward_axis(const RobotState& robot);

}  // namespace cmpc
