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

#include <optional>
#include <string>

#include "cmpc/physics.h"
#include "cmpc/rng.h"
#include "cmpc/world.h"

namespace cmpc {

enum class UncertaintyLevel { kNone, kLow, kMedium, kHigh };

// Scales the planning-model perturbation variances: 0, 1, 2, 3.
int level_multiplier(UncertaintyLevel level);

// Execution-world velocity noise variance per level: 0, 0.003, 0.006, 0.009.
double level_beta(UncertaintyLevel level);
NoiseSpec noise_spec(UncertaintyLevel level);

const char* to_string(UncertaintyLevel level);
std::optional<UncertaintyLevel> level_from_string(const std::string& s);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct SceneGenParams {
  int object_count = 6;  // including the target
  double table_half_x = 0.3;
  double table_half_y = 0.3;
  double safe_margin = 0.05;
  Range box_half{0.03, 0.05};
  Range box_height{0.036, 0.04};
  Range cylinder_radius{0.035, 0.04};
  Range cylinder_height{0.04, 0.055};
  Range mass{0.2, 0.8};
  Range friction{0.2, 0.6};
  double target_pose_var = 0.01;  // m^2, Gaussian around the table center
  double clearance = 0.002;       // min gap between placed footprints
  int max_attempts = 10000;       // rejection sampling budget per object
  RobotGeometry robot;
  // Defaults to just off the table on the -x side, facing the center.
  std::optional<RobotState> robot_initial;
};

// Per-parameter perturbation variances at multiplier 1.
struct PerturbVariances {
  double pose_translation = 0.005;  // m^2, each of x and y
  double pose_rotation = 0.005;     // rad^2
  double shape_dim = 0.005;         // m^2, each extent / radius / height
  double mass = 0.01;               // kg^2
  double friction = 0.005;
};

// Random cluttered tabletop: the target near the table center, the rest
// placed uniformly by rejection sampling. All footprints start inside the
// safe zone. The result passes validate_scene.
SceneSpec generate_scene(const SceneGenParams& params, Rng& rng);

// The planning-side model of a scene: every object's pose, extents, mass and
// friction get independent Gaussian offsets with variance scaled by the level
// multiplier, clamped to stay physical. Level none returns an exact copy.
SceneSpec perturb_scene(const SceneSpec& scene, UncertaintyLevel level,
                        Rng& rng, const PerturbVariances& vars = {});

}  // namespace cmpc
