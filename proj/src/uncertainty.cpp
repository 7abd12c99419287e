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

#include "cmpc/uncertainty.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace cmpc {
namespace {

constexpr double kMinDim = 0.001;
constexpr double kMinMass = 0.01;
constexpr double kMinFriction = 0.05;

// Grown copy used for clearance tests during placement.
Collider inflate(const Collider& c, double by) {
  if (const auto* circle = std::get_if<CircleCol>(&c)) {
    return CircleCol{circle->center, circle->radius + by};
  }
  ObbCol b = std::get<ObbCol>(c);
  b.half.x += by;
  b.half.y += by;
  return b;
}

bool placement_clear(const Collider& candidate,
                     const std::vector<Collider>& placed,
                     const std::array<ObbCol, 3>& links, double clearance) {
  const Collider grown = inflate(candidate, clearance);
  for (const Collider& other : placed) {
    if (penetration_depth(grown, other) > 0.0) return false;
  }
  for (const ObbCol& link : links) {
    if (penetration_depth(grown, Collider{link}) > 0.0) return false;
  }
  return true;
}

bool on_table(const ObjectShape& shape, const Pose2& pose,
              const TableSpec& table) {
  if (const auto* c = std::get_if<CircleShape>(&shape)) {
    return std::abs(pose.x) + c->radius <= table.half_x &&
           std::abs(pose.y) + c->radius <= table.half_y;
  }
  const auto& b = std::get<BoxShape>(shape);
  const Vec2 u{std::cos(pose.theta), std::sin(pose.theta)};
  const Vec2 v = perp(u);
  const double ext_x = std::abs(u.x) * b.half_x + std::abs(v.x) * b.half_y;
  const double ext_y = std::abs(u.y) * b.half_x + std::abs(v.y) * b.half_y;
  return std::abs(pose.x) + ext_x <= table.half_x &&
         std::abs(pose.y) + ext_y <= table.half_y;
}

double uniform(Rng& rng, Range r) {
  std::uniform_real_distribution<double> d(r.lo, r.hi);
  return d(rng);
}

}  // namespace

int level_multiplier(UncertaintyLevel level) {
  switch (level) {
    case UncertaintyLevel::kNone: return 0;
    case UncertaintyLevel::kLow: return 1;
    case UncertaintyLevel::kMedium: return 2;
    case UncertaintyLevel::kHigh: return 3;
  }
  return 0;
}

double level_beta(UncertaintyLevel level) {
  // published constants, returned exactly (3 * 0.003 is one ulp off 0.009)
  switch (level) {
    case UncertaintyLevel::kNone: return 0.0;
    case UncertaintyLevel::kLow: return 0.003;
    case UncertaintyLevel::kMedium: return 0.006;
    case UncertaintyLevel::kHigh: return 0.009;
  }
  return 0.0;
}

NoiseSpec noise_spec(UncertaintyLevel level) {
  const double beta = level_beta(level);
  return NoiseSpec{beta, beta, true};
}

const char* to_string(UncertaintyLevel level) {
  switch (level) {
    case UncertaintyLevel::kNone: return "none";
    case UncertaintyLevel::kLow: return "low";
    case UncertaintyLevel::kMedium: return "medium";
    case UncertaintyLevel::kHigh: return "high";
  }
  return "none";
}

std::optional<UncertaintyLevel> level_from_string(const std::string& s) {
  if (s == "none") return UncertaintyLevel::kNone;
  if (s == "low") return UncertaintyLevel::kLow;
  if (s == "medium") return UncertaintyLevel::kMedium;
  if (s == "high") return UncertaintyLevel::kHigh;
  return std::nullopt;
}

SceneSpec generate_scene(const SceneGenParams& params, Rng& rng) {
  if (params.object_count < 1) {
    throw SceneError("generate_scene: object_count must be >= 1");
  }
  SceneSpec scene;
  scene.table = {params.table_half_x, params.table_half_y,
                 params.safe_margin};
  scene.robot = params.robot;
  scene.robot_initial = params.robot_initial.value_or(
      RobotState{-(params.table_half_x + 0.05), 0.0, 0.0,
                 params.robot.grip_max});

  const auto links = robot_links(scene.robot_initial, scene.robot);
  std::vector<Collider> placed;
  std::normal_distribution<double> center(0.0,
                                          std::sqrt(params.target_pose_var));
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  // every body starts with its footprint inside the safe zone: a start that
  // already touches the penalized edge strip would charge the robot for
  // danger it never caused
  const TableSpec zone{params.table_half_x - params.safe_margin,
                       params.table_half_y - params.safe_margin, 0.0};
  std::uniform_real_distribution<double> ux(-zone.half_x, zone.half_x);
  std::uniform_real_distribution<double> uy(-zone.half_y, zone.half_y);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  for (int i = 0; i < params.object_count; ++i) {
    ObjectSpec o;
    if (coin(rng) < 0.5) {
      o.shape = BoxShape{uniform(rng, params.box_half),
                         uniform(rng, params.box_half)};
      o.height = uniform(rng, params.box_height);
    } else {
      o.shape = CircleShape{uniform(rng, params.cylinder_radius)};
      o.height = uniform(rng, params.cylinder_height);
    }
    o.mass = uniform(rng, params.mass);
    o.friction = uniform(rng, params.friction);
    o.is_target = i == 0;

    bool ok = false;
    for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
      Pose2 p;
      if (i == 0) {
        p.x = center(rng);
        p.y = center(rng);
      } else {
        p.x = ux(rng);
        p.y = uy(rng);
      }
      p.theta = normalize_angle(angle(rng));
      if (!on_table(o.shape, p, zone)) continue;
      const Collider c = object_collider(o.shape, p);
      if (!placement_clear(c, placed, links, params.clearance)) continue;
      o.initial_pose = p;
      placed.push_back(c);
      ok = true;
      break;
    }
    if (!ok) {
      throw SceneError("generate_scene: no collision-free pose for object " +
                       std::to_string(i) + " after " +
                       std::to_string(params.max_attempts) + " attempts");
    }
    scene.objects.push_back(std::move(o));
  }
  validate_scene(scene);
  return scene;
}

SceneSpec perturb_scene(const SceneSpec& scene, UncertaintyLevel level,
                        Rng& rng, const PerturbVariances& vars) {
  SceneSpec out = scene;
  const int mult = level_multiplier(level);
  if (mult == 0) return out;

  // common draw positions across levels: the same underlying normals get
  // scaled by sqrt(mult * variance), so offsets grow monotonically with level
  std::normal_distribution<double> z(0.0, 1.0);
  const double s_trans = std::sqrt(vars.pose_translation * mult);
  const double s_rot = std::sqrt(vars.pose_rotation * mult);
  const double s_dim = std::sqrt(vars.shape_dim * mult);
  const double s_mass = std::sqrt(vars.mass * mult);
  const double s_fric = std::sqrt(vars.friction * mult);

  for (ObjectSpec& o : out.objects) {
    o.initial_pose.x += z(rng) * s_trans;
    o.initial_pose.y += z(rng) * s_trans;
    o.initial_pose.theta =
        normalize_angle(o.initial_pose.theta + z(rng) * s_rot);
    if (auto* c = std::get_if<CircleShape>(&o.shape)) {
      c->radius = std::max(kMinDim, c->radius + z(rng) * s_dim);
    } else {
      auto& b = std::get<BoxShape>(o.shape);
      b.half_x = std::max(kMinDim, b.half_x + z(rng) * s_dim);
      b.half_y = std::max(kMinDim, b.half_y + z(rng) * s_dim);
    }
    if (o.height) o.height = std::max(kMinDim, *o.height + z(rng) * s_dim);
    o.mass = std::max(kMinMass, o.mass + z(rng) * s_mass);
    o.friction = std::max(kMinFriction, o.friction + z(rng) * s_fric);
  }
  return out;
}

}  // namespace cmpc
