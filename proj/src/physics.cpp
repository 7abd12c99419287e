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

#include "cmpc/physics.h"

#include <algorithm>
#include <cmath>
#include <random>

namespace cmpc {
namespace {

std::vector<Collider> object_colliders(const WorldState& state,
                                       const SceneSpec& scene) {
  std::vector<Collider> cols;
  cols.reserve(state.objects.size());
  for (std::size_t i = 0; i < state.objects.size(); ++i) {
    cols.push_back(object_collider(scene.objects[i].shape, state.objects[i]));
  }
  return cols;
}

void displace(Pose2& p, Vec2 d) {
  p.x += d.x;
  p.y += d.y;
}

// One Gauss-Seidel pass: links push objects, overlapping objects split the
// separation. Returns the largest depth observed before any correction.
double projection_sweep(WorldState& x, const SceneSpec& scene,
                        const std::array<ObbCol, 3>& links,
                        std::vector<Collider>& cols) {
  const int n = static_cast<int>(x.objects.size());
  double max_depth = 0.0;
  for (int i = 0; i < n; ++i) {
    if (x.dropped[i]) continue;
    const double gamma = push_factor(scene.objects[i].friction);
    for (const ObbCol& link : links) {
      if (auto m = collide(link, cols[i])) {
        max_depth = std::max(max_depth, m->depth);
        displace(x.objects[i], gamma * m->depth * m->normal);
        cols[i] = object_collider(scene.objects[i].shape, x.objects[i]);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (x.dropped[i]) continue;
    for (int j = i + 1; j < n; ++j) {
      if (x.dropped[j]) continue;
      if (auto m = collide(cols[i], cols[j])) {
        max_depth = std::max(max_depth, m->depth);
        const double gi = push_factor(scene.objects[i].friction);
        const double gj = push_factor(scene.objects[j].friction);
        displace(x.objects[i], (-0.5 * gi * m->depth) * m->normal);
        displace(x.objects[j], (0.5 * gj * m->depth) * m->normal);
        cols[i] = object_collider(scene.objects[i].shape, x.objects[i]);
        cols[j] = object_collider(scene.objects[j].shape, x.objects[j]);
      }
    }
  }
  return max_depth;
}

// Runs sweeps until the depth seen during a whole pass drops below tolerance,
// then reports the exact residual overlap.
double resolve_contacts(WorldState& x, const SceneSpec& scene) {
  const auto links = robot_links(x.robot, scene.robot);
  auto cols = object_colliders(x, scene);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (projection_sweep(x, scene, links, cols) <= kConvergeTol) break;
  }
  return max_penetration(x, scene);
}

// Deepest remaining contact that involves an object, if any.
const Contact* deepest_object_contact(const std::vector<Contact>& contacts) {
  const Contact* worst = nullptr;
  for (const Contact& c : contacts) {
    if (c.body_b < 3) continue;
    if (worst == nullptr || c.depth > worst->depth) worst = &c;
  }
  return worst;
}

}  // namespace

double draw_velocity_noise(Rng& rng, double variance) {
  if (variance <= 0.0) return 0.0;
  std::normal_distribution<double> d(0.0, std::sqrt(variance));
  return d(rng);
}

std::vector<Contact> detect_contacts(const WorldState& state,
                                     const SceneSpec& scene) {
  std::vector<Contact> contacts;
  const auto links = robot_links(state.robot, scene.robot);
  const auto cols = object_colliders(state, scene);
  const int n = static_cast<int>(state.objects.size());
  for (int i = 0; i < n; ++i) {
    if (state.dropped[i]) continue;
    for (int l = 0; l < 3; ++l) {
      if (auto m = collide(Collider{links[l]}, cols[i])) {
        const Vec2 at{state.objects[i].x, state.objects[i].y};
        contacts.push_back({l, 3 + i, at - (0.5 * m->depth) * m->normal,
                            m->normal, m->depth});
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (state.dropped[i]) continue;
    for (int j = i + 1; j < n; ++j) {
      if (state.dropped[j]) continue;
      if (auto m = collide(cols[i], cols[j])) {
        const Vec2 mid =
            0.5 * (Vec2{state.objects[i].x, state.objects[i].y} +
                   Vec2{state.objects[j].x, state.objects[j].y});
        contacts.push_back({3 + i, 3 + j, mid, m->normal, m->depth});
      }
    }
  }
  return contacts;
}

double max_penetration(const WorldState& state, const SceneSpec& scene) {
  double worst = 0.0;
  for (const Contact& c : detect_contacts(state, scene)) {
    worst = std::max(worst, c.depth);
  }
  return worst;
}

WorldState step(const WorldState& state, const Control& u,
                const SceneSpec& scene, const NoiseSpec& noise, Rng* rng) {
  WorldState x = state;
  const double dt = u.duration / kSubsteps;
  const bool noisy = rng != nullptr && !noise.zero();
  const int n = static_cast<int>(x.objects.size());

  // scratch for the noisy path: per-object draws and pre-contact poses
  std::vector<double> draws;
  std::vector<Pose2> before;
  if (noisy) {
    draws.resize(static_cast<std::size_t>(3 * n));
    before.resize(static_cast<std::size_t>(n));
  }

  for (int sub = 0; sub < kSubsteps; ++sub) {
    const double grip_before = x.robot.grip;
    x.robot.x += u.vx * dt;
    x.robot.y += u.vy * dt;
    x.robot.rot = normalize_angle(x.robot.rot + u.vrot * dt);
    x.robot.grip = std::clamp(x.robot.grip + u.vgrip * dt,
                              scene.robot.grip_min, scene.robot.grip_max);

    if (noisy) {
      // fixed draw order keeps the stream independent of drop flags and
      // contact outcomes: robot first, then three draws per object; each
      // draw is a velocity held for one substep, so it scales by dt
      const double rx = draw_velocity_noise(*rng, noise.beta_linear) * dt;
      const double ry = draw_velocity_noise(*rng, noise.beta_linear) * dt;
      const double rr = draw_velocity_noise(*rng, noise.beta_angular) * dt;
      const double rg = draw_velocity_noise(*rng, noise.beta_linear) * dt;
      if (noise.apply_to_robot) {
        x.robot.x += rx;
        x.robot.y += ry;
        x.robot.rot = normalize_angle(x.robot.rot + rr);
        x.robot.grip = std::clamp(x.robot.grip + rg, scene.robot.grip_min,
                                  scene.robot.grip_max);
      }
      for (int i = 0; i < n; ++i) {
        const std::size_t k = 3 * static_cast<std::size_t>(i);
        draws[k] = draw_velocity_noise(*rng, noise.beta_linear) * dt;
        draws[k + 1] = draw_velocity_noise(*rng, noise.beta_linear) * dt;
        draws[k + 2] = draw_velocity_noise(*rng, noise.beta_angular) * dt;
        before[static_cast<std::size_t>(i)] = x.objects[i];
      }
    }

    double residual = resolve_contacts(x, scene);

    // a gripper that cannot make room stalls instead of tunneling
    if (residual > kStallTol && x.robot.grip != grip_before) {
      x.robot.grip = grip_before;
      residual = resolve_contacts(x, scene);
    }

    // last resort against jammed configurations: eject the deepest object
    // forward out of the gripper
    for (int pass = 0; pass < 5 && residual > kEscapeTol; ++pass) {
      const auto contacts = detect_contacts(x, scene);
      const Contact* worst = deepest_object_contact(contacts);
      if (worst == nullptr) break;
      const Vec2 fwd = gripper_forward_axis(x.robot);
      displace(x.objects[worst->body_b - 3], (worst->depth + 1e-3) * fwd);
      residual = resolve_contacts(x, scene);
    }

    if (noisy) {
      // noise perturbs velocities, and in a quasi-static world only bodies
      // the push model displaced this substep have any; everything else
      // stays exactly where friction holds it
      bool any_applied = false;
      for (int i = 0; i < n; ++i) {
        if (x.dropped[i]) continue;
        const Pose2& prev = before[static_cast<std::size_t>(i)];
        if (x.objects[i].x == prev.x && x.objects[i].y == prev.y) continue;
        const std::size_t k = 3 * static_cast<std::size_t>(i);
        x.objects[i].x += draws[k];
        x.objects[i].y += draws[k + 1];
        x.objects[i].theta = normalize_angle(x.objects[i].theta + draws[k + 2]);
        any_applied = true;
      }
      if (any_applied) resolve_contacts(x, scene);
    }

    for (int i = 0; i < n; ++i) {
      if (x.dropped[i]) continue;
      if (std::abs(x.objects[i].x) > scene.table.half_x ||
          std::abs(x.objects[i].y) > scene.table.half_y) {
        x.dropped[i] = 1;
      }
    }
  }
  return x;
}

std::vector<WorldState> rollout(const WorldState& x0,
                                std::span<const Control> controls,
                                const SceneSpec& scene, const NoiseSpec& noise,
                                Rng* rng, const StepCallback& callback) {
  std::vector<WorldState> states;
  states.reserve(controls.size() + 1);
  states.push_back(x0);
  for (std::size_t t = 0; t < controls.size(); ++t) {
    states.push_back(step(states.back(), controls[t], scene, noise, rng));
    if (callback &&
        callback(static_cast<int>(t), states[states.size() - 2],
                 states.back())) {
      break;
    }
  }
  return states;
}

bool is_grasped(const WorldState& state, const SceneSpec& scene) {
  const int ti = scene.target_index();
  if (state.dropped[ti]) return false;
  const Vec2 base{state.robot.x, state.robot.y};
  const Vec2 fwd = gripper_forward_axis(state.robot);
  const Vec2 d = Vec2{state.objects[ti].x, state.objects[ti].y} - base;
  const double lx = dot(d, fwd);
  const double ly = dot(d, perp(fwd));
  const RobotGeometry& g = scene.robot;
  return lx >= g.palm_half_depth &&
         lx <= g.palm_half_depth + 2.0 * g.finger_half_length &&
         std::abs(ly) <= state.robot.grip;
}

bool dropped_any_nontarget(const WorldState& state, const SceneSpec& scene) {
  const int ti = scene.target_index();
  for (int i = 0; i < static_cast<int>(state.dropped.size()); ++i) {
    if (i != ti && state.dropped[i]) return true;
  }
  return false;
}

}  // namespace cmpc
