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

#include <functional>
#include <span>
#include <vector>

#include "cmpc/rng.h"
#include "cmpc/world.h"

namespace cmpc {

// Quasi-static pushing integrator: the gripper is kinematic, objects are
// displaced by position projection while pushed and stay put otherwise.
inline constexpr int kSubsteps = 10;            // per control step
inline constexpr int kMaxSweeps = 20;           // projection sweeps per substep
inline constexpr double kConvergeTol = 1e-7;    // m, sweep convergence
inline constexpr double kStallTol = 1e-4;       // m, grip blockage threshold
inline constexpr double kEscapeTol = 5e-4;      // m, last-resort projection
inline constexpr double kPushRefFriction = 0.4;
inline constexpr double kPushFactorMin = 0.25;

// Fraction of a penetration transmitted to an object per sweep; high-friction
// objects absorb less motion per sweep and therefore trail the pusher.
inline double push_factor(double friction) {
  const double f = kPushRefFriction / friction;
  return f < kPushFactorMin ? kPushFactorMin : (f > 1.0 ? 1.0 : f);
}

// Zero-mean velocity noise injected into every moving body each substep.
// The robot is moving whenever it is commanded; an object is moving only in
// substeps where the push model displaced it — bodies at rest have no
// velocity to perturb, so they stay exactly put. Values are variances in
// (m/s)^2 resp. (rad/s)^2; each draw is a velocity held for one substep, so
// it adds the displacement draw * substep_duration.
struct NoiseSpec {
  double beta_linear = 0.0;
  double beta_angular = 0.0;
  bool apply_to_robot = true;

  bool zero() const { return beta_linear <= 0.0 && beta_angular <= 0.0; }
};

// One N(0, variance) velocity draw; 0 when variance <= 0.
double draw_velocity_noise(Rng& rng, double variance);

// Diagnostic contact record. Body ids: 0..2 are palm/left/right finger,
// 3 + i is object i. normal is unit and points from body_a to body_b.
struct Contact {
  int body_a = 0;
  int body_b = 0;
  Vec2 point;
  Vec2 normal;
  double depth = 0.0;
};

std::vector<Contact> detect_contacts(const WorldState& state,
                                     const SceneSpec& scene);

// Max pairwise overlap between any two collidable bodies, 0 when clean.
double max_penetration(const WorldState& state, const SceneSpec& scene);

// Advances the world by one control step. `rng` is only touched when the
// noise spec is non-zero. Objects whose centroid leaves the table are marked
// dropped, keep their last pose and stop colliding.
WorldState step(const WorldState& state, const Control& u,
                const SceneSpec& scene, const NoiseSpec& noise = {},
                Rng* rng = nullptr);

// Called after each step with (t, x_t, x_{t+1}); returning true truncates the
// rollout right there.
using StepCallback =
    std::function<bool(int, const WorldState&, const WorldState&)>;

// Applies the controls in sequence; returns states[0..n] with states[0] = x0.
std::vector<WorldState> rollout(const WorldState& x0,
                                std::span<const Control> controls,
                                const SceneSpec& scene,
                                const NoiseSpec& noise = {},
                                Rng* rng = nullptr,
                                const StepCallback& callback = {});

// True when the target centroid lies in the closed region between the finger
// inner faces, from the palm face to the fingertips, and is still on the
// table.
bool is_grasped(const WorldState& state, const SceneSpec& scene);

bool dropped_any_nontarget(const WorldState& state, const SceneSpec& scene);

// A live world that owns its state and noise stream. Planning rolls its own
// copies through step(); this is the thing controllers execute against.
class ExecutionWorld {
 public:
  ExecutionWorld(SceneSpec scene, NoiseSpec noise, std::uint64_t seed)
      : scene_(std::move(scene)),
        noise_(noise),
        rng_(seed),
        state_(initial_world_state(scene_)) {}

  const WorldState& observe() const { return state_; }
  void apply(const Control& u) {
    state_ = step(state_, u, scene_, noise_, &rng_);
  }
  const SceneSpec& scene() const { return scene_; }
  void set_state(WorldState s) { state_ = std::move(s); }

 private:
  SceneSpec scene_;
  NoiseSpec noise_;
  Rng rng_;
  WorldState state_;
};

}  // namespace cmpc
