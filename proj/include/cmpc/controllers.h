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

#include <cstdint>
#include <functional>
#include <vector>

#include "cmpc/pbsto.h"

namespace cmpc {

enum class ReplanReason {
  kNone,
  kNotPredictedGrasped,
  kStateDeviation,
  kTooFewControls,
};

struct ReplanDecision {
  bool replan = false;
  ReplanReason reason = ReplanReason::kNone;
};

enum class Outcome {
  kGrasped,
  kNonTargetDropped,
  kTargetDropped,
  kTimeout,
};

// One planner invocation. The initial plan is logged with reason kNone;
// every later entry is a genuine re-plan.
struct ReplanEvent {
  int step = 0;  // controls executed before this planner call
  ReplanReason reason = ReplanReason::kNone;
  double wall_s = 0.0;
};

struct ExecutionLog {
  std::vector<Control> executed_controls;
  std::vector<WorldState> observed_states;  // one more entry than controls
  std::vector<ReplanEvent> replan_events;
  Outcome outcome = Outcome::kTimeout;
  double elapsed_s = 0.0;        // after the first move: durations + re-plan walls
  double elapsed_total_s = 0.0;  // elapsed_s + initial plan wall time
  CostBreakdown executed_cost;   // trajectory cost of what actually happened
};

struct ControllerParams {
  PbstoParams pbsto;
  CostWeights weights;
  DeviationWeights deviation;
  NoiseSpec planning_noise;  // rollout noise while planning, normally zero
  int many_iter = 50;        // budget for initial plans
  int few_iter = 1;          // budget for quick re-plans
  double sd_thresh = 0.5;    // state deviation that forces a re-plan
  int horizon = 6;
  double nominal_speed = 0.04;
  double control_duration = 1.0;
  double timeout_s = 120.0;
  bool stop_on_drop = true;  // end the episode as soon as anything falls
};

// Test instrumentation; all members optional.
struct ControllerHooks {
  std::function<void(const Plan&, int executed_steps)> after_step;
  std::function<void(const Plan&)> on_pbsto_call;
};

// n controls of the given duration driving the gripper reference point
// straight at the target centroid at `speed`, rotating evenly to face it.
std::vector<Control> initial_straight_controls(const WorldState& x,
                                               const SceneSpec& scene, int n,
                                               double speed,
                                               double duration = 1.0,
                                               const ControlBounds& bounds = {});

// Re-plan triggers, checked in order: the plan's last predicted state no
// longer grasps, the world drifted from the plan's prediction by more than
// sd_thresh (strictly), or fewer than n_min controls remain.
ReplanDecision needs_replan(const Plan& plan, const WorldState& observed,
                            const ControllerParams& params,
                            const SceneSpec& planning_scene);

// Online re-planning: plan once with many_iter, then interleave executing the
// first control with cheap warm-started re-plans (shifted remainder plus one
// straight step, few_iter) whenever needs_replan fires.
ExecutionLog run_or(ExecutionWorld& world, const SceneSpec& planning_scene,
                    const ControllerParams& params, std::uint64_t seed,
                    const ControllerHooks* hooks = nullptr);

// Baseline: plan from scratch with many_iter and execute the whole sequence
// open loop, repeating until the target is grasped or the episode ends.
ExecutionLog run_nr(ExecutionWorld& world, const SceneSpec& planning_scene,
                    const ControllerParams& params, std::uint64_t seed,
                    const ControllerHooks* hooks = nullptr);

const char* to_string(ReplanReason reason);
const char* to_string(Outcome outcome);

}  // namespace cmpc
