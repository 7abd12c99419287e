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

#include "cmpc/controllers.h"

#include <chrono>
#include <cmath>
#include <utility>

namespace cmpc {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Episode bookkeeping shared by both controllers.
struct Episode {
  ExecutionLog log;
  double moved_s = 0.0;    // control durations + re-plan walls
  double initial_wall = 0.0;
  int plan_calls = 0;

  double total_elapsed() const { return moved_s + initial_wall; }

  void finish(const ExecutionWorld& world, const CostWeights& weights) {
    log.elapsed_s = moved_s;
    log.elapsed_total_s = total_elapsed();
    log.executed_cost =
        trajectory_cost(log.executed_controls, log.observed_states,
                        world.scene(), weights);
  }
};

Plan timed_optimize(const WorldState& x, const std::vector<Control>& init,
                    const SceneSpec& scene, const ControllerParams& params,
                    int i_max, std::uint64_t seed, Episode& ep,
                    ReplanReason reason, int executed_steps,
                    const ControllerHooks* hooks) {
  PbstoParams pb = params.pbsto;
  pb.i_max = i_max;
  const auto t0 = Clock::now();
  Plan plan = optimize(x, init, scene, params.weights, pb,
                       params.planning_noise,
                       mix_seed(seed, static_cast<std::uint64_t>(ep.plan_calls)));
  const double wall = seconds_since(t0);
  ep.log.replan_events.push_back({executed_steps, reason, wall});
  if (ep.plan_calls == 0) {
    ep.initial_wall = wall;
  } else {
    ep.moved_s += wall;
  }
  ++ep.plan_calls;
  if (hooks != nullptr && hooks->on_pbsto_call) hooks->on_pbsto_call(plan);
  return plan;
}

// Applies one control and runs the terminal checks. Returns true when the
// episode is over (outcome already set).
bool execute_control(ExecutionWorld& world, const Control& u, const Plan& plan,
                     const ControllerParams& params, Episode& ep,
                     const ControllerHooks* hooks) {
  world.apply(u);
  const WorldState& x = world.observe();
  ep.log.executed_controls.push_back(u);
  ep.log.observed_states.push_back(x);
  ep.moved_s += u.duration;
  if (hooks != nullptr && hooks->after_step) {
    hooks->after_step(plan,
                      static_cast<int>(ep.log.executed_controls.size()));
  }
  // terminal checks in precedence order: losing the target or (when enabled)
  // any other object ends the run; a grasp only counts as success when it
  // lands inside the time budget and nothing else left the table
  if (x.dropped[world.scene().target_index()]) {
    ep.log.outcome = Outcome::kTargetDropped;
    return true;
  }
  const bool lost_other = dropped_any_nontarget(x, world.scene());
  if (params.stop_on_drop && lost_other) {
    ep.log.outcome = Outcome::kNonTargetDropped;
    return true;
  }
  if (ep.total_elapsed() > params.timeout_s) {
    ep.log.outcome = Outcome::kTimeout;
    return true;
  }
  if (is_grasped(x, world.scene())) {
    ep.log.outcome =
        lost_other ? Outcome::kNonTargetDropped : Outcome::kGrasped;
    return true;
  }
  return false;
}

}  // namespace

std::vector<Control> initial_straight_controls(const WorldState& x,
                                               const SceneSpec& scene, int n,
                                               double speed, double duration,
                                               const ControlBounds& bounds) {
  std::vector<Control> controls;
  if (n <= 0) return controls;
  const int ti = scene.target_index();
  const Vec2 ref = gripper_reference_point(x.robot, scene.robot);
  const Vec2 d = Vec2{x.objects[ti].x, x.objects[ti].y} - ref;
  const double dist = norm(d);
  const double span = static_cast<double>(n) * duration;
  Control u;
  u.duration = duration;
  if (dist > 1e-12) {
    const double v = std::min(speed, dist / span);
    u.vx = v * d.x / dist;
    u.vy = v * d.y / dist;
    const double bearing = std::atan2(d.y, d.x);
    u.vrot = normalize_angle(bearing - x.robot.rot) / span;
  }
  u = clamp_control(u, bounds);
  controls.assign(static_cast<std::size_t>(n), u);
  return controls;
}

ReplanDecision needs_replan(const Plan& plan, const WorldState& observed,
                            const ControllerParams& params,
                            const SceneSpec& planning_scene) {
  if (plan.predicted_states.empty() ||
      !is_grasped(plan.predicted_states.back(), planning_scene)) {
    return {true, ReplanReason::kNotPredictedGrasped};
  }
  if (state_deviation(plan.predicted_states.front(), observed,
                      params.deviation) > params.sd_thresh) {
    return {true, ReplanReason::kStateDeviation};
  }
  if (static_cast<int>(plan.controls.size()) < params.pbsto.n_min) {
    return {true, ReplanReason::kTooFewControls};
  }
  return {};
}

ExecutionLog run_or(ExecutionWorld& world, const SceneSpec& planning_scene,
                    const ControllerParams& params, std::uint64_t seed,
                    const ControllerHooks* hooks) {
  Episode ep;
  WorldState x = world.observe();
  ep.log.observed_states.push_back(x);
  if (is_grasped(x, world.scene())) {
    ep.log.outcome = Outcome::kGrasped;
    ep.finish(world, params.weights);
    return ep.log;
  }

  Plan plan = timed_optimize(
      x,
      initial_straight_controls(x, planning_scene, params.horizon,
                                params.nominal_speed, params.control_duration,
                                params.pbsto.bounds),
      planning_scene, params, params.many_iter, seed, ep, ReplanReason::kNone,
      0, hooks);

  for (;;) {
    if (plan.controls.empty()) {
      ep.log.outcome = Outcome::kTimeout;
      break;
    }
    if (execute_control(world, plan.controls.front(), plan, params, ep,
                        hooks)) {
      break;
    }
    x = world.observe();

    plan.controls.erase(plan.controls.begin());
    plan.predicted_states.erase(plan.predicted_states.begin());
    if (!plan.per_step_costs.empty()) {
      plan.per_step_costs.erase(plan.per_step_costs.begin());
    }

    const ReplanDecision dec =
        needs_replan(plan, x, params, planning_scene);
    if (dec.replan) {
      std::vector<Control> warm = plan.controls;
      const WorldState& tail = plan.predicted_states.empty()
                                   ? x
                                   : plan.predicted_states.back();
      const std::vector<Control> extra = initial_straight_controls(
          tail, planning_scene, 1, params.nominal_speed,
          params.control_duration, params.pbsto.bounds);
      warm.insert(warm.end(), extra.begin(), extra.end());
      plan = timed_optimize(
          x, warm, planning_scene, params, params.few_iter, seed, ep,
          dec.reason, static_cast<int>(ep.log.executed_controls.size()),
          hooks);
      if (ep.total_elapsed() > params.timeout_s) {
        ep.log.outcome = Outcome::kTimeout;
        break;
      }
    }
  }
  ep.finish(world, params.weights);
  return ep.log;
}

ExecutionLog run_nr(ExecutionWorld& world, const SceneSpec& planning_scene,
                    const ControllerParams& params, std::uint64_t seed,
                    const ControllerHooks* hooks) {
  Episode ep;
  WorldState x = world.observe();
  ep.log.observed_states.push_back(x);
  if (is_grasped(x, world.scene())) {
    ep.log.outcome = Outcome::kGrasped;
    ep.finish(world, params.weights);
    return ep.log;
  }

  for (bool done = false; !done;) {
    const ReplanReason reason = ep.plan_calls == 0
                                    ? ReplanReason::kNone
                                    : ReplanReason::kNotPredictedGrasped;
    const Plan plan = timed_optimize(
        x,
        initial_straight_controls(x, planning_scene, params.horizon,
                                  params.nominal_speed,
                                  params.control_duration,
                                  params.pbsto.bounds),
        planning_scene, params, params.many_iter, seed, ep, reason,
        static_cast<int>(ep.log.executed_controls.size()), hooks);
    if (ep.total_elapsed() > params.timeout_s || plan.controls.empty()) {
      ep.log.outcome = Outcome::kTimeout;
      break;
    }
    for (const Control& u : plan.controls) {
      if (execute_control(world, u, plan, params, ep, hooks)) {
        done = true;
        break;
      }
    }
    x = world.observe();
  }
  ep.finish(world, params.weights);
  return ep.log;
}

const char* to_string(ReplanReason reason) {
  switch (reason) {
    case ReplanReason::kNone: return "none";
    case ReplanReason::kNotPredictedGrasped: return "not_predicted_grasped";
    case ReplanReason::kStateDeviation: return "state_deviation";
    case ReplanReason::kTooFewControls: return "too_few_controls";
  }
  return "none";
}

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kGrasped: return "grasped";
    case Outcome::kNonTargetDropped: return "non_target_dropped";
    case Outcome::kTargetDropped: return "target_dropped";
    case Outcome::kTimeout: return "timeout";
  }
  return "timeout";
}

}  // namespace cmpc
