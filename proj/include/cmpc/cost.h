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

#include <span>

#include "cmpc/world.h"

namespace cmpc {

struct CostWeights {
  double w_g = 10000.0;  // terminal goal term
  double w_phi = 1.0;    // heading part of the goal term
  double w_d = 800.0;    // clutter disturbance
  double w_e = 1.0;      // table-edge term
  double w_a = 0.1;      // control smoothness
  double k = 1000.0;     // exponent gain of the edge term
  double exp_clamp = 50.0;
  double w_ang = 0.05;   // angle weight inside the disturbance term
  double dropped_target_goal = 10.0;  // goal cost when the target fell off
};

// Squared distance from the gripper reference point to the target centroid
// plus the weighted squared heading error (angle in [0, pi] between the
// forward axis and the bearing to the target). Unweighted by w_g.
double goal_cost(const WorldState& x, const SceneSpec& scene,
                 const CostWeights& w);

// Sum of squared pose changes of every non-target object between consecutive
// states; angles wrapped and scaled by w_ang. Unweighted by w_d.
double disturbance_cost(const WorldState& x_t, const WorldState& x_next,
                        const SceneSpec& scene, const CostWeights& w);

// exp(min(k * moved_distance, exp_clamp)) summed over objects that sit
// outside the safe zone after the step; objects already off the table
// contribute exp(exp_clamp). Unweighted by w_e.
double edge_cost(const WorldState& x_t, const WorldState& x_next,
                 const SceneSpec& scene, const CostWeights& w);

// Squared Euclidean change across the four velocity components.
double acceleration_cost(const Control& u_prev, const Control& u);

// Full trajectory cost: w_g * goal(x_n) + sum_t of the weighted running
// terms, with the control before the first step taken as zero.
CostBreakdown trajectory_cost(std::span<const Control> controls,
                              std::span<const WorldState> states,
                              const SceneSpec& scene, const CostWeights& w);

// Incremental evaluation of the same cost, one executed step at a time. After
// feeding steps 0..n-1, total_with_goal(states[n]) equals the trajectory cost.
class PrefixCost {
 public:
  PrefixCost(const SceneSpec& scene, const CostWeights& w);

  void add_step(const Control& u, const WorldState& x_t,
                const WorldState& x_next);

  double total_with_goal(const WorldState& x_last) const;
  CostBreakdown breakdown(const WorldState& x_last) const;

  const std::vector<CostBreakdown>& per_step() const { return per_step_; }
  int steps() const { return steps_; }

 private:
  const SceneSpec* scene_;
  const CostWeights* w_;
  Control u_prev_{0.0, 0.0, 0.0, 0.0, 0.0};
  double acc_ = 0.0;
  double dist_ = 0.0;
  double edge_ = 0.0;
  double running_weighted_ = 0.0;
  int steps_ = 0;
  std::vector<CostBreakdown> per_step_;
};

}  // namespace cmpc
