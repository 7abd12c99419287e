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

#include "cmpc/cost.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cmpc {

double goal_cost(const WorldState& x, const SceneSpec& scene,
                 const CostWeights& w) {
  const int ti = scene.target_index();
  if (x.dropped[ti]) return w.dropped_target_goal;
  const Vec2 ref = gripper_reference_point(x.robot, scene.robot);
  const Vec2 d = Vec2{x.objects[ti].x, x.objects[ti].y} - ref;
  const double dist2 = norm2(d);
  if (dist2 < 1e-18) return 0.0;  // on the reference point: aligned by fiat
  const double dist = std::sqrt(dist2);
  const double c =
      std::clamp(dot(gripper_forward_axis(x.robot), d) / dist, -1.0, 1.0);
  const double phi = std::acos(c);
  return dist2 + w.w_phi * phi * phi;
}

double disturbance_cost(const WorldState& x_t, const WorldState& x_next,
                        const SceneSpec& scene, const CostWeights& w) {
  const int ti = scene.target_index();
  double s = 0.0;
  for (int i = 0; i < static_cast<int>(x_t.objects.size()); ++i) {
    if (i == ti) continue;
    const double dx = x_next.objects[i].x - x_t.objects[i].x;
    const double dy = x_next.objects[i].y - x_t.objects[i].y;
    const double dth =
        normalize_angle(x_next.objects[i].theta - x_t.objects[i].theta);
    s += dx * dx + dy * dy + w.w_ang * dth * dth;
  }
  return s;
}

double edge_cost(const WorldState& x_t, const WorldState& x_next,
                 const SceneSpec& scene, const CostWeights& w) {
  const double zone_x = scene.table.half_x - scene.table.safe_margin;
  const double zone_y = scene.table.half_y - scene.table.safe_margin;
  double s = 0.0;
  for (int i = 0; i < static_cast<int>(x_t.objects.size()); ++i) {
    if (x_next.dropped[i]) {
      s += std::exp(w.exp_clamp);
      continue;
    }
    const Pose2& p = x_next.objects[i];
    if (std::abs(p.x) <= zone_x && std::abs(p.y) <= zone_y) continue;
    const double dx = p.x - x_t.objects[i].x;
    const double dy = p.y - x_t.objects[i].y;
    const double moved = std::sqrt(dx * dx + dy * dy);
    s += std::exp(std::min(w.k * moved, w.exp_clamp));
  }
  return s;
}

double acceleration_cost(const Control& u_prev, const Control& u) {
  const double dx = u.vx - u_prev.vx;
  const double dy = u.vy - u_prev.vy;
  const double dr = u.vrot - u_prev.vrot;
  const double dg = u.vgrip - u_prev.vgrip;
  return dx * dx + dy * dy + dr * dr + dg * dg;
}

CostBreakdown trajectory_cost(std::span<const Control> controls,
                              std::span<const WorldState> states,
                              const SceneSpec& scene, const CostWeights& w) {
  if (states.size() != controls.size() + 1) {
    throw std::invalid_argument(
        "trajectory_cost: need exactly one more state than controls");
  }
  CostBreakdown b;
  Control u_prev{0.0, 0.0, 0.0, 0.0, 0.0};
  for (std::size_t t = 0; t < controls.size(); ++t) {
    b.acceleration += acceleration_cost(u_prev, controls[t]);
    b.disturbance += disturbance_cost(states[t], states[t + 1], scene, w);
    b.edge += edge_cost(states[t], states[t + 1], scene, w);
    u_prev = controls[t];
  }
  b.goal = goal_cost(states.back(), scene, w);
  b.total = w.w_g * b.goal + w.w_a * b.acceleration + w.w_d * b.disturbance +
            w.w_e * b.edge;
  return b;
}

PrefixCost::PrefixCost(const SceneSpec& scene, const CostWeights& w)
    : scene_(&scene), w_(&w) {}

void PrefixCost::add_step(const Control& u, const WorldState& x_t,
                          const WorldState& x_next) {
  const double a = acceleration_cost(u_prev_, u);
  const double d = disturbance_cost(x_t, x_next, *scene_, *w_);
  const double e = edge_cost(x_t, x_next, *scene_, *w_);
  acc_ += a;
  dist_ += d;
  edge_ += e;
  const double weighted = w_->w_a * a + w_->w_d * d + w_->w_e * e;
  running_weighted_ += weighted;
  per_step_.push_back(
      {goal_cost(x_next, *scene_, *w_), d, e, a, weighted});
  u_prev_ = u;
  ++steps_;
}

double PrefixCost::total_with_goal(const WorldState& x_last) const {
  return running_weighted_ + w_->w_g * goal_cost(x_last, *scene_, *w_);
}

CostBreakdown PrefixCost::breakdown(const WorldState& x_last) const {
  CostBreakdown b;
  b.goal = goal_cost(x_last, *scene_, *w_);
  b.disturbance = dist_;
  b.edge = edge_;
  b.acceleration = acc_;
  b.total = running_weighted_ + w_->w_g * b.goal;
  return b;
}

}  // namespace cmpc
