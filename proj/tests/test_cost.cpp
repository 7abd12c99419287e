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

#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "cmpc/cost.h"
#include "cmpc/physics.h"
#include "cmpc/uncertainty.h"
#include "test_scenes.h"

namespace cmpc {
namespace {

using test_util::circle_object;
using test_util::make_scene;

// robot at the origin facing +x, reference point at (0.01, 0)
SceneSpec goal_scene(double target_x, double target_y) {
  return make_scene({circle_object(target_x, target_y, 0.02, true)},
                    RobotState{0.0, 0.0, 0.0, 0.05});
}

TEST_SUITE("cost") {

TEST_CASE("goal term vanishes at the reference point") {
  const SceneSpec scene = goal_scene(0.01, 0.0);
  CHECK(goal_cost(initial_world_state(scene), scene, CostWeights{}) == 0.0);
}

TEST_CASE("goal term combines distance and heading") {
  // target 0.1 m away at bearing 0.2 rad
  const double x = 0.01 + 0.1 * std::cos(0.2);
  const double y = 0.1 * std::sin(0.2);
  const SceneSpec scene = goal_scene(x, y);
  CHECK(goal_cost(initial_world_state(scene), scene, CostWeights{}) ==
        doctest::Approx(0.05).epsilon(1e-9));
}

TEST_CASE("goal term behind the gripper") {
  const SceneSpec scene = goal_scene(0.01 - 0.1, 0.0);
  CHECK(goal_cost(initial_world_state(scene), scene, CostWeights{}) ==
        doctest::Approx(0.01 + kPi * kPi).epsilon(1e-9));
}

TEST_CASE("goal term for a dropped target is the configured constant") {
  const SceneSpec scene = goal_scene(0.1, 0.0);
  WorldState s = initial_world_state(scene);
  s.dropped[0] = 1;
  CHECK(goal_cost(s, scene, CostWeights{}) == 10.0);
}

TEST_CASE("goal term is monotone in distance and heading") {
  const CostWeights w;
  double prev = -1.0;
  for (double d = 0.02; d <= 0.3; d += 0.02) {
    const SceneSpec scene = goal_scene(0.01 + d, 0.0);
    const double g = goal_cost(initial_world_state(scene), scene, w);
    CHECK(g > prev);
    prev = g;
  }
  prev = -1.0;
  for (double phi = 0.0; phi <= 3.1; phi += 0.3) {
    const SceneSpec scene =
        goal_scene(0.01 + 0.1 * std::cos(phi), 0.1 * std::sin(phi));
    const double g = goal_cost(initial_world_state(scene), scene, w);
    CHECK(g > prev);
    prev = g;
  }
}

TEST_CASE("disturbance counts non-target motion only") {
  const SceneSpec scene =
      make_scene({circle_object(0.0, 0.0, 0.02, true),
                  circle_object(0.1, 0.1, 0.02)});
  const WorldState a = initial_world_state(scene);
  const CostWeights w;

  CHECK(disturbance_cost(a, a, scene, w) == 0.0);

  WorldState moved = a;
  moved.objects[1].x += 0.1;
  CHECK(disturbance_cost(a, moved, scene, w) ==
        doctest::Approx(0.01).epsilon(1e-12));

  WorldState target_only = a;
  target_only.objects[0].x += 0.2;
  target_only.objects[0].theta = 1.0;
  CHECK(disturbance_cost(a, target_only, scene, w) == 0.0);

  WorldState spun = a;
  spun.objects[1].theta = 2.0 * kPi;  // full turn wraps to zero
  CHECK(disturbance_cost(a, spun, scene, w) == 0.0);

  WorldState tilted = a;
  tilted.objects[1].theta = 0.5;
  CHECK(disturbance_cost(a, tilted, scene, w) ==
        doctest::Approx(w.w_ang * 0.25).epsilon(1e-12));
}

TEST_CASE("edge term fires outside the safe zone") {
  // safe zone = 0.3 - 0.05 = 0.25 half extent
  const SceneSpec scene =
      make_scene({circle_object(0.0, 0.0, 0.02, true),
                  circle_object(0.1, 0.0, 0.02)});
  const CostWeights w;
  const WorldState inside = initial_world_state(scene);
  CHECK(edge_cost(inside, inside, scene, w) == 0.0);

  WorldState out = inside;
  out.objects[1].x = 0.26;
  CHECK(edge_cost(out, out, scene, w) == 1.0);  // outside, unmoved: e^0

  WorldState out2 = out;
  out2.objects[1].x = out.objects[1].x + 0.001;
  CHECK(edge_cost(out, out2, scene, w) ==
        doctest::Approx(std::exp(1.0)).epsilon(1e-9));

  // centroids on either side of the zone edge
  WorldState near_edge = inside;
  near_edge.objects[1].x = 0.2499;
  CHECK(edge_cost(near_edge, near_edge, scene, w) == 0.0);
  near_edge.objects[1].x = 0.2501;
  CHECK(edge_cost(near_edge, near_edge, scene, w) == 1.0);
}

TEST_CASE("edge term clamps its exponent and prices dropped objects") {
  const SceneSpec scene =
      make_scene({circle_object(0.0, 0.0, 0.02, true),
                  circle_object(0.1, 0.0, 0.02)});
  const CostWeights w;
  WorldState a = initial_world_state(scene);
  a.objects[1].x = 0.26;
  WorldState b = a;
  b.objects[1].x = 0.26 + 1.0;  // would be e^1000 unclamped
  const double clamped = edge_cost(a, b, scene, w);
  CHECK(clamped == doctest::Approx(std::exp(50.0)).epsilon(1e-12));
  CHECK(std::isfinite(clamped));

  WorldState dropped = a;
  dropped.dropped[1] = 1;
  CHECK(edge_cost(a, dropped, scene, w) ==
        doctest::Approx(std::exp(50.0)).epsilon(1e-12));

  // the target is not exempt from the edge term
  WorldState tgt = initial_world_state(scene);
  tgt.objects[0].x = 0.26;
  CHECK(edge_cost(tgt, tgt, scene, w) == 1.0);
}

TEST_CASE("acceleration term oracles") {
  const Control zero{0.0, 0.0, 0.0, 0.0, 1.0};
  Control u = zero;
  u.vx = 0.04;
  CHECK(acceleration_cost(u, u) == 0.0);
  CHECK(acceleration_cost(zero, u) == doctest::Approx(0.0016).epsilon(1e-12));

  Control a = zero;
  Control b = zero;
  b.vx = 0.01;
  b.vy = 0.01;
  CHECK(acceleration_cost(a, b) == doctest::Approx(0.0002).epsilon(1e-12));

  Control g1 = zero;
  g1.vgrip = 0.03;
  CHECK(acceleration_cost(zero, g1) == doctest::Approx(0.0009).epsilon(1e-12));
}

TEST_CASE("trajectory cost with no controls is the weighted goal") {
  const SceneSpec scene = goal_scene(0.11, 0.0);
  const WorldState x0 = initial_world_state(scene);
  const CostWeights w;
  const std::vector<WorldState> states{x0};
  const CostBreakdown c = trajectory_cost({}, states, scene, w);
  CHECK(c.total == doctest::Approx(w.w_g * goal_cost(x0, scene, w))
                       .epsilon(1e-12));
  CHECK(c.disturbance == 0.0);
  CHECK(c.edge == 0.0);
  CHECK(c.acceleration == 0.0);
}

TEST_CASE("motion-free trajectory keeps only the goal term") {
  const SceneSpec scene = goal_scene(0.11, 0.0);
  const WorldState x0 = initial_world_state(scene);
  const CostWeights w;
  const std::vector<Control> controls(3);
  const std::vector<WorldState> states(4, x0);
  const CostBreakdown c = trajectory_cost(controls, states, scene, w);
  CHECK(c.total ==
        doctest::Approx(w.w_g * goal_cost(x0, scene, w)).epsilon(1e-12));
  CHECK(c.acceleration == 0.0);
}

TEST_CASE("one-step hand-computed total") {
  // target lands 0.1 m dead ahead; object A moves 0.1 m inside the zone;
  // object B sits outside the zone and creeps 0.001 m
  SceneSpec scene = make_scene({circle_object(0.11, 0.0, 0.02, true),
                                circle_object(0.0, 0.1, 0.02),
                                circle_object(0.26, 0.2, 0.02)},
                               RobotState{0.0, 0.0, 0.0, 0.05});
  const CostWeights w;
  WorldState x0 = initial_world_state(scene);
  WorldState x1 = x0;
  x1.objects[1].x += 0.1;
  x1.objects[2].x += 0.001;

  Control u;
  u.vx = 0.04;
  const std::vector<Control> controls{u};
  const std::vector<WorldState> states{x0, x1};
  const CostBreakdown c = trajectory_cost(controls, states, scene, w);

  CHECK(c.goal == doctest::Approx(0.01).epsilon(1e-9));
  CHECK(c.disturbance == doctest::Approx(0.010001).epsilon(1e-12));
  CHECK(c.edge == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
  CHECK(c.acceleration == doctest::Approx(0.0016).epsilon(1e-12));

  const double expected = 10000.0 * 0.01 + 800.0 * 0.010001 +
                          1.0 * std::exp(1.0) + 0.1 * 0.0016;
  CHECK(c.total == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("trajectory cost rejects mismatched lengths") {
  const SceneSpec scene = goal_scene(0.11, 0.0);
  const WorldState x0 = initial_world_state(scene);
  const std::vector<Control> controls(2);
  const std::vector<WorldState> states(2, x0);
  CHECK_THROWS_AS(trajectory_cost(controls, states, scene, CostWeights{}),
                  std::invalid_argument);
}

TEST_CASE("prefix cost matches the batch evaluation at every step") {
  SceneGenParams gen;
  gen.object_count = 4;
  Rng scene_rng(91);
  const SceneSpec scene = generate_scene(gen, scene_rng);
  const CostWeights w;

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> vel(-0.05, 0.05);
  std::vector<Control> controls;
  for (int t = 0; t < 6; ++t) {
    Control u;
    u.vx = vel(rng);
    u.vy = vel(rng);
    u.vrot = vel(rng) * 4.0;
    controls.push_back(clamp_control(u, ControlBounds{}));
  }
  const std::vector<WorldState> states =
      rollout(initial_world_state(scene), controls, scene);
  REQUIRE(states.size() == controls.size() + 1);

  PrefixCost prefix(scene, w);
  for (std::size_t t = 0; t < controls.size(); ++t) {
    prefix.add_step(controls[t], states[t], states[t + 1]);
    const std::span<const Control> head(controls.data(), t + 1);
    const std::span<const WorldState> seen(states.data(), t + 2);
    const CostBreakdown batch = trajectory_cost(head, seen, scene, w);
    const CostBreakdown inc = prefix.breakdown(states[t + 1]);
    CHECK(inc.total == doctest::Approx(batch.total).epsilon(1e-12));
    CHECK(inc.goal == doctest::Approx(batch.goal).epsilon(1e-12));
    CHECK(inc.disturbance ==
          doctest::Approx(batch.disturbance).epsilon(1e-12));
    CHECK(inc.edge == doctest::Approx(batch.edge).epsilon(1e-12));
    CHECK(inc.acceleration ==
          doctest::Approx(batch.acceleration).epsilon(1e-12));
    CHECK(prefix.total_with_goal(states[t + 1]) ==
          doctest::Approx(batch.total).epsilon(1e-12));
  }
  CHECK(prefix.steps() == static_cast<int>(controls.size()));
  CHECK(prefix.per_step().size() == controls.size());
}

TEST_CASE("disturbance and acceleration are translation invariant") {
  const SceneSpec scene =
      make_scene({circle_object(0.0, 0.0, 0.02, true),
                  circle_object(0.1, 0.0, 0.02)});
  const CostWeights w;
  WorldState a = initial_world_state(scene);
  WorldState b = a;
  b.objects[1].x += 0.07;
  b.objects[1].theta = 0.4;
  const double base = disturbance_cost(a, b, scene, w);

  for (auto* s : {&a, &b}) {
    s->robot.x += 0.5;
    s->robot.y -= 0.3;
    for (auto& p : s->objects) {
      p.x += 0.5;
      p.y -= 0.3;
    }
  }
  CHECK(disturbance_cost(a, b, scene, w) ==
        doctest::Approx(base).epsilon(1e-12));
}

}  // TEST_SUITE

}  // namespace
}  // namespace cmpc
