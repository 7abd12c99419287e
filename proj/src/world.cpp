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

#include "cmpc/world.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cmpc {

using nlohmann::json;

int SceneSpec::target_index() const {
  int idx = -1;
  for (int i = 0; i < static_cast<int>(objects.size()); ++i) {
    if (objects[i].is_target) {
      if (idx >= 0) throw SceneError("scene has more than one target object");
      idx = i;
    }
  }
  if (idx < 0) throw SceneError("scene has no target object");
  return idx;
}

bool WorldState::operator==(const WorldState& o) const {
  if (robot.x != o.robot.x || robot.y != o.robot.y ||
      robot.rot != o.robot.rot || robot.grip != o.robot.grip) {
    return false;
  }
  if (objects.size() != o.objects.size() || dropped != o.dropped) return false;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (objects[i].x != o.objects[i].x || objects[i].y != o.objects[i].y ||
        objects[i].theta != o.objects[i].theta) {
      return false;
    }
  }
  return true;
}

Control clamp_control(Control u, const ControlBounds& b) {
  const double speed = std::hypot(u.vx, u.vy);
  if (speed > b.max_translation && speed > 0.0) {
    const double s = b.max_translation / speed;
    u.vx *= s;
    u.vy *= s;
  }
  u.vrot = std::clamp(u.vrot, -b.max_rotation, b.max_rotation);
  u.vgrip = std::clamp(u.vgrip, -b.max_grip, b.max_grip);
  return u;
}

double state_deviation(const WorldState& a, const WorldState& b,
                       const DeviationWeights& w) {
  if (a.objects.size() != b.objects.size()) {
    throw std::invalid_argument("state_deviation: mismatched object counts");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.objects.size(); ++i) {
    const double dx = a.objects[i].x - b.objects[i].x;
    const double dy = a.objects[i].y - b.objects[i].y;
    const double dth = normalize_angle(a.objects[i].theta - b.objects[i].theta);
    s += dx * dx + dy * dy + w.w_ang * dth * dth;
  }
  if (w.include_robot) {
    const double dx = a.robot.x - b.robot.x;
    const double dy = a.robot.y - b.robot.y;
    const double dr = normalize_angle(a.robot.rot - b.robot.rot);
    const double dg = a.robot.grip - b.robot.grip;
    s += w.w_robot * (dx * dx + dy * dy + w.w_ang * dr * dr + dg * dg);
  }
  return std::sqrt(s);
}

Collider object_collider(const ObjectShape& shape, const Pose2& pose) {
  if (const auto* c = std::get_if<CircleShape>(&shape)) {
    return CircleCol{{pose.x, pose.y}, c->radius};
  }
  const auto& b = std::get<BoxShape>(shape);
  return ObbCol{{pose.x, pose.y},
                {std::cos(pose.theta), std::sin(pose.theta)},
                {b.half_x, b.half_y}};
}

std::array<ObbCol, 3> robot_links(const RobotState& r,
                                  const RobotGeometry& g) {
  const Vec2 fwd{std::cos(r.rot), std::sin(r.rot)};
  const Vec2 lat = perp(fwd);
  const Vec2 base{r.x, r.y};
  const double finger_fwd = g.palm_half_depth + g.finger_half_length;
  const double finger_lat = r.grip + g.finger_half_width;
  return {
      ObbCol{base, fwd, {g.palm_half_depth, g.palm_half_width}},
      ObbCol{base + fwd * finger_fwd + lat * finger_lat,
             fwd,
             {g.finger_half_length, g.finger_half_width}},
      ObbCol{base + fwd * finger_fwd - lat * finger_lat,
             fwd,
             {g.finger_half_length, g.finger_half_width}},
  };
}

Vec2 gripper_reference_point(const RobotState& r, const RobotGeometry& g) {
  return Vec2{r.x, r.y} + gripper_forward_axis(r) * g.palm_half_depth;
}

Vec2 gripper_forward_axis(const RobotState& r) {
  return {std::cos(r.rot), std::sin(r.rot)};
}

WorldState initial_world_state(const SceneSpec& scene) {
  WorldState s;
  s.robot = scene.robot_initial;
  s.objects.reserve(scene.objects.size());
  for (const auto& o : scene.objects) s.objects.push_back(o.initial_pose);
  s.dropped.assign(scene.objects.size(), 0);
  return s;
}

namespace {

bool footprint_inside_table(const ObjectShape& shape, const Pose2& pose,
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

std::string objpath(int i) { return "objects[" + std::to_string(i) + "]"; }

void validate_object(const ObjectSpec& o, int i) {
  if (const auto* c = std::get_if<CircleShape>(&o.shape)) {
    if (!(c->radius > 0.0)) {
      throw SceneError(objpath(i) + ".shape.circle.radius: must be > 0");
    }
  } else {
    const auto& b = std::get<BoxShape>(o.shape);
    if (!(b.half_x > 0.0) || !(b.half_y > 0.0)) {
      throw SceneError(objpath(i) + ".shape.box: extents must be > 0");
    }
  }
  if (!(o.mass > 0.0)) throw SceneError(objpath(i) + ".mass: must be > 0");
  if (!(o.friction > 0.0)) {
    throw SceneError(objpath(i) + ".friction: must be > 0");
  }
  if (o.height && !(*o.height > 0.0)) {
    throw SceneError(objpath(i) + ".height: must be > 0");
  }
  if (!std::isfinite(o.initial_pose.x) || !std::isfinite(o.initial_pose.y) ||
      !std::isfinite(o.initial_pose.theta)) {
    throw SceneError(objpath(i) + ".pose: must be finite");
  }
}

}  // namespace

void validate_scene(const SceneSpec& scene) {
  if (!(scene.table.half_x > 0.0) || !(scene.table.half_y > 0.0)) {
    throw SceneError("table: half extents must be > 0");
  }
  const double min_half = std::min(scene.table.half_x, scene.table.half_y);
  if (!(scene.table.safe_margin > 0.0) ||
      !(scene.table.safe_margin < min_half)) {
    throw SceneError(
        "table.safe_margin: must be in (0, min(half_x, half_y))");
  }
  const RobotGeometry& g = scene.robot;
  if (!(g.palm_half_depth > 0.0) || !(g.palm_half_width > 0.0) ||
      !(g.finger_half_length > 0.0) || !(g.finger_half_width > 0.0)) {
    throw SceneError("robot: link extents must be > 0");
  }
  if (!(g.grip_min > 0.0) || !(g.grip_min <= g.grip_max)) {
    throw SceneError("robot: grip range must satisfy 0 < grip_min <= grip_max");
  }
  if (scene.robot_initial.grip < g.grip_min ||
      scene.robot_initial.grip > g.grip_max) {
    throw SceneError("robot.initial: grip outside [grip_min, grip_max]");
  }
  if (scene.objects.empty()) throw SceneError("objects: must not be empty");
  scene.target_index();  // exactly one target
  for (int i = 0; i < static_cast<int>(scene.objects.size()); ++i) {
    validate_object(scene.objects[i], i);
    if (!footprint_inside_table(scene.objects[i].shape,
                                scene.objects[i].initial_pose, scene.table)) {
      throw SceneError(objpath(i) + ".pose: initial footprint leaves the table");
    }
  }
  for (int i = 0; i < static_cast<int>(scene.objects.size()); ++i) {
    const Collider ci = object_collider(scene.objects[i].shape,
                                        scene.objects[i].initial_pose);
    for (int j = i + 1; j < static_cast<int>(scene.objects.size()); ++j) {
      const Collider cj = object_collider(scene.objects[j].shape,
                                          scene.objects[j].initial_pose);
      const double depth = penetration_depth(ci, cj);
      if (depth > 0.0) {
        std::ostringstream msg;
        msg << objpath(i) << " and " << objpath(j)
            << ": initial footprints overlap (depth " << depth << " m)";
        throw SceneError(msg.str());
      }
    }
  }
}

namespace {

void reject_unknown_keys(const json& j, const std::string& path,
                         std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
          return key == a;
        }) == allowed.end()) {
      throw SceneError(path + ": unknown key '" + key + "'");
    }
  }
}

double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SceneError(path + ": expected a number");
  return j.get<double>();
}

Pose2 pose_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) {
    throw SceneError(path + ": expected [x, y, theta]");
  }
  Pose2 p;
  p.x = require_number(j[0], path + "[0]");
  p.y = require_number(j[1], path + "[1]");
  p.theta = normalize_angle(require_number(j[2], path + "[2]"));
  return p;
}

ObjectShape shape_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || j.size() != 1) {
    throw SceneError(path + ": exactly one of 'circle' or 'box' required");
  }
  if (j.contains("circle")) {
    const json& c = j["circle"];
    reject_unknown_keys(c, path + ".circle", {"radius"});
    if (!c.contains("radius")) {
      throw SceneError(path + ".circle.radius: missing");
    }
    return CircleShape{require_number(c["radius"], path + ".circle.radius")};
  }
  if (j.contains("box")) {
    const json& b = j["box"];
    reject_unknown_keys(b, path + ".box", {"half_x", "half_y"});
    if (!b.contains("half_x") || !b.contains("half_y")) {
      throw SceneError(path + ".box: half_x and half_y required");
    }
    return BoxShape{require_number(b["half_x"], path + ".box.half_x"),
                    require_number(b["half_y"], path + ".box.half_y")};
  }
  throw SceneError(path + ": exactly one of 'circle' or 'box' required");
}

json shape_to_json(const ObjectShape& shape) {
  if (const auto* c = std::get_if<CircleShape>(&shape)) {
    return json{{"circle", {{"radius", c->radius}}}};
  }
  const auto& b = std::get<BoxShape>(shape);
  return json{{"box", {{"half_x", b.half_x}, {"half_y", b.half_y}}}};
}

SceneSpec scene_from_json(const json& j) {
  SceneSpec s;
  if (!j.is_object()) throw SceneError("scene: expected a JSON object");
  reject_unknown_keys(j, "scene", {"table", "robot", "objects"});
  for (const char* key : {"table", "robot", "objects"}) {
    if (!j.contains(key)) {
      throw SceneError(std::string("scene.") + key + ": missing");
    }
  }

  const json& t = j["table"];
  reject_unknown_keys(t, "table", {"half_x", "half_y", "safe_margin"});
  s.table.half_x = require_number(t.at("half_x"), "table.half_x");
  s.table.half_y = require_number(t.at("half_y"), "table.half_y");
  s.table.safe_margin =
      require_number(t.at("safe_margin"), "table.safe_margin");

  const json& r = j["robot"];
  reject_unknown_keys(r, "robot",
                      {"palm_half_depth", "palm_half_width",
                       "finger_half_length", "finger_half_width", "grip_min",
                       "grip_max", "initial"});
  s.robot.palm_half_depth =
      require_number(r.at("palm_half_depth"), "robot.palm_half_depth");
  s.robot.palm_half_width =
      require_number(r.at("palm_half_width"), "robot.palm_half_width");
  s.robot.finger_half_length =
      require_number(r.at("finger_half_length"), "robot.finger_half_length");
  s.robot.finger_half_width =
      require_number(r.at("finger_half_width"), "robot.finger_half_width");
  s.robot.grip_min = require_number(r.at("grip_min"), "robot.grip_min");
  s.robot.grip_max = require_number(r.at("grip_max"), "robot.grip_max");
  const json& init = r.at("initial");
  if (!init.is_array() || init.size() != 4) {
    throw SceneError("robot.initial: expected [x, y, rot, grip]");
  }
  s.robot_initial.x = require_number(init[0], "robot.initial[0]");
  s.robot_initial.y = require_number(init[1], "robot.initial[1]");
  s.robot_initial.rot =
      normalize_angle(require_number(init[2], "robot.initial[2]"));
  s.robot_initial.grip = require_number(init[3], "robot.initial[3]");

  const json& objs = j["objects"];
  if (!objs.is_array()) throw SceneError("objects: expected an array");
  for (int i = 0; i < static_cast<int>(objs.size()); ++i) {
    const json& jo = objs[i];
    const std::string path = objpath(i);
    reject_unknown_keys(jo, path,
                        {"shape", "mass", "friction", "pose", "target",
                         "height"});
    ObjectSpec o;
    if (!jo.contains("shape")) throw SceneError(path + ".shape: missing");
    o.shape = shape_from_json(jo["shape"], path + ".shape");
    if (!jo.contains("mass")) throw SceneError(path + ".mass: missing");
    o.mass = require_number(jo["mass"], path + ".mass");
    if (!jo.contains("friction")) {
      throw SceneError(path + ".friction: missing");
    }
    o.friction = require_number(jo["friction"], path + ".friction");
    if (!jo.contains("pose")) throw SceneError(path + ".pose: missing");
    o.initial_pose = pose_from_json(jo["pose"], path + ".pose");
    if (jo.contains("target")) {
      if (!jo["target"].is_boolean()) {
        throw SceneError(path + ".target: expected a boolean");
      }
      o.is_target = jo["target"].get<bool>();
    }
    if (jo.contains("height")) {
      o.height = require_number(jo["height"], path + ".height");
    }
    s.objects.push_back(std::move(o));
  }
  return s;
}

}  // namespace

SceneSpec load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SceneError(path + ": cannot open");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw SceneError(path + ": parse error: " + e.what());
  }
  SceneSpec s = scene_from_json(j);
  validate_scene(s);
  return s;
}

void save_scene(const SceneSpec& s, const std::string& path) {
  json j;
  j["table"] = {{"half_x", s.table.half_x},
                {"half_y", s.table.half_y},
                {"safe_margin", s.table.safe_margin}};
  j["robot"] = {{"palm_half_depth", s.robot.palm_half_depth},
                {"palm_half_width", s.robot.palm_half_width},
                {"finger_half_length", s.robot.finger_half_length},
                {"finger_half_width", s.robot.finger_half_width},
                {"grip_min", s.robot.grip_min},
                {"grip_max", s.robot.grip_max},
                {"initial",
                 {s.robot_initial.x, s.robot_initial.y, s.robot_initial.rot,
                  s.robot_initial.grip}}};
  j["objects"] = json::array();
  for (const auto& o : s.objects) {
    json jo;
    jo["shape"] = shape_to_json(o.shape);
    jo["mass"] = o.mass;
    jo["friction"] = o.friction;
    jo["pose"] = {o.initial_pose.x, o.initial_pose.y, o.initial_pose.theta};
    if (o.is_target) jo["target"] = true;
    if (o.height) jo["height"] = *o.height;
    j["objects"].push_back(std::move(jo));
  }
  std::ofstream out(path);
  if (!out) throw SceneError(path + ": cannot write");
  out << j.dump(2) << '\n';
}

}  // namespace cmpc
