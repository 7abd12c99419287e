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

#include "cmpc/serialize.h"

#include <fstream>
#include <stdexcept>

namespace cmpc {

using nlohmann::json;

json to_json(const Control& u) {
  return json{{"vx", u.vx},
              {"vy", u.vy},
              {"vrot", u.vrot},
              {"vgrip", u.vgrip},
              {"duration", u.duration}};
}

json to_json(const WorldState& s) {
  json objs = json::array();
  for (const Pose2& p : s.objects) objs.push_back({p.x, p.y, p.theta});
  json dropped = json::array();
  for (std::uint8_t d : s.dropped) dropped.push_back(d != 0);
  return json{{"robot", {s.robot.x, s.robot.y, s.robot.rot, s.robot.grip}},
              {"objects", std::move(objs)},
              {"dropped", std::move(dropped)}};
}

json to_json(const CostBreakdown& c) {
  return json{{"goal", c.goal},
              {"disturbance", c.disturbance},
              {"edge", c.edge},
              {"acceleration", c.acceleration},
              {"total", c.total}};
}

json to_json(const Plan& p) {
  json controls = json::array();
  for (const Control& u : p.controls) controls.push_back(to_json(u));
  json states = json::array();
  for (const WorldState& s : p.predicted_states) states.push_back(to_json(s));
  json steps = json::array();
  for (const CostBreakdown& c : p.per_step_costs) steps.push_back(to_json(c));
  return json{{"controls", std::move(controls)},
              {"predicted_states", std::move(states)},
              {"total_cost", p.total_cost},
              {"per_step_costs", std::move(steps)}};
}

json to_json(const ExecutionLog& log) {
  json controls = json::array();
  for (const Control& u : log.executed_controls) controls.push_back(to_json(u));
  json states = json::array();
  for (const WorldState& s : log.observed_states) states.push_back(to_json(s));
  json events = json::array();
  for (const ReplanEvent& e : log.replan_events) {
    events.push_back({{"step", e.step},
                      {"reason", to_string(e.reason)},
                      {"wall_s", e.wall_s}});
  }
  return json{{"executed_controls", std::move(controls)},
              {"observed_states", std::move(states)},
              {"replan_events", std::move(events)},
              {"outcome", to_string(log.outcome)},
              {"elapsed_s", log.elapsed_s},
              {"elapsed_total_s", log.elapsed_total_s},
              {"executed_cost", to_json(log.executed_cost)}};
}

namespace {

double num_at(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw std::invalid_argument(std::string("missing number field '") + key +
                                "'");
  }
  return j[key].get<double>();
}

ReplanReason reason_from_string(const std::string& s) {
  if (s == "none") return ReplanReason::kNone;
  if (s == "not_predicted_grasped") return ReplanReason::kNotPredictedGrasped;
  if (s == "state_deviation") return ReplanReason::kStateDeviation;
  if (s == "too_few_controls") return ReplanReason::kTooFewControls;
  throw std::invalid_argument("unknown replan reason '" + s + "'");
}

Outcome outcome_from_string(const std::string& s) {
  if (s == "grasped") return Outcome::kGrasped;
  if (s == "non_target_dropped") return Outcome::kNonTargetDropped;
  if (s == "target_dropped") return Outcome::kTargetDropped;
  if (s == "timeout") return Outcome::kTimeout;
  throw std::invalid_argument("unknown outcome '" + s + "'");
}

CostBreakdown cost_from_json(const json& j) {
  CostBreakdown c;
  c.goal = num_at(j, "goal");
  c.disturbance = num_at(j, "disturbance");
  c.edge = num_at(j, "edge");
  c.acceleration = num_at(j, "acceleration");
  c.total = num_at(j, "total");
  return c;
}

}  // namespace

Control control_from_json(const json& j) {
  Control u;
  u.vx = num_at(j, "vx");
  u.vy = num_at(j, "vy");
  u.vrot = num_at(j, "vrot");
  u.vgrip = num_at(j, "vgrip");
  u.duration = num_at(j, "duration");
  return u;
}

WorldState world_state_from_json(const json& j) {
  WorldState s;
  const json& r = j.at("robot");
  if (!r.is_array() || r.size() != 4) {
    throw std::invalid_argument("robot: expected [x, y, rot, grip]");
  }
  s.robot = {r[0].get<double>(), r[1].get<double>(), r[2].get<double>(),
             r[3].get<double>()};
  for (const json& p : j.at("objects")) {
    if (!p.is_array() || p.size() != 3) {
      throw std::invalid_argument("objects: expected [x, y, theta] entries");
    }
    s.objects.push_back(
        {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
  }
  if (j.contains("dropped")) {
    for (const json& d : j.at("dropped")) {
      s.dropped.push_back(d.get<bool>() ? 1 : 0);
    }
  } else {
    s.dropped.assign(s.objects.size(), 0);
  }
  if (s.dropped.size() != s.objects.size()) {
    throw std::invalid_argument("dropped: length must match objects");
  }
  return s;
}

ExecutionLog execution_log_from_json(const json& j) {
  ExecutionLog log;
  for (const json& u : j.at("executed_controls")) {
    log.executed_controls.push_back(control_from_json(u));
  }
  for (const json& s : j.at("observed_states")) {
    log.observed_states.push_back(world_state_from_json(s));
  }
  for (const json& e : j.at("replan_events")) {
    log.replan_events.push_back(
        {e.at("step").get<int>(),
         reason_from_string(e.at("reason").get<std::string>()),
         num_at(e, "wall_s")});
  }
  log.outcome = outcome_from_string(j.at("outcome").get<std::string>());
  log.elapsed_s = num_at(j, "elapsed_s");
  log.elapsed_total_s = num_at(j, "elapsed_total_s");
  log.executed_cost = cost_from_json(j.at("executed_cost"));
  return log;
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot write");
  out << j.dump(2) << '\n';
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  return json::parse(in);
}

}  // namespace cmpc
