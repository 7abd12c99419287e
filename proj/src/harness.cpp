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

#include "cmpc/harness.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "cmpc/parallel.h"
#include "cmpc/serialize.h"

namespace cmpc {

using nlohmann::json;

namespace {

// seed domains, so unrelated streams never collide
constexpr std::uint64_t kSceneDomain = 1;
constexpr std::uint64_t kPerturbDomain = 2;
constexpr std::uint64_t kPlannerDomain = 3;
constexpr std::uint64_t kExecDomain = 4;

struct EpisodeKey {
  int scene = 0;
  int level_idx = 0;
  int planner_idx = 0;
};

int count_replans(const ExecutionLog& log) {
  int n = 0;
  for (const ReplanEvent& e : log.replan_events) {
    if (e.reason != ReplanReason::kNone) ++n;
  }
  return n;
}

double init_plan_seconds(const ExecutionLog& log) {
  for (const ReplanEvent& e : log.replan_events) {
    if (e.reason == ReplanReason::kNone) return e.wall_s;
  }
  return 0.0;
}

double mean_replan_seconds(const ExecutionLog& log) {
  double sum = 0.0;
  int n = 0;
  for (const ReplanEvent& e : log.replan_events) {
    if (e.reason != ReplanReason::kNone) {
      sum += e.wall_s;
      ++n;
    }
  }
  return n > 0 ? sum / n : 0.0;
}

struct Stats {
  int n = 0;
  double mean = 0.0;
  double ci95 = 0.0;
  bool has_ci = false;
};

Stats compute_stats(const std::vector<double>& xs) {
  Stats s;
  s.n = static_cast<int>(xs.size());
  if (s.n == 0) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / s.n;
  if (s.n >= 2) {
    double sq = 0.0;
    for (double x : xs) sq += (x - s.mean) * (x - s.mean);
    const double sd = std::sqrt(sq / (s.n - 1));
    s.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(s.n));
    s.has_ci = true;
  }
  return s;
}

void put_stats(json& cell, const char* prefix, const Stats& s) {
  cell[std::string(prefix) + "_mean"] = s.n > 0 ? json(s.mean) : json(nullptr);
  cell[std::string(prefix) + "_ci95"] = s.has_ci ? json(s.ci95) : json(nullptr);
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void reject_unknown(const json& j, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  if (!j.is_object()) {
    throw std::invalid_argument(path + ": expected a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
          return key == a;
        }) == allowed.end()) {
      throw std::invalid_argument(path + ": unknown key '" + key + "'");
    }
  }
}

void get_num(const json& j, const char* key, double& out,
             const std::string& path) {
  if (!j.contains(key)) return;
  if (!j[key].is_number()) {
    throw std::invalid_argument(path + "." + key + ": expected a number");
  }
  out = j[key].get<double>();
}

void get_int(const json& j, const char* key, int& out,
             const std::string& path) {
  if (!j.contains(key)) return;
  if (!j[key].is_number_integer()) {
    throw std::invalid_argument(path + "." + key + ": expected an integer");
  }
  out = j[key].get<int>();
}

void get_bool(const json& j, const char* key, bool& out,
              const std::string& path) {
  if (!j.contains(key)) return;
  if (!j[key].is_boolean()) {
    throw std::invalid_argument(path + "." + key + ": expected a boolean");
  }
  out = j[key].get<bool>();
}

void get_range(const json& j, const char* key, Range& out,
               const std::string& path) {
  if (!j.contains(key)) return;
  const json& r = j[key];
  if (!r.is_array() || r.size() != 2 || !r[0].is_number() ||
      !r[1].is_number()) {
    throw std::invalid_argument(path + "." + key + ": expected [lo, hi]");
  }
  out = {r[0].get<double>(), r[1].get<double>()};
}

std::string episode_stem(const MetricsRow& row) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "ep_%03d_%s_%s", row.scene,
                to_string(row.level), to_string(row.planner));
  return buf;
}

}  // namespace

const char* to_string(PlannerKind planner) {
  return planner == PlannerKind::kOr ? "or" : "nr";
}

std::optional<PlannerKind> planner_from_string(const std::string& s) {
  if (s == "or") return PlannerKind::kOr;
  if (s == "nr") return PlannerKind::kNr;
  return std::nullopt;
}

json make_summary(const std::vector<MetricsRow>& rows) {
  json summary = json::object();
  std::vector<UncertaintyLevel> levels;
  std::vector<PlannerKind> planners;
  for (const MetricsRow& r : rows) {
    if (std::find(levels.begin(), levels.end(), r.level) == levels.end()) {
      levels.push_back(r.level);
    }
    if (std::find(planners.begin(), planners.end(), r.planner) ==
        planners.end()) {
      planners.push_back(r.planner);
    }
  }
  for (UncertaintyLevel level : levels) {
    json per_planner = json::object();
    for (PlannerKind planner : planners) {
      std::vector<double> replans;
      std::vector<double> costs;
      std::vector<double> times;
      int episodes = 0;
      int successes = 0;
      for (const MetricsRow& r : rows) {
        if (r.level != level || r.planner != planner) continue;
        ++episodes;
        replans.push_back(static_cast<double>(r.replans));
        if (r.success) {
          ++successes;
          costs.push_back(r.exec_cost);
          times.push_back(r.elapsed_s);
        }
      }
      if (episodes == 0) continue;
      json cell;
      cell["episodes"] = episodes;
      cell["successes"] = successes;
      cell["success_rate"] =
          static_cast<double>(successes) / static_cast<double>(episodes);
      put_stats(cell, "replans", compute_stats(replans));
      put_stats(cell, "cost", compute_stats(costs));
      put_stats(cell, "time", compute_stats(times));
      per_planner[to_string(planner)] = std::move(cell);
    }
    summary[to_string(level)] = std::move(per_planner);
  }
  return summary;
}

void write_csv(const std::vector<MetricsRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot write");
  out << "scene,level,planner,success,replans,exec_cost,elapsed_s,"
         "init_plan_s,mean_replan_s\n";
  for (const MetricsRow& r : rows) {
    out << r.scene << ',' << to_string(r.level) << ',' << to_string(r.planner)
        << ',' << (r.success ? 1 : 0) << ',' << r.replans << ','
        << fmt_double(r.exec_cost) << ',' << fmt_double(r.elapsed_s) << ','
        << fmt_double(r.init_plan_s) << ',' << fmt_double(r.mean_replan_s)
        << '\n';
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.scenes < 1) {
    throw std::invalid_argument("run_experiment: scenes must be >= 1");
  }
  if (config.levels.empty() || config.planners.empty()) {
    throw std::invalid_argument(
        "run_experiment: need at least one level and one planner");
  }
  ExperimentResult result;

  // scenes and perturbed planning models are derived serially so the episode
  // schedule cannot affect them; a scene whose generation exhausts its retry
  // budget is skipped with a warning rather than failing the experiment
  std::vector<int> scene_ids;
  std::vector<SceneSpec> scenes;
  scenes.reserve(static_cast<std::size_t>(config.scenes));
  for (int i = 0; i < config.scenes; ++i) {
    SceneSpec scene;
    bool made = false;
    for (std::uint64_t retry = 0; retry < 100 && !made; ++retry) {
      Rng rng(mix_seed(config.seed, kSceneDomain,
                       static_cast<std::uint64_t>(i), retry));
      try {
        scene = generate_scene(config.gen, rng);
        made = true;
        if (retry > 0) {
          result.warnings.push_back("scene " + std::to_string(i) +
                                    ": generated after " +
                                    std::to_string(retry) + " retries");
        }
      } catch (const SceneError&) {
      }
    }
    if (!made) {
      result.warnings.push_back("scene " + std::to_string(i) +
                                ": generation failed after 100 attempts; "
                                "skipped");
      continue;
    }
    scene_ids.push_back(i);
    scenes.push_back(std::move(scene));
  }

  const int n_scenes = static_cast<int>(scenes.size());
  const int n_levels = static_cast<int>(config.levels.size());
  const int n_planners = static_cast<int>(config.planners.size());
  std::vector<std::vector<SceneSpec>> planning(
      static_cast<std::size_t>(n_scenes));
  for (int i = 0; i < n_scenes; ++i) {
    const std::uint64_t id =
        static_cast<std::uint64_t>(scene_ids[static_cast<std::size_t>(i)]);
    for (int l = 0; l < n_levels; ++l) {
      const UncertaintyLevel level = config.levels[static_cast<std::size_t>(l)];
      Rng rng(mix_seed(config.seed, kPerturbDomain, id,
                       static_cast<std::uint64_t>(level_multiplier(level))));
      planning[static_cast<std::size_t>(i)].push_back(
          perturb_scene(scenes[static_cast<std::size_t>(i)], level, rng,
                        config.perturb));
    }
  }

  ControllerParams controller = config.controller;
  controller.pbsto.workers = 1;  // episodes are the unit of parallelism

  const int total = n_scenes * n_levels * n_planners;
  std::vector<MetricsRow> rows(static_cast<std::size_t>(total));
  std::vector<ExecutionLog> logs(static_cast<std::size_t>(total));

  parallel_for(total, resolve_workers(config.episode_workers), [&](int e) {
    const int scene_idx = e / (n_levels * n_planners);
    const int level_idx = (e / n_planners) % n_levels;
    const int planner_idx = e % n_planners;
    const int scene_id = scene_ids[static_cast<std::size_t>(scene_idx)];
    const UncertaintyLevel level =
        config.levels[static_cast<std::size_t>(level_idx)];
    const PlannerKind planner =
        config.planners[static_cast<std::size_t>(planner_idx)];
    const std::uint64_t mult =
        static_cast<std::uint64_t>(level_multiplier(level));
    const std::uint64_t pk = planner == PlannerKind::kOr ? 0 : 1;

    ExecutionWorld world(
        scenes[static_cast<std::size_t>(scene_idx)], noise_spec(level),
        mix_seed(config.seed, kExecDomain, static_cast<std::uint64_t>(scene_id),
                 mult, pk));
    const SceneSpec& model =
        planning[static_cast<std::size_t>(scene_idx)]
                [static_cast<std::size_t>(level_idx)];
    const std::uint64_t plan_seed =
        mix_seed(config.seed, kPlannerDomain,
                 static_cast<std::uint64_t>(scene_id), mult, pk);

    const ExecutionLog log = planner == PlannerKind::kOr
                                 ? run_or(world, model, controller, plan_seed)
                                 : run_nr(world, model, controller, plan_seed);

    MetricsRow row;
    row.scene = scene_id;
    row.level = level;
    row.planner = planner;
    row.success = log.outcome == Outcome::kGrasped;
    row.replans = count_replans(log);
    row.exec_cost = log.executed_cost.total;
    row.elapsed_s = log.elapsed_s;
    row.init_plan_s = init_plan_seconds(log);
    row.mean_replan_s = mean_replan_seconds(log);
    rows[static_cast<std::size_t>(e)] = row;
    logs[static_cast<std::size_t>(e)] = log;
  });

  result.rows = std::move(rows);
  result.summary = make_summary(result.rows);

  if (!config.out_dir.empty()) {
    namespace fs = std::filesystem;
    const fs::path root(config.out_dir);
    fs::create_directories(root / "scenes");
    fs::create_directories(root / "logs");
    write_csv(result.rows, (root / "results.csv").string());
    write_json(result.summary, (root / "summary.json").string());
    write_json(config_to_json(config), (root / "config.json").string());
    for (int i = 0; i < n_scenes; ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "scene_%03d.json",
                    scene_ids[static_cast<std::size_t>(i)]);
      save_scene(scenes[static_cast<std::size_t>(i)],
                 (root / "scenes" / name).string());
    }
    for (std::size_t e = 0; e < logs.size(); ++e) {
      write_json(to_json(logs[e]),
                 (root / "logs" / (episode_stem(result.rows[e]) + ".json"))
                     .string());
    }
  }
  return result;
}

namespace {

ControlBounds bounds_from_json(const json& j, const std::string& path) {
  ControlBounds b;
  reject_unknown(j, path, {"max_translation", "max_rotation", "max_grip"});
  get_num(j, "max_translation", b.max_translation, path);
  get_num(j, "max_rotation", b.max_rotation, path);
  get_num(j, "max_grip", b.max_grip, path);
  return b;
}

CostWeights weights_from_json(const json& j, const std::string& path) {
  CostWeights w;
  reject_unknown(j, path,
                 {"w_g", "w_phi", "w_d", "w_e", "w_a", "k", "exp_clamp",
                  "w_ang", "dropped_target_goal"});
  get_num(j, "w_g", w.w_g, path);
  get_num(j, "w_phi", w.w_phi, path);
  get_num(j, "w_d", w.w_d, path);
  get_num(j, "w_e", w.w_e, path);
  get_num(j, "w_a", w.w_a, path);
  get_num(j, "k", w.k, path);
  get_num(j, "exp_clamp", w.exp_clamp, path);
  get_num(j, "w_ang", w.w_ang, path);
  get_num(j, "dropped_target_goal", w.dropped_target_goal, path);
  return w;
}

PbstoParams pbsto_from_json(const json& j, const std::string& path) {
  PbstoParams p;
  reject_unknown(j, path,
                 {"k", "nu", "c_thresh", "n_min", "i_max", "bounds",
                  "workers"});
  get_int(j, "k", p.k, path);
  get_num(j, "nu", p.nu, path);
  get_num(j, "c_thresh", p.c_thresh, path);
  get_int(j, "n_min", p.n_min, path);
  get_int(j, "i_max", p.i_max, path);
  if (j.contains("bounds")) {
    p.bounds = bounds_from_json(j["bounds"], path + ".bounds");
  }
  get_int(j, "workers", p.workers, path);
  return p;
}

ControllerParams controller_from_json(const json& j,
                                      const std::string& path) {
  ControllerParams c;
  reject_unknown(j, path,
                 {"pbsto", "weights", "deviation", "many_iter", "few_iter",
                  "sd_thresh", "horizon", "nominal_speed", "control_duration",
                  "timeout_s", "stop_on_drop"});
  if (j.contains("pbsto")) c.pbsto = pbsto_from_json(j["pbsto"], path + ".pbsto");
  if (j.contains("weights")) {
    c.weights = weights_from_json(j["weights"], path + ".weights");
  }
  if (j.contains("deviation")) {
    const json& d = j["deviation"];
    reject_unknown(d, path + ".deviation",
                   {"w_ang", "w_robot", "include_robot"});
    get_num(d, "w_ang", c.deviation.w_ang, path + ".deviation");
    get_num(d, "w_robot", c.deviation.w_robot, path + ".deviation");
    get_bool(d, "include_robot", c.deviation.include_robot,
             path + ".deviation");
  }
  get_int(j, "many_iter", c.many_iter, path);
  get_int(j, "few_iter", c.few_iter, path);
  get_num(j, "sd_thresh", c.sd_thresh, path);
  get_int(j, "horizon", c.horizon, path);
  get_num(j, "nominal_speed", c.nominal_speed, path);
  get_num(j, "control_duration", c.control_duration, path);
  get_num(j, "timeout_s", c.timeout_s, path);
  get_bool(j, "stop_on_drop", c.stop_on_drop, path);
  return c;
}

SceneGenParams gen_from_json(const json& j, const std::string& path) {
  SceneGenParams g;
  reject_unknown(j, path,
                 {"object_count", "table_half_x", "table_half_y",
                  "safe_margin", "box_half", "box_height", "cylinder_radius",
                  "cylinder_height", "mass", "friction", "target_pose_var",
                  "clearance", "max_attempts", "robot", "robot_initial"});
  get_int(j, "object_count", g.object_count, path);
  get_num(j, "table_half_x", g.table_half_x, path);
  get_num(j, "table_half_y", g.table_half_y, path);
  get_num(j, "safe_margin", g.safe_margin, path);
  get_range(j, "box_half", g.box_half, path);
  get_range(j, "box_height", g.box_height, path);
  get_range(j, "cylinder_radius", g.cylinder_radius, path);
  get_range(j, "cylinder_height", g.cylinder_height, path);
  get_range(j, "mass", g.mass, path);
  get_range(j, "friction", g.friction, path);
  get_num(j, "target_pose_var", g.target_pose_var, path);
  get_num(j, "clearance", g.clearance, path);
  get_int(j, "max_attempts", g.max_attempts, path);
  if (j.contains("robot")) {
    const json& r = j["robot"];
    reject_unknown(r, path + ".robot",
                   {"palm_half_depth", "palm_half_width", "finger_half_length",
                    "finger_half_width", "grip_min", "grip_max"});
    get_num(r, "palm_half_depth", g.robot.palm_half_depth, path + ".robot");
    get_num(r, "palm_half_width", g.robot.palm_half_width, path + ".robot");
    get_num(r, "finger_half_length", g.robot.finger_half_length,
            path + ".robot");
    get_num(r, "finger_half_width", g.robot.finger_half_width,
            path + ".robot");
    get_num(r, "grip_min", g.robot.grip_min, path + ".robot");
    get_num(r, "grip_max", g.robot.grip_max, path + ".robot");
  }
  if (j.contains("robot_initial")) {
    const json& r = j["robot_initial"];
    if (!r.is_array() || r.size() != 4) {
      throw std::invalid_argument(path +
                                  ".robot_initial: expected [x, y, rot, grip]");
    }
    g.robot_initial = RobotState{r[0].get<double>(), r[1].get<double>(),
                                 r[2].get<double>(), r[3].get<double>()};
  }
  return g;
}

PerturbVariances perturb_from_json(const json& j, const std::string& path) {
  PerturbVariances v;
  reject_unknown(j, path,
                 {"pose_translation", "pose_rotation", "shape_dim", "mass",
                  "friction"});
  get_num(j, "pose_translation", v.pose_translation, path);
  get_num(j, "pose_rotation", v.pose_rotation, path);
  get_num(j, "shape_dim", v.shape_dim, path);
  get_num(j, "mass", v.mass, path);
  get_num(j, "friction", v.friction, path);
  return v;
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  reject_unknown(j, "config",
                 {"scenes", "levels", "planners", "seed", "out_dir",
                  "controller", "gen", "perturb", "episode_workers"});
  get_int(j, "scenes", c.scenes, "config");
  if (j.contains("levels")) {
    if (!j["levels"].is_array()) {
      throw std::invalid_argument("config.levels: expected an array");
    }
    c.levels.clear();
    for (const json& l : j["levels"]) {
      const auto level = level_from_string(l.get<std::string>());
      if (!level) {
        throw std::invalid_argument("config.levels: unknown level '" +
                                    l.get<std::string>() + "'");
      }
      c.levels.push_back(*level);
    }
  }
  if (j.contains("planners")) {
    if (!j["planners"].is_array()) {
      throw std::invalid_argument("config.planners: expected an array");
    }
    c.planners.clear();
    for (const json& p : j["planners"]) {
      const auto planner = planner_from_string(p.get<std::string>());
      if (!planner) {
        throw std::invalid_argument("config.planners: unknown planner '" +
                                    p.get<std::string>() + "'");
      }
      c.planners.push_back(*planner);
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() && !j["seed"].is_number_unsigned()) {
      throw std::invalid_argument("config.seed: expected an integer");
    }
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("out_dir")) {
    if (!j["out_dir"].is_string()) {
      throw std::invalid_argument("config.out_dir: expected a string");
    }
    c.out_dir = j["out_dir"].get<std::string>();
  }
  if (j.contains("controller")) {
    c.controller = controller_from_json(j["controller"], "config.controller");
  }
  if (j.contains("gen")) c.gen = gen_from_json(j["gen"], "config.gen");
  if (j.contains("perturb")) {
    c.perturb = perturb_from_json(j["perturb"], "config.perturb");
  }
  get_int(j, "episode_workers", c.episode_workers, "config");
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["scenes"] = c.scenes;
  json levels = json::array();
  for (UncertaintyLevel l : c.levels) levels.push_back(to_string(l));
  j["levels"] = std::move(levels);
  json planners = json::array();
  for (PlannerKind p : c.planners) planners.push_back(to_string(p));
  j["planners"] = std::move(planners);
  j["seed"] = c.seed;
  j["out_dir"] = c.out_dir;
  j["episode_workers"] = c.episode_workers;
  const ControllerParams& ct = c.controller;
  j["controller"] = {
      {"pbsto",
       {{"k", ct.pbsto.k},
        {"nu", ct.pbsto.nu},
        {"c_thresh", ct.pbsto.c_thresh},
        {"n_min", ct.pbsto.n_min},
        {"i_max", ct.pbsto.i_max},
        {"bounds",
         {{"max_translation", ct.pbsto.bounds.max_translation},
          {"max_rotation", ct.pbsto.bounds.max_rotation},
          {"max_grip", ct.pbsto.bounds.max_grip}}},
        {"workers", ct.pbsto.workers}}},
      {"weights",
       {{"w_g", ct.weights.w_g},
        {"w_phi", ct.weights.w_phi},
        {"w_d", ct.weights.w_d},
        {"w_e", ct.weights.w_e},
        {"w_a", ct.weights.w_a},
        {"k", ct.weights.k},
        {"exp_clamp", ct.weights.exp_clamp},
        {"w_ang", ct.weights.w_ang},
        {"dropped_target_goal", ct.weights.dropped_target_goal}}},
      {"deviation",
       {{"w_ang", ct.deviation.w_ang},
        {"w_robot", ct.deviation.w_robot},
        {"include_robot", ct.deviation.include_robot}}},
      {"many_iter", ct.many_iter},
      {"few_iter", ct.few_iter},
      {"sd_thresh", ct.sd_thresh},
      {"horizon", ct.horizon},
      {"nominal_speed", ct.nominal_speed},
      {"control_duration", ct.control_duration},
      {"timeout_s", ct.timeout_s},
      {"stop_on_drop", ct.stop_on_drop}};
  const SceneGenParams& g = c.gen;
  j["gen"] = {{"object_count", g.object_count},
              {"table_half_x", g.table_half_x},
              {"table_half_y", g.table_half_y},
              {"safe_margin", g.safe_margin},
              {"box_half", {g.box_half.lo, g.box_half.hi}},
              {"box_height", {g.box_height.lo, g.box_height.hi}},
              {"cylinder_radius",
               {g.cylinder_radius.lo, g.cylinder_radius.hi}},
              {"cylinder_height",
               {g.cylinder_height.lo, g.cylinder_height.hi}},
              {"mass", {g.mass.lo, g.mass.hi}},
              {"friction", {g.friction.lo, g.friction.hi}},
              {"target_pose_var", g.target_pose_var},
              {"clearance", g.clearance},
              {"max_attempts", g.max_attempts},
              {"robot",
               {{"palm_half_depth", g.robot.palm_half_depth},
                {"palm_half_width", g.robot.palm_half_width},
                {"finger_half_length", g.robot.finger_half_length},
                {"finger_half_width", g.robot.finger_half_width},
                {"grip_min", g.robot.grip_min},
                {"grip_max", g.robot.grip_max}}}};
  if (g.robot_initial) {
    j["gen"]["robot_initial"] = {g.robot_initial->x, g.robot_initial->y,
                                 g.robot_initial->rot, g.robot_initial->grip};
  }
  j["perturb"] = {{"pose_translation", c.perturb.pose_translation},
                  {"pose_rotation", c.perturb.pose_rotation},
                  {"shape_dim", c.perturb.shape_dim},
                  {"mass", c.perturb.mass},
                  {"friction", c.perturb.friction}};
  return j;
}

}  // namespace cmpc
