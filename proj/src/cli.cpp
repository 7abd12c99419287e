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

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmpc/harness.h"
#include "cmpc/serialize.h"

namespace cmpc {
namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

SceneSpec generate_with_retries(const SceneGenParams& gen, std::uint64_t seed,
                                std::uint64_t index) {
  for (std::uint64_t retry = 0; retry < 100; ++retry) {
    Rng rng(mix_seed(seed, std::uint64_t{1}, index, retry));
    try {
      return generate_scene(gen, rng);
    } catch (const SceneError&) {
    }
  }
  throw SceneError("could not place scene " + std::to_string(index) +
                   " within the retry budget");
}

int cmd_gen_scenes(int count, int objects, std::uint64_t seed,
                   const std::string& out_dir) {
  SceneGenParams gen;
  gen.object_count = objects;
  std::filesystem::create_directories(out_dir);
  for (int i = 0; i < count; ++i) {
    const SceneSpec scene =
        generate_with_retries(gen, seed, static_cast<std::uint64_t>(i));
    char name[32];
    std::snprintf(name, sizeof(name), "scene_%03d.json", i);
    const std::string path =
        (std::filesystem::path(out_dir) / name).string();
    save_scene(scene, path);
    std::printf("wrote %s\n", path.c_str());
  }
  return 0;
}

int cmd_plan(const std::string& scene_path, std::uint64_t seed, int iterations,
             int horizon, const std::string& out_path) {
  const SceneSpec scene = load_scene(scene_path);
  const WorldState x0 = initial_world_state(scene);
  ControllerParams params;
  PbstoParams pb = params.pbsto;
  pb.i_max = iterations;
  const std::vector<Control> init = initial_straight_controls(
      x0, scene, horizon, params.nominal_speed, params.control_duration,
      pb.bounds);
  PbstoStats stats;
  const Plan plan = optimize(x0, init, scene, params.weights, pb,
                             params.planning_noise, seed, &stats);
  std::printf("cost %.6f after %d iterations (%d rollouts%s), %zu controls\n",
              plan.total_cost, stats.iterations, stats.rollouts,
              stats.truncated ? ", truncated" : "", plan.controls.size());
  if (!out_path.empty()) {
    write_json(to_json(plan), out_path);
    std::printf("wrote %s\n", out_path.c_str());
  }
  return 0;
}

int cmd_run(const std::string& scene_path, const std::string& planner_s,
            const std::string& level_s, std::uint64_t seed, double timeout,
            const std::string& out_path, const std::string& svg_path,
            int stride) {
  const auto planner = planner_from_string(planner_s);
  if (!planner) throw std::invalid_argument("unknown planner: " + planner_s);
  const auto level = level_from_string(level_s);
  if (!level) throw std::invalid_argument("unknown level: " + level_s);

  const SceneSpec scene = load_scene(scene_path);
  Rng perturb_rng(mix_seed(seed, std::uint64_t{2}));
  const SceneSpec model = perturb_scene(scene, *level, perturb_rng);
  ControllerParams params;
  if (timeout > 0.0) params.timeout_s = timeout;
  ExecutionWorld world(scene, noise_spec(*level), mix_seed(seed, std::uint64_t{4}));
  const std::uint64_t plan_seed = mix_seed(seed, std::uint64_t{3});
  const ExecutionLog log = *planner == PlannerKind::kOr
                               ? run_or(world, model, params, plan_seed)
                               : run_nr(world, model, params, plan_seed);

  int replans = 0;
  for (const ReplanEvent& e : log.replan_events) {
    if (e.reason != ReplanReason::kNone) ++replans;
  }
  std::printf(
      "outcome %s after %zu controls, cost %.6f, %d re-plans, %.1f s "
      "simulated\n",
      to_string(log.outcome), log.executed_controls.size(),
      log.executed_cost.total, replans, log.elapsed_s);
  if (!out_path.empty()) {
    write_json(to_json(log), out_path);
    std::printf("wrote %s\n", out_path.c_str());
  }
  if (!svg_path.empty()) {
    render_trace(log, scene, svg_path, stride);
    std::printf("wrote %s\n", svg_path.c_str());
  }
  return 0;
}

std::string cell_num(const nlohmann::json& cell, const char* key,
                     const char* fmt) {
  if (!cell.contains(key) || cell[key].is_null()) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), fmt, cell[key].get<double>());
  return buf;
}

void print_summary_table(const ExperimentConfig& config,
                         const nlohmann::json& summary) {
  std::printf("%-8s %-4s %9s %9s %12s %11s\n", "level", "plan", "success",
              "replans", "cost", "time_s");
  for (UncertaintyLevel level : config.levels) {
    for (PlannerKind planner : config.planners) {
      const char* ls = to_string(level);
      const char* ps = to_string(planner);
      if (!summary.contains(ls) || !summary[ls].contains(ps)) continue;
      const nlohmann::json& cell = summary[ls][ps];
      std::printf("%-8s %-4s %8.0f%% %9s %12s %11s\n", ls, ps,
                  cell["success_rate"].get<double>() * 100.0,
                  cell_num(cell, "replans_mean", "%.2f").c_str(),
                  cell_num(cell, "cost_mean", "%.4f").c_str(),
                  cell_num(cell, "time_mean", "%.2f").c_str());
    }
  }
}

int cmd_bench(const ExperimentConfig& config) {
  const ExperimentResult result = run_experiment(config);
  for (const std::string& w : result.warnings) {
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  }
  print_summary_table(config, result.summary);
  if (!config.out_dir.empty()) {
    std::printf("results under %s\n", config.out_dir.c_str());
  }
  return 0;
}

int cmd_render(const std::string& log_path, const std::string& scene_path,
               const std::string& out_path, int stride) {
  const SceneSpec scene = load_scene(scene_path);
  const ExecutionLog log = execution_log_from_json(read_json(log_path));
  render_trace(log, scene, out_path, stride);
  std::printf("wrote %s\n", out_path.c_str());
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"planar pushing and grasping planner benchmark"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen-scenes", "write random scene files");
  int gen_count = 1;
  int gen_objects = 6;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--count", gen_count, "number of scenes");
  gen->add_option("--objects", gen_objects, "objects per scene");
  gen->add_option("--seed", gen_seed, "master seed");
  gen->add_option("--out", gen_out, "output directory")->required();

  auto* plan = app.add_subcommand("plan", "one offline plan for a scene");
  std::string plan_scene;
  std::uint64_t plan_seed = 1;
  int plan_iterations = 50;
  int plan_horizon = 6;
  std::string plan_out;
  plan->add_option("--scene", plan_scene, "scene file")->required();
  plan->add_option("--seed", plan_seed, "planner seed");
  plan->add_option("--iterations", plan_iterations, "iteration budget");
  plan->add_option("--horizon", plan_horizon, "plan length, steps");
  plan->add_option("--out", plan_out, "write the plan as JSON");

  auto* run = app.add_subcommand("run", "run one closed-loop episode");
  std::string run_scene;
  std::string run_planner = "or";
  std::string run_level = "none";
  std::uint64_t run_seed = 1;
  double run_timeout = 0.0;
  std::string run_out;
  std::string run_svg;
  int run_stride = 1;
  run->add_option("--scene", run_scene, "scene file")->required();
  run->add_option("--planner", run_planner, "or|nr");
  run->add_option("--level", run_level, "none|low|medium|high");
  run->add_option("--seed", run_seed, "episode seed");
  run->add_option("--timeout", run_timeout, "simulated-seconds budget");
  run->add_option("--out", run_out, "write the execution log as JSON");
  run->add_option("--svg", run_svg, "write a trace strip as SVG");
  run->add_option("--stride", run_stride, "steps between trace frames");

  auto* bench = app.add_subcommand("bench", "full planner comparison");
  std::string bench_config;
  int bench_scenes = 0;
  int bench_objects = 0;
  std::uint64_t bench_seed = 0;
  double bench_timeout = 0.0;
  std::string bench_levels;
  std::string bench_planners;
  std::string bench_out;
  int bench_workers = -1;
  bool full_scale = false;
  bench->add_option("--config", bench_config, "config file (JSON)");
  auto* o_scenes = bench->add_option("--scenes", bench_scenes, "scene count");
  auto* o_objects =
      bench->add_option("--objects", bench_objects, "objects per scene");
  auto* o_seed = bench->add_option("--seed", bench_seed, "master seed");
  auto* o_timeout =
      bench->add_option("--timeout", bench_timeout, "episode budget, s");
  auto* o_levels =
      bench->add_option("--levels", bench_levels, "comma list of levels");
  auto* o_planners =
      bench->add_option("--planners", bench_planners, "comma list of planners");
  auto* o_out = bench->add_option("--out", bench_out, "output directory");
  auto* o_workers =
      bench->add_option("--workers", bench_workers, "episode workers");
  bench->add_flag("--full-scale", full_scale,
                  "100 scenes, 15 objects, 900 s episodes");

  auto* render = app.add_subcommand("render", "trace strip from a saved log");
  std::string render_log;
  std::string render_scene;
  std::string render_out;
  int render_stride = 1;
  render->add_option("--log", render_log, "execution log (JSON)")->required();
  render->add_option("--scene", render_scene, "scene file")->required();
  render->add_option("--out", render_out, "output SVG path")->required();
  render->add_option("--stride", render_stride, "steps between frames");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("cmpc");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      return cmd_gen_scenes(gen_count, gen_objects, gen_seed, gen_out);
    }
    if (plan->parsed()) {
      return cmd_plan(plan_scene, plan_seed, plan_iterations, plan_horizon,
                      plan_out);
    }
    if (run->parsed()) {
      return cmd_run(run_scene, run_planner, run_level, run_seed, run_timeout,
                     run_out, run_svg, run_stride);
    }
    if (bench->parsed()) {
      ExperimentConfig config;
      if (!bench_config.empty()) {
        config = config_from_json(read_json(bench_config));
      }
      if (full_scale) {
        config.scenes = 100;
        config.gen.object_count = 15;
        config.controller.timeout_s = 900.0;
      }
      if (o_scenes->count() > 0) config.scenes = bench_scenes;
      if (o_objects->count() > 0) config.gen.object_count = bench_objects;
      if (o_seed->count() > 0) config.seed = bench_seed;
      if (o_timeout->count() > 0) config.controller.timeout_s = bench_timeout;
      if (o_workers->count() > 0) config.episode_workers = bench_workers;
      if (o_out->count() > 0) config.out_dir = bench_out;
      if (o_levels->count() > 0) {
        config.levels.clear();
        for (const std::string& s : split_csv(bench_levels)) {
          const auto level = level_from_string(s);
          if (!level) throw std::invalid_argument("unknown level: " + s);
          config.levels.push_back(*level);
        }
      }
      if (o_planners->count() > 0) {
        config.planners.clear();
        for (const std::string& s : split_csv(bench_planners)) {
          const auto planner = planner_from_string(s);
          if (!planner) throw std::invalid_argument("unknown planner: " + s);
          config.planners.push_back(*planner);
        }
      }
      return cmd_bench(config);
    }
    if (render->parsed()) {
      return cmd_render(render_log, render_scene, render_out, render_stride);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}

}  // namespace cmpc
