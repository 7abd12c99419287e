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
#include <string>
#include <vector>

#include <json.hpp>

#include "cmpc/controllers.h"
#include "cmpc/uncertainty.h"

namespace cmpc {

enum class PlannerKind { kOr, kNr };

const char* to_string(PlannerKind planner);
std::optional<PlannerKind> planner_from_string(const std::string& s);

struct ExperimentConfig {
  int scenes = 20;
  std::vector<UncertaintyLevel> levels = {
      UncertaintyLevel::kNone, UncertaintyLevel::kLow,
      UncertaintyLevel::kMedium, UncertaintyLevel::kHigh};
  std::vector<PlannerKind> planners = {PlannerKind::kOr, PlannerKind::kNr};
  std::uint64_t seed = 1;
  std::string out_dir;  // empty = don't write files
  ControllerParams controller;
  SceneGenParams gen;
  PerturbVariances perturb;
  int episode_workers = 0;  // 0 = auto
};

// One episode's results; this is exactly one CSV row.
struct MetricsRow {
  int scene = 0;
  UncertaintyLevel level = UncertaintyLevel::kNone;
  PlannerKind planner = PlannerKind::kOr;
  bool success = false;
  int replans = 0;
  double exec_cost = 0.0;
  double elapsed_s = 0.0;
  double init_plan_s = 0.0;
  double mean_replan_s = 0.0;
};

struct ExperimentResult {
  std::vector<MetricsRow> rows;
  nlohmann::json summary;
  std::vector<std::string> warnings;
};

// Runs every (scene, level, planner) episode with seeds derived from the
// master seed; deterministic output up to wall-clock timing fields. Writes
// results.csv and summary.json into out_dir when one is configured.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Per-(level, planner) aggregates: success rate, mean and 95% CI of re-plan
// counts over all runs, and of executed cost / elapsed time over successes.
nlohmann::json make_summary(const std::vector<MetricsRow>& rows);

void write_csv(const std::vector<MetricsRow>& rows, const std::string& path);

// SVG strip of the episode: frames at steps 0, stride, 2*stride, ...
std::string render_trace_svg(const ExecutionLog& log, const SceneSpec& scene,
                             int stride = 1);
void render_trace(const ExecutionLog& log, const SceneSpec& scene,
                  const std::string& path, int stride = 1);

// Config file <-> ExperimentConfig. Unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

// Entry point behind the cmpc binary: gen-scenes, plan, run, bench, render.
// Returns 0 on success, 1 on usage errors, 2 on runtime failures.
int run_cli(const std::vector<std::string>& args);

}  // namespace cmpc
