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
#include <span>
#include <vector>

#include "cmpc/cost.h"
#include "cmpc/physics.h"

namespace cmpc {

struct PbstoParams {
  int k = 8;               // noisy samples per iteration
  double nu = 0.008;       // per-component sampling variance, (m/s)^2
  double c_thresh = 25.0;  // good-enough total cost
  int n_min = 2;           // shortest step index eligible for truncation
  int i_max = 50;          // iteration budget
  ControlBounds bounds;
  int workers = 0;         // 0 = auto, 1 = serial
};

// Optional instrumentation filled by optimize().
struct PbstoStats {
  int iterations = 0;
  int rollouts = 0;
  bool truncated = false;
  // Candidate cost before any iteration, then after each iteration.
  std::vector<double> iteration_costs;
};

// Candidate controls plus independent Gaussian noise on each component,
// clamped to the control bounds. nu <= 0 returns the candidate untouched.
std::vector<Control> sample_noisy_controls(const std::vector<Control>& cand,
                                           double nu,
                                           const ControlBounds& bounds,
                                           Rng& rng);

// Index of the smallest cost; ties go to the lowest index. Throws on empty.
std::size_t select_best(std::span<const double> costs);

// Iterative best-of-k improvement of the control sequence. Each iteration
// draws k noisy variants of the candidate, rolls them out and keeps the best
// one only when it is strictly cheaper. A rollout whose running cost drops
// to c_thresh by step t >= n_min short-circuits everything and is returned
// truncated. Deterministic for a fixed (x0, init, seed) regardless of the
// worker count.
Plan optimize(const WorldState& x0, const std::vector<Control>& init,
              const SceneSpec& scene, const CostWeights& weights,
              const PbstoParams& params, const NoiseSpec& noise,
              std::uint64_t seed, PbstoStats* stats = nullptr);

}  // namespace cmpc
