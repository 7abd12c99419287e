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

#include "cmpc/pbsto.h"

#include <random>
#include <stdexcept>
#include <utility>

#include "cmpc/parallel.h"

namespace cmpc {
namespace {

struct Eval {
  Plan plan;
  bool truncated = false;
};

// Rolls the controls out, accumulating cost step by step. The rollout stops
// at the first step t (1-based count >= n_min) where stopping would already
// be good enough, and the plan is cut there.
Eval evaluate(const WorldState& x0, const std::vector<Control>& controls,
              const SceneSpec& scene, const CostWeights& weights,
              const PbstoParams& params, const NoiseSpec& noise, Rng* rng) {
  PrefixCost pc(scene, weights);
  Eval ev;
  std::size_t kept = controls.size();
  const StepCallback cb = [&](int t, const WorldState& x_t,
                              const WorldState& x_next) {
    pc.add_step(controls[static_cast<std::size_t>(t)], x_t, x_next);
    if (t + 1 >= params.n_min &&
        pc.total_with_goal(x_next) <= params.c_thresh) {
      ev.truncated = true;
      kept = static_cast<std::size_t>(t) + 1;
      return true;
    }
    return false;
  };
  ev.plan.predicted_states = rollout(x0, controls, scene, noise, rng, cb);
  ev.plan.controls.assign(controls.begin(),
                          controls.begin() + static_cast<long>(kept));
  ev.plan.per_step_costs = pc.per_step();
  ev.plan.total_cost = pc.total_with_goal(ev.plan.predicted_states.back());
  return ev;
}

}  // namespace

std::vector<Control> sample_noisy_controls(const std::vector<Control>& cand,
                                           double nu,
                                           const ControlBounds& bounds,
                                           Rng& rng) {
  if (nu <= 0.0) return cand;
  std::normal_distribution<double> d(0.0, std::sqrt(nu));
  std::vector<Control> out;
  out.reserve(cand.size());
  for (const Control& c : cand) {
    Control s = c;
    s.vx += d(rng);
    s.vy += d(rng);
    s.vrot += d(rng);
    s.vgrip += d(rng);
    out.push_back(clamp_control(s, bounds));
  }
  return out;
}

std::size_t select_best(std::span<const double> costs) {
  if (costs.empty()) throw std::invalid_argument("select_best: no costs");
  std::size_t best = 0;
  for (std::size_t i = 1; i < costs.size(); ++i) {
    if (costs[i] < costs[best]) best = i;
  }
  return best;
}

Plan optimize(const WorldState& x0, const std::vector<Control>& init,
              const SceneSpec& scene, const CostWeights& weights,
              const PbstoParams& params, const NoiseSpec& noise,
              std::uint64_t seed, PbstoStats* stats) {
  PbstoStats local;
  PbstoStats& st = stats != nullptr ? *stats : local;
  st = PbstoStats{};

  Rng init_rng(mix_seed(seed, std::uint64_t{0}, std::uint64_t{0}));
  Eval cand = evaluate(x0, init, scene, weights, params, noise, &init_rng);
  st.rollouts = 1;
  st.iteration_costs.push_back(cand.plan.total_cost);
  if (cand.truncated) {
    st.truncated = true;
    return std::move(cand.plan);
  }

  const int workers = resolve_workers(params.workers);
  std::vector<Eval> evals(static_cast<std::size_t>(params.k));
  std::vector<double> costs(static_cast<std::size_t>(params.k));

  while (st.iterations < params.i_max &&
         cand.plan.total_cost > params.c_thresh) {
    const int iter = st.iterations;
    parallel_for(params.k, workers, [&](int k) {
      Rng rng(mix_seed(seed, static_cast<std::uint64_t>(iter) + 1,
                       static_cast<std::uint64_t>(k)));
      const std::vector<Control> noisy =
          sample_noisy_controls(cand.plan.controls, params.nu, params.bounds,
                                rng);
      evals[static_cast<std::size_t>(k)] =
          evaluate(x0, noisy, scene, weights, params, noise, &rng);
      costs[static_cast<std::size_t>(k)] =
          evals[static_cast<std::size_t>(k)].plan.total_cost;
    });
    st.rollouts += params.k;
    ++st.iterations;

    // all k samples always run; the lowest truncating index wins so the
    // result does not depend on thread scheduling
    bool done = false;
    for (std::size_t k = 0; k < evals.size(); ++k) {
      if (evals[k].truncated) {
        cand = std::move(evals[k]);
        st.truncated = true;
        done = true;
        break;
      }
    }
    if (!done) {
      const std::size_t best = select_best(costs);
      if (costs[best] < cand.plan.total_cost) cand = std::move(evals[best]);
    }
    st.iteration_costs.push_back(cand.plan.total_cost);
    if (done) break;
  }
  return std::move(cand.plan);
}

}  // namespace cmpc
