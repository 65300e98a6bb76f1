// Copyright 2026 The iotplace Authors
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
#include <algorithm>
#include <chrono>

#include "iotplace/error.hpp"
#include "iotplace/solver.hpp"
#include "solver_internal.hpp"

namespace iotplace {

namespace {

struct Descent {
  std::optional<detail::Scored> result;  // set when the start was acceptable
  detail::Scored start;
  std::uint64_t evaluations = 0;
};

// Starts with every per-stream stage on the aggregation node's layer and
// pushes stages toward the devices while that does not hurt the objective.
// Lowering stage k to layer l also lowers any earlier stage sitting above l,
// which keeps the layer vector monotone.
Descent descend(const detail::SearchSpace& space, const std::string& agg) {
  const Evaluator& eval = space.evaluator();
  const Layer top = space.layer_of(agg);

  Descent d;
  detail::Scored current;
  current.placement = space.make(std::vector<Layer>(space.stage_count(), top), agg);
  current.report = eval(current.placement);
  ++d.evaluations;
  d.start = current;
  if (!space.acceptable(current.report)) return d;

  for (bool moved = true; moved;) {
    moved = false;
    for (std::size_t k = space.stage_count(); k-- > 0;) {
      std::optional<detail::Scored> best_move;
      for (int l = index_of(current.placement.layer_of[k]) - 1; l >= 0; --l) {
        std::vector<Layer> layers = current.placement.layer_of;
        layers[k] = layer_at(l);
        for (std::size_t j = 0; j < k; ++j) {
          layers[j] = std::min(layers[j], layer_at(l));
        }
        detail::Scored cand;
        cand.placement = space.with_knapsack(std::move(layers), agg);
        cand.report = eval(cand.placement);
        ++d.evaluations;
        if (!space.acceptable(cand.report)) continue;
        if (!best_move || detail::better(cand, *best_move)) best_move = std::move(cand);
      }
      if (best_move && compare_objective(best_move->report, current.report) <= 0) {
        current = std::move(*best_move);
        moved = true;
      }
    }
  }
  d.result = std::move(current);
  return d;
}

}  // namespace

Solution solve_greedy(const Topology& t, const ServiceSpec& spec,
                      const SolverConfig& cfg) {
  validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  const detail::SearchSpace space(t, spec);
  const auto& candidates = space.agg_candidates();
  if (candidates.empty()) throw Error("no candidate placement");

  std::uint64_t evaluations = 0;
  const auto preferred = detail::choose_dc(space.evaluator());
  if (preferred &&
      std::find(candidates.begin(), candidates.end(), *preferred) != candidates.end()) {
    Descent d = descend(space, *preferred);
    evaluations += d.evaluations;
    if (d.result) {
      return detail::make_solution(space, std::move(*d.result), SolverKind::Greedy,
                                   evaluations, start);
    }
  }

  // Fallback: run the descent from every candidate and keep the best.
  std::optional<detail::Scored> best;
  std::optional<detail::Scored> least_bad;
  for (const std::string& agg : candidates) {
    Descent d = descend(space, agg);
    evaluations += d.evaluations;
    if (d.result) {
      if (!best || detail::better(*d.result, *best)) best = std::move(d.result);
    } else if (!least_bad || detail::less_violating(d.start, *least_bad, space)) {
      least_bad = std::move(d.start);
    }
  }
  return detail::make_solution(space, best ? std::move(*best) : std::move(*least_bad),
                               SolverKind::Greedy, evaluations, start);
}

}  // namespace iotplace
