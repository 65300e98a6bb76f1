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
#include <cmath>
#include <random>

#include "iotplace/error.hpp"
#include "iotplace/solver.hpp"
#include "parallel.hpp"
#include "solver_internal.hpp"

namespace iotplace {

namespace {

using Clock = std::chrono::steady_clock;

constexpr int kCalibrationSamples = 32;
constexpr int kProposalAttempts = 16;

struct State {
  std::vector<Layer> layers;
  std::size_t agg = 0;        // index into the candidate list
  std::vector<bool> predeploy;  // over visited gateways

  bool uses_gateway() const {
    return std::find(layers.begin(), layers.end(), Layer::Gateway) != layers.end();
  }
};

class Annealer {
 public:
  Annealer(const detail::SearchSpace& space, const SolverConfig& cfg)
      : space_(space), cfg_(cfg), rng_(cfg.seed) {}

  Placement placement_of(const State& s) const {
    std::set<std::string> pre;
    for (std::size_t i = 0; i < s.predeploy.size(); ++i) {
      if (s.predeploy[i]) pre.insert(space_.visited()[i]);
    }
    return space_.make(s.layers, space_.agg_candidates()[s.agg], std::move(pre));
  }

  double energy(const CostReport& r) const {
    return r.mean_latency_ms + cfg_.anneal.penalty * space_.infeasibility(r);
  }

  // Draws a legal neighbour; returns false when none was found.
  bool propose(const State& from, State& to) {
    for (int attempt = 0; attempt < kProposalAttempts; ++attempt) {
      to = from;
      switch (draw(3)) {
        case 0: {  // raise or lower one stage
          if (to.layers.empty()) continue;
          const std::size_t k = draw(to.layers.size());
          const int step = draw(2) == 0 ? -1 : 1;
          const int v = index_of(to.layers[k]) + step;
          const int top = index_of(agg_layer(to.agg));
          if (v < 0 || v > top) continue;
          if (k > 0 && v < index_of(to.layers[k - 1])) continue;
          if (k + 1 < to.layers.size() && v > index_of(to.layers[k + 1])) continue;
          to.layers[k] = layer_at(v);
          break;
        }
        case 1: {  // move the aggregation point
          const std::size_t n = space_.agg_candidates().size();
          if (n < 2) continue;
          to.agg = (to.agg + 1 + draw(n - 1)) % n;
          const Layer top = agg_layer(to.agg);
          for (Layer& l : to.layers) l = std::min(l, top);
          break;
        }
        default: {  // toggle one visited gateway
          if (!to.uses_gateway() || to.predeploy.empty()) continue;
          const std::size_t i = draw(to.predeploy.size());
          to.predeploy[i] = !to.predeploy[i];
          break;
        }
      }
      if (!to.uses_gateway()) std::fill(to.predeploy.begin(), to.predeploy.end(), false);
      return true;
    }
    return false;
  }

  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  std::size_t draw(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

 private:
  Layer agg_layer(std::size_t i) const {
    return space_.layer_of(space_.agg_candidates()[i]);
  }

  const detail::SearchSpace& space_;
  const SolverConfig& cfg_;
  std::mt19937_64 rng_;
};

}  // namespace

Solution solve_anneal(const Topology& t, const ServiceSpec& spec,
                      const SolverConfig& cfg) {
  validate_config(cfg);
  const auto start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double, std::milli>(cfg.time_budget_ms));
  const detail::SearchSpace space(t, spec);
  const auto& candidates = space.agg_candidates();
  if (candidates.empty()) throw Error("no candidate placement");
  const Evaluator& eval = space.evaluator();
  Annealer annealer(space, cfg);

  // Start from the greedy construction when it succeeds, otherwise from
  // every stage on the preferred DC's layer.
  State current;
  current.predeploy.assign(space.visited().size(), false);
  const Solution seed = solve_greedy(t, spec, cfg);
  if (seed.feasible) {
    const Placement& p = seed.placement;
    current.layers = p.layer_of;
    current.agg = std::find(candidates.begin(), candidates.end(), p.agg_node) -
                  candidates.begin();
    for (std::size_t i = 0; i < space.visited().size(); ++i) {
      current.predeploy[i] = p.predeploy.contains(space.visited()[i]);
    }
  } else {
    if (auto dc = detail::choose_dc(eval)) {
      auto it = std::find(candidates.begin(), candidates.end(), *dc);
      if (it != candidates.end()) current.agg = it - candidates.begin();
    }
    current.layers.assign(space.stage_count(),
                          space.layer_of(candidates[current.agg]));
  }

  detail::Scored scored{annealer.placement_of(current), {}};
  scored.report = eval(scored.placement);
  double current_energy = annealer.energy(scored.report);
  std::uint64_t evaluations = 1 + seed.states_examined;

  std::optional<detail::Scored> best;
  detail::Scored least_bad = scored;
  auto consider = [&](const detail::Scored& s) {
    if (space.acceptable(s.report)) {
      if (!best || detail::better(s, *best)) best = s;
    } else if (!best && detail::less_violating(s, least_bad, space)) {
      least_bad = s;
    }
  };
  consider(scored);

  double temperature = 1.0;
  if (cfg.anneal.initial_temperature) {
    temperature = *cfg.anneal.initial_temperature;
  } else {
    // Mean |dE| over sampled neighbours, scaled so an average uphill move is
    // accepted with probability 1/2. Proposals are drawn sequentially and
    // only their evaluation is parallel.
    std::vector<Placement> samples;
    State next;
    for (int i = 0; i < kCalibrationSamples; ++i) {
      if (annealer.propose(current, next)) samples.push_back(annealer.placement_of(next));
    }
    std::vector<CostReport> reports(samples.size());
    detail::parallel_for(samples.size(), detail::resolve_threads(cfg.threads),
                         [&](std::size_t i) { reports[i] = eval(samples[i]); });
    evaluations += samples.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      sum += std::abs(annealer.energy(reports[i]) - current_energy);
      consider({samples[i], reports[i]});
    }
    const double mean = samples.empty() ? 0.0 : sum / static_cast<double>(samples.size());
    if (mean > 0.0) temperature = mean / std::log(2.0);
  }
  const double floor = temperature * cfg.anneal.min_temperature_ratio;

  State next;
  bool out_of_time = false;
  while (temperature >= floor && !out_of_time) {
    for (int it = 0; it < cfg.anneal.iterations_per_temperature; ++it) {
      if (Clock::now() >= deadline) {
        out_of_time = true;
        break;
      }
      if (!annealer.propose(current, next)) {
        out_of_time = true;  // no legal move exists
        break;
      }
      detail::Scored cand{annealer.placement_of(next), {}};
      cand.report = eval(cand.placement);
      ++evaluations;
      const double e = annealer.energy(cand.report);
      const double delta = e - current_energy;
      if (delta <= 0.0 || annealer.unit() < std::exp(-delta / temperature)) {
        current = next;
        current_energy = e;
      }
      consider(cand);
    }
    temperature *= cfg.anneal.cooling;
  }

  return detail::make_solution(space, best ? std::move(*best) : std::move(least_bad),
                               SolverKind::Anneal, evaluations, start);
}

}  // namespace iotplace
