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
#ifndef IOTPLACE_SOLVER_HPP_
#define IOTPLACE_SOLVER_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "iotplace/cost_model.hpp"
#include "iotplace/topology.hpp"
#include "iotplace/workload.hpp"

namespace iotplace {

enum class SolverKind { Exhaustive, Greedy, Anneal };

std::string_view to_string(SolverKind k) noexcept;
// Accepts "exhaustive" (alias "exact"), "greedy", "anneal".
std::optional<SolverKind> parse_solver_kind(std::string_view s) noexcept;

struct AnnealParams {
  // Calibrated from sampled neighbour deltas when unset.
  std::optional<double> initial_temperature;
  double cooling = 0.95;
  int iterations_per_temperature = 50;
  // Energy weight per unit of budget excess or capacity violation.
  double penalty = 1000.0;
  // Search stops once T < initial_temperature * min_temperature_ratio.
  double min_temperature_ratio = 1e-3;
};

struct SolverConfig {
  SolverKind kind = SolverKind::Exhaustive;
  double time_budget_ms = 1000.0;
  std::uint64_t seed = 0;
  std::uint64_t max_states = 1'000'000;
  AnnealParams anneal;
  // Worker threads for candidate evaluation. 0 = IOTPLACE_THREADS or the
  // hardware concurrency. Never changes the result.
  unsigned threads = 0;
};

// Throws Error when a config field is out of range.
void validate_config(const SolverConfig& cfg);

struct Solution {
  Placement placement;
  CostReport report;
  SolverKind kind = SolverKind::Exhaustive;
  double elapsed_ms = 0.0;
  std::uint64_t states_examined = 0;
  // report.feasible and within budget. When false the placement is the
  // least-violating one found (infeasible best effort).
  bool feasible = false;
};

Solution solve(const Topology& t, const ServiceSpec& spec,
               const SolverConfig& cfg);

// Throws SearchSpaceTooLarge when the legal placement count exceeds
// cfg.max_states.
Solution solve_exhaustive(const Topology& t, const ServiceSpec& spec,
                          const SolverConfig& cfg);
Solution solve_greedy(const Topology& t, const ServiceSpec& spec,
                      const SolverConfig& cfg);
Solution solve_anneal(const Topology& t, const ServiceSpec& spec,
                      const SolverConfig& cfg);

// Data centre minimising activation-weighted edge->DC latency.
std::string choose_dc(const Topology& t, const ServiceSpec& spec);

// Greedy knapsack over visited gateways for a placement that already puts
// some stage on the Gateway layer. remaining_budget is the slack left by the
// placement with no predeployment.
std::set<std::string> choose_predeploy(const Topology& t,
                                       const ServiceSpec& spec,
                                       const Placement& partial,
                                       double remaining_budget);

// Candidate aggregation nodes: every DC reachable from all active devices'
// edges, plus (when the pipeline has merged stages) Edge nodes that contain
// every active device. Sorted by id.
std::vector<std::string> candidate_agg_nodes(const Topology& t,
                                             const ServiceSpec& spec);
std::vector<std::string> visited_gateways(const Topology& t,
                                          const ServiceSpec& spec);

// Number of legal placements the exhaustive solver enumerates, saturating at
// UINT64_MAX.
std::uint64_t count_placements(const Topology& t, const ServiceSpec& spec);

struct CompareRow {
  SolverKind kind = SolverKind::Exhaustive;
  std::optional<Solution> solution;
  std::string annotation;  // "optimal", "feasible", "infeasible" or the error
};

std::vector<CompareRow> compare(const Topology& t, const ServiceSpec& spec,
                                std::span<const SolverConfig> configs);

}  // namespace iotplace

#endif  // IOTPLACE_SOLVER_HPP_
