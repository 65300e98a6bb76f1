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
#ifndef IOTPLACE_SRC_SOLVER_INTERNAL_HPP_
#define IOTPLACE_SRC_SOLVER_INTERNAL_HPP_

#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iotplace/cost_model.hpp"
#include "iotplace/solver.hpp"

namespace iotplace::detail {

// Shared view of the search space for one (topology, service) instance.
class SearchSpace {
 public:
  SearchSpace(const Topology& t, const ServiceSpec& spec);

  const Evaluator& evaluator() const noexcept { return eval_; }
  const std::vector<std::string>& agg_candidates() const noexcept {
    return agg_candidates_;
  }
  const std::vector<std::string>& visited() const noexcept { return visited_; }
  std::size_t stage_count() const noexcept { return stage_count_; }
  double budget() const noexcept { return eval_.spec().budget; }

  Layer layer_of(const std::string& node) const;

  // alloc fixed to the minimum reservation (0 without merged stages).
  Placement make(std::vector<Layer> layers, std::string agg,
                 std::set<std::string> predeploy = {}) const;

  // layers + agg with predeploy chosen by the knapsack rule.
  Placement with_knapsack(std::vector<Layer> layers, std::string agg) const;

  bool acceptable(const CostReport& r) const noexcept;
  // Budget excess plus violation magnitudes; 0 for acceptable reports.
  double infeasibility(const CostReport& r) const noexcept;

 private:
  Evaluator eval_;
  std::vector<std::string> agg_candidates_;
  std::vector<std::string> visited_;
  std::size_t stage_count_;
  int alloc_;
};

struct Scored {
  Placement placement;
  CostReport report;
};

// Objective first, then the canonical placement encoding.
bool better(const Scored& a, const Scored& b);
// Less infeasible first, then better().
bool less_violating(const Scored& a, const Scored& b, const SearchSpace& s);

std::vector<std::string> visited_gateways(const Evaluator& e);
std::vector<std::string> candidate_agg_nodes(const Evaluator& e);
std::set<std::string> choose_predeploy(const Evaluator& e,
                                       const Placement& partial,
                                       double remaining_budget);
std::optional<std::string> choose_dc(const Evaluator& e);

Solution make_solution(const SearchSpace& s, Scored best, SolverKind kind,
                       std::uint64_t states,
                       std::chrono::steady_clock::time_point start);

}  // namespace iotplace::detail

#endif  // IOTPLACE_SRC_SOLVER_INTERNAL_HPP_
