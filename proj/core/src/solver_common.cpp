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
#include <cmath>
#include <limits>
#include <map>

#include "iotplace/error.hpp"
#include "iotplace/solver.hpp"
#include "placement_context.hpp"
#include "solver_internal.hpp"

namespace iotplace {

namespace detail {

namespace {

const Node& gateway_of(const Topology& t, const std::string& device) {
  return t.node(*t.node(device).parent);
}

const Node& edge_of(const Topology& t, const std::string& device) {
  return t.node(*gateway_of(t, device).parent);
}

}  // namespace

std::vector<std::string> visited_gateways(const Evaluator& e) {
  std::set<std::string> ids;
  for (const auto& slot : e.streams()) {
    for (const std::string& d : slot) ids.insert(gateway_of(e.topology(), d).id);
  }
  return {ids.begin(), ids.end()};
}

std::vector<std::string> candidate_agg_nodes(const Evaluator& e) {
  const Topology& t = e.topology();
  std::set<std::string> edges;
  for (const auto& slot : e.streams()) {
    for (const std::string& d : slot) edges.insert(edge_of(t, d).id);
  }
  std::vector<std::string> out;
  for (const std::string& dc : t.ids_on(Layer::Cloud)) {
    const bool reachable = std::all_of(edges.begin(), edges.end(), [&](const auto& edge) {
      return t.find_link(edge, dc) != nullptr;
    });
    if (reachable) out.push_back(dc);
  }
  if (e.spec().pipeline.has_aggregated()) {
    for (const std::string& edge : t.ids_on(Layer::Edge)) {
      if (edges.empty() || (edges.size() == 1 && *edges.begin() == edge)) {
        out.push_back(edge);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::string> choose_dc(const Evaluator& e) {
  const Topology& t = e.topology();
  std::map<std::string, double> weight;  // slot-activations per edge
  for (const auto& slot : e.streams()) {
    for (const std::string& d : slot) weight[edge_of(t, d).id] += 1.0;
  }
  std::optional<std::string> best;
  double best_score = std::numeric_limits<double>::infinity();
  for (const std::string& dc : t.ids_on(Layer::Cloud)) {
    double score = 0.0;
    bool reachable = true;
    for (const auto& [edge, w] : weight) {
      const Link* link = t.find_link(edge, dc);
      if (link == nullptr) {
        reachable = false;
        break;
      }
      score += w * link->latency_ms;
    }
    // ids_on is sorted, so strict < keeps the smaller id on ties.
    if (reachable && score < best_score) {
      best = dc;
      best_score = score;
    }
  }
  return best;
}

std::set<std::string> choose_predeploy(const Evaluator& e,
                                       const Placement& partial,
                                       double remaining_budget) {
  if (!partial.uses_gateway()) return {};
  const Topology& t = e.topology();
  const Pipeline& pipeline = e.spec().pipeline;

  double penalty = 0.0;
  double deploy = 0.0;
  double dispatch = 0.0;
  for (std::size_t k = 0; k < partial.layer_of.size(); ++k) {
    if (partial.layer_of[k] != Layer::Gateway) continue;
    penalty += pipeline.stages[k].dispatch_penalty_ms;
    deploy += pipeline.stages[k].deploy_cost;
    dispatch += pipeline.stages[k].dispatch_cost;
  }

  // Streams hit by each gateway's dispatch: those in its first active slot.
  std::map<std::string, double> first_slot_streams;
  std::set<std::string> seen;
  double pairs = 0.0;
  for (const auto& slot : e.streams()) {
    std::map<std::string, double> now;
    for (const std::string& d : slot) now[gateway_of(t, d).id] += 1.0;
    for (const auto& [gw, n] : now) {
      if (seen.insert(gw).second) first_slot_streams[gw] = n;
    }
    pairs += static_cast<double>(slot.size());
  }

  struct Option {
    std::string gateway;
    double benefit;
    double cost;
    double ratio;
  };
  constexpr double kEpsilon = 1e-9;
  std::vector<Option> options;
  for (const auto& [gw, n] : first_slot_streams) {
    const double benefit = pairs > 0 ? n * penalty / pairs : 0.0;
    const double cost = deploy - dispatch;
    if (benefit <= 0.0 && cost >= 0.0) continue;
    options.push_back({gw, benefit, cost, benefit / std::max(cost, kEpsilon)});
  }
  std::stable_sort(options.begin(), options.end(),
                   [](const Option& a, const Option& b) {
                     if (a.ratio != b.ratio) return a.ratio > b.ratio;
                     return a.gateway < b.gateway;
                   });

  std::set<std::string> chosen;
  double remaining = remaining_budget;
  for (const Option& o : options) {
    if (o.cost > remaining + 1e-12) continue;
    chosen.insert(o.gateway);
    remaining -= o.cost;
  }
  return chosen;
}

SearchSpace::SearchSpace(const Topology& t, const ServiceSpec& spec)
    : eval_(t, spec),
      agg_candidates_(detail::candidate_agg_nodes(eval_)),
      visited_(detail::visited_gateways(eval_)),
      stage_count_(spec.pipeline.per_stream_count()),
      alloc_(0) {
  if (spec.pipeline.has_aggregated()) {
    const double peak = eval_.peak_aggregated_demand();
    alloc_ = std::max(
        1, static_cast<int>(std::ceil(peak - 1e-9 * std::max(1.0, peak))));
  }
}

Layer SearchSpace::layer_of(const std::string& node) const {
  return eval_.topology().node(node).layer;
}

Placement SearchSpace::make(std::vector<Layer> layers, std::string agg,
                            std::set<std::string> predeploy) const {
  Placement p;
  p.layer_of = std::move(layers);
  p.agg_node = std::move(agg);
  if (p.uses_gateway()) p.predeploy = std::move(predeploy);
  p.alloc = alloc_;
  return p;
}

Placement SearchSpace::with_knapsack(std::vector<Layer> layers,
                                     std::string agg) const {
  Placement p = make(std::move(layers), std::move(agg));
  if (!p.uses_gateway()) return p;
  const CostReport bare = eval_(p);
  p.predeploy = detail::choose_predeploy(eval_, p, budget() - bare.total_cost);
  return p;
}

bool SearchSpace::acceptable(const CostReport& r) const noexcept {
  return r.feasible && check_budget(r, budget()).within;
}

double SearchSpace::infeasibility(const CostReport& r) const noexcept {
  return check_budget(r, budget()).excess + r.violation_magnitude();
}

bool better(const Scored& a, const Scored& b) {
  if (int c = compare_objective(a.report, b.report); c != 0) return c < 0;
  return canonical_less(a.placement, b.placement);
}

bool less_violating(const Scored& a, const Scored& b, const SearchSpace& s) {
  const double va = s.infeasibility(a.report);
  const double vb = s.infeasibility(b.report);
  if (!nearly_equal(va, vb)) return va < vb;
  return better(a, b);
}

Solution make_solution(const SearchSpace& s, Scored best, SolverKind kind,
                       std::uint64_t states,
                       std::chrono::steady_clock::time_point start) {
  Solution sol;
  sol.feasible = s.acceptable(best.report);
  sol.placement = std::move(best.placement);
  sol.report = std::move(best.report);
  sol.kind = kind;
  sol.states_examined = states;
  sol.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return sol;
}

}  // namespace detail

std::string_view to_string(SolverKind k) noexcept {
  switch (k) {
    case SolverKind::Exhaustive:
      return "exhaustive";
    case SolverKind::Greedy:
      return "greedy";
    case SolverKind::Anneal:
      return "anneal";
  }
  return "?";
}

std::optional<SolverKind> parse_solver_kind(std::string_view s) noexcept {
  if (s == "exhaustive" || s == "exact") return SolverKind::Exhaustive;
  if (s == "greedy") return SolverKind::Greedy;
  if (s == "anneal") return SolverKind::Anneal;
  return std::nullopt;
}

void validate_config(const SolverConfig& cfg) {
  if (!(cfg.time_budget_ms > 0.0)) throw Error("time_budget_ms must be positive");
  if (cfg.max_states == 0) throw Error("max_states must be positive");
  const AnnealParams& a = cfg.anneal;
  if (!(a.cooling > 0.0 && a.cooling < 1.0)) {
    throw Error("cooling factor must lie in (0, 1)");
  }
  if (a.iterations_per_temperature <= 0) {
    throw Error("iterations per temperature must be positive");
  }
  if (a.initial_temperature && !(*a.initial_temperature > 0.0)) {
    throw Error("initial temperature must be positive");
  }
  if (!(a.penalty >= 0.0)) throw Error("penalty must be nonnegative");
  if (!(a.min_temperature_ratio > 0.0 && a.min_temperature_ratio < 1.0)) {
    throw Error("min temperature ratio must lie in (0, 1)");
  }
}

Solution solve(const Topology& t, const ServiceSpec& spec,
               const SolverConfig& cfg) {
  switch (cfg.kind) {
    case SolverKind::Exhaustive:
      return solve_exhaustive(t, spec, cfg);
    case SolverKind::Greedy:
      return solve_greedy(t, spec, cfg);
    case SolverKind::Anneal:
      return solve_anneal(t, spec, cfg);
  }
  throw Error("unknown solver kind");
}

std::string choose_dc(const Topology& t, const ServiceSpec& spec) {
  auto dc = detail::choose_dc(Evaluator(t, spec));
  if (!dc) throw Error("no route");
  return *dc;
}

std::set<std::string> choose_predeploy(const Topology& t,
                                       const ServiceSpec& spec,
                                       const Placement& partial,
                                       double remaining_budget) {
  return detail::choose_predeploy(Evaluator(t, spec), partial, remaining_budget);
}

std::vector<std::string> candidate_agg_nodes(const Topology& t,
                                             const ServiceSpec& spec) {
  return detail::candidate_agg_nodes(Evaluator(t, spec));
}

std::vector<std::string> visited_gateways(const Topology& t,
                                          const ServiceSpec& spec) {
  return detail::visited_gateways(Evaluator(t, spec));
}

std::vector<CompareRow> compare(const Topology& t, const ServiceSpec& spec,
                                std::span<const SolverConfig> configs) {
  std::vector<CompareRow> rows;
  rows.reserve(configs.size());
  for (const SolverConfig& cfg : configs) {
    CompareRow row;
    row.kind = cfg.kind;
    try {
      Solution s = solve(t, spec, cfg);
      if (!s.feasible) {
        row.annotation = "infeasible";
      } else {
        row.annotation =
            cfg.kind == SolverKind::Exhaustive ? "optimal" : "feasible";
      }
      row.solution = std::move(s);
    } catch (const Error& e) {
      row.annotation = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace iotplace
