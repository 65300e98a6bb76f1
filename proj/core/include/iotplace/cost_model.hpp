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
#ifndef IOTPLACE_COST_MODEL_HPP_
#define IOTPLACE_COST_MODEL_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "iotplace/topology.hpp"
#include "iotplace/workload.hpp"

namespace iotplace {

// Where each part of the pipeline runs.
//
// layer_of[k] is the layer hosting per-stream stage k (0-based, one entry per
// stage before the aggregation index). Layers are nondecreasing and bounded
// by the aggregation node's layer. agg_node hosts the merged stages; when the
// pipeline has none it names the sink data centre.
struct Placement {
  std::vector<Layer> layer_of;
  std::string agg_node;
  std::set<std::string> predeploy;  // gateways with per-stream functions installed
  int alloc = 0;                    // CPU units reserved at agg_node

  bool uses_gateway() const noexcept;

  friend bool operator==(const Placement&, const Placement&) = default;
};

// Total order used for tie-breaking: layer indices, then agg node id, then
// the sorted predeploy ids.
bool canonical_less(const Placement& a, const Placement& b);

struct Violation {
  std::string kind;  // "cpu", "alloc" or "bandwidth"
  std::string id;    // node id, or link key for bandwidth
  double magnitude = 0.0;  // peak excess over all slots

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct CostReport {
  double server_cost = 0.0;
  double network_cost = 0.0;
  double deploy_cost = 0.0;
  double dispatch_cost = 0.0;
  double total_cost = 0.0;
  double mean_latency_ms = 0.0;
  double max_latency_ms = 0.0;
  std::map<std::string, double> peak_cpu;
  bool feasible = true;
  std::vector<Violation> violations;

  double violation_magnitude() const noexcept;
};

// Lexicographic (mean latency, total cost) with a 1e-9 relative tie band.
// Returns <0, 0 or >0.
int compare_objective(const CostReport& a, const CostReport& b) noexcept;
bool nearly_equal(double a, double b) noexcept;

// Evaluates placements for one (topology, service) pair. Active streams are
// resolved once at construction, so reuse an Evaluator when scoring many
// placements. Thread-safe for concurrent calls.
class Evaluator {
 public:
  Evaluator(const Topology& t, const ServiceSpec& spec);

  const Topology& topology() const noexcept { return *topology_; }
  const ServiceSpec& spec() const noexcept { return *spec_; }
  const ActiveStreams& streams() const noexcept { return streams_; }

  // Throws InvalidPlacement.
  CostReport operator()(const Placement& p) const;

  // Peak over slots of the merged stages' CPU demand.
  double peak_aggregated_demand() const;

 private:
  const Topology* topology_;
  const ServiceSpec* spec_;
  ActiveStreams streams_;
};

CostReport evaluate(const Topology& t, const ServiceSpec& spec,
                    const Placement& p);

// Smallest reservation covering the merged stages' peak demand (at least 1).
// p.alloc is ignored. Throws Error("aggregation node too small").
int min_alloc(const Topology& t, const ServiceSpec& spec, const Placement& p);

struct BudgetVerdict {
  bool within = true;
  double excess = 0.0;
};

BudgetVerdict check_budget(const CostReport& r, double budget) noexcept;

}  // namespace iotplace

#endif  // IOTPLACE_COST_MODEL_HPP_
