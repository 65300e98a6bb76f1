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
#ifndef IOTPLACE_SRC_PLACEMENT_CONTEXT_HPP_
#define IOTPLACE_SRC_PLACEMENT_CONTEXT_HPP_

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "iotplace/cost_model.hpp"
#include "iotplace/topology.hpp"
#include "iotplace/workload.hpp"

namespace iotplace::detail {

// Orders node and link pointers by id so that map iteration (and therefore
// floating-point summation order) is stable across runs.
struct NodeById {
  bool operator()(const Node* a, const Node* b) const { return a->id < b->id; }
};
struct LinkById {
  bool operator()(const Link* a, const Link* b) const {
    return std::tie(a->src, a->dst) < std::tie(b->src, b->dst);
  }
};

template <typename V>
using NodeMap = std::map<const Node*, V, NodeById>;
template <typename V>
using LinkMap = std::map<const Link*, V, LinkById>;

// A link on a stream's path and the fraction of the source rate it carries.
struct Hop {
  const Link* link = nullptr;
  double rate_factor = 1.0;
};

// Everything about one device's stream that does not depend on the slot.
struct StreamPlan {
  const Node* gateway = nullptr;
  std::vector<Hop> hops;
  // Host and CPU demand per Mbps of source rate, per per-stream stage.
  std::vector<const Node*> hosts;
  std::vector<double> cpu_factor;
  // Link latencies plus processing time of every stage, without dispatch.
  double latency_ms = 0.0;
};

// Placement resolved against a topology and pipeline. Construction checks
// the placement invariants and routability of every device in `streams`
// and throws InvalidPlacement otherwise.
class PlacementContext {
 public:
  PlacementContext(const Topology& t, const Pipeline& pipeline,
                   const Placement& p, const ActiveStreams& streams);

  const StreamPlan& plan(const std::string& device) const;
  const Node& agg_node() const noexcept { return *agg_; }
  const Placement& placement() const noexcept { return *placement_; }

  bool has_gateway_stage() const noexcept { return !gateway_stages_.empty(); }
  const std::vector<std::size_t>& gateway_stages() const noexcept {
    return gateway_stages_;
  }
  // A non-predeployed gateway needs an on-demand dispatch.
  bool needs_dispatch(const Node& gateway) const;
  double dispatch_penalty_ms() const noexcept { return dispatch_penalty_ms_; }
  double dispatch_cost() const noexcept { return dispatch_cost_; }
  double deploy_cost_per_gateway() const noexcept { return deploy_cost_; }

  // Merged-stage CPU per Mbps entering the aggregation point.
  double aggregated_cpu_factor() const noexcept { return agg_cpu_factor_; }
  // Output rate of the per-stream part per Mbps of source rate.
  double stream_output_factor() const noexcept { return out_factor_; }
  bool has_aggregated() const noexcept { return has_aggregated_; }

 private:
  const Topology* topology_;
  const Pipeline* pipeline_;
  const Placement* placement_;
  const Node* agg_ = nullptr;
  std::map<std::string, StreamPlan, std::less<>> plans_;
  std::vector<std::size_t> gateway_stages_;
  double dispatch_penalty_ms_ = 0.0;
  double dispatch_cost_ = 0.0;
  double deploy_cost_ = 0.0;
  double agg_cpu_factor_ = 0.0;
  double out_factor_ = 1.0;
  bool has_aggregated_ = false;
};

// Product of the reductions of all per-stream stages.
double stream_output_factor(const Pipeline& p);
double aggregated_cpu_factor(const Pipeline& p);

// Excess above a limit, with a small relative tolerance absorbing rounding.
double excess_over(double load, double limit);

// Keeps the largest magnitude per (kind, id); output sorted by (kind, id).
class ViolationTally {
 public:
  void add(const std::string& kind, const std::string& id, double magnitude);
  std::vector<Violation> list() const;

 private:
  std::map<std::pair<std::string, std::string>, double> worst_;
};

}  // namespace iotplace::detail

#endif  // IOTPLACE_SRC_PLACEMENT_CONTEXT_HPP_
