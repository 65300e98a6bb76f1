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
#include "iotplace/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "iotplace/error.hpp"
#include "placement_context.hpp"

namespace iotplace {

namespace {

constexpr double kMegabitsPerGigabyte = 8000.0;

}  // namespace

bool Placement::uses_gateway() const noexcept {
  return std::find(layer_of.begin(), layer_of.end(), Layer::Gateway) !=
         layer_of.end();
}

bool canonical_less(const Placement& a, const Placement& b) {
  return std::tie(a.layer_of, a.agg_node, a.predeploy) <
         std::tie(b.layer_of, b.agg_node, b.predeploy);
}

double CostReport::violation_magnitude() const noexcept {
  double sum = 0.0;
  for (const Violation& v : violations) sum += v.magnitude;
  return sum;
}

bool nearly_equal(double a, double b) noexcept {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

int compare_objective(const CostReport& a, const CostReport& b) noexcept {
  if (!nearly_equal(a.mean_latency_ms, b.mean_latency_ms)) {
    return a.mean_latency_ms < b.mean_latency_ms ? -1 : 1;
  }
  if (!nearly_equal(a.total_cost, b.total_cost)) {
    return a.total_cost < b.total_cost ? -1 : 1;
  }
  return 0;
}

Evaluator::Evaluator(const Topology& t, const ServiceSpec& spec)
    : topology_(&t),
      spec_(&spec),
      streams_(derive_active_streams(t, spec.scenario)) {}

double Evaluator::peak_aggregated_demand() const {
  const Pipeline& pipeline = spec_->pipeline;
  const double per_stream = spec_->scenario.source_rate_mbps *
                            detail::stream_output_factor(pipeline) *
                            detail::aggregated_cpu_factor(pipeline);
  double peak = 0.0;
  for (const auto& slot : streams_) {
    peak = std::max(peak, per_stream * static_cast<double>(slot.size()));
  }
  return peak;
}

// Period-level accumulation: CPU-seconds and gigabytes are summed per node
// and link over the whole horizon and priced once at the end.
CostReport Evaluator::operator()(const Placement& p) const {
  const Topology& t = *topology_;
  const Scenario& sc = spec_->scenario;
  const detail::PlacementContext ctx(t, spec_->pipeline, p, streams_);
  const Node& agg = ctx.agg_node();
  const double source = sc.source_rate_mbps;

  detail::NodeMap<double> cpu_seconds;
  detail::LinkMap<double> gigabytes;
  std::set<std::string> dispatched;
  detail::ViolationTally tally;
  CostReport r;
  double latency_sum = 0.0;
  std::size_t latency_count = 0;

  for (const auto& slot : streams_) {
    detail::NodeMap<double> load;
    detail::LinkMap<double> link_rate;
    std::set<std::string> touched_now;

    for (const std::string& device : slot) {
      const detail::StreamPlan& plan = ctx.plan(device);
      for (std::size_t k = 0; k < plan.hosts.size(); ++k) {
        load[plan.hosts[k]] += plan.cpu_factor[k] * source;
      }
      for (const detail::Hop& hop : plan.hops) {
        link_rate[hop.link] += hop.rate_factor * source;
      }

      double latency = plan.latency_ms;
      const std::string& gw = plan.gateway->id;
      if (ctx.needs_dispatch(*plan.gateway) &&
          (touched_now.contains(gw) || !dispatched.contains(gw))) {
        dispatched.insert(gw);
        touched_now.insert(gw);
        latency += ctx.dispatch_penalty_ms();
      }
      latency_sum += latency;
      ++latency_count;
      r.max_latency_ms = std::max(r.max_latency_ms, latency);
    }

    const double merged_demand = ctx.has_aggregated()
                                     ? static_cast<double>(slot.size()) * source *
                                           ctx.stream_output_factor() *
                                           ctx.aggregated_cpu_factor()
                                     : 0.0;

    for (const auto& [node, used] : load) {
      cpu_seconds[node] += used * sc.slot_seconds;
    }
    for (const auto& [link, rate] : link_rate) {
      gigabytes[link] += rate * sc.slot_seconds / kMegabitsPerGigabyte;
      if (link->bandwidth_mbps) {
        if (double e = detail::excess_over(rate, *link->bandwidth_mbps); e > 0) {
          tally.add("bandwidth", link->key(), e);
        }
      }
    }

    detail::NodeMap<double> occupancy = load;
    occupancy[&agg] += static_cast<double>(p.alloc);
    for (const auto& [node, occ] : occupancy) {
      if (double e = detail::excess_over(occ, node->capacity_cpu); e > 0) {
        tally.add("cpu", node->id, e);
      }
    }
    if (double e = detail::excess_over(merged_demand, p.alloc); e > 0) {
      tally.add("alloc", agg.id, e);
    }

    if (!slot.empty()) {
      detail::NodeMap<double> used = load;
      if (ctx.has_aggregated()) used[&agg] += merged_demand;
      for (const auto& [node, cpu] : used) {
        double& peak = r.peak_cpu[node->id];
        peak = std::max(peak, cpu);
      }
    }
  }

  const double period = sc.period_seconds();
  for (const auto& [node, seconds] : cpu_seconds) {
    r.server_cost += seconds / period * node->cpu_cost_rate;
  }
  r.server_cost += static_cast<double>(p.alloc) * agg.cpu_cost_rate;
  for (const auto& [link, gb] : gigabytes) {
    r.network_cost += gb * link->traffic_cost_rate;
  }
  r.deploy_cost =
      static_cast<double>(p.predeploy.size()) * ctx.deploy_cost_per_gateway();
  r.dispatch_cost = static_cast<double>(dispatched.size()) * ctx.dispatch_cost();
  r.total_cost = r.server_cost + r.network_cost + r.deploy_cost + r.dispatch_cost;
  r.mean_latency_ms =
      latency_count ? latency_sum / static_cast<double>(latency_count) : 0.0;
  r.violations = tally.list();
  r.feasible = r.violations.empty();
  return r;
}

CostReport evaluate(const Topology& t, const ServiceSpec& spec,
                    const Placement& p) {
  return Evaluator(t, spec)(p);
}

int min_alloc(const Topology& t, const ServiceSpec& spec, const Placement& p) {
  if (!spec.pipeline.has_aggregated()) {
    throw Error("pipeline has no aggregated stage");
  }
  const Node* agg = t.find(p.agg_node);
  if (agg == nullptr) throw InvalidPlacement("unknown node '" + p.agg_node + "'");
  const double peak = Evaluator(t, spec).peak_aggregated_demand();
  const double units = std::ceil(peak - 1e-9 * std::max(1.0, peak));
  const int alloc = std::max(1, static_cast<int>(units));
  if (static_cast<double>(alloc) > agg->capacity_cpu) {
    throw Error("aggregation node too small");
  }
  return alloc;
}

BudgetVerdict check_budget(const CostReport& r, double budget) noexcept {
  const double tol = 1e-9 * std::max(1.0, std::abs(budget));
  if (r.total_cost <= budget + tol) return {true, 0.0};
  return {false, r.total_cost - budget};
}

}  // namespace iotplace
