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
#include "iotplace/simulator.hpp"

#include <algorithm>
#include <set>

#include "placement_context.hpp"

namespace iotplace {

double SlotRecord::traffic_gb() const noexcept {
  double sum = 0.0;
  for (const auto& [key, gb] : link_traffic_gb) sum += gb;
  return sum;
}

double SlotRecord::mean_latency_ms() const noexcept {
  if (latency_ms.empty()) return 0.0;
  double sum = 0.0;
  for (double l : latency_ms) sum += l;
  return sum / static_cast<double>(latency_ms.size());
}

TimeSeriesReport simulate(const Topology& t, const ServiceSpec& spec,
                          const Placement& p) {
  const Scenario& sc = spec.scenario;
  const ActiveStreams streams = derive_active_streams(t, sc);
  const detail::PlacementContext ctx(t, spec.pipeline, p, streams);
  const Node& agg = ctx.agg_node();
  const double source = sc.source_rate_mbps;
  const double slot_share = sc.slot_seconds / sc.period_seconds();

  TimeSeriesReport out;
  out.reservation_cost = static_cast<double>(p.alloc) * agg.cpu_cost_rate;
  out.deploy_cost =
      static_cast<double>(p.predeploy.size()) * ctx.deploy_cost_per_gateway();

  // Gateways currently holding the per-stream functions.
  std::set<std::string> cached(p.predeploy.begin(), p.predeploy.end());
  double latency_sum = 0.0;
  std::size_t latency_count = 0;

  for (std::size_t i = 0; i < streams.size(); ++i) {
    SlotRecord rec;
    rec.slot = i + 1;
    rec.active = streams[i];

    detail::NodeMap<double> usage;
    detail::LinkMap<double> link_rate;
    std::set<std::string> dispatched_now;

    for (const std::string& device : rec.active) {
      const detail::StreamPlan& plan = ctx.plan(device);
      for (std::size_t k = 0; k < plan.hosts.size(); ++k) {
        usage[plan.hosts[k]] += plan.cpu_factor[k] * source;
      }
      for (const detail::Hop& hop : plan.hops) {
        link_rate[hop.link] += hop.rate_factor * source;
      }

      const std::string& gw = plan.gateway->id;
      if (ctx.has_gateway_stage() && !cached.contains(gw)) {
        cached.insert(gw);
        dispatched_now.insert(gw);
        for (std::size_t k : ctx.gateway_stages()) {
          const Stage& stage = spec.pipeline.stages[k];
          rec.dispatches.push_back({gw, stage.name});
          rec.dispatch_cost += stage.dispatch_cost;
        }
      }
      double latency = plan.latency_ms;
      if (dispatched_now.contains(gw)) latency += ctx.dispatch_penalty_ms();
      rec.latency_ms.push_back(latency);
    }

    for (const auto& [node, cpu] : usage) {
      rec.server_cost += cpu * node->cpu_cost_rate * slot_share;
    }
    detail::ViolationTally tally;
    for (const auto& [link, rate] : link_rate) {
      const double gb = rate * sc.slot_seconds / 8000.0;
      rec.link_traffic_gb[link->key()] = gb;
      rec.network_cost += gb * link->traffic_cost_rate;
      if (link->bandwidth_mbps) {
        if (double e = detail::excess_over(rate, *link->bandwidth_mbps); e > 0) {
          tally.add("bandwidth", link->key(), e);
        }
      }
    }

    const double merged = ctx.has_aggregated()
                              ? static_cast<double>(rec.active.size()) * source *
                                    ctx.stream_output_factor() *
                                    ctx.aggregated_cpu_factor()
                              : 0.0;
    for (const auto& [node, cpu] : usage) {
      const double reserved = node == &agg ? static_cast<double>(p.alloc) : 0.0;
      if (double e = detail::excess_over(cpu + reserved, node->capacity_cpu);
          e > 0) {
        tally.add("cpu", node->id, e);
      }
    }
    if (!usage.contains(&agg)) {
      if (double e = detail::excess_over(p.alloc, agg.capacity_cpu); e > 0) {
        tally.add("cpu", agg.id, e);
      }
    }
    if (double e = detail::excess_over(merged, p.alloc); e > 0) {
      tally.add("alloc", agg.id, e);
    }
    rec.violations = tally.list();

    if (!rec.active.empty()) {
      for (const auto& [node, cpu] : usage) rec.node_cpu[node->id] = cpu;
      if (ctx.has_aggregated()) rec.node_cpu[agg.id] += merged;
    }

    out.usage_server_cost += rec.server_cost;
    out.network_cost += rec.network_cost;
    out.dispatch_cost += rec.dispatch_cost;
    for (double l : rec.latency_ms) {
      latency_sum += l;
      ++latency_count;
      out.max_latency_ms = std::max(out.max_latency_ms, l);
    }
    out.slots.push_back(std::move(rec));
  }
  out.mean_latency_ms =
      latency_count ? latency_sum / static_cast<double>(latency_count) : 0.0;
  return out;
}

CostReport summarize(const TimeSeriesReport& r) {
  CostReport c;
  double usage = 0.0;
  double latency_sum = 0.0;
  std::size_t latency_count = 0;
  detail::ViolationTally tally;
  for (const SlotRecord& s : r.slots) {
    usage += s.server_cost;
    c.network_cost += s.network_cost;
    c.dispatch_cost += s.dispatch_cost;
    for (double l : s.latency_ms) {
      latency_sum += l;
      ++latency_count;
      c.max_latency_ms = std::max(c.max_latency_ms, l);
    }
    for (const auto& [id, cpu] : s.node_cpu) {
      double& peak = c.peak_cpu[id];
      peak = std::max(peak, cpu);
    }
    for (const Violation& v : s.violations) tally.add(v.kind, v.id, v.magnitude);
  }
  c.server_cost = usage + r.reservation_cost;
  c.deploy_cost = r.deploy_cost;
  c.total_cost = c.server_cost + c.network_cost + c.deploy_cost + c.dispatch_cost;
  c.mean_latency_ms =
      latency_count ? latency_sum / static_cast<double>(latency_count) : 0.0;
  c.violations = tally.list();
  c.feasible = c.violations.empty();
  return c;
}

}  // namespace iotplace
