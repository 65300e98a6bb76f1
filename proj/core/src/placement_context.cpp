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
#include "placement_context.hpp"

#include <algorithm>
#include <cmath>

#include "iotplace/error.hpp"

namespace iotplace::detail {

double stream_output_factor(const Pipeline& p) {
  double f = 1.0;
  for (std::size_t k = 0; k < p.per_stream_count(); ++k) {
    f *= p.stages[k].reduction;
  }
  return f;
}

double aggregated_cpu_factor(const Pipeline& p) {
  double demand = 0.0;
  double rate = 1.0;
  for (std::size_t k = p.per_stream_count(); k < p.stages.size(); ++k) {
    demand += p.stages[k].cpu_per_unit * rate;
    rate *= p.stages[k].reduction;
  }
  return demand;
}

double excess_over(double load, double limit) {
  const double tol = 1e-9 * std::max(1.0, std::abs(limit));
  return load > limit + tol ? load - limit : 0.0;
}

void ViolationTally::add(const std::string& kind, const std::string& id,
                         double magnitude) {
  auto [it, inserted] = worst_.try_emplace({kind, id}, magnitude);
  if (!inserted) it->second = std::max(it->second, magnitude);
}

std::vector<Violation> ViolationTally::list() const {
  std::vector<Violation> out;
  out.reserve(worst_.size());
  for (const auto& [key, magnitude] : worst_) {
    out.push_back({key.first, key.second, magnitude});
  }
  return out;
}

PlacementContext::PlacementContext(const Topology& t, const Pipeline& pipeline,
                                   const Placement& p,
                                   const ActiveStreams& streams)
    : topology_(&t), pipeline_(&pipeline), placement_(&p) {
  const std::size_t per_stream = pipeline.per_stream_count();
  has_aggregated_ = pipeline.has_aggregated();

  if (p.layer_of.size() != per_stream) {
    throw InvalidPlacement("expected " + std::to_string(per_stream) +
                           " stage layers, got " +
                           std::to_string(p.layer_of.size()));
  }
  agg_ = t.find(p.agg_node);
  if (agg_ == nullptr) throw InvalidPlacement("unknown node '" + p.agg_node + "'");
  if (agg_->layer != Layer::Cloud &&
      !(has_aggregated_ && agg_->layer == Layer::Edge)) {
    throw InvalidPlacement("aggregation node '" + p.agg_node +
                           "' must be on the Edge or Cloud layer");
  }
  for (std::size_t k = 0; k < per_stream; ++k) {
    if (k > 0 && p.layer_of[k] < p.layer_of[k - 1]) {
      throw InvalidPlacement("stage layers must be nondecreasing");
    }
    if (p.layer_of[k] > agg_->layer) {
      throw InvalidPlacement("stage above the aggregation node's layer");
    }
    if (p.layer_of[k] == Layer::Gateway) gateway_stages_.push_back(k);
  }
  for (const std::string& g : p.predeploy) {
    const Node* n = t.find(g);
    if (n == nullptr || n->layer != Layer::Gateway) {
      throw InvalidPlacement("predeploy entry '" + g + "' is not a gateway");
    }
  }
  if (!p.predeploy.empty() && gateway_stages_.empty()) {
    throw InvalidPlacement("predeploy set without a gateway-layer stage");
  }
  if (p.alloc < 0) throw InvalidPlacement("negative alloc");

  for (std::size_t k : gateway_stages_) {
    const Stage& s = pipeline.stages[k];
    dispatch_penalty_ms_ += s.dispatch_penalty_ms;
    dispatch_cost_ += s.dispatch_cost;
    deploy_cost_ += s.deploy_cost;
  }
  agg_cpu_factor_ = detail::aggregated_cpu_factor(pipeline);
  out_factor_ = detail::stream_output_factor(pipeline);

  double merged_ms = 0.0;
  for (std::size_t k = per_stream; k < pipeline.stages.size(); ++k) {
    merged_ms += pipeline.stages[k].base_ms / agg_->speed;
  }

  for (const auto& slot : streams) {
    for (const std::string& device : slot) {
      if (plans_.contains(device)) continue;

      // Path nodes indexed by layer: device, gateway, edge[, dc].
      std::vector<const Node*> path{&t.node(device)};
      while (path.back()->layer != Layer::Edge) {
        const Node& cur = *path.back();
        const Node* up = cur.parent ? t.find(*cur.parent) : nullptr;
        if (up == nullptr ||
            index_of(up->layer) != index_of(cur.layer) + 1) {
          throw InvalidPlacement("device '" + device + "' has a broken parent chain");
        }
        path.push_back(up);
      }
      if (agg_->layer == Layer::Cloud) {
        path.push_back(agg_);
      } else if (path.back() != agg_) {
        throw InvalidPlacement("device '" + device +
                               "' cannot reach aggregation node '" +
                               agg_->id + "'");
      }

      StreamPlan plan;
      plan.gateway = path[1];
      double rate_factor = 1.0;
      std::size_t next_stage = 0;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        // Stages hosted at or below this hop's child side reduce its flow.
        while (next_stage < per_stream &&
               p.layer_of[next_stage] <= path[i]->layer) {
          rate_factor *= pipeline.stages[next_stage].reduction;
          ++next_stage;
        }
        const Link* link = t.find_link(path[i]->id, path[i + 1]->id);
        if (link == nullptr) {
          throw InvalidPlacement("no route from '" + device + "' to '" +
                                 agg_->id + "'");
        }
        plan.hops.push_back({link, rate_factor});
        plan.latency_ms += link->latency_ms;
      }

      double in_factor = 1.0;
      for (std::size_t k = 0; k < per_stream; ++k) {
        const Node* host = path[index_of(p.layer_of[k])];
        const Stage& s = pipeline.stages[k];
        plan.hosts.push_back(host);
        plan.cpu_factor.push_back(s.cpu_per_unit * in_factor);
        plan.latency_ms += s.base_ms / host->speed;
        in_factor *= s.reduction;
      }
      plan.latency_ms += merged_ms;
      plans_.emplace(device, std::move(plan));
    }
  }
}

const StreamPlan& PlacementContext::plan(const std::string& device) const {
  return plans_.find(device)->second;
}

bool PlacementContext::needs_dispatch(const Node& gateway) const {
  return has_gateway_stage() && !placement_->predeploy.contains(gateway.id);
}

}  // namespace iotplace::detail
