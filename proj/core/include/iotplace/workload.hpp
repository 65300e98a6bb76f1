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
#ifndef IOTPLACE_WORKLOAD_HPP_
#define IOTPLACE_WORKLOAD_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "iotplace/topology.hpp"

namespace iotplace {

struct Stage {
  std::string name;
  double cpu_per_unit = 0.0;  // CPU units per Mbps of input
  double reduction = 1.0;     // output rate / input rate
  double base_ms = 0.0;       // divided by the hosting node's speed
  double deploy_cost = 0.0;
  double dispatch_cost = 0.0;
  double dispatch_penalty_ms = 0.0;
};

// Stages with 1-based index < aggregation_index run once per stream; the
// rest run once on the merged flow. aggregation_index == stages.size() + 1
// means there is no aggregated stage.
struct Pipeline {
  std::vector<Stage> stages;
  std::size_t aggregation_index = 1;

  std::size_t per_stream_count() const noexcept { return aggregation_index - 1; }
  bool has_aggregated() const noexcept {
    return aggregation_index <= stages.size();
  }
};

// A slot is either an explicit set of active devices or a target position
// that selects the nearest camera.
using DeviceSet = std::vector<std::string>;
using SlotSpec = std::variant<DeviceSet, Point>;

struct Scenario {
  double slot_seconds = 3600.0;
  std::vector<SlotSpec> slots;
  double source_rate_mbps = 8.0;
  std::uint64_t seed = 0;

  // One charging period spans the whole scenario.
  double period_seconds() const noexcept {
    return slot_seconds * static_cast<double>(slots.size());
  }
};

struct ServiceSpec {
  Pipeline pipeline;
  Scenario scenario;
  double budget = 0.0;
};

// Per-slot active device ids.
using ActiveStreams = std::vector<std::vector<std::string>>;

// Returns K+1 rates: the input of every stage followed by the final output.
std::vector<double> flow_profile(const Pipeline& p, double source_rate);

// Lists every problem with the pipeline's own invariants (empty when valid).
std::vector<std::string> validate_pipeline(const Pipeline& p);
std::vector<std::string> validate_scenario(const Scenario& sc);

// Throws Error("unknown device") / Error("no candidate device").
ActiveStreams derive_active_streams(const Topology& t, const Scenario& sc);

// Random-walk target scenario. The generator is std::mt19937_64 seeded with
// `seed`; each draw maps to [0, 1) as (x >> 11) * 2^-53. Per step the first
// draw picks the angle (2*pi*u) and the second the length (step*u). The walk
// starts at the located Device with the smallest id and that start is the
// first slot's target. Slots last 3600 s at 8 Mbps.
Scenario gen_random_walk(const Topology& t, std::size_t num_slots, double step,
                         std::uint64_t seed);

}  // namespace iotplace

#endif  // IOTPLACE_WORKLOAD_HPP_
