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
#include "iotplace/workload.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "iotplace/error.hpp"

namespace iotplace {

std::vector<double> flow_profile(const Pipeline& p, double source_rate) {
  std::vector<double> rates;
  rates.reserve(p.stages.size() + 1);
  double rate = source_rate;
  rates.push_back(rate);
  for (const Stage& s : p.stages) {
    rate *= s.reduction;
    rates.push_back(rate);
  }
  return rates;
}

std::vector<std::string> validate_pipeline(const Pipeline& p) {
  std::vector<std::string> issues;
  if (p.stages.empty()) issues.emplace_back("pipeline has no stages");
  if (p.aggregation_index < 1 || p.aggregation_index > p.stages.size() + 1) {
    issues.emplace_back("aggregation_index out of range");
  }
  for (const Stage& s : p.stages) {
    if (!(s.cpu_per_unit >= 0.0)) issues.push_back(s.name + ": cpu_per_unit < 0");
    if (!(s.reduction > 0.0)) issues.push_back(s.name + ": reduction <= 0");
    if (!(s.base_ms >= 0.0)) issues.push_back(s.name + ": base_ms < 0");
    if (!(s.deploy_cost >= 0.0) || !(s.dispatch_cost >= 0.0) ||
        !(s.dispatch_penalty_ms >= 0.0)) {
      issues.push_back(s.name + ": negative deploy/dispatch value");
    }
  }
  return issues;
}

std::vector<std::string> validate_scenario(const Scenario& sc) {
  std::vector<std::string> issues;
  if (!(sc.slot_seconds > 0.0)) issues.emplace_back("slot_seconds <= 0");
  if (sc.slots.empty()) issues.emplace_back("scenario has no slots");
  if (!(sc.source_rate_mbps > 0.0)) issues.emplace_back("source_rate_mbps <= 0");
  return issues;
}

ActiveStreams derive_active_streams(const Topology& t, const Scenario& sc) {
  ActiveStreams out;
  out.reserve(sc.slots.size());
  for (const SlotSpec& slot : sc.slots) {
    if (const auto* devices = std::get_if<DeviceSet>(&slot)) {
      for (const std::string& id : *devices) {
        const Node* n = t.find(id);
        if (n == nullptr || n->layer != Layer::Device) {
          throw Error("unknown device");
        }
      }
      out.push_back(*devices);
    } else {
      out.push_back({nearest_device(t, std::get<Point>(slot))});
    }
  }
  return out;
}

namespace {

double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Scenario gen_random_walk(const Topology& t, std::size_t num_slots, double step,
                         std::uint64_t seed) {
  if (num_slots == 0) throw Error("num_slots must be at least 1");
  if (!(step >= 0.0)) throw Error("step must be nonnegative");

  const Node* start = nullptr;
  for (const Node& n : t.nodes()) {
    if (n.layer != Layer::Device || !n.location) continue;
    if (start == nullptr || n.id < start->id) start = &n;
  }
  if (start == nullptr) throw Error("no candidate device");

  Scenario sc;
  sc.seed = seed;
  sc.slots.reserve(num_slots);
  std::mt19937_64 rng(seed);
  Point pos = *start->location;
  sc.slots.emplace_back(pos);
  for (std::size_t i = 1; i < num_slots; ++i) {
    const double angle = 2.0 * std::numbers::pi * unit_draw(rng);
    const double length = step * unit_draw(rng);
    pos.x += length * std::cos(angle);
    pos.y += length * std::sin(angle);
    sc.slots.emplace_back(pos);
  }
  return sc;
}

}  // namespace iotplace
