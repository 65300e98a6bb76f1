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
#ifndef IOTPLACE_SIMULATOR_HPP_
#define IOTPLACE_SIMULATOR_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "iotplace/cost_model.hpp"
#include "iotplace/topology.hpp"
#include "iotplace/workload.hpp"

namespace iotplace {

struct DispatchEvent {
  std::string gateway;
  std::string stage;

  friend bool operator==(const DispatchEvent&, const DispatchEvent&) = default;
};

struct SlotRecord {
  std::size_t slot = 0;
  std::vector<std::string> active;
  std::map<std::string, double> link_traffic_gb;  // by link key
  std::map<std::string, double> node_cpu;         // usage incl. merged stages
  std::vector<DispatchEvent> dispatches;
  double server_cost = 0.0;  // usage-billed part only
  double network_cost = 0.0;
  double dispatch_cost = 0.0;
  std::vector<double> latency_ms;  // one per active stream, same order
  std::vector<Violation> violations;

  double traffic_gb() const noexcept;
  double mean_latency_ms() const noexcept;
};

// Slot-by-slot replay. Reservation and deploy costs are booked once for the
// period; everything else is the sum of the slot records.
struct TimeSeriesReport {
  std::vector<SlotRecord> slots;
  double reservation_cost = 0.0;
  double deploy_cost = 0.0;
  double usage_server_cost = 0.0;
  double network_cost = 0.0;
  double dispatch_cost = 0.0;
  double mean_latency_ms = 0.0;
  double max_latency_ms = 0.0;
};

TimeSeriesReport simulate(const Topology& t, const ServiceSpec& spec,
                          const Placement& p);

CostReport summarize(const TimeSeriesReport& r);

}  // namespace iotplace

#endif  // IOTPLACE_SIMULATOR_HPP_
