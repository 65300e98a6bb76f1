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
#ifndef IOTPLACE_IO_HPP_
#define IOTPLACE_IO_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "iotplace/cost_model.hpp"
#include "iotplace/simulator.hpp"
#include "iotplace/solver.hpp"
#include "iotplace/topology.hpp"
#include "iotplace/workload.hpp"

namespace iotplace {

// A complete problem instance as stored on disk.
struct Bundle {
  Topology topology;
  ServiceSpec spec;
  std::optional<SolverConfig> solver;
};

// JSON readers throw InputError on syntax errors, missing keys or dangling
// references. Topology invariants are not checked here; use
// validate_topology.
Bundle parse_bundle(std::string_view json);
Bundle load_bundle(const std::filesystem::path& path);
std::string dump_bundle(const Bundle& b);

// Accepts either a bare placement object or a solution file containing one
// under "placement".
Placement parse_placement(std::string_view json);
Placement load_placement(const std::filesystem::path& path);
std::string dump_placement(const Placement& p);

std::string dump_report(const CostReport& r);
// Placement, report and solver metadata. Elapsed time is left out so that
// seeded runs produce identical files.
std::string dump_solution(const Solution& s);

// slot,active_devices,traffic_gb,server_cost,network_cost,dispatch_cost,
// mean_latency_ms -- one row per slot, devices joined with ';'.
std::string slots_csv(const TimeSeriesReport& r);

// Shortest round-trip decimal form, always with '.' as separator.
std::string format_number(double v);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace iotplace

#endif  // IOTPLACE_IO_HPP_
