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
#ifndef IOTPLACE_TOOLS_COMMANDS_HPP_
#define IOTPLACE_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "iotplace/io.hpp"

namespace iotplace::cli {

enum ExitCode : int {
  kOk = 0,
  kInfeasible = 2,    // no feasible placement, or the run recorded violations
  kInvalidInput = 3,
  kSearchLimit = 4,   // exhaustive enumeration exceeded max_states
};

struct SolverFlags {
  std::optional<std::string> solver;
  std::optional<std::uint64_t> seed;
  std::optional<double> time_budget_ms;
  std::optional<std::uint64_t> max_states;
};

struct SolveOptions {
  std::filesystem::path bundle;
  SolverFlags flags;
  std::optional<double> budget;
  std::optional<std::filesystem::path> out;
};

struct SimulateOptions {
  std::filesystem::path bundle;
  std::filesystem::path placement;
  std::optional<std::filesystem::path> csv;
  std::optional<std::filesystem::path> out;
};

struct SweepOptions {
  std::filesystem::path bundle;
  std::vector<double> budgets;
  SolverFlags flags;
  std::optional<std::filesystem::path> csv;
};

struct GenOptions {
  long devices = 8;
  long slots = 10;
  double step = 10.0;
  std::uint64_t seed = 0;
  double budget = 5.0;
  std::optional<std::filesystem::path> out;
};

// Synthetic instance: a line of cameras 10 units apart, two cameras per
// gateway, two gateways per edge, two data centres, the two-stage
// analyze/detect pipeline and a random-walk scenario.
Bundle generate_bundle(const GenOptions& opts);

// Solver configuration from bundle defaults overridden by flags.
SolverConfig resolve_config(const Bundle& b, const SolverFlags& flags);

std::string sweep_csv_header();

int cmd_validate(const std::filesystem::path& bundle, std::ostream& out,
                 std::ostream& err);
int cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateOptions& opts, std::ostream& out,
                 std::ostream& err);
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);
int cmd_gen(const GenOptions& opts, std::ostream& out, std::ostream& err);

// Parses argv and dispatches to a command.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace iotplace::cli

#endif  // IOTPLACE_TOOLS_COMMANDS_HPP_
