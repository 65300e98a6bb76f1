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
#include <benchmark/benchmark.h>

#include <vector>

#include "../tools/commands.hpp"
#include "iotplace/cost_model.hpp"
#include "iotplace/io.hpp"
#include "iotplace/simulator.hpp"
#include "iotplace/solver.hpp"

namespace iotplace {
namespace {

Bundle generated(long devices, long slots) {
  return cli::generate_bundle(
      {.devices = devices, .slots = slots, .step = 25.0, .seed = 1, .budget = 1e6});
}

Placement gateway_placement(const Bundle& b) {
  Placement p;
  p.layer_of = {Layer::Gateway};
  p.agg_node = choose_dc(b.topology, b.spec);
  p.alloc = min_alloc(b.topology, b.spec, p);
  return p;
}

void BM_Evaluate(benchmark::State& state) {
  const Bundle b = generated(state.range(0), 50);
  const Evaluator ev(b.topology, b.spec);
  const Placement p = gateway_placement(b);
  for (auto _ : state) benchmark::DoNotOptimize(ev(p));
}
BENCHMARK(BM_Evaluate)->Arg(8)->Arg(64)->Arg(200);

void BM_Simulate(benchmark::State& state) {
  const Bundle b = generated(state.range(0), 50);
  const Placement p = gateway_placement(b);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(b.topology, b.spec, p));
}
BENCHMARK(BM_Simulate)->Arg(8)->Arg(64)->Arg(200);

void BM_Solve(benchmark::State& state, SolverKind kind, long devices) {
  const Bundle b = generated(devices, 10);
  SolverConfig cfg;
  cfg.kind = kind;
  cfg.seed = 7;
  cfg.time_budget_ms = 5000.0;
  for (auto _ : state) {
    const Solution s = solve(b.topology, b.spec, cfg);
    state.counters["states"] = static_cast<double>(s.states_examined);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK_CAPTURE(BM_Solve, exhaustive_8, SolverKind::Exhaustive, 8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, greedy_8, SolverKind::Greedy, 8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, greedy_200, SolverKind::Greedy, 200)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, anneal_8, SolverKind::Anneal, 8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, anneal_200, SolverKind::Anneal, 200)->Unit(benchmark::kMillisecond);

void BM_MiniExhaustive(benchmark::State& state) {
  const Bundle b = load_bundle(IOTPLACE_DATA_DIR "/mini.json");
  for (auto _ : state) benchmark::DoNotOptimize(solve_exhaustive(b.topology, b.spec, {}));
}
BENCHMARK(BM_MiniExhaustive);

}  // namespace
}  // namespace iotplace

BENCHMARK_MAIN();
