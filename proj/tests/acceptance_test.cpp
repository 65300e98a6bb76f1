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
// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "../tools/commands.hpp"
#include "iotplace/io.hpp"
#include "iotplace/simulator.hpp"
#include "iotplace/solver.hpp"
#include "test_support.hpp"

namespace iotplace {
namespace {

namespace fs = std::filesystem;
using testing::rel_close;

constexpr double kRel = 1e-9;

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::printf("%s %s %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

SolverConfig config(SolverKind kind, double budget_ms, std::uint64_t seed = 1) {
  SolverConfig c;
  c.kind = kind;
  c.time_budget_ms = budget_ms;
  c.seed = seed;
  return c;
}

bool respects_limits(const Bundle& b, const Solution& s) {
  if (!s.feasible) return true;
  const CostReport r = evaluate(b.topology, b.spec, s.placement);
  return r.feasible && check_budget(r, b.spec.budget).within;
}

bool reports_agree(const CostReport& a, const CostReport& b) {
  bool ok = rel_close(a.server_cost, b.server_cost, kRel) &&
            rel_close(a.network_cost, b.network_cost, kRel) &&
            rel_close(a.deploy_cost, b.deploy_cost, kRel) &&
            rel_close(a.dispatch_cost, b.dispatch_cost, kRel) &&
            rel_close(a.total_cost, b.total_cost, kRel) &&
            rel_close(a.mean_latency_ms, b.mean_latency_ms, kRel) &&
            rel_close(a.max_latency_ms, b.max_latency_ms, kRel) &&
            a.feasible == b.feasible && a.violations.size() == b.violations.size() &&
            a.peak_cpu.size() == b.peak_cpu.size();
  for (std::size_t i = 0; ok && i < a.violations.size(); ++i) {
    ok = a.violations[i].kind == b.violations[i].kind && a.violations[i].id == b.violations[i].id &&
         rel_close(a.violations[i].magnitude, b.violations[i].magnitude, kRel);
  }
  for (const auto& [id, v] : a.peak_cpu) {
    const auto it = b.peak_cpu.find(id);
    ok = ok && it != b.peak_cpu.end() && rel_close(v, it->second, kRel);
  }
  return ok;
}

int run_cli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "iotplace");
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  std::ostringstream o, e;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out) *out = o.str();
  return code;
}

std::string fmt(double v) { return format_number(v); }

void ac1_oracle_equivalence() {
  int instances = 0;
  int greedy_close = 0;
  int anneal_close = 0;
  int violations = 0;
  for (std::uint64_t seed = 1; instances < 30; ++seed) {
    const Bundle b = testing::random_instance(seed);
    const Solution exact =
        solve_exhaustive(b.topology, b.spec, config(SolverKind::Exhaustive, 1000.0));
    if (!exact.feasible) continue;
    ++instances;
    const double target = exact.report.mean_latency_ms * 1.10 * (1 + kRel);
    const Solution g = solve_greedy(b.topology, b.spec, config(SolverKind::Greedy, 1000.0));
    const Solution a =
        solve_anneal(b.topology, b.spec, config(SolverKind::Anneal, 1000.0, 12345));
    if (!respects_limits(b, g)) ++violations;
    if (!respects_limits(b, a)) ++violations;
    if (g.feasible && g.report.mean_latency_ms <= target) ++greedy_close;
    if (a.feasible && a.report.mean_latency_ms <= target) ++anneal_close;
  }
  const bool ok = greedy_close * 10 >= instances * 9 && anneal_close * 10 >= instances * 9 &&
                  violations == 0;
  report("AC1", ok,
         "oracle equivalence: greedy " + std::to_string(greedy_close) + "/" +
             std::to_string(instances) + ", anneal " + std::to_string(anneal_close) + "/" +
             std::to_string(instances) + " within 10% latency; " + std::to_string(violations) +
             " limit violations");
}

void ac2_mini_ground_truth() {
  const Bundle b = testing::mini();
  const Solution s = solve_exhaustive(b.topology, b.spec, config(SolverKind::Exhaustive, 1000.0));
  const bool ok = s.feasible && s.placement == testing::p1() &&
                  rel_close(s.report.total_cost, 1.9716, kRel) &&
                  rel_close(s.report.mean_latency_ms, 92.0, kRel);
  report("AC2", ok,
         "MINI optimum: total " + fmt(s.report.total_cost) + ", mean latency " +
             fmt(s.report.mean_latency_ms) + " ms");
}

void ac3_model_agreement() {
  int agree = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Bundle b = testing::random_instance(
        seed, {.max_slots = 6, .bounded_bandwidth = seed % 2 == 0});
    const Placement p = testing::random_placement(b, seed * 101);
    if (reports_agree(summarize(simulate(b.topology, b.spec, p)),
                      evaluate(b.topology, b.spec, p))) {
      ++agree;
    }
  }
  report("AC3", agree == 100,
         "simulate/evaluate agreement: " + std::to_string(agree) + "/100 pairs");
}

Bundle scale_costs(Bundle b, double alpha) {
  std::vector<Node> nodes(b.topology.nodes().begin(), b.topology.nodes().end());
  std::vector<Link> tree(b.topology.tree_links().begin(), b.topology.tree_links().end());
  std::vector<Link> dc(b.topology.dc_links().begin(), b.topology.dc_links().end());
  for (Node& n : nodes) n.cpu_cost_rate *= alpha;
  for (Link& l : tree) l.traffic_cost_rate *= alpha;
  for (Link& l : dc) l.traffic_cost_rate *= alpha;
  for (Stage& s : b.spec.pipeline.stages) {
    s.deploy_cost *= alpha;
    s.dispatch_cost *= alpha;
  }
  b.topology = Topology(std::move(nodes), std::move(tree), std::move(dc));
  return b;
}

void ac4_cost_scaling() {
  int checked = 0;
  int bad = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Bundle b = testing::random_instance(seed);
    const Placement p = testing::random_placement(b, seed + 77);
    const CostReport base = evaluate(b.topology, b.spec, p);
    for (double alpha : {0.5, 3.0, 10.0}) {
      const Bundle s = scale_costs(b, alpha);
      const CostReport r = evaluate(s.topology, s.spec, p);
      ++checked;
      const bool ok = rel_close(r.server_cost, alpha * base.server_cost, kRel) &&
                      rel_close(r.network_cost, alpha * base.network_cost, kRel) &&
                      rel_close(r.deploy_cost, alpha * base.deploy_cost, kRel) &&
                      rel_close(r.dispatch_cost, alpha * base.dispatch_cost, kRel) &&
                      rel_close(r.total_cost, alpha * base.total_cost, kRel) &&
                      r.mean_latency_ms == base.mean_latency_ms &&
                      r.max_latency_ms == base.max_latency_ms;
      if (!ok) ++bad;
    }
  }
  report("AC4", bad == 0,
         "cost scaling: " + std::to_string(checked - bad) + "/" + std::to_string(checked) +
             " scaled reports exact");
}

void ac5_monotonicity() {
  int raises = 0;
  int decreases = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Bundle b = testing::random_instance(seed, {.max_per_stream = 3});
    const auto aggs = candidate_agg_nodes(b.topology, b.spec);
    const std::size_t n = b.spec.pipeline.per_stream_count();
    // Every monotone layer vector under every candidate aggregation node.
    for (const std::string& agg : aggs) {
      const int top = index_of(b.topology.node(agg).layer);
      std::vector<int> layers(n, 0);
      while (true) {
        Placement p;
        p.agg_node = agg;
        p.alloc = 1;
        for (int l : layers) p.layer_of.push_back(layer_at(l));
        const double base = evaluate(b.topology, b.spec, p).network_cost;
        for (std::size_t k = 0; k < n; ++k) {
          const int bound = k + 1 < n ? layers[k + 1] : top;
          if (layers[k] + 1 > bound) continue;
          Placement q = p;
          q.layer_of[k] = layer_at(layers[k] + 1);
          ++raises;
          if (evaluate(b.topology, b.spec, q).network_cost < base * (1 - kRel)) ++decreases;
        }
        // Next nondecreasing vector in lexicographic order.
        std::size_t i = n;
        while (i > 0 && layers[i - 1] == top) --i;
        if (i == 0) break;
        ++layers[i - 1];
        for (std::size_t j = i; j < n; ++j) layers[j] = layers[i - 1];
      }
    }
  }
  report("AC5", decreases == 0 && raises > 0,
         "network-cost monotonicity: " + std::to_string(raises) + " raises, " +
             std::to_string(decreases) + " decreases");
}

void ac6_predeploy_limits() {
  int checked = 0;
  int bad = 0;
  int full = 0;
  auto solve_exact = [](const Bundle& b) {
    return solve_exhaustive(b.topology, b.spec, config(SolverKind::Exhaustive, 1000.0));
  };
  std::vector<Bundle> bases = {testing::mini()};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    bases.push_back(testing::random_instance(seed, {.deploy_above_dispatch = true}));
  }
  for (const Bundle& base : bases) {
    Bundle no_penalty = base;
    for (Stage& s : no_penalty.spec.pipeline.stages) {
      s.dispatch_penalty_ms = 0.0;
      if (s.deploy_cost <= s.dispatch_cost) s.deploy_cost = s.dispatch_cost + 0.01;
    }
    Solution s = solve_exact(no_penalty);
    ++checked;
    if (s.feasible && !s.placement.predeploy.empty()) ++bad;

    Bundle free_deploy = base;
    for (Stage& st : free_deploy.spec.pipeline.stages) {
      st.deploy_cost = 0.0;
      if (st.dispatch_penalty_ms <= 0.0) st.dispatch_penalty_ms = 100.0;
    }
    s = solve_exact(free_deploy);
    ++checked;
    if (s.feasible && s.placement.uses_gateway()) {
      const auto visited = visited_gateways(free_deploy.topology, free_deploy.spec);
      if (std::set<std::string>(visited.begin(), visited.end()) != s.placement.predeploy) {
        ++bad;
      } else {
        ++full;
      }
    }
  }
  report("AC6", bad == 0 && full > 0,
         "predeploy limit cases: " + std::to_string(checked - bad) + "/" +
             std::to_string(checked) + " optima as expected (" + std::to_string(full) +
             " full predeploys)");
}

void ac7_determinism() {
  const fs::path dir = fs::temp_directory_path() / "iotplace_acceptance_ac7";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto p = [&](const std::string& name) { return (dir / name).string(); };
  bool identical = true;
  std::string detail;
  auto twice = [&](const std::string& label, std::vector<std::string> args,
                   const std::string& a, const std::string& b) {
    std::vector<std::string> first = args, second = args;
    first.insert(first.end(), {"--out", p(a)});
    second.insert(second.end(), {"--out", p(b)});
    run_cli(first);
    run_cli(second);
    if (!fs::exists(p(a)) || read_file(p(a)) != read_file(p(b))) {
      identical = false;
      detail += " " + label;
    }
  };
  twice("gen", {"gen", "--devices", "16", "--slots", "12", "--seed", "5"}, "g1.json",
        "g2.json");
  const std::string bundle = p("g1.json");
  for (const char* kind : {"exact", "greedy", "anneal"}) {
    twice(std::string("solve-") + kind,
          {"solve", bundle, "--solver", kind, "--seed", "9", "--time-budget-ms", "60000"},
          std::string("s1-") + kind + ".json", std::string("s2-") + kind + ".json");
  }
  twice("simulate", {"simulate", bundle, p("s1-anneal.json"), "--csv", p("c.csv")}, "m1.json",
        "m2.json");
  std::string sweep1, sweep2;
  run_cli({"sweep", bundle, "--budgets", "1,3,6", "--solver", "anneal", "--seed", "4",
           "--time-budget-ms", "60000", "--csv", p("w1.csv")});
  run_cli({"sweep", bundle, "--budgets", "1,3,6", "--solver", "anneal", "--seed", "4",
           "--time-budget-ms", "60000", "--csv", p("w2.csv")});
  if (read_file(p("w1.csv")) != read_file(p("w2.csv"))) {
    identical = false;
    detail += " sweep";
  }
  fs::remove_all(dir);

  // Annealing under different worker counts.
  bool parallel_same = true;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Bundle b = testing::random_instance(seed);
    std::string reference;
    for (unsigned threads : {1u, 2u, 4u, 8u}) {
      SolverConfig c = config(SolverKind::Anneal, 60000.0, seed);
      c.threads = threads;
      const std::string text = dump_solution(solve_anneal(b.topology, b.spec, c));
      if (reference.empty()) reference = text;
      parallel_same = parallel_same && text == reference;
    }
  }
  report("AC7", identical && parallel_same,
         std::string("determinism: repeated CLI outputs ") +
             (identical ? "byte-identical" : "differ:" + detail) + "; anneal across 1/2/4/8 threads " +
             (parallel_same ? "identical" : "differs"));
}

void ac8_time_budget() {
  const Bundle b = cli::generate_bundle({.devices = 200, .slots = 50, .step = 25.0, .seed = 8});
  const double budget_ms = 2000.0;
  const auto start = std::chrono::steady_clock::now();
  const Solution s = solve_anneal(b.topology, b.spec, config(SolverKind::Anneal, budget_ms, 3));
  const double wall =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const bool ok = wall <= budget_ms + 100.0 && wall < 10000.0;
  report("AC8", ok,
         "time budget: 100 gateways, 50 slots, " + std::to_string(s.states_examined) +
             " states in " + std::to_string(static_cast<long>(wall)) + " ms (budget " +
             std::to_string(static_cast<long>(budget_ms)) + " ms)");
}

void ac9_budget_sweep() {
  std::vector<std::string> bundles = {testing::data_path("mini.json")};
  const fs::path dir = fs::temp_directory_path() / "iotplace_acceptance_ac9";
  fs::create_directories(dir);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const fs::path path = dir / ("gen" + std::to_string(seed) + ".json");
    write_file(path, dump_bundle(cli::generate_bundle({.devices = 6, .slots = 6, .seed = seed})));
    bundles.push_back(path.string());
  }
  int rows = 0;
  int inversions = 0;
  for (const std::string& bundle : bundles) {
    std::string csv;
    run_cli({"sweep", bundle, "--budgets", "0.1,0.5,1,1.5,2,3,5,8,20"}, &csv);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    double previous = std::numeric_limits<double>::infinity();
    while (std::getline(in, line)) {
      std::istringstream fields(line);
      std::string budget, feasible, latency;
      std::getline(fields, budget, ',');
      std::getline(fields, feasible, ',');
      std::getline(fields, latency, ',');
      if (feasible != "true") continue;
      ++rows;
      const double value = std::stod(latency);
      if (value > previous * (1 + kRel)) ++inversions;
      previous = value;
    }
  }
  fs::remove_all(dir);
  report("AC9", inversions == 0 && rows > 0,
         "budget sweep: " + std::to_string(rows) + " feasible rows, " +
             std::to_string(inversions) + " latency increases");
}

}  // namespace
}  // namespace iotplace

int main() {
  using namespace iotplace;
  ac1_oracle_equivalence();
  ac2_mini_ground_truth();
  ac3_model_agreement();
  ac4_cost_scaling();
  ac5_monotonicity();
  ac6_predeploy_limits();
  ac7_determinism();
  ac8_time_budget();
  ac9_budget_sweep();
  return failures == 0 ? 0 : 1;
}
