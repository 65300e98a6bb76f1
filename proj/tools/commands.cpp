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
#include "commands.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "iotplace/error.hpp"
#include "iotplace/simulator.hpp"

namespace iotplace::cli {

namespace {

std::string padded(const std::string& prefix, long i, long count) {
  std::string n = std::to_string(i);
  const std::size_t width = std::to_string(count).size();
  return prefix + std::string(width - n.size(), '0') + n;
}

void emit(const std::optional<std::filesystem::path>& path,
          const std::string& contents, std::ostream& out) {
  if (path) {
    write_file(*path, contents);
  } else {
    out << contents;
  }
}

// Bundle load plus the checks every command relies on.
Bundle load_checked(const std::filesystem::path& path) {
  Bundle b = load_bundle(path);
  const TopologyValidation v = validate_topology(b.topology);
  if (!v.ok()) {
    throw InputError("invalid topology: " + v.issues.front().kind + " (" +
                     v.issues.front().id + ")");
  }
  return b;
}

}  // namespace

SolverConfig resolve_config(const Bundle& b, const SolverFlags& flags) {
  SolverConfig cfg = b.solver.value_or(SolverConfig{});
  if (flags.solver) {
    auto kind = parse_solver_kind(*flags.solver);
    if (!kind) throw InputError("unknown solver '" + *flags.solver + "'");
    cfg.kind = *kind;
  }
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.time_budget_ms) cfg.time_budget_ms = *flags.time_budget_ms;
  if (flags.max_states) cfg.max_states = *flags.max_states;
  try {
    validate_config(cfg);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  return cfg;
}

Bundle generate_bundle(const GenOptions& opts) {
  if (opts.devices < 1) throw InputError("--devices must be at least 1");
  if (opts.slots < 1) throw InputError("--slots must be at least 1");
  if (!(opts.step >= 0.0)) throw InputError("--step must be nonnegative");
  if (!(opts.budget >= 0.0)) throw InputError("--budget must be nonnegative");

  const long gateways = (opts.devices + 1) / 2;
  const long edges = (gateways + 1) / 2;

  std::vector<Node> nodes;
  std::vector<Link> tree;
  std::vector<Link> dc;
  for (long i = 1; i <= opts.devices; ++i) {
    const std::string id = padded("cam", i, opts.devices);
    const std::string gw = padded("gw", (i + 1) / 2, gateways);
    nodes.push_back({id, Layer::Device, gw, 0.0, 0.0, 1.0,
                     Point{10.0 * static_cast<double>(i - 1), 0.0}});
    tree.push_back({id, gw, 2.0, 0.0, std::nullopt});
  }
  for (long g = 1; g <= gateways; ++g) {
    const std::string id = padded("gw", g, gateways);
    const std::string edge = padded("edge", (g + 1) / 2, edges);
    nodes.push_back({id, Layer::Gateway, edge, 2.0, 1.0, 1.0, std::nullopt});
    tree.push_back({id, edge, 5.0, 0.1, std::nullopt});
  }
  for (long e = 1; e <= edges; ++e) {
    const std::string id = padded("edge", e, edges);
    nodes.push_back({id, Layer::Edge, std::nullopt, 8.0, 0.5, 0.5, std::nullopt});
    dc.push_back({id, "dc1", 15.0 + 5.0 * static_cast<double>(e - 1), 0.2, std::nullopt});
    dc.push_back({id, "dc2", 20.0 + 5.0 * static_cast<double>(edges - e), 0.2,
                  std::nullopt});
  }
  nodes.push_back({"dc1", Layer::Cloud, std::nullopt, 1000.0, 0.25, 1.0, std::nullopt});
  nodes.push_back({"dc2", Layer::Cloud, std::nullopt, 1000.0, 0.25, 1.0, std::nullopt});

  Bundle b;
  b.topology = Topology(std::move(nodes), std::move(tree), std::move(dc));
  b.spec.pipeline.stages = {
      {"analyze", 0.2, 0.01, 50.0, 0.05, 0.02, 500.0},
      {"detect", 0.1, 1.0, 20.0, 0.0, 0.0, 0.0},
  };
  b.spec.pipeline.aggregation_index = 2;
  b.spec.scenario = gen_random_walk(b.topology, static_cast<std::size_t>(opts.slots),
                                    opts.step, opts.seed);
  b.spec.budget = opts.budget;
  return b;
}

std::string sweep_csv_header() {
  return "budget,feasible,mean_latency_ms,total_cost,server_cost,network_cost,"
         "deploy_cost,dispatch_cost\n";
}

int cmd_validate(const std::filesystem::path& bundle, std::ostream& out,
                 std::ostream& err) {
  Bundle b;
  try {
    b = load_bundle(bundle);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  std::vector<TopologyIssue> issues = validate_topology(b.topology).issues;
  if (issues.empty()) {
    try {
      derive_active_streams(b.topology, b.spec.scenario);
    } catch (const Error& e) {
      issues.push_back({e.what(), "scenario"});
    }
  }
  if (issues.empty()) {
    out << "ok\n";
    return kOk;
  }
  for (const TopologyIssue& i : issues) {
    out << "violation: " << i.kind << " (" << i.id << ")\n";
  }
  return kInvalidInput;
}

int cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
  Bundle b;
  SolverConfig cfg;
  try {
    b = load_checked(opts.bundle);
    cfg = resolve_config(b, opts.flags);
    if (opts.budget) {
      if (!(*opts.budget >= 0.0)) throw InputError("--budget must be nonnegative");
      b.spec.budget = *opts.budget;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }

  Solution s;
  try {
    s = solve(b.topology, b.spec, cfg);
  } catch (const SearchSpaceTooLarge& e) {
    err << "error: " << e.what() << "\n";
    return kSearchLimit;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }

  try {
    emit(opts.out, dump_solution(s), out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  err << to_string(s.kind) << ": " << (s.feasible ? "feasible" : "infeasible")
      << " mean_latency_ms=" << format_number(s.report.mean_latency_ms)
      << " total_cost=" << format_number(s.report.total_cost)
      << " states=" << s.states_examined << " elapsed_ms=" << s.elapsed_ms << "\n";
  return s.feasible ? kOk : kInfeasible;
}

int cmd_simulate(const SimulateOptions& opts, std::ostream& out,
                 std::ostream& err) {
  try {
    const Bundle b = load_checked(opts.bundle);
    const Placement p = load_placement(opts.placement);
    const TimeSeriesReport series = simulate(b.topology, b.spec, p);
    const CostReport summary = summarize(series);
    if (opts.csv) write_file(*opts.csv, slots_csv(series));
    emit(opts.out, dump_report(summary), out);
    return summary.feasible ? kOk : kInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  Bundle b;
  SolverConfig cfg;
  try {
    if (opts.budgets.empty()) throw InputError("--budgets needs at least one value");
    for (double budget : opts.budgets) {
      if (!(budget >= 0.0)) throw InputError("budgets must be nonnegative");
    }
    b = load_checked(opts.bundle);
    cfg = resolve_config(b, opts.flags);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }

  std::string csv = sweep_csv_header();
  bool any_feasible = false;
  for (double budget : opts.budgets) {
    ServiceSpec spec = b.spec;
    spec.budget = budget;
    Solution s;
    try {
      s = solve(b.topology, spec, cfg);
    } catch (const SearchSpaceTooLarge& e) {
      err << "error: " << e.what() << "\n";
      return kSearchLimit;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kInvalidInput;
    }
    csv += format_number(budget);
    if (s.feasible) {
      any_feasible = true;
      const CostReport& r = s.report;
      csv += ",true," + format_number(r.mean_latency_ms) + ',' +
             format_number(r.total_cost) + ',' + format_number(r.server_cost) + ',' +
             format_number(r.network_cost) + ',' + format_number(r.deploy_cost) +
             ',' + format_number(r.dispatch_cost) + '\n';
    } else {
      csv += ",false,,,,,,\n";
    }
  }
  try {
    emit(opts.csv, csv, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return any_feasible ? kOk : kInfeasible;
}

int cmd_gen(const GenOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    emit(opts.out, dump_bundle(generate_bundle(opts)), out);
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Function placement optimizer and scenario simulator for "
               "device/gateway/edge/cloud IoT pipelines"};
  app.require_subcommand(1);

  std::filesystem::path validate_bundle;
  auto* validate = app.add_subcommand("validate", "Check a scenario bundle");
  validate->add_option("bundle", validate_bundle, "Bundle JSON")->required();

  auto add_solver_flags = [](CLI::App* cmd, SolverFlags& f) {
    cmd->add_option("--solver", f.solver, "exhaustive (exact) | greedy | anneal");
    cmd->add_option("--seed", f.seed, "Annealing seed");
    cmd->add_option("--time-budget-ms", f.time_budget_ms, "Heuristic wall-clock cap");
    cmd->add_option("--max-states", f.max_states, "Exhaustive enumeration cap");
  };

  SolveOptions solve_opts;
  auto* solve_cmd = app.add_subcommand("solve", "Optimize a placement");
  solve_cmd->add_option("bundle", solve_opts.bundle, "Bundle JSON")->required();
  add_solver_flags(solve_cmd, solve_opts.flags);
  solve_cmd->add_option("--budget", solve_opts.budget, "Override the price budget");
  solve_cmd->add_option("--out", solve_opts.out, "Solution JSON (default stdout)");

  SimulateOptions sim_opts;
  auto* sim_cmd = app.add_subcommand("simulate", "Replay a scenario under a placement");
  sim_cmd->add_option("bundle", sim_opts.bundle, "Bundle JSON")->required();
  sim_cmd->add_option("placement", sim_opts.placement,
                      "Placement or solution JSON")->required();
  sim_cmd->add_option("--csv", sim_opts.csv, "Per-slot CSV output");
  sim_cmd->add_option("--out", sim_opts.out, "Summary JSON (default stdout)");

  SweepOptions sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "Solve across a list of budgets");
  sweep_cmd->add_option("bundle", sweep_opts.bundle, "Bundle JSON")->required();
  sweep_cmd->add_option("--budgets", sweep_opts.budgets, "Budget values")
      ->required()
      ->delimiter(',');
  add_solver_flags(sweep_cmd, sweep_opts.flags);
  sweep_cmd->add_option("--csv", sweep_opts.csv, "Sweep CSV (default stdout)");

  GenOptions gen_opts;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic bundle");
  gen_cmd->add_option("--devices", gen_opts.devices, "Number of cameras");
  gen_cmd->add_option("--slots", gen_opts.slots, "Number of time slots");
  gen_cmd->add_option("--step", gen_opts.step, "Maximum random-walk step");
  gen_cmd->add_option("--seed", gen_opts.seed, "Random-walk seed");
  gen_cmd->add_option("--budget", gen_opts.budget, "Price budget");
  gen_cmd->add_option("--out", gen_opts.out, "Bundle JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }

  if (*validate) return cmd_validate(validate_bundle, out, err);
  if (*solve_cmd) return cmd_solve(solve_opts, out, err);
  if (*sim_cmd) return cmd_simulate(sim_opts, out, err);
  if (*sweep_cmd) return cmd_sweep(sweep_opts, out, err);
  if (*gen_cmd) return cmd_gen(gen_opts, out, err);
  return kInvalidInput;
}

}  // namespace iotplace::cli
