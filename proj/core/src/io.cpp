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
#include "iotplace/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "iotplace/error.hpp"
#include "json.hpp"

namespace iotplace {

using Json = nlohmann::ordered_json;

namespace {

const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InputError(where + ": missing key '" + key + "'");
  }
  return obj.at(key);
}

double number(const Json& obj, const char* key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_number()) throw InputError(where + ": '" + key + "' must be a number");
  return v.get<double>();
}

double number_or(const Json& obj, const char* key, double fallback,
                 const std::string& where) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  return number(obj, key, where);
}

std::string text(const Json& obj, const char* key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_string()) throw InputError(where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

Point point(const Json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw InputError(where + ": coordinates must be [x, y]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

Json point_json(Point p) { return Json::array({p.x, p.y}); }

Layer layer(const Json& v, const std::string& where) {
  if (v.is_string()) {
    if (auto l = parse_layer(v.get<std::string>())) return *l;
  }
  throw InputError(where + ": unknown layer " + v.dump());
}

Node parse_node(const Json& j) {
  const std::string where = "node " + (j.contains("id") ? j["id"].dump() : "?");
  Node n;
  n.id = text(j, "id", where);
  n.layer = layer(require(j, "layer", where), where);
  if (j.contains("parent") && !j["parent"].is_null()) n.parent = text(j, "parent", where);
  n.capacity_cpu = number(j, "capacity_cpu", where);
  n.cpu_cost_rate = number(j, "cpu_cost_rate", where);
  n.speed = number_or(j, "speed", 1.0, where);
  if (j.contains("location") && !j["location"].is_null()) {
    n.location = point(j["location"], where);
  }
  return n;
}

Link parse_link(const Json& j) {
  const std::string where = "link";
  Link l;
  l.src = text(j, "src", where);
  l.dst = text(j, "dst", where);
  l.latency_ms = number(j, "latency_ms", where);
  l.traffic_cost_rate = number(j, "traffic_cost_rate", where);
  if (j.contains("bandwidth_mbps") && !j["bandwidth_mbps"].is_null()) {
    l.bandwidth_mbps = number(j, "bandwidth_mbps", where);
  }
  return l;
}

std::vector<Link> parse_links(const Json& topo, const char* key) {
  std::vector<Link> out;
  if (!topo.contains(key)) return out;
  if (!topo[key].is_array()) throw InputError(std::string(key) + " must be an array");
  for (const Json& l : topo[key]) out.push_back(parse_link(l));
  return out;
}

Stage parse_stage(const Json& j) {
  const std::string where = "stage";
  Stage s;
  s.name = text(j, "name", where);
  s.cpu_per_unit = number(j, "cpu_per_unit", where);
  s.reduction = number(j, "reduction", where);
  s.base_ms = number(j, "base_ms", where);
  s.deploy_cost = number_or(j, "deploy_cost", 0.0, where);
  s.dispatch_cost = number_or(j, "dispatch_cost", 0.0, where);
  s.dispatch_penalty_ms = number_or(j, "dispatch_penalty_ms", 0.0, where);
  return s;
}

std::uint64_t unsigned_or(const Json& obj, const char* key, std::uint64_t fallback,
                          const std::string& where) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw InputError(where + ": '" + key + "' must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

SolverConfig parse_solver(const Json& j) {
  const std::string where = "solver";
  SolverConfig c;
  if (j.contains("kind")) {
    auto kind = parse_solver_kind(text(j, "kind", where));
    if (!kind) throw InputError("solver: unknown kind");
    c.kind = *kind;
  }
  c.time_budget_ms = number_or(j, "time_budget_ms", c.time_budget_ms, where);
  c.seed = unsigned_or(j, "seed", c.seed, where);
  c.max_states = unsigned_or(j, "max_states", c.max_states, where);
  if (j.contains("initial_temperature") && !j["initial_temperature"].is_null()) {
    c.anneal.initial_temperature = number(j, "initial_temperature", where);
  }
  c.anneal.cooling = number_or(j, "cooling", c.anneal.cooling, where);
  c.anneal.iterations_per_temperature = static_cast<int>(unsigned_or(
      j, "iterations_per_temperature", c.anneal.iterations_per_temperature, where));
  c.anneal.penalty = number_or(j, "penalty", c.anneal.penalty, where);
  return c;
}

Json solver_json(const SolverConfig& c) {
  Json j;
  j["kind"] = to_string(c.kind);
  j["time_budget_ms"] = c.time_budget_ms;
  j["seed"] = c.seed;
  j["max_states"] = c.max_states;
  j["initial_temperature"] =
      c.anneal.initial_temperature ? Json(*c.anneal.initial_temperature) : Json();
  j["cooling"] = c.anneal.cooling;
  j["iterations_per_temperature"] = c.anneal.iterations_per_temperature;
  j["penalty"] = c.anneal.penalty;
  return j;
}

Json parse_json(std::string_view text_in) {
  try {
    return Json::parse(text_in);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Json placement_json(const Placement& p) {
  Json j;
  Json layers = Json::array();
  for (Layer l : p.layer_of) layers.push_back(to_string(l));
  j["layer_of"] = std::move(layers);
  j["agg_node"] = p.agg_node;
  j["predeploy"] = Json(std::vector<std::string>(p.predeploy.begin(), p.predeploy.end()));
  j["alloc"] = p.alloc;
  return j;
}

Placement placement_from(const Json& j) {
  const std::string where = "placement";
  Placement p;
  const Json& layers = require(j, "layer_of", where);
  if (!layers.is_array()) throw InputError("placement: layer_of must be an array");
  for (const Json& l : layers) p.layer_of.push_back(layer(l, where));
  p.agg_node = text(j, "agg_node", where);
  if (j.contains("predeploy")) {
    if (!j["predeploy"].is_array()) throw InputError("placement: predeploy must be an array");
    for (const Json& g : j["predeploy"]) {
      if (!g.is_string()) throw InputError("placement: predeploy ids must be strings");
      p.predeploy.insert(g.get<std::string>());
    }
  }
  const Json& alloc = require(j, "alloc", where);
  if (!alloc.is_number_integer()) throw InputError("placement: alloc must be an integer");
  p.alloc = alloc.get<int>();
  return p;
}

Json report_json(const CostReport& r) {
  Json j;
  j["server_cost"] = r.server_cost;
  j["network_cost"] = r.network_cost;
  j["deploy_cost"] = r.deploy_cost;
  j["dispatch_cost"] = r.dispatch_cost;
  j["total_cost"] = r.total_cost;
  j["mean_latency_ms"] = r.mean_latency_ms;
  j["max_latency_ms"] = r.max_latency_ms;
  Json peak = Json::object();
  for (const auto& [id, cpu] : r.peak_cpu) peak[id] = cpu;
  j["peak_cpu"] = std::move(peak);
  j["feasible"] = r.feasible;
  Json violations = Json::array();
  for (const Violation& v : r.violations) {
    violations.push_back({{"kind", v.kind}, {"id", v.id}, {"magnitude", v.magnitude}});
  }
  j["violations"] = std::move(violations);
  return j;
}

}  // namespace

Bundle parse_bundle(std::string_view json_text) {
  const Json root = parse_json(json_text);
  if (!root.is_object()) throw InputError("bundle must be a JSON object");
  Bundle b;

  const Json& topo = require(root, "topology", "bundle");
  const Json& nodes = require(topo, "nodes", "topology");
  if (!nodes.is_array()) throw InputError("topology: nodes must be an array");
  std::vector<Node> parsed_nodes;
  for (const Json& n : nodes) parsed_nodes.push_back(parse_node(n));
  b.topology = Topology(std::move(parsed_nodes), parse_links(topo, "tree_links"),
                        parse_links(topo, "dc_links"));

  const Json& pipe = require(root, "pipeline", "bundle");
  const Json& stages = require(pipe, "stages", "pipeline");
  if (!stages.is_array()) throw InputError("pipeline: stages must be an array");
  for (const Json& s : stages) b.spec.pipeline.stages.push_back(parse_stage(s));
  b.spec.pipeline.aggregation_index =
      unsigned_or(pipe, "aggregation_index", 0, "pipeline");
  if (auto issues = validate_pipeline(b.spec.pipeline); !issues.empty()) {
    throw InputError("pipeline: " + issues.front());
  }

  const Json& sc = require(root, "scenario", "bundle");
  Scenario& scenario = b.spec.scenario;
  scenario.slot_seconds = number(sc, "slot_seconds", "scenario");
  scenario.source_rate_mbps = number(sc, "source_rate_mbps", "scenario");
  scenario.seed = unsigned_or(sc, "seed", 0, "scenario");
  const Json& slots = require(sc, "slots", "scenario");
  if (!slots.is_array()) throw InputError("scenario: slots must be an array");
  for (const Json& s : slots) {
    if (s.contains("devices")) {
      DeviceSet devices;
      if (!s["devices"].is_array()) throw InputError("scenario: devices must be an array");
      for (const Json& d : s["devices"]) {
        if (!d.is_string()) throw InputError("scenario: device ids must be strings");
        const std::string id = d.get<std::string>();
        const Node* n = b.topology.find(id);
        if (n == nullptr || n->layer != Layer::Device) {
          throw InputError("scenario: unknown device '" + id + "'");
        }
        devices.push_back(id);
      }
      scenario.slots.emplace_back(std::move(devices));
    } else if (s.contains("target")) {
      scenario.slots.emplace_back(point(s["target"], "scenario"));
    } else {
      throw InputError("scenario: each slot needs 'devices' or 'target'");
    }
  }
  if (auto issues = validate_scenario(scenario); !issues.empty()) {
    throw InputError("scenario: " + issues.front());
  }

  b.spec.budget = number(root, "budget", "bundle");
  if (!(b.spec.budget >= 0.0)) throw InputError("bundle: budget must be nonnegative");
  if (root.contains("solver") && !root["solver"].is_null()) {
    b.solver = parse_solver(root["solver"]);
  }
  return b;
}

Bundle load_bundle(const std::filesystem::path& path) {
  return parse_bundle(read_file(path));
}

std::string dump_bundle(const Bundle& b) {
  Json root;
  Json nodes = Json::array();
  for (const Node& n : b.topology.nodes()) {
    Json j;
    j["id"] = n.id;
    j["layer"] = to_string(n.layer);
    if (n.parent) j["parent"] = *n.parent;
    j["capacity_cpu"] = n.capacity_cpu;
    j["cpu_cost_rate"] = n.cpu_cost_rate;
    j["speed"] = n.speed;
    if (n.location) j["location"] = point_json(*n.location);
    nodes.push_back(std::move(j));
  }
  auto links = [](std::span<const Link> in) {
    Json out = Json::array();
    for (const Link& l : in) {
      Json j;
      j["src"] = l.src;
      j["dst"] = l.dst;
      j["latency_ms"] = l.latency_ms;
      j["traffic_cost_rate"] = l.traffic_cost_rate;
      j["bandwidth_mbps"] = l.bandwidth_mbps ? Json(*l.bandwidth_mbps) : Json();
      out.push_back(std::move(j));
    }
    return out;
  };
  root["topology"] = {{"nodes", std::move(nodes)},
                      {"tree_links", links(b.topology.tree_links())},
                      {"dc_links", links(b.topology.dc_links())}};

  Json stages = Json::array();
  for (const Stage& s : b.spec.pipeline.stages) {
    stages.push_back({{"name", s.name},
                      {"cpu_per_unit", s.cpu_per_unit},
                      {"reduction", s.reduction},
                      {"base_ms", s.base_ms},
                      {"deploy_cost", s.deploy_cost},
                      {"dispatch_cost", s.dispatch_cost},
                      {"dispatch_penalty_ms", s.dispatch_penalty_ms}});
  }
  root["pipeline"] = {{"stages", std::move(stages)},
                      {"aggregation_index", b.spec.pipeline.aggregation_index}};

  Json slots = Json::array();
  for (const SlotSpec& s : b.spec.scenario.slots) {
    if (const auto* devices = std::get_if<DeviceSet>(&s)) {
      slots.push_back({{"devices", *devices}});
    } else {
      slots.push_back({{"target", point_json(std::get<Point>(s))}});
    }
  }
  root["scenario"] = {{"slot_seconds", b.spec.scenario.slot_seconds},
                      {"source_rate_mbps", b.spec.scenario.source_rate_mbps},
                      {"seed", b.spec.scenario.seed},
                      {"slots", std::move(slots)}};
  root["budget"] = b.spec.budget;
  if (b.solver) root["solver"] = solver_json(*b.solver);
  return root.dump(2) + "\n";
}

Placement parse_placement(std::string_view json_text) {
  const Json root = parse_json(json_text);
  if (root.is_object() && root.contains("placement")) {
    return placement_from(root["placement"]);
  }
  return placement_from(root);
}

Placement load_placement(const std::filesystem::path& path) {
  return parse_placement(read_file(path));
}

std::string dump_placement(const Placement& p) {
  return placement_json(p).dump(2) + "\n";
}

std::string dump_report(const CostReport& r) { return report_json(r).dump(2) + "\n"; }

std::string dump_solution(const Solution& s) {
  Json j;
  j["solver_kind"] = to_string(s.kind);
  j["feasible"] = s.feasible;
  j["states_examined"] = s.states_examined;
  j["placement"] = placement_json(s.placement);
  j["report"] = report_json(s.report);
  return j.dump(2) + "\n";
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string slots_csv(const TimeSeriesReport& r) {
  std::string out =
      "slot,active_devices,traffic_gb,server_cost,network_cost,dispatch_cost,"
      "mean_latency_ms\n";
  for (const SlotRecord& s : r.slots) {
    std::string devices;
    for (std::size_t i = 0; i < s.active.size(); ++i) {
      if (i) devices += ';';
      devices += s.active[i];
    }
    out += std::to_string(s.slot) + ',' + devices + ',' +
           format_number(s.traffic_gb()) + ',' + format_number(s.server_cost) + ',' +
           format_number(s.network_cost) + ',' + format_number(s.dispatch_cost) +
           ',' + format_number(s.mean_latency_ms()) + '\n';
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw InputError("cannot write '" + path.string() + "'");
}

}  // namespace iotplace
