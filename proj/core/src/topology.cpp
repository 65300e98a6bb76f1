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
#include "iotplace/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "iotplace/error.hpp"

namespace iotplace {

std::string_view to_string(Layer l) noexcept {
  switch (l) {
    case Layer::Device:
      return "device";
    case Layer::Gateway:
      return "gateway";
    case Layer::Edge:
      return "edge";
    case Layer::Cloud:
      return "cloud";
  }
  return "?";
}

std::optional<Layer> parse_layer(std::string_view s) noexcept {
  for (int i = 0; i < kLayerCount; ++i) {
    if (to_string(layer_at(i)) == s) return layer_at(i);
  }
  return std::nullopt;
}

Topology::Topology(std::vector<Node> nodes, std::vector<Link> tree_links,
                   std::vector<Link> dc_links)
    : nodes_(std::move(nodes)),
      tree_links_(std::move(tree_links)),
      dc_links_(std::move(dc_links)) {
  // First occurrence wins; duplicates are reported by validate_topology.
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    node_index_.emplace(nodes_[i].id, i);
  }
  for (std::size_t i = 0; i < tree_links_.size(); ++i) {
    link_index_.emplace(std::pair{tree_links_[i].src, tree_links_[i].dst},
                        std::pair{false, i});
  }
  for (std::size_t i = 0; i < dc_links_.size(); ++i) {
    link_index_.emplace(std::pair{dc_links_[i].src, dc_links_[i].dst},
                        std::pair{true, i});
  }
}

const Node* Topology::find(std::string_view id) const {
  auto it = node_index_.find(id);
  return it == node_index_.end() ? nullptr : &nodes_[it->second];
}

const Node& Topology::node(std::string_view id) const {
  if (const Node* n = find(id)) return *n;
  throw InputError("unknown node '" + std::string(id) + "'");
}

const Link* Topology::find_link(std::string_view src,
                                std::string_view dst) const {
  auto it = link_index_.find({std::string(src), std::string(dst)});
  if (it == link_index_.end()) return nullptr;
  const auto [is_dc, index] = it->second;
  return is_dc ? &dc_links_[index] : &tree_links_[index];
}

std::vector<std::string> Topology::ids_on(Layer layer) const {
  std::vector<std::string> out;
  for (const Node& n : nodes_) {
    if (n.layer == layer) out.push_back(n.id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::optional<Layer> expected_parent_layer(Layer l) {
  switch (l) {
    case Layer::Device:
      return Layer::Gateway;
    case Layer::Gateway:
      return Layer::Edge;
    default:
      return std::nullopt;
  }
}

void check_link_values(const Link& l, std::vector<TopologyIssue>& issues) {
  if (!(l.latency_ms >= 0.0)) issues.push_back({"negative latency", l.key()});
  if (!(l.traffic_cost_rate >= 0.0)) {
    issues.push_back({"negative traffic cost", l.key()});
  }
  if (l.bandwidth_mbps && !(*l.bandwidth_mbps > 0.0)) {
    issues.push_back({"nonpositive bandwidth", l.key()});
  }
}

}  // namespace

TopologyValidation validate_topology(const Topology& t) {
  TopologyValidation v;
  auto& issues = v.issues;

  std::set<std::string> seen;
  for (const Node& n : t.nodes()) {
    if (!seen.insert(n.id).second) issues.push_back({"duplicate id", n.id});
    if (!(n.capacity_cpu >= 0.0)) issues.push_back({"negative capacity", n.id});
    if (!(n.cpu_cost_rate >= 0.0)) {
      issues.push_back({"negative cost rate", n.id});
    }
    if (!(n.speed > 0.0)) issues.push_back({"nonpositive speed", n.id});

    const auto want = expected_parent_layer(n.layer);
    if (!want) {
      if (n.parent) issues.push_back({"unexpected parent", n.id});
      continue;
    }
    if (!n.parent) {
      issues.push_back({"missing parent", n.id});
      continue;
    }
    const Node* p = t.find(*n.parent);
    if (p == nullptr) {
      issues.push_back({"unknown parent", n.id});
    } else if (p->layer != *want) {
      issues.push_back({"parent-layer mismatch", n.id});
    } else if (t.find_link(n.id, p->id) == nullptr) {
      issues.push_back({"missing tree link", n.id});
    }
  }

  std::set<std::pair<std::string, std::string>> link_seen;
  for (const Link& l : t.tree_links()) {
    check_link_values(l, issues);
    if (!link_seen.insert({l.src, l.dst}).second) {
      issues.push_back({"duplicate link", l.key()});
    }
    const Node* child = t.find(l.src);
    const Node* parent = t.find(l.dst);
    if (child == nullptr || parent == nullptr) {
      issues.push_back({"dangling link", l.key()});
    } else if (!child->parent || *child->parent != l.dst) {
      issues.push_back({"link not on containment tree", l.key()});
    }
  }
  for (const Link& l : t.dc_links()) {
    check_link_values(l, issues);
    if (!link_seen.insert({l.src, l.dst}).second) {
      issues.push_back({"duplicate link", l.key()});
    }
    const Node* edge = t.find(l.src);
    const Node* dc = t.find(l.dst);
    if (edge == nullptr || dc == nullptr) {
      issues.push_back({"dangling link", l.key()});
    } else if (edge->layer != Layer::Edge || dc->layer != Layer::Cloud) {
      issues.push_back({"dc link endpoint layer", l.key()});
    }
  }

  for (const Node& n : t.nodes()) {
    if (n.layer != Layer::Edge) continue;
    const bool connected =
        std::any_of(t.dc_links().begin(), t.dc_links().end(),
                    [&](const Link& l) {
                      const Node* dc = t.find(l.dst);
                      return l.src == n.id && dc && dc->layer == Layer::Cloud;
                    });
    if (!connected) issues.push_back({"edge without DC", n.id});
  }
  return v;
}

double Route::latency_ms() const noexcept {
  double total = 0.0;
  for (const Link& l : links) total += l.latency_ms;
  return total;
}

Route route(const Topology& t, std::string_view device, std::string_view dc) {
  const Node* dev = t.find(device);
  const Node* sink = t.find(dc);
  if (dev == nullptr || sink == nullptr || dev->layer != Layer::Device ||
      sink->layer != Layer::Cloud) {
    throw Error("invalid endpoint");
  }
  Route r;
  r.nodes.push_back(dev->id);
  const Node* cur = dev;
  while (cur->layer != Layer::Edge) {
    if (!cur->parent) throw Error("no route");
    const Node* up = t.find(*cur->parent);
    const Link* link = up ? t.find_link(cur->id, up->id) : nullptr;
    if (link == nullptr || index_of(up->layer) != index_of(cur->layer) + 1) {
      throw Error("no route");
    }
    r.nodes.push_back(up->id);
    r.links.push_back(*link);
    cur = up;
  }
  const Link* up = t.find_link(cur->id, sink->id);
  if (up == nullptr) throw Error("no route");
  r.nodes.push_back(sink->id);
  r.links.push_back(*up);
  return r;
}

std::string nearest_device(const Topology& t, Point target) {
  const Node* best = nullptr;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (const Node& n : t.nodes()) {
    if (n.layer != Layer::Device || !n.location) continue;
    const double dx = n.location->x - target.x;
    const double dy = n.location->y - target.y;
    const double d2 = dx * dx + dy * dy;
    if (best == nullptr || d2 < best_d2 || (d2 == best_d2 && n.id < best->id)) {
      best = &n;
      best_d2 = d2;
    }
  }
  if (best == nullptr) throw Error("no candidate device");
  return best->id;
}

}  // namespace iotplace
