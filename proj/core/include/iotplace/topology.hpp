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

#ifndef IOTPLACE_TOPOLOGY_HPP_
#define IOTPLACE_TOPOLOGY_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace iotplace {

// Tiers of the hierarchy, ordered from the sensing device up to the data
// centre. The underlying values are the canonical layer indices.
enum class Layer : std::uint8_t { Device = 0, Gateway = 1, Edge = 2, Cloud = 3 };

inline constexpr int kLayerCount = 4;

constexpr int index_of(Layer l) noexcept { return static_cast<int>(l); }
constexpr Layer layer_at(int i) noexcept { return static_cast<Layer>(i); }

std::string_view to_string(Layer l) noexcept;
std::optional<Layer> parse_layer(std::string_view s) noexcept;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct Node {
  std::string id;
  Layer layer = Layer::Device;
  // Next node toward the cloud; set for Device and Gateway nodes only.
  std::optional<std::string> parent;
  double capacity_cpu = 0.0;
  double cpu_cost_rate = 0.0;
  double speed = 1.0;
  std::optional<Point> location;
};

struct Link {
  std::string src;
  std::string dst;
  double latency_ms = 0.0;
  double traffic_cost_rate = 0.0;  // per decimal gigabyte
  std::optional<double> bandwidth_mbps;  // unbounded when empty

  // "src->dst", used to name links in reports.
  std::string key() const { return src + "->" + dst; }
};

// Immutable device/gateway/edge/cloud graph. Tree links carry the
// containment hierarchy (child -> parent); DC links join edges to clouds.
class Topology {
 public:
  Topology() = default;
  Topology(std::vector<Node> nodes, std::vector<Link> tree_links,
           std::vector<Link> dc_links);

  std::span<const Node> nodes() const noexcept { return nodes_; }
  std::span<const Link> tree_links() const noexcept { return tree_links_; }
  std::span<const Link> dc_links() const noexcept { return dc_links_; }

  const Node* find(std::string_view id) const;
  // Throws InputError if the id is unknown.
  const Node& node(std::string_view id) const;
  const Link* find_link(std::string_view src, std::string_view dst) const;

  // Ids of all nodes on the given layer, sorted.
  std::vector<std::string> ids_on(Layer layer) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Link> tree_links_;
  std::vector<Link> dc_links_;
  std::map<std::string, std::size_t, std::less<>> node_index_;
  // (src, dst) -> (is_dc_link, index)
  std::map<std::pair<std::string, std::string>, std::pair<bool, std::size_t>>
      link_index_;
};

struct TopologyIssue {
  std::string kind;
  std::string id;
};

struct TopologyValidation {
  std::vector<TopologyIssue> issues;

  bool ok() const noexcept { return issues.empty(); }
};

// Checks every structural invariant; violations are returned, never thrown.
TopologyValidation validate_topology(const Topology& t);

struct Route {
  std::vector<std::string> nodes;
  std::vector<Link> links;

  double latency_ms() const noexcept;
};

// Unique path device -> gateway -> edge -> dc. Throws Error("invalid
// endpoint") or Error("no route").
Route route(const Topology& t, std::string_view device, std::string_view dc);

// Closest located Device by Euclidean distance; ties go to the smaller id.
// Throws Error("no candidate device") if no Device has a location.
std::string nearest_device(const Topology& t, Point target);

}  // namespace iotplace

#endif  // IOTPLACE_TOPOLOGY_HPP_
