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
#include <algorithm>
#include <array>
#include <chrono>
#include <limits>

#include "iotplace/error.hpp"
#include "iotplace/solver.hpp"
#include "parallel.hpp"
#include "solver_internal.hpp"

namespace iotplace {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

// Nondecreasing sequences of `length` over [0, top], split by whether the
// Gateway layer occurs.
struct VectorCounts {
  std::uint64_t with_gateway = 0;
  std::uint64_t without_gateway = 0;
};

VectorCounts count_vectors(std::size_t length, int top) {
  // ways[v][g]: sequences so far ending at layer v, g = gateway seen.
  std::vector<std::array<std::uint64_t, 2>> ways(top + 1, {0, 0});
  if (length == 0) return {0, 1};
  for (int v = 0; v <= top; ++v) ways[v][v == 1 ? 1 : 0] = 1;
  for (std::size_t i = 1; i < length; ++i) {
    std::vector<std::array<std::uint64_t, 2>> next(top + 1, {0, 0});
    for (int v = 0; v <= top; ++v) {
      for (int u = 0; u <= v; ++u) {
        for (int g = 0; g < 2; ++g) {
          const int ng = (g == 1 || v == 1) ? 1 : 0;
          next[v][ng] = sat_add(next[v][ng], ways[u][g]);
        }
      }
    }
    ways = std::move(next);
  }
  VectorCounts c;
  for (int v = 0; v <= top; ++v) {
    c.without_gateway = sat_add(c.without_gateway, ways[v][0]);
    c.with_gateway = sat_add(c.with_gateway, ways[v][1]);
  }
  return c;
}

std::uint64_t subset_count(std::size_t n) {
  return n >= 64 ? kSaturated : (std::uint64_t{1} << n);
}

void monotone_vectors(std::size_t length, int top, std::vector<Layer>& cur,
                      std::vector<std::vector<Layer>>& out) {
  if (cur.size() == length) {
    out.push_back(cur);
    return;
  }
  const int lo = cur.empty() ? 0 : index_of(cur.back());
  for (int v = lo; v <= top; ++v) {
    cur.push_back(layer_at(v));
    monotone_vectors(length, top, cur, out);
    cur.pop_back();
  }
}

std::uint64_t count_space(const detail::SearchSpace& s) {
  std::uint64_t total = 0;
  const std::uint64_t subsets = subset_count(s.visited().size());
  for (const std::string& agg : s.agg_candidates()) {
    const VectorCounts c = count_vectors(s.stage_count(), index_of(s.layer_of(agg)));
    total = sat_add(total, sat_add(c.without_gateway, sat_mul(c.with_gateway, subsets)));
  }
  return total;
}

}  // namespace

std::uint64_t count_placements(const Topology& t, const ServiceSpec& spec) {
  return count_space(detail::SearchSpace(t, spec));
}

Solution solve_exhaustive(const Topology& t, const ServiceSpec& spec,
                          const SolverConfig& cfg) {
  validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  const detail::SearchSpace space(t, spec);

  const std::uint64_t states = count_space(space);
  if (states > cfg.max_states) {
    throw SearchSpaceTooLarge(states == kSaturated ? cfg.max_states : states,
                              states == kSaturated);
  }
  if (states == 0) throw Error("no candidate placement");

  std::optional<detail::Scored> best;
  std::optional<detail::Scored> least_bad;
  std::uint64_t examined = 0;
  const unsigned threads = detail::resolve_threads(cfg.threads);

  // Candidates are scored in fixed-size chunks and reduced in enumeration
  // order, so the thread count never affects the outcome.
  constexpr std::size_t kChunk = 4096;
  std::vector<Placement> chunk;
  chunk.reserve(kChunk);
  std::vector<CostReport> reports;
  auto flush = [&] {
    reports.assign(chunk.size(), CostReport{});
    detail::parallel_for(chunk.size(), threads, [&](std::size_t i) {
      reports[i] = space.evaluator()(chunk[i]);
    });
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      detail::Scored cur{std::move(chunk[i]), std::move(reports[i])};
      if (space.acceptable(cur.report)) {
        if (!best || detail::better(cur, *best)) best = std::move(cur);
      } else if (!best) {
        if (!least_bad || detail::less_violating(cur, *least_bad, space)) {
          least_bad = std::move(cur);
        }
      }
    }
    examined += chunk.size();
    chunk.clear();
  };
  auto push = [&](Placement p) {
    chunk.push_back(std::move(p));
    if (chunk.size() == kChunk) flush();
  };

  // Canonical enumeration order: agg node, layer vector, predeploy subset.
  const auto& visited = space.visited();
  for (const std::string& agg : space.agg_candidates()) {
    std::vector<std::vector<Layer>> vectors;
    std::vector<Layer> scratch;
    monotone_vectors(space.stage_count(), index_of(space.layer_of(agg)), scratch,
                     vectors);
    for (auto& layers : vectors) {
      const bool gateway = std::find(layers.begin(), layers.end(),
                                     Layer::Gateway) != layers.end();
      if (!gateway) {
        push(space.make(std::move(layers), agg));
        continue;
      }
      for (std::uint64_t mask = 0; mask < subset_count(visited.size()); ++mask) {
        std::set<std::string> pre;
        for (std::size_t i = 0; i < visited.size(); ++i) {
          if (mask >> i & 1U) pre.insert(visited[i]);
        }
        push(space.make(layers, agg, std::move(pre)));
      }
    }
  }
  flush();

  return detail::make_solution(space, best ? std::move(*best) : std::move(*least_bad),
                               SolverKind::Exhaustive, examined, start);
}

}  // namespace iotplace
