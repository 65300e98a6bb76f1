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
#include "iotplace/workload.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "iotplace/error.hpp"
#include "test_support.hpp"

namespace iotplace {
namespace {

using testing::mini;

Pipeline reductions(std::vector<double> rs) {
  Pipeline p;
  for (double r : rs) p.stages.push_back({"s", 0.1, r, 1.0, 0, 0, 0});
  p.aggregation_index = p.stages.size() + 1;
  return p;
}

TEST(FlowProfileTest, Examples) {
  EXPECT_EQ(flow_profile(mini().spec.pipeline, 8.0), (std::vector<double>{8, 0.08, 0.08}));
  EXPECT_EQ(flow_profile(reductions({1.0}), 5.0), (std::vector<double>{5, 5}));
  EXPECT_EQ(flow_profile(reductions({0.5, 0.5}), 4.0), (std::vector<double>{4, 2, 1}));
}

TEST(FlowProfileTest, ScalingAndIdentityStage) {
  testing::Gen g(3);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> rs;
    for (long k = g.integer(1, 5); k > 0; --k) rs.push_back(g.uniform(0.01, 2.0));
    const double rate = g.uniform(0.1, 100.0);
    const double alpha = g.uniform(0.1, 10.0);
    const auto base = flow_profile(reductions(rs), rate);
    const auto scaled = flow_profile(reductions(rs), rate * alpha);
    for (std::size_t k = 0; k < base.size(); ++k) {
      EXPECT_TRUE(testing::rel_close(scaled[k], base[k] * alpha, 1e-12));
    }
    rs.push_back(1.0);
    const auto extended = flow_profile(reductions(rs), rate);
    ASSERT_EQ(extended.size(), base.size() + 1);
    for (std::size_t k = 0; k < base.size(); ++k) EXPECT_EQ(extended[k], base[k]);
    EXPECT_EQ(extended.back(), base.back());
  }
}

TEST(PipelineTest, Validation) {
  EXPECT_TRUE(validate_pipeline(mini().spec.pipeline).empty());
  Pipeline p = mini().spec.pipeline;
  p.aggregation_index = 4;
  EXPECT_FALSE(validate_pipeline(p).empty());
  p.aggregation_index = 3;
  EXPECT_TRUE(validate_pipeline(p).empty());
  EXPECT_FALSE(p.has_aggregated());
  p.stages[0].reduction = 0.0;
  EXPECT_FALSE(validate_pipeline(p).empty());
}

TEST(DeriveActiveStreamsTest, Examples) {
  const Topology t = mini().topology;
  Scenario sc;
  sc.slots = {Point{4, 0}, Point{15, 0}};
  EXPECT_EQ(derive_active_streams(t, sc), (ActiveStreams{{"cam1"}, {"cam2"}}));
  sc.slots = {DeviceSet{"cam1"}, DeviceSet{"cam3"}};
  EXPECT_EQ(derive_active_streams(t, sc), (ActiveStreams{{"cam1"}, {"cam3"}}));
  sc.slots = {DeviceSet{"camX"}};
  try {
    derive_active_streams(t, sc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "unknown device");
  }
}

TEST(GenRandomWalkTest, ZeroStepStaysAtStart) {
  const Topology t = mini().topology;
  const Scenario sc = gen_random_walk(t, 5, 0.0, 99);
  ASSERT_EQ(sc.slots.size(), 5u);
  for (const SlotSpec& s : sc.slots) EXPECT_EQ(std::get<Point>(s), (Point{0, 0}));
}

TEST(GenRandomWalkTest, DeterministicAndLength) {
  const Topology t = mini().topology;
  const Scenario a = gen_random_walk(t, 12, 7.5, 7);
  const Scenario b = gen_random_walk(t, 12, 7.5, 7);
  ASSERT_EQ(a.slots.size(), 12u);
  for (std::size_t i = 0; i < a.slots.size(); ++i) {
    EXPECT_EQ(std::get<Point>(a.slots[i]), std::get<Point>(b.slots[i]));
  }
  EXPECT_EQ(gen_random_walk(t, 3, 1.0, 1).slots.size(), 3u);
  EXPECT_NE(std::get<Point>(gen_random_walk(t, 3, 5.0, 8).slots[2]),
            std::get<Point>(a.slots[2]));
}

TEST(GenRandomWalkTest, StepsNeverExceedStep) {
  const Topology t = mini().topology;
  const Scenario sc = gen_random_walk(t, 200, 3.0, 5);
  for (std::size_t i = 1; i < sc.slots.size(); ++i) {
    const Point a = std::get<Point>(sc.slots[i - 1]);
    const Point b = std::get<Point>(sc.slots[i]);
    EXPECT_LE(std::hypot(b.x - a.x, b.y - a.y), 3.0 + 1e-12);
  }
}

TEST(GenRandomWalkTest, FrozenSequence) {
  // First draws of std::mt19937_64(7), fixed by the standard.
  const Scenario sc = gen_random_walk(mini().topology, 2, 10.0, 7);
  std::mt19937_64 rng(7);
  const double u1 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const Point p = std::get<Point>(sc.slots[1]);
  EXPECT_DOUBLE_EQ(p.x, 10.0 * u2 * std::cos(2 * std::numbers::pi * u1));
  EXPECT_DOUBLE_EQ(p.y, 10.0 * u2 * std::sin(2 * std::numbers::pi * u1));
}

TEST(GenRandomWalkTest, NoDevice) {
  const Topology t({{"dc1", Layer::Cloud, std::nullopt, 1, 1, 1, std::nullopt}}, {}, {});
  EXPECT_THROW(gen_random_walk(t, 3, 1.0, 1), Error);
}

}  // namespace
}  // namespace iotplace
