// Copyright 2026 The mccsplat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mccsplat/decision.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace mccsplat {
namespace {

using ::mccsplat::testing::make_g1;
using V3 = Eigen::Vector3d;

TEST(PlainVanillaTest, Examples) {
  EXPECT_EQ(decide_plain_vanilla(V3(0.7, 0.3, 0)), Decision::assign(0, 0.7));
  EXPECT_EQ(decide_plain_vanilla(V3(0.5, 0.5, 0)), Decision::assign(0, 0.5));
  EXPECT_TRUE(decide_plain_vanilla(V3(0, 0, 1)).is_unknown());
  // The unknown component never wins even when it dominates.
  EXPECT_EQ(decide_plain_vanilla(V3(0.1, 0.2, 0.7)).class_index, 1u);
}

TEST(SinkAbsoluteTest, Examples) {
  EXPECT_EQ(decide_sink_absolute(V3(0.7, 0.3, 0), V3(0.5, 0.5, 0)).class_index, 0u);
  EXPECT_TRUE(decide_sink_absolute(V3(0.5, 0.5, 0), V3(0.5, 0.5, 0)).is_unknown());
  EXPECT_EQ(decide_sink_absolute(V3(0.6, 0.39, 0.01), V3(0.55, 0.2, 0.25)).class_index, 0u);
}

TEST(SinkRelativeTest, Examples) {
  const Decision d = decide_sink_relative(V3(0.6, 0.39, 0.01), V3(0.55, 0.2, 0.25));
  EXPECT_EQ(d.class_index, 1u);
  // (0.39 - 0.2) / 0.2
  EXPECT_NEAR(d.score, 0.95, 1e-12);
  const auto lift = relative_lift(V3(0.6, 0.39, 0.01), V3(0.55, 0.2, 0.25));
  EXPECT_NEAR(lift(0), 0.05 / 0.55, 1e-12);
  EXPECT_TRUE(decide_sink_relative(V3(0.5, 0.5, 0), V3(0.5, 0.5, 0)).is_unknown());
  const Decision inf = decide_sink_relative(V3(0.1, 0, 0.9), V3(0, 0.5, 0.5));
  EXPECT_EQ(inf.class_index, 0u);
  EXPECT_TRUE(std::isinf(inf.score));
  // Both zero: lift 0, not positive.
  EXPECT_TRUE(decide_sink_relative(V3(0, 0, 1), V3(0, 0.5, 0.5)).is_unknown());
}

TEST(PercentileTableTest, BuildsSortedPerClassTables) {
  std::map<Index, WeightVectord> re;
  re[0] = V3(0.4, 0.6, 0);
  re[1] = V3(0.1, 0.9, 0);
  re[2] = V3(0.7, 0.3, 0);
  re[3] = V3(0.5, 0.5, 0);
  re[4] = V3(0.5, 0.5, 0);
  const KnownLabels known{{0, 0}, {1, 0}, {2, 0}};
  const auto t = build_percentile_table(re, known, 2);
  EXPECT_EQ(t.per_class[0], (std::vector<double>{0.1, 0.4, 0.7}));
  EXPECT_TRUE(t.per_class[1].empty());
  const KnownLabels dup{{3, 1}, {4, 1}};
  EXPECT_EQ(build_percentile_table(re, dup, 2).per_class[1], (std::vector<double>{0.5, 0.5}));
}

TEST(PercentileOfTest, StrictEmpiricalCdf) {
  const std::vector<double> t{0.1, 0.4, 0.7};
  EXPECT_DOUBLE_EQ(percentile_of(t, 0.5), 2.0 / 3.0);
  EXPECT_EQ(percentile_of(t, 0.05), 0.0);
  EXPECT_EQ(percentile_of(t, 0.9), 1.0);
  EXPECT_DOUBLE_EQ(percentile_of(t, 0.4), 1.0 / 3.0);  // strictly below
  EXPECT_EQ(percentile_of({}, 0.5), 0.0);
}

TEST(DecidePercentileTest, Examples) {
  PercentileTable tables{{{0.1, 0.4, 0.7}, {0.6, 0.8}}};
  const Decision d = decide_percentile(V3(0.5, 0.5, 0), tables);
  EXPECT_EQ(d.class_index, 0u);
  EXPECT_DOUBLE_EQ(d.score, 2.0 / 3.0);
  EXPECT_TRUE(decide_percentile(V3(0.5, 0.5, 0), tables, 0.9).is_unknown());
  PercentileTable empty{{{}, {}}};
  EXPECT_TRUE(decide_percentile(V3(0.5, 0.5, 0), empty, 0.01).is_unknown());
  // Without a minimum the all-zero case falls back to the lowest class.
  EXPECT_EQ(decide_percentile(V3(0.5, 0.5, 0), empty).class_index, 0u);
}

TEST(AssignAllTest, G1PlainVanillaAndSinkAbsolute) {
  const LabeledGraph g = make_g1();
  const auto r = run(g, "attr", PropagationConfig{});
  const auto id = [&](const char* s) { return *g.ids.find(s); };

  const auto pv = assign_all(r, g.known[0], {Flavor::kPlainVanilla, std::nullopt});
  EXPECT_EQ(pv.at(id("A")).class_index, 0u);
  EXPECT_EQ(pv.at(id("D")).class_index, 0u);
  EXPECT_EQ(pv.at(id("B")), Decision::assign(0, 1.0));
  EXPECT_EQ(pv.at(id("C")), Decision::assign(1, 1.0));

  const auto sa = assign_all(r, g.known[0], {Flavor::kSinkAbsolute, std::nullopt});
  EXPECT_TRUE(sa.at(id("A")).is_unknown());
  EXPECT_TRUE(sa.at(id("D")).is_unknown());
}

TEST(AssignAllTest, FullyLabeledPassesThrough) {
  const LabeledGraph g = make_g1();
  const KnownLabels all{{0, 0}, {1, 0}, {2, 1}, {3, 1}};
  const auto r = run<double>(g.graph, g.schemas[0], all, PropagationConfig{});
  for (Flavor f : {Flavor::kPlainVanilla, Flavor::kSinkAbsolute, Flavor::kSinkRelative,
                   Flavor::kPercentile}) {
    const auto d = assign_all(r, all, {f, std::nullopt});
    for (const auto& [v, c] : all) EXPECT_EQ(d.at(v), Decision::assign(c, 1.0));
  }
}

TEST(FlavorNameTest, ParsesKnownNamesOnly) {
  EXPECT_EQ(parse_flavor("sink-relative"), Flavor::kSinkRelative);
  EXPECT_EQ(flavor_name(parse_flavor("percentile")), "percentile");
  EXPECT_THROW(parse_flavor("greedy"), ConfigError);
}

Eigen::VectorXd random_weight_vector(std::mt19937_64& rng, int width) {
  std::uniform_real_distribution<double> u(0, 1);
  Eigen::VectorXd w(width);
  for (int i = 0; i < width; ++i) w(i) = u(rng) < 0.2 ? 0.0 : u(rng);
  if (w.sum() == 0) w(width - 1) = 1;
  return w / w.sum();
}

TEST(DecisionPropertyTest, FlavorInvariants) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.01, 10);
  for (int trial = 0; trial < 2000; ++trial) {
    const int width = 3 + trial % 4;
    const int m = width - 1;
    const Eigen::VectorXd w = random_weight_vector(rng, width);
    const Eigen::VectorXd s = random_weight_vector(rng, width);

    for (const Decision& d :
         {decide_plain_vanilla(w), decide_sink_absolute(w, s), decide_sink_relative(w, s)}) {
      if (!d.is_unknown()) {
        ASSERT_LT(*d.class_index, static_cast<std::size_t>(m));
      }
    }

    // Scaling class components leaves the plain-vanilla argmax unchanged.
    Eigen::VectorXd scaled = w;
    scaled.head(m) *= u(rng);
    scaled /= scaled.sum();
    ASSERT_EQ(decide_plain_vanilla(w).class_index, decide_plain_vanilla(scaled).class_index);

    const Decision sa = decide_sink_absolute(w, s);
    if (!sa.is_unknown()) {
      ASSERT_GT(w(*sa.class_index), s(*sa.class_index));
    }
  }
}

TEST(DecisionPropertyTest, PercentileMonotonicity) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> t(1 + trial % 30);
    for (double& x : t) x = u(rng);
    std::sort(t.begin(), t.end());
    double prev = -1;
    for (double x = -0.01; x <= 1.01; x += 0.01) {
      const double p = percentile_of(t, x);
      ASSERT_GE(p, prev);
      prev = p;
    }
    if (std::adjacent_find(t.begin(), t.end()) == t.end()) {
      for (std::size_t k = 0; k < t.size(); ++k) {
        ASSERT_DOUBLE_EQ(percentile_of(t, t[k]), double(k) / double(t.size()));
      }
    }
  }
}

TEST(DecisionPropertyTest, RaisingMinPercentileOnlyShrinksAssignments) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0, 1);
  PercentileTable tables;
  tables.per_class.resize(3);
  for (auto& t : tables.per_class) {
    t.resize(25);
    for (double& x : t) x = u(rng);
    std::sort(t.begin(), t.end());
  }
  std::vector<Eigen::VectorXd> ws;
  for (int i = 0; i < 300; ++i) ws.push_back(random_weight_vector(rng, 4));
  std::vector<bool> assigned(ws.size(), true);
  for (double min_p = 0; min_p <= 1.0; min_p += 0.05) {
    for (std::size_t i = 0; i < ws.size(); ++i) {
      const bool now = !decide_percentile(ws[i], tables, min_p).is_unknown();
      ASSERT_TRUE(assigned[i] || !now) << "unknown became assigned at " << min_p;
      assigned[i] = now;
    }
  }
}

TEST(DecisionPropertyTest, FlavorDisagreementWitness) {
  const V3 w(0.6, 0.39, 0.01);
  const V3 s(0.55, 0.2, 0.25);
  EXPECT_EQ(decide_sink_absolute(w, s).class_index, 0u);
  EXPECT_EQ(decide_sink_relative(w, s).class_index, 1u);
}

}  // namespace
}  // namespace mccsplat
