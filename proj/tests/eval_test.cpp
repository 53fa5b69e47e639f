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


#include "mccsplat/eval.hpp"

#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "mccsplat/error.hpp"
#include "mccsplat/random.hpp"

namespace mccsplat {
namespace {

KnownLabels class_blocks(std::initializer_list<std::size_t> sizes) {
  KnownLabels out;
  Index v = 0;
  std::size_t c = 0;
  for (auto s : sizes) {
    for (std::size_t i = 0; i < s; ++i) out.emplace(v++, c);
    ++c;
  }
  return out;
}

std::vector<std::size_t> per_class(const KnownLabels& labels, std::size_t m) {
  std::vector<std::size_t> n(m, 0);
  for (const auto& [v, c] : labels) ++n[c];
  return n;
}

AttributeSchema two_class() { return AttributeSchema("attr", {"c1", "c2"}); }

TEST(SplitTest, FloorRuleExamples) {
  const auto labels = class_blocks({10, 5});
  const Split s = split_train_test(labels, 2, {0.8, 1});
  EXPECT_EQ(per_class(s.train, 2), (std::vector<std::size_t>{8, 4}));
  EXPECT_EQ(per_class(s.test, 2), (std::vector<std::size_t>{2, 1}));
  EXPECT_TRUE(s.singleton_classes.empty());
}

TEST(SplitTest, SingletonGoesToTrain) {
  const auto labels = class_blocks({1, 4});
  const Split s = split_train_test(labels, 2, {0.5, 3});
  EXPECT_EQ(per_class(s.train, 2), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(s.singleton_classes, std::vector<std::size_t>{0});
}

TEST(SplitTest, DeterministicInSeed) {
  const auto labels = class_blocks({50, 30});
  const Split a = split_train_test(labels, 2, {0.8, 7});
  const Split b = split_train_test(labels, 2, {0.8, 7});
  const Split c = split_train_test(labels, 2, {0.8, 8});
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.test, b.test);
  EXPECT_NE(a.train, c.train);
}

TEST(SplitTest, RejectsBadFraction) {
  const auto labels = class_blocks({3});
  EXPECT_THROW(split_train_test(labels, 1, {0.0, 1}), ConfigError);
  EXPECT_THROW(split_train_test(labels, 1, {1.0, 1}), ConfigError);
}

TEST(SplitPropertyTest, SoundnessAndFloorRule) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> m_dist(1, 5);
  std::uniform_int_distribution<int> size_dist(1, 60);
  std::uniform_real_distribution<double> f_dist(0.01, 0.99);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = m_dist(rng);
    KnownLabels labels;
    std::vector<std::size_t> sizes(m, 0);
    Index v = 0;
    for (int c = 0; c < m; ++c) {
      sizes[c] = static_cast<std::size_t>(size_dist(rng));
      for (std::size_t i = 0; i < sizes[c]; ++i) labels.emplace(v += 1 + (v % 3), c);
    }
    const double f = f_dist(rng);
    const Split s = split_train_test(labels, m, {f, rng()});
    KnownLabels merged = s.train;
    for (const auto& [u, c] : s.test) {
      EXPECT_TRUE(merged.emplace(u, c).second) << "vertex in both sides";
    }
    EXPECT_EQ(merged, labels);
    const auto tr = per_class(s.train, m);
    for (int c = 0; c < m; ++c) {
      const std::size_t want =
          sizes[c] == 1 ? 1 : static_cast<std::size_t>(std::floor(f * double(sizes[c]) + 1e-9));
      EXPECT_EQ(tr[c], want);
    }
  }
}

TEST(EvaluateTest, ThreeVertexExample) {
  const KnownLabels gold{{0, 0}, {1, 0}, {2, 1}};
  const std::map<Index, Decision> pred{
      {0, Decision::assign(0, 1)}, {1, Decision::assign(1, 1)}, {2, Decision::unknown()}};
  const MetricsReport r = evaluate(pred, gold, two_class());
  EXPECT_EQ(r.per_class[0].precision, 1.0);
  EXPECT_EQ(r.per_class[0].recall, 0.5);
  EXPECT_DOUBLE_EQ(r.per_class[0].f1, 2.0 / 3.0);
  EXPECT_EQ(r.per_class[1].precision, 0.0);
  EXPECT_EQ(r.per_class[1].recall, 0.0);
  EXPECT_EQ(r.per_class[1].f1, 0.0);
  EXPECT_EQ(r.micro_precision, 0.5);
  EXPECT_DOUBLE_EQ(r.micro_recall, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.micro_f1, 0.4);
  EXPECT_EQ(r.macro_precision, 0.5);
  EXPECT_EQ(r.macro_recall, 0.25);
  EXPECT_DOUBLE_EQ(r.macro_f1, 1.0 / 3.0);
  EXPECT_EQ(r.abstentions, 1u);
  EXPECT_EQ(r.per_class[0].predicted, 1u);
  EXPECT_EQ(r.per_class[1].predicted, 1u);
  EXPECT_EQ(r.per_class[0].gold, 2u);
}

TEST(EvaluateTest, PerfectAndAllUnknown) {
  const KnownLabels gold{{0, 0}, {1, 1}, {2, 1}};
  std::map<Index, Decision> perfect, none;
  for (const auto& [v, c] : gold) {
    perfect.emplace(v, Decision::assign(c, 1));
    none.emplace(v, Decision::unknown());
  }
  const auto p = evaluate(perfect, gold, two_class());
  for (double x : {p.micro_precision, p.micro_recall, p.micro_f1, p.macro_precision,
                   p.macro_recall, p.macro_f1}) {
    EXPECT_EQ(x, 1.0);
  }
  const auto u = evaluate(none, gold, two_class());
  for (const auto& cm : u.per_class) {
    EXPECT_EQ(cm.precision, 1.0);
    EXPECT_EQ(cm.recall, 0.0);
  }
  EXPECT_EQ(u.micro_recall, 0.0);
  EXPECT_EQ(u.macro_precision, 1.0);
  EXPECT_EQ(u.abstentions, 3u);
}

TEST(EvaluateTest, MissingOutOfSchemaAndExtraPredictions) {
  const KnownLabels gold{{0, 0}, {1, 1}};
  const std::map<Index, Decision> pred{{0, Decision::assign(7, 1)}, {5, Decision::assign(0, 1)}};
  const auto r = evaluate(pred, gold, two_class());
  EXPECT_EQ(r.abstentions, 2u);
  EXPECT_EQ(r.ignored_predictions, 1u);
}

TEST(EvaluatePropertyTest, AccuracyIdentityAndRanges) {
  std::mt19937_64 rng(21);
  const AttributeSchema schema("a", {"x", "y", "z", "w"});
  std::uniform_int_distribution<std::size_t> cls(0, 3);
  std::uniform_int_distribution<int> n_dist(1, 200);
  for (int trial = 0; trial < 200; ++trial) {
    KnownLabels gold;
    std::map<Index, Decision> pred;
    const int n = n_dist(rng);
    std::size_t correct = 0;
    for (Index v = 0; v < n; ++v) {
      const auto g = cls(rng);
      const auto p = trial % 2 ? g : cls(rng);
      gold.emplace(v, g);
      pred.emplace(v, Decision::assign(p, 0.5));
      correct += p == g;
    }
    const auto r = evaluate(pred, gold, schema);
    const double acc = double(correct) / double(n);
    EXPECT_EQ(r.micro_precision, acc);
    EXPECT_EQ(r.micro_recall, acc);
    for (const auto& cm : r.per_class) {
      for (double x : {cm.precision, cm.recall, cm.f1}) {
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0);
      }
      EXPECT_DOUBLE_EQ(cm.f1, cm.precision + cm.recall > 0
                                  ? 2 * cm.precision * cm.recall / (cm.precision + cm.recall)
                                  : 0.0);
    }
  }
}

TEST(BaselineTest, ReferenceClassCounts) {
  const AttributeSchema sex("sex", {"female", "male"});
  const std::vector<double> sex_counts{271539, 384574};
  const auto s = random_baseline_expected(proportions_from_counts(sex_counts), sex);
  EXPECT_NEAR(s.per_class[1].precision, 0.5861, 5e-5);
  EXPECT_NEAR(s.per_class[0].recall, 0.4139, 5e-5);
  EXPECT_NEAR(s.micro_precision, 0.5148, 5e-5);
  EXPECT_EQ(s.macro_f1, 0.5);

  const AttributeSchema religion("religion",
                                 {"atheist", "buddhist", "christian", "jewish", "muslim"});
  const std::vector<double> rel_counts{330, 204, 8103, 458, 171};
  const auto r = random_baseline_expected(proportions_from_counts(rel_counts), religion);
  EXPECT_NEAR(r.per_class[2].f1, 0.8745, 5e-5);
  EXPECT_NEAR(r.micro_f1, 0.7693, 5e-5);
  EXPECT_DOUBLE_EQ(r.macro_precision, 0.2);

  const auto even = random_baseline_expected(std::vector<double>{0.5, 0.5}, two_class());
  EXPECT_EQ(even.per_class[0].precision, 0.5);
  EXPECT_EQ(even.micro_recall, 0.5);
  EXPECT_EQ(even.macro_recall, 0.5);
}

TEST(BaselineTest, RejectsBadInput) {
  EXPECT_THROW(random_baseline_expected(std::vector<double>{1.0}, two_class()),
               std::invalid_argument);
  EXPECT_THROW(proportions_from_counts(std::vector<double>{0, 0}), std::invalid_argument);
  EXPECT_THROW(proportions_from_counts(std::vector<double>{-1, 2}), std::invalid_argument);
}

TEST(BaselineTest, SampledConvergesToExpected) {
  const std::vector<double> p{0.4139, 0.5861};
  KnownLabels gold;
  Rng truth(99);
  for (Index v = 0; v < 100000; ++v) gold.emplace(v, uniform_unit(truth) < p[0] ? 0 : 1);
  const auto pred = random_baseline_sample(gold, p, 4);
  const auto r = evaluate(pred, gold, two_class());
  const double expected = p[0] * p[0] + p[1] * p[1];
  // Each draw is correct with probability sum p^2 given proportional gold.
  const double se = std::sqrt(expected * (1 - expected) / 100000.0);
  EXPECT_NEAR(r.micro_precision, expected, 0.01);
  EXPECT_NEAR(r.micro_precision, expected, 3 * se);
}

TEST(BaselineTest, DegenerateAndDeterministicSampling) {
  const auto gold = class_blocks({20, 20});
  for (const auto& [v, d] : random_baseline_sample(gold, std::vector<double>{1, 0}, 1)) {
    EXPECT_EQ(d.class_index, 0u);
  }
  for (const auto& [v, d] : random_baseline_sample(gold, std::vector<double>{0, 1}, 1)) {
    EXPECT_EQ(d.class_index, 1u);
  }
  const std::vector<double> p{0.3, 0.7};
  EXPECT_EQ(random_baseline_sample(gold, p, 8), random_baseline_sample(gold, p, 8));
  EXPECT_NE(random_baseline_sample(gold, p, 8), random_baseline_sample(gold, p, 9));
}

double intra_fraction(const LabeledGraph& g) {
  std::size_t intra = 0;
  const auto& truth = g.known[0];
  for (Index v = 0; v < g.graph.vertex_count(); ++v) {
    for (Index t : g.graph.out_neighbors(v)) intra += truth.at(v) == truth.at(t);
  }
  return double(intra) / double(g.graph.edge_count());
}

TEST(SyntheticTest, HomophilyExtremes) {
  const auto all_in = generate_synthetic({{60, 40}, 1.0, 5, 1});
  EXPECT_GT(all_in.graph.edge_count(), 0);
  EXPECT_EQ(intra_fraction(all_in), 1.0);
  const auto all_out = generate_synthetic({{60, 40}, 0.0, 5, 1});
  EXPECT_EQ(intra_fraction(all_out), 0.0);
}

TEST(SyntheticTest, IntraFractionTracksHomophily) {
  for (double h : {0.3, 0.9}) {
    const auto g = generate_synthetic({{5000, 5000}, h, 10, 17});
    ASSERT_GE(g.graph.edge_count(), 100000);
    EXPECT_NEAR(intra_fraction(g), h, 0.01);
    EXPECT_NEAR(double(g.graph.edge_count()) / 10000.0, 10.0, 0.1);
  }
}

TEST(SyntheticTest, ShapeAndDeterminism) {
  const auto g = generate_synthetic({{3, 2}, 0.5, 2, 3});
  EXPECT_EQ(g.graph.vertex_count(), 5);
  EXPECT_EQ(g.ids.id(4), "v4");
  EXPECT_EQ(g.schemas[0].classes(), (std::vector<std::string>{"c0", "c1"}));
  EXPECT_EQ(g.known[0].size(), 5u);
  const auto h = generate_synthetic({{3, 2}, 0.5, 2, 3});
  for (Index v = 0; v < 5; ++v) {
    const auto a = g.graph.out_neighbors(v);
    const auto b = h.graph.out_neighbors(v);
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin(), b.end()));
    EXPECT_EQ(std::count(a.begin(), a.end(), v), 0);
    EXPECT_EQ(std::set<Index>(a.begin(), a.end()).size(), a.size());
  }
}

TEST(SyntheticTest, RejectsInvalidSpecs) {
  EXPECT_THROW(generate_synthetic({{10}, 0.9, 3, 1}), ConfigError);
  EXPECT_NO_THROW(generate_synthetic({{10}, 1.0, 3, 1}));
  EXPECT_THROW(generate_synthetic({{}, 0.9, 3, 1}), ConfigError);
  EXPECT_THROW(generate_synthetic({{0, 3}, 0.9, 3, 1}), ConfigError);
  EXPECT_THROW(generate_synthetic({{3, 3}, 1.5, 3, 1}), ConfigError);
}

TEST(SweepTest, ShapeEmptyTestAndDeterminism) {
  const auto g = generate_synthetic({{300, 300}, 0.9, 10, 2});
  const DecisionParams plain{};
  const std::vector<double> fr{0.05, 0.005, 0.01, 0.05};
  const auto rows = exposure_sweep(g, "class", fr, plain, {}, 1);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].fraction, 0.005);
  EXPECT_EQ(rows[2].fraction, 0.05);
  for (const auto& r : rows) {
    EXPECT_EQ(r.train_size + r.test_size, 600u);
    EXPECT_EQ(r.metrics.per_class.size(), 2u);
  }
  // floor(0.005 * 300) = 1 per class.
  EXPECT_EQ(rows[0].status, SweepStatus::kOk);
  EXPECT_EQ(rows[0].train_size, 2u);
  const auto again = exposure_sweep(g, "class", fr, plain, {}, 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].metrics.macro_precision, again[i].metrics.macro_precision);
    EXPECT_EQ(rows[i].metrics.micro_f1, again[i].metrics.micro_f1);
  }
  EXPECT_THROW(exposure_sweep(g, "class", {1.0}, plain, {}, 1), ConfigError);
}

TEST(SweepTest, EmptyTestAndDegenerateRows) {
  // Single-member classes always train, so nothing is left to test.
  const auto tiny = generate_synthetic({{1, 1}, 0.5, 1, 1});
  const auto rows = exposure_sweep(tiny, "class", {0.5}, {}, {}, 1);
  EXPECT_EQ(rows[0].status, SweepStatus::kEmptyTest);
  EXPECT_EQ(rows[0].test_size, 0u);
  const auto small = generate_synthetic({{10, 10}, 0.5, 2, 1});
  const auto deg = exposure_sweep(small, "class", {0.05}, {}, {}, 1);
  EXPECT_EQ(deg[0].status, SweepStatus::kDegenerate);
  EXPECT_EQ(sweep_status_name(SweepStatus::kDegenerate), "degenerate");
}

TEST(EvalPropertyTest, HomophilyBeatsBaselineMaterially) {
  const auto g = generate_synthetic({{2000, 2000, 2000, 2000, 2000}, 0.9, 10, 31});
  const auto rows = exposure_sweep(g, "class", {0.05}, {}, {}, 31);
  EXPECT_GT(rows[0].metrics.macro_precision, 0.2 * 1.1);
}

TEST(EvalPropertyTest, SeedAveragedMacroF1MonotoneInExposure) {
  const std::vector<double> fractions{0.005, 0.01, 0.05, 0.2};
  std::vector<double> mean(fractions.size(), 0.0);
  constexpr int kSeeds = 10;
  for (int seed = 0; seed < kSeeds; ++seed) {
    const auto g = generate_synthetic({{400, 400, 400, 400, 400}, 0.9, 10,
                                       static_cast<std::uint64_t>(100 + seed)});
    const auto rows = exposure_sweep(g, "class", fractions, {}, {}, seed);
    for (std::size_t i = 0; i < rows.size(); ++i) mean[i] += rows[i].metrics.macro_f1 / kSeeds;
  }
  for (std::size_t i = 1; i < mean.size(); ++i) {
    EXPECT_GE(mean[i], mean[i - 1]) << "fraction " << fractions[i];
  }
}

}  // namespace
}  // namespace mccsplat
