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

// Experimental apparatus: stratified splits, precision/recall/F1 with micro
// and macro averaging, the proportional random baseline, the labeled-fraction
// exposure sweep, and a homophilous synthetic graph generator.

#ifndef MCCSPLAT_EVAL_HPP_
#define MCCSPLAT_EVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mccsplat/decision.hpp"
#include "mccsplat/graph.hpp"
#include "mccsplat/propagation.hpp"
#include "mccsplat/types.hpp"

namespace mccsplat {

struct SplitSpec {
  double train_fraction = 0.8;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Split {
  KnownLabels train;
  KnownLabels test;
  // Classes with a single member; that member went to train.
  std::vector<std::size_t> singleton_classes;
};

// Per class: shuffle members (ascending vertex order, then a seeded
// Fisher-Yates), first floor(train_fraction * size) go to train.
Split split_train_test(const KnownLabels& labels, std::size_t class_count,
                       const SplitSpec& spec);

struct ClassMetrics {
  double precision = 1;
  double recall = 0;
  double f1 = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
  std::size_t correct = 0;
};

// Precision with no predictions for a class is 1; F1 of (0, 0) is 0.
// Abstentions count against recall only. Macro F1 is the harmonic mean of
// macro precision and macro recall.
struct MetricsReport {
  std::vector<std::string> class_names;
  std::vector<ClassMetrics> per_class;
  double micro_precision = 1;
  double micro_recall = 0;
  double micro_f1 = 0;
  double macro_precision = 1;
  double macro_recall = 0;
  double macro_f1 = 0;
  std::size_t abstentions = 0;
  std::size_t ignored_predictions = 0;  // predictions outside the gold set
};

double harmonic_mean(double p, double r);

// Gold vertices missing from `predictions` count as abstentions.
MetricsReport evaluate(const std::map<Index, Decision>& predictions,
                       const KnownLabels& gold, const AttributeSchema& schema);

std::vector<double> class_proportions(const KnownLabels& labels,
                                      std::size_t class_count);

// Normalizes non-negative counts into proportions.
std::vector<double> proportions_from_counts(std::span<const double> counts);

// Analytic expectation of a classifier drawing classes independently with
// the given proportions.
MetricsReport random_baseline_expected(std::span<const double> proportions,
                                       const AttributeSchema& schema);

std::map<Index, Decision> random_baseline_sample(
    const KnownLabels& gold, std::span<const double> proportions,
    std::uint64_t seed);

enum class SweepStatus { kOk, kDegenerate, kEmptyTest };

std::string_view sweep_status_name(SweepStatus s);

struct SweepRow {
  double fraction = 0;
  SweepStatus status = SweepStatus::kOk;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  int iterations_run = 0;
  MetricsReport metrics;
};

// One row per distinct fraction, ascending. A fraction leaving some class
// without training members is flagged degenerate; an empty test set yields
// a kEmptyTest row with default metrics.
std::vector<SweepRow> exposure_sweep(const LabeledGraph& labeled,
                                     std::string_view attribute,
                                     std::vector<double> fractions,
                                     const DecisionParams& decision,
                                     const PropagationConfig& config,
                                     std::uint64_t seed);

struct SyntheticSpec {
  std::vector<std::size_t> class_sizes;
  double homophily = 0.9;
  double mean_out_degree = 10;
  std::uint64_t seed = 0;

  void validate() const;
};

// Out-degrees follow Binomial(ceil(2 * mean), mean / ceil(2 * mean)). Each
// out-edge picks a same-class target with probability `homophily`, otherwise
// an other-class target, uniformly and without repeats or self-loops.
// Vertex ids are "v<index>", the attribute is "class" with classes c0..c{k-1}
// and every vertex is labeled.
LabeledGraph generate_synthetic(const SyntheticSpec& spec);

}  // namespace mccsplat

#endif  // MCCSPLAT_EVAL_HPP_
