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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "mccsplat/error.hpp"
#include "mccsplat/random.hpp"

namespace mccsplat {

void SplitSpec::validate() const {
  if (!(train_fraction > 0 && train_fraction < 1)) {
    throw ConfigError("train_fraction must lie in (0, 1)");
  }
}

Split split_train_test(const KnownLabels& labels, std::size_t class_count,
                       const SplitSpec& spec) {
  spec.validate();
  std::vector<std::vector<Index>> members(class_count);
  for (const auto& [v, c] : labels) members.at(c).push_back(v);

  Split split;
  Rng rng(spec.seed);
  for (std::size_t c = 0; c < class_count; ++c) {
    auto& m = members[c];
    if (m.empty()) continue;
    shuffle(std::span<Index>(m), rng);
    // The epsilon absorbs products such as 0.29 * 100 = 28.999999999999996.
    auto n_train = static_cast<std::size_t>(
        std::floor(spec.train_fraction * static_cast<double>(m.size()) + 1e-9));
    if (m.size() == 1) {
      n_train = 1;
      split.singleton_classes.push_back(c);
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      (i < n_train ? split.train : split.test).emplace(m[i], c);
    }
  }
  return split;
}

double harmonic_mean(double p, double r) {
  return p + r > 0 ? 2 * p * r / (p + r) : 0.0;
}

MetricsReport evaluate(const std::map<Index, Decision>& predictions,
                       const KnownLabels& gold, const AttributeSchema& schema) {
  const std::size_t m = schema.class_count();
  MetricsReport r;
  r.class_names = schema.classes();
  r.per_class.assign(m, ClassMetrics{});

  for (const auto& [v, c] : gold) {
    ++r.per_class.at(c).gold;
    auto it = predictions.find(v);
    if (it == predictions.end() || it->second.is_unknown()) {
      ++r.abstentions;
      continue;
    }
    const std::size_t p = *it->second.class_index;
    if (p >= m) {
      // Out-of-schema output is treated as an abstention.
      ++r.abstentions;
      continue;
    }
    ++r.per_class[p].predicted;
    if (p == c) ++r.per_class[p].correct;
  }
  for (const auto& [v, d] : predictions) {
    if (!gold.contains(v)) ++r.ignored_predictions;
  }

  std::size_t predicted = 0;
  std::size_t correct = 0;
  double sum_p = 0;
  double sum_r = 0;
  for (auto& cm : r.per_class) {
    cm.precision = cm.predicted == 0 ? 1.0 : double(cm.correct) / double(cm.predicted);
    cm.recall = cm.gold == 0 ? 0.0 : double(cm.correct) / double(cm.gold);
    cm.f1 = harmonic_mean(cm.precision, cm.recall);
    predicted += cm.predicted;
    correct += cm.correct;
    sum_p += cm.precision;
    sum_r += cm.recall;
  }
  r.micro_precision = predicted == 0 ? 1.0 : double(correct) / double(predicted);
  r.micro_recall = gold.empty() ? 0.0 : double(correct) / double(gold.size());
  r.micro_f1 = harmonic_mean(r.micro_precision, r.micro_recall);
  r.macro_precision = sum_p / double(m);
  r.macro_recall = sum_r / double(m);
  r.macro_f1 = harmonic_mean(r.macro_precision, r.macro_recall);
  return r;
}

std::vector<double> class_proportions(const KnownLabels& labels,
                                      std::size_t class_count) {
  std::vector<double> counts(class_count, 0.0);
  for (const auto& [v, c] : labels) counts.at(c) += 1;
  return proportions_from_counts(counts);
}

std::vector<double> proportions_from_counts(std::span<const double> counts) {
  double total = 0;
  for (double c : counts) {
    if (!(c >= 0)) throw std::invalid_argument("negative class count");
    total += c;
  }
  if (!(total > 0)) throw std::invalid_argument("class counts sum to zero");
  std::vector<double> p(counts.begin(), counts.end());
  for (double& x : p) x /= total;
  return p;
}

MetricsReport random_baseline_expected(std::span<const double> proportions,
                                       const AttributeSchema& schema) {
  const std::size_t m = schema.class_count();
  if (proportions.size() != m) {
    throw std::invalid_argument("one proportion per class required");
  }
  MetricsReport r;
  r.class_names = schema.classes();
  r.per_class.resize(m);
  double micro = 0;
  for (std::size_t c = 0; c < m; ++c) {
    const double p = proportions[c];
    r.per_class[c].precision = r.per_class[c].recall = r.per_class[c].f1 = p;
    micro += p * p;
  }
  r.micro_precision = r.micro_recall = r.micro_f1 = micro;
  r.macro_precision = r.macro_recall = r.macro_f1 = 1.0 / double(m);
  return r;
}

std::map<Index, Decision> random_baseline_sample(
    const KnownLabels& gold, std::span<const double> proportions,
    std::uint64_t seed) {
  std::vector<double> cdf(proportions.size());
  std::partial_sum(proportions.begin(), proportions.end(), cdf.begin());
  Rng rng(seed);
  std::map<Index, Decision> out;
  for (const auto& [v, c] : gold) {
    const double u = uniform_unit(rng) * cdf.back();
    auto k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) -
                                      cdf.begin());
    // Skip zero-probability classes sitting at the boundary.
    while (k < proportions.size() && proportions[k] == 0) ++k;
    if (k >= proportions.size()) k = proportions.size() - 1;
    out.emplace_hint(out.end(), v, Decision::assign(k, proportions[k]));
  }
  return out;
}

std::string_view sweep_status_name(SweepStatus s) {
  switch (s) {
    case SweepStatus::kOk:
      return "ok";
    case SweepStatus::kDegenerate:
      return "degenerate";
    case SweepStatus::kEmptyTest:
      return "empty-test";
  }
  return "?";
}

std::vector<SweepRow> exposure_sweep(const LabeledGraph& labeled,
                                     std::string_view attribute,
                                     std::vector<double> fractions,
                                     const DecisionParams& decision,
                                     const PropagationConfig& config,
                                     std::uint64_t seed) {
  const std::size_t a = labeled.attribute_index(attribute);
  const AttributeSchema& schema = labeled.schemas[a];
  const KnownLabels& known = labeled.known[a];
  for (double f : fractions) {
    if (!(f > 0 && f < 1)) throw ConfigError("sweep fractions must lie in (0, 1)");
  }
  std::sort(fractions.begin(), fractions.end());
  fractions.erase(std::unique(fractions.begin(), fractions.end()), fractions.end());

  std::vector<std::size_t> class_sizes(schema.class_count(), 0);
  for (const auto& [v, c] : known) ++class_sizes.at(c);

  std::vector<SweepRow> rows;
  for (double f : fractions) {
    SweepRow row;
    row.fraction = f;
    const Split split = split_train_test(known, schema.class_count(), {f, seed});
    row.train_size = split.train.size();
    row.test_size = split.test.size();
    if (split.test.empty()) {
      row.status = SweepStatus::kEmptyTest;
      rows.push_back(std::move(row));
      continue;
    }
    std::vector<std::size_t> train_sizes(schema.class_count(), 0);
    for (const auto& [v, c] : split.train) ++train_sizes[c];
    for (std::size_t c = 0; c < schema.class_count(); ++c) {
      if (class_sizes[c] > 0 && train_sizes[c] == 0) row.status = SweepStatus::kDegenerate;
    }
    const auto result = run<double>(labeled.graph, schema, split.train, config);
    row.iterations_run = result.iterations_run;
    const auto decisions = assign_all(result, split.train, decision);
    std::map<Index, Decision> test_predictions;
    for (const auto& [v, c] : split.test) test_predictions.emplace(v, decisions.at(v));
    row.metrics = evaluate(test_predictions, split.test, schema);
    rows.push_back(std::move(row));
  }
  return rows;
}

void SyntheticSpec::validate() const {
  if (class_sizes.empty()) throw ConfigError("synthetic spec needs at least one class");
  for (auto s : class_sizes) {
    if (s < 1) throw ConfigError("synthetic class sizes must be >= 1");
  }
  if (!(homophily >= 0 && homophily <= 1)) throw ConfigError("homophily must lie in [0, 1]");
  if (!(mean_out_degree >= 0)) throw ConfigError("mean out-degree must be >= 0");
  if (class_sizes.size() == 1 && homophily < 1) {
    throw ConfigError("a single-class graph needs homophily 1 (no other-class targets)");
  }
}

LabeledGraph generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  const std::size_t k = spec.class_sizes.size();
  std::vector<Index> start(k + 1, 0);
  for (std::size_t c = 0; c < k; ++c) {
    start[c + 1] = start[c] + static_cast<Index>(spec.class_sizes[c]);
  }
  const Index n = start[k];

  std::vector<std::string> classes;
  for (std::size_t c = 0; c < k; ++c) classes.push_back("c" + std::to_string(c));

  LabeledGraph g;
  for (Index v = 0; v < n; ++v) g.ids.intern("v" + std::to_string(v));
  // A one-class schema is not representable; pad with an empty class.
  if (classes.size() == 1) classes.push_back("c1");
  g.schemas.emplace_back("class", classes);
  KnownLabels truth;
  for (std::size_t c = 0; c < k; ++c) {
    for (Index v = start[c]; v < start[c + 1]; ++v) truth.emplace_hint(truth.end(), v, c);
  }
  g.known.push_back(std::move(truth));

  const auto trials = static_cast<int>(std::ceil(2 * spec.mean_out_degree));
  const double p_edge = trials > 0 ? spec.mean_out_degree / trials : 0.0;

  Rng rng(spec.seed);
  std::vector<std::pair<Index, Index>> edges;
  edges.reserve(static_cast<std::size_t>(double(n) * spec.mean_out_degree * 1.05));
  std::unordered_set<Index> chosen;
  for (std::size_t c = 0; c < k; ++c) {
    const Index same = start[c + 1] - start[c];
    const Index other = n - same;
    for (Index v = start[c]; v < start[c + 1]; ++v) {
      int degree = 0;
      for (int t = 0; t < trials; ++t) degree += uniform_unit(rng) < p_edge ? 1 : 0;
      chosen.clear();
      for (int e = 0; e < degree; ++e) {
        // Bounded retries keep tiny classes from looping forever.
        for (int attempt = 0; attempt < 64; ++attempt) {
          const bool intra = uniform_unit(rng) < spec.homophily;
          Index target;
          if (intra) {
            if (same < 2) break;
            Index r = static_cast<Index>(uniform_index(rng, static_cast<std::uint64_t>(same - 1)));
            target = start[c] + r;
            if (target >= v) ++target;
          } else {
            if (other < 1) break;
            Index r = static_cast<Index>(uniform_index(rng, static_cast<std::uint64_t>(other)));
            target = r < start[c] ? r : r + same;
          }
          if (chosen.insert(target).second) {
            edges.emplace_back(v, target);
            break;
          }
        }
      }
    }
  }
  g.graph = DirectedGraph(n, edges);
  return g;
}

}  // namespace mccsplat
