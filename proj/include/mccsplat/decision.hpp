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

// The four decision flavors turning a propagated weight vector into a class
// assignment or an abstention. The trailing unknown component of a weight
// vector is never a candidate; every rule looks at classes 0..m-1 only and
// breaks ties toward the lowest class index.

#ifndef MCCSPLAT_DECISION_HPP_
#define MCCSPLAT_DECISION_HPP_

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mccsplat/error.hpp"
#include "mccsplat/propagation.hpp"
#include "mccsplat/types.hpp"

namespace mccsplat {

struct Decision {
  std::optional<std::size_t> class_index;  // nullopt = Unknown
  double score = 0;

  bool is_unknown() const { return !class_index.has_value(); }
  static Decision unknown(double score = 0) { return {std::nullopt, score}; }
  static Decision assign(std::size_t c, double score) { return {c, score}; }

  friend bool operator==(const Decision&, const Decision&) = default;
};

enum class Flavor { kPlainVanilla, kSinkAbsolute, kSinkRelative, kPercentile };

// Accepts "plain-vanilla", "sink-absolute", "sink-relative", "percentile".
// Throws ConfigError otherwise.
Flavor parse_flavor(std::string_view name);
std::string_view flavor_name(Flavor flavor);

struct DecisionParams {
  Flavor flavor = Flavor::kPlainVanilla;
  // Percentile flavor only; abstain when the best percentile is below it.
  std::optional<double> min_percentile;
};

namespace detail {

// Index of the largest finite-or-infinite value among `candidates` (a mask
// over classes); lowest index on ties. -1 when no candidate.
template <typename Values, typename Mask>
Index argmax_masked(const Values& values, const Mask& candidates, Index m) {
  Index best = -1;
  for (Index c = 0; c < m; ++c) {
    if (!candidates(c)) continue;
    if (best < 0 || values(c) > values(best)) best = c;
  }
  return best;
}

}  // namespace detail

template <typename Derived>
Decision decide_plain_vanilla(const Eigen::MatrixBase<Derived>& w) {
  const Index m = w.size() - 1;
  Index best = 0;
  for (Index c = 1; c < m; ++c) {
    if (w(c) > w(best)) best = c;
  }
  if (m < 1 || !(w(best) > 0)) return Decision::unknown();
  return Decision::assign(static_cast<std::size_t>(best), double(w(best)));
}

// Highest-weight class among those strictly above the sink component.
template <typename DerivedW, typename DerivedS>
Decision decide_sink_absolute(const Eigen::MatrixBase<DerivedW>& w,
                              const Eigen::MatrixBase<DerivedS>& sink) {
  const Index m = w.size() - 1;
  Eigen::Array<bool, Eigen::Dynamic, 1> above(m);
  for (Index c = 0; c < m; ++c) above(c) = w(c) > sink(c);
  const Index best = detail::argmax_masked(w, above, m);
  if (best < 0) return Decision::unknown();
  return Decision::assign(static_cast<std::size_t>(best), double(w(best)));
}

// Relative lift (w_c - s_c) / s_c; a zero sink component with positive
// weight has infinite lift, with zero weight it has lift 0.
template <typename DerivedW, typename DerivedS>
Eigen::ArrayXd relative_lift(const Eigen::MatrixBase<DerivedW>& w,
                             const Eigen::MatrixBase<DerivedS>& sink) {
  const Index m = w.size() - 1;
  Eigen::ArrayXd lift(m);
  for (Index c = 0; c < m; ++c) {
    const double wc = double(w(c));
    const double sc = double(sink(c));
    if (sc > 0) {
      lift(c) = (wc - sc) / sc;
    } else {
      lift(c) = wc > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
  }
  return lift;
}

template <typename DerivedW, typename DerivedS>
Decision decide_sink_relative(const Eigen::MatrixBase<DerivedW>& w,
                              const Eigen::MatrixBase<DerivedS>& sink) {
  const Eigen::ArrayXd lift = relative_lift(w, sink);
  const Index m = lift.size();
  const auto positive = (lift > 0).eval();
  const Index best = detail::argmax_masked(lift, positive, m);
  if (best < 0) return Decision::unknown();
  return Decision::assign(static_cast<std::size_t>(best), lift(best));
}

// Per class, the ascending class-c components of the re-estimated weights of
// known vertices labeled c.
struct PercentileTable {
  std::vector<std::vector<double>> per_class;

  std::span<const double> table(std::size_t c) const { return per_class.at(c); }
};

template <typename Scalar>
PercentileTable build_percentile_table(
    const std::map<Index, WeightVector<Scalar>>& reestimated_known,
    const KnownLabels& known, std::size_t class_count) {
  PercentileTable t;
  t.per_class.resize(class_count);
  for (const auto& [v, c] : known) {
    auto it = reestimated_known.find(v);
    if (it == reestimated_known.end()) continue;
    t.per_class.at(c).push_back(double(it->second(static_cast<Index>(c))));
  }
  for (auto& entries : t.per_class) std::sort(entries.begin(), entries.end());
  return t;
}

// Fraction of entries strictly below x. Empty table -> 0.
inline double percentile_of(std::span<const double> sorted_table, double x) {
  if (sorted_table.empty()) return 0.0;
  const auto below = std::lower_bound(sorted_table.begin(), sorted_table.end(), x) -
                     sorted_table.begin();
  return static_cast<double>(below) / static_cast<double>(sorted_table.size());
}

template <typename Derived>
Decision decide_percentile(const Eigen::MatrixBase<Derived>& w,
                           const PercentileTable& tables,
                           std::optional<double> min_percentile = std::nullopt) {
  const Index m = w.size() - 1;
  Index best = 0;
  double best_p = -1;
  for (Index c = 0; c < m; ++c) {
    const double p = percentile_of(tables.table(static_cast<std::size_t>(c)),
                                   double(w(c)));
    if (p > best_p) {
      best_p = p;
      best = c;
    }
  }
  if (min_percentile && best_p < *min_percentile) return Decision::unknown(best_p);
  return Decision::assign(static_cast<std::size_t>(best), best_p);
}

// Decisions for every vertex. Known vertices pass through with their label
// and score 1.
template <typename Scalar>
std::map<Index, Decision> assign_all(const PropagationResult<Scalar>& result,
                                     const KnownLabels& known,
                                     const DecisionParams& params) {
  const Index n = result.final_weights.rows();
  const std::size_t m = static_cast<std::size_t>(result.final_weights.cols() - 1);
  std::optional<PercentileTable> tables;
  if (params.flavor == Flavor::kPercentile) {
    tables = build_percentile_table(result.reestimated_known, known, m);
  }
  std::map<Index, Decision> out;
  auto hint = out.end();
  for (Index v = 0; v < n; ++v) {
    if (auto k = known.find(v); k != known.end()) {
      hint = out.emplace_hint(hint, v, Decision::assign(k->second, 1.0));
      continue;
    }
    const auto w = result.final_weights.row(v);
    Decision d;
    switch (params.flavor) {
      case Flavor::kPlainVanilla:
        d = decide_plain_vanilla(w);
        break;
      case Flavor::kSinkAbsolute:
        d = decide_sink_absolute(w, result.sink.transpose());
        break;
      case Flavor::kSinkRelative:
        d = decide_sink_relative(w, result.sink.transpose());
        break;
      case Flavor::kPercentile:
        d = decide_percentile(w, *tables, params.min_percentile);
        break;
    }
    hint = out.emplace_hint(hint, v, d);
  }
  return out;
}

}  // namespace mccsplat

#endif  // MCCSPLAT_DECISION_HPP_
