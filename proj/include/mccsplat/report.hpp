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

#ifndef MCCSPLAT_REPORT_HPP_
#define MCCSPLAT_REPORT_HPP_

#include <iosfwd>
#include <map>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "mccsplat/decision.hpp"
#include "mccsplat/eval.hpp"
#include "mccsplat/graph.hpp"

namespace mccsplat {

// `vertex_id<TAB>w_0<TAB>...<TAB>w_m`, 9 significant digits.
void write_weights_tsv(std::ostream& out, const WeightMatrixd& weights,
                       const IdTable& ids);

// Header comment echoing the flavor, then
// `vertex_id<TAB>class_name_or_UNKNOWN<TAB>score` per vertex.
void write_assignments(std::ostream& out,
                       const std::map<Index, Decision>& decisions,
                       const AttributeSchema& schema, const IdTable& ids,
                       const DecisionParams& params);

// `class,precision,recall,f1,predicted,gold,correct`, one row per class then
// micro and macro rows, 4 decimals.
void write_metrics_csv(std::ostream& out, const MetricsReport& report);

nlohmann::json metrics_to_json(const MetricsReport& report);

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows,
                     std::uint64_t seed);

// Relative differences of `model` over `baseline` for the aggregate metrics
// and each class precision, flagging those above `materiality` (0.10).
void write_comparison_csv(std::ostream& out, const MetricsReport& model,
                          const MetricsReport& baseline,
                          double materiality = 0.10);

double relative_difference(double model, double baseline);

}  // namespace mccsplat

#endif  // MCCSPLAT_REPORT_HPP_
