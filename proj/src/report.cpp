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

#include "mccsplat/report.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "mccsplat/text.hpp"

namespace mccsplat {

void write_weights_tsv(std::ostream& out, const WeightMatrixd& weights,
                       const IdTable& ids) {
  for (Index v = 0; v < weights.rows(); ++v) {
    out << ids.id(v);
    for (Index c = 0; c < weights.cols(); ++c) out << '\t' << format_g9(weights(v, c));
    out << '\n';
  }
}

void write_assignments(std::ostream& out,
                       const std::map<Index, Decision>& decisions,
                       const AttributeSchema& schema, const IdTable& ids,
                       const DecisionParams& params) {
  out << "# attribute=" << schema.name() << " flavor=" << flavor_name(params.flavor);
  if (params.min_percentile) out << " min_percentile=" << format_g9(*params.min_percentile);
  out << '\n';
  for (const auto& [v, d] : decisions) {
    out << ids.id(v) << '\t'
        << (d.is_unknown() ? std::string("UNKNOWN") : schema.class_name(*d.class_index))
        << '\t' << format_g9(d.score) << '\n';
  }
}

namespace {

void metrics_row(std::ostream& out, const std::string& name, double p, double r,
                 double f1, const std::string& counts) {
  out << name << ',' << format_fixed4(p) << ',' << format_fixed4(r) << ','
      << format_fixed4(f1) << ',' << counts << '\n';
}

}  // namespace

void write_metrics_csv(std::ostream& out, const MetricsReport& report) {
  out << "class,precision,recall,f1,predicted,gold,correct\n";
  std::size_t predicted = 0, gold = 0, correct = 0;
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    const auto& m = report.per_class[c];
    predicted += m.predicted;
    gold += m.gold;
    correct += m.correct;
    metrics_row(out, report.class_names.at(c), m.precision, m.recall, m.f1,
                std::to_string(m.predicted) + ',' + std::to_string(m.gold) + ',' +
                    std::to_string(m.correct));
  }
  metrics_row(out, "micro-avg", report.micro_precision, report.micro_recall,
              report.micro_f1,
              std::to_string(predicted) + ',' + std::to_string(gold) + ',' +
                  std::to_string(correct));
  metrics_row(out, "macro-avg", report.macro_precision, report.macro_recall,
              report.macro_f1, ",,");
}

nlohmann::json metrics_to_json(const MetricsReport& report) {
  nlohmann::json classes = nlohmann::json::object();
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    const auto& m = report.per_class[c];
    classes[report.class_names.at(c)] = {
        {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1},
        {"predicted", m.predicted}, {"gold", m.gold},     {"correct", m.correct}};
  }
  return {
      {"classes", classes},
      {"micro", {{"precision", report.micro_precision},
                 {"recall", report.micro_recall},
                 {"f1", report.micro_f1}}},
      {"macro", {{"precision", report.macro_precision},
                 {"recall", report.macro_recall},
                 {"f1", report.macro_f1}}},
      {"abstentions", report.abstentions},
      {"ignored_predictions", report.ignored_predictions},
  };
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows,
                     std::uint64_t seed) {
  out << "fraction,status,train_size,test_size,iterations,micro_precision,"
         "micro_recall,micro_f1,macro_precision,macro_recall,macro_f1,"
         "abstentions,seed\n";
  for (const auto& r : rows) {
    const auto& m = r.metrics;
    out << format_g9(r.fraction) << ',' << sweep_status_name(r.status) << ','
        << r.train_size << ',' << r.test_size << ',' << r.iterations_run << ','
        << format_fixed4(m.micro_precision) << ',' << format_fixed4(m.micro_recall)
        << ',' << format_fixed4(m.micro_f1) << ',' << format_fixed4(m.macro_precision)
        << ',' << format_fixed4(m.macro_recall) << ',' << format_fixed4(m.macro_f1)
        << ',' << m.abstentions << ',' << seed << '\n';
  }
}

double relative_difference(double model, double baseline) {
  if (baseline == 0) {
    return model == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return (model - baseline) / baseline;
}

void write_comparison_csv(std::ostream& out, const MetricsReport& model,
                          const MetricsReport& baseline, double materiality) {
  out << "metric,mccsplat,baseline,relative_difference,material\n";
  auto row = [&](const std::string& name, double a, double b) {
    const double d = relative_difference(a, b);
    out << name << ',' << format_fixed4(a) << ',' << format_fixed4(b) << ','
        << format_fixed4(d) << ',' << (d > materiality ? "yes" : "no") << '\n';
  };
  for (std::size_t c = 0; c < model.per_class.size(); ++c) {
    row(model.class_names.at(c) + ":precision", model.per_class[c].precision,
        baseline.per_class.at(c).precision);
  }
  row("micro:precision", model.micro_precision, baseline.micro_precision);
  row("micro:recall", model.micro_recall, baseline.micro_recall);
  row("micro:f1", model.micro_f1, baseline.micro_f1);
  row("macro:precision", model.macro_precision, baseline.macro_precision);
  row("macro:recall", model.macro_recall, baseline.macro_recall);
  row("macro:f1", model.macro_f1, baseline.macro_f1);
}

}  // namespace mccsplat
