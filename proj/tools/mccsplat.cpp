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

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mccsplat/cli/commands.hpp"
#include "mccsplat/cli/run_config.hpp"
#include "mccsplat/decision.hpp"

namespace {

using namespace mccsplat;
using namespace mccsplat::cli;

struct Overrides {
  std::string config;
  std::optional<std::string> flavor;
  std::optional<double> min_percentile;
  std::optional<int> max_iters;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> seed;
  std::optional<double> train_fraction;
  std::optional<unsigned> threads;
  std::optional<std::string> out;
};

void add_run_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "Run configuration (INI)")->required();
  cmd->add_option("--flavor", o.flavor,
                  "plain-vanilla | sink-absolute | sink-relative | percentile");
  cmd->add_option("--min-percentile", o.min_percentile,
                  "Percentile flavor: abstain below this percentile");
  cmd->add_option("--max-iters", o.max_iters, "Propagation iteration cap");
  cmd->add_option("--epsilon", o.epsilon, "Convergence residual tolerance");
  cmd->add_option("--seed", o.seed, "Split/sampling seed");
  cmd->add_option("--train-fraction", o.train_fraction, "Per-class train fraction");
  cmd->add_option("--threads", o.threads, "Propagation worker threads");
  cmd->add_option("--out", o.out, "Output directory");
}

RunConfig resolve(const Overrides& o) {
  RunConfig cfg = load_run_config(o.config);
  if (o.flavor) cfg.decision.flavor = parse_flavor(*o.flavor);
  if (o.min_percentile) cfg.decision.min_percentile = *o.min_percentile;
  if (o.max_iters) cfg.propagation.max_iterations = *o.max_iters;
  if (o.epsilon) cfg.propagation.epsilon = *o.epsilon;
  if (o.seed) cfg.split.seed = *o.seed;
  if (o.train_fraction) cfg.split.train_fraction = *o.train_fraction;
  if (o.threads) cfg.propagation.threads = *o.threads;
  if (o.out) cfg.out_dir = *o.out;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Soft-label propagation with automatic thresholding over directed graphs"};
  app.require_subcommand(1);

  Overrides label_o, propagate_o, evaluate_o, sweep_o;
  add_run_flags(app.add_subcommand("label", "Label profiles from rulesets and census names"),
                label_o);
  add_run_flags(app.add_subcommand("propagate", "Propagate labels and assign classes"),
                propagate_o);
  add_run_flags(app.add_subcommand("evaluate", "Split, propagate and score against a baseline"),
                evaluate_o);
  auto* sweep = app.add_subcommand("sweep", "Score quality across labeled fractions");
  add_run_flags(sweep, sweep_o);
  std::string fractions;
  sweep->add_option("--fractions", fractions, "Comma-separated fractions in (0,1)");

  auto* synth = app.add_subcommand("synth", "Write a homophilous synthetic graph");
  std::string sizes = "100,100";
  SyntheticSpec spec;
  std::string synth_out = "synth";
  synth->add_option("--sizes", sizes, "Comma-separated class sizes");
  synth->add_option("--homophily", spec.homophily, "Same-class edge probability");
  synth->add_option("--degree", spec.mean_out_degree, "Mean out-degree");
  synth->add_option("--seed", spec.seed, "Generator seed");
  synth->add_option("--out", synth_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  auto& out = std::cout;
  auto& err = std::cerr;
  auto with_config = [&](const Overrides& o, auto&& cmd) {
    RunConfig cfg;
    const int rc = guarded(
        [&] {
          cfg = resolve(o);
          return int(kExitOk);
        },
        err);
    return rc != kExitOk ? rc : cmd(cfg);
  };

  if (app.got_subcommand("label")) {
    return with_config(label_o, [&](const RunConfig& c) { return cmd_label(c, out, err); });
  }
  if (app.got_subcommand("propagate")) {
    return with_config(propagate_o,
                       [&](const RunConfig& c) { return cmd_propagate(c, out, err); });
  }
  if (app.got_subcommand("evaluate")) {
    return with_config(evaluate_o,
                       [&](const RunConfig& c) { return cmd_evaluate(c, out, err); });
  }
  if (app.got_subcommand("sweep")) {
    return with_config(sweep_o, [&](const RunConfig& c) {
      std::vector<double> list;
      if (!fractions.empty()) {
        const int rc = guarded(
            [&] {
              const FractionList fl = parse_fraction_list(fractions);
              if (fl.duplicates) {
                err << "warning: " << fl.duplicates << " duplicate fraction(s) dropped\n";
              }
              list = fl.values;
              return int(kExitOk);
            },
            err);
        if (rc != kExitOk) return rc;
      }
      return cmd_sweep(c, list, out, err);
    });
  }
  // synth
  const int rc = guarded(
      [&] {
        spec.class_sizes.clear();
        for (double s : parse_number_list(sizes)) {
          if (!(s >= 1) || s != static_cast<double>(static_cast<std::size_t>(s))) {
            throw ConfigError("class sizes must be positive integers");
          }
          spec.class_sizes.push_back(static_cast<std::size_t>(s));
        }
        spec.validate();
        return int(kExitOk);
      },
      err);
  if (rc != kExitOk) return rc;
  return cmd_synth(spec, synth_out, out, err);
}
