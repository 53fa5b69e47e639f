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

// Declarative run description read from an INI file:
//
//   [input]        edges, profiles, rulesets, census, last_names
//   [attribute:N]  classes (comma list), labels, baseline_counts
//   [propagation]  max_iterations, epsilon, threads, dump_weights
//   [decision]     flavor, min_percentile
//   [split]        train_fraction, seed, rng (must be mt19937_64)
//   [sweep]        fractions (comma list)
//   [output]       dir
//
// Relative paths resolve against the directory holding the config file.

#ifndef MCCSPLAT_CLI_RUN_CONFIG_HPP_
#define MCCSPLAT_CLI_RUN_CONFIG_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mccsplat/decision.hpp"
#include "mccsplat/eval.hpp"
#include "mccsplat/propagation.hpp"
#include "mccsplat/types.hpp"

namespace mccsplat::cli {

namespace fs = std::filesystem;

struct AttributeConfig {
  AttributeSchema schema;
  std::optional<fs::path> labels;
  // Class counts overriding the gold proportions for the random baseline.
  std::vector<double> baseline_counts;
};

struct RunConfig {
  std::optional<fs::path> edges;
  std::optional<fs::path> profiles;
  std::optional<fs::path> rulesets;
  std::optional<fs::path> census;
  std::optional<fs::path> last_names;
  std::vector<AttributeConfig> attributes;
  PropagationConfig propagation;
  bool dump_weights = true;
  DecisionParams decision;
  SplitSpec split;
  std::vector<double> sweep_fractions;
  fs::path out_dir = "out";

  const AttributeConfig* find_attribute(std::string_view name) const;
  void validate() const;
};

// Throws ConfigError (or ParseError with a line number) on bad content.
RunConfig parse_run_config(std::istream& in, const fs::path& base_dir);

// Throws MissingInputError when the file cannot be opened.
RunConfig load_run_config(const fs::path& path);

struct FractionList {
  std::vector<double> values;   // ascending, distinct
  std::size_t duplicates = 0;
};

// Comma-separated fractions, each in (0, 1). Throws ConfigError on an empty
// list or an out-of-range value.
FractionList parse_fraction_list(std::string_view text);

std::vector<double> parse_number_list(std::string_view text);

}  // namespace mccsplat::cli

#endif  // MCCSPLAT_CLI_RUN_CONFIG_HPP_
