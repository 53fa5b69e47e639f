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

// Batch subcommands. Each returns a process exit code:
//   0 success, 2 missing input, 3 invalid config or parse error,
//   4 degenerate experiment, 1 anything else.
// Every command writes a manifest_<command>.json into the output directory
// listing inputs and outputs with their SHA-256.

#ifndef MCCSPLAT_CLI_COMMANDS_HPP_
#define MCCSPLAT_CLI_COMMANDS_HPP_

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mccsplat/cli/run_config.hpp"
#include "mccsplat/eval.hpp"

namespace mccsplat::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitMissingInput = 2,
  kExitInvalid = 3,
  kExitDegenerate = 4,
};

// Runs `body`, mapping library exceptions to exit codes and printing the
// message to `err`.
int guarded(const std::function<int()>& body, std::ostream& err);

int cmd_label(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_propagate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err);
// `fractions` overrides the config's sweep fractions when non-empty.
int cmd_sweep(const RunConfig& config, const std::vector<double>& fractions,
              std::ostream& out, std::ostream& err);
int cmd_synth(const SyntheticSpec& spec, const fs::path& out_dir,
              std::ostream& out, std::ostream& err);

std::string sha256_file(const fs::path& path);

}  // namespace mccsplat::cli

#endif  // MCCSPLAT_CLI_COMMANDS_HPP_
