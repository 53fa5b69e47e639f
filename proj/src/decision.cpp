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

#include <array>
#include <string>
#include <utility>

namespace mccsplat {
namespace {

constexpr std::array<std::pair<std::string_view, Flavor>, 4> kFlavors{{
    {"plain-vanilla", Flavor::kPlainVanilla},
    {"sink-absolute", Flavor::kSinkAbsolute},
    {"sink-relative", Flavor::kSinkRelative},
    {"percentile", Flavor::kPercentile},
}};

}  // namespace

Flavor parse_flavor(std::string_view name) {
  for (const auto& [n, f] : kFlavors) {
    if (n == name) return f;
  }
  throw ConfigError("unknown flavor '" + std::string(name) +
                    "' (expected plain-vanilla, sink-absolute, sink-relative "
                    "or percentile)");
}

std::string_view flavor_name(Flavor flavor) {
  for (const auto& [n, f] : kFlavors) {
    if (f == flavor) return n;
  }
  return "?";
}

}  // namespace mccsplat
