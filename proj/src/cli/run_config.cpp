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

#include "mccsplat/cli/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "mccsplat/error.hpp"
#include "mccsplat/random.hpp"
#include "mccsplat/text.hpp"

namespace mccsplat::cli {
namespace pt = boost::property_tree;

namespace {

double to_double(std::string_view s, const std::string& key) {
  s = trim(s);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(key + ": not a number: '" + std::string(s) + "'");
  }
  return v;
}

template <typename Int>
Int to_int(std::string_view s, const std::string& key) {
  s = trim(s);
  Int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(key + ": not an integer: '" + std::string(s) + "'");
  }
  return v;
}

bool to_bool(std::string_view s, const std::string& key) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(key + ": not a boolean: '" + std::string(s) + "'");
}

std::vector<std::string> to_list(std::string_view s) {
  std::vector<std::string> out;
  for (auto item : split(s, ',')) {
    item = trim(item);
    if (!item.empty()) out.emplace_back(item);
  }
  return out;
}

void check_keys(const pt::ptree& section, const std::string& name,
                std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : section) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in section [" + name + "]");
    }
  }
}

}  // namespace

const AttributeConfig* RunConfig::find_attribute(std::string_view name) const {
  for (const auto& a : attributes) {
    if (a.schema.name() == name) return &a;
  }
  return nullptr;
}

void RunConfig::validate() const {
  propagation.validate();
  split.validate();
  if (decision.min_percentile &&
      !(*decision.min_percentile >= 0 && *decision.min_percentile <= 1)) {
    throw ConfigError("min_percentile must lie in [0, 1]");
  }
  std::set<std::string> names;
  for (const auto& a : attributes) {
    if (!names.insert(a.schema.name()).second) {
      throw ConfigError("attribute '" + a.schema.name() + "' declared twice");
    }
    if (!a.baseline_counts.empty() &&
        a.baseline_counts.size() != a.schema.class_count()) {
      throw ConfigError("baseline_counts for '" + a.schema.name() +
                        "' needs one count per class");
    }
  }
}

RunConfig parse_run_config(std::istream& in, const fs::path& base_dir) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(e.message(), e.line());
  }

  RunConfig cfg;
  auto resolve = [&](const std::string& p) -> fs::path {
    fs::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };

  for (const auto& [section_name, section] : tree) {
    if (section.empty() && !section.data().empty()) {
      throw ConfigError("key '" + section_name + "' outside any section");
    }
    if (section_name == "input") {
      check_keys(section, section_name,
                 {"edges", "profiles", "rulesets", "census", "last_names"});
      for (const auto& [key, value] : section) {
        const fs::path p = resolve(value.data());
        if (key == "edges") cfg.edges = p;
        if (key == "profiles") cfg.profiles = p;
        if (key == "rulesets") cfg.rulesets = p;
        if (key == "census") cfg.census = p;
        if (key == "last_names") cfg.last_names = p;
      }
    } else if (section_name.starts_with("attribute:")) {
      check_keys(section, section_name, {"classes", "labels", "baseline_counts"});
      const std::string name = section_name.substr(std::string_view("attribute:").size());
      auto classes = section.get_optional<std::string>("classes");
      if (!classes) throw ConfigError("[" + section_name + "] needs 'classes'");
      AttributeConfig a{AttributeSchema(name, to_list(*classes)), std::nullopt, {}};
      if (auto labels = section.get_optional<std::string>("labels")) a.labels = resolve(*labels);
      if (auto counts = section.get_optional<std::string>("baseline_counts")) {
        a.baseline_counts = parse_number_list(*counts);
      }
      cfg.attributes.push_back(std::move(a));
    } else if (section_name == "propagation") {
      check_keys(section, section_name,
                 {"max_iterations", "epsilon", "threads", "dump_weights"});
      for (const auto& [key, value] : section) {
        const std::string& v = value.data();
        if (key == "max_iterations") cfg.propagation.max_iterations = to_int<int>(v, key);
        if (key == "epsilon") cfg.propagation.epsilon = to_double(v, key);
        if (key == "threads") cfg.propagation.threads = to_int<unsigned>(v, key);
        if (key == "dump_weights") cfg.dump_weights = to_bool(v, key);
      }
    } else if (section_name == "decision") {
      check_keys(section, section_name, {"flavor", "min_percentile"});
      for (const auto& [key, value] : section) {
        if (key == "flavor") cfg.decision.flavor = parse_flavor(trim(value.data()));
        if (key == "min_percentile") {
          cfg.decision.min_percentile = to_double(value.data(), key);
        }
      }
    } else if (section_name == "split") {
      check_keys(section, section_name, {"train_fraction", "seed", "rng"});
      for (const auto& [key, value] : section) {
        const std::string& v = value.data();
        if (key == "train_fraction") cfg.split.train_fraction = to_double(v, key);
        if (key == "seed") cfg.split.seed = to_int<std::uint64_t>(v, key);
        if (key == "rng" && trim(v) != kRngName) {
          throw ConfigError("unsupported rng '" + v + "' (only " +
                            std::string(kRngName) + ")");
        }
      }
    } else if (section_name == "sweep") {
      check_keys(section, section_name, {"fractions"});
      if (auto f = section.get_optional<std::string>("fractions")) {
        cfg.sweep_fractions = parse_fraction_list(*f).values;
      }
    } else if (section_name == "output") {
      check_keys(section, section_name, {"dir"});
      if (auto d = section.get_optional<std::string>("dir")) cfg.out_dir = resolve(*d);
    } else {
      throw ConfigError("unknown section [" + section_name + "]");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingInputError(path.string());
  return parse_run_config(in, path.parent_path());
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  for (const auto& item : to_list(text)) out.push_back(to_double(item, "list"));
  return out;
}

FractionList parse_fraction_list(std::string_view text) {
  FractionList fl;
  for (double f : parse_number_list(text)) {
    if (!(f > 0 && f < 1)) {
      throw ConfigError("fraction " + format_g9(f) + " outside (0, 1)");
    }
    fl.values.push_back(f);
  }
  if (fl.values.empty()) throw ConfigError("empty fraction list");
  std::sort(fl.values.begin(), fl.values.end());
  const auto before = fl.values.size();
  fl.values.erase(std::unique(fl.values.begin(), fl.values.end()), fl.values.end());
  fl.duplicates = before - fl.values.size();
  return fl;
}

}  // namespace mccsplat::cli
