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

// Seed-set construction from free-text profiles: keyword/phrase patterns over
// biographies, numeral-based age extraction, and first-name frequency sex
// assignment.

#ifndef MCCSPLAT_RULE_LABELER_HPP_
#define MCCSPLAT_RULE_LABELER_HPP_

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mccsplat/types.hpp"

namespace mccsplat {

// Lowercased tokens: maximal runs of letters and digits joined by internal
// '-', '.' or '\''. Surrounding punctuation is stripped, except that a
// dotted abbreviation keeps its final period ("G.O.P." -> "g.o.p.").
std::vector<std::string> tokenize(std::string_view text);

// A single word ("gop"), a prefix ("democrat*"), or a space-separated phrase
// ("native american") matched against consecutive tokens. Only the last
// character may be '*'.
class Pattern {
 public:
  // Throws ConfigError on an empty pattern or a misplaced '*'.
  explicit Pattern(std::string_view text);

  bool matches(std::span<const std::string> tokens) const;
  const std::string& text() const { return text_; }

 private:
  std::string text_;
  std::vector<std::string> words_;
  bool prefix_ = false;
};

bool match_pattern(std::string_view pattern, std::span<const std::string> tokens);

struct PatternRule {
  std::string attribute;
  std::string class_name;
  std::vector<Pattern> patterns;
};

// Rules grouped by attribute, in file order.
struct Ruleset {
  std::map<std::string, std::vector<PatternRule>> by_attribute;
};

// `attribute<TAB>class<TAB>pattern` lines.
Ruleset load_ruleset(std::istream& in);

struct ProfileRecord {
  std::string vertex_id;
  std::string full_name;
  std::string biography;
};

// `vertex_id<TAB>full_name<TAB>biography` lines; a missing biography field is
// read as empty.
std::vector<ProfileRecord> load_profiles(std::istream& in);

struct ProfileLabels {
  std::map<std::string, std::size_t> labels;  // vertex id -> class index
  std::vector<std::string> conflicted;        // matched >= 2 classes
};

// Throws ConfigError when a rule names a class outside `schema`.
ProfileLabels label_profiles(std::span<const ProfileRecord> records,
                             std::span<const PatternRule> rules,
                             const AttributeSchema& schema);

inline constexpr std::array<std::string_view, 5> kAgeClasses{
    "teenage", "youngster", "young", "mid-age", "elder"};

// Value of a digit string or a spelled-out numeral up to ninety-nine.
std::optional<int> parse_numeral(std::string_view token);

// Every age stated as "<n> years old" or "<n>-year-old" style phrases.
std::vector<int> find_ages(std::string_view biography);

// Index into kAgeClasses for an age in years.
std::size_t age_class(int years);

// The age class when the biography states exactly one distinct age.
std::optional<std::size_t> extract_age(std::string_view biography);

struct NameFrequencyTable {
  struct Frequencies {
    double female = 0;
    double male = 0;
  };
  std::unordered_map<std::string, Frequencies> first_names;
  std::unordered_set<std::string> last_names;
};

// `name,female_freq,male_freq` CSV (optional header) plus one last name per
// line.
NameFrequencyTable load_name_table(std::istream& first_names_csv,
                                   std::istream& last_names);

enum class Sex { kFemale, kMale };

inline std::string_view sex_name(Sex s) {
  return s == Sex::kFemale ? "female" : "male";
}

std::optional<Sex> label_sex(std::string_view full_name,
                             const NameFrequencyTable& table);

}  // namespace mccsplat

#endif  // MCCSPLAT_RULE_LABELER_HPP_
