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

#include "mccsplat/rule_labeler.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <set>

#include "mccsplat/error.hpp"
#include "mccsplat/text.hpp"

namespace mccsplat {
namespace {

// Non-ASCII bytes count as word characters so UTF-8 words stay whole.
bool is_word_char(unsigned char c) {
  return std::isalnum(c) || c >= 0x80;
}

bool is_joiner(char c) { return c == '-' || c == '.' || c == '\''; }

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string finish_token(std::string_view raw) {
  std::size_t begin = 0;
  std::size_t end = raw.size();
  while (begin < end && is_joiner(raw[begin])) ++begin;
  while (end > begin && is_joiner(raw[end - 1])) --end;
  std::string token = lowercase(raw.substr(begin, end - begin));
  // Dotted abbreviation: keep one trailing period.
  if (!token.empty() && end < raw.size() && raw[end] == '.' &&
      token.find('.') != std::string::npos) {
    token.push_back('.');
  }
  return token;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (!is_word_char(c) && !is_joiner(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() &&
           (is_word_char(static_cast<unsigned char>(text[j])) || is_joiner(text[j]))) {
      ++j;
    }
    std::string token = finish_token(text.substr(i, j - i));
    if (!token.empty()) tokens.push_back(std::move(token));
    i = j;
  }
  return tokens;
}

Pattern::Pattern(std::string_view text) : text_(lowercase(trim(text))) {
  if (text_.empty()) throw ConfigError("empty pattern");
  const auto star = text_.find('*');
  if (star != std::string::npos) {
    if (star != text_.size() - 1) {
      throw ConfigError("'*' may only end a pattern: " + text_);
    }
    prefix_ = true;
  }
  std::string_view body(text_);
  if (prefix_) body.remove_suffix(1);
  for (auto word : split(body, ' ')) {
    if (!word.empty()) words_.emplace_back(word);
  }
  if (words_.empty()) throw ConfigError("pattern has no words: " + text_);
}

bool Pattern::matches(std::span<const std::string> tokens) const {
  if (tokens.size() < words_.size()) return false;
  const std::size_t last = words_.size() - 1;
  for (std::size_t start = 0; start + words_.size() <= tokens.size(); ++start) {
    bool ok = true;
    for (std::size_t k = 0; k < words_.size() && ok; ++k) {
      const std::string& tok = tokens[start + k];
      if (k == last && prefix_) {
        ok = tok.starts_with(words_[k]);
      } else {
        ok = tok == words_[k];
      }
    }
    if (ok) return true;
  }
  return false;
}

bool match_pattern(std::string_view pattern, std::span<const std::string> tokens) {
  return Pattern(pattern).matches(tokens);
}

Ruleset load_ruleset(std::istream& in) {
  Ruleset rs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (is_blank_or_comment(line)) continue;
    const auto f = split_tabs(line);
    if (f.size() != 3 || trim(f[0]).empty() || trim(f[1]).empty()) {
      throw ParseError("expected 'attribute<TAB>class<TAB>pattern'", line_no);
    }
    std::optional<Pattern> pattern;
    try {
      pattern.emplace(f[2]);
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), line_no);
    }
    auto& rules = rs.by_attribute[std::string(trim(f[0]))];
    const std::string cls(trim(f[1]));
    auto it = std::find_if(rules.begin(), rules.end(),
                           [&](const PatternRule& r) { return r.class_name == cls; });
    if (it == rules.end()) {
      rules.push_back({std::string(trim(f[0])), cls, {}});
      it = rules.end() - 1;
    }
    it->patterns.push_back(std::move(*pattern));
  }
  return rs;
}

std::vector<ProfileRecord> load_profiles(std::istream& in) {
  std::vector<ProfileRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (is_blank_or_comment(line)) continue;
    const auto f = split_tabs(line);
    if (f.size() < 2 || f.size() > 3 || f[0].empty()) {
      throw ParseError("expected 'vertex_id<TAB>full_name<TAB>biography'", line_no);
    }
    records.push_back({std::string(f[0]), std::string(f[1]),
                       f.size() == 3 ? std::string(f[2]) : std::string()});
  }
  return records;
}

ProfileLabels label_profiles(std::span<const ProfileRecord> records,
                             std::span<const PatternRule> rules,
                             const AttributeSchema& schema) {
  std::vector<std::size_t> rule_class;
  rule_class.reserve(rules.size());
  for (const auto& r : rules) {
    const auto c = schema.class_index(r.class_name);
    if (!c) {
      throw ConfigError("rule class '" + r.class_name +
                        "' is not declared for attribute " + schema.name());
    }
    rule_class.push_back(*c);
  }

  ProfileLabels out;
  for (const auto& rec : records) {
    const auto tokens = tokenize(rec.biography);
    std::set<std::size_t> matched;
    for (std::size_t r = 0; r < rules.size(); ++r) {
      const bool any = std::any_of(rules[r].patterns.begin(), rules[r].patterns.end(),
                                   [&](const Pattern& p) { return p.matches(tokens); });
      if (any) matched.insert(rule_class[r]);
    }
    if (matched.size() == 1) {
      out.labels[rec.vertex_id] = *matched.begin();
    } else if (matched.size() > 1) {
      out.conflicted.push_back(rec.vertex_id);
    }
  }
  return out;
}

namespace {

constexpr std::array<std::string_view, 20> kUnits{
    "zero",    "one",     "two",       "three",    "four",
    "five",    "six",     "seven",     "eight",    "nine",
    "ten",     "eleven",  "twelve",    "thirteen", "fourteen",
    "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"};
constexpr std::array<std::string_view, 8> kTens{
    "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety"};

std::optional<int> unit_word(std::string_view w) {
  for (std::size_t i = 1; i < kUnits.size(); ++i) {
    if (kUnits[i] == w) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<int> tens_word(std::string_view w) {
  for (std::size_t i = 0; i < kTens.size(); ++i) {
    if (kTens[i] == w) return static_cast<int>(20 + 10 * i);
  }
  return std::nullopt;
}

// Numeral ending at tokens[end - 1], also joining "twenty five".
std::optional<int> numeral_before(const std::vector<std::string>& tokens,
                                  std::size_t end) {
  if (end == 0) return std::nullopt;
  const auto value = parse_numeral(tokens[end - 1]);
  if (!value) return std::nullopt;
  if (*value < 10 && end >= 2 && unit_word(tokens[end - 1])) {
    if (auto tens = tens_word(tokens[end - 2])) return *tens + *value;
  }
  return value;
}

}  // namespace

std::optional<int> parse_numeral(std::string_view token) {
  if (token.empty()) return std::nullopt;
  if (std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    if (token.size() > 3) return std::nullopt;
    int v = 0;
    std::from_chars(token.data(), token.data() + token.size(), v);
    return v;
  }
  if (auto u = unit_word(token)) return u;
  if (auto t = tens_word(token)) return t;
  const auto dash = token.find('-');
  if (dash != std::string_view::npos) {
    auto t = tens_word(token.substr(0, dash));
    auto u = unit_word(token.substr(dash + 1));
    if (t && u && *u < 10) return *t + *u;
  }
  return std::nullopt;
}

std::vector<int> find_ages(std::string_view biography) {
  const auto tokens = tokenize(biography);
  std::vector<int> ages;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string_view tok = tokens[i];
    std::optional<int> age;
    if (tok == "year-old" || tok == "years-old") {
      age = numeral_before(tokens, i);
    } else if (tok == "years" && i + 1 < tokens.size() && tokens[i + 1] == "old") {
      age = numeral_before(tokens, i);
    } else {
      for (std::string_view suffix : {"-year-old", "-years-old"}) {
        if (tok.size() > suffix.size() && tok.ends_with(suffix)) {
          const auto head = tok.substr(0, tok.size() - suffix.size());
          age = parse_numeral(head);
          if (age && *age < 10 && i > 0 && unit_word(head)) {
            if (auto tens = tens_word(tokens[i - 1])) age = *tens + *age;
          }
          break;
        }
      }
    }
    if (age && *age > 0) ages.push_back(*age);
  }
  return ages;
}

std::size_t age_class(int years) {
  if (years < 18) return 0;
  if (years <= 24) return 1;
  if (years <= 34) return 2;
  if (years <= 49) return 3;
  return 4;
}

std::optional<std::size_t> extract_age(std::string_view biography) {
  auto ages = find_ages(biography);
  std::sort(ages.begin(), ages.end());
  ages.erase(std::unique(ages.begin(), ages.end()), ages.end());
  if (ages.size() != 1) return std::nullopt;
  return age_class(ages.front());
}

NameFrequencyTable load_name_table(std::istream& first_names_csv,
                                   std::istream& last_names) {
  NameFrequencyTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(first_names_csv, line)) {
    ++line_no;
    strip_cr(line);
    if (is_blank_or_comment(line)) continue;
    const auto f = split(line, ',');
    if (f.size() != 3) throw ParseError("expected 'name,female_freq,male_freq'", line_no);
    const auto name = lowercase(trim(f[0]));
    if (line_no == 1 && name == "name") continue;
    NameFrequencyTable::Frequencies freq;
    const auto fem = trim(f[1]);
    const auto mal = trim(f[2]);
    auto r1 = std::from_chars(fem.data(), fem.data() + fem.size(), freq.female);
    auto r2 = std::from_chars(mal.data(), mal.data() + mal.size(), freq.male);
    if (r1.ec != std::errc() || r2.ec != std::errc() || r1.ptr != fem.data() + fem.size() ||
        r2.ptr != mal.data() + mal.size()) {
      throw ParseError("bad frequency value", line_no);
    }
    if (freq.female < 0 || freq.male < 0 || !(freq.female > 0 || freq.male > 0)) {
      throw ParseError("frequencies must be >= 0 with one positive", line_no);
    }
    table.first_names[name] = freq;
  }
  while (std::getline(last_names, line)) {
    strip_cr(line);
    if (is_blank_or_comment(line)) continue;
    table.last_names.insert(lowercase(trim(line)));
  }
  return table;
}

std::optional<Sex> label_sex(std::string_view full_name,
                             const NameFrequencyTable& table) {
  const auto tokens = tokenize(full_name);
  if (tokens.size() < 2) return std::nullopt;
  const auto first = table.first_names.find(tokens.front());
  if (first == table.first_names.end()) return std::nullopt;
  const bool has_last = std::any_of(tokens.begin() + 1, tokens.end(), [&](const auto& t) {
    return table.last_names.contains(t);
  });
  if (!has_last) return std::nullopt;
  if (first->second.female > first->second.male) return Sex::kFemale;
  if (first->second.male > first->second.female) return Sex::kMale;
  return std::nullopt;
}

}  // namespace mccsplat
