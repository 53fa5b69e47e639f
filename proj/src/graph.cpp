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

#include "mccsplat/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "mccsplat/error.hpp"
#include "mccsplat/text.hpp"

namespace mccsplat {

AttributeSchema::AttributeSchema(std::string name,
                                 std::vector<std::string> classes)
    : name_(std::move(name)), classes_(std::move(classes)) {
  if (name_.empty()) throw ConfigError("attribute name is empty");
  if (classes_.size() < 2) {
    throw ConfigError("attribute '" + name_ + "' needs at least two classes");
  }
  std::set<std::string_view> seen;
  for (const auto& c : classes_) {
    if (c.empty()) throw ConfigError("empty class name in '" + name_ + "'");
    if (c == "unknown" || c == "UNKNOWN") {
      throw ConfigError("'unknown' is implicit and cannot be declared in '" +
                        name_ + "'");
    }
    if (!seen.insert(c).second) {
      throw ConfigError("duplicate class '" + c + "' in '" + name_ + "'");
    }
  }
}

std::optional<std::size_t> AttributeSchema::class_index(
    std::string_view class_name) const {
  auto it = std::find(classes_.begin(), classes_.end(), class_name);
  if (it == classes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - classes_.begin());
}

Index IdTable::intern(std::string_view id) {
  auto [it, inserted] = index_.try_emplace(std::string(id), size());
  if (inserted) ids_.emplace_back(id);
  return it->second;
}

std::optional<Index> IdTable::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

DirectedGraph::DirectedGraph(Index vertex_count,
                             const std::vector<std::pair<Index, Index>>& edges) {
  if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
  offsets_.assign(static_cast<std::size_t>(vertex_count) + 1, 0);
  for (const auto& [src, dst] : edges) {
    if (src < 0 || src >= vertex_count || dst < 0 || dst >= vertex_count) {
      throw std::out_of_range("edge endpoint outside vertex range");
    }
    ++offsets_[static_cast<std::size_t>(src) + 1];
  }
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  targets_.resize(edges.size());
  std::vector<Index> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [src, dst] : edges) {
    targets_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(src)]++)] = dst;
  }
}

std::span<const Index> DirectedGraph::out_neighbors(Index v) const {
  if (v < 0 || v >= vertex_count()) {
    throw std::out_of_range("vertex index " + std::to_string(v) +
                            " out of range");
  }
  const auto begin = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v)]);
  const auto end = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v) + 1]);
  return std::span<const Index>(targets_).subspan(begin, end - begin);
}

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<Index, Index>& p) const noexcept {
    return std::hash<Index>{}(p.first) * 1000003u ^ std::hash<Index>{}(p.second);
  }
};

}  // namespace

EdgeList load_edge_list(std::istream& in, const EdgeListOptions& options) {
  EdgeList result;
  std::vector<std::pair<Index, Index>> edges;
  std::unordered_set<std::pair<Index, Index>, PairHash> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (is_blank_or_comment(line)) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw ParseError("expected 'src<TAB>dst', got " +
                           std::to_string(fields.size()) + " field(s)",
                       line_no);
    }
    const Index src = result.ids.intern(fields[0]);
    const Index dst = result.ids.intern(fields[1]);
    if (src == dst && options.drop_self_loops) {
      ++result.self_loops_dropped;
      continue;
    }
    if (options.drop_duplicates && !seen.emplace(src, dst).second) {
      ++result.duplicates_dropped;
      continue;
    }
    edges.emplace_back(src, dst);
  }
  result.graph = DirectedGraph(result.ids.size(), edges);
  return result;
}

void write_edge_list(std::ostream& out, const DirectedGraph& graph,
                     const IdTable& ids) {
  for (Index v = 0; v < graph.vertex_count(); ++v) {
    for (Index t : graph.out_neighbors(v)) {
      out << ids.id(v) << '\t' << ids.id(t) << '\n';
    }
  }
}

LabelLoad load_labels(std::istream& in, const AttributeSchema& schema,
                      const IdTable& ids) {
  LabelLoad result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (is_blank_or_comment(line)) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 2) {
      throw ParseError("expected 'vertex_id<TAB>class_name'", line_no);
    }
    const auto cls = schema.class_index(fields[1]);
    if (!cls) {
      throw ParseError("unknown class " + std::string(fields[1]) +
                           " for attribute " + schema.name(),
                       line_no);
    }
    const auto v = ids.find(fields[0]);
    if (!v) {
      ++result.skipped;
      continue;
    }
    auto [it, inserted] = result.labels.emplace(*v, *cls);
    if (!inserted) {
      if (it->second != *cls) {
        throw ParseError("conflicting labels for vertex " +
                             std::string(fields[0]),
                         line_no);
      }
      ++result.duplicates;
    }
  }
  return result;
}

void write_labels(std::ostream& out, const KnownLabels& labels,
                  const AttributeSchema& schema, const IdTable& ids) {
  for (const auto& [v, c] : labels) {
    out << ids.id(v) << '\t' << schema.class_name(c) << '\n';
  }
}

std::size_t LabeledGraph::attribute_index(std::string_view attribute) const {
  for (std::size_t i = 0; i < schemas.size(); ++i) {
    if (schemas[i].name() == attribute) return i;
  }
  throw ConfigError("undeclared attribute '" + std::string(attribute) + "'");
}

}  // namespace mccsplat
