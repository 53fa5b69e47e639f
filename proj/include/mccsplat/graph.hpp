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

#ifndef MCCSPLAT_GRAPH_HPP_
#define MCCSPLAT_GRAPH_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "mccsplat/types.hpp"

namespace mccsplat {

// Bijection between external vertex ids and dense indices 0..size()-1,
// assigned in first-appearance order.
class IdTable {
 public:
  // Returns the existing index for `id` or assigns the next one.
  Index intern(std::string_view id);
  std::optional<Index> find(std::string_view id) const;
  const std::string& id(Index index) const { return ids_.at(index); }
  Index size() const { return static_cast<Index>(ids_.size()); }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, Index> index_;
};

// Compressed out-adjacency. An edge i -> j means "i follows j"; the
// neighborhood of i is the set of vertices it points to.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  // Edges keep their relative order per source vertex. The caller is
  // responsible for deduplication; targets must be < vertex_count.
  DirectedGraph(Index vertex_count,
                const std::vector<std::pair<Index, Index>>& edges);

  Index vertex_count() const { return static_cast<Index>(offsets_.size()) - 1; }
  Index edge_count() const { return static_cast<Index>(targets_.size()); }

  // Throws std::out_of_range for v outside [0, vertex_count).
  std::span<const Index> out_neighbors(Index v) const;

  Index out_degree(Index v) const {
    return static_cast<Index>(out_neighbors(v).size());
  }

  // Unweighted 0/1 adjacency, row i holds the out-edges of i.
  template <typename Scalar>
  Eigen::SparseMatrix<Scalar, Eigen::RowMajor> adjacency() const {
    const Index n = vertex_count();
    Eigen::SparseMatrix<Scalar, Eigen::RowMajor> a(n, n);
    Eigen::VectorXi reserve(n);
    for (Index v = 0; v < n; ++v) reserve(v) = static_cast<int>(out_degree(v));
    a.reserve(reserve);
    for (Index v = 0; v < n; ++v) {
      for (Index t : out_neighbors(v)) a.insert(v, t) = Scalar(1);
    }
    a.makeCompressed();
    return a;
  }

 private:
  std::vector<Index> offsets_{0};
  std::vector<Index> targets_;
};

struct EdgeListOptions {
  bool drop_self_loops = true;
  bool drop_duplicates = true;
};

struct EdgeList {
  DirectedGraph graph;
  IdTable ids;
  std::size_t duplicates_dropped = 0;
  std::size_t self_loops_dropped = 0;
};

// Reads `src<TAB>dst` lines; blank lines and lines starting with '#' are
// skipped. Throws ParseError on a line that does not hold exactly two fields.
EdgeList load_edge_list(std::istream& in, const EdgeListOptions& options = {});

void write_edge_list(std::ostream& out, const DirectedGraph& graph,
                     const IdTable& ids);

struct LabelLoad {
  KnownLabels labels;
  std::size_t skipped = 0;     // vertex ids absent from the graph
  std::size_t duplicates = 0;  // identical repeated labels, kept once
};

// Reads `vertex_id<TAB>class_name` lines. Unknown class names and
// conflicting labels for one vertex throw ParseError.
LabelLoad load_labels(std::istream& in, const AttributeSchema& schema,
                      const IdTable& ids);

void write_labels(std::ostream& out, const KnownLabels& labels,
                  const AttributeSchema& schema, const IdTable& ids);

struct LabeledGraph {
  DirectedGraph graph;
  IdTable ids;
  std::vector<AttributeSchema> schemas;
  std::vector<KnownLabels> known;  // parallel to schemas

  // Throws ConfigError for an undeclared attribute.
  std::size_t attribute_index(std::string_view attribute) const;
  const AttributeSchema& schema(std::string_view attribute) const {
    return schemas[attribute_index(attribute)];
  }
  const KnownLabels& labels(std::string_view attribute) const {
    return known[attribute_index(attribute)];
  }
};

// Known vertices get the unit vector on their class, all others the unit
// vector on the unknown class.
template <typename Scalar = double>
WeightMatrix<Scalar> init_weights(Index vertex_count,
                                  const AttributeSchema& schema,
                                  const KnownLabels& labels) {
  WeightMatrix<Scalar> w = WeightMatrix<Scalar>::Zero(vertex_count, schema.width());
  w.col(static_cast<Index>(schema.unknown_index())).setOnes();
  for (const auto& [v, c] : labels) {
    w.row(v).setZero();
    w(v, static_cast<Index>(c)) = Scalar(1);
  }
  return w;
}

template <typename Scalar = double>
WeightMatrix<Scalar> init_weights(const LabeledGraph& labeled,
                                  std::string_view attribute) {
  const std::size_t a = labeled.attribute_index(attribute);
  return init_weights<Scalar>(labeled.graph.vertex_count(), labeled.schemas[a],
                              labeled.known[a]);
}

}  // namespace mccsplat

#endif  // MCCSPLAT_GRAPH_HPP_
