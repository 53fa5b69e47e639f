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

// Shared fixtures and independent reference implementations for tests.

#ifndef MCCSPLAT_TESTS_FIXTURES_HPP_
#define MCCSPLAT_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mccsplat/graph.hpp"

namespace mccsplat::testing {

// G1: A -> B, A -> C, D -> A with B labeled c1 and C labeled c2.
inline LabeledGraph make_g1() {
  std::istringstream edges("A\tB\nA\tC\nD\tA\n");
  EdgeList el = load_edge_list(edges);
  LabeledGraph g{std::move(el.graph), std::move(el.ids), {}, {}};
  g.schemas.emplace_back("attr", std::vector<std::string>{"c1", "c2"});
  std::istringstream labels("B\tc1\nC\tc2\n");
  g.known.push_back(load_labels(labels, g.schemas[0], g.ids).labels);
  return g;
}

struct RandomInstance {
  DirectedGraph graph;
  AttributeSchema schema;
  KnownLabels known;
};

// Random simple digraph with up to `max_vertices` vertices and a random
// partial labeling.
inline RandomInstance random_instance(std::mt19937_64& rng, int max_vertices,
                                      int min_classes = 2, int max_classes = 4) {
  std::uniform_int_distribution<int> nv(1, max_vertices);
  std::uniform_int_distribution<int> nc(min_classes, max_classes);
  std::uniform_real_distribution<double> unit(0, 1);
  const int n = nv(rng);
  const int m = nc(rng);
  const double density = unit(rng);
  const double label_rate = unit(rng);
  std::vector<std::pair<Index, Index>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && unit(rng) < density) edges.emplace_back(i, j);
    }
  }
  std::vector<std::string> classes;
  for (int c = 0; c < m; ++c) classes.push_back("k" + std::to_string(c));
  RandomInstance inst{DirectedGraph(n, edges), AttributeSchema("a", classes), {}};
  std::uniform_int_distribution<int> pick(0, m - 1);
  for (int i = 0; i < n; ++i) {
    if (unit(rng) < label_rate) inst.known.emplace(i, static_cast<std::size_t>(pick(rng)));
  }
  return inst;
}

// Plain dense reference for the update: row-normalized adjacency applied to
// unknown rows, known rows pinned, empty neighborhoods held. Written with
// std::vector loops only, independent of the Eigen implementation.
class DenseOracle {
 public:
  DenseOracle(const DirectedGraph& g, const KnownLabels& known, int width)
      : n_(static_cast<int>(g.vertex_count())), width_(width), adj_(n_, std::vector<int>(n_, 0)),
        label_(n_, -1) {
    for (int i = 0; i < n_; ++i) {
      for (Index j : g.out_neighbors(i)) adj_[i][static_cast<int>(j)] = 1;
    }
    for (const auto& [v, c] : known) label_[static_cast<int>(v)] = static_cast<int>(c);
    w_.assign(n_, std::vector<double>(width_, 0.0));
    for (int i = 0; i < n_; ++i) w_[i][label_[i] >= 0 ? label_[i] : width_ - 1] = 1.0;
  }

  void step() {
    std::vector<std::vector<double>> next = w_;
    for (int i = 0; i < n_; ++i) {
      if (label_[i] >= 0) continue;
      int degree = 0;
      for (int j = 0; j < n_; ++j) degree += adj_[i][j];
      if (degree == 0) continue;
      std::vector<double> acc(width_, 0.0);
      for (int j = 0; j < n_; ++j) {
        if (!adj_[i][j]) continue;
        for (int c = 0; c < width_; ++c) acc[c] += w_[j][c] / degree;
      }
      double z = 0;
      for (double x : acc) z += x;
      for (int c = 0; c < width_; ++c) next[i][c] = acc[c] / z;
    }
    w_ = std::move(next);
  }

  const std::vector<std::vector<double>>& weights() const { return w_; }

 private:
  int n_;
  int width_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> label_;
  std::vector<std::vector<double>> w_;
};

// Vertices with an out-path to any labeled vertex (labeled ones included).
inline std::set<Index> reaches_known(const DirectedGraph& g, const KnownLabels& known) {
  // Reverse BFS from the labeled set.
  std::vector<std::vector<Index>> rev(static_cast<std::size_t>(g.vertex_count()));
  for (Index v = 0; v < g.vertex_count(); ++v) {
    for (Index t : g.out_neighbors(v)) rev[static_cast<std::size_t>(t)].push_back(v);
  }
  std::set<Index> seen;
  std::vector<Index> stack;
  for (const auto& [v, c] : known) {
    seen.insert(v);
    stack.push_back(v);
  }
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    for (Index u : rev[static_cast<std::size_t>(v)]) {
      if (seen.insert(u).second) stack.push_back(u);
    }
  }
  return seen;
}

}  // namespace mccsplat::testing

#endif  // MCCSPLAT_TESTS_FIXTURES_HPP_
