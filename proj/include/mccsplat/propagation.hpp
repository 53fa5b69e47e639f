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

// Soft-label propagation over out-neighborhoods.
//
// Unknown vertices take the L1-normalized sum of their out-neighbors'
// previous weights; known vertices stay pinned to their unit vector. Updates
// are synchronous: iteration t reads only the t-1 buffer, so rows can be
// computed in any order or in parallel with bit-identical results.
//
// After the last iteration two derived quantities are produced:
//   * the sink vector, the normalized mean of every final row;
//   * re-estimated weights for known vertices, i.e. the neighborhood mean
//     they would have received had they been unknown.

#ifndef MCCSPLAT_PROPAGATION_HPP_
#define MCCSPLAT_PROPAGATION_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "mccsplat/error.hpp"
#include "mccsplat/graph.hpp"
#include "mccsplat/types.hpp"

namespace mccsplat {

struct PropagationConfig {
  int max_iterations = 100;
  double epsilon = 1e-6;
  // Worker threads for the per-row update. Results do not depend on it.
  unsigned threads = 1;

  void validate() const {
    if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
    if (!(epsilon >= 0)) throw ConfigError("epsilon must be >= 0");
    if (threads < 1) throw ConfigError("threads must be >= 1");
  }
};

template <typename Scalar>
struct PropagationResult {
  WeightMatrix<Scalar> final_weights;
  WeightVector<Scalar> sink;
  std::map<Index, WeightVector<Scalar>> reestimated_known;
  int iterations_run = 0;
  Scalar final_residual = 0;

  bool converged(double epsilon) const { return final_residual <= epsilon; }
};

template <typename Scalar>
using IterationObserver =
    std::function<void(int iteration, const WeightMatrix<Scalar>& weights)>;

namespace detail {

// Runs fn(begin, end, chunk) over [0, n) split into `workers` contiguous
// chunks. Chunk boundaries only affect scheduling, never results.
template <typename Fn>
void parallel_chunks(Index n, unsigned workers, Fn&& fn) {
  const Index chunks = std::max<Index>(1, std::min<Index>(workers, n));
  if (chunks == 1) {
    fn(Index{0}, n, Index{0});
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(chunks));
  for (Index c = 0; c < chunks; ++c) {
    const Index begin = n * c / chunks;
    const Index end = n * (c + 1) / chunks;
    pool.emplace_back([&fn, begin, end, c] { fn(begin, end, c); });
  }
}

template <typename Scalar>
class Propagator {
 public:
  using Adjacency = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;

  Propagator(const DirectedGraph& graph, const KnownLabels& known,
             Index width, unsigned threads)
      : adjacency_(graph.adjacency<Scalar>()),
        known_class_(static_cast<std::size_t>(graph.vertex_count()), -1),
        width_(width),
        threads_(threads) {
    for (const auto& [v, c] : known) {
      if (v < 0 || v >= graph.vertex_count()) {
        throw std::out_of_range("known label for vertex outside graph");
      }
      if (static_cast<Index>(c) >= width - 1) {
        throw std::out_of_range("known label class outside schema");
      }
      known_class_[static_cast<std::size_t>(v)] = static_cast<Index>(c);
    }
  }

  // Writes iteration t into `next` from `previous` and returns the largest
  // absolute component change.
  Scalar step(const WeightMatrix<Scalar>& previous,
              WeightMatrix<Scalar>& next) const {
    const Index n = previous.rows();
    next.resize(n, width_);
    std::vector<Scalar> chunk_residual(
        static_cast<std::size_t>(std::max<Index>(1, std::min<Index>(threads_, n))),
        Scalar(0));
    parallel_chunks(n, threads_, [&](Index begin, Index end, Index chunk) {
      if (begin == end) return;
      next.middleRows(begin, end - begin).noalias() =
          adjacency_.middleRows(begin, end - begin) * previous;
      Scalar residual = 0;
      for (Index v = begin; v < end; ++v) {
        const Index cls = known_class_[static_cast<std::size_t>(v)];
        if (cls >= 0) {
          next.row(v).setZero();
          next(v, cls) = Scalar(1);
          continue;
        }
        const Scalar z = next.row(v).sum();
        if (adjacency_.outerIndexPtr()[v + 1] == adjacency_.outerIndexPtr()[v] ||
            !(z > 0)) {
          next.row(v) = previous.row(v);
        } else {
          next.row(v) /= z;
        }
        residual = std::max(
            residual, (next.row(v) - previous.row(v)).cwiseAbs().maxCoeff());
      }
      chunk_residual[static_cast<std::size_t>(chunk)] = residual;
    });
    return *std::max_element(chunk_residual.begin(), chunk_residual.end());
  }

  // Normalized neighbor mean of `weights` for v, or the unit unknown vector
  // when v has no out-neighbors.
  WeightVector<Scalar> neighborhood_mean(const WeightMatrix<Scalar>& weights,
                                         Index v) const {
    WeightVector<Scalar> acc = WeightVector<Scalar>::Zero(width_);
    for (typename Adjacency::InnerIterator it(adjacency_, v); it; ++it) {
      acc += weights.row(it.col()).transpose();
    }
    const Scalar z = acc.sum();
    if (!(z > 0)) return unit_vector<Scalar>(width_, width_ - 1);
    return acc / z;
  }

 private:
  Adjacency adjacency_;
  std::vector<Index> known_class_;
  Index width_;
  unsigned threads_;
};

}  // namespace detail

// One synchronous update. `previous` rows must be valid weight vectors.
template <typename Scalar>
WeightMatrix<Scalar> propagate_step(const DirectedGraph& graph,
                                    const AttributeSchema& schema,
                                    const WeightMatrix<Scalar>& previous,
                                    const KnownLabels& known) {
  detail::Propagator<Scalar> p(graph, known, schema.width(), 1);
  WeightMatrix<Scalar> next;
  p.step(previous, next);
  return next;
}

// Component-wise mean over all rows, L1-normalized. Throws
// std::invalid_argument for an empty matrix.
template <typename Derived>
WeightVector<typename Derived::Scalar> compute_sink(
    const Eigen::MatrixBase<Derived>& final_weights) {
  using Scalar = typename Derived::Scalar;
  if (final_weights.rows() == 0) {
    throw std::invalid_argument("sink of an empty weight matrix");
  }
  WeightVector<Scalar> s =
      final_weights.colwise().sum().transpose() / Scalar(final_weights.rows());
  const Scalar z = s.sum();
  if (z > 0) s /= z;
  return s;
}

template <typename Scalar>
std::map<Index, WeightVector<Scalar>> reestimate_known(
    const DirectedGraph& graph, const AttributeSchema& schema,
    const WeightMatrix<Scalar>& final_weights, const KnownLabels& known) {
  detail::Propagator<Scalar> p(graph, known, schema.width(), 1);
  std::map<Index, WeightVector<Scalar>> out;
  for (const auto& [v, c] : known) out.emplace(v, p.neighborhood_mean(final_weights, v));
  return out;
}

// Iterates until the residual is <= epsilon or max_iterations is reached.
// `observer`, when set, sees the matrix after every iteration.
template <typename Scalar = double>
PropagationResult<Scalar> run(const DirectedGraph& graph,
                              const AttributeSchema& schema,
                              const KnownLabels& known,
                              const PropagationConfig& config,
                              const IterationObserver<Scalar>& observer = {}) {
  config.validate();
  detail::Propagator<Scalar> propagator(graph, known, schema.width(),
                                        config.threads);
  WeightMatrix<Scalar> current =
      init_weights<Scalar>(graph.vertex_count(), schema, known);
  WeightMatrix<Scalar> next;

  PropagationResult<Scalar> result;
  for (int t = 1; t <= config.max_iterations; ++t) {
    result.final_residual = propagator.step(current, next);
    result.iterations_run = t;
    current.swap(next);
    if (observer) observer(t, current);
    if (result.final_residual <= Scalar(config.epsilon)) break;
  }

  if (current.rows() > 0) result.sink = compute_sink(current);
  for (const auto& [v, c] : known) {
    result.reestimated_known.emplace(v, propagator.neighborhood_mean(current, v));
  }
  result.final_weights = std::move(current);
  return result;
}

template <typename Scalar = double>
PropagationResult<Scalar> run(const LabeledGraph& labeled,
                              std::string_view attribute,
                              const PropagationConfig& config,
                              const IterationObserver<Scalar>& observer = {}) {
  const std::size_t a = labeled.attribute_index(attribute);
  return run<Scalar>(labeled.graph, labeled.schemas[a], labeled.known[a],
                     config, observer);
}

}  // namespace mccsplat

#endif  // MCCSPLAT_PROPAGATION_HPP_
