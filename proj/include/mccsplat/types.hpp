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

#ifndef MCCSPLAT_TYPES_HPP_
#define MCCSPLAT_TYPES_HPP_

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace mccsplat {

using Index = Eigen::Index;

// One row per vertex, one column per class plus the trailing unknown column.
template <typename Scalar>
using WeightMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using WeightVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using WeightMatrixd = WeightMatrix<double>;
using WeightVectord = WeightVector<double>;

// Vertex index -> class index (< class_count). The key set is V^K.
using KnownLabels = std::map<Index, std::size_t>;

// One sensitive attribute. The unknown class is implicit and sits at
// index class_count().
class AttributeSchema {
 public:
  AttributeSchema() = default;

  // Throws ConfigError unless there are >= 2 unique classes, none of them
  // named "unknown".
  AttributeSchema(std::string name, std::vector<std::string> classes);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& classes() const { return classes_; }
  std::size_t class_count() const { return classes_.size(); }
  std::size_t unknown_index() const { return classes_.size(); }
  // Width of a weight vector.
  Index width() const { return static_cast<Index>(classes_.size()) + 1; }

  std::optional<std::size_t> class_index(std::string_view class_name) const;
  const std::string& class_name(std::size_t index) const {
    return classes_.at(index);
  }

 private:
  std::string name_;
  std::vector<std::string> classes_;
};

// True when every component lies in [0,1] and the components sum to 1.
template <typename Derived>
bool is_weight_vector(const Eigen::MatrixBase<Derived>& w,
                      double tolerance = 1e-9) {
  if (w.size() == 0) return false;
  if ((w.array() < 0).any() || (w.array() > 1).any()) return false;
  return std::abs(static_cast<double>(w.sum()) - 1.0) <= tolerance;
}

template <typename Scalar>
WeightVector<Scalar> unit_vector(Index width, Index hot) {
  WeightVector<Scalar> v = WeightVector<Scalar>::Zero(width);
  v(hot) = Scalar(1);
  return v;
}

}  // namespace mccsplat

#endif  // MCCSPLAT_TYPES_HPP_
