// Copyright 2026 The TriageKit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRIAGEKIT_MODEL_MATRIX_HPP_
#define TRIAGEKIT_MODEL_MATRIX_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "triagekit/featurize/feature_table.hpp"

namespace triagekit {

// Row-major dense matrix used inside fitted pipelines.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  static Matrix FromTable(const FeatureTable& table) {
    Matrix m;
    m.rows = table.rows();
    m.cols = table.cols();
    m.data = table.values();
    return m;
  }

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::span<const double> row(std::size_t r) const {
    return {data.data() + r * cols, cols};
  }
};

}  // namespace triagekit

#endif  // TRIAGEKIT_MODEL_MATRIX_HPP_
