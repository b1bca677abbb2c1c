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

#ifndef TRIAGEKIT_ANALYSIS_MANTEL_HPP_
#define TRIAGEKIT_ANALYSIS_MANTEL_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "triagekit/featurize/feature_table.hpp"
#include "triagekit/model/matrix.hpp"

namespace triagekit {

// Symmetric n x n matrix with a zero diagonal and non-negative entries.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  // Throws DataError unless the invariants hold (symmetry within 1e-9).
  DistanceMatrix(std::size_t n, std::vector<double> values);

  std::size_t n() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

DistanceMatrix PairwiseEuclidean(const Matrix& x);
DistanceMatrix PairwiseEuclidean(const FeatureTable& x);

struct MantelResult {
  double r = 0.0;
  double p = 1.0;
  std::size_t n_permutations = 0;
};

// Pearson correlation of the strict upper triangles. Throws DataError when the
// sizes differ, n < 3, or either triangle is constant.
double MantelR(const DistanceMatrix& a, const DistanceMatrix& b);

// Two-sided permutation test. Trial t relabels the rows and columns of `b`
// with a permutation drawn from stream (seed, "mantel", t);
// p = (#{|r_t| >= |r|} + 1) / (n_perm + 1).
MantelResult Mantel(const DistanceMatrix& a, const DistanceMatrix& b,
                    std::size_t n_perm = 999, std::uint64_t seed = 0,
                    int threads = 1);

// Same statistic for one explicit relabeling of `b`.
double MantelRPermuted(const DistanceMatrix& a, const DistanceMatrix& b,
                       std::span<const std::size_t> perm);

// Pairwise tests between named feature spaces over the same posts.
struct MantelGrid {
  std::vector<std::string> names;
  std::vector<std::vector<MantelResult>> cells;  // symmetric; diagonal r = 1
};

MantelGrid ComputeMantelGrid(const std::vector<std::string>& names,
                             const std::vector<DistanceMatrix>& spaces,
                             std::size_t n_perm = 999, std::uint64_t seed = 0,
                             int threads = 1);

// Symmetric TSV: header "space" then names; each cell "r" with the p-value in
// a second matrix block below a "#p" line.
std::string SerializeMantelGrid(const MantelGrid& grid);

}  // namespace triagekit

#endif  // TRIAGEKIT_ANALYSIS_MANTEL_HPP_
