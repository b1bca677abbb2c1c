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

#include "triagekit/analysis/mantel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "triagekit/common/error.hpp"
#include "triagekit/common/numfmt.hpp"
#include "triagekit/common/parallel.hpp"
#include "triagekit/common/rng.hpp"

namespace triagekit {
namespace {

// Centered strict upper triangle of `d` and its Euclidean norm.
struct Centered {
  std::vector<double> values;  // row-major n x n, only i < j populated
  double norm = 0.0;
};

Centered Center(const DistanceMatrix& d) {
  const std::size_t n = d.n();
  const double pairs = static_cast<double>(n * (n - 1) / 2);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) sum += d(i, j);
  }
  const double mean = sum / pairs;
  Centered c;
  c.values.assign(n * n, 0.0);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = d(i, j) - mean;
      c.values[i * n + j] = v;
      c.values[j * n + i] = v;
      ss += v * v;
    }
  }
  c.norm = std::sqrt(ss);
  return c;
}

void CheckPair(const DistanceMatrix& a, const DistanceMatrix& b) {
  if (a.n() != b.n()) {
    throw DataError("distance matrices differ in size (" + std::to_string(a.n()) +
                    " vs " + std::to_string(b.n()) + ")");
  }
  if (a.n() < 3) throw DataError("the Mantel test needs at least 3 items");
}

double Correlate(const Centered& a, const Centered& b, std::size_t n,
                 std::span<const std::size_t> perm) {
  double dot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t pi = perm[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      dot += a.values[i * n + j] * b.values[pi * n + perm[j]];
    }
  }
  const double r = dot / (a.norm * b.norm);
  return std::clamp(r, -1.0, 1.0);
}

void RequireVariance(const Centered& c) {
  if (c.norm == 0.0) {
    throw DataError("correlation is undefined: a distance matrix has constant off-diagonal entries");
  }
}

}  // namespace

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  if (values_.size() != n_ * n_) throw DataError("distance matrix is not square");
  for (std::size_t i = 0; i < n_; ++i) {
    if (values_[i * n_ + i] != 0.0) throw DataError("distance matrix diagonal is not zero");
    for (std::size_t j = 0; j < n_; ++j) {
      const double v = values_[i * n_ + j];
      if (!std::isfinite(v) || v < 0.0) {
        throw DataError("distance matrix has a negative or non-finite entry");
      }
      if (std::abs(v - values_[j * n_ + i]) > 1e-9) {
        throw DataError("distance matrix is not symmetric");
      }
    }
  }
}

DistanceMatrix PairwiseEuclidean(const Matrix& x) {
  const std::size_t n = x.rows;
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = x.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto b = x.row(j);
      double ss = 0.0;
      for (std::size_t c = 0; c < x.cols; ++c) ss += (a[c] - b[c]) * (a[c] - b[c]);
      d[i * n + j] = d[j * n + i] = std::sqrt(ss);
    }
  }
  return DistanceMatrix(n, std::move(d));
}

DistanceMatrix PairwiseEuclidean(const FeatureTable& x) {
  return PairwiseEuclidean(Matrix::FromTable(x));
}

double MantelR(const DistanceMatrix& a, const DistanceMatrix& b) {
  std::vector<std::size_t> identity(a.n());
  std::iota(identity.begin(), identity.end(), 0);
  return MantelRPermuted(a, b, identity);
}

double MantelRPermuted(const DistanceMatrix& a, const DistanceMatrix& b,
                       std::span<const std::size_t> perm) {
  CheckPair(a, b);
  if (perm.size() != a.n()) throw DataError("permutation length differs from matrix size");
  const Centered ca = Center(a);
  const Centered cb = Center(b);
  RequireVariance(ca);
  RequireVariance(cb);
  return Correlate(ca, cb, a.n(), perm);
}

MantelResult Mantel(const DistanceMatrix& a, const DistanceMatrix& b,
                    std::size_t n_perm, std::uint64_t seed, int threads) {
  CheckPair(a, b);
  const std::size_t n = a.n();
  const Centered ca = Center(a);
  const Centered cb = Center(b);
  RequireVariance(ca);
  RequireVariance(cb);
  std::vector<std::size_t> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  MantelResult result;
  result.r = Correlate(ca, cb, n, identity);
  result.n_permutations = n_perm;
  std::vector<char> extreme(n_perm, 0);
  ParallelFor(n_perm, threads, [&](std::size_t t) {
    std::vector<std::size_t> perm = identity;
    Rng rng(seed, "mantel", t);
    rng.Shuffle(std::span<std::size_t>(perm));
    // Tolerance keeps permutations that reproduce the observed statistic
    // from being lost to summation-order rounding.
    extreme[t] = std::abs(Correlate(ca, cb, n, perm)) >= std::abs(result.r) - 1e-12;
  });
  const auto count = static_cast<double>(std::count(extreme.begin(), extreme.end(), 1));
  result.p = (count + 1.0) / (static_cast<double>(n_perm) + 1.0);
  return result;
}

MantelGrid ComputeMantelGrid(const std::vector<std::string>& names,
                             const std::vector<DistanceMatrix>& spaces,
                             std::size_t n_perm, std::uint64_t seed, int threads) {
  if (names.size() != spaces.size()) throw UsageError("one name per feature space");
  const std::size_t k = spaces.size();
  MantelGrid grid;
  grid.names = names;
  grid.cells.assign(k, std::vector<MantelResult>(k));
  for (std::size_t i = 0; i < k; ++i) {
    grid.cells[i][i] = MantelResult{1.0, 1.0 / (static_cast<double>(n_perm) + 1.0), n_perm};
    for (std::size_t j = i + 1; j < k; ++j) {
      grid.cells[i][j] = Mantel(spaces[i], spaces[j], n_perm,
                                DeriveSeed(seed, "mantel-grid", i * k + j), threads);
      grid.cells[j][i] = grid.cells[i][j];
    }
  }
  return grid;
}

std::string SerializeMantelGrid(const MantelGrid& grid) {
  std::string out;
  auto block = [&](auto value) {
    out += "space";
    for (const auto& n : grid.names) out += "\t" + n;
    out += "\n";
    for (std::size_t i = 0; i < grid.names.size(); ++i) {
      out += grid.names[i];
      for (std::size_t j = 0; j < grid.names.size(); ++j) {
        out += "\t" + FormatDouble(value(grid.cells[i][j]));
      }
      out += "\n";
    }
  };
  out += "#r\n";
  block([](const MantelResult& m) { return m.r; });
  out += "#p\n";
  block([](const MantelResult& m) { return m.p; });
  return out;
}

}  // namespace triagekit
