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

#ifndef TRIAGEKIT_FEATURIZE_FEATURE_TABLE_HPP_
#define TRIAGEKIT_FEATURIZE_FEATURE_TABLE_HPP_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace triagekit {

enum class Aggregation { kMean, kMax, kMin, kPost };

std::string_view AggregationName(Aggregation a) noexcept;
std::optional<Aggregation> ParseAggregation(std::string_view name) noexcept;

// Provenance of one feature column.
struct ColumnDescriptor {
  std::string extractor;
  std::string base_feature;
  Aggregation aggregation = Aggregation::kPost;

  // "extractor/base_feature/aggregation"
  std::string Name() const;
  static std::optional<ColumnDescriptor> FromName(std::string_view name);

  friend bool operator==(const ColumnDescriptor&,
                         const ColumnDescriptor&) = default;
};

// Dense N x M post-level feature matrix. Rows follow a stated post-id order.
// Values are finite; descriptors are unique.
class FeatureTable {
 public:
  FeatureTable() = default;
  // Throws DataError on non-finite values, duplicate descriptors, or shape
  // mismatches.
  FeatureTable(std::vector<std::string> row_ids,
               std::vector<ColumnDescriptor> columns, std::vector<double> values,
               std::vector<bool> degenerate = {});

  std::size_t rows() const { return row_ids_.size(); }
  std::size_t cols() const { return columns_.size(); }

  const std::vector<std::string>& row_ids() const { return row_ids_; }
  const std::vector<ColumnDescriptor>& columns() const { return columns_; }
  const std::vector<double>& values() const { return values_; }

  double at(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols(), cols()};
  }
  std::vector<double> column(std::size_t c) const;

  // Posts with zero sentences after cleaning.
  bool degenerate(std::size_t r) const { return degenerate_[r]; }

  std::optional<std::size_t> RowOf(std::string_view id) const;
  // Rows in the order of `ids`; throws DataError for unknown ids.
  FeatureTable SelectRows(std::span<const std::string> ids) const;
  // Side-by-side concatenation; row ids must match.
  static FeatureTable Concat(const FeatureTable& left, const FeatureTable& right);

  // Text form:
  //   #triagekit-features/1
  //   [#degenerate<TAB>id,id,...]
  //   post_id<TAB>name1<TAB>name2...
  //   id<TAB>v1<TAB>v2...
  std::string Serialize() const;
  static FeatureTable Parse(std::string_view content);
  static FeatureTable Load(const std::filesystem::path& path);
  void Save(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> row_ids_;
  std::vector<ColumnDescriptor> columns_;
  std::vector<double> values_;
  std::vector<bool> degenerate_;
};

struct AggregatedPost {
  std::vector<double> values;  // [means | maxes | mins], 3 * dim entries
  bool degenerate = false;     // no sentences; values are all zero
};

// Sentence-to-post aggregation. Throws DataError on ragged rows.
AggregatedPost AggregatePost(std::span<const std::vector<double>> block,
                             std::size_t dim);

}  // namespace triagekit

#endif  // TRIAGEKIT_FEATURIZE_FEATURE_TABLE_HPP_
