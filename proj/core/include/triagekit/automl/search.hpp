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

#ifndef TRIAGEKIT_AUTOML_SEARCH_HPP_
#define TRIAGEKIT_AUTOML_SEARCH_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "triagekit/common/rng.hpp"
#include "triagekit/corpus/labels.hpp"
#include "triagekit/eval/cv.hpp"
#include "triagekit/model/matrix.hpp"
#include "triagekit/model/pipeline.hpp"
#include "triagekit/model/pipeline_spec.hpp"

namespace triagekit {

struct SearchConfig {
  std::size_t population_size = 200;
  double per_candidate_timeout = 300.0;  // seconds
  double total_budget = 600.0;           // seconds
  std::size_t generations = 10;          // including the initial population
  double parsimony = 0.01;
  double mutation_rate = 0.9;
  double crossover_rate = 0.1;
  std::size_t max_components = 5;
  std::size_t cv_folds = 3;
  std::size_t cv_repeats = 1;
  std::uint64_t seed = 0;
  int threads = 1;
};

// Throws UsageError when an invariant does not hold.
void ValidateSearchConfig(const SearchConfig& config);

struct FitnessRecord {
  PipelineSpec genome;
  double mean_score = 0.0;
  double score_std = 0.0;
  std::size_t components = 0;
  double penalized = 0.0;  // mean_score - parsimony * (components - 1)
  double wall_seconds = 0.0;
  bool timed_out = false;
  std::vector<std::string> warnings;
};

// Leaderboard order: penalized fitness descending, then fewer components,
// then canonical genome text.
bool RanksBefore(const FitnessRecord& a, const FitnessRecord& b);

// Scores genomes by repeated stratified CV and memoizes them by canonical
// text. Thread-safe.
class GenomeEvaluator {
 public:
  GenomeEvaluator(Matrix x, std::vector<std::string> y, LabelMap label_map,
                  CVPlan plan, double timeout_seconds, double parsimony);

  // A genome that runs past `timeout_seconds` or `deadline` is scored -inf.
  FitnessRecord Evaluate(const PipelineSpec& genome, Deadline deadline = std::nullopt);

  // Genomes actually cross-validated (cache misses).
  std::size_t evaluations() const;
  bool Cached(const PipelineSpec& genome) const;

 private:
  Matrix x_;
  std::vector<std::string> y_;
  LabelMap label_map_;
  CVPlan plan_;
  double timeout_;
  double parsimony_;
  mutable std::mutex mu_;
  std::map<std::string, FitnessRecord> cache_;
  std::size_t evaluations_ = 0;
};

// Valid random genome of at most `max_components` components.
PipelineSpec RandomGenome(Rng& rng, std::size_t n_features, std::size_t max_components);

// One of: insert a preprocessor, delete a preprocessor, replace a component
// with one of the same kind, jitter one hyperparameter. Retries a bounded
// number of times for a valid, different genome and otherwise returns the
// input unchanged.
PipelineSpec Mutate(const PipelineSpec& genome, Rng& rng, std::size_t n_features,
                    std::size_t max_components);

// Preprocessor prefix of `a`, preprocessor suffix of `b`, and the classifier of
// one parent.
PipelineSpec Crossover(const PipelineSpec& a, const PipelineSpec& b, Rng& rng,
                       std::size_t max_components);

struct SearchResult {
  std::vector<FitnessRecord> leaderboard;
  FittedPipeline best;
  // Best penalized fitness after each completed generation.
  std::vector<double> best_per_generation;
  std::size_t evaluations = 0;
  std::vector<std::string> log;
};

// Evolutionary search: tournament selection of size 3, elitism of 1. The
// initial population starts with the bare classifiers (majority first) and
// is topped up with random genomes. The best genome is refit on all rows.
// Throws RuntimeFailure (carrying the log) when the budget expires before any
// genome completes.
SearchResult Search(const SearchConfig& config, const FeatureTable& x,
                    std::span<const std::string> y_granular, const LabelMap& label_map);

// TSV `genome<TAB>mean_score<TAB>std<TAB>components<TAB>penalized<TAB>wall_seconds<TAB>timed_out`.
std::string SerializeLeaderboard(std::span<const FitnessRecord> records);
std::vector<FitnessRecord> ParseLeaderboard(std::string_view content);

}  // namespace triagekit

#endif  // TRIAGEKIT_AUTOML_SEARCH_HPP_
