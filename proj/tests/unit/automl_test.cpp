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

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "triagekit/automl/search.hpp"
#include "triagekit/common/error.hpp"
#include "triagekit/common/rng.hpp"
#include "triagekit/corpus/synthetic.hpp"

namespace triagekit {
namespace {

struct Data {
  FeatureTable table;
  std::vector<std::string> y;
};

Data MakeData(std::size_t n, std::uint64_t seed) {
  const std::vector<std::string> tags = {"allClear", "underserved",
                                         "currentAcuteDistress", "crisis"};
  Rng rng(seed);
  std::vector<ColumnDescriptor> cols;
  for (int j = 0; j < 6; ++j) cols.push_back({"f", "c" + std::to_string(j), Aggregation::kPost});
  std::vector<std::string> ids;
  std::vector<double> values;
  Data d;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t c = r % 4;
    ids.push_back("r" + std::to_string(r));
    d.y.push_back(tags[c]);
    for (int j = 0; j < 6; ++j) {
      values.push_back(rng.Uniform() + (j == 0 ? static_cast<double>(c) : 0.0));
    }
  }
  d.table = FeatureTable(ids, cols, values);
  return d;
}

TEST(Genome, RandomMutateCrossoverStayValid) {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const PipelineSpec a = RandomGenome(rng, 30, 4);
    const PipelineSpec b = RandomGenome(rng, 30, 4);
    for (const PipelineSpec& g : {a, Mutate(a, rng, 30, 4), Crossover(a, b, rng, 4)}) {
      EXPECT_LE(g.size(), 4u);
      EXPECT_NO_THROW(ValidateComponents(g.components()));
      EXPECT_EQ(PipelineSpec::Parse(g.ToString()), g);
    }
  }
}

TEST(Genome, MutationChangesGenomeWhenPossible) {
  Rng rng(1);
  const PipelineSpec g = PipelineSpec::Parse("scale()|knn(5)");
  int changed = 0;
  for (int i = 0; i < 50; ++i) changed += Mutate(g, rng, 10, 5) != g;
  EXPECT_EQ(changed, 50);
  // A lone majority classifier under max_components 1 can only be replaced.
  const PipelineSpec m = PipelineSpec::Parse("majority");
  for (int i = 0; i < 20; ++i) EXPECT_EQ(Mutate(m, rng, 10, 1).size(), 1u);
}

TEST(Ranking, PenalizedThenSizeThenText) {
  FitnessRecord a{PipelineSpec::Parse("knn(1)"), 0.5, 0, 1, 0.5};
  FitnessRecord b{PipelineSpec::Parse("scale()|knn(1)"), 0.51, 0, 2, 0.5};
  FitnessRecord c{PipelineSpec::Parse("knn(2)"), 0.5, 0, 1, 0.5};
  FitnessRecord d{PipelineSpec::Parse("knn(3)"), 0.6, 0, 1, 0.6};
  EXPECT_TRUE(RanksBefore(d, a));
  EXPECT_TRUE(RanksBefore(a, b));
  EXPECT_TRUE(RanksBefore(a, c));
  EXPECT_FALSE(RanksBefore(a, a));
}

TEST(Evaluator, CachesByCanonicalText) {
  const Data d = MakeData(80, 1);
  GenomeEvaluator ev(Matrix::FromTable(d.table), d.y, DefaultLabelMap(), CVPlan{3, 1, 2},
                     60.0, 0.01);
  const FitnessRecord r1 = ev.Evaluate(PipelineSpec::Parse("scale()|knn(3)"));
  const FitnessRecord r2 = ev.Evaluate(PipelineSpec::Parse(" scale() | knn(3) "));
  EXPECT_EQ(ev.evaluations(), 1u);
  EXPECT_EQ(r1.mean_score, r2.mean_score);
  EXPECT_NEAR(r1.penalized, r1.mean_score - 0.01, 1e-15);
  EXPECT_TRUE(ev.Cached(PipelineSpec::Parse("scale()|knn(3)")));
  EXPECT_FALSE(ev.Cached(PipelineSpec::Parse("knn(3)")));
}

TEST(Evaluator, TimeoutIsPenalized) {
  const Data d = MakeData(80, 1);
  GenomeEvaluator ev(Matrix::FromTable(d.table), d.y, DefaultLabelMap(), CVPlan{3, 1, 2},
                     60.0, 0.01);
  const FitnessRecord r =
      ev.Evaluate(PipelineSpec::Parse("knn(3)"), std::chrono::steady_clock::now());
  EXPECT_TRUE(r.timed_out);
  EXPECT_TRUE(std::isinf(r.penalized));
  EXPECT_LT(r.penalized, 0.0);
}

TEST(Evaluator, ClampedKWarningIsRecorded) {
  const Data d = MakeData(40, 2);
  GenomeEvaluator ev(Matrix::FromTable(d.table), d.y, DefaultLabelMap(), CVPlan{2, 1, 0},
                     60.0, 0.0);
  const FitnessRecord r = ev.Evaluate(PipelineSpec::Parse("knn(500)"));
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("clamped"), std::string::npos);
}

SearchConfig SmallConfig(std::uint64_t seed) {
  SearchConfig c;
  c.population_size = 10;
  c.generations = 3;
  c.cv_folds = 3;
  c.seed = seed;
  c.total_budget = 300;
  return c;
}

TEST(Search, DeterministicAndBeatsMajority) {
  const Data d = MakeData(120, 3);
  const SearchResult a = Search(SmallConfig(4), d.table, d.y, DefaultLabelMap());
  SearchConfig threaded = SmallConfig(4);
  threaded.threads = 4;
  const SearchResult b = Search(threaded, d.table, d.y, DefaultLabelMap());
  ASSERT_EQ(a.leaderboard.size(), b.leaderboard.size());
  for (std::size_t i = 0; i < a.leaderboard.size(); ++i) {
    EXPECT_EQ(a.leaderboard[i].genome, b.leaderboard[i].genome);
    EXPECT_EQ(a.leaderboard[i].penalized, b.leaderboard[i].penalized);
  }
  double majority = 0.0;
  for (const auto& r : a.leaderboard) {
    if (r.genome.ToString() == "majority()") majority = r.penalized;
  }
  EXPECT_GE(a.leaderboard.front().penalized, majority);
  EXPECT_EQ(a.best_per_generation.size(), 3u);
  for (std::size_t g = 1; g < a.best_per_generation.size(); ++g) {
    EXPECT_GE(a.best_per_generation[g], a.best_per_generation[g - 1]);
  }
  EXPECT_EQ(a.best.spec(), a.leaderboard.front().genome);
}

TEST(Search, LeaderboardRoundTrip) {
  const Data d = MakeData(60, 3);
  SearchConfig c = SmallConfig(1);
  c.generations = 1;
  const SearchResult r = Search(c, d.table, d.y, DefaultLabelMap());
  const auto back = ParseLeaderboard(SerializeLeaderboard(r.leaderboard));
  ASSERT_EQ(back.size(), r.leaderboard.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].genome, r.leaderboard[i].genome);
    EXPECT_EQ(back[i].mean_score, r.leaderboard[i].mean_score);
  }
}

TEST(Search, ValidatesConfig) {
  SearchConfig c;
  c.population_size = 1;
  EXPECT_THROW(ValidateSearchConfig(c), UsageError);
  c = SearchConfig{};
  c.mutation_rate = 1.5;
  EXPECT_THROW(ValidateSearchConfig(c), UsageError);
  c = SearchConfig{};
  c.cv_folds = 1;
  EXPECT_THROW(ValidateSearchConfig(c), UsageError);
  EXPECT_NO_THROW(ValidateSearchConfig(SearchConfig{}));
}

}  // namespace
}  // namespace triagekit
