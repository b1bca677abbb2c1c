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

#include <benchmark/benchmark.h>

#include <memory>
#include <string>
#include <vector>

#include "triagekit/analysis/mantel.hpp"
#include "triagekit/common/rng.hpp"
#include "triagekit/corpus/synthetic.hpp"
#include "triagekit/eval/baseline.hpp"
#include "triagekit/eval/cv.hpp"
#include "triagekit/featurize/featurizer.hpp"
#include "triagekit/featurize/vader.hpp"
#include "triagekit/model/pipeline.hpp"

namespace triagekit {
namespace {

const ValenceLexicon& Lexicon() {
  static const ValenceLexicon lex =
      ValenceLexicon::Load(std::string(TRIAGEKIT_BENCH_DATA) + "/vader_lexicon.txt");
  return lex;
}

struct Problem {
  Matrix x;
  std::vector<std::string> y;
};

Problem RandomProblem(std::size_t n, std::size_t m, std::uint64_t seed) {
  static const std::vector<std::string> tags = {"allClear", "underserved",
                                                "currentAcuteDistress", "crisis"};
  Rng rng(seed);
  Problem p{Matrix(n, m), {}};
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t c = rng.Below(tags.size());
    p.y.push_back(tags[c]);
    for (std::size_t j = 0; j < m; ++j) {
      p.x(r, j) = rng.Uniform() - 0.5 + (j < 4 ? 0.2 * static_cast<double>(c) : 0.0);
    }
  }
  return p;
}

void BM_VaderSentence(benchmark::State& state) {
  const std::string text = "The movie was not very good, but the ending was GREAT!!";
  for (auto _ : state) benchmark::DoNotOptimize(VaderSentence(text, Lexicon()));
}
BENCHMARK(BM_VaderSentence);

void BM_StubEncode(benchmark::State& state) {
  const auto enc = MakeStubExtractor("stub", static_cast<std::size_t>(state.range(0)), 1);
  const std::string text = "i have been feeling stressed about exams lately";
  for (auto _ : state) benchmark::DoNotOptimize(enc.encode(text));
}
BENCHMARK(BM_StubEncode)->Arg(128)->Arg(768);

void BM_FeaturizeSynthetic(benchmark::State& state) {
  SyntheticOptions opts;
  opts.n = static_cast<std::size_t>(state.range(0));
  const Corpus corpus = GenerateSynthetic(opts);
  Featurizer f;
  f.Add(VaderExtractor{"vader", std::make_shared<ValenceLexicon>(Lexicon())});
  f.Add(MakeStubExtractor("stub", 128, 1));
  for (auto _ : state) benchmark::DoNotOptimize(f.Build(corpus));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FeaturizeSynthetic)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ReferencePredict(benchmark::State& state) {
  const Problem train = RandomProblem(1000, 396, 1);
  const Problem query = RandomProblem(200, 396, 2);
  const FittedPipeline model =
      FitMatrix(ReferencePipeline(396), train.x, train.y, DefaultLabelMap());
  for (auto _ : state) benchmark::DoNotOptimize(model.PredictCodes(query.x));
  state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_ReferencePredict)->Unit(benchmark::kMillisecond);

void BM_CrossValidate(benchmark::State& state) {
  const Problem p = RandomProblem(800, 60, 3);
  const CVPlan plan{10, 1, 0};
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(CrossValidate(ReferencePipeline(60), p.x, p.y,
                                           DefaultLabelMap(), plan, threads));
  }
}
BENCHMARK(BM_CrossValidate)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_RandomBaseline(benchmark::State& state) {
  const std::vector<std::size_t> counts = {32, 36, 85, 26};
  const auto y = LabelsFromCounts(counts);
  for (auto _ : state) benchmark::DoNotOptimize(RandomBaseline(y, 10000));
}
BENCHMARK(BM_RandomBaseline)->Unit(benchmark::kMillisecond);

void BM_Mantel(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Problem a = RandomProblem(n, 8, 4);
  const Problem b = RandomProblem(n, 8, 5);
  const DistanceMatrix da = PairwiseEuclidean(a.x);
  const DistanceMatrix db = PairwiseEuclidean(b.x);
  for (auto _ : state) benchmark::DoNotOptimize(Mantel(da, db, 999, 0, 1));
}
BENCHMARK(BM_Mantel)->Arg(179)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace triagekit

BENCHMARK_MAIN();
