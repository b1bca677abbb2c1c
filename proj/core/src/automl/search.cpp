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

#include "triagekit/automl/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>

#include "triagekit/common/error.hpp"
#include "triagekit/common/io.hpp"
#include "triagekit/common/numfmt.hpp"
#include "triagekit/common/parallel.hpp"
#include "triagekit/common/text.hpp"

namespace triagekit {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kTournament = 3;
constexpr int kMutationAttempts = 16;

constexpr std::size_t kKnnK[] = {1, 3, 5, 7, 11, 15, 21, 31};
constexpr std::size_t kSelectK[] = {5, 10, 20, 50, 100};
constexpr double kThresholds[] = {0.0, 0.25, 0.5};
constexpr double kSvmC[] = {0.01, 0.1, 1.0, 10.0};
constexpr double kL2[] = {0.0001, 0.001, 0.01, 0.1};
constexpr std::size_t kEpochs = 50;

template <typename T, std::size_t N>
T Pick(Rng& rng, const T (&pool)[N]) {
  return pool[rng.Below(N)];
}

Clock::time_point After(double seconds) {
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double>(seconds));
}

Component RandomPreprocessor(Rng& rng, std::size_t n_features) {
  switch (rng.Below(3)) {
    case 0:
      return ScaleStep{};
    case 1:
      return BinarizeStep{Pick(rng, kThresholds)};
    default:
      return SelectKAnovaStep{std::max<std::size_t>(
          1, std::min(n_features, Pick(rng, kSelectK)))};
  }
}

Component RandomClassifier(Rng& rng) {
  switch (rng.Below(4)) {
    case 0:
      return KnnSpec{Pick(rng, kKnnK)};
    case 1:
      return LinearSvmSpec{Pick(rng, kSvmC), kEpochs};
    case 2:
      return LogisticSpec{Pick(rng, kL2), kEpochs};
    default:
      return MajoritySpec{};
  }
}

std::size_t Jitter(Rng& rng, std::size_t value, std::size_t hi) {
  const std::size_t step = 1 + static_cast<std::size_t>(rng.Below(5));
  const std::size_t next = rng.Bernoulli(0.5) ? value + step : (value > step ? value - step : 1);
  return std::clamp<std::size_t>(next, 1, std::max<std::size_t>(hi, 1));
}

// Returns false when `c` has no hyperparameter.
bool JitterComponent(Component& c, Rng& rng, std::size_t n_features) {
  return std::visit(
      [&](auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, KnnSpec>) {
          s.k = Jitter(rng, s.k, std::numeric_limits<std::size_t>::max());
          return true;
        } else if constexpr (std::is_same_v<T, SelectKAnovaStep>) {
          s.k = Jitter(rng, s.k, n_features);
          return true;
        } else if constexpr (std::is_same_v<T, BinarizeStep>) {
          s.threshold += rng.Bernoulli(0.5) ? 0.25 : -0.25;
          return true;
        } else if constexpr (std::is_same_v<T, LinearSvmSpec>) {
          s.c *= rng.Bernoulli(0.5) ? 2.0 : 0.5;
          return true;
        } else if constexpr (std::is_same_v<T, LogisticSpec>) {
          s.l2 *= rng.Bernoulli(0.5) ? 2.0 : 0.5;
          return true;
        } else {
          return false;
        }
      },
      c);
}

bool IsValid(const std::vector<Component>& components, std::size_t max_components) {
  if (components.size() > max_components) return false;
  try {
    ValidateComponents(components);
  } catch (const UsageError&) {
    return false;
  }
  return true;
}

std::size_t Tournament(Rng& rng, const std::vector<FitnessRecord>& population) {
  std::size_t best = static_cast<std::size_t>(rng.Below(population.size()));
  for (std::size_t i = 1; i < kTournament; ++i) {
    const auto other = static_cast<std::size_t>(rng.Below(population.size()));
    if (RanksBefore(population[other], population[best])) best = other;
  }
  return best;
}

std::vector<PipelineSpec> BareClassifiers() {
  return {PipelineSpec({MajoritySpec{}}),
          PipelineSpec({KnnSpec{1}}),
          PipelineSpec({KnnSpec{5}}),
          PipelineSpec({KnnSpec{21}}),
          PipelineSpec({LogisticSpec{0.01, kEpochs}}),
          PipelineSpec({LinearSvmSpec{1.0, kEpochs}})};
}

}  // namespace

void ValidateSearchConfig(const SearchConfig& c) {
  if (c.population_size < 2) throw UsageError("automl population_size must be >= 2");
  if (!(c.per_candidate_timeout > 0.0)) throw UsageError("automl per_candidate_timeout must be > 0");
  if (!(c.total_budget > 0.0)) throw UsageError("automl total_budget must be > 0");
  if (c.generations < 1) throw UsageError("automl generations must be >= 1");
  if (!(c.parsimony >= 0.0)) throw UsageError("automl parsimony must be >= 0");
  if (c.mutation_rate < 0.0 || c.mutation_rate > 1.0) throw UsageError("automl mutation_rate must lie in [0, 1]");
  if (c.crossover_rate < 0.0 || c.crossover_rate > 1.0) throw UsageError("automl crossover_rate must lie in [0, 1]");
  if (c.max_components < 1) throw UsageError("automl max_components must be >= 1");
  if (c.cv_folds < 2) throw UsageError("automl cv_folds must be >= 2");
  if (c.cv_repeats < 1) throw UsageError("automl cv_repeats must be >= 1");
}

bool RanksBefore(const FitnessRecord& a, const FitnessRecord& b) {
  if (a.penalized != b.penalized) return a.penalized > b.penalized;
  if (a.components != b.components) return a.components < b.components;
  return a.genome.ToString() < b.genome.ToString();
}

GenomeEvaluator::GenomeEvaluator(Matrix x, std::vector<std::string> y,
                                 LabelMap label_map, CVPlan plan,
                                 double timeout_seconds, double parsimony)
    : x_(std::move(x)),
      y_(std::move(y)),
      label_map_(std::move(label_map)),
      plan_(plan),
      timeout_(timeout_seconds),
      parsimony_(parsimony) {}

FitnessRecord GenomeEvaluator::Evaluate(const PipelineSpec& genome, Deadline deadline) {
  const std::string key = genome.ToString();
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const auto start = Clock::now();
  Clock::time_point limit = After(timeout_);
  if (deadline && *deadline < limit) limit = *deadline;
  const CVResult cv = CrossValidate(genome, x_, y_, label_map_, plan_, 1, limit);

  FitnessRecord r;
  r.genome = genome;
  r.components = genome.size();
  r.mean_score = cv.mean;
  r.score_std = cv.std;
  r.timed_out = cv.timed_out;
  r.penalized = cv.timed_out
                    ? kNegInf
                    : cv.mean - parsimony_ * static_cast<double>(r.components - 1);
  r.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.warnings = cv.warnings;

  std::lock_guard<std::mutex> lock(mu_);
  ++evaluations_;
  return cache_.emplace(key, std::move(r)).first->second;
}

std::size_t GenomeEvaluator::evaluations() const {
  std::lock_guard<std::mutex> lock(mu_);
  return evaluations_;
}

bool GenomeEvaluator::Cached(const PipelineSpec& genome) const {
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.count(genome.ToString()) != 0;
}

PipelineSpec RandomGenome(Rng& rng, std::size_t n_features, std::size_t max_components) {
  const std::size_t max_pre = std::min<std::size_t>(2, max_components - 1);
  const auto n_pre = static_cast<std::size_t>(rng.Below(max_pre + 1));
  std::vector<Component> components;
  for (std::size_t i = 0; i < n_pre; ++i) components.push_back(RandomPreprocessor(rng, n_features));
  components.push_back(RandomClassifier(rng));
  return PipelineSpec(std::move(components));
}

PipelineSpec Mutate(const PipelineSpec& genome, Rng& rng, std::size_t n_features,
                    std::size_t max_components) {
  const auto& original = genome.components();
  for (int attempt = 0; attempt < kMutationAttempts; ++attempt) {
    std::vector<Component> c = original;
    const std::size_t n_pre = c.size() - 1;
    switch (rng.Below(4)) {
      case 0: {  // insert
        const auto at = static_cast<std::ptrdiff_t>(rng.Below(n_pre + 1));
        c.insert(c.begin() + at, RandomPreprocessor(rng, n_features));
        break;
      }
      case 1: {  // delete
        if (n_pre == 0) continue;
        c.erase(c.begin() + static_cast<std::ptrdiff_t>(rng.Below(n_pre)));
        break;
      }
      case 2: {  // replace
        const auto at = static_cast<std::size_t>(rng.Below(c.size()));
        c[at] = at == n_pre ? RandomClassifier(rng) : RandomPreprocessor(rng, n_features);
        break;
      }
      default: {  // jitter
        const auto at = static_cast<std::size_t>(rng.Below(c.size()));
        if (!JitterComponent(c[at], rng, n_features)) continue;
        break;
      }
    }
    if (c != original && IsValid(c, max_components)) return PipelineSpec(std::move(c));
  }
  return genome;
}

PipelineSpec Crossover(const PipelineSpec& a, const PipelineSpec& b, Rng& rng,
                       std::size_t max_components) {
  const auto& ca = a.components();
  const auto& cb = b.components();
  const std::size_t pre_a = ca.size() - 1;
  const std::size_t pre_b = cb.size() - 1;
  const auto cut_a = static_cast<std::size_t>(rng.Below(pre_a + 1));
  const auto cut_b = static_cast<std::size_t>(rng.Below(pre_b + 1));
  std::vector<Component> child(ca.begin(), ca.begin() + static_cast<std::ptrdiff_t>(cut_a));
  child.insert(child.end(), cb.begin() + static_cast<std::ptrdiff_t>(cut_b),
               cb.begin() + static_cast<std::ptrdiff_t>(pre_b));
  while (child.size() > max_components - 1) child.pop_back();
  child.push_back(rng.Bernoulli(0.5) ? ca.back() : cb.back());
  return PipelineSpec(std::move(child));
}

SearchResult Search(const SearchConfig& config, const FeatureTable& x,
                    std::span<const std::string> y_granular, const LabelMap& label_map) {
  ValidateSearchConfig(config);
  if (x.rows() != y_granular.size()) throw DataError("automl: rows and labels differ in length");
  const auto deadline = After(config.total_budget);
  const std::size_t m = x.cols();
  GenomeEvaluator evaluator(Matrix::FromTable(x),
                            std::vector<std::string>(y_granular.begin(), y_granular.end()),
                            label_map,
                            CVPlan{config.cv_folds, config.cv_repeats,
                                   DeriveSeed(config.seed, "automl-cv")},
                            config.per_candidate_timeout, config.parsimony);
  SearchResult result;

  // Evaluates `genomes` (parallel over genomes) and returns records in input
  // order. Genomes not reached before the deadline are dropped.
  auto evaluate_all = [&](const std::vector<PipelineSpec>& genomes) {
    std::vector<FitnessRecord> records(genomes.size());
    std::vector<char> done(genomes.size(), 0);
    ParallelFor(genomes.size(), config.threads, [&](std::size_t i) {
      if (!evaluator.Cached(genomes[i]) && Clock::now() >= deadline) return;
      records[i] = evaluator.Evaluate(genomes[i], deadline);
      done[i] = 1;
    });
    std::vector<FitnessRecord> out;
    for (std::size_t i = 0; i < genomes.size(); ++i) {
      if (done[i]) out.push_back(std::move(records[i]));
    }
    return out;
  };

  // Initial population: distinct genomes, bare classifiers first.
  Rng init(config.seed, "automl", 0);
  std::vector<PipelineSpec> genomes;
  std::set<std::string> seen;
  auto add = [&](PipelineSpec g) {
    if (genomes.size() < config.population_size && seen.insert(g.ToString()).second) {
      genomes.push_back(std::move(g));
    }
  };
  for (auto& g : BareClassifiers()) add(std::move(g));
  for (std::size_t tries = 0; genomes.size() < config.population_size &&
                              tries < 100 * config.population_size;
       ++tries) {
    add(RandomGenome(init, m, config.max_components));
  }

  std::map<std::string, FitnessRecord> board;
  std::vector<FitnessRecord> population = evaluate_all(genomes);
  for (std::size_t gen = 0;; ++gen) {
    for (const auto& r : population) board.emplace(r.genome.ToString(), r);
    const bool expired = Clock::now() >= deadline;
    if (population.empty() || (expired && population.size() < genomes.size())) {
      result.log.push_back("generation " + std::to_string(gen) +
                           ": budget expired after " + std::to_string(population.size()) +
                           " of " + std::to_string(genomes.size()) + " genomes");
      if (population.empty()) break;
    }
    std::sort(population.begin(), population.end(), RanksBefore);
    const double best_so_far =
        result.best_per_generation.empty()
            ? population.front().penalized
            : std::max(result.best_per_generation.back(), population.front().penalized);
    result.best_per_generation.push_back(best_so_far);
    result.log.push_back("generation " + std::to_string(gen) + ": best " +
                         population.front().genome.ToString() + " fitness " +
                         FormatDouble(population.front().penalized));
    if (gen + 1 >= config.generations || expired) break;

    Rng rng(config.seed, "automl", gen + 1);
    std::vector<PipelineSpec> children{population.front().genome};  // elitism
    while (children.size() < config.population_size) {
      PipelineSpec child = population[Tournament(rng, population)].genome;
      if (rng.Bernoulli(config.crossover_rate)) {
        child = Crossover(child, population[Tournament(rng, population)].genome, rng,
                          config.max_components);
      }
      if (rng.Bernoulli(config.mutation_rate)) {
        child = Mutate(child, rng, m, config.max_components);
      }
      children.push_back(std::move(child));
    }
    genomes = children;
    population = evaluate_all(genomes);
    // The elite is cached, so it always survives into the next generation.
  }

  if (board.empty()) {
    std::string log;
    for (const auto& line : result.log) log += "\n  " + line;
    throw RuntimeFailure("automl budget exhausted before any genome was evaluated" + log);
  }
  for (auto& [key, r] : board) result.leaderboard.push_back(std::move(r));
  std::sort(result.leaderboard.begin(), result.leaderboard.end(), RanksBefore);
  result.evaluations = evaluator.evaluations();
  result.best = Fit(result.leaderboard.front().genome, x, y_granular, label_map,
                    DeriveSeed(config.seed, "automl-refit"));
  return result;
}

std::string SerializeLeaderboard(std::span<const FitnessRecord> records) {
  std::string out =
      "genome\tmean_score\tstd\tcomponents\tpenalized\twall_seconds\ttimed_out\n";
  for (const auto& r : records) {
    out += r.genome.ToString() + "\t" + FormatDouble(r.mean_score) + "\t" +
           FormatDouble(r.score_std) + "\t" + std::to_string(r.components) + "\t" +
           FormatDouble(r.penalized) + "\t" + FormatDouble(r.wall_seconds) + "\t" +
           (r.timed_out ? "1" : "0") + "\n";
  }
  return out;
}

std::vector<FitnessRecord> ParseLeaderboard(std::string_view content) {
  const auto lines = SplitLines(content);
  if (lines.empty() || !StartsWith(lines[0], "genome\t")) {
    throw DataError("leaderboard lacks its header");
  }
  std::vector<FitnessRecord> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = SplitOn(lines[i], '\t');
    auto fail = [&](const std::string& what) {
      return DataError("leaderboard line " + std::to_string(i + 1) + ": " + what);
    };
    if (f.size() != 7) throw fail("expected 7 fields");
    FitnessRecord r;
    try {
      r.genome = PipelineSpec::Parse(f[0]);
    } catch (const UsageError& e) {
      throw fail(e.what());
    }
    const auto mean = ParseDouble(f[1]);
    const auto sd = ParseDouble(f[2]);
    const auto comps = ParseInt(f[3]);
    const auto pen = ParseDouble(f[4]);
    const auto wall = ParseDouble(f[5]);
    if (!mean || !sd || !comps || !pen || !wall || (f[6] != "0" && f[6] != "1")) {
      throw fail("bad value");
    }
    r.mean_score = *mean;
    r.score_std = *sd;
    r.components = static_cast<std::size_t>(*comps);
    r.penalized = *pen;
    r.wall_seconds = *wall;
    r.timed_out = f[6] == "1";
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace triagekit
