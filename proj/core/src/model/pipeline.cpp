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

#include "triagekit/model/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <limits>
#include <numeric>
#include <set>

#include "triagekit/common/error.hpp"
#include "triagekit/common/parallel.hpp"
#include "triagekit/model/anova.hpp"

namespace triagekit {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

ScaleState FitScale(const Matrix& x) {
  ScaleState s;
  s.means.assign(x.cols, 0.0);
  s.scales.assign(x.cols, 1.0);
  if (x.rows == 0) return s;
  for (std::size_t c = 0; c < x.cols; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < x.rows; ++r) sum += x(r, c);
    const double mean = sum / static_cast<double>(x.rows);
    double ss = 0.0;
    for (std::size_t r = 0; r < x.rows; ++r) ss += (x(r, c) - mean) * (x(r, c) - mean);
    const double sd = std::sqrt(ss / static_cast<double>(x.rows));
    s.means[c] = mean;
    s.scales[c] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

Matrix ApplyStep(const StepState& step, const Matrix& x) {
  return std::visit(
      Overloaded{
          [&](const ScaleState& s) {
            Matrix out = x;
            for (std::size_t r = 0; r < x.rows; ++r) {
              for (std::size_t c = 0; c < x.cols; ++c) {
                out(r, c) = (x(r, c) - s.means[c]) / s.scales[c];
              }
            }
            return out;
          },
          [&](const BinarizeState& s) {
            Matrix out = x;
            for (double& v : out.data) v = v > s.threshold ? 1.0 : 0.0;
            return out;
          },
          [&](const SelectState& s) {
            Matrix out(x.rows, s.indices.size());
            for (std::size_t r = 0; r < x.rows; ++r) {
              for (std::size_t j = 0; j < s.indices.size(); ++j) {
                out(r, j) = x(r, s.indices[j]);
              }
            }
            return out;
          },
      },
      step);
}

// Objective of one one-vs-rest problem; labels are +1/-1.
double LinearLoss(const Matrix& x, std::span<const double> sign,
                  std::span<const double> w, bool logistic, double reg) {
  const std::size_t d = x.cols;
  double loss = 0.0;
  for (std::size_t r = 0; r < x.rows; ++r) {
    double score = w[d];
    for (std::size_t c = 0; c < d; ++c) score += w[c] * x(r, c);
    const double margin = sign[r] * score;
    if (logistic) {
      loss += margin > 0 ? std::log1p(std::exp(-margin))
                         : -margin + std::log1p(std::exp(margin));
    } else {
      const double h = std::max(0.0, 1.0 - margin);
      loss += h * h;
    }
  }
  loss /= static_cast<double>(x.rows);
  double norm = 0.0;
  for (std::size_t c = 0; c < d; ++c) norm += w[c] * w[c];
  return loss + 0.5 * reg * norm;
}

// Full-batch gradient descent with step 1/L, where L bounds the Lipschitz
// constant of the gradient. This makes the objective non-increasing per pass.
LinearState FitLinear(const Matrix& x, std::span<const int> codes,
                      std::size_t n_codes, bool logistic, double reg_param,
                      std::size_t epochs) {
  const std::size_t d = x.cols;
  const std::size_t n = x.rows;
  // Regularization strength: logistic uses l2 directly, the SVM 1/(C n).
  const double reg = logistic ? reg_param : 1.0 / (reg_param * static_cast<double>(n));
  double mean_sq_norm = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double s = 1.0;  // bias feature
    for (std::size_t c = 0; c < d; ++c) s += x(r, c) * x(r, c);
    mean_sq_norm += s;
  }
  mean_sq_norm /= static_cast<double>(n);
  const double lipschitz = (logistic ? 0.25 : 2.0) * mean_sq_norm + reg;
  const double step = 1.0 / lipschitz;

  LinearState state;
  state.logistic = logistic;
  state.weights.assign(n_codes, std::vector<double>(d + 1, 0.0));
  state.loss_history.resize(n_codes);
  std::vector<double> sign(n);
  std::vector<double> grad(d + 1);
  for (std::size_t k = 0; k < n_codes; ++k) {
    for (std::size_t r = 0; r < n; ++r) {
      sign[r] = codes[r] == static_cast<int>(k) ? 1.0 : -1.0;
    }
    auto& w = state.weights[k];
    auto& history = state.loss_history[k];
    history.push_back(LinearLoss(x, sign, w, logistic, reg));
    for (std::size_t e = 0; e < epochs; ++e) {
      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t r = 0; r < n; ++r) {
        double score = w[d];
        for (std::size_t c = 0; c < d; ++c) score += w[c] * x(r, c);
        const double margin = sign[r] * score;
        double coef;
        if (logistic) {
          coef = -sign[r] / (1.0 + std::exp(margin));
        } else {
          coef = margin < 1.0 ? -2.0 * sign[r] * (1.0 - margin) : 0.0;
        }
        if (coef == 0.0) continue;
        for (std::size_t c = 0; c < d; ++c) grad[c] += coef * x(r, c);
        grad[d] += coef;
      }
      for (std::size_t c = 0; c <= d; ++c) grad[c] /= static_cast<double>(n);
      for (std::size_t c = 0; c < d; ++c) grad[c] += reg * w[c];
      for (std::size_t c = 0; c <= d; ++c) w[c] -= step * grad[c];
      history.push_back(LinearLoss(x, sign, w, logistic, reg));
    }
  }
  return state;
}

std::vector<int> KnnPredict(const KnnState& s, const Matrix& x,
                            const FittedPipeline& fp,
                            int (*prefer)(const FittedPipeline&, std::span<const int>),
                            int threads) {
  std::vector<int> out(x.rows);
  const std::size_t n = s.train.rows;
  const std::size_t k = std::min(s.k, n);
  ParallelFor(x.rows, threads, [&](std::size_t q) {
    std::vector<std::pair<double, std::size_t>> dist(n);
    const auto query = x.row(q);
    for (std::size_t i = 0; i < n; ++i) {
      const auto t = s.train.row(i);
      double d = 0.0;
      for (std::size_t c = 0; c < x.cols; ++c) {
        const double diff = query[c] - t[c];
        d += diff * diff;
      }
      dist[i] = {d, i};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k),
                      dist.end());
    std::map<int, std::size_t> votes;
    for (std::size_t j = 0; j < k; ++j) ++votes[s.codes[dist[j].second]];
    std::size_t best = 0;
    for (const auto& [code, count] : votes) best = std::max(best, count);
    std::vector<int> tied;
    for (const auto& [code, count] : votes) {
      if (count == best) tied.push_back(code);
    }
    out[q] = prefer(fp, tied);
  });
  return out;
}

}  // namespace

int FittedPipeline::PreferredOf(std::span<const int> candidates) const {
  int best = candidates.front();
  for (int c : candidates) {
    if (preference_[static_cast<std::size_t>(c)] <
        preference_[static_cast<std::size_t>(best)]) {
      best = c;
    }
  }
  return best;
}

void FittedPipeline::Finalize() {
  coarse_of_code_.clear();
  for (const auto& tag : codebook_) coarse_of_code_.push_back(label_map_.Map(tag));
  std::vector<int> order(codebook_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto ua = static_cast<std::size_t>(a);
    const auto ub = static_cast<std::size_t>(b);
    if (class_counts_[ua] != class_counts_[ub]) {
      return class_counts_[ua] > class_counts_[ub];
    }
    if (coarse_of_code_[ua] != coarse_of_code_[ub]) {
      return Ordinal(coarse_of_code_[ua]) < Ordinal(coarse_of_code_[ub]);
    }
    return codebook_[ua] < codebook_[ub];
  });
  preference_.assign(codebook_.size(), 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    preference_[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos);
  }
}

std::vector<std::size_t> FittedPipeline::UsedInputColumns() const {
  std::vector<std::size_t> used(input_width_);
  std::iota(used.begin(), used.end(), 0);
  for (const auto& step : steps_) {
    if (const auto* s = std::get_if<SelectState>(&step)) {
      std::vector<std::size_t> next;
      next.reserve(s->indices.size());
      for (std::size_t idx : s->indices) next.push_back(used[idx]);
      used = std::move(next);
    }
  }
  if (std::holds_alternative<MajorityState>(classifier_)) used.clear();
  std::sort(used.begin(), used.end());
  return used;
}

void FittedPipeline::CheckColumns(const FeatureTable& x) const {
  if (x.columns() == columns_) return;
  std::set<std::string> have;
  std::set<std::string> want;
  for (const auto& c : x.columns()) have.insert(c.Name());
  for (const auto& c : columns_) want.insert(c.Name());
  std::string missing;
  std::string extra;
  for (const auto& n : want) {
    if (have.count(n) == 0) missing += (missing.empty() ? "" : ", ") + n;
  }
  for (const auto& n : have) {
    if (want.count(n) == 0) extra += (extra.empty() ? "" : ", ") + n;
  }
  std::string msg = "feature columns do not match the trained pipeline";
  if (!missing.empty()) msg += "; missing: " + missing;
  if (!extra.empty()) msg += "; extra: " + extra;
  if (missing.empty() && extra.empty()) msg += "; columns are in a different order";
  throw DataError(msg);
}

Matrix FittedPipeline::Transform(const Matrix& x) const {
  if (x.cols != input_width_) {
    throw DataError("expected " + std::to_string(input_width_) +
                    " feature columns, got " + std::to_string(x.cols));
  }
  Matrix current = x;
  for (const auto& step : steps_) current = ApplyStep(step, current);
  return current;
}

std::vector<int> FittedPipeline::PredictCodes(const Matrix& x, int threads) const {
  if (x.rows == 0) return {};
  const Matrix z = Transform(x);
  return std::visit(
      Overloaded{
          [&](const KnnState& s) {
            return KnnPredict(
                s, z, *this,
                [](const FittedPipeline& fp, std::span<const int> c) {
                  return fp.PreferredOf(c);
                },
                threads);
          },
          [&](const LinearState& s) {
            std::vector<int> out(z.rows);
            const std::size_t d = z.cols;
            for (std::size_t r = 0; r < z.rows; ++r) {
              double best = -std::numeric_limits<double>::infinity();
              std::vector<int> tied;
              for (std::size_t k = 0; k < s.weights.size(); ++k) {
                double score = s.weights[k][d];
                for (std::size_t c = 0; c < d; ++c) score += s.weights[k][c] * z(r, c);
                if (score > best) {
                  best = score;
                  tied.assign(1, static_cast<int>(k));
                } else if (score == best) {
                  tied.push_back(static_cast<int>(k));
                }
              }
              out[r] = PreferredOf(tied);
            }
            return out;
          },
          [&](const MajorityState& s) { return std::vector<int>(z.rows, s.code); },
      },
      classifier_);
}

std::vector<std::string> FittedPipeline::Predict(const FeatureTable& x,
                                                 int threads) const {
  CheckColumns(x);
  std::vector<std::string> out;
  for (int code : PredictCodes(Matrix::FromTable(x), threads)) {
    out.push_back(codebook_[static_cast<std::size_t>(code)]);
  }
  return out;
}

std::vector<Coarse> FittedPipeline::PredictCoarse(const FeatureTable& x,
                                                  int threads) const {
  CheckColumns(x);
  std::vector<Coarse> out;
  for (int code : PredictCodes(Matrix::FromTable(x), threads)) {
    out.push_back(CoarseOf(code));
  }
  return out;
}

FittedPipeline FitMatrix(const PipelineSpec& spec, const Matrix& x,
                         std::span<const std::string> y,
                         const LabelMap& label_map, std::uint64_t seed) {
  ValidateComponents(spec.components());
  if (x.rows == 0) throw DataError("empty training set");
  if (x.rows != y.size()) {
    throw DataError("training matrix has " + std::to_string(x.rows) +
                    " rows but " + std::to_string(y.size()) + " labels");
  }
  for (const auto& tag : y) {
    if (!label_map.Contains(tag)) {
      throw DataError("training label '" + tag + "' is absent from the label map");
    }
  }

  FittedPipeline fp;
  fp.spec_ = spec;
  fp.label_map_ = label_map;
  fp.seed_ = seed;
  fp.input_width_ = x.cols;
  if (fp.columns_.empty()) {
    for (std::size_t c = 0; c < x.cols; ++c) {
      fp.columns_.push_back({"x", "c" + std::to_string(c), Aggregation::kPost});
    }
  }
  std::set<std::string> distinct(y.begin(), y.end());
  fp.codebook_.assign(distinct.begin(), distinct.end());
  std::vector<int> codes(y.size());
  fp.class_counts_.assign(fp.codebook_.size(), 0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto it = std::lower_bound(fp.codebook_.begin(), fp.codebook_.end(), y[i]);
    codes[i] = static_cast<int>(it - fp.codebook_.begin());
    ++fp.class_counts_[static_cast<std::size_t>(codes[i])];
  }
  fp.Finalize();

  Matrix current = x;
  for (const auto& component : spec.components()) {
    if (IsClassifier(component)) break;
    StepState state = std::visit(
        Overloaded{
            [&](const ScaleStep&) -> StepState { return FitScale(current); },
            [&](const BinarizeStep& b) -> StepState { return BinarizeState{b.threshold}; },
            [&](const SelectKAnovaStep& s) -> StepState {
              std::size_t k = s.k;
              if (k > current.cols) {
                fp.warnings_.push_back("select_k_anova(" + std::to_string(k) +
                                       ") clamped to " + std::to_string(current.cols) +
                                       " columns");
                k = current.cols;
              }
              if (k == current.cols || fp.codebook_.size() < 2) {
                // A single training class carries no F signal; keep the first k.
                SelectState all;
                all.indices.resize(k);
                std::iota(all.indices.begin(), all.indices.end(), 0);
                return all;
              }
              return SelectState{SelectTopK(AnovaFColumns(current, codes), k)};
            },
            [&](const auto&) -> StepState { throw std::logic_error("unreachable"); },
        },
        component);
    current = ApplyStep(state, current);
    fp.steps_.push_back(std::move(state));
  }

  fp.classifier_ = std::visit(
      Overloaded{
          [&](const KnnSpec& s) -> ClassifierState {
            if (s.k > current.rows) {
              fp.warnings_.push_back("knn(" + std::to_string(s.k) + ") clamped to " +
                                     std::to_string(current.rows) + " training rows");
            }
            return KnnState{std::min(s.k, current.rows), current, codes};
          },
          [&](const LinearSvmSpec& s) -> ClassifierState {
            return FitLinear(current, codes, fp.codebook_.size(), false, s.c, s.epochs);
          },
          [&](const LogisticSpec& s) -> ClassifierState {
            return FitLinear(current, codes, fp.codebook_.size(), true, s.l2, s.epochs);
          },
          [&](const MajoritySpec&) -> ClassifierState {
            std::vector<int> all(fp.codebook_.size());
            std::iota(all.begin(), all.end(), 0);
            return MajorityState{fp.PreferredOf(all)};
          },
          [&](const auto&) -> ClassifierState { throw std::logic_error("unreachable"); },
      },
      spec.classifier());
  return fp;
}

FittedPipeline Fit(const PipelineSpec& spec, const FeatureTable& x,
                   std::span<const std::string> y, const LabelMap& label_map,
                   std::uint64_t seed) {
  FittedPipeline fp = FitMatrix(spec, Matrix::FromTable(x), y, label_map, seed);
  fp.columns_ = x.columns();
  return fp;
}

}  // namespace triagekit
