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

#include "triagekit/model/pipeline_spec.hpp"

#include <algorithm>
#include <cmath>

#include "triagekit/common/error.hpp"
#include "triagekit/common/numfmt.hpp"
#include "triagekit/common/text.hpp"

namespace triagekit {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t ParseCount(std::string_view text, std::string_view what) {
  const auto v = ParseInt(Trim(text));
  if (!v || *v < 1) {
    throw UsageError(std::string(what) + " must be an integer >= 1, got '" +
                     std::string(text) + "'");
  }
  return static_cast<std::size_t>(*v);
}

double ParseReal(std::string_view text, std::string_view what) {
  const auto v = ParseDouble(Trim(text));
  if (!v || !std::isfinite(*v)) {
    throw UsageError(std::string(what) + " must be a finite number, got '" +
                     std::string(text) + "'");
  }
  return *v;
}

void ExpectArgs(const std::vector<std::string_view>& args, std::size_t min,
                std::size_t max, std::string_view name) {
  if (args.size() < min || args.size() > max) {
    throw UsageError("component '" + std::string(name) + "' takes " +
                     (min == max ? std::to_string(min)
                                 : std::to_string(min) + ".." + std::to_string(max)) +
                     " argument(s), got " + std::to_string(args.size()));
  }
}

Component ParseComponent(std::string_view text) {
  text = Trim(text);
  // Argument-less components may drop the parentheses.
  if (text == "scale" || text == "majority") return ParseComponent(std::string(text) + "()");
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw UsageError("malformed pipeline component '" + std::string(text) + "'");
  }
  const std::string_view name = Trim(text.substr(0, open));
  const std::string_view inner = text.substr(open + 1, text.size() - open - 2);
  std::vector<std::string_view> args;
  if (!Trim(inner).empty()) {
    for (auto a : SplitOn(inner, ',')) args.push_back(Trim(a));
  }

  if (name == "scale") {
    ExpectArgs(args, 0, 0, name);
    return ScaleStep{};
  }
  if (name == "binarize") {
    ExpectArgs(args, 0, 1, name);
    return BinarizeStep{args.empty() ? 0.0 : ParseReal(args[0], "binarize threshold")};
  }
  if (name == "select_k_anova") {
    ExpectArgs(args, 1, 1, name);
    return SelectKAnovaStep{ParseCount(args[0], "select_k_anova k")};
  }
  if (name == "knn") {
    ExpectArgs(args, 1, 2, name);
    if (args.size() == 2 && args[1] != "euclidean") {
      throw UsageError("knn supports only the euclidean metric");
    }
    return KnnSpec{ParseCount(args[0], "knn k")};
  }
  if (name == "linear_svm") {
    ExpectArgs(args, 2, 2, name);
    const double c = ParseReal(args[0], "linear_svm C");
    if (c <= 0) throw UsageError("linear_svm C must be > 0");
    return LinearSvmSpec{c, ParseCount(args[1], "linear_svm epochs")};
  }
  if (name == "logistic") {
    ExpectArgs(args, 2, 2, name);
    const double l2 = ParseReal(args[0], "logistic l2");
    if (l2 < 0) throw UsageError("logistic l2 must be >= 0");
    return LogisticSpec{l2, ParseCount(args[1], "logistic epochs")};
  }
  if (name == "majority") {
    ExpectArgs(args, 0, 0, name);
    return MajoritySpec{};
  }
  throw UsageError("unknown pipeline component '" + std::string(name) + "'");
}

}  // namespace

bool IsClassifier(const Component& c) noexcept {
  return std::holds_alternative<KnnSpec>(c) ||
         std::holds_alternative<LinearSvmSpec>(c) ||
         std::holds_alternative<LogisticSpec>(c) ||
         std::holds_alternative<MajoritySpec>(c);
}

std::string FormatComponent(const Component& c) {
  return std::visit(
      Overloaded{
          [](const ScaleStep&) -> std::string { return "scale()"; },
          [](const BinarizeStep& s) {
            return "binarize(" + FormatDoubleLiteral(s.threshold) + ")";
          },
          [](const SelectKAnovaStep& s) {
            return "select_k_anova(" + std::to_string(s.k) + ")";
          },
          [](const KnnSpec& s) { return "knn(" + std::to_string(s.k) + ")"; },
          [](const LinearSvmSpec& s) {
            return "linear_svm(" + FormatDoubleLiteral(s.c) + "," +
                   std::to_string(s.epochs) + ")";
          },
          [](const LogisticSpec& s) {
            return "logistic(" + FormatDoubleLiteral(s.l2) + "," +
                   std::to_string(s.epochs) + ")";
          },
          [](const MajoritySpec&) -> std::string { return "majority()"; },
      },
      c);
}

void ValidateComponents(const std::vector<Component>& components) {
  if (components.empty()) throw UsageError("pipeline has no components");
  for (std::size_t i = 0; i < components.size(); ++i) {
    const bool last = i + 1 == components.size();
    if (IsClassifier(components[i]) != last) {
      throw UsageError(last ? "pipeline must end with a classifier"
                            : "classifier '" + FormatComponent(components[i]) +
                                  "' is not in terminal position");
    }
    const auto& c = components[i];
    if (const auto* s = std::get_if<SelectKAnovaStep>(&c); s && s->k < 1) {
      throw UsageError("select_k_anova k must be >= 1");
    }
    if (const auto* s = std::get_if<KnnSpec>(&c); s && s->k < 1) {
      throw UsageError("knn k must be >= 1");
    }
    if (const auto* s = std::get_if<LinearSvmSpec>(&c);
        s && (s->epochs < 1 || !(s->c > 0))) {
      throw UsageError("linear_svm needs C > 0 and epochs >= 1");
    }
    if (const auto* s = std::get_if<LogisticSpec>(&c);
        s && (s->epochs < 1 || !(s->l2 >= 0))) {
      throw UsageError("logistic needs l2 >= 0 and epochs >= 1");
    }
    if (const auto* s = std::get_if<BinarizeStep>(&c);
        s && !std::isfinite(s->threshold)) {
      throw UsageError("binarize threshold must be finite");
    }
  }
}

PipelineSpec::PipelineSpec(std::vector<Component> components)
    : components_(std::move(components)) {
  ValidateComponents(components_);
}

PipelineSpec PipelineSpec::Parse(std::string_view text) {
  if (Trim(text).empty()) throw UsageError("empty pipeline text");
  std::vector<Component> components;
  for (auto part : SplitOn(text, '|')) components.push_back(ParseComponent(part));
  return PipelineSpec(std::move(components));
}

std::string PipelineSpec::ToString() const {
  std::string out;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i > 0) out += '|';
    out += FormatComponent(components_[i]);
  }
  return out;
}

PipelineSpec ReferencePipeline(std::size_t num_columns) {
  const std::size_t k = std::max<std::size_t>(1, std::min<std::size_t>(100, num_columns));
  return PipelineSpec({SelectKAnovaStep{k}, BinarizeStep{0.0}, KnnSpec{21}});
}

}  // namespace triagekit
