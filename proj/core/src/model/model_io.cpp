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

#include <charconv>
#include <string>
#include <utility>
#include <vector>

#include "triagekit/common/error.hpp"
#include "triagekit/common/io.hpp"
#include "triagekit/common/numfmt.hpp"
#include "triagekit/common/text.hpp"
#include "triagekit/model/pipeline.hpp"

namespace triagekit {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void AppendDoubles(std::string& out, std::span<const double> values) {
  for (double v : values) {
    out += ' ';
    out += FormatDouble(v);
  }
}

void AppendSizes(std::string& out, std::span<const std::size_t> values) {
  for (std::size_t v : values) {
    out += ' ';
    out += std::to_string(v);
  }
}

}  // namespace

std::string SerializeModel(const FittedPipeline& model) {
  std::string out(kModelFormat);
  out += '\n';
  out += "spec " + model.spec().ToString() + "\n";
  out += "seed " + std::to_string(model.seed()) + "\n";
  out += "columns " + std::to_string(model.columns().size()) + "\n";
  for (const auto& c : model.columns()) out += "col " + c.Name() + "\n";
  out += "labels " + std::to_string(model.codebook().size()) + "\n";
  for (std::size_t i = 0; i < model.codebook().size(); ++i) {
    out += "label " + std::to_string(model.class_counts()[i]) + " " +
           EscapeField(model.codebook()[i]) + "\n";
  }
  for (const auto& [tag, coarse] : model.label_map().entries()) {
    out += "map " + std::string(CoarseName(coarse)) + " " + EscapeField(tag) + "\n";
  }
  for (const auto& w : model.warnings()) out += "warning " + EscapeField(w) + "\n";
  for (const auto& step : model.steps()) {
    std::visit(Overloaded{
                   [&](const ScaleState& s) {
                     out += "step scale " + std::to_string(s.means.size()) + "\n";
                     out += "means";
                     AppendDoubles(out, s.means);
                     out += "\nscales";
                     AppendDoubles(out, s.scales);
                     out += '\n';
                   },
                   [&](const BinarizeState& s) {
                     out += "step binarize " + FormatDouble(s.threshold) + "\n";
                   },
                   [&](const SelectState& s) {
                     out += "step select " + std::to_string(s.indices.size());
                     AppendSizes(out, s.indices);
                     out += '\n';
                   },
               },
               step);
  }
  std::visit(
      Overloaded{
          [&](const KnnState& s) {
            out += "classifier knn " + std::to_string(s.k) + " " +
                   std::to_string(s.train.rows) + " " + std::to_string(s.train.cols) +
                   "\n";
            for (std::size_t r = 0; r < s.train.rows; ++r) {
              out += "row " + std::to_string(s.codes[r]);
              AppendDoubles(out, s.train.row(r));
              out += '\n';
            }
          },
          [&](const LinearState& s) {
            const std::size_t width = s.weights.empty() ? 0 : s.weights.front().size();
            out += std::string("classifier ") + (s.logistic ? "logistic " : "svm ") +
                   std::to_string(s.weights.size()) + " " + std::to_string(width) + "\n";
            for (std::size_t k = 0; k < s.weights.size(); ++k) {
              out += "w";
              AppendDoubles(out, s.weights[k]);
              out += "\nloss";
              AppendDoubles(out, s.loss_history[k]);
              out += '\n';
            }
          },
          [&](const MajorityState& s) {
            out += "classifier majority " + std::to_string(s.code) + "\n";
          },
      },
      model.classifier());
  out += "end\n";
  return out;
}

class ModelReader {
 public:
  explicit ModelReader(std::string_view content) : lines_(SplitLines(content)) {}

  FittedPipeline Read() {
    if (lines_.empty() || lines_[0] != kModelFormat) {
      const std::string got = lines_.empty() ? std::string("<empty>") : lines_[0];
      throw DataError("unsupported model format '" + got + "', expected '" +
                      std::string(kModelFormat) + "'");
    }
    pos_ = 1;
    FittedPipeline fp;
    fp.spec_ = PipelineSpecFrom(Field("spec"));
    fp.seed_ = U64(Field("seed"));
    const std::size_t n_cols = Count(Field("columns"));
    for (std::size_t i = 0; i < n_cols; ++i) {
      auto d = ColumnDescriptor::FromName(Field("col"));
      if (!d) Fail("bad column descriptor");
      fp.columns_.push_back(*d);
    }
    fp.input_width_ = n_cols;
    const std::size_t n_labels = Count(Field("labels"));
    for (std::size_t i = 0; i < n_labels; ++i) {
      const auto [count, tag] = Head(Field("label"));
      fp.class_counts_.push_back(Count(count));
      fp.codebook_.push_back(UnescapeField(tag));
    }
    while (Peek("map")) {
      const auto [name, tag] = Head(Field("map"));
      const auto coarse = ParseCoarse(name);
      if (!coarse) Fail("unknown coarse class");
      fp.label_map_.Add(UnescapeField(tag), *coarse);
    }
    while (Peek("warning")) fp.warnings_.push_back(UnescapeField(Field("warning")));

    std::size_t width = n_cols;
    while (Peek("step")) {
      const auto parts = Split(Field("step"));
      if (parts.empty()) Fail("empty step");
      if (parts[0] == "scale" && parts.size() == 2) {
        ScaleState s;
        const std::size_t n = Count(parts[1]);
        s.means = Doubles(Field("means"), n);
        s.scales = Doubles(Field("scales"), n);
        if (n != width) Fail("scale width mismatch");
        fp.steps_.push_back(std::move(s));
      } else if (parts[0] == "binarize" && parts.size() == 2) {
        fp.steps_.push_back(BinarizeState{Double(parts[1])});
      } else if (parts[0] == "select" && parts.size() >= 2) {
        SelectState s;
        const std::size_t n = Count(parts[1]);
        if (parts.size() != n + 2) Fail("select index count mismatch");
        for (std::size_t i = 0; i < n; ++i) {
          s.indices.push_back(Count(parts[i + 2]));
          if (s.indices.back() >= width) Fail("select index out of range");
        }
        width = n;
        fp.steps_.push_back(std::move(s));
      } else {
        Fail("unknown step '" + std::string(parts[0]) + "'");
      }
    }

    const auto head = Split(Field("classifier"));
    if (head.empty()) Fail("empty classifier");
    if (head[0] == "knn" && head.size() == 4) {
      KnnState s;
      s.k = Count(head[1]);
      const std::size_t rows = Count(head[2]);
      const std::size_t cols = Count(head[3]);
      if (cols != width) Fail("knn width mismatch");
      s.train = Matrix(rows, cols);
      for (std::size_t r = 0; r < rows; ++r) {
        const auto values = Split(Field("row"));
        if (values.size() != cols + 1) Fail("knn row width mismatch");
        s.codes.push_back(static_cast<int>(Code(values[0], n_labels)));
        for (std::size_t c = 0; c < cols; ++c) s.train(r, c) = Double(values[c + 1]);
      }
      fp.classifier_ = std::move(s);
    } else if ((head[0] == "svm" || head[0] == "logistic") && head.size() == 3) {
      LinearState s;
      s.logistic = head[0] == "logistic";
      const std::size_t n = Count(head[1]);
      const std::size_t w = Count(head[2]);
      if (n != n_labels || w != width + 1) Fail("linear shape mismatch");
      for (std::size_t k = 0; k < n; ++k) {
        s.weights.push_back(Doubles(Field("w"), w));
        const auto loss = Split(Field("loss"));
        std::vector<double> history;
        for (auto v : loss) history.push_back(Double(v));
        s.loss_history.push_back(std::move(history));
      }
      fp.classifier_ = std::move(s);
    } else if (head[0] == "majority" && head.size() == 2) {
      fp.classifier_ = MajorityState{static_cast<int>(Code(head[1], n_labels))};
    } else {
      Fail("unknown classifier");
    }
    Field("end");
    if (pos_ != lines_.size()) Fail("trailing content after end");
    if (fp.codebook_.empty()) Fail("model has no labels");
    for (const auto& tag : fp.codebook_) {
      if (!fp.label_map_.Contains(tag)) Fail("label '" + tag + "' missing from map");
    }
    fp.Finalize();
    return fp;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) const {
    throw DataError("corrupt model (line " + std::to_string(pos_ + 1) + "): " + what);
  }

  bool Peek(std::string_view key) const {
    if (pos_ >= lines_.size()) return false;
    const std::string& line = lines_[pos_];
    return line == key || StartsWith(line, std::string(key) + " ");
  }

  std::string_view Field(std::string_view key) {
    if (pos_ >= lines_.size()) {
      throw DataError("truncated model: expected '" + std::string(key) + "'");
    }
    if (!Peek(key)) Fail("expected '" + std::string(key) + "'");
    std::string_view line = lines_[pos_++];
    line.remove_prefix(std::min(line.size(), key.size() + 1));
    return line;
  }

  static std::vector<std::string_view> Split(std::string_view s) {
    std::vector<std::string_view> out;
    for (auto p : SplitOn(s, ' ')) {
      if (!p.empty()) out.push_back(p);
    }
    return out;
  }

  // First word and the remainder of the line.
  std::pair<std::string_view, std::string_view> Head(std::string_view s) const {
    const auto space = s.find(' ');
    if (space == std::string_view::npos) Fail("expected two fields");
    return {s.substr(0, space), s.substr(space + 1)};
  }

  std::int64_t Int(std::string_view s) const {
    auto v = ParseInt(s);
    if (!v) Fail("bad integer '" + std::string(s) + "'");
    return *v;
  }

  std::uint64_t U64(std::string_view s) const {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      Fail("bad integer '" + std::string(s) + "'");
    }
    return v;
  }

  std::size_t Count(std::string_view s) const {
    const auto v = Int(s);
    if (v < 0) Fail("negative count");
    return static_cast<std::size_t>(v);
  }

  std::size_t Code(std::string_view s, std::size_t n_labels) const {
    const auto v = Count(s);
    if (v >= n_labels) Fail("label code out of range");
    return v;
  }

  double Double(std::string_view s) const {
    auto v = ParseDouble(s);
    if (!v) Fail("bad number '" + std::string(s) + "'");
    return *v;
  }

  std::vector<double> Doubles(std::string_view s, std::size_t n) const {
    const auto parts = Split(s);
    if (parts.size() != n) Fail("expected " + std::to_string(n) + " values");
    std::vector<double> out;
    for (auto p : parts) out.push_back(Double(p));
    return out;
  }

  PipelineSpec PipelineSpecFrom(std::string_view text) const {
    try {
      return PipelineSpec::Parse(text);
    } catch (const UsageError& e) {
      Fail(e.what());
    }
  }

  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

FittedPipeline ParseModel(std::string_view content) {
  return ModelReader(content).Read();
}

void SaveModel(const FittedPipeline& model, const std::filesystem::path& path) {
  WriteFileAtomic(path, SerializeModel(model));
}

FittedPipeline LoadModel(const std::filesystem::path& path) {
  return ParseModel(ReadFile(path));
}

}  // namespace triagekit
