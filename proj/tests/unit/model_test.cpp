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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "triagekit/common/error.hpp"
#include "triagekit/common/rng.hpp"
#include "triagekit/corpus/synthetic.hpp"
#include "triagekit/model/anova.hpp"
#include "triagekit/model/pipeline.hpp"
#include "triagekit/model/pipeline_spec.hpp"

namespace triagekit {
namespace {

const std::vector<std::string>& Tags() {
  static const std::vector<std::string> tags = {"allClear", "underserved",
                                                "currentAcuteDistress", "crisis"};
  return tags;
}

// Rows drawn around a class-dependent centre in the first two columns.
struct Toy {
  Matrix x;
  std::vector<std::string> y;
};

Toy MakeToy(std::size_t n, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  Toy t{Matrix(n, cols), {}};
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t c = rng.Below(4);
    t.y.push_back(Tags()[c]);
    for (std::size_t j = 0; j < cols; ++j) {
      t.x(r, j) = rng.Uniform() - 0.5;
    }
    t.x(r, 0) += static_cast<double>(c);
    t.x(r, 1) -= static_cast<double>(c);
  }
  return t;
}

TEST(PipelineSpec, ParseAndFormat) {
  const auto spec = PipelineSpec::Parse(" select_k_anova(100) | binarize(0.0)|knn(21) ");
  EXPECT_EQ(spec.ToString(), "select_k_anova(100)|binarize(0.0)|knn(21)");
  EXPECT_EQ(spec, ReferencePipeline(500));
  EXPECT_EQ(PipelineSpec::Parse(spec.ToString()), spec);
  EXPECT_EQ(ReferencePipeline(30).ToString(), "select_k_anova(30)|binarize(0.0)|knn(21)");
  for (const char* text :
       {"scale()|logistic(0.5,10)", "linear_svm(2.0,5)", "majority", "scale()|binarize(-1.5)|majority"}) {
    EXPECT_EQ(PipelineSpec::Parse(text).ToString(), PipelineSpec::Parse(
        PipelineSpec::Parse(text).ToString()).ToString());
  }
}

TEST(PipelineSpec, RejectsInvalid) {
  for (const char* text : {"", "scale", "knn(0)", "knn(3)|scale()", "knn(2)|knn(3)",
                           "select_k_anova(0)|knn(1)", "binarize(nan)|knn(1)",
                           "linear_svm(0,5)", "logistic(-1,5)", "bogus(1)",
                           "knn(3,cosine)", "knn(1.5)", "knn(3"}) {
    EXPECT_THROW(PipelineSpec::Parse(text), UsageError) << text;
  }
}

TEST(Anova, MatchesHandComputedValue) {
  // Groups {1,2,3} and {4,5,6}: between SS 13.5 on 1 df, within SS 4 on 4 df.
  const std::vector<double> col = {1, 2, 3, 4, 5, 6};
  const std::vector<int> cls = {0, 0, 0, 1, 1, 1};
  EXPECT_NEAR(AnovaF(col, cls), 13.5, 1e-12);
  const std::vector<double> constant(6, 2.0);
  EXPECT_EQ(AnovaF(constant, cls), 0.0);
  const std::vector<double> separated = {1, 1, 1, 2, 2, 2};
  EXPECT_TRUE(std::isinf(AnovaF(separated, cls)));
}

TEST(Anova, TopKBreaksTiesByIndex) {
  const std::vector<double> scores = {1.0, 3.0, 3.0, 0.5, 3.0};
  EXPECT_EQ(SelectTopK(scores, 2), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(SelectTopK(scores, 9).size(), 5u);
}

TEST(Pipeline, ReferencePipelineLearnsToy) {
  const Toy train = MakeToy(300, 6, 1);
  const Toy test = MakeToy(100, 6, 2);
  const auto spec = PipelineSpec::Parse("scale()|select_k_anova(2)|knn(5)");
  const FittedPipeline fp = FitMatrix(spec, train.x, train.y, DefaultLabelMap(), 3);
  EXPECT_EQ(fp.UsedInputColumns(), (std::vector<std::size_t>{0, 1}));
  const auto pred = fp.PredictCodes(test.x);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    correct += fp.codebook()[pred[i]] == test.y[i];
  }
  EXPECT_GT(correct, 90u);
}

TEST(Pipeline, LinearModelsDecreaseLossAndFit) {
  const Toy train = MakeToy(200, 4, 5);
  for (const char* text : {"scale()|logistic(0.01,60)", "scale()|linear_svm(1.0,60)"}) {
    const FittedPipeline fp =
        FitMatrix(PipelineSpec::Parse(text), train.x, train.y, DefaultLabelMap());
    const auto& lin = std::get<LinearState>(fp.classifier());
    for (const auto& hist : lin.loss_history) {
      ASSERT_EQ(hist.size(), 61u);
      for (std::size_t e = 1; e < hist.size(); ++e) EXPECT_LE(hist[e], hist[e - 1] + 1e-12);
    }
    const auto pred = fp.PredictCodes(train.x);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) correct += fp.codebook()[pred[i]] == train.y[i];
    EXPECT_GT(correct, 120u) << text;
  }
}

TEST(Pipeline, MajorityAndTieBreaks) {
  Matrix x(5, 1);
  const std::vector<std::string> y = {"crisis", "allClear", "crisis", "allClear",
                                      "underserved"};
  const FittedPipeline fp =
      FitMatrix(PipelineSpec::Parse("majority"), x, y, DefaultLabelMap());
  // Equal counts: lower coarse ordinal wins.
  EXPECT_EQ(fp.codebook()[std::get<MajorityState>(fp.classifier()).code], "allClear");
  EXPECT_TRUE(fp.UsedInputColumns().empty());

  // All training rows identical: the 4-NN vote is 2/2 and resolves the same way.
  const FittedPipeline knn =
      FitMatrix(PipelineSpec::Parse("knn(4)"), x, y, DefaultLabelMap());
  EXPECT_EQ(knn.codebook()[knn.PredictCodes(Matrix(1, 1))[0]], "allClear");
}

TEST(Pipeline, ClampsWithWarnings) {
  const Toy train = MakeToy(10, 3, 8);
  const FittedPipeline fp = FitMatrix(PipelineSpec::Parse("select_k_anova(10)|knn(50)"),
                                      train.x, train.y, DefaultLabelMap());
  EXPECT_EQ(fp.warnings().size(), 2u);
  EXPECT_EQ(std::get<KnnState>(fp.classifier()).k, 10u);
}

TEST(Pipeline, RejectsBadTrainingData) {
  const Toy t = MakeToy(10, 2, 1);
  std::vector<std::string> y = t.y;
  y[0] = "unknownTag";
  EXPECT_THROW(FitMatrix(PipelineSpec::Parse("knn(1)"), t.x, y, DefaultLabelMap()),
               DataError);
  y.pop_back();
  EXPECT_THROW(FitMatrix(PipelineSpec::Parse("knn(1)"), t.x, y, DefaultLabelMap()),
               DataError);
  const FittedPipeline fp = FitMatrix(PipelineSpec::Parse("knn(1)"), t.x, t.y,
                                      DefaultLabelMap());
  EXPECT_THROW(fp.PredictCodes(Matrix(1, 3)), DataError);
}

TEST(Pipeline, CheckColumnsNamesTheDifference) {
  const std::vector<ColumnDescriptor> cols = {{"a", "x", Aggregation::kPost},
                                              {"a", "y", Aggregation::kPost}};
  const FeatureTable train({"r1", "r2", "r3"}, cols, {0, 1, 1, 0, 0, 0});
  const std::vector<std::string> y = {"allClear", "crisis", "allClear"};
  const FittedPipeline fp = Fit(PipelineSpec::Parse("knn(1)"), train, y, DefaultLabelMap());
  const FeatureTable swapped({"r"}, {cols[1], cols[0]}, {0, 0});
  try {
    fp.CheckColumns(swapped);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("different order"), std::string::npos);
  }
  const FeatureTable other({"r"}, {cols[0], {"b", "z", Aggregation::kPost}}, {0, 0});
  try {
    fp.CheckColumns(other);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("missing: a/y/post"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("extra: b/z/post"), std::string::npos);
  }
}

TEST(ModelIo, RoundTripPreservesPredictions) {
  const Toy train = MakeToy(120, 5, 11);
  const Toy test = MakeToy(40, 5, 12);
  for (const char* text : {"scale()|select_k_anova(3)|binarize(0.0)|knn(7)",
                           "scale()|logistic(0.01,20)", "linear_svm(1.0,10)", "majority"}) {
    const FittedPipeline fp = FitMatrix(PipelineSpec::Parse(text), train.x, train.y,
                                        DefaultLabelMap(), 0xFFFFFFFFFFFFFFF1ull);
    const std::string text1 = SerializeModel(fp);
    const FittedPipeline back = ParseModel(text1);
    EXPECT_EQ(SerializeModel(back), text1) << text;
    EXPECT_EQ(back.PredictCodes(test.x), fp.PredictCodes(test.x)) << text;
    EXPECT_EQ(back.seed(), fp.seed());
  }
}

TEST(ModelIo, SaveLoadFile) {
  testing::TempDir dir("model");
  const Toy train = MakeToy(30, 2, 1);
  const FittedPipeline fp =
      FitMatrix(PipelineSpec::Parse("knn(3)"), train.x, train.y, DefaultLabelMap());
  SaveModel(fp, dir / "m.txt");
  EXPECT_EQ(SerializeModel(LoadModel(dir / "m.txt")), SerializeModel(fp));
}

TEST(ModelIo, RejectsCorruptInput) {
  const Toy train = MakeToy(30, 2, 1);
  const std::string good = SerializeModel(
      FitMatrix(PipelineSpec::Parse("knn(3)"), train.x, train.y, DefaultLabelMap()));
  EXPECT_THROW(ParseModel(""), DataError);
  EXPECT_THROW(ParseModel("triagekit-model/9\n"), DataError);
  EXPECT_THROW(ParseModel(good.substr(0, good.size() / 2)), DataError);
  std::string bad = good;
  bad.replace(bad.find("classifier knn"), 14, "classifier xyz");
  EXPECT_THROW(ParseModel(bad), DataError);
}

}  // namespace
}  // namespace triagekit
