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

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "triagekit/common/error.hpp"
#include "triagekit/common/io.hpp"
#include "triagekit/common/numfmt.hpp"
#include "triagekit/common/rng.hpp"
#include "triagekit/common/text.hpp"
#include "triagekit/corpus/corpus.hpp"
#include "triagekit/featurize/category.hpp"
#include "triagekit/featurize/embeddings.hpp"
#include "triagekit/featurize/feature_table.hpp"
#include "triagekit/featurize/featurizer.hpp"
#include "triagekit/featurize/vader.hpp"

namespace triagekit {
namespace {

const ValenceLexicon& Lexicon() {
  static const ValenceLexicon lex =
      ValenceLexicon::Load(testing::DataPath("vader_lexicon.txt"));
  return lex;
}

struct OracleRow {
  std::string text;
  double neg, neu, pos, compound;
};

std::vector<OracleRow> LoadOracle() {
  std::vector<OracleRow> rows;
  const auto lines = SplitLines(ReadFile(testing::FixturePath("vader_oracle.tsv")));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = SplitOn(lines[i], '\t');
    if (f.size() != 5) continue;
    rows.push_back({std::string(f[0]), *ParseDouble(f[1]), *ParseDouble(f[2]),
                    *ParseDouble(f[3]), *ParseDouble(f[4])});
  }
  return rows;
}

TEST(Vader, MatchesReferenceFixtures) {
  const auto rows = LoadOracle();
  ASSERT_GE(rows.size(), 50u);
  for (const auto& row : rows) {
    const SentimentScores s = VaderSentence(row.text, Lexicon());
    EXPECT_NEAR(s.compound, row.compound, 1e-3) << row.text;
    EXPECT_NEAR(s.pos, row.pos, 1e-3) << row.text;
    EXPECT_NEAR(s.neg, row.neg, 1e-3) << row.text;
    EXPECT_NEAR(s.neu, row.neu, 1e-3) << row.text;
  }
}

TEST(Vader, ScoresAreBounded) {
  for (const char* text : {"GOOD GOOD GOOD!!!!!", "worst worst worst hate kill",
                           "", "no"}) {
    const SentimentScores s = VaderSentence(text, Lexicon());
    EXPECT_GE(s.compound, -1.0);
    EXPECT_LE(s.compound, 1.0);
    EXPECT_GE(s.pos, 0.0);
    EXPECT_GE(s.neg, 0.0);
    EXPECT_GE(s.neu, 0.0);
  }
}

TEST(Vader, LexiconParseIgnoresExtraColumns) {
  const ValenceLexicon lex = ValenceLexicon::Parse("good\t1.9\t0.9\t[1,2]\nbad\t-2.5\n");
  EXPECT_TRUE(lex.Contains("good"));
  EXPECT_DOUBLE_EQ(lex.valence.at("bad"), -2.5);
  EXPECT_FALSE(lex.negations.empty());
}

TEST(Featurizer, AggregationWidthIsThreeTimesSentenceDim) {
  for (std::size_t dim : {4u, 64u, 512u, 768u, 2304u}) {
    Featurizer f;
    f.Add(MakeStubExtractor("enc", dim, 1));
    EXPECT_EQ(f.Columns().size(), 3 * dim);
  }
  Featurizer v;
  v.Add(VaderExtractor{"vader", std::make_shared<ValenceLexicon>(Lexicon())});
  EXPECT_EQ(v.Columns().size(), 12u);
  EXPECT_EQ(v.Columns()[0].Name(), "vader/pos/mean");
  EXPECT_EQ(v.Columns()[11].Name(), "vader/compound/min");
}

TEST(Featurizer, RejectsDuplicateAndBadNames) {
  Featurizer f;
  f.Add(MakeStubExtractor("a", 4, 1));
  EXPECT_THROW(f.Add(MakeStubExtractor("a", 4, 2)), UsageError);
  EXPECT_THROW(f.Add(MakeStubExtractor("x/y", 4, 2)), UsageError);
  EXPECT_THROW(MakeStubExtractor("z", 0, 1), UsageError);
}

TEST(Featurizer, DegeneratePostIsZeroRow) {
  Corpus corpus;
  corpus.AddPost(MakePost("d", "", "> only quoted"));
  corpus.AddPost(MakePost("n", "", "I am fine. Thanks."));
  Featurizer f;
  f.Add(MakeStubExtractor("stub", 8, 3));
  f.Add(VaderExtractor{"vader", std::make_shared<ValenceLexicon>(Lexicon())});
  const FeatureTable t = f.Build(corpus, {}, 2);
  ASSERT_EQ(t.rows(), 2u);
  EXPECT_TRUE(t.degenerate(0));
  EXPECT_FALSE(t.degenerate(1));
  for (double v : t.row(0)) EXPECT_EQ(v, 0.0);
}

TEST(Featurizer, MeanLiesBetweenMinAndMax) {
  Corpus corpus;
  corpus.AddPost(MakePost("p", "", "One sentence here. Another one there! And a third?"));
  Featurizer f;
  f.Add(MakeStubExtractor("stub", 16, 5));
  const FeatureTable t = f.Build(corpus);
  for (std::size_t d = 0; d < 16; ++d) {
    EXPECT_LE(t.at(0, 32 + d), t.at(0, d));
    EXPECT_LE(t.at(0, d), t.at(0, 16 + d));
  }
}

// Independent reimplementation of the stub encoder: each token hash drives
// one signed 24-bit contribution per dimension; the sum is L2-normalized.
std::vector<double> StubOracle(std::string_view sentence, std::size_t dim,
                               std::uint64_t seed) {
  std::vector<std::int64_t> sum(dim, 0);
  for (const auto& tok : Tokenize(sentence)) {
    const std::uint64_t h = Mix64(Fnv1a64(tok.text) ^ Mix64(seed));
    for (std::size_t d = 0; d < dim; ++d) {
      const std::int64_t top = static_cast<std::int64_t>(Mix64(h + d) >> 32);
      const std::int64_t signed_top = top >= (std::int64_t{1} << 31)
                                          ? top - (std::int64_t{1} << 32)
                                          : top;
      sum[d] += static_cast<std::int64_t>(std::floor(signed_top / 256.0));
    }
  }
  double norm = 0.0;
  for (auto v : sum) norm += static_cast<double>(v) * static_cast<double>(v);
  std::vector<double> out(dim, 0.0);
  if (norm == 0.0) return out;
  norm = std::sqrt(norm);
  for (std::size_t d = 0; d < dim; ++d) out[d] = static_cast<double>(sum[d]) / norm;
  return out;
}

TEST(StubEncoder, MatchesIndependentOracle) {
  for (const char* s : {"I feel hopeless today.", "Thanks, everyone!", "a b c a",
                        "", "..."}) {
    for (std::uint64_t seed : {0ull, 1ull, 0xFFFFFFFFFFFFFFFFull}) {
      const auto got = StubEncode(s, 32, seed);
      const auto want = StubOracle(s, 32, seed);
      for (std::size_t d = 0; d < 32; ++d) EXPECT_NEAR(got[d], want[d], 1e-12) << s;
    }
  }
}

TEST(StubEncoder, DeterministicAndUnitNorm) {
  const auto a = StubEncode("same words", 64, 9);
  EXPECT_EQ(a, StubEncode("same words", 64, 9));
  EXPECT_NE(a, StubEncode("same words", 64, 10));
  double n = 0.0;
  for (double v : a) n += v * v;
  EXPECT_NEAR(n, 1.0, 1e-12);
}

TEST(Embeddings, RoundTripAndValidation) {
  Corpus corpus;
  corpus.AddPost(MakePost("a", "", "One. Two."));
  corpus.AddPost(MakePost("b", "", "Three."));
  const EmbeddingSet set = StubEmbeddings(corpus, 3, 1);
  const std::string text = SerializeEmbeddings(set);
  const EmbeddingSet back = ParseEmbeddings(text, corpus);
  EXPECT_EQ(*back.Find("a"), *set.Find("a"));

  EXPECT_THROW(ParseEmbeddings("post_id\tsentence_index\tvalues\n", corpus), DataError);
  EXPECT_THROW(ParseEmbeddings("#dim=3\npost_id\tsentence_index\tvalues\n"
                               "a\t0\t1,2\n", corpus),
               DataError);
  EXPECT_THROW(ParseEmbeddings("#dim=1\npost_id\tsentence_index\tvalues\n"
                               "a\t0\t1\nb\t0\t1\n", corpus),
               DataError);
  EXPECT_THROW(ParseEmbeddings("#dim=1\npost_id\tsentence_index\tvalues\n"
                               "a\t0\t1\na\t1\t1\nb\t5\t1\n", corpus),
               DataError);
}

TEST(Embeddings, IngestedMatchesEncoderOnSameVectors) {
  Corpus corpus;
  corpus.AddPost(MakePost("a", "", "One here. Two there."));
  corpus.AddPost(MakePost("b", "", "Three."));
  Featurizer enc;
  enc.Add(MakeStubExtractor("s", 6, 2));
  Featurizer ing;
  ing.Add(IngestedExtractor{"s", std::make_shared<EmbeddingSet>(StubEmbeddings(corpus, 6, 2))});
  EXPECT_EQ(enc.Build(corpus).values(), ing.Build(corpus).values());
  EXPECT_THROW(ing.FeaturizeText("new text"), UsageError);
}

TEST(Category, FractionsAndWildcards) {
  const CategoryLexicon lex = CategoryLexicon::Parse("sad\tsad,cry*\nself\ti,me\n");
  const auto v = CategoryFeatures("I was crying and I was SAD, me too", lex);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_DOUBLE_EQ(v[0], 2.0 / 9.0);
  EXPECT_DOUBLE_EQ(v[1], 3.0 / 9.0);
  EXPECT_EQ(CategoryFeatures("", lex), std::vector<double>(2, 0.0));
  EXPECT_THROW(CategoryLexicon::Parse("a\tx\na\ty\n"), DataError);
  EXPECT_THROW(CategoryLexicon::Parse("a\t*\n"), DataError);
}

TEST(FeatureTable, SerializeRoundTripAndSelect) {
  Corpus corpus;
  corpus.AddPost(MakePost("a", "", "Hello there."));
  corpus.AddPost(MakePost("b", "", ""));
  Featurizer f;
  f.Add(MakeStubExtractor("stub", 4, 1));
  const FeatureTable t = f.Build(corpus);
  const FeatureTable back = FeatureTable::Parse(t.Serialize());
  EXPECT_EQ(back.values(), t.values());
  EXPECT_EQ(back.columns(), t.columns());
  EXPECT_TRUE(back.degenerate(1));
  const std::vector<std::string> ids = {"b", "a"};
  const FeatureTable sel = t.SelectRows(ids);
  EXPECT_EQ(sel.row_ids(), ids);
  const std::vector<std::string> missing = {"zz"};
  EXPECT_THROW(t.SelectRows(missing), DataError);
}

TEST(FeatureTable, RejectsNonFiniteAndDuplicates) {
  const ColumnDescriptor c{"x", "a", Aggregation::kPost};
  EXPECT_THROW(FeatureTable({"r"}, {c}, {std::nan("")}), DataError);
  EXPECT_THROW(FeatureTable({"r"}, {c, c}, {1.0, 2.0}), DataError);
  EXPECT_THROW(FeatureTable({"r"}, {c}, {1.0, 2.0}), DataError);
}

TEST(FeatureTable, ColumnNames) {
  const auto d = ColumnDescriptor::FromName("stub/d3/max");
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->aggregation, Aggregation::kMax);
  EXPECT_EQ(d->Name(), "stub/d3/max");
  EXPECT_FALSE(ColumnDescriptor::FromName("bad").has_value());
}

}  // namespace
}  // namespace triagekit
