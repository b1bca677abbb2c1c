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

#include "triagekit_cli/commands.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>

#include "triagekit/analysis/explain.hpp"
#include "triagekit/analysis/importance.hpp"
#include "triagekit/analysis/mantel.hpp"
#include "triagekit/automl/search.hpp"
#include "triagekit/common/error.hpp"
#include "triagekit/common/io.hpp"
#include "triagekit/common/numfmt.hpp"
#include "triagekit/common/rng.hpp"
#include "triagekit/common/text.hpp"
#include "triagekit/corpus/corpus.hpp"
#include "triagekit/corpus/synthetic.hpp"
#include "triagekit/eval/baseline.hpp"
#include "triagekit/eval/cv.hpp"
#include "triagekit/eval/metrics.hpp"
#include "triagekit/featurize/featurizer.hpp"
#include "triagekit/model/pipeline.hpp"
#include "triagekit/report/report.hpp"

namespace triagekit::cli {
namespace fs = std::filesystem;

namespace {

constexpr std::string_view kCrossvalFormat = "triagekit-crossval/1";

struct Env {
  const RunConfig& cfg;
  Manifest& manifest;
  std::ostream& out;
  fs::path dir;
  std::uint64_t seed;
  int threads;

  fs::path Artifact(std::string_view name) const { return dir / std::string(name); }
};

Split SplitOf(const RunConfig& cfg, std::string_view key, Split fallback) {
  const auto name = cfg.OptString(key);
  if (!name) return fallback;
  const auto s = ParseSplit(*name);
  if (!s) throw UsageError("config field '" + std::string(key) + "' must be train, test or external");
  return *s;
}

// An explicit config path wins; otherwise an artifact of an earlier step.
fs::path InputPath(const Env& env, std::string_view key, std::string_view artifact) {
  if (auto p = env.cfg.OptPath(key)) return *p;
  const fs::path fallback = env.Artifact(artifact);
  if (fs::exists(fallback)) return fallback;
  throw UsageError("config field '" + std::string(key) + "' is required (no " +
                   fallback.string() + " from an earlier step)");
}

LabelMap LoadLabelMapFor(Env& env) {
  // Report a missing corpus before a missing label map.
  InputPath(env, "corpus.path", "corpus.tsv");
  const fs::path path = InputPath(env, "label_map", "label_map.tsv");
  env.manifest.AddInput(path);
  return LabelMap::Load(path);
}

Corpus LoadCorpusFor(Env& env, const LabelMap& map) {
  const fs::path path = InputPath(env, "corpus.path", "corpus.tsv");
  CorpusSchema schema;
  schema.id = env.cfg.String("corpus.columns.id", schema.id);
  schema.thread_id = env.cfg.String("corpus.columns.thread_id", schema.thread_id);
  schema.split = env.cfg.String("corpus.columns.split", schema.split);
  schema.coarse = env.cfg.String("corpus.columns.coarse", schema.coarse);
  schema.granular = env.cfg.String("corpus.columns.granular", schema.granular);
  schema.body = env.cfg.String("corpus.columns.body", schema.body);
  schema.labels_path = env.cfg.OptPath("corpus.labels");
  env.manifest.AddInput(path);
  if (schema.labels_path) env.manifest.AddInput(*schema.labels_path);
  Corpus corpus = LoadCorpus(path, schema);
  corpus.ValidateLabels(map);
  return corpus;
}

// Granular tags of labeled posts in `split`. A label without a granular tag
// trains on its coarse class name, which is added to the map.
struct Labeled {
  std::vector<std::string> ids;
  std::vector<std::string> tags;
};

Labeled LabeledRows(const Corpus& corpus, Split split, LabelMap& map) {
  Labeled rows;
  rows.ids = corpus.LabeledIds(split);
  for (const auto& id : rows.ids) {
    const TriageLabel* label = corpus.label(id);
    if (label->granular.empty()) {
      const std::string name(CoarseName(label->coarse));
      if (!map.Contains(name)) map.Add(name, label->coarse);
      rows.tags.push_back(name);
    } else {
      rows.tags.push_back(label->granular);
    }
  }
  if (rows.ids.empty()) {
    throw DataError("no labeled posts in split '" + std::string(SplitName(split)) + "'");
  }
  return rows;
}

Featurizer BuildFeaturizer(Env& env, std::optional<std::string> only = std::nullopt) {
  const RunConfig& cfg = env.cfg;
  Featurizer f;
  auto wanted = [&](const std::string& name) { return !only || *only == name; };

  const Json* vader = cfg.Find("features.vader");
  const bool vader_on = !vader || !vader->is_boolean() || vader->get<bool>();
  if (vader_on && wanted("vader")) {
    fs::path lexicon;
    if (auto p = cfg.OptPath("features.vader.lexicon")) {
      lexicon = *p;
    } else if (fs::exists(TRIAGEKIT_DEFAULT_LEXICON)) {
      lexicon = TRIAGEKIT_DEFAULT_LEXICON;
    } else {
      lexicon = TRIAGEKIT_INSTALLED_LEXICON;
    }
    env.manifest.AddInput(lexicon);
    f.Add(VaderExtractor{"vader", std::make_shared<ValenceLexicon>(ValenceLexicon::Load(lexicon))});
  }

  auto entries = [&](std::string_view key) {
    const Json* node = cfg.Find(key);
    if (!node) return Json::array();
    if (!node->is_array()) throw UsageError("config field '" + std::string(key) + "' must be a list");
    return *node;
  };
  auto field = [&](const Json& e, std::string_view key, std::size_t i,
                   std::string_view what) -> std::string {
    const auto it = e.find(std::string(what));
    if (it == e.end() || !it->is_string()) {
      throw UsageError("config field '" + std::string(key) + "[" + std::to_string(i) + "]." +
                       std::string(what) + "' is required");
    }
    return it->get<std::string>();
  };

  const Json cats = entries("features.categories");
  for (std::size_t i = 0; i < cats.size(); ++i) {
    const std::string name = field(cats[i], "features.categories", i, "name");
    if (!wanted(name)) continue;
    CategoryLexicon lexicon;
    if (cats[i].value("builtin", "") == "planted") {
      const auto& planted = DefaultPlantedLexicon();
      for (Coarse c : kAllCoarse) {
        std::vector<CategoryLexicon::Entry> words;
        for (const auto& w : planted[Ordinal(c)]) words.push_back({w, false});
        lexicon.AddCategory(std::string(CoarseName(c)), std::move(words));
      }
    } else {
      const fs::path path = cfg.Resolve(field(cats[i], "features.categories", i, "path"));
      if (!fs::exists(path)) {
        throw UsageError("config field 'features.categories[" + std::to_string(i) +
                         "].path' names a missing file: " + path.string());
      }
      env.manifest.AddInput(path);
      lexicon = CategoryLexicon::Load(path);
    }
    f.Add(CategoryExtractor{name, std::make_shared<CategoryLexicon>(std::move(lexicon))});
  }

  const Json stubs = entries("features.stub");
  for (std::size_t i = 0; i < stubs.size(); ++i) {
    const std::string name = stubs[i].value("name", "stub");
    if (!wanted(name)) continue;
    const auto dim = stubs[i].value("dim", std::uint64_t{64});
    if (dim < 1) throw UsageError("config field 'features.stub[" + std::to_string(i) + "].dim' must be >= 1");
    const auto seed = stubs[i].value("seed", DeriveSeed(env.seed, "stub-encoder", i));
    f.Add(MakeStubExtractor(name, dim, seed));
  }
  return f;
}

bool HasIngested(const RunConfig& cfg) {
  const Json* e = cfg.Find("features.embeddings");
  return e && e->is_array() && !e->empty();
}

void AddIngested(Env& env, Featurizer& f, const Corpus& corpus,
                 std::optional<std::string> only = std::nullopt) {
  const Json* node = env.cfg.Find("features.embeddings");
  if (!node) return;
  for (std::size_t i = 0; i < node->size(); ++i) {
    const Json& e = (*node)[i];
    if (!e.contains("name") || !e.contains("path")) {
      throw UsageError("config field 'features.embeddings[" + std::to_string(i) +
                       "]' needs name and path");
    }
    const std::string name = e["name"].get<std::string>();
    if (only && *only != name) continue;
    const fs::path path = env.cfg.Resolve(e["path"].get<std::string>());
    if (!fs::exists(path)) {
      throw UsageError("config field 'features.embeddings[" + std::to_string(i) +
                       "].path' names a missing file: " + path.string());
    }
    env.manifest.AddInput(path);
    f.Add(IngestedExtractor{name, std::make_shared<EmbeddingSet>(LoadEmbeddings(path, corpus))});
  }
}

Featurizer FullFeaturizer(Env& env, const Corpus& corpus) {
  Featurizer f = BuildFeaturizer(env);
  AddIngested(env, f, corpus);
  if (f.extractors().empty()) throw UsageError("config 'features' enables no extractor");
  return f;
}

FeatureTable FeaturesFor(Env& env, const Corpus& corpus, std::span<const std::string> ids) {
  if (auto p = env.cfg.OptPath("features_path")) {
    env.manifest.AddInput(*p);
    return FeatureTable::Load(*p).SelectRows(ids);
  }
  return FullFeaturizer(env, corpus).Build(corpus, ids, env.threads);
}

PipelineSpec PipelineFor(const RunConfig& cfg, std::size_t n_cols) {
  const std::string text = cfg.String("pipeline", "reference");
  if (text == "reference") return ReferencePipeline(n_cols);
  return PipelineSpec::Parse(text);
}

FittedPipeline LoadModelFor(Env& env) {
  const fs::path path = InputPath(env, "model", "model.txt");
  env.manifest.AddInput(path);
  return LoadModel(path);
}

void Say(Env& env, const std::string& line) { env.out << line << "\n"; }

// ---- subcommands ----

void CmdSynth(Env& env) {
  const RunConfig& cfg = env.cfg;
  SyntheticOptions base;
  if (const Json* probs = cfg.Find("synth.class_probs")) {
    if (!probs->is_array() || probs->size() != kNumCoarse) {
      throw UsageError("config field 'synth.class_probs' must list 4 weights");
    }
    for (std::size_t c = 0; c < kNumCoarse; ++c) base.class_probs[c] = (*probs)[c].get<double>();
  }
  base.plant_rate = cfg.Real("synth.plant_rate", base.plant_rate);
  base.min_sentences = cfg.Unsigned("synth.min_sentences", base.min_sentences);
  base.max_sentences = cfg.Unsigned("synth.max_sentences", base.max_sentences);
  base.min_words = cfg.Unsigned("synth.min_words", base.min_words);
  base.max_words = cfg.Unsigned("synth.max_words", base.max_words);

  SyntheticOptions train = base;
  train.seed = DeriveSeed(env.seed, "synthetic", 0);
  train.n = cfg.Unsigned("synth.n", 1200);
  train.id_prefix = "syn";
  SyntheticOptions test = base;
  test.seed = DeriveSeed(env.seed, "synthetic", 1);
  test.n = cfg.Unsigned("synth.test_n", 400);
  test.split = Split::kTest;
  test.id_prefix = "syntest";

  Corpus corpus = GenerateSynthetic(train);
  const Corpus held = GenerateSynthetic(test);
  for (const auto& p : held.posts()) {
    corpus.AddPost(p);
    corpus.SetLabel(p.id, *held.label(p.id), Split::kTest);
  }
  env.manifest.Write(env.Artifact("corpus.tsv"), SerializeCorpus(corpus));
  env.manifest.Write(env.Artifact("label_map.tsv"), DefaultLabelMap().Serialize());
  Say(env, "synth: " + std::to_string(train.n) + " train + " + std::to_string(test.n) +
               " test posts");
}

void CmdIngest(Env& env) {
  const LabelMap map = LoadLabelMapFor(env);
  const Corpus corpus = LoadCorpusFor(env, map);
  Json summary = {{"posts", corpus.size()}};
  std::size_t degenerate = 0;
  for (const auto& p : corpus.posts()) degenerate += p.degenerate();
  summary["degenerate_posts"] = degenerate;
  Json by_split = Json::object();
  for (Split s : {Split::kTrain, Split::kTest, Split::kExternal}) {
    Json counts = Json::object();
    for (Coarse c : kAllCoarse) counts[std::string(CoarseName(c))] = 0;
    for (const auto& id : corpus.LabeledIds(s)) {
      counts[std::string(CoarseName(corpus.label(id)->coarse))] =
          counts[std::string(CoarseName(corpus.label(id)->coarse))].get<int>() + 1;
    }
    by_split[std::string(SplitName(s))] = counts;
  }
  summary["labeled"] = by_split;
  env.manifest.Write(env.Artifact("corpus.tsv"), SerializeCorpus(corpus));
  env.manifest.Write(env.Artifact("label_map.tsv"), map.Serialize());
  env.manifest.Write(env.Artifact("ingest_summary.json"), summary.dump(2) + "\n");
  Say(env, "ingest: " + std::to_string(corpus.size()) + " posts, " +
               std::to_string(degenerate) + " empty after cleaning");
}

void CmdFeaturize(Env& env) {
  const LabelMap map = LoadLabelMapFor(env);
  const Corpus corpus = LoadCorpusFor(env, map);
  const Featurizer f = FullFeaturizer(env, corpus);
  const FeatureTable table = f.Build(corpus, {}, env.threads);
  env.manifest.Write(env.Artifact("features.tsv"), table.Serialize());
  if (env.cfg.Bool("featurize.write_embeddings", false)) {
    const Json* stubs = env.cfg.Find("features.stub");
    for (std::size_t i = 0; stubs && i < stubs->size(); ++i) {
      const Json& s = (*stubs)[i];
      const std::string name = s.value("name", "stub");
      const auto dim = s.value("dim", std::uint64_t{64});
      const auto seed = s.value("seed", DeriveSeed(env.seed, "stub-encoder", i));
      env.manifest.Write(env.Artifact("embeddings-" + name + ".tsv"),
                         SerializeEmbeddings(StubEmbeddings(corpus, dim, seed)));
    }
  }
  Say(env, "featurize: " + std::to_string(table.rows()) + " x " + std::to_string(table.cols()));
}

void CmdTrain(Env& env) {
  LabelMap map = LoadLabelMapFor(env);
  const Corpus corpus = LoadCorpusFor(env, map);
  const Labeled rows = LabeledRows(corpus, SplitOf(env.cfg, "train.split", Split::kTrain), map);
  const FeatureTable x = FeaturesFor(env, corpus, rows.ids);
  const PipelineSpec spec = PipelineFor(env.cfg, x.cols());
  const FittedPipeline model = Fit(spec, x, rows.tags, map, DeriveSeed(env.seed, "fit"));
  env.manifest.Write(env.Artifact("model.txt"), SerializeModel(model));
  for (const auto& w : model.warnings()) Say(env, "warning: " + w);
  Say(env, "train: " + spec.ToString() + " on " + std::to_string(x.rows()) + " posts");
}

std::string SerializeCrossval(const PipelineSpec& spec, const CVPlan& plan,
                              const CVResult& r) {
  std::string out(kCrossvalFormat);
  out += "\npipeline\t" + spec.ToString();
  out += "\nfolds\t" + std::to_string(plan.folds);
  out += "\nrepeats\t" + std::to_string(plan.repeats);
  out += "\nmean\t" + FormatDouble(r.mean);
  out += "\nstd\t" + FormatDouble(r.std);
  out += "\n";
  for (std::size_t i = 0; i < r.fold_scores.size(); ++i) {
    out += "fold\t" + std::to_string(i / plan.folds) + "\t" + std::to_string(i % plan.folds) +
           "\t" + FormatDouble(r.fold_scores[i]) + "\n";
  }
  for (const auto& w : r.warnings) out += "warning\t" + EscapeField(w) + "\n";
  return out;
}

// Mean CV score from a crossval artifact.
std::optional<double> ReadCrossvalMean(const fs::path& path) {
  if (!fs::exists(path)) return std::nullopt;
  const auto lines = SplitLines(ReadFile(path));
  if (lines.empty() || lines[0] != kCrossvalFormat) {
    throw DataError(path.string() + " is not a crossval file");
  }
  for (const auto& line : lines) {
    const auto f = SplitOn(line, '\t');
    if (f.size() == 2 && f[0] == "mean") {
      if (auto v = ParseDouble(f[1])) return v;
    }
  }
  throw DataError(path.string() + " lacks a mean");
}

void CmdCrossval(Env& env) {
  LabelMap map = LoadLabelMapFor(env);
  const Corpus corpus = LoadCorpusFor(env, map);
  const Labeled rows = LabeledRows(corpus, SplitOf(env.cfg, "crossval.split", Split::kTrain), map);
  const FeatureTable x = FeaturesFor(env, corpus, rows.ids);
  const PipelineSpec spec = PipelineFor(env.cfg, x.cols());
  const CVPlan plan{env.cfg.Unsigned("cv.folds", 10), env.cfg.Unsigned("cv.repeats", 5), env.seed};
  const CVResult r = CrossValidate(spec, Matrix::FromTable(x), rows.tags, map, plan, env.threads);
  env.manifest.Write(env.Artifact("crossval.txt"), SerializeCrossval(spec, plan, r));
  Say(env, "crossval: " + spec.ToString() + " macro_f1_excl_green " + FormatDouble(r.mean) +
               " (std " + FormatDouble(r.std) + ")");
}

void CmdEvaluate(Env& env) {
  const FittedPipeline model = LoadModelFor(env);
  LabelMap map = model.label_map();
  const Corpus corpus = LoadCorpusFor(env, map);
  const Split split = SplitOf(env.cfg, "evaluate.split", Split::kTest);
  const Labeled rows = LabeledRows(corpus, split, map);
  const FeatureTable x = FeaturesFor(env, corpus, rows.ids);
  const MetricReport report = EvaluateHeldout(model, x, rows.tags, env.threads);
  env.manifest.Write(env.Artifact("metrics_" + std::string(SplitName(split)) + ".txt"),
                     SerializeMetricReport(report));
  Say(env, "evaluate (" + std::string(SplitName(split)) + "): macro_f1_excl_green " +
               FormatDouble(report.macro_f1_excl_green) + ", macro_f1_all " +
               FormatDouble(report.macro_f1_all));
}

void CmdAutoml(Env& env) {
  LabelMap map = LoadLabelMapFor(env);
  const Corpus corpus = LoadCorpusFor(env, map);
  const Labeled rows = LabeledRows(corpus, SplitOf(env.cfg, "automl.split", Split::kTrain), map);
  const FeatureTable x = FeaturesFor(env, corpus, rows.ids);
  SearchConfig sc;
  const RunConfig& c = env.cfg;
  sc.population_size = c.Unsigned("automl.population_size", sc.population_size);
  sc.per_candidate_timeout = c.Real("automl.per_candidate_timeout", sc.per_candidate_timeout);
  sc.total_budget = c.Real("automl.total_budget", sc.total_budget);
  sc.generations = c.Unsigned("automl.generations", sc.generations);
  sc.parsimony = c.Real("automl.parsimony", sc.parsimony);
  sc.mutation_rate = c.Real("automl.mutation_rate", sc.mutation_rate);
  sc.crossover_rate = c.Real("automl.crossover_rate", sc.crossover_rate);
  sc.max_components = c.Unsigned("automl.max_components", sc.max_components);
  sc.cv_folds = c.Unsigned("automl.cv_folds", sc.cv_folds);
  sc.cv_repeats = c.Unsigned("automl.cv_repeats", sc.cv_repeats);
  sc.seed = env.seed;
  sc.threads = env.threads;
  const SearchResult r = Search(sc, x, rows.tags, map);
  env.manifest.Write(env.Artifact("leaderboard.tsv"), SerializeLeaderboard(r.leaderboard));
  env.manifest.Write(env.Artifact("model.txt"), SerializeModel(r.best));
  std::string log;
  for (const auto& line : r.log) log += line + "\n";
  log += "evaluations\t" + std::to_string(r.evaluations) + "\n";
  env.manifest.Write(env.Artifact("automl_log.txt"), log);
  const auto& top = r.leaderboard.front();
  Say(env, "automl: best " + top.genome.ToString() + " fitness " + FormatDouble(top.penalized) +
               " after " + std::to_string(r.evaluations) + " evaluations");
}

void CmdMantel(Env& env) {
  LabelMap map = LoadLabelMapFor(env);
  const Corpus corpus = LoadCorpusFor(env, map);
  const Split split = SplitOf(env.cfg, "mantel.split", Split::kTrain);
  std::vector<std::string> ids = corpus.LabeledIds(split);
  const std::size_t cap = env.cfg.Unsigned("mantel.max_posts", 300);
  if (ids.size() > cap) ids.resize(cap);
  if (ids.size() < 3) throw DataError("the Mantel test needs at least 3 labeled posts");

  std::vector<std::string> names;
  if (const Json* spaces = env.cfg.Find("mantel.spaces")) {
    for (const auto& s : *spaces) names.push_back(s.get<std::string>());
  } else {
    const Featurizer all = FullFeaturizer(env, corpus);
    for (const auto& e : all.extractors()) {
      names.push_back(std::visit([](const auto& x) { return x.name; }, e));
    }
  }
  if (names.size() < 2) throw UsageError("config field 'mantel.spaces' needs at least two feature spaces");
  std::vector<DistanceMatrix> spaces;
  for (const auto& name : names) {
    Featurizer f = BuildFeaturizer(env, name);
    AddIngested(env, f, corpus, name);
    if (f.extractors().empty()) throw UsageError("mantel space '" + name + "' matches no extractor");
    spaces.push_back(PairwiseEuclidean(f.Build(corpus, ids, env.threads)));
  }
  const MantelGrid grid = ComputeMantelGrid(names, spaces, env.cfg.Unsigned("mantel.permutations", 999),
                                            DeriveSeed(env.seed, "mantel"), env.threads);
  env.manifest.Write(env.Artifact("mantel.tsv"), SerializeMantelGrid(grid));
  Say(env, "mantel: " + std::to_string(names.size()) + " spaces over " +
               std::to_string(ids.size()) + " posts");
}

void CmdImportance(Env& env) {
  const FittedPipeline model = LoadModelFor(env);
  LabelMap map = model.label_map();
  const Corpus corpus = LoadCorpusFor(env, map);
  const Labeled rows = LabeledRows(corpus, SplitOf(env.cfg, "importance.split", Split::kTest), map);
  const FeatureTable x = FeaturesFor(env, corpus, rows.ids);
  const std::string metric = env.cfg.String("importance.metric", "macro_f1_excl_green");
  ScoreMetric m;
  if (metric == "macro_f1_excl_green") m = ScoreMetric::kMacroF1ExclGreen;
  else if (metric == "macro_f1_all") m = ScoreMetric::kMacroF1All;
  else throw UsageError("config field 'importance.metric' must be macro_f1_excl_green or macro_f1_all");
  const ImportanceReport report =
      PermutationImportance(model, x, rows.tags, m, env.cfg.Unsigned("importance.repeats", 5),
                            DeriveSeed(env.seed, "importance"), env.threads);
  env.manifest.Write(env.Artifact("importance.tsv"), SerializeImportance(report));
  Say(env, "importance: top feature " + report.entries.front().name + " drop " +
               FormatDouble(report.entries.front().mean_drop));
}

void CmdExplain(Env& env) {
  const FittedPipeline model = LoadModelFor(env);
  LabelMap map = model.label_map();
  const Corpus corpus = LoadCorpusFor(env, map);
  if (HasIngested(env.cfg)) {
    throw UsageError("explain re-featurizes masked text and cannot use ingested embeddings");
  }
  const Featurizer f = BuildFeaturizer(env);
  std::vector<std::string> ids;
  if (const Json* list = env.cfg.Find("explain.ids")) {
    for (const auto& id : *list) ids.push_back(id.get<std::string>());
  } else {
    ids = corpus.LabeledIds(SplitOf(env.cfg, "explain.split", Split::kTest));
    const std::size_t cap = env.cfg.Unsigned("explain.max_posts", 5);
    if (ids.size() > cap) ids.resize(cap);
  }
  const std::string unk = env.cfg.String("explain.unk", std::string(kUnknownToken));
  std::vector<Explanation> out;
  for (const auto& id : ids) {
    out.push_back(MaskExplain(f, model, corpus.post(id).body_raw, id, unk, env.threads));
  }
  const std::string format = env.cfg.String("explain.format", "html");
  if (format != "html" && format != "markdown") {
    throw UsageError("config field 'explain.format' must be html or markdown");
  }
  env.manifest.Write(env.Artifact("attributions.tsv"), SerializeAttributions(out));
  env.manifest.Write(env.Artifact(format == "html" ? "highlight.html" : "highlight.md"),
                     EmitHighlightDoc(out, format == "html" ? HighlightFormat::kHtml
                                                            : HighlightFormat::kMarkdown));
  Say(env, "explain: " + std::to_string(out.size()) + " posts");
}

void CmdBaseline(Env& env) {
  std::vector<int> y;
  if (const Json* counts = env.cfg.Find("baseline.counts")) {
    std::vector<std::size_t> c;
    for (const auto& v : *counts) c.push_back(v.get<std::size_t>());
    y = LabelsFromCounts(c);
  } else {
    LabelMap map = LoadLabelMapFor(env);
    const Corpus corpus = LoadCorpusFor(env, map);
    for (const auto& id : corpus.LabeledIds(SplitOf(env.cfg, "baseline.split", Split::kTest))) {
      y.push_back(Ordinal(corpus.label(id)->coarse));
    }
  }
  const BaselineReport r = RandomBaseline(
      y, env.cfg.Unsigned("baseline.n_shuffles", 10000), env.cfg.Real("baseline.alpha", 0.05),
      env.cfg.Unsigned("baseline.n_tests", 8), DeriveSeed(env.seed, "baseline"), env.threads);
  env.manifest.Write(env.Artifact("baseline.txt"), SerializeBaselineReport(r));
  Say(env, "baseline: mean " + FormatDouble(r.mean) + ", rank-" +
               std::to_string(r.threshold_rank) + " threshold " + FormatDouble(r.threshold));
}

void CmdReport(Env& env) {
  const FittedPipeline model = LoadModelFor(env);
  auto read_metrics = [&](std::string_view name) -> std::optional<MetricReport> {
    const fs::path p = env.Artifact(name);
    if (!fs::exists(p)) return std::nullopt;
    env.manifest.AddInput(p);
    return ParseMetricReport(ReadFile(p));
  };
  BenchmarkEntry entry;
  std::string extractors;
  for (const auto& c : model.columns()) {
    if (extractors.find(c.extractor) == std::string::npos) {
      extractors += (extractors.empty() ? "" : "+") + c.extractor;
    }
  }
  entry.feature_set = extractors;
  entry.trainer = model.spec().ToString();
  entry.feature_count = model.columns().size();
  const fs::path cv_path = env.Artifact("crossval.txt");
  if (auto mean = ReadCrossvalMean(cv_path)) {
    env.manifest.AddInput(cv_path);
    entry.cv_score = *mean;
  }
  entry.test = read_metrics("metrics_test.txt");
  entry.external = read_metrics("metrics_external.txt");
  double threshold = 1.0;
  const fs::path bl = env.Artifact("baseline.txt");
  if (fs::exists(bl)) {
    env.manifest.AddInput(bl);
    threshold = ParseBaselineReport(ReadFile(bl)).threshold;
  }
  env.manifest.Write(env.Artifact("benchmark.tsv"),
                     EmitBenchmarkTable(std::span<const BenchmarkEntry>(&entry, 1), threshold));

  const fs::path imp = env.Artifact("importance.tsv");
  if (fs::exists(imp)) {
    env.manifest.AddInput(imp);
    const ImportanceReport importance = ParseImportance(ReadFile(imp));
    LabelMap map = model.label_map();
    const Corpus corpus = LoadCorpusFor(env, map);
    const Labeled rows = LabeledRows(corpus, SplitOf(env.cfg, "report.split", Split::kTest), map);
    const FeatureTable x = FeaturesFor(env, corpus, rows.ids);
    std::vector<Coarse> labels;
    for (const auto& tag : rows.tags) labels.push_back(map.Map(tag));
    const auto violin = EmitViolinData(x, labels, importance, env.cfg.Unsigned("report.top_k", 10));
    env.manifest.Write(env.Artifact("violin.tsv"), SerializeViolinData(violin));
  }
  Say(env, "report: wrote " + std::to_string(env.manifest.outputs().size()) + " files");
}

using Command = void (*)(Env&);

const std::map<std::string, Command, std::less<>>& Commands() {
  static const std::map<std::string, Command, std::less<>> commands = {
      {"ingest", CmdIngest},       {"featurize", CmdFeaturize}, {"train", CmdTrain},
      {"crossval", CmdCrossval},   {"evaluate", CmdEvaluate},   {"automl", CmdAutoml},
      {"mantel", CmdMantel},       {"importance", CmdImportance}, {"explain", CmdExplain},
      {"baseline", CmdBaseline},   {"synth", CmdSynth},         {"report", CmdReport},
  };
  return commands;
}

}  // namespace

const std::vector<std::string>& SubcommandNames() {
  static const std::vector<std::string> names = {
      "ingest", "featurize", "train", "crossval", "evaluate", "automl",
      "mantel", "importance", "explain", "baseline", "synth", "report"};
  return names;
}

void RunSubcommand(std::string_view name, const RunConfig& config, Manifest& manifest,
                   std::ostream& out) {
  const auto it = Commands().find(name);
  if (it == Commands().end()) throw UsageError("unknown subcommand '" + std::string(name) + "'");
  Env env{config, manifest, out, config.OutDir(), config.Seed(), config.Threads()};
  it->second(env);
}

}  // namespace triagekit::cli
