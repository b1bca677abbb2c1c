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

#include "triagekit_cli/app.hpp"

#include <algorithm>
#include <chrono>
#include <exception>

#include <CLI11.hpp>

#include "triagekit/common/error.hpp"
#include "triagekit/common/io.hpp"
#include "triagekit_cli/commands.hpp"
#include "triagekit_cli/config.hpp"

namespace triagekit::cli {
namespace {

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage: return kExitUsage;
    case ErrorKind::kData: return kExitData;
    case ErrorKind::kRuntime: return kExitRuntime;
  }
  return kExitRuntime;
}

const char* Describe(const std::string& name) {
  static const std::map<std::string, const char*> help = {
      {"ingest", "validate a corpus and write it in canonical form"},
      {"featurize", "write the post-level feature table"},
      {"train", "fit a pipeline on the training split"},
      {"crossval", "repeated stratified cross-validation on the training split"},
      {"evaluate", "score a trained model on a held-out split"},
      {"automl", "evolutionary pipeline search"},
      {"mantel", "Mantel tests between feature spaces"},
      {"importance", "permutation feature importance"},
      {"explain", "token-masking explanations"},
      {"baseline", "shuffled-label chance baseline"},
      {"synth", "generate a planted synthetic corpus"},
      {"report", "benchmark table and violin-plot data"},
  };
  return help.at(name);
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Offline benchmarking of forum-post triage classifiers"};
  app.name("triagekit");
  app.require_subcommand(1, 1);
  app.fallthrough();
  std::string config_path;
  std::string seed;
  std::string threads;
  std::string out_dir;
  std::vector<std::string> sets;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--seed", seed, "master seed (overrides the config)");
  app.add_option("--threads", threads, "worker threads (default 1)");
  app.add_option("--out", out_dir, "output directory (overrides the config)");
  app.add_option("--set", sets, "override a config field, key.path=value")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  for (const auto& name : SubcommandNames()) app.add_subcommand(name, Describe(name));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "triagekit: " << e.what() << "\n";
    return kExitUsage;
  }
  const std::string sub = app.get_subcommands().front()->get_name();

  const auto start = std::chrono::steady_clock::now();
  try {
    RunConfig cfg = config_path.empty() ? RunConfig(Json::object(), {})
                                        : RunConfig::Load(config_path);
    for (const auto& s : sets) cfg.Set(s);
    if (!seed.empty()) cfg.Set("seed=" + seed);
    if (!threads.empty()) cfg.Set("threads=" + threads);
    if (!out_dir.empty()) {
      cfg.SetValue("out", std::filesystem::absolute(out_dir).lexically_normal().string());
    }

    Manifest manifest;
    RunSubcommand(sub, cfg, manifest, out);

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Json doc = manifest.ToJson();
    doc["subcommand"] = sub;
    doc["version"] = TRIAGEKIT_VERSION;
    doc["seed"] = cfg.Seed();
    doc["threads"] = cfg.Threads();
    doc["config"] = cfg.root();
    doc["config_hash"] = cfg.Hash();
    doc["wall_seconds"] = wall;
    WriteFileAtomic(cfg.OutDir() / ("manifest-" + sub + ".json"), doc.dump(2) + "\n");
    return kExitOk;
  } catch (const Error& e) {
    err << "triagekit " << sub << ": " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "triagekit " << sub << ": " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace triagekit::cli
