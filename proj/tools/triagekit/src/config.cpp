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

#include "triagekit_cli/config.hpp"

#include <cstdio>

#include "triagekit/common/error.hpp"
#include "triagekit/common/io.hpp"
#include "triagekit/common/rng.hpp"
#include "triagekit/common/text.hpp"

namespace triagekit::cli {
namespace {

std::string Quote(std::string_view key) { return "'" + std::string(key) + "'"; }

}  // namespace

RunConfig::RunConfig(Json root, std::filesystem::path base_dir)
    : root_(std::move(root)), base_dir_(std::move(base_dir)) {
  if (!root_.is_object()) throw UsageError("config root must be a JSON object");
}

RunConfig RunConfig::Load(const std::filesystem::path& path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const DataError&) {
    throw UsageError("cannot read config file " + path.string());
  }
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return RunConfig(std::move(root), path.parent_path());
}

const Json* RunConfig::Find(std::string_view dotted_key) const {
  const Json* node = &root_;
  for (auto part : SplitOn(dotted_key, '.')) {
    if (!node->is_object()) return nullptr;
    const auto it = node->find(std::string(part));
    if (it == node->end()) return nullptr;
    node = &*it;
  }
  return node->is_null() ? nullptr : node;
}

bool RunConfig::Has(std::string_view dotted_key) const { return Find(dotted_key) != nullptr; }

void RunConfig::SetValue(std::string_view dotted_key, Json value) {
  const auto parts = SplitOn(dotted_key, '.');
  Json* node = &root_;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) throw UsageError("bad config key " + Quote(dotted_key));
    if (!node->is_object()) *node = Json::object();
    node = &(*node)[std::string(parts[i])];
  }
  *node = std::move(value);
}

void RunConfig::Set(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw UsageError("--set expects key=value, got " + Quote(assignment));
  }
  const std::string raw(assignment.substr(eq + 1));
  Json value = Json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  SetValue(assignment.substr(0, eq), std::move(value));
}

std::string RunConfig::String(std::string_view key, std::string fallback) const {
  const Json* v = Find(key);
  if (!v) return fallback;
  if (!v->is_string()) throw UsageError("config field " + Quote(key) + " must be a string");
  return v->get<std::string>();
}

std::optional<std::string> RunConfig::OptString(std::string_view key) const {
  if (!Has(key)) return std::nullopt;
  return String(key, {});
}

std::uint64_t RunConfig::Unsigned(std::string_view key, std::uint64_t fallback) const {
  const Json* v = Find(key);
  if (!v) return fallback;
  if (v->is_number_unsigned()) return v->get<std::uint64_t>();
  if (v->is_number_integer() && v->get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v->get<std::int64_t>());
  }
  throw UsageError("config field " + Quote(key) + " must be a non-negative integer");
}

double RunConfig::Real(std::string_view key, double fallback) const {
  const Json* v = Find(key);
  if (!v) return fallback;
  if (!v->is_number()) throw UsageError("config field " + Quote(key) + " must be a number");
  return v->get<double>();
}

bool RunConfig::Bool(std::string_view key, bool fallback) const {
  const Json* v = Find(key);
  if (!v) return fallback;
  if (!v->is_boolean()) throw UsageError("config field " + Quote(key) + " must be true or false");
  return v->get<bool>();
}

std::filesystem::path RunConfig::Resolve(const std::string& p) const {
  std::filesystem::path path(p);
  if (path.is_absolute() || base_dir_.empty()) return path;
  return base_dir_ / path;
}

std::optional<std::filesystem::path> RunConfig::OptPath(std::string_view key,
                                                        bool must_exist) const {
  const auto s = OptString(key);
  if (!s) return std::nullopt;
  if (s->empty()) throw UsageError("config field " + Quote(key) + " is empty");
  auto path = Resolve(*s);
  if (must_exist && !std::filesystem::exists(path)) {
    throw UsageError("config field " + Quote(key) + " names a missing file: " + path.string());
  }
  return path;
}

std::filesystem::path RunConfig::Path(std::string_view key, bool must_exist) const {
  auto p = OptPath(key, must_exist);
  if (!p) throw UsageError("config field " + Quote(key) + " is required");
  return *p;
}

std::uint64_t RunConfig::Seed() const {
  if (!Has("seed")) throw UsageError("config field 'seed' is required (or pass --seed)");
  return Unsigned("seed", 0);
}

int RunConfig::Threads() const {
  const auto t = Unsigned("threads", 1);
  if (t < 1 || t > 1024) throw UsageError("config field 'threads' must lie in 1..1024");
  return static_cast<int>(t);
}

std::filesystem::path RunConfig::OutDir() const {
  const auto s = OptString("out");
  if (!s || s->empty()) throw UsageError("config field 'out' is required (or pass --out)");
  return Resolve(*s);
}

std::string RunConfig::Hash() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(Fnv1a64(root_.dump())));
  return buf;
}

}  // namespace triagekit::cli
