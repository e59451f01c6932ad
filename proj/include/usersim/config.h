// Copyright 2026 The UserSim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef USERSIM_CONFIG_H_
#define USERSIM_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "usersim/annotator.h"
#include "usersim/corpus.h"
#include "usersim/diagnostics.h"
#include "usersim/dialog_system.h"
#include "usersim/lex_metrics.h"
#include "usersim/llm_backend.h"
#include "usersim/orchestrator.h"

namespace usersim {

struct BackendSpec {
  std::string kind = "replay";  // replay | echo | http
  std::filesystem::path fixture;
  std::optional<std::string> profile;
  HttpBackendConfig http;
};

struct SystemSpec {
  std::string kind = "mock";  // mock | http
  std::filesystem::path database;
  MockConfig mock;
  HttpSystemConfig http;
};

// A parsed run configuration. File layout:
//   {"backend": {...}, "system": {...}, "prompt": {...},
//    "shots": {...}, "goals": {...}, "run": {...}}
// Relative paths resolve against the config file's directory.
struct ExperimentConfig {
  RunConfig run;
  BackendSpec backend;
  SystemSpec system;
  std::filesystem::path shots_corpus;
  std::optional<std::filesystem::path> ontology;  // defaults to the shot corpus ontology
  std::optional<std::filesystem::path> task_descriptions;
  std::optional<std::filesystem::path> phrase_table;
  AnnotatorConfig annotator;
  DiagnosticsConfig diagnostics;
  LexOptions lex;

  // Fully resolved configuration (defaults filled, absolute paths).
  Json Snapshot() const;
  // Hex hash of the snapshot.
  std::string RunId() const;
};

struct ConfigOverrides {
  std::optional<uint64_t> seed;
  std::optional<size_t> n_dialogs;
};

// Throws ConfigError naming the offending key.
ExperimentConfig ExperimentConfigFromJson(const Json& j, const std::filesystem::path& base_dir);
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path, const ConfigOverrides& overrides = {});

}  // namespace usersim

#endif  // USERSIM_CONFIG_H_
