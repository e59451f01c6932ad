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

#ifndef USERSIM_COMMANDS_H_
#define USERSIM_COMMANDS_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "usersim/config.h"
#include "usersim/error.h"
#include "usersim/experiment.h"
#include "usersim/goalgen.h"
#include "usersim/orchestrator.h"
#include "usersim/prompt.h"

namespace usersim {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBackendUnreachable = 3;

int ExitCodeFor(const Error& e);

// Everything a configured run needs, loaded from disk.
struct PreparedRun {
  ExperimentConfig config;
  Corpus shots;
  Ontology ontology;
  PhraseTable phrases;
  TaskDescriptions descriptions;
  std::unique_ptr<Annotator> annotator;
  std::shared_ptr<MockDatabase> database;  // mock system only
  std::unique_ptr<DialogSystem> system;
  BackendFactory backend;

  RunResources Resources() const;
  EvalContext Context() const;
};

// Throws ConfigError for unreadable or inconsistent inputs.
std::unique_ptr<PreparedRun> PrepareRun(const ExperimentConfig& config);

struct RunOutput {
  std::string run_id;
  std::filesystem::path dir;
  std::vector<SessionRecord> records;
  ExperimentResult result;
};

// Runs, scores and writes transcripts.jsonl, result.json, report.md and
// timing.json under out_root/<run id>/.
RunOutput ExecuteRun(const ExperimentConfig& config, const std::filesystem::path& out_root);

int CmdRun(const std::filesystem::path& config_path, const ConfigOverrides& overrides,
           const std::filesystem::path& out_root, std::ostream& out, std::ostream& err);

// Re-scores saved transcripts. Config (database, diagnostics, lexical
// options, run id) comes from the sibling result.json when present. Writes
// result.evaluated.json next to the transcripts unless `out_path` is set.
int CmdEvaluate(const std::filesystem::path& transcripts, const std::filesystem::path& corpus,
                const std::optional<std::filesystem::path>& database,
                const std::optional<std::filesystem::path>& out_path, std::ostream& out, std::ostream& err);

int CmdReport(const std::filesystem::path& results, const std::string& format, std::ostream& out,
              std::ostream& err);

struct LexdivOptions {
  size_t segment = 50;
  size_t hdd_sample = 42;
  // Sampled baseline instead of the whole input (corpus input only).
  bool baseline = false;
  size_t repetitions = 1000;
  size_t per_repetition = 200;
  uint64_t seed = 0;
  int parallelism = 1;
};

// Input: corpus JSON (user turns), transcripts JSONL (user turns) or plain
// text with one utterance per line.
int CmdLexdiv(const std::filesystem::path& input, const LexdivOptions& options, std::ostream& out,
              std::ostream& err);

int CmdGenGoals(const std::filesystem::path& ontology, size_t n, uint64_t seed, const std::string& format,
                std::ostream& out, std::ostream& err);

int CmdImportMultiwoz(const std::filesystem::path& in, const std::filesystem::path& out_path,
                      const std::optional<std::filesystem::path>& reference_ontology, std::ostream& out,
                      std::ostream& err);

}  // namespace usersim

#endif  // USERSIM_COMMANDS_H_
