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

#ifndef USERSIM_EXPERIMENT_H_
#define USERSIM_EXPERIMENT_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "usersim/corpus.h"
#include "usersim/diagnostics.h"
#include "usersim/goal_metrics.h"
#include "usersim/lex_metrics.h"
#include "usersim/orchestrator.h"

namespace usersim {

struct DialogEvaluation {
  std::string id;
  Outcome outcome = Outcome::kCompleted;
  TerminationReason termination = TerminationReason::kNone;
  std::optional<std::string> failure;
  // Empty when the dialog could not be scored; `error` says why.
  std::optional<GoalEvalRecord> eval;
  std::optional<BreakdownFlags> flags;
  std::optional<std::string> error;
};

// Share of scored dialogs raising each flag.
struct FlagRates {
  double premature_termination = 0;
  double repetition = 0;
  double role_confusion = 0;
  double goal_contradiction = 0;
};

struct ExperimentResult {
  std::string run_id;
  Json config;  // snapshot the run was produced from
  std::vector<DialogEvaluation> dialogs;
  std::optional<GoalAggregate> goal_table;  // none when no dialog was scorable
  LexMetrics lex_table;                     // over all simulated user utterances
  FlagRates flag_rates;
};

// Scores every record. Per-dialog failures (e.g. MissingActs) are recorded
// on the dialog and excluded from the aggregates.
ExperimentResult EvaluateSessions(const std::vector<SessionRecord>& records, const EvalContext& ctx,
                                  const DiagnosticsConfig& diagnostics, const LexOptions& lex = {});

Json LexMetricsToJson(const LexMetrics& m);
LexMetrics LexMetricsFromJson(const Json& j);
Json GoalAggregateToJson(const GoalAggregate& a);
Json ResultToJson(const ExperimentResult& result);

// Transcript line: corpus dialog fields plus outcome, termination, failure,
// prompt hashes, raw completions, per-turn milliseconds and flags.
Json SessionToJson(const SessionRecord& record, const BreakdownFlags* flags);
SessionRecord SessionFromJson(const Json& j, const std::string& pointer);

void WriteTranscripts(const std::filesystem::path& path, const std::vector<SessionRecord>& records,
                      const ExperimentResult& result);
std::vector<SessionRecord> ReadTranscripts(const std::filesystem::path& path);

// Writes `text` to `path`, creating parent directories.
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

}  // namespace usersim

#endif  // USERSIM_EXPERIMENT_H_
