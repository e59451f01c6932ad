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

#ifndef USERSIM_ORCHESTRATOR_H_
#define USERSIM_ORCHESTRATOR_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "usersim/annotator.h"
#include "usersim/dialog.h"
#include "usersim/dialog_system.h"
#include "usersim/goalgen.h"
#include "usersim/llm_backend.h"
#include "usersim/prompt.h"
#include "usersim/shot_select.h"

namespace usersim {

struct RunConfig {
  size_t n_dialogs = 200;
  int max_turns = 20;
  uint64_t seed = 0;
  ShotStrategy shots;
  DescriptionKind description = DescriptionKind::kDefault;
  RequirementsFormat requirements_format = RequirementsFormat::kDescriptive;
  GenerationParams generation;
  // Extra attempts with the same prompt when a completion post-processes to
  // nothing.
  int empty_generation_retries = 1;
  std::vector<std::string> farewell_patterns = {"bye", "that is all", "that's all", "have a good day"};
  int parallelism = 1;
  GoalConfig goals;

  // Throws ConfigError.
  void Validate() const;
};

enum class TerminationReason { kNone, kUserFarewell, kDoubleFarewell, kMaxTurns };

std::string_view TerminationName(TerminationReason r);
TerminationReason ParseTermination(std::string_view name);

struct Termination {
  bool stop = false;
  TerminationReason reason = TerminationReason::kNone;
};

// Stops on (a) a farewell pattern in the user text, (b) a user bye act right
// after a system bye act, or (c) turn >= max_turns.
Termination CheckTermination(const std::vector<DialogActItem>& user_acts,
                             const std::vector<DialogActItem>& previous_system_acts,
                             std::string_view user_text, int turn, const RunConfig& config);

struct SessionRecord {
  Dialog dialog;
  std::vector<PromptState> prompt_trace;  // prompt behind each user turn
  std::vector<std::string> raw_completions;
  std::vector<double> turn_ms;
  TerminationReason termination = TerminationReason::kNone;
  std::optional<std::string> failure;
};

using BackendFactory = std::function<std::shared_ptr<CompletionBackend>(size_t dialog_index)>;

// Everything a run reads besides its config. All members must outlive the
// run; the system and backends must tolerate concurrent sessions.
struct RunResources {
  std::span<const Dialog> shot_pool;
  const Ontology* ontology = nullptr;
  const PhraseTable* phrases = nullptr;
  const TaskDescriptions* descriptions = nullptr;
  const Annotator* annotator = nullptr;
  BackendFactory backend;
  DialogSystem* system = nullptr;
};

// Goal of dialog `index`: drawn with seed + index.
UserGoal GoalForDialog(const RunConfig& config, const Ontology& ontology, size_t index);

// One simulated conversation. Backend and system errors end the dialog with
// GenerationFailure or SystemFailure; they never propagate.
SessionRecord RunDialog(const UserGoal& goal, size_t index, const RunConfig& config,
                        const RunResources& resources);

// n_dialogs conversations on up to `parallelism` threads, returned in index
// order.
std::vector<SessionRecord> RunDialogs(const RunConfig& config, const RunResources& resources);

}  // namespace usersim

#endif  // USERSIM_ORCHESTRATOR_H_
