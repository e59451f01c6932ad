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

#ifndef USERSIM_DIAGNOSTICS_H_
#define USERSIM_DIAGNOSTICS_H_

#include <optional>
#include <string>
#include <vector>

#include "usersim/goal_metrics.h"
#include "usersim/orchestrator.h"

namespace usersim {

struct DiagnosticsConfig {
  size_t repetition_k = 3;
  std::vector<std::string> assistant_phrases = {"reference number is", "booking was successful",
                                                "thank you for contacting"};
};

struct GoalContradiction {
  int turn = 0;  // dialog turn index
  std::string domain;
  std::string slot;
  std::string goal_value;
  std::string uttered_value;
};

struct BreakdownFlags {
  bool premature_termination = false;
  std::optional<int> repetition_turn;  // turn index starting the run
  std::optional<int> role_confusion_turn;
  std::vector<GoalContradiction> goal_contradictions;

  bool repetition() const { return repetition_turn.has_value(); }
  bool role_confusion() const { return role_confusion_turn.has_value(); }
};

// Completed through a user farewell while the goal is incomplete or some
// requested slot was never answered.
bool DetectPrematureTermination(const SessionRecord& record, const GoalEvalRecord& eval);

// Turn index of the first of >= k consecutive identical (normalized) user
// utterances.
std::optional<int> DetectRepetition(const SessionRecord& record, size_t k = 3);

// Turn index of the first user turn whose raw completion carried an
// "ASSISTANT:" continuation or whose text reads like the assistant.
std::optional<int> DetectRoleConfusion(const SessionRecord& record,
                                       const std::vector<std::string>& assistant_phrases);

// User informs whose value differs from the goal's value for the same slot.
std::vector<GoalContradiction> DetectGoalContradictions(const SessionRecord& record, const UserGoal& goal);

BreakdownFlags Diagnose(const SessionRecord& record, const GoalEvalRecord& eval,
                        const DiagnosticsConfig& config = {});

}  // namespace usersim

#endif  // USERSIM_DIAGNOSTICS_H_
