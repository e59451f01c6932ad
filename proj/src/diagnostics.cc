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

#include "usersim/diagnostics.h"

#include "usersim/text.h"

namespace usersim {

bool DetectPrematureTermination(const SessionRecord& record, const GoalEvalRecord& eval) {
  if (record.dialog.outcome != Outcome::kCompleted) return false;
  if (record.termination != TerminationReason::kUserFarewell &&
      record.termination != TerminationReason::kDoubleFarewell) {
    return false;
  }
  return eval.complete == 0 || eval.inform.recall < 1.0;
}

std::optional<int> DetectRepetition(const SessionRecord& record, size_t k) {
  std::string previous;
  size_t run = 0;
  int run_start = 0;
  for (const auto& turn : record.dialog.turns) {
    if (turn.speaker != Speaker::kUser) continue;
    std::string norm = NormalizeText(turn.text);
    if (run > 0 && norm == previous) {
      ++run;
    } else {
      run = 1;
      run_start = turn.index;
      previous = std::move(norm);
    }
    if (run >= k) return run_start;
  }
  return std::nullopt;
}

std::optional<int> DetectRoleConfusion(const SessionRecord& record,
                                       const std::vector<std::string>& assistant_phrases) {
  std::vector<int> user_turns;
  for (const auto& turn : record.dialog.turns) {
    if (turn.speaker == Speaker::kUser) user_turns.push_back(turn.index);
  }
  std::optional<int> hit;
  for (size_t i = 0; i < record.raw_completions.size(); ++i) {
    if (record.raw_completions[i].find("ASSISTANT:") != std::string::npos) {
      hit = user_turns.empty() ? 0 : user_turns[std::min(i, user_turns.size() - 1)];
      break;
    }
  }
  for (const auto& turn : record.dialog.turns) {
    if (turn.speaker != Speaker::kUser) continue;
    if (hit && *hit <= turn.index) break;
    for (const auto& phrase : assistant_phrases) {
      if (ContainsPhrase(turn.text, phrase)) return turn.index;
    }
  }
  return hit;
}

std::vector<GoalContradiction> DetectGoalContradictions(const SessionRecord& record, const UserGoal& goal) {
  std::vector<GoalContradiction> out;
  for (const auto& turn : record.dialog.turns) {
    if (turn.speaker != Speaker::kUser || !turn.acts) continue;
    for (const auto& act : *turn.acts) {
      if (act.intent.kind() != Intent::Kind::kInform) continue;
      for (const auto& item : goal.items) {
        const auto kind = item.intent.kind();
        if (kind != Intent::Kind::kInform && kind != Intent::Kind::kBook) continue;
        if (item.domain != act.domain || NormalizeText(item.slot) != NormalizeText(act.slot)) continue;
        if (!ValuesMatch(item.value, act.value)) {
          out.push_back({turn.index, act.domain, NormalizeText(act.slot), item.value, act.value});
        }
      }
    }
  }
  return out;
}

BreakdownFlags Diagnose(const SessionRecord& record, const GoalEvalRecord& eval, const DiagnosticsConfig& config) {
  BreakdownFlags flags;
  flags.premature_termination = DetectPrematureTermination(record, eval);
  flags.repetition_turn = DetectRepetition(record, config.repetition_k);
  flags.role_confusion_turn = DetectRoleConfusion(record, config.assistant_phrases);
  flags.goal_contradictions = DetectGoalContradictions(record, record.dialog.goal);
  return flags;
}

}  // namespace usersim
