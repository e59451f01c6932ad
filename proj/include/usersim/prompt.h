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

#ifndef USERSIM_PROMPT_H_
#define USERSIM_PROMPT_H_

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "usersim/dialog.h"
#include "usersim/goalgen.h"

namespace usersim {

enum class DescriptionKind { kDefault, kDefaultDomains, kExtraPersonality, kMinimal, kNone };

std::string_view DescriptionKindName(DescriptionKind kind);
DescriptionKind ParseDescriptionKind(std::string_view name);

// Task description texts keyed by kind name. The default_domains text holds
// a "<domain names>" placeholder.
class TaskDescriptions {
 public:
  static TaskDescriptions Load(const std::filesystem::path& path);
  // The copy shipped in the data directory.
  static const TaskDescriptions& Builtin();

  const std::string& Text(DescriptionKind kind) const;

  // Throws MissingShotsForDomains for default_domains with no shots.
  std::string Render(DescriptionKind kind, std::span<const Dialog* const> shots) const;

 private:
  std::map<std::string, std::string> texts_;
};

struct PromptState {
  std::string text;
  int turn = 0;
  UserGoal target_goal;
  size_t frozen_prefix_len = 0;
};

inline constexpr std::string_view kUserCue = "CUSTOMER:";
inline constexpr std::string_view kSystemCue = "ASSISTANT:";

// Requirements of a shot: its stored requirements text when the format is
// descriptive and one exists, otherwise rendered from the goal.
std::string ShotRequirements(const Dialog& shot, RequirementsFormat format,
                             const PhraseTable& phrases);

// Description, then one "Example i:" block per shot, then the open target
// example ending in the "CUSTOMER:" cue. An empty description drops its
// paragraph. Throws EmptyShotDialog for shots without turns.
PromptState BuildInitialPrompt(std::string_view description, std::span<const Dialog* const> shots,
                               std::string_view target_requirements, RequirementsFormat format,
                               const PhraseTable& phrases, UserGoal target_goal = {});

// Appends " {user}\nASSISTANT: {system}\nCUSTOMER:". Throws
// EmptyUserUtterance when the user text is blank.
PromptState ExtendPrompt(const PromptState& state, std::string_view user_utterance,
                         std::string_view system_utterance);

}  // namespace usersim

#endif  // USERSIM_PROMPT_H_
