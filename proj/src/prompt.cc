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

#include "usersim/prompt.h"

#include <set>

#include "usersim/corpus.h"
#include "usersim/error.h"
#include "usersim/text.h"

namespace usersim {
namespace {

constexpr std::string_view kDomainPlaceholder = "<domain names>";

std::string RequirementsLine(std::string_view requirements, RequirementsFormat format) {
  if (format == RequirementsFormat::kBullets) return "REQUIREMENTS:\n" + std::string(requirements);
  return "REQUIREMENTS: " + std::string(requirements);
}

}  // namespace

std::string_view DescriptionKindName(DescriptionKind kind) {
  switch (kind) {
    case DescriptionKind::kDefault:
      return "default";
    case DescriptionKind::kDefaultDomains:
      return "default_domains";
    case DescriptionKind::kExtraPersonality:
      return "extra_personality";
    case DescriptionKind::kMinimal:
      return "minimal";
    case DescriptionKind::kNone:
      return "none";
  }
  return "none";
}

DescriptionKind ParseDescriptionKind(std::string_view name) {
  for (auto k : {DescriptionKind::kDefault, DescriptionKind::kDefaultDomains,
                 DescriptionKind::kExtraPersonality, DescriptionKind::kMinimal, DescriptionKind::kNone}) {
    if (DescriptionKindName(k) == name) return k;
  }
  throw Error(ErrorKind::kConfig, "unknown task description kind '" + std::string(name) + "'");
}

TaskDescriptions TaskDescriptions::Load(const std::filesystem::path& path) {
  const Json j = ReadJsonFile(path);
  TaskDescriptions out;
  for (auto k : {DescriptionKind::kDefault, DescriptionKind::kDefaultDomains,
                 DescriptionKind::kExtraPersonality, DescriptionKind::kMinimal, DescriptionKind::kNone}) {
    const std::string key(DescriptionKindName(k));
    if (!j.is_object() || !j.contains(key) || !j[key].is_string()) {
      throw Error(ErrorKind::kSchema, path.string() + ": missing string /" + key);
    }
    out.texts_[key] = j[key].get<std::string>();
  }
  if (out.texts_["default_domains"].find(kDomainPlaceholder) == std::string::npos) {
    throw Error(ErrorKind::kSchema, path.string() + ": default_domains lacks the <domain names> placeholder");
  }
  return out;
}

const TaskDescriptions& TaskDescriptions::Builtin() {
  static const TaskDescriptions kBuiltin =
      Load(std::filesystem::path(USERSIM_DATA_DIR) / "task_descriptions.json");
  return kBuiltin;
}

const std::string& TaskDescriptions::Text(DescriptionKind kind) const {
  return texts_.at(std::string(DescriptionKindName(kind)));
}

std::string TaskDescriptions::Render(DescriptionKind kind, std::span<const Dialog* const> shots) const {
  std::string text = Text(kind);
  if (kind != DescriptionKind::kDefaultDomains) return text;
  if (shots.empty()) {
    throw Error(ErrorKind::kMissingShotsForDomains, "default_domains needs at least one shot");
  }
  std::set<std::string> domains;
  for (const Dialog* shot : shots) {
    for (const auto& item : shot->goal.items) domains.insert(item.domain);
  }
  const std::vector<std::string> sorted(domains.begin(), domains.end());
  text.replace(text.find(kDomainPlaceholder), kDomainPlaceholder.size(), Join(sorted, ", "));
  return text;
}

std::string ShotRequirements(const Dialog& shot, RequirementsFormat format, const PhraseTable& phrases) {
  if (format == RequirementsFormat::kDescriptive && shot.goal.requirements_text) {
    return *shot.goal.requirements_text;
  }
  return RenderRequirements(shot.goal, format, phrases);
}

PromptState BuildInitialPrompt(std::string_view description, std::span<const Dialog* const> shots,
                               std::string_view target_requirements, RequirementsFormat format,
                               const PhraseTable& phrases, UserGoal target_goal) {
  std::string text;
  if (!description.empty()) {
    text += description;
    text += "\n\n";
  }
  size_t n = 0;
  for (const Dialog* shot : shots) {
    if (shot->turns.empty()) throw Error(ErrorKind::kEmptyShotDialog, "shot " + shot->id + " has no turns");
    text += "Example " + std::to_string(++n) + ":\n";
    text += RequirementsLine(ShotRequirements(*shot, format, phrases), format) + "\n\n";
    for (const auto& turn : shot->turns) {
      text += turn.speaker == Speaker::kUser ? kUserCue : kSystemCue;
      text += " " + turn.text + "\n";
    }
    text += "\n";
  }
  text += "Example " + std::to_string(n + 1) + ":\n";
  text += RequirementsLine(target_requirements, format) + "\n\n";
  text += kUserCue;

  PromptState state;
  state.frozen_prefix_len = text.size();
  state.text = std::move(text);
  state.target_goal = std::move(target_goal);
  return state;
}

PromptState ExtendPrompt(const PromptState& state, std::string_view user_utterance,
                         std::string_view system_utterance) {
  if (TrimWhitespace(user_utterance).empty()) {
    throw Error(ErrorKind::kEmptyUserUtterance, "cannot extend a prompt with an empty user utterance");
  }
  PromptState next = state;
  next.text += " ";
  next.text += user_utterance;
  next.text += "\n";
  next.text += kSystemCue;
  next.text += " ";
  next.text += system_utterance;
  next.text += "\n";
  next.text += kUserCue;
  ++next.turn;
  return next;
}

}  // namespace usersim
