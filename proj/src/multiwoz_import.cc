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

#include <map>
#include <regex>
#include <set>

#include "usersim/corpus.h"
#include "usersim/error.h"
#include "usersim/text.h"

namespace usersim {
namespace {

// Act slot abbreviations used in MultiWOZ dialog_act annotations, mapped to
// the slot names used by goals.
std::string CanonicalActSlot(const std::string& domain, const std::string& raw) {
  static const std::map<std::string, std::string> kCommon = {
      {"addr", "address"},      {"post", "postcode"},   {"dest", "destination"},
      {"depart", "departure"},  {"leave", "leaveat"},   {"arrive", "arriveby"},
      {"fee", "entrance fee"},  {"car", "car type"},    {"none", ""},
  };
  static const std::map<std::string, std::string> kTrain = {
      {"ticket", "price"}, {"price", "price"}, {"time", "duration"}, {"id", "trainid"},
  };
  const std::string slot = NormalizeText(raw);
  if (domain == "train") {
    if (auto it = kTrain.find(slot); it != kTrain.end()) return it->second;
  } else if (slot == "price") {
    return "pricerange";
  }
  if (auto it = kCommon.find(slot); it != kCommon.end()) return it->second;
  return slot;
}

std::string ScalarToString(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

std::string StripMarkup(const std::string& html) {
  static const std::regex kTag("<[^>]*>");
  return std::regex_replace(html, kTag, "");
}

std::string GoalMessage(const Json& message) {
  std::vector<std::string> parts;
  if (message.is_string()) {
    parts.push_back(message.get<std::string>());
  } else if (message.is_array()) {
    for (const auto& m : message) {
      if (m.is_string()) parts.push_back(m.get<std::string>());
    }
  }
  std::vector<std::string> words;
  for (const auto& p : parts) {
    for (auto& w : SplitWhitespace(StripMarkup(p))) words.push_back(std::move(w));
  }
  return Join(words, " ");
}

bool IsEmptyValue(const std::string& v) {
  const std::string n = NormalizeText(v);
  return n.empty() || n == "none" || n == "?";
}

struct RawDialogResult {
  std::optional<Dialog> dialog;
  std::string skip_reason;
};

RawDialogResult ConvertDialog(const std::string& id, const Json& raw, Ontology* derived,
                              const Ontology* reference, std::vector<std::string>* unknown) {
  RawDialogResult result;
  if (!raw.is_object()) {
    result.skip_reason = "dialog entry is not an object";
    return result;
  }
  auto log_it = raw.find("log");
  if (log_it == raw.end() || !log_it->is_array() || log_it->empty()) {
    result.skip_reason = "empty log";
    return result;
  }
  auto goal_it = raw.find("goal");
  if (goal_it == raw.end() || !goal_it->is_object()) {
    result.skip_reason = "missing goal";
    return result;
  }

  Dialog d;
  d.id = id;
  std::vector<std::pair<std::string, std::string>> bookable;
  for (const auto& [domain_key, block] : goal_it->items()) {
    if (domain_key == "message" || domain_key == "topic") continue;
    if (!block.is_object() || block.empty()) continue;
    const std::string domain = NormalizeText(domain_key);
    if (auto info = block.find("info"); info != block.end() && info->is_object()) {
      for (const auto& [slot, value] : info->items()) {
        d.goal.items.emplace_back(Intent::Inform(), domain, NormalizeText(slot), ScalarToString(value));
      }
    }
    if (auto reqt = block.find("reqt"); reqt != block.end()) {
      if (reqt->is_array()) {
        for (const auto& slot : *reqt) {
          d.goal.items.emplace_back(Intent::Request(), domain, NormalizeText(ScalarToString(slot)), "");
        }
      } else if (reqt->is_object()) {
        for (const auto& [slot, unused] : reqt->items()) {
          d.goal.items.emplace_back(Intent::Request(), domain, NormalizeText(slot), "");
        }
      }
    }
    if (auto book = block.find("book"); book != block.end() && book->is_object()) {
      for (const auto& [slot, value] : book->items()) {
        if (slot == "invalid" || slot == "pre_invalid") continue;
        d.goal.items.emplace_back(Intent::Book(), domain, NormalizeText(slot), ScalarToString(value));
        bookable.emplace_back(domain, NormalizeText(slot));
      }
    }
  }
  if (auto msg = goal_it->find("message"); msg != goal_it->end()) {
    std::string text = GoalMessage(*msg);
    if (!text.empty()) d.goal.requirements_text = std::move(text);
  }
  if (d.goal.items.empty()) {
    result.skip_reason = "goal has no domain blocks";
    return result;
  }
  try {
    d.goal.Validate();
  } catch (const Error& e) {
    result.skip_reason = e.what();
    return result;
  }
  if (reference != nullptr) {
    for (const auto& item : d.goal.items) {
      if (!reference->UnknownTokens(item).empty()) {
        result.skip_reason = "goal item " + ToString(item) + " outside the reference ontology";
        return result;
      }
    }
  }

  const Json& log = *log_it;
  for (size_t i = 0; i < log.size(); ++i) {
    const Json& entry = log[i];
    Turn t;
    t.index = static_cast<int>(i);
    t.speaker = (i % 2 == 0) ? Speaker::kUser : Speaker::kSystem;
    if (!entry.is_object() || !entry.contains("text") || !entry["text"].is_string()) {
      result.skip_reason = "log entry " + std::to_string(i) + " has no text";
      return result;
    }
    t.text = TrimWhitespace(entry["text"].get<std::string>());
    if (t.text.empty()) {
      result.skip_reason = "log entry " + std::to_string(i) + " has empty text";
      return result;
    }
    std::vector<DialogActItem> acts;
    if (auto da = entry.find("dialog_act"); da != entry.end() && da->is_object()) {
      for (const auto& [key, pairs] : da->items()) {
        const auto dash = key.find('-');
        if (dash == std::string::npos || !pairs.is_array()) {
          unknown->push_back(id + "/" + std::to_string(i) + ": act:" + key);
          continue;
        }
        const std::string domain = NormalizeText(key.substr(0, dash));
        const Intent intent = Intent::Parse(key.substr(dash + 1));
        for (const auto& pair : pairs) {
          if (!pair.is_array() || pair.size() != 2) continue;
          std::string slot = CanonicalActSlot(domain, ScalarToString(pair[0]));
          std::string value = ScalarToString(pair[1]);
          if (IsEmptyValue(value) || intent.kind() == Intent::Kind::kRequest) value.clear();
          DialogActItem act(intent, domain, slot, value);
          try {
            act.Validate();
          } catch (const Error&) {
            unknown->push_back(id + "/" + std::to_string(i) + ": malformed act " + ToString(act));
            continue;
          }
          acts.push_back(std::move(act));
        }
      }
    }
    t.acts = std::move(acts);
    d.turns.push_back(std::move(t));
  }

  // Dialog accepted: account for its vocabulary.
  if (reference == nullptr) {
    for (const auto& item : d.goal.items) {
      if (item.value.empty()) {
        derived->AddSlot(item.domain, item.slot);
      } else {
        derived->AddValue(item.domain, item.slot, item.value);
      }
    }
    for (const auto& [dom, slot] : bookable) derived->AddBookable(dom, slot);
    for (const auto& t : d.turns) {
      for (const auto& a : *t.acts) {
        if (a.domain == "general" || a.slot.empty()) continue;
        const auto k = a.intent.kind();
        if ((k == Intent::Kind::kInform || k == Intent::Kind::kBook) && !a.value.empty()) {
          derived->AddValue(a.domain, a.slot, a.value);
        } else {
          derived->AddSlot(a.domain, a.slot);
        }
      }
    }
  } else {
    for (const auto& t : d.turns) {
      for (const auto& a : *t.acts) {
        for (auto& tok : reference->UnknownTokens(a)) {
          unknown->push_back(id + "/" + std::to_string(t.index) + ": " + tok);
        }
      }
    }
  }
  result.dialog = std::move(d);
  return result;
}

}  // namespace

ImportResult ImportMultiwozJson(const Json& raw, const Ontology* reference) {
  if (!raw.is_object()) throw Error(ErrorKind::kSchema, "/: expected an object of dialogs");
  ImportResult result;
  Ontology derived;
  for (const auto& [id, entry] : raw.items()) {
    auto converted = ConvertDialog(id, entry, &derived, reference, &result.corpus.unknown_tokens);
    if (converted.dialog) {
      result.corpus.dialogs.push_back(std::move(*converted.dialog));
    } else {
      result.skipped.push_back({id, converted.skip_reason});
    }
  }
  result.corpus.ontology = reference != nullptr ? *reference : std::move(derived);
  return result;
}

ImportResult ImportMultiwoz(const std::filesystem::path& raw_path, const Ontology* reference) {
  ImportResult result = ImportMultiwozJson(ReadJsonFile(raw_path), reference);
  const std::string stem = raw_path.stem().string();
  if (stem.find("train") != std::string::npos) {
    result.corpus.split = Split::kTrain;
  } else if (stem.find("val") != std::string::npos || stem.find("dev") != std::string::npos) {
    result.corpus.split = Split::kDev;
  } else if (stem.find("test") != std::string::npos) {
    result.corpus.split = Split::kTest;
  }
  return result;
}

}  // namespace usersim
