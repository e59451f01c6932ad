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

#include "usersim/annotator.h"

#include <algorithm>
#include <set>
#include <utility>

#include "usersim/text.h"

namespace usersim {
namespace {

const std::map<std::string, std::vector<std::string>>& DomainAliases() {
  static const std::map<std::string, std::vector<std::string>> kAliases = {
      {"restaurant", {"place to eat", "places to eat"}},
      {"hotel", {"place to stay", "places to stay"}},
      {"train", {"ticket", "tickets"}},
      {"taxi", {"cab"}},
  };
  return kAliases;
}

const std::vector<std::pair<std::string, std::vector<std::string>>>& RequestPatterns() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> kPatterns = {
      {"phone", {"phone number", "phone", "telephone number", "telephone"}},
      {"postcode", {"postcode", "post code", "postal code"}},
      {"address", {"address"}},
      {"price", {"price", "how much"}},
      {"duration", {"duration", "how long", "travel time"}},
      {"trainid", {"train id", "train number"}},
      {"entrance fee", {"entrance fee"}},
  };
  return kPatterns;
}

// Cue words that pick one slot among several sharing a value.
struct SlotCue {
  std::string slot;
  std::vector<std::string> before;  // token right before the value
  std::vector<std::string> after;   // token right after the value
};

const std::vector<SlotCue>& SlotCues() {
  static const std::vector<SlotCue> kCues = {
      {"people", {}, {"people", "persons", "person", "guests", "tickets", "seats"}},
      {"stay", {}, {"nights", "night", "days"}},
      {"stars", {}, {"star", "stars"}},
      {"departure", {"from"}, {}},
      {"destination", {"to"}, {}},
      {"leaveat", {"after"}, {}},
      {"arriveby", {"by", "before"}, {}},
  };
  return kCues;
}

bool HasCue(const SlotCue& cue, const std::vector<std::string>& tokens, size_t begin, size_t end) {
  if (begin > 0 && std::count(cue.before.begin(), cue.before.end(), tokens[begin - 1]) > 0) return true;
  return end < tokens.size() && std::count(cue.after.begin(), cue.after.end(), tokens[end]) > 0;
}

bool SpanFree(const std::vector<bool>& used, size_t begin, size_t end) {
  for (size_t i = begin; i < end; ++i) {
    if (used[i]) return false;
  }
  return true;
}

}  // namespace

Annotator::Annotator(const Ontology& ontology, AnnotatorConfig config)
    : ontology_(ontology), config_(std::move(config)) {
  for (const auto& [domain, unused] : ontology_.domains()) {
    auto& cues = domain_cues_[domain];
    cues.push_back(NormalizedTokens(domain));
    cues.push_back(NormalizedTokens(domain + "s"));
    if (auto it = DomainAliases().find(domain); it != DomainAliases().end()) {
      for (const auto& alias : it->second) cues.push_back(NormalizedTokens(alias));
    }
  }
  std::map<std::vector<std::string>, std::vector<ValueEntry>> by_form;
  for (const auto& [domain, slots] : ontology_.domains()) {
    for (const auto& [slot, values] : slots) {
      for (const auto& value : values) {
        auto tokens = NormalizedTokens(value);
        if (!tokens.empty()) by_form[std::move(tokens)].push_back({domain, slot, value});
      }
    }
  }
  for (auto& [tokens, entries] : by_form) forms_.push_back({tokens, std::move(entries)});
  std::stable_sort(forms_.begin(), forms_.end(), [](const SurfaceForm& a, const SurfaceForm& b) {
    return a.tokens.size() > b.tokens.size();
  });
  for (const auto& f : config_.farewells) farewells_.push_back(NormalizedTokens(f));
}

std::vector<DialogActItem> Annotator::Annotate(std::string_view utterance, Speaker speaker,
                                               std::string_view active_domain) const {
  const auto tokens = NormalizedTokens(utterance);
  std::vector<DialogActItem> acts;
  if (tokens.empty()) return acts;

  std::vector<std::string> mentioned;
  for (const auto& [domain, cues] : domain_cues_) {
    for (const auto& cue : cues) {
      if (ContainsTokenRun(tokens, cue)) {
        mentioned.push_back(domain);
        break;
      }
    }
  }
  std::vector<std::string> candidates = mentioned;
  if (candidates.empty() && !active_domain.empty() && ontology_.HasDomain(active_domain)) {
    candidates.push_back(NormalizeText(active_domain));
  }
  if (candidates.empty()) {
    for (const auto& [domain, unused] : ontology_.domains()) candidates.push_back(domain);
  }
  auto is_candidate = [&](const std::string& d) {
    return std::find(candidates.begin(), candidates.end(), d) != candidates.end();
  };

  const bool booking_context =
      speaker == Speaker::kSystem &&
      (ContainsPhrase(utterance, "booking was successful") || ContainsPhrase(utterance, "booked") ||
       ContainsPhrase(utterance, "reference number"));

  std::vector<std::pair<size_t, DialogActItem>> found;
  std::vector<bool> used(tokens.size(), false);
  for (const auto& form : forms_) {
    std::vector<const ValueEntry*> options;
    std::set<std::string> domains;
    for (const auto& entry : form.entries) {
      if (!is_candidate(entry.domain)) continue;
      options.push_back(&entry);
      domains.insert(entry.domain);
    }
    if (options.empty()) continue;
    const auto& needle = form.tokens;
    for (size_t pos = FindTokenRun(tokens, needle); pos != std::string_view::npos;
         pos = FindTokenRun(tokens, needle, pos + 1)) {
      const size_t end = pos + needle.size();
      if (!SpanFree(used, pos, end)) continue;
      for (size_t i = pos; i < end; ++i) used[i] = true;
      if (domains.size() > 1) continue;
      const ValueEntry* hit = options[0];
      if (options.size() > 1) {
        std::vector<const ValueEntry*> cued;
        for (const ValueEntry* entry : options) {
          for (const auto& cue : SlotCues()) {
            if (cue.slot == entry->slot && HasCue(cue, tokens, pos, end)) cued.push_back(entry);
          }
        }
        if (cued.size() != 1) continue;
        hit = cued[0];
      }
      const Intent intent = booking_context && ontology_.IsBookable(hit->domain, hit->slot)
                                ? Intent::Book()
                                : Intent::Inform();
      found.emplace_back(pos, DialogActItem(intent, hit->domain, hit->slot, hit->value));
    }
  }

  if (speaker == Speaker::kUser) {
    // Slot names that contain a request word ("price range") never ask for it.
    for (const char* blocked : {"price range", "pricerange"}) {
      const auto needle = NormalizedTokens(blocked);
      for (size_t pos = FindTokenRun(tokens, needle); pos != std::string_view::npos;
           pos = FindTokenRun(tokens, needle, pos + 1)) {
        for (size_t i = pos; i < pos + needle.size(); ++i) used[i] = true;
      }
    }
    for (const auto& [slot, patterns] : RequestPatterns()) {
      for (const auto& pattern : patterns) {
        const auto needle = NormalizedTokens(pattern);
        size_t pos = FindTokenRun(tokens, needle);
        while (pos != std::string_view::npos && !SpanFree(used, pos, pos + needle.size())) {
          pos = FindTokenRun(tokens, needle, pos + 1);
        }
        if (pos == std::string_view::npos) continue;
        std::string domain;
        auto pick = [&](const std::vector<std::string>& pool) {
          std::vector<std::string> with_slot;
          for (const auto& d : pool) {
            if (ontology_.HasSlot(d, slot)) with_slot.push_back(d);
          }
          if (with_slot.size() == 1) domain = with_slot[0];
          return !with_slot.empty();
        };
        if (!pick(mentioned)) {
          std::vector<std::string> active;
          if (!active_domain.empty()) active.push_back(NormalizeText(active_domain));
          if (!pick(active)) {
            std::vector<std::string> all;
            for (const auto& [d, unused] : ontology_.domains()) all.push_back(d);
            pick(all);
          }
        }
        for (size_t i = pos; i < pos + needle.size(); ++i) used[i] = true;
        if (!domain.empty()) found.emplace_back(pos, DialogActItem(Intent::Request(), domain, slot, ""));
        break;
      }
    }
  }

  std::stable_sort(found.begin(), found.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [pos, act] : found) {
    if (std::find(acts.begin(), acts.end(), act) == acts.end()) acts.push_back(std::move(act));
  }
  if (config_.farewell_patterns) {
    for (const auto& f : farewells_) {
      if (ContainsTokenRun(tokens, f)) {
        acts.push_back(DialogActItem(Intent::Bye(), "general", "", ""));
        break;
      }
    }
  }
  return acts;
}

std::vector<DialogActItem> AnnotateActs(std::string_view utterance, const Ontology& ontology,
                                        Speaker speaker) {
  return Annotator(ontology).Annotate(utterance, speaker);
}

}  // namespace usersim
