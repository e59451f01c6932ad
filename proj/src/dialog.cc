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

#include "usersim/dialog.h"

#include <algorithm>
#include <set>
#include <utility>

#include "usersim/error.h"
#include "usersim/text.h"

namespace usersim {
namespace {

// Domain used by acts that do not belong to any ontology domain (bye,
// greetings, reqmore).
constexpr std::string_view kGeneralDomain = "general";

const std::vector<std::string>& EmptyList() {
  static const std::vector<std::string> kEmpty;
  return kEmpty;
}

}  // namespace

Intent::Intent(Kind kind) : kind_(kind) {
  switch (kind) {
    case Kind::kInform: token_ = "inform"; break;
    case Kind::kRequest: token_ = "request"; break;
    case Kind::kBook: token_ = "book"; break;
    case Kind::kBye: token_ = "bye"; break;
    case Kind::kOther: token_ = "other"; break;
  }
}

Intent Intent::Parse(std::string_view token) {
  std::string canon = NormalizeText(token);
  if (canon == "inform") return Inform();
  if (canon == "request") return Request();
  if (canon == "book") return Book();
  if (canon == "bye") return Bye();
  Intent out(Kind::kOther);
  out.token_ = std::move(canon);
  return out;
}

DialogActItem::DialogActItem(Intent intent_in, std::string_view domain_in,
                             std::string slot_in, std::string value_in)
    : intent(std::move(intent_in)),
      domain(NormalizeText(domain_in)),
      slot(std::move(slot_in)),
      value(std::move(value_in)) {}

void DialogActItem::Validate() const {
  if (intent.token().empty()) throw Error(ErrorKind::kValidation, "act has an empty intent");
  if (domain.empty()) throw Error(ErrorKind::kValidation, "act has an empty domain: " + ToString(*this));
  switch (intent.kind()) {
    case Intent::Kind::kRequest:
      if (!value.empty()) {
        throw Error(ErrorKind::kValidation, "request act carries a value: " + ToString(*this));
      }
      if (slot.empty()) throw Error(ErrorKind::kValidation, "request act without slot");
      break;
    case Intent::Kind::kInform:
    case Intent::Kind::kBook:
      if (slot.empty()) {
        throw Error(ErrorKind::kValidation, "inform/book act without slot: " + ToString(*this));
      }
      break;
    default:
      break;
  }
}

DialogActItem MakeAct(std::string_view intent, std::string_view domain, std::string slot,
                      std::string value) {
  return DialogActItem(Intent::Parse(intent), domain, std::move(slot), std::move(value));
}

bool ValuesMatch(std::string_view a, std::string_view b) {
  return NormalizeText(a) == NormalizeText(b);
}

bool ActsMatch(const DialogActItem& a, const DialogActItem& b) {
  return a.intent == b.intent && ValuesMatch(a.domain, b.domain) &&
         ValuesMatch(a.slot, b.slot) && ValuesMatch(a.value, b.value);
}

std::string ToString(const DialogActItem& act) {
  return "(" + act.intent.token() + "," + act.domain + "," + act.slot + "," + act.value + ")";
}

void UserGoal::Validate() const {
  if (items.empty()) throw Error(ErrorKind::kValidation, "user goal has no items");
  std::set<std::pair<std::string, std::string>> constrained;
  for (const auto& item : items) {
    item.Validate();
    const auto k = item.intent.kind();
    if (k == Intent::Kind::kInform || k == Intent::Kind::kBook) {
      if (!constrained.emplace(item.domain, NormalizeText(item.slot)).second) {
        throw Error(ErrorKind::kValidation,
                    "goal constrains " + item.domain + "." + item.slot + " more than once");
      }
    }
  }
}

std::string_view SpeakerName(Speaker s) { return s == Speaker::kUser ? "USER" : "SYSTEM"; }

Speaker ParseSpeaker(std::string_view name) {
  if (name == "USER") return Speaker::kUser;
  if (name == "SYSTEM") return Speaker::kSystem;
  throw Error(ErrorKind::kSchema, "unknown speaker '" + std::string(name) + "'");
}

std::string_view OutcomeName(Outcome o) {
  switch (o) {
    case Outcome::kCompleted: return "Completed";
    case Outcome::kMaxTurns: return "MaxTurns";
    case Outcome::kGenerationFailure: return "GenerationFailure";
    case Outcome::kSystemFailure: return "SystemFailure";
  }
  return "Completed";
}

Outcome ParseOutcome(std::string_view name) {
  for (Outcome o : {Outcome::kCompleted, Outcome::kMaxTurns, Outcome::kGenerationFailure,
                    Outcome::kSystemFailure}) {
    if (OutcomeName(o) == name) return o;
  }
  throw Error(ErrorKind::kSchema, "unknown outcome '" + std::string(name) + "'");
}

void Dialog::ValidateTurns() const {
  for (size_t i = 0; i < turns.size(); ++i) {
    const Speaker expected = (i % 2 == 0) ? Speaker::kUser : Speaker::kSystem;
    if (turns[i].speaker != expected) {
      throw Error(ErrorKind::kValidation,
                  "dialog " + id + ": turn " + std::to_string(i) + " should be spoken by " +
                      std::string(SpeakerName(expected)));
    }
    if (i > 0 && turns[i].index <= turns[i - 1].index) {
      throw Error(ErrorKind::kValidation, "dialog " + id + ": turn indices not increasing");
    }
  }
}

int Dialog::UserTurnCount() const {
  return static_cast<int>(std::count_if(turns.begin(), turns.end(),
                                        [](const Turn& t) { return t.speaker == Speaker::kUser; }));
}

Ontology::Ontology(std::map<std::string, SlotMap> domains,
                   std::map<std::string, std::vector<std::string>> bookable_slots) {
  for (auto& [domain, slots] : domains) {
    for (auto& [slot, values] : slots) {
      AddSlot(domain, slot);
      for (auto& v : values) AddValue(domain, slot, v);
    }
    if (slots.empty()) domains_[NormalizeText(domain)];
  }
  for (auto& [domain, slots] : bookable_slots) {
    for (auto& s : slots) AddBookable(domain, s);
  }
}

bool Ontology::HasDomain(std::string_view domain) const {
  return domains_.count(NormalizeText(domain)) > 0;
}

bool Ontology::HasSlot(std::string_view domain, std::string_view slot) const {
  auto d = domains_.find(NormalizeText(domain));
  return d != domains_.end() && d->second.count(NormalizeText(slot)) > 0;
}

const std::vector<std::string>& Ontology::Values(std::string_view domain,
                                                 std::string_view slot) const {
  auto d = domains_.find(NormalizeText(domain));
  if (d == domains_.end()) return EmptyList();
  auto s = d->second.find(NormalizeText(slot));
  return s == d->second.end() ? EmptyList() : s->second;
}

bool Ontology::HasValue(std::string_view domain, std::string_view slot,
                        std::string_view value) const {
  const std::string canon = NormalizeText(value);
  for (const auto& v : Values(domain, slot)) {
    if (NormalizeText(v) == canon) return true;
  }
  return false;
}

bool Ontology::IsBookable(std::string_view domain, std::string_view slot) const {
  const auto& slots = BookableSlots(domain);
  return std::find(slots.begin(), slots.end(), NormalizeText(slot)) != slots.end();
}

const std::vector<std::string>& Ontology::BookableSlots(std::string_view domain) const {
  auto it = bookable_.find(NormalizeText(domain));
  return it == bookable_.end() ? EmptyList() : it->second;
}

void Ontology::AddValue(std::string_view domain, std::string_view slot, std::string_view value) {
  auto& values = domains_[NormalizeText(domain)][NormalizeText(slot)];
  const std::string canon = NormalizeText(value);
  for (const auto& v : values) {
    if (NormalizeText(v) == canon) return;
  }
  values.emplace_back(value);
}

void Ontology::AddSlot(std::string_view domain, std::string_view slot) {
  domains_[NormalizeText(domain)][NormalizeText(slot)];
}

void Ontology::AddBookable(std::string_view domain, std::string_view slot) {
  auto& slots = bookable_[NormalizeText(domain)];
  std::string canon = NormalizeText(slot);
  if (std::find(slots.begin(), slots.end(), canon) == slots.end()) slots.push_back(canon);
}

std::vector<std::string> Ontology::UnknownTokens(const DialogActItem& act) const {
  std::vector<std::string> unknown;
  if (act.domain == kGeneralDomain) return unknown;
  if (!HasDomain(act.domain)) {
    unknown.push_back("domain:" + act.domain);
    return unknown;
  }
  if (act.slot.empty()) return unknown;
  if (!HasSlot(act.domain, act.slot)) {
    unknown.push_back("slot:" + act.domain + "." + NormalizeText(act.slot));
    return unknown;
  }
  const auto k = act.intent.kind();
  if ((k == Intent::Kind::kInform || k == Intent::Kind::kBook) && !act.value.empty() &&
      !HasValue(act.domain, act.slot, act.value)) {
    unknown.push_back("value:" + act.domain + "." + NormalizeText(act.slot) + "=" + act.value);
  }
  return unknown;
}

}  // namespace usersim
