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

#ifndef USERSIM_DIALOG_H_
#define USERSIM_DIALOG_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace usersim {

// Dialog-act intent. The four core intents get their own kind; anything else
// (recommend, nooffer, reqmore, ...) is kept verbatim as kOther so corpora
// round-trip without loss.
class Intent {
 public:
  enum class Kind { kInform, kRequest, kBook, kBye, kOther };

  Intent() : Intent(Kind::kInform) {}
  explicit Intent(Kind kind);

  // Canonicalizes the token; unknown tokens become kOther.
  static Intent Parse(std::string_view token);

  static Intent Inform() { return Intent(Kind::kInform); }
  static Intent Request() { return Intent(Kind::kRequest); }
  static Intent Book() { return Intent(Kind::kBook); }
  static Intent Bye() { return Intent(Kind::kBye); }

  Kind kind() const { return kind_; }
  const std::string& token() const { return token_; }

  friend bool operator==(const Intent& a, const Intent& b) { return a.token_ == b.token_; }
  friend auto operator<=>(const Intent& a, const Intent& b) { return a.token_ <=> b.token_; }

 private:
  Kind kind_;
  std::string token_;
};

// One (intent, domain, slot, value) semantic action.
struct DialogActItem {
  Intent intent;
  std::string domain;
  std::string slot;
  std::string value;

  DialogActItem() = default;
  // Intent and domain are canonicalized; slot and value are kept as given so
  // corpus text round-trips exactly. Matching goes through ActsMatch.
  DialogActItem(Intent intent, std::string_view domain, std::string slot,
                std::string value);

  // Throws ValidationError if the item breaks the per-intent invariants.
  void Validate() const;

  friend bool operator==(const DialogActItem&, const DialogActItem&) = default;
  friend auto operator<=>(const DialogActItem&, const DialogActItem&) = default;
};

DialogActItem MakeAct(std::string_view intent, std::string_view domain,
                      std::string slot = "", std::string value = "");

// Field-wise equality after NormalizeText.
bool ActsMatch(const DialogActItem& a, const DialogActItem& b);

// Normalized equality of two slot values.
bool ValuesMatch(std::string_view a, std::string_view b);

std::string ToString(const DialogActItem& act);

struct UserGoal {
  std::vector<DialogActItem> items;
  std::optional<std::string> requirements_text;

  // Non-empty, every item well-formed, and no (domain, slot) pair carried by
  // more than one inform/book item.
  void Validate() const;

  friend bool operator==(const UserGoal&, const UserGoal&) = default;
};

enum class Speaker { kUser, kSystem };

std::string_view SpeakerName(Speaker s);
Speaker ParseSpeaker(std::string_view name);

struct Turn {
  Speaker speaker = Speaker::kUser;
  std::string text;
  std::optional<std::vector<DialogActItem>> acts;
  int index = 0;

  friend bool operator==(const Turn&, const Turn&) = default;
};

enum class Outcome { kCompleted, kMaxTurns, kGenerationFailure, kSystemFailure };

std::string_view OutcomeName(Outcome o);
Outcome ParseOutcome(std::string_view name);

struct Dialog {
  std::string id;
  UserGoal goal;
  std::vector<Turn> turns;
  Outcome outcome = Outcome::kCompleted;

  // Alternation (USER first) and strictly increasing turn indices.
  void ValidateTurns() const;
  int UserTurnCount() const;

  friend bool operator==(const Dialog&, const Dialog&) = default;
};

// Closed vocabulary of domains, slots and values. Keys are canonical
// (NormalizeText); values keep their surface form.
class Ontology {
 public:
  using SlotMap = std::map<std::string, std::vector<std::string>>;

  Ontology() = default;
  Ontology(std::map<std::string, SlotMap> domains,
           std::map<std::string, std::vector<std::string>> bookable_slots);

  const std::map<std::string, SlotMap>& domains() const { return domains_; }
  const std::map<std::string, std::vector<std::string>>& bookable_slots() const {
    return bookable_;
  }

  bool empty() const { return domains_.empty(); }
  bool HasDomain(std::string_view domain) const;
  bool HasSlot(std::string_view domain, std::string_view slot) const;
  bool HasValue(std::string_view domain, std::string_view slot, std::string_view value) const;
  bool IsBookable(std::string_view domain, std::string_view slot) const;
  // Empty when the domain or slot is unknown.
  const std::vector<std::string>& Values(std::string_view domain, std::string_view slot) const;
  const std::vector<std::string>& BookableSlots(std::string_view domain) const;

  // Adds a value if it is not already present (used when deriving an
  // ontology from a corpus).
  void AddValue(std::string_view domain, std::string_view slot, std::string_view value);
  void AddSlot(std::string_view domain, std::string_view slot);
  void AddBookable(std::string_view domain, std::string_view slot);

  // Description of every token of `act` the ontology cannot resolve; empty
  // when the act is fully known. Requests and byes only need domain/slot.
  std::vector<std::string> UnknownTokens(const DialogActItem& act) const;

  friend bool operator==(const Ontology&, const Ontology&) = default;

 private:
  std::map<std::string, SlotMap> domains_;
  std::map<std::string, std::vector<std::string>> bookable_;
};

}  // namespace usersim

#endif  // USERSIM_DIALOG_H_
