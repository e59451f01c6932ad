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

#ifndef USERSIM_GOALGEN_H_
#define USERSIM_GOALGEN_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "usersim/dialog.h"

namespace usersim {

struct GoalConfig {
  int domains_min = 1;
  int domains_max = 3;
  int informs_per_domain_min = 1;
  int informs_per_domain_max = 3;
  int requests_per_domain_min = 1;
  int requests_per_domain_max = 2;
  double booking_probability = 0.5;
  uint64_t seed = 0;
  // Slots a user asks for rather than constrains.
  std::vector<std::string> requestable_slots = {"address", "phone", "postcode", "price",
                                                "duration"};
  // Slots never used as constraints (entity identifiers, booking refs).
  std::vector<std::string> non_informable_slots = {"name", "ref", "trainid"};

  // Throws ValidationError on min > max or a probability outside [0, 1].
  void Validate() const;
};

// Random goal: domains in sampled order, each contributing inform items,
// then request items, then (with booking_probability) one book item per
// bookable slot. Every value is drawn uniformly from the ontology. Counts
// are capped by what the ontology offers for the domain.
UserGoal GenerateGoal(const Ontology& ontology, const GoalConfig& config, std::mt19937_64& rng);

// Surface phrases for slots ("pricerange" -> "price range"). File format:
// {domain: {slot: phrase}}; the domain key "*" supplies defaults for every
// domain.
class PhraseTable {
 public:
  PhraseTable() = default;
  explicit PhraseTable(std::map<std::string, std::map<std::string, std::string>> table)
      : table_(std::move(table)) {}

  static PhraseTable Load(const std::filesystem::path& path);

  std::optional<std::string> Find(std::string_view domain, std::string_view slot) const;
  // Find() or the raw slot token.
  std::string PhraseOr(std::string_view domain, std::string_view slot) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> table_;
};

enum class RequirementsFormat { kDescriptive, kBullets };

std::string_view RequirementsFormatName(RequirementsFormat f);
RequirementsFormat ParseRequirementsFormat(std::string_view name);

// Requirement sentences in goal order:
//   "You are looking for a restaurant."
//   "The restaurant should serve italian food."
//   "Once you find the restaurant, make sure you get phone number and postcode."
//   "Once you find the restaurant you want to book it for 2 people on monday."
// A slot with neither a built-in template nor a phrase is rendered with its
// raw token and reported through `warnings` (UnknownSlotPhrase).
std::vector<std::string> RequirementSentences(const UserGoal& goal, const PhraseTable& phrases,
                                              std::vector<std::string>* warnings = nullptr);

// Descriptive: sentences joined by single spaces. Bullets: one "- " line per
// sentence.
std::string RenderRequirements(const UserGoal& goal, RequirementsFormat format,
                               const PhraseTable& phrases,
                               std::vector<std::string>* warnings = nullptr);

}  // namespace usersim

#endif  // USERSIM_GOALGEN_H_
