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

#include "usersim/goalgen.h"

#include <algorithm>

#include "usersim/corpus.h"
#include "usersim/error.h"
#include "usersim/text.h"

namespace usersim {
namespace {

size_t UniformIndex(std::mt19937_64& rng, size_t n) {
  return std::uniform_int_distribution<size_t>(0, n - 1)(rng);
}

int UniformCount(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// First k elements of a seeded partial shuffle, in draw order.
std::vector<std::string> SampleWithoutReplacement(std::vector<std::string> pool, size_t k,
                                                  std::mt19937_64& rng) {
  k = std::min(k, pool.size());
  for (size_t i = 0; i < k; ++i) {
    const size_t j = i + UniformIndex(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

bool Contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

// Constraint templates keyed by slot; "{value}" is replaced.
const std::map<std::string, std::string>& ConstraintTemplates() {
  static const std::map<std::string, std::string> kTemplates = {
      {"food", "serve {value} food"},
      {"area", "be in the {value}"},
      {"pricerange", "be in the {value} price range"},
      {"stars", "have a star of {value}"},
      {"type", "be in the type of {value}"},
      {"departure", "depart from {value}"},
      {"destination", "go to {value}"},
      {"day", "leave on {value}"},
      {"leaveat", "leave after {value}"},
      {"arriveby", "arrive by {value}"},
      {"name", "be called {value}"},
  };
  return kTemplates;
}

const std::map<std::string, std::string>& BookingTemplates() {
  static const std::map<std::string, std::string> kTemplates = {
      {"people", "for {value} people"},
      {"day", "on {value}"},
      {"time", "at {value}"},
      {"stay", "for {value} nights"},
  };
  return kTemplates;
}

std::string Fill(std::string pattern, const std::string& value) {
  const std::string key = "{value}";
  for (size_t pos = pattern.find(key); pos != std::string::npos;
       pos = pattern.find(key, pos + value.size())) {
    pattern.replace(pos, key.size(), value);
  }
  return pattern;
}

std::string Article(const std::string& noun) {
  if (!noun.empty() && std::string("aeiou").find(noun[0]) != std::string::npos) return "an";
  return "a";
}

std::string ListPhrase(const std::vector<std::string>& parts) {
  if (parts.empty()) return "";
  if (parts.size() == 1) return parts[0];
  std::vector<std::string> head(parts.begin(), parts.end() - 1);
  return Join(head, ", ") + " and " + parts.back();
}

}  // namespace

void GoalConfig::Validate() const {
  auto check = [](int lo, int hi, const char* what) {
    if (lo < 0 || lo > hi) {
      throw Error(ErrorKind::kValidation, std::string(what) + ": min must be <= max and >= 0");
    }
  };
  check(domains_min, domains_max, "domains");
  check(informs_per_domain_min, informs_per_domain_max, "informs_per_domain");
  check(requests_per_domain_min, requests_per_domain_max, "requests_per_domain");
  if (domains_max < 1) throw Error(ErrorKind::kValidation, "domains_max must be at least 1");
  if (!(booking_probability >= 0.0 && booking_probability <= 1.0)) {
    throw Error(ErrorKind::kValidation, "booking_probability must lie in [0, 1]");
  }
}

UserGoal GenerateGoal(const Ontology& ontology, const GoalConfig& config, std::mt19937_64& rng) {
  config.Validate();
  if (ontology.empty()) throw Error(ErrorKind::kEmptyOntology, "cannot generate goals from an empty ontology");

  std::vector<std::string> domains;
  for (const auto& [d, unused] : ontology.domains()) domains.push_back(d);
  const int n_domains = std::min(UniformCount(rng, config.domains_min, config.domains_max),
                                 static_cast<int>(domains.size()));

  UserGoal goal;
  for (const auto& domain : SampleWithoutReplacement(domains, static_cast<size_t>(n_domains), rng)) {
    const auto& slots = ontology.domains().at(domain);
    std::vector<std::string> informable, requestable;
    for (const auto& [slot, values] : slots) {
      if (Contains(config.requestable_slots, slot)) {
        requestable.push_back(slot);
      } else if (!values.empty() && !ontology.IsBookable(domain, slot) &&
                 !Contains(config.non_informable_slots, slot)) {
        informable.push_back(slot);
      }
    }
    const int n_inform = UniformCount(rng, config.informs_per_domain_min, config.informs_per_domain_max);
    for (const auto& slot : SampleWithoutReplacement(informable, static_cast<size_t>(n_inform), rng)) {
      const auto& values = slots.at(slot);
      goal.items.emplace_back(Intent::Inform(), domain, slot, values[UniformIndex(rng, values.size())]);
    }
    const int n_request = UniformCount(rng, config.requests_per_domain_min, config.requests_per_domain_max);
    for (const auto& slot : SampleWithoutReplacement(requestable, static_cast<size_t>(n_request), rng)) {
      goal.items.emplace_back(Intent::Request(), domain, slot, "");
    }
    const auto& bookable = ontology.BookableSlots(domain);
    if (!bookable.empty() && std::bernoulli_distribution(config.booking_probability)(rng)) {
      for (const auto& slot : bookable) {
        const auto& values = ontology.Values(domain, slot);
        if (values.empty()) continue;
        goal.items.emplace_back(Intent::Book(), domain, slot, values[UniformIndex(rng, values.size())]);
      }
    }
  }
  return goal;
}

PhraseTable PhraseTable::Load(const std::filesystem::path& path) {
  const Json j = ReadJsonFile(path);
  if (!j.is_object()) throw Error(ErrorKind::kSchema, path.string() + ": expected {domain: {slot: phrase}}");
  std::map<std::string, std::map<std::string, std::string>> table;
  for (const auto& [domain, slots] : j.items()) {
    if (!slots.is_object()) throw Error(ErrorKind::kSchema, path.string() + ": /" + domain + " must be an object");
    for (const auto& [slot, phrase] : slots.items()) {
      if (!phrase.is_string()) {
        throw Error(ErrorKind::kSchema, path.string() + ": /" + domain + "/" + slot + " must be a string");
      }
      table[domain == "*" ? domain : NormalizeText(domain)][NormalizeText(slot)] = phrase.get<std::string>();
    }
  }
  return PhraseTable(std::move(table));
}

std::optional<std::string> PhraseTable::Find(std::string_view domain, std::string_view slot) const {
  const std::string s = NormalizeText(slot);
  for (const std::string& d : {NormalizeText(domain), std::string("*")}) {
    auto it = table_.find(d);
    if (it == table_.end()) continue;
    if (auto p = it->second.find(s); p != it->second.end()) return p->second;
  }
  return std::nullopt;
}

std::string PhraseTable::PhraseOr(std::string_view domain, std::string_view slot) const {
  auto p = Find(domain, slot);
  return p ? *p : std::string(slot);
}

std::string_view RequirementsFormatName(RequirementsFormat f) {
  return f == RequirementsFormat::kBullets ? "bullets" : "descriptive";
}

RequirementsFormat ParseRequirementsFormat(std::string_view name) {
  if (name == "descriptive") return RequirementsFormat::kDescriptive;
  if (name == "bullets") return RequirementsFormat::kBullets;
  throw Error(ErrorKind::kConfig, "unknown requirements format '" + std::string(name) + "'");
}

std::vector<std::string> RequirementSentences(const UserGoal& goal, const PhraseTable& phrases,
                                              std::vector<std::string>* warnings) {
  auto phrase_of = [&](const DialogActItem& item) {
    if (auto p = phrases.Find(item.domain, item.slot)) return *p;
    if (warnings != nullptr) {
      warnings->push_back("UnknownSlotPhrase: no phrase for " + item.domain + "." + item.slot);
    }
    return item.slot;
  };

  std::vector<std::string> sentences;
  std::string current_domain;
  const auto& items = goal.items;
  for (size_t i = 0; i < items.size();) {
    const auto& item = items[i];
    if (item.domain != current_domain) {
      current_domain = item.domain;
      sentences.push_back("You are looking for " + Article(item.domain) + " " + item.domain + ".");
    }
    const auto kind = item.intent.kind();
    // Runs of requests or bookings within one domain collapse to one sentence.
    size_t run_end = i + 1;
    while (run_end < items.size() && items[run_end].domain == item.domain &&
           items[run_end].intent == item.intent) {
      ++run_end;
    }
    if (kind == Intent::Kind::kInform) {
      std::string verb;
      if (auto t = ConstraintTemplates().find(NormalizeText(item.slot)); t != ConstraintTemplates().end()) {
        verb = Fill(t->second, item.value);
      } else {
        verb = "have " + phrase_of(item) + " " + item.value;
      }
      sentences.push_back("The " + item.domain + " should " + verb + ".");
      ++i;
      continue;
    }
    if (kind == Intent::Kind::kRequest) {
      std::vector<std::string> names;
      for (size_t k = i; k < run_end; ++k) names.push_back(phrase_of(items[k]));
      sentences.push_back("Once you find the " + item.domain + ", make sure you get " +
                          ListPhrase(names) + ".");
    } else if (kind == Intent::Kind::kBook) {
      std::vector<std::string> parts;
      for (size_t k = i; k < run_end; ++k) {
        const auto& b = items[k];
        if (auto t = BookingTemplates().find(NormalizeText(b.slot)); t != BookingTemplates().end()) {
          parts.push_back(Fill(t->second, b.value));
        } else {
          parts.push_back("with " + phrase_of(b) + " " + b.value);
        }
      }
      sentences.push_back("Once you find the " + item.domain + " you want to book it " +
                          Join(parts, " ") + ".");
    }
    i = run_end;
  }
  return sentences;
}

std::string RenderRequirements(const UserGoal& goal, RequirementsFormat format,
                               const PhraseTable& phrases, std::vector<std::string>* warnings) {
  const auto sentences = RequirementSentences(goal, phrases, warnings);
  if (format == RequirementsFormat::kDescriptive) return Join(sentences, " ");
  std::vector<std::string> lines;
  for (const auto& s : sentences) lines.push_back("- " + s);
  return Join(lines, "\n");
}

}  // namespace usersim
