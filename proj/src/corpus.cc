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

#include "usersim/corpus.h"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "json_util.h"
#include "usersim/error.h"
#include "usersim/text.h"

namespace usersim {
namespace {

void CheckGoalAgainstOntology(const Dialog& d, const Ontology& ontology) {
  for (const auto& item : d.goal.items) {
    const auto k = item.intent.kind();
    bool ok = true;
    if (k == Intent::Kind::kInform || k == Intent::Kind::kBook) {
      ok = ontology.HasValue(item.domain, item.slot, item.value);
    } else if (k == Intent::Kind::kRequest) {
      ok = ontology.HasSlot(item.domain, item.slot);
    }
    if (!ok) {
      throw Error(ErrorKind::kValidation,
                  "dialog " + d.id + ": goal item " + ToString(item) + " is not in the ontology");
    }
  }
}

}  // namespace

std::string_view SplitName(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
    case Split::kUnspecified: return "unspecified";
  }
  return "unspecified";
}

Split ParseSplit(std::string_view name) {
  for (Split s : {Split::kTrain, Split::kDev, Split::kTest, Split::kUnspecified}) {
    if (SplitName(s) == name) return s;
  }
  throw Error(ErrorKind::kSchema, "/split: unknown split '" + std::string(name) + "'");
}

Json ActToJson(const DialogActItem& act) {
  return Json::array({act.intent.token(), act.domain, act.slot, act.value});
}

DialogActItem ActFromJson(const Json& j, const std::string& pointer) {
  if (!j.is_array() || j.size() != 4) SchemaFail(pointer, "expected [intent, domain, slot, value]");
  for (size_t i = 0; i < 4; ++i) RequireString(j[i], Child(pointer, i));
  return MakeAct(j[0].get<std::string>(), j[1].get<std::string>(), j[2].get<std::string>(),
                 j[3].get<std::string>());
}

Json ActsToJson(const std::optional<std::vector<DialogActItem>>& acts) {
  if (!acts) return nullptr;
  Json out = Json::array();
  for (const auto& a : *acts) out.push_back(ActToJson(a));
  return out;
}

std::optional<std::vector<DialogActItem>> ActsFromJson(const Json& j, const std::string& pointer) {
  if (j.is_null()) return std::nullopt;
  RequireArray(j, pointer);
  std::vector<DialogActItem> acts;
  for (size_t i = 0; i < j.size(); ++i) acts.push_back(ActFromJson(j[i], Child(pointer, i)));
  return acts;
}

Json GoalToJson(const UserGoal& goal) {
  Json items = Json::array();
  for (const auto& it : goal.items) {
    items.push_back(Json{{"intent", it.intent.token()},
                         {"domain", it.domain},
                         {"slot", it.slot},
                         {"value", it.value}});
  }
  Json out;
  out["items"] = std::move(items);
  out["requirements_text"] = goal.requirements_text ? Json(*goal.requirements_text) : Json(nullptr);
  return out;
}

UserGoal GoalFromJson(const Json& j, const std::string& pointer) {
  UserGoal goal;
  const std::string items_ptr = Child(pointer, "items");
  const Json& items = RequireArray(RequireField(j, "items", pointer), items_ptr);
  for (size_t i = 0; i < items.size(); ++i) {
    const std::string p = Child(items_ptr, i);
    goal.items.push_back(MakeAct(StringField(items[i], "intent", p),
                                 StringField(items[i], "domain", p),
                                 StringField(items[i], "slot", p),
                                 StringField(items[i], "value", p)));
  }
  const Json& req = RequireField(j, "requirements_text", pointer);
  if (!req.is_null()) goal.requirements_text = RequireString(req, Child(pointer, "requirements_text"));
  return goal;
}

Json TurnsToJson(const std::vector<Turn>& turns) {
  Json out = Json::array();
  for (const auto& t : turns) {
    out.push_back(Json{{"speaker", std::string(SpeakerName(t.speaker))},
                       {"text", t.text},
                       {"acts", ActsToJson(t.acts)}});
  }
  return out;
}

std::vector<Turn> TurnsFromJson(const Json& j, const std::string& pointer) {
  RequireArray(j, pointer);
  std::vector<Turn> turns;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string p = Child(pointer, i);
    Turn t;
    const std::string speaker = StringField(j[i], "speaker", p);
    try {
      t.speaker = ParseSpeaker(speaker);
    } catch (const Error&) {
      SchemaFail(Child(p, "speaker"), "expected \"USER\" or \"SYSTEM\"");
    }
    t.text = StringField(j[i], "text", p);
    t.acts = ActsFromJson(RequireField(j[i], "acts", p), Child(p, "acts"));
    t.index = static_cast<int>(i);
    turns.push_back(std::move(t));
  }
  return turns;
}

Json OntologyToJson(const Ontology& ontology) {
  Json domains = Json::object();
  for (const auto& [d, slots] : ontology.domains()) {
    Json s = Json::object();
    for (const auto& [slot, values] : slots) s[slot] = values;
    domains[d] = std::move(s);
  }
  Json bookable = Json::object();
  for (const auto& [d, slots] : ontology.bookable_slots()) bookable[d] = slots;
  Json out;
  out["domains"] = std::move(domains);
  out["bookable_slots"] = std::move(bookable);
  return out;
}

Ontology OntologyFromJson(const Json& j, const std::string& pointer) {
  const std::string dp = Child(pointer, "domains");
  const Json& domains = RequireObject(RequireField(j, "domains", pointer), dp);
  std::map<std::string, Ontology::SlotMap> dmap;
  for (const auto& [d, slots] : domains.items()) {
    const std::string sp = Child(dp, d);
    RequireObject(slots, sp);
    auto& out_slots = dmap[d];
    for (const auto& [slot, values] : slots.items()) {
      const std::string vp = Child(sp, slot);
      RequireArray(values, vp);
      auto& out_values = out_slots[slot];
      for (size_t i = 0; i < values.size(); ++i) {
        out_values.push_back(RequireString(values[i], Child(vp, i)));
      }
    }
  }
  const std::string bp = Child(pointer, "bookable_slots");
  const Json& bookable = RequireObject(RequireField(j, "bookable_slots", pointer), bp);
  std::map<std::string, std::vector<std::string>> bmap;
  for (const auto& [d, slots] : bookable.items()) {
    const std::string sp = Child(bp, d);
    RequireArray(slots, sp);
    for (size_t i = 0; i < slots.size(); ++i) {
      bmap[d].push_back(RequireString(slots[i], Child(sp, i)));
    }
  }
  Ontology ontology(std::move(dmap), std::move(bmap));
  for (const auto& [d, slots] : ontology.bookable_slots()) {
    for (const auto& s : slots) {
      if (!ontology.HasSlot(d, s)) {
        throw Error(ErrorKind::kValidation, "bookable slot " + d + "." + s + " is not an ontology slot");
      }
    }
  }
  return ontology;
}

Json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kSchema, path.string() + ": malformed JSON (" + e.what() + ")");
  }
}

Ontology LoadOntology(const std::filesystem::path& path) {
  Json j = ReadJsonFile(path);
  // Accept either a bare ontology object or a corpus file carrying one.
  if (j.is_object() && j.contains("ontology")) return OntologyFromJson(j["ontology"], "/ontology");
  return OntologyFromJson(j);
}

Corpus CorpusFromJson(const Json& doc) {
  Corpus corpus;
  RequireObject(doc, "");
  const std::string split = StringField(doc, "split", "");
  corpus.split = ParseSplit(split);
  corpus.ontology = OntologyFromJson(RequireField(doc, "ontology", ""), "/ontology");
  const Json& dialogs = RequireArray(RequireField(doc, "dialogs", ""), "/dialogs");
  std::set<std::string> ids;
  for (size_t i = 0; i < dialogs.size(); ++i) {
    const std::string p = Child(std::string("/dialogs"), i);
    Dialog d;
    d.id = StringField(dialogs[i], "id", p);
    d.goal = GoalFromJson(RequireField(dialogs[i], "goal", p), Child(p, "goal"));
    d.turns = TurnsFromJson(RequireField(dialogs[i], "turns", p), Child(p, "turns"));
    if (!ids.insert(d.id).second) {
      throw Error(ErrorKind::kValidation, "duplicate dialog id '" + d.id + "'");
    }
    d.goal.Validate();
    d.ValidateTurns();
    CheckGoalAgainstOntology(d, corpus.ontology);
    for (const auto& t : d.turns) {
      if (TrimWhitespace(t.text).empty()) {
        throw Error(ErrorKind::kValidation,
                    "dialog " + d.id + ": turn " + std::to_string(t.index) + " has empty text");
      }
      if (!t.acts) continue;
      for (const auto& a : *t.acts) {
        a.Validate();
        for (auto& tok : corpus.ontology.UnknownTokens(a)) {
          corpus.unknown_tokens.push_back(d.id + "/" + std::to_string(t.index) + ": " + tok);
        }
      }
    }
    corpus.dialogs.push_back(std::move(d));
  }
  return corpus;
}

Corpus ParseCorpus(const std::filesystem::path& path) { return CorpusFromJson(ReadJsonFile(path)); }

Json CorpusToJson(const Corpus& corpus) {
  Json out;
  out["split"] = std::string(SplitName(corpus.split));
  out["ontology"] = OntologyToJson(corpus.ontology);
  Json dialogs = Json::array();
  for (const auto& d : corpus.dialogs) {
    Json jd;
    jd["id"] = d.id;
    jd["goal"] = GoalToJson(d.goal);
    jd["turns"] = TurnsToJson(d.turns);
    dialogs.push_back(std::move(jd));
  }
  out["dialogs"] = std::move(dialogs);
  return out;
}

void WriteCorpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << CorpusToJson(corpus).dump(1) << "\n";
}

BaselineSample SampleHumanBaseline(const Corpus& corpus, size_t n_reps, size_t dialogs_per_rep,
                                   uint64_t seed, const LexOptions& options, int parallelism) {
  if (n_reps < 1) throw Error(ErrorKind::kValidation, "baseline needs at least one repetition");
  if (dialogs_per_rep == 0 || corpus.dialogs.size() < dialogs_per_rep) {
    throw Error(ErrorKind::kInsufficientCorpus,
                "corpus has " + std::to_string(corpus.dialogs.size()) + " dialogs, need " +
                    std::to_string(dialogs_per_rep));
  }
  std::vector<size_t> all(corpus.dialogs.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;

  std::vector<LexMetrics> rows(n_reps);
  auto run_rep = [&](size_t r) {
    std::mt19937_64 rng(seed + r);
    std::vector<size_t> picked;
    picked.reserve(dialogs_per_rep);
    std::sample(all.begin(), all.end(), std::back_inserter(picked), dialogs_per_rep, rng);
    std::vector<std::string> utterances;
    for (size_t idx : picked) {
      for (const auto& t : corpus.dialogs[idx].turns) {
        if (t.speaker == Speaker::kUser) utterances.push_back(t.text);
      }
    }
    rows[r] = ComputeLexMetrics(Tokenize(utterances), options);
  };

  const size_t workers = std::clamp<size_t>(static_cast<size_t>(std::max(parallelism, 1)), 1, n_reps);
  if (workers == 1) {
    for (size_t r = 0; r < n_reps; ++r) run_rep(r);
  } else {
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (size_t r = w; r < n_reps; r += workers) run_rep(r);
      });
    }
    for (auto& t : pool) t.join();
  }

  BaselineSample sample;
  sample.n_repetitions = n_reps;
  sample.dialogs_per_repetition = dialogs_per_rep;
  sample.metric_table = AverageLexMetrics(rows);
  return sample;
}

}  // namespace usersim
