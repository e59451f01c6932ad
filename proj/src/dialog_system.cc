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

#include "usersim/dialog_system.h"

#include <algorithm>
#include <cstdio>
#include <set>

#include "usersim/corpus.h"
#include "usersim/error.h"
#include "usersim/text.h"

namespace usersim {

MockDatabase::MockDatabase(std::map<std::string, std::vector<Record>> records) {
  for (auto& [domain, list] : records) {
    auto& out = records_[NormalizeText(domain)];
    for (auto& record : list) {
      Record r;
      for (auto& [slot, value] : record) r[NormalizeText(slot)] = std::move(value);
      out.push_back(std::move(r));
    }
  }
}

MockDatabase MockDatabase::Load(const std::filesystem::path& path) {
  const Json j = ReadJsonFile(path);
  if (!j.is_object()) throw Error(ErrorKind::kSchema, path.string() + ": expected {domain: [records]}");
  std::map<std::string, std::vector<Record>> records;
  for (const auto& [domain, list] : j.items()) {
    if (!list.is_array()) throw Error(ErrorKind::kSchema, path.string() + ": /" + domain + " must be a list");
    auto& out = records[domain];
    for (size_t i = 0; i < list.size(); ++i) {
      const std::string ptr = "/" + domain + "/" + std::to_string(i);
      if (!list[i].is_object()) throw Error(ErrorKind::kSchema, path.string() + ": " + ptr + " must be an object");
      Record r;
      for (const auto& [slot, value] : list[i].items()) {
        if (!value.is_string()) {
          throw Error(ErrorKind::kSchema, path.string() + ": " + ptr + "/" + slot + " must be a string");
        }
        r[slot] = value.get<std::string>();
      }
      out.push_back(std::move(r));
    }
  }
  return MockDatabase(std::move(records));
}

const std::vector<MockDatabase::Record>& MockDatabase::Records(std::string_view domain) const {
  static const std::vector<Record> kEmpty;
  auto it = records_.find(NormalizeText(domain));
  return it == records_.end() ? kEmpty : it->second;
}

std::vector<const MockDatabase::Record*> MockDatabase::Find(
    std::string_view domain, const std::map<std::string, std::string>& constraints) const {
  std::vector<const Record*> out;
  for (const auto& record : Records(domain)) {
    bool ok = true;
    for (const auto& [slot, value] : constraints) {
      auto it = record.find(NormalizeText(slot));
      if (it == record.end() || !ValuesMatch(it->second, value)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(&record);
  }
  return out;
}

const MockDatabase::Record* MockDatabase::FindByName(std::string_view domain, std::string_view name) const {
  for (const auto& record : Records(domain)) {
    auto it = record.find("name");
    if (it != record.end() && ValuesMatch(it->second, name)) return &record;
  }
  return nullptr;
}

bool MockDatabase::Contains(std::string_view domain, std::string_view slot, std::string_view value) const {
  const std::string s = NormalizeText(slot);
  for (const auto& record : Records(domain)) {
    auto it = record.find(s);
    if (it != record.end() && ValuesMatch(it->second, value)) return true;
  }
  return false;
}

namespace {

class MockSession : public SystemSession {
 public:
  MockSession(std::string id, std::shared_ptr<const MockDatabase> db, std::shared_ptr<const Ontology> ontology,
              std::shared_ptr<const PhraseTable> phrases, MockConfig config)
      : id_(std::move(id)),
        db_(std::move(db)),
        ontology_(std::move(ontology)),
        phrases_(std::move(phrases)),
        config_(config) {}

  SystemResponse Respond(std::string_view /*user_text*/, const std::vector<DialogActItem>& user_acts) override {
    if (closed_) throw Error(ErrorKind::kSessionClosed, "session " + id_ + " is closed");
    sentences_.clear();
    acts_.clear();

    bool bye = false;
    bool substantive = false;
    std::vector<std::string> order;  // domains in order of first mention
    std::set<std::string> changed, booking_touched;
    std::vector<DialogActItem> requests;
    auto note = [&](const std::string& d) {
      if (std::find(order.begin(), order.end(), d) == order.end()) order.push_back(d);
    };
    for (const auto& act : user_acts) {
      const std::string slot = NormalizeText(act.slot);
      switch (act.intent.kind()) {
        case Intent::Kind::kBye:
          bye = true;
          break;
        case Intent::Kind::kInform:
        case Intent::Kind::kBook:
          if (!db_->domains().count(act.domain)) break;
          substantive = true;
          note(act.domain);
          if (ontology_->IsBookable(act.domain, slot)) {
            booking_[act.domain][slot] = act.value;
            booking_touched.insert(act.domain);
          } else if (constraints_[act.domain][slot] != act.value) {
            constraints_[act.domain][slot] = act.value;
            changed.insert(act.domain);
          }
          break;
        case Intent::Kind::kRequest:
          if (!db_->domains().count(act.domain)) break;
          substantive = true;
          note(act.domain);
          requests.push_back(act);
          break;
        case Intent::Kind::kOther:
          break;
      }
    }

    if (!substantive) {
      if (bye) {
        Say("You are welcome . Have a good day .", {MakeAct("bye", "general")});
      } else if (config_.empty_act_bye) {
        Say("Okay , thank you . Have a good day .", {MakeAct("bye", "general")});
      } else {
        Say("Sorry , I did not understand that . Could you rephrase ?", {MakeAct("reqmore", "general")});
      }
      return Finish();
    }

    for (const auto& d : order) {
      if (changed.count(d) || !offer_.count(d)) Search(d);
      auto offer = offer_.find(d);
      if (offer == offer_.end()) continue;
      for (const auto& req : requests) {
        if (req.domain != d) continue;
        const std::string slot = NormalizeText(req.slot);
        auto it = offer->second->find(slot);
        if (it == offer->second->end()) continue;
        Say("The " + phrases_->PhraseOr(d, slot) + " is " + it->second + " .",
            {MakeAct("inform", d, slot, it->second)});
      }
      if (booking_touched.count(d)) Book(d, *offer->second);
    }
    if (sentences_.empty()) {
      Say("Is there anything else I can help you with ?", {MakeAct("reqmore", "general")});
    }
    if (bye) Say("Have a good day .", {MakeAct("bye", "general")});
    return Finish();
  }

  void Close() override { closed_ = true; }

 private:
  void Say(std::string sentence, std::vector<DialogActItem> acts) {
    sentences_.push_back(std::move(sentence));
    for (auto& a : acts) acts_.push_back(std::move(a));
  }

  SystemResponse Finish() {
    return SystemResponse{Join(sentences_, " "), std::move(acts_), id_};
  }

  void Search(const std::string& d) {
    const auto matches = db_->Find(d, constraints_[d]);
    if (matches.empty()) {
      offer_.erase(d);
      Say("I am sorry , there is no such " + d + " .", {MakeAct("nooffer", d)});
      return;
    }
    offer_[d] = matches.front();
    auto name = matches.front()->find("name");
    if (name != matches.front()->end()) {
      Say("How about " + name->second + " ?", {MakeAct("inform", d, "name", name->second)});
    }
  }

  void Book(const std::string& d, const MockDatabase::Record& record) {
    const auto& wanted = ontology_->BookableSlots(d);
    const auto& have = booking_[d];
    for (const auto& slot : wanted) {
      if (!have.count(slot)) {
        Say("What " + phrases_->PhraseOr(d, slot) + " would you like for the booking ?",
            {MakeAct("request", d, slot)});
        return;
      }
    }
    char ref[16];
    std::snprintf(ref, sizeof(ref), "%08d", next_ref_++);
    std::vector<std::string> parts;
    std::vector<DialogActItem> acts;
    for (const auto& slot : wanted) {
      parts.push_back(phrases_->PhraseOr(d, slot) + " " + have.at(slot));
      acts.push_back(MakeAct("book", d, slot, have.at(slot)));
    }
    acts.push_back(MakeAct("book", d, "ref", ref));
    auto name = record.find("name");
    const std::string target = name == record.end() ? d : name->second;
    Say("Booking was successful for " + target + " : " + Join(parts, " , ") +
            " . Reference number is : " + ref + " .",
        std::move(acts));
  }

  std::string id_;
  std::shared_ptr<const MockDatabase> db_;
  std::shared_ptr<const Ontology> ontology_;
  std::shared_ptr<const PhraseTable> phrases_;
  MockConfig config_;
  bool closed_ = false;
  int next_ref_ = 0;
  std::map<std::string, std::map<std::string, std::string>> constraints_;
  std::map<std::string, std::map<std::string, std::string>> booking_;
  std::map<std::string, const MockDatabase::Record*> offer_;
  std::vector<std::string> sentences_;
  std::vector<DialogActItem> acts_;
};

}  // namespace

MockSystem::MockSystem(std::shared_ptr<const MockDatabase> db, Ontology ontology, PhraseTable phrases,
                       MockConfig config)
    : db_(std::move(db)),
      ontology_(std::make_shared<const Ontology>(std::move(ontology))),
      phrases_(std::make_shared<const PhraseTable>(std::move(phrases))),
      config_(config) {}

std::unique_ptr<SystemSession> MockSystem::Open(const std::string& session_id) {
  return std::make_unique<MockSession>(session_id, db_, ontology_, phrases_, config_);
}

}  // namespace usersim
