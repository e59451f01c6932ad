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

#ifndef USERSIM_DIALOG_SYSTEM_H_
#define USERSIM_DIALOG_SYSTEM_H_

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "usersim/annotator.h"
#include "usersim/dialog.h"
#include "usersim/goalgen.h"

namespace usersim {

struct SystemResponse {
  std::string text;
  std::vector<DialogActItem> acts;
  std::string session_id;
};

// One conversation with a dialog system. Not thread-safe; distinct sessions
// may run concurrently.
class SystemSession {
 public:
  virtual ~SystemSession() = default;
  // Throws SessionClosed after Close().
  virtual SystemResponse Respond(std::string_view user_text,
                                 const std::vector<DialogActItem>& user_acts) = 0;
  virtual void Close() = 0;
};

class DialogSystem {
 public:
  virtual ~DialogSystem() = default;
  virtual std::unique_ptr<SystemSession> Open(const std::string& session_id) = 0;
};

// Slot-keyed records per domain; slots and domains are normalized, values
// kept verbatim.
class MockDatabase {
 public:
  using Record = std::map<std::string, std::string>;

  MockDatabase() = default;
  explicit MockDatabase(std::map<std::string, std::vector<Record>> records);

  static MockDatabase Load(const std::filesystem::path& path);

  const std::vector<Record>& Records(std::string_view domain) const;
  // Records whose every constraint slot matches (normalized) in stable order.
  std::vector<const Record*> Find(std::string_view domain,
                                  const std::map<std::string, std::string>& constraints) const;
  const Record* FindByName(std::string_view domain, std::string_view name) const;
  bool Contains(std::string_view domain, std::string_view slot, std::string_view value) const;
  const std::map<std::string, std::vector<Record>>& domains() const { return records_; }

 private:
  std::map<std::string, std::vector<Record>> records_;
};

struct MockConfig {
  // Reply to an act-less user turn with a farewell instead of asking again.
  bool empty_act_bye = true;
};

// Rule-based system over a MockDatabase: tracks user constraints, offers the
// first matching record, answers requests from it and books once every
// bookable slot of the domain is known. Reference numbers count from
// 00000000 per session.
class MockSystem : public DialogSystem {
 public:
  MockSystem(std::shared_ptr<const MockDatabase> db, Ontology ontology, PhraseTable phrases,
             MockConfig config = {});
  std::unique_ptr<SystemSession> Open(const std::string& session_id) override;

 private:
  std::shared_ptr<const MockDatabase> db_;
  std::shared_ptr<const Ontology> ontology_;
  std::shared_ptr<const PhraseTable> phrases_;
  MockConfig config_;
};

struct HttpSystemConfig {
  std::string endpoint;  // POST {endpoint}/respond
  std::chrono::milliseconds timeout{30000};
};

// Remote black-box system. Replies without acts are annotated with the
// gazetteer annotator.
class HttpSystem : public DialogSystem {
 public:
  HttpSystem(HttpSystemConfig config, Ontology ontology);
  std::unique_ptr<SystemSession> Open(const std::string& session_id) override;

 private:
  HttpSystemConfig config_;
  std::shared_ptr<const Annotator> annotator_;
};

}  // namespace usersim

#endif  // USERSIM_DIALOG_SYSTEM_H_
