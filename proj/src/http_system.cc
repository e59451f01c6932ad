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

#include "httplib.h"
#include "usersim/corpus.h"
#include "usersim/dialog_system.h"
#include "usersim/error.h"
#include "usersim/llm_backend.h"

namespace usersim {
namespace {

class HttpSession : public SystemSession {
 public:
  HttpSession(std::string id, const HttpSystemConfig& config, std::shared_ptr<const Annotator> annotator)
      : id_(std::move(id)), config_(config), annotator_(std::move(annotator)) {}

  SystemResponse Respond(std::string_view user_text, const std::vector<DialogActItem>& user_acts) override {
    if (closed_) throw Error(ErrorKind::kSessionClosed, "session " + id_ + " is closed");
    const auto [origin, base] = SplitEndpoint(config_.endpoint);
    const std::string url = origin + base + "/respond";
    httplib::Client client(origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());

    Json body{{"session_id", id_}, {"text", std::string(user_text)}};
    body["user_acts"] = ActsToJson(user_acts);
    auto res = client.Post(base + "/respond", body.dump(), "application/json");
    if (!res) {
      const auto err = res.error();
      const ErrorKind kind = err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout
                                 ? ErrorKind::kTimeout
                                 : ErrorKind::kBackendUnreachable;
      throw Error(kind, url + ": " + httplib::to_string(err));
    }
    if (res->status != 200) throw Error(ErrorKind::kProtocol, url + ": HTTP " + std::to_string(res->status));

    Json reply;
    try {
      reply = Json::parse(res->body);
    } catch (const Json::parse_error&) {
      throw Error(ErrorKind::kProtocol, url + ": malformed JSON response");
    }
    if (!reply.is_object() || !reply.contains("text") || !reply["text"].is_string()) {
      throw Error(ErrorKind::kProtocol, url + ": response lacks a text field");
    }
    SystemResponse out;
    out.session_id = id_;
    out.text = reply["text"].get<std::string>();
    if (reply.contains("acts") && !reply["acts"].is_null()) {
      try {
        out.acts = *ActsFromJson(reply["acts"], "/acts");
      } catch (const Error& e) {
        throw Error(ErrorKind::kProtocol, url + ": " + e.what());
      }
    } else {
      out.acts = annotator_->Annotate(out.text, Speaker::kSystem);
    }
    return out;
  }

  void Close() override { closed_ = true; }

 private:
  std::string id_;
  HttpSystemConfig config_;
  std::shared_ptr<const Annotator> annotator_;
  bool closed_ = false;
};

}  // namespace

HttpSystem::HttpSystem(HttpSystemConfig config, Ontology ontology)
    : config_(std::move(config)), annotator_(std::make_shared<const Annotator>(std::move(ontology))) {
  SplitEndpoint(config_.endpoint);
}

std::unique_ptr<SystemSession> HttpSystem::Open(const std::string& session_id) {
  return std::make_unique<HttpSession>(session_id, config_, annotator_);
}

}  // namespace usersim
