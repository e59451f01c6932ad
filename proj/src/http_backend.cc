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

#include <cstdlib>

#include "httplib.h"
#include "usersim/corpus.h"
#include "usersim/error.h"
#include "usersim/llm_backend.h"

namespace usersim {
namespace {

Error TransportError(httplib::Error err, const std::string& url) {
  const std::string what = url + ": " + httplib::to_string(err);
  switch (err) {
    case httplib::Error::Read:
    case httplib::Error::Write:
    case httplib::Error::ConnectionTimeout:
      return Error(ErrorKind::kTimeout, what);
    default:
      return Error(ErrorKind::kBackendUnreachable, what);
  }
}

}  // namespace

HttpBackend::HttpBackend(HttpBackendConfig config, std::shared_ptr<TokenBucket> limiter)
    : config_(std::move(config)), limiter_(std::move(limiter)) {
  SplitEndpoint(config_.endpoint);
}

std::string HttpBackend::Complete(const std::string& prompt, const GenerationParams& params) {
  if (prompt.empty()) throw Error(ErrorKind::kValidation, "prompt must not be empty");
  RetryPolicy policy;
  policy.retries = params.retries;
  policy.initial_backoff = config_.initial_backoff;
  return RetryWithBackoff([&] { return CompleteOnce(prompt, params); }, policy);
}

std::string HttpBackend::CompleteOnce(const std::string& prompt, const GenerationParams& params) {
  if (limiter_) limiter_->Acquire();
  ++attempts_;
  const auto [origin, base] = SplitEndpoint(config_.endpoint);
  const std::string path = base + (config_.chat ? "/chat/completions" : "/completions");

  Json body;
  body["model"] = config_.model;
  if (config_.chat) {
    body["messages"] = Json::array({Json{{"role", "user"}, {"content", prompt}}});
  } else {
    body["prompt"] = prompt;
  }
  body["temperature"] = params.temperature;
  body["max_tokens"] = params.max_tokens;
  body["stop"] = params.stop_sequences;
  if (params.request_seed) body["seed"] = *params.request_seed;

  httplib::Client client(origin);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(params.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(params.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  httplib::Headers headers;
  if (!config_.api_key_env.empty()) {
    if (const char* key = std::getenv(config_.api_key_env.c_str()); key != nullptr && *key != '\0') {
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }
  }

  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) throw TransportError(res.error(), origin + path);
  if (res->status == 429) throw Error(ErrorKind::kRateLimited, origin + path + ": HTTP 429");
  if (res->status >= 500) {
    throw Error(ErrorKind::kBackendUnreachable, origin + path + ": HTTP " + std::to_string(res->status));
  }
  if (res->status != 200) {
    throw Error(ErrorKind::kProtocol, origin + path + ": HTTP " + std::to_string(res->status));
  }

  Json reply;
  try {
    reply = Json::parse(res->body);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::kProtocol, origin + path + ": malformed JSON response");
  }
  const Json* choice = nullptr;
  if (reply.is_object() && reply.contains("choices") && reply["choices"].is_array() &&
      !reply["choices"].empty()) {
    choice = &reply["choices"][0];
  }
  if (choice != nullptr && choice->is_object()) {
    if (choice->contains("message") && (*choice)["message"].is_object() &&
        (*choice)["message"].contains("content") && (*choice)["message"]["content"].is_string()) {
      return (*choice)["message"]["content"].get<std::string>();
    }
    if (choice->contains("text") && (*choice)["text"].is_string()) return (*choice)["text"].get<std::string>();
  }
  throw Error(ErrorKind::kProtocol, origin + path + ": response lacks choices[0] text");
}

}  // namespace usersim
