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

#include "usersim/llm_backend.h"

#include <algorithm>
#include <thread>

#include "usersim/corpus.h"
#include "usersim/error.h"
#include "usersim/text.h"

namespace usersim {

double ProfileTemperature(std::string_view profile) {
  if (profile == "llama") return 0.8;
  if (profile == "gpt") return 1.0;
  if (profile == "flan") return 0.9;
  throw Error(ErrorKind::kConfig, "unknown model profile '" + std::string(profile) + "'");
}

std::string ReplayBackend::Complete(const std::string& /*prompt*/, const GenerationParams& /*params*/) {
  std::lock_guard<std::mutex> lock(mu_);
  if (cursor_ >= script_.size()) {
    throw Error(ErrorKind::kFixtureExhausted,
                "replay script has only " + std::to_string(script_.size()) + " completions");
  }
  return script_[cursor_++];
}

size_t ReplayBackend::consumed() const {
  std::lock_guard<std::mutex> lock(mu_);
  return cursor_;
}

std::string EchoBackend::Complete(const std::string& prompt, const GenerationParams& /*params*/) {
  const size_t nl = prompt.rfind('\n');
  return nl == std::string::npos ? prompt : prompt.substr(nl + 1);
}

std::vector<std::vector<std::string>> LoadReplayScripts(const std::filesystem::path& path) {
  const Json j = ReadJsonFile(path);
  auto bad = [&] {
    return Error(ErrorKind::kSchema, path.string() + ": replay fixture must be a list of strings or a list of lists of strings");
  };
  if (!j.is_array() || j.empty()) throw bad();
  std::vector<std::vector<std::string>> scripts;
  if (j[0].is_string()) {
    scripts.emplace_back();
    for (const auto& s : j) {
      if (!s.is_string()) throw bad();
      scripts.back().push_back(s.get<std::string>());
    }
    return scripts;
  }
  for (const auto& script : j) {
    if (!script.is_array()) throw bad();
    scripts.emplace_back();
    for (const auto& s : script) {
      if (!s.is_string()) throw bad();
      scripts.back().push_back(s.get<std::string>());
    }
  }
  return scripts;
}

TokenBucket::TokenBucket(double requests_per_minute)
    : rate_per_sec_(requests_per_minute / 60.0),
      capacity_(std::max(1.0, requests_per_minute / 60.0)),
      tokens_(capacity_),
      last_(Clock::now()) {}

void TokenBucket::Refill(Clock::time_point now) {
  if (now <= last_) return;
  const double elapsed = std::chrono::duration<double>(now - last_).count();
  tokens_ = std::min(capacity_, tokens_ + elapsed * rate_per_sec_);
  last_ = now;
}

bool TokenBucket::TryAcquire(Clock::time_point now) {
  std::lock_guard<std::mutex> lock(mu_);
  if (rate_per_sec_ <= 0) return true;
  Refill(now);
  if (tokens_ < 1.0) return false;
  tokens_ -= 1.0;
  return true;
}

void TokenBucket::Acquire() {
  while (!TryAcquire(Clock::now())) {
    std::chrono::duration<double> wait;
    {
      std::lock_guard<std::mutex> lock(mu_);
      wait = std::chrono::duration<double>((1.0 - tokens_) / rate_per_sec_);
    }
    std::this_thread::sleep_for(std::max(wait, std::chrono::duration<double>(0.001)));
  }
}

std::string RetryWithBackoff(const std::function<std::string()>& attempt, const RetryPolicy& policy,
                             int* attempts_made) {
  auto delay = std::chrono::duration<double, std::milli>(policy.initial_backoff);
  for (int i = 0;; ++i) {
    if (attempts_made != nullptr) *attempts_made = i + 1;
    try {
      return attempt();
    } catch (const Error& e) {
      const bool transient = e.kind() == ErrorKind::kTimeout || e.kind() == ErrorKind::kRateLimited ||
                             e.kind() == ErrorKind::kBackendUnreachable;
      if (!transient || i >= policy.retries) throw;
    }
    std::this_thread::sleep_for(delay);
    delay *= policy.multiplier;
  }
}

std::string PostprocessCompletion(std::string_view raw) {
  static const std::string_view kCuts[] = {"\nASSISTANT", "\nCUSTOMER", "ASSISTANT:", "CUSTOMER:", "\n\n"};
  size_t cut = raw.size();
  for (auto c : kCuts) cut = std::min(cut, raw.find(c));
  std::string text = TrimWhitespace(raw.substr(0, cut));
  std::vector<std::string> lines;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t nl = text.find('\n', start);
    std::string line = TrimWhitespace(std::string_view(text).substr(start, nl == std::string::npos ? std::string::npos : nl - start));
    if (!line.empty()) lines.push_back(std::move(line));
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
  std::string out = Join(lines, " ");
  if (out.empty()) throw Error(ErrorKind::kEmptyGeneration, "completion is empty after post-processing");
  return out;
}

std::pair<std::string, std::string> SplitEndpoint(std::string_view endpoint) {
  const size_t scheme = endpoint.find("://");
  if (scheme == std::string_view::npos) {
    throw Error(ErrorKind::kConfig, "endpoint '" + std::string(endpoint) + "' lacks a scheme");
  }
  const size_t slash = endpoint.find('/', scheme + 3);
  if (slash == std::string_view::npos) return {std::string(endpoint), ""};
  std::string base(endpoint.substr(slash));
  while (!base.empty() && base.back() == '/') base.pop_back();
  return {std::string(endpoint.substr(0, slash)), base};
}

}  // namespace usersim
