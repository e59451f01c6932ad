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

#ifndef USERSIM_LLM_BACKEND_H_
#define USERSIM_LLM_BACKEND_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace usersim {

struct GenerationParams {
  double temperature = 0.8;
  int max_tokens = 64;
  std::vector<std::string> stop_sequences = {"\nASSISTANT", "\nCUSTOMER", "\n\n"};
  std::optional<int64_t> request_seed;
  int retries = 2;
  std::chrono::milliseconds timeout{30000};
};

// Sampling temperature of a named model profile: llama, gpt or flan.
double ProfileTemperature(std::string_view profile);

class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;
  // Must be safe to call concurrently.
  virtual std::string Complete(const std::string& prompt, const GenerationParams& params) = 0;
};

// Returns scripted completions in order; FixtureExhausted past the end.
class ReplayBackend : public CompletionBackend {
 public:
  explicit ReplayBackend(std::vector<std::string> script) : script_(std::move(script)) {}
  std::string Complete(const std::string& prompt, const GenerationParams& params) override;
  size_t consumed() const;

 private:
  std::vector<std::string> script_;
  mutable std::mutex mu_;
  size_t cursor_ = 0;
};

// Returns the last line of the prompt.
class EchoBackend : public CompletionBackend {
 public:
  std::string Complete(const std::string& prompt, const GenerationParams& params) override;
};

// Replay fixture file: a list of strings (one script reused for every
// dialog) or a list of lists (dialog i uses script i mod n).
std::vector<std::vector<std::string>> LoadReplayScripts(const std::filesystem::path& path);

// Requests-per-minute limiter shared by every session of a run. A rate of 0
// disables limiting.
class TokenBucket {
 public:
  using Clock = std::chrono::steady_clock;

  explicit TokenBucket(double requests_per_minute);

  // Takes a token if one is available at `now`.
  bool TryAcquire(Clock::time_point now);
  // Blocks until a token is available.
  void Acquire();

 private:
  void Refill(Clock::time_point now);

  double rate_per_sec_;
  double capacity_;
  double tokens_;
  Clock::time_point last_;
  std::mutex mu_;
};

struct RetryPolicy {
  int retries = 2;
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
};

// Runs `attempt` until it succeeds, retrying Timeout, RateLimited and
// BackendUnreachable errors with exponential backoff. Other errors pass
// through immediately. At most retries + 1 attempts.
std::string RetryWithBackoff(const std::function<std::string()>& attempt, const RetryPolicy& policy,
                             int* attempts_made = nullptr);

struct HttpBackendConfig {
  std::string endpoint;                      // e.g. http://localhost:8000/v1
  std::string model;
  bool chat = true;                          // /chat/completions vs /completions
  std::string api_key_env = "LLM_API_KEY";   // empty: no Authorization header
  double requests_per_minute = 0;
  std::chrono::milliseconds initial_backoff{500};
};

// OpenAI-compatible completion endpoint. The whole prompt is sent as one
// user message in chat mode.
class HttpBackend : public CompletionBackend {
 public:
  HttpBackend(HttpBackendConfig config, std::shared_ptr<TokenBucket> limiter = nullptr);
  std::string Complete(const std::string& prompt, const GenerationParams& params) override;

  // Total HTTP attempts across all calls.
  size_t attempts() const { return attempts_.load(); }

 private:
  std::string CompleteOnce(const std::string& prompt, const GenerationParams& params);

  HttpBackendConfig config_;
  std::shared_ptr<TokenBucket> limiter_;
  std::atomic<size_t> attempts_{0};
};

// Cuts the raw completion at the first speaker cue or blank line, trims it
// and joins remaining lines with spaces. Throws EmptyGeneration when
// nothing is left.
std::string PostprocessCompletion(std::string_view raw);

// Splits an http(s)://host[:port][/base] URL into origin and base path.
std::pair<std::string, std::string> SplitEndpoint(std::string_view endpoint);

}  // namespace usersim

#endif  // USERSIM_LLM_BACKEND_H_
