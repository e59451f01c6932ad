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

#include "usersim/orchestrator.h"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <thread>

#include "usersim/error.h"
#include "usersim/text.h"

namespace usersim {
namespace {

bool HasBye(const std::vector<DialogActItem>& acts) {
  for (const auto& a : acts) {
    if (a.intent.kind() == Intent::Kind::kBye) return true;
  }
  return false;
}

void UpdateActiveDomain(const std::vector<DialogActItem>& acts, std::string& active) {
  for (const auto& a : acts) {
    if (a.domain != "general" && !a.domain.empty()) active = a.domain;
  }
}

}  // namespace

void RunConfig::Validate() const {
  if (n_dialogs < 1) throw Error(ErrorKind::kConfig, "run.n_dialogs must be at least 1");
  if (max_turns < 1) throw Error(ErrorKind::kConfig, "run.max_turns must be at least 1");
  if (parallelism < 1) throw Error(ErrorKind::kConfig, "run.parallelism must be at least 1");
  if (empty_generation_retries < 0) throw Error(ErrorKind::kConfig, "run.empty_generation_retries must be >= 0");
  if (generation.temperature < 0) throw Error(ErrorKind::kConfig, "backend.temperature must be >= 0");
  if (generation.retries < 0) throw Error(ErrorKind::kConfig, "backend.retries must be >= 0");
  try {
    goals.Validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::kConfig, std::string("goals: ") + e.what());
  }
}

std::string_view TerminationName(TerminationReason r) {
  switch (r) {
    case TerminationReason::kNone:
      return "none";
    case TerminationReason::kUserFarewell:
      return "user_farewell";
    case TerminationReason::kDoubleFarewell:
      return "double_farewell";
    case TerminationReason::kMaxTurns:
      return "max_turns";
  }
  return "none";
}

TerminationReason ParseTermination(std::string_view name) {
  for (auto r : {TerminationReason::kNone, TerminationReason::kUserFarewell, TerminationReason::kDoubleFarewell,
                 TerminationReason::kMaxTurns}) {
    if (TerminationName(r) == name) return r;
  }
  throw Error(ErrorKind::kSchema, "unknown termination reason '" + std::string(name) + "'");
}

Termination CheckTermination(const std::vector<DialogActItem>& user_acts,
                             const std::vector<DialogActItem>& previous_system_acts,
                             std::string_view user_text, int turn, const RunConfig& config) {
  const auto tokens = NormalizedTokens(user_text);
  for (const auto& pattern : config.farewell_patterns) {
    const auto needle = NormalizedTokens(pattern);
    if (!needle.empty() && ContainsTokenRun(tokens, needle)) return {true, TerminationReason::kUserFarewell};
  }
  if (HasBye(previous_system_acts) && HasBye(user_acts)) return {true, TerminationReason::kDoubleFarewell};
  if (turn >= config.max_turns) return {true, TerminationReason::kMaxTurns};
  return {};
}

UserGoal GoalForDialog(const RunConfig& config, const Ontology& ontology, size_t index) {
  std::mt19937_64 rng(config.seed + index);
  return GenerateGoal(ontology, config.goals, rng);
}

SessionRecord RunDialog(const UserGoal& goal, size_t index, const RunConfig& config,
                        const RunResources& res) {
  using Clock = std::chrono::steady_clock;
  SessionRecord rec;
  char id[32];
  std::snprintf(id, sizeof(id), "sim-%05zu", index);
  rec.dialog.id = id;
  rec.dialog.goal = goal;

  ShotStrategy strategy = config.shots;
  strategy.seed = config.seed + index;
  const auto shots = SelectShots(res.shot_pool, goal, strategy);
  // Without shots there are no domain names to splice in.
  const DescriptionKind kind = shots.empty() && config.description == DescriptionKind::kDefaultDomains
                                   ? DescriptionKind::kDefault
                                   : config.description;
  const std::string description = res.descriptions->Render(kind, shots);
  const std::string requirements = RenderRequirements(goal, config.requirements_format, *res.phrases);
  PromptState prompt =
      BuildInitialPrompt(description, shots, requirements, config.requirements_format, *res.phrases, goal);

  auto backend = res.backend(index);
  auto session = res.system->Open(rec.dialog.id);
  std::vector<DialogActItem> previous_system_acts;
  std::string active_domain;
  rec.dialog.outcome = Outcome::kMaxTurns;

  for (int turn = 1;; ++turn) {
    const auto start = Clock::now();
    std::optional<std::string> utterance;
    for (int attempt = 0; attempt <= config.empty_generation_retries; ++attempt) {
      std::string raw;
      try {
        raw = backend->Complete(prompt.text, config.generation);
      } catch (const Error& e) {
        rec.failure = e.what();
        break;
      }
      rec.raw_completions.push_back(raw);
      try {
        utterance = PostprocessCompletion(raw);
        break;
      } catch (const Error& e) {
        rec.failure = e.what();
      }
    }
    if (!utterance) {
      rec.dialog.outcome = Outcome::kGenerationFailure;
      break;
    }
    rec.failure.reset();
    rec.prompt_trace.push_back(prompt);

    const auto user_acts = res.annotator->Annotate(*utterance, Speaker::kUser, active_domain);
    UpdateActiveDomain(user_acts, active_domain);
    rec.dialog.turns.push_back(
        Turn{Speaker::kUser, *utterance, user_acts, static_cast<int>(rec.dialog.turns.size())});

    SystemResponse reply;
    try {
      reply = session->Respond(*utterance, user_acts);
    } catch (const Error& e) {
      rec.failure = e.what();
      rec.dialog.outcome = Outcome::kSystemFailure;
      rec.turn_ms.push_back(std::chrono::duration<double, std::milli>(Clock::now() - start).count());
      break;
    }
    UpdateActiveDomain(reply.acts, active_domain);
    rec.dialog.turns.push_back(
        Turn{Speaker::kSystem, reply.text, reply.acts, static_cast<int>(rec.dialog.turns.size())});
    rec.turn_ms.push_back(std::chrono::duration<double, std::milli>(Clock::now() - start).count());

    const Termination term = CheckTermination(user_acts, previous_system_acts, *utterance, turn, config);
    previous_system_acts = reply.acts;
    if (term.stop) {
      rec.termination = term.reason;
      rec.dialog.outcome =
          term.reason == TerminationReason::kMaxTurns ? Outcome::kMaxTurns : Outcome::kCompleted;
      break;
    }
    prompt = ExtendPrompt(prompt, *utterance, reply.text);
  }
  session->Close();
  return rec;
}

std::vector<SessionRecord> RunDialogs(const RunConfig& config, const RunResources& res) {
  config.Validate();
  std::vector<SessionRecord> records(config.n_dialogs);
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (size_t i = next++; i < config.n_dialogs; i = next++) {
      try {
        records[i] = RunDialog(GoalForDialog(config, *res.ontology, i), i, config, res);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const size_t threads = std::min<size_t>(static_cast<size_t>(config.parallelism), config.n_dialogs);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return records;
}

}  // namespace usersim
