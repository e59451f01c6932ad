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

#include "usersim/config.h"

#include <set>

#include "usersim/error.h"
#include "usersim/text.h"

namespace usersim {
namespace {

// Reads one config section and rejects keys nobody asked for.
class Section {
 public:
  Section(const Json& root, const std::string& name) : name_(name) {
    auto it = root.find(name);
    if (it == root.end()) return;
    if (!it->is_object()) throw Error(ErrorKind::kConfig, "config section '" + name + "' must be an object");
    j_ = &*it;
  }

  ~Section() noexcept(false) {
    if (j_ == nullptr || std::uncaught_exceptions() > 0) return;
    for (const auto& [key, unused] : j_->items()) {
      if (!seen_.count(key)) throw Error(ErrorKind::kConfig, "unknown config key '" + name_ + "." + key + "'");
    }
  }

  const Json* Find(const std::string& key) {
    seen_.insert(key);
    if (j_ == nullptr) return nullptr;
    auto it = j_->find(key);
    return it == j_->end() || it->is_null() ? nullptr : &*it;
  }

  void Get(const std::string& key, std::string& out) {
    if (const Json* v = Find(key)) out = As<std::string>(*v, key, v->is_string(), "a string");
  }
  void Get(const std::string& key, bool& out) {
    if (const Json* v = Find(key)) out = As<bool>(*v, key, v->is_boolean(), "a boolean");
  }
  void Get(const std::string& key, double& out) {
    if (const Json* v = Find(key)) out = As<double>(*v, key, v->is_number(), "a number");
  }
  template <typename Int>
  void GetInt(const std::string& key, Int& out, bool non_negative = true) {
    if (const Json* v = Find(key)) {
      const bool ok = v->is_number_integer() && (!non_negative || v->get<int64_t>() >= 0);
      out = static_cast<Int>(As<int64_t>(*v, key, ok, non_negative ? "a non-negative integer" : "an integer"));
    }
  }
  void Get(const std::string& key, std::vector<std::string>& out) {
    const Json* v = Find(key);
    if (v == nullptr) return;
    bool ok = v->is_array();
    for (const auto& e : ok ? *v : Json::array()) ok = ok && e.is_string();
    if (!ok) Fail(key, "a list of strings");
    out = v->get<std::vector<std::string>>();
  }
  void GetPath(const std::string& key, std::filesystem::path& out, const std::filesystem::path& base) {
    std::string s;
    Get(key, s);
    if (!s.empty()) out = Resolve(s, base);
  }
  void GetPath(const std::string& key, std::optional<std::filesystem::path>& out, const std::filesystem::path& base) {
    std::filesystem::path p;
    GetPath(key, p, base);
    if (!p.empty()) out = p;
  }

  [[noreturn]] void Fail(const std::string& key, const std::string& what) const {
    throw Error(ErrorKind::kConfig, "config key '" + name_ + "." + key + "' must be " + what);
  }

 private:
  template <typename T>
  T As(const Json& v, const std::string& key, bool ok, const std::string& what) const {
    if (!ok) Fail(key, what);
    return v.get<T>();
  }

  static std::filesystem::path Resolve(const std::string& s, const std::filesystem::path& base) {
    std::filesystem::path p(s);
    if (p.is_relative() && !base.empty()) p = base / p;
    return std::filesystem::weakly_canonical(p);
  }

  std::string name_;
  const Json* j_ = nullptr;
  std::set<std::string> seen_;
};

Json PathOrNull(const std::optional<std::filesystem::path>& p) { return p ? Json(p->string()) : Json(nullptr); }

}  // namespace

ExperimentConfig ExperimentConfigFromJson(const Json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw Error(ErrorKind::kConfig, "config must be a JSON object");
  static const std::set<std::string> kSections = {"backend", "system", "prompt", "shots", "goals", "run"};
  for (const auto& [key, unused] : j.items()) {
    if (!kSections.count(key)) throw Error(ErrorKind::kConfig, "unknown config key '" + key + "'");
  }
  ExperimentConfig cfg;
  auto& gen = cfg.run.generation;
  {
    Section s(j, "backend");
    s.Get("kind", cfg.backend.kind);
    if (cfg.backend.kind != "replay" && cfg.backend.kind != "echo" && cfg.backend.kind != "http") {
      s.Fail("kind", "one of replay, echo, http");
    }
    s.GetPath("fixture", cfg.backend.fixture, base_dir);
    s.Get("endpoint", cfg.backend.http.endpoint);
    s.Get("model", cfg.backend.http.model);
    std::string api = "chat";
    s.Get("api", api);
    if (api != "chat" && api != "completions") s.Fail("api", "chat or completions");
    cfg.backend.http.chat = api == "chat";
    s.Get("api_key_env", cfg.backend.http.api_key_env);
    std::string profile;
    s.Get("profile", profile);
    if (!profile.empty()) {
      cfg.backend.profile = profile;
      gen.temperature = ProfileTemperature(profile);
    }
    s.Get("temperature", gen.temperature);
    s.GetInt("max_tokens", gen.max_tokens);
    s.Get("stop", gen.stop_sequences);
    if (s.Find("seed") != nullptr) {
      int64_t seed = 0;
      s.GetInt("seed", seed, false);
      gen.request_seed = seed;
    }
    s.GetInt("retries", gen.retries);
    int64_t timeout = gen.timeout.count();
    s.GetInt("timeout_ms", timeout);
    gen.timeout = std::chrono::milliseconds(timeout);
    s.Get("requests_per_minute", cfg.backend.http.requests_per_minute);
    int64_t backoff = cfg.backend.http.initial_backoff.count();
    s.GetInt("backoff_ms", backoff);
    cfg.backend.http.initial_backoff = std::chrono::milliseconds(backoff);
    if (cfg.backend.kind == "replay" && cfg.backend.fixture.empty()) s.Fail("fixture", "set for the replay backend");
    if (cfg.backend.kind == "http" && cfg.backend.http.endpoint.empty()) s.Fail("endpoint", "set for the http backend");
  }
  {
    Section s(j, "system");
    s.Get("kind", cfg.system.kind);
    if (cfg.system.kind != "mock" && cfg.system.kind != "http") s.Fail("kind", "mock or http");
    s.GetPath("database", cfg.system.database, base_dir);
    s.Get("empty_act_bye", cfg.system.mock.empty_act_bye);
    s.Get("endpoint", cfg.system.http.endpoint);
    int64_t timeout = cfg.system.http.timeout.count();
    s.GetInt("timeout_ms", timeout);
    cfg.system.http.timeout = std::chrono::milliseconds(timeout);
    if (cfg.system.kind == "mock" && cfg.system.database.empty()) s.Fail("database", "set for the mock system");
    if (cfg.system.kind == "http" && cfg.system.http.endpoint.empty()) s.Fail("endpoint", "set for the http system");
  }
  {
    Section s(j, "prompt");
    std::string description(DescriptionKindName(cfg.run.description));
    s.Get("description", description);
    cfg.run.description = ParseDescriptionKind(description);
    std::string format(RequirementsFormatName(cfg.run.requirements_format));
    s.Get("requirements_format", format);
    cfg.run.requirements_format = ParseRequirementsFormat(format);
    s.GetPath("task_descriptions", cfg.task_descriptions, base_dir);
    s.GetPath("phrase_table", cfg.phrase_table, base_dir);
  }
  {
    Section s(j, "shots");
    std::string strategy(ShotKindName(cfg.run.shots.kind));
    s.Get("strategy", strategy);
    cfg.run.shots.kind = ParseShotKind(strategy);
    s.GetInt("k", cfg.run.shots.k);
    s.GetPath("corpus", cfg.shots_corpus, base_dir);
    if (cfg.shots_corpus.empty()) s.Fail("corpus", "set");
  }
  {
    Section s(j, "goals");
    auto& g = cfg.run.goals;
    s.GetPath("ontology", cfg.ontology, base_dir);
    s.GetInt("domains_min", g.domains_min);
    s.GetInt("domains_max", g.domains_max);
    s.GetInt("informs_min", g.informs_per_domain_min);
    s.GetInt("informs_max", g.informs_per_domain_max);
    s.GetInt("requests_min", g.requests_per_domain_min);
    s.GetInt("requests_max", g.requests_per_domain_max);
    s.Get("booking_probability", g.booking_probability);
    s.Get("requestable_slots", g.requestable_slots);
    s.Get("non_informable_slots", g.non_informable_slots);
  }
  {
    Section s(j, "run");
    s.GetInt("n_dialogs", cfg.run.n_dialogs);
    s.GetInt("max_turns", cfg.run.max_turns);
    s.GetInt("seed", cfg.run.seed);
    s.GetInt("parallelism", cfg.run.parallelism);
    s.GetInt("empty_generation_retries", cfg.run.empty_generation_retries);
    s.Get("farewell_patterns", cfg.run.farewell_patterns);
    s.Get("annotator_farewell_acts", cfg.annotator.farewell_patterns);
    s.Get("annotator_farewells", cfg.annotator.farewells);
    s.GetInt("repetition_k", cfg.diagnostics.repetition_k);
    s.Get("assistant_phrases", cfg.diagnostics.assistant_phrases);
    s.GetInt("msttr_segment", cfg.lex.msttr_segment);
    s.GetInt("hdd_sample", cfg.lex.hdd_sample);
    s.Get("mtld_threshold", cfg.lex.mtld_threshold);
  }
  cfg.run.Validate();
  return cfg;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path, const ConfigOverrides& overrides) {
  Json j;
  try {
    j = ReadJsonFile(path);
  } catch (const Error& e) {
    throw Error(ErrorKind::kConfig, e.what());
  }
  ExperimentConfig cfg = ExperimentConfigFromJson(j, std::filesystem::absolute(path).parent_path());
  if (overrides.seed) cfg.run.seed = *overrides.seed;
  if (overrides.n_dialogs) cfg.run.n_dialogs = *overrides.n_dialogs;
  cfg.run.Validate();
  return cfg;
}

Json ExperimentConfig::Snapshot() const {
  const auto& gen = run.generation;
  const auto& g = run.goals;
  Json backend{{"kind", this->backend.kind},
               {"fixture", this->backend.fixture.empty() ? Json(nullptr) : Json(this->backend.fixture.string())},
               {"endpoint", this->backend.http.endpoint},
               {"model", this->backend.http.model},
               {"api", this->backend.http.chat ? "chat" : "completions"},
               {"api_key_env", this->backend.http.api_key_env},
               {"profile", this->backend.profile ? Json(*this->backend.profile) : Json(nullptr)},
               {"temperature", gen.temperature},
               {"max_tokens", gen.max_tokens},
               {"stop", gen.stop_sequences},
               {"seed", gen.request_seed ? Json(*gen.request_seed) : Json(nullptr)},
               {"retries", gen.retries},
               {"timeout_ms", gen.timeout.count()},
               {"requests_per_minute", this->backend.http.requests_per_minute},
               {"backoff_ms", this->backend.http.initial_backoff.count()}};
  Json system{{"kind", this->system.kind},
              {"database", this->system.database.empty() ? Json(nullptr) : Json(this->system.database.string())},
              {"empty_act_bye", this->system.mock.empty_act_bye},
              {"endpoint", this->system.http.endpoint},
              {"timeout_ms", this->system.http.timeout.count()}};
  Json prompt{{"description", DescriptionKindName(run.description)},
              {"requirements_format", RequirementsFormatName(run.requirements_format)},
              {"task_descriptions", PathOrNull(task_descriptions)},
              {"phrase_table", PathOrNull(phrase_table)}};
  Json shots{{"strategy", ShotKindName(run.shots.kind)}, {"k", run.shots.k}, {"corpus", shots_corpus.string()}};
  Json goals{{"ontology", PathOrNull(ontology)},
             {"domains_min", g.domains_min},
             {"domains_max", g.domains_max},
             {"informs_min", g.informs_per_domain_min},
             {"informs_max", g.informs_per_domain_max},
             {"requests_min", g.requests_per_domain_min},
             {"requests_max", g.requests_per_domain_max},
             {"booking_probability", g.booking_probability},
             {"requestable_slots", g.requestable_slots},
             {"non_informable_slots", g.non_informable_slots}};
  Json run_section{{"n_dialogs", run.n_dialogs},
                   {"max_turns", run.max_turns},
                   {"seed", run.seed},
                   {"parallelism", run.parallelism},
                   {"empty_generation_retries", run.empty_generation_retries},
                   {"farewell_patterns", run.farewell_patterns},
                   {"annotator_farewell_acts", annotator.farewell_patterns},
                   {"annotator_farewells", annotator.farewells},
                   {"repetition_k", diagnostics.repetition_k},
                   {"assistant_phrases", diagnostics.assistant_phrases},
                   {"msttr_segment", lex.msttr_segment},
                   {"hdd_sample", lex.hdd_sample},
                   {"mtld_threshold", lex.mtld_threshold}};
  return Json{{"backend", backend}, {"system", system}, {"prompt", prompt},
              {"shots", shots},     {"goals", goals},   {"run", run_section}};
}

std::string ExperimentConfig::RunId() const {
  Json snap = Snapshot();
  // Parallelism changes scheduling only, never results.
  snap["run"].erase("parallelism");
  return HexDigest(snap.dump());
}

}  // namespace usersim
