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

#include "usersim/commands.h"

#include <chrono>
#include <fstream>

#include "usersim/error.h"
#include "usersim/report.h"
#include "usersim/text.h"

namespace usersim {
namespace {

std::string DumpResult(const ExperimentResult& result) { return ResultToJson(result).dump(2) + "\n"; }

template <typename Fn>
int Guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

// Loads an input file, reporting problems as configuration errors.
template <typename Fn>
auto ConfigInput(const std::string& what, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(ErrorKind::kConfig, what + ": " + e.what());
  }
}

std::vector<std::string> UserUtterances(const std::vector<Dialog>& dialogs) {
  std::vector<std::string> out;
  for (const auto& d : dialogs) {
    for (const auto& t : d.turns) {
      if (t.speaker == Speaker::kUser) out.push_back(t.text);
    }
  }
  return out;
}

}  // namespace

int ExitCodeFor(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kConfig:
      return kExitConfig;
    case ErrorKind::kBackendUnreachable:
      return kExitBackendUnreachable;
    default:
      return kExitFailure;
  }
}

RunResources PreparedRun::Resources() const {
  RunResources res;
  res.shot_pool = shots.dialogs;
  res.ontology = &ontology;
  res.phrases = &phrases;
  res.descriptions = &descriptions;
  res.annotator = annotator.get();
  res.backend = backend;
  res.system = system.get();
  return res;
}

EvalContext PreparedRun::Context() const { return EvalContext{&ontology, database.get()}; }

std::unique_ptr<PreparedRun> PrepareRun(const ExperimentConfig& config) {
  auto run = std::make_unique<PreparedRun>();
  run->config = config;
  run->shots = ConfigInput("shots.corpus", [&] { return ParseCorpus(config.shots_corpus); });
  run->ontology = config.ontology ? ConfigInput("goals.ontology", [&] { return LoadOntology(*config.ontology); })
                                  : run->shots.ontology;
  if (run->ontology.empty()) throw Error(ErrorKind::kConfig, "goals: ontology is empty");
  run->phrases = ConfigInput("prompt.phrase_table", [&] {
    return PhraseTable::Load(config.phrase_table ? *config.phrase_table
                                                 : std::filesystem::path(USERSIM_DATA_DIR) / "phrase_table.json");
  });
  run->descriptions = ConfigInput("prompt.task_descriptions", [&] {
    return config.task_descriptions ? TaskDescriptions::Load(*config.task_descriptions) : TaskDescriptions::Builtin();
  });
  if (config.run.shots.k > run->shots.dialogs.size()) {
    throw Error(ErrorKind::kConfig, "shots.k exceeds the " + std::to_string(run->shots.dialogs.size()) +
                                        " dialogs of the shot corpus");
  }
  run->annotator = std::make_unique<Annotator>(run->ontology, config.annotator);

  if (config.system.kind == "mock") {
    run->database = std::make_shared<MockDatabase>(
        ConfigInput("system.database", [&] { return MockDatabase::Load(config.system.database); }));
    run->system = std::make_unique<MockSystem>(run->database, run->ontology, run->phrases, config.system.mock);
  } else {
    run->system = std::make_unique<HttpSystem>(config.system.http, run->ontology);
  }

  if (config.backend.kind == "replay") {
    auto scripts = std::make_shared<const std::vector<std::vector<std::string>>>(
        ConfigInput("backend.fixture", [&] { return LoadReplayScripts(config.backend.fixture); }));
    run->backend = [scripts](size_t i) -> std::shared_ptr<CompletionBackend> {
      return std::make_shared<ReplayBackend>((*scripts)[i % scripts->size()]);
    };
  } else if (config.backend.kind == "echo") {
    auto echo = std::make_shared<EchoBackend>();
    run->backend = [echo](size_t) -> std::shared_ptr<CompletionBackend> { return echo; };
  } else {
    auto limiter = std::make_shared<TokenBucket>(config.backend.http.requests_per_minute);
    auto http = std::make_shared<HttpBackend>(config.backend.http, limiter);
    run->backend = [http](size_t) -> std::shared_ptr<CompletionBackend> { return http; };
  }
  return run;
}

RunOutput ExecuteRun(const ExperimentConfig& config, const std::filesystem::path& out_root) {
  const auto start = std::chrono::steady_clock::now();
  auto prepared = PrepareRun(config);
  RunOutput out;
  out.run_id = config.RunId();
  out.dir = out_root / out.run_id;
  out.records = RunDialogs(config.run, prepared->Resources());
  out.result = EvaluateSessions(out.records, prepared->Context(), config.diagnostics, config.lex);
  out.result.run_id = out.run_id;
  out.result.config = config.Snapshot();
  const double total_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  WriteTranscripts(out.dir / "transcripts.jsonl", out.records, out.result);
  const Json result_json = ResultToJson(out.result);
  WriteTextFile(out.dir / "result.json", result_json.dump(2) + "\n");
  WriteTextFile(out.dir / "report.md", RenderReport({result_json}, ReportFormat::kMarkdown));
  Json timing{{"run_id", out.run_id}, {"total_ms", total_ms}, {"dialog_ms", Json::array()}};
  for (const auto& rec : out.records) {
    double sum = 0;
    for (double ms : rec.turn_ms) sum += ms;
    timing["dialog_ms"].push_back(sum);
  }
  WriteTextFile(out.dir / "timing.json", timing.dump(2) + "\n");
  return out;
}

int CmdRun(const std::filesystem::path& config_path, const ConfigOverrides& overrides,
           const std::filesystem::path& out_root, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    const ExperimentConfig config = LoadExperimentConfig(config_path, overrides);
    const RunOutput run = ExecuteRun(config, out_root);
    size_t unreachable = 0;
    for (const auto& rec : run.records) {
      if (rec.failure && rec.failure->rfind(std::string(ErrorKindName(ErrorKind::kBackendUnreachable)), 0) == 0) {
        ++unreachable;
      }
    }
    out << run.dir.string() << "\n";
    if (!run.records.empty() && unreachable == run.records.size()) {
      err << "error: every dialog failed to reach the backend\n";
      return kExitBackendUnreachable;
    }
    return kExitOk;
  });
}

int CmdEvaluate(const std::filesystem::path& transcripts, const std::filesystem::path& corpus,
                const std::optional<std::filesystem::path>& database,
                const std::optional<std::filesystem::path>& out_path, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    const auto records = ReadTranscripts(transcripts);
    const Ontology ontology = LoadOntology(corpus);
    const auto sibling = transcripts.parent_path() / "result.json";

    std::string run_id = HexDigest(ReadJsonFile(corpus).dump());
    Json config_snapshot = nullptr;
    DiagnosticsConfig diagnostics;
    LexOptions lex;
    std::optional<std::filesystem::path> db_path = database;
    if (std::filesystem::exists(sibling)) {
      const Json stored = ReadJsonFile(sibling);
      run_id = stored.value("run_id", run_id);
      config_snapshot = stored.value("config", Json(nullptr));
      if (config_snapshot.is_object()) {
        const ExperimentConfig cfg = ExperimentConfigFromJson(config_snapshot, "");
        diagnostics = cfg.diagnostics;
        lex = cfg.lex;
        if (!db_path && cfg.system.kind == "mock") db_path = cfg.system.database;
      }
    }
    std::optional<MockDatabase> db;
    if (db_path) db = MockDatabase::Load(*db_path);

    ExperimentResult result = EvaluateSessions(records, EvalContext{&ontology, db ? &*db : nullptr}, diagnostics, lex);
    result.run_id = run_id;
    result.config = config_snapshot;
    const auto target = out_path ? *out_path : transcripts.parent_path() / "result.evaluated.json";
    WriteTextFile(target, DumpResult(result));
    for (const auto& d : result.dialogs) {
      if (d.error) err << d.id << ": " << *d.error << "\n";
    }
    out << target.string() << "\n";
    return kExitOk;
  });
}

int CmdReport(const std::filesystem::path& results, const std::string& format, std::ostream& out,
              std::ostream& err) {
  return Guarded(err, [&] {
    out << RenderReport(LoadResults(results), ParseReportFormat(format));
    return kExitOk;
  });
}

int CmdLexdiv(const std::filesystem::path& input, const LexdivOptions& options, std::ostream& out,
              std::ostream& err) {
  return Guarded(err, [&] {
    LexOptions lex;
    lex.msttr_segment = options.segment;
    lex.hdd_sample = options.hdd_sample;
    const std::string ext = input.extension().string();
    if (options.baseline) {
      const Corpus corpus = ParseCorpus(input);
      const BaselineSample sample = SampleHumanBaseline(corpus, options.repetitions, options.per_repetition,
                                                        options.seed, lex, options.parallelism);
      Json j = LexMetricsToJson(sample.metric_table);
      j["repetitions"] = sample.n_repetitions;
      j["dialogs_per_repetition"] = sample.dialogs_per_repetition;
      out << j.dump(2) << "\n";
      return kExitOk;
    }
    std::vector<std::string> utterances;
    if (ext == ".jsonl") {
      std::vector<Dialog> dialogs;
      for (auto& rec : ReadTranscripts(input)) dialogs.push_back(std::move(rec.dialog));
      utterances = UserUtterances(dialogs);
    } else if (ext == ".json") {
      utterances = UserUtterances(ParseCorpus(input).dialogs);
    } else {
      std::ifstream in(input);
      if (!in) throw Error(ErrorKind::kIo, "cannot read " + input.string());
      for (std::string line; std::getline(in, line);) utterances.push_back(line);
    }
    const TokenStream stream = Tokenize(utterances);
    if (stream.tokens.empty()) throw Error(ErrorKind::kEmptyStream, input.string() + " has no user tokens");
    out << LexMetricsToJson(ComputeLexMetrics(stream, lex)).dump(2) << "\n";
    return kExitOk;
  });
}

int CmdGenGoals(const std::filesystem::path& ontology_path, size_t n, uint64_t seed, const std::string& format,
                std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    const Ontology ontology = LoadOntology(ontology_path);
    const PhraseTable phrases = PhraseTable::Load(std::filesystem::path(USERSIM_DATA_DIR) / "phrase_table.json");
    const RequirementsFormat fmt = ParseRequirementsFormat(format);
    RunConfig cfg;
    cfg.seed = seed;
    for (size_t i = 0; i < n; ++i) {
      const UserGoal goal = GoalForDialog(cfg, ontology, i);
      std::vector<std::string> warnings;
      Json line{{"index", i}, {"goal", GoalToJson(goal)},
                {"requirements", RenderRequirements(goal, fmt, phrases, &warnings)}};
      for (const auto& w : warnings) err << "warning: " << w << "\n";
      out << line.dump() << "\n";
    }
    return kExitOk;
  });
}

int CmdImportMultiwoz(const std::filesystem::path& in, const std::filesystem::path& out_path,
                      const std::optional<std::filesystem::path>& reference_ontology, std::ostream& out,
                      std::ostream& err) {
  return Guarded(err, [&] {
    std::optional<Ontology> reference;
    if (reference_ontology) reference = LoadOntology(*reference_ontology);
    const ImportResult imported = ImportMultiwoz(in, reference ? &*reference : nullptr);
    WriteCorpus(imported.corpus, out_path);
    for (const auto& s : imported.skipped) err << "skipped " << s.id << ": " << s.reason << "\n";
    out << "imported " << imported.corpus.dialogs.size() << " dialogs, skipped " << imported.skipped.size()
        << "\n";
    return kExitOk;
  });
}

}  // namespace usersim
