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

#include "usersim/experiment.h"

#include <fstream>
#include <sstream>

#include "json_util.h"
#include "usersim/error.h"
#include "usersim/text.h"

namespace usersim {
namespace {

Json Opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }
Json Opt(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }
Json Opt(const std::optional<std::string>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> OptDouble(const Json& j, std::string_view key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}

Json InformToJson(const InformScore& s) {
  return Json{{"tp", s.tp}, {"fp", s.fp}, {"fn", s.fn},
              {"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

Json FlagsToJson(const BreakdownFlags& f) {
  Json contradictions = Json::array();
  for (const auto& c : f.goal_contradictions) {
    contradictions.push_back(Json{{"turn", c.turn}, {"domain", c.domain}, {"slot", c.slot},
                                  {"goal_value", c.goal_value}, {"uttered_value", c.uttered_value}});
  }
  return Json{{"premature_termination", f.premature_termination},
              {"repetition_turn", Opt(f.repetition_turn)},
              {"role_confusion_turn", Opt(f.role_confusion_turn)},
              {"goal_contradictions", contradictions}};
}

Json DialogEvaluationToJson(const DialogEvaluation& d) {
  Json j{{"id", d.id},
         {"outcome", OutcomeName(d.outcome)},
         {"termination", TerminationName(d.termination)},
         {"failure", Opt(d.failure)},
         {"error", Opt(d.error)}};
  if (d.eval) {
    j["success"] = d.eval->success;
    j["complete"] = d.eval->complete;
    j["book_rate"] = Opt(d.eval->book_rate);
    j["inform"] = InformToJson(d.eval->inform);
    j["turns"] = d.eval->turns;
  } else {
    j["success"] = j["complete"] = j["book_rate"] = j["inform"] = j["turns"] = nullptr;
  }
  j["flags"] = d.flags ? FlagsToJson(*d.flags) : Json(nullptr);
  return j;
}

}  // namespace

ExperimentResult EvaluateSessions(const std::vector<SessionRecord>& records, const EvalContext& ctx,
                                  const DiagnosticsConfig& diagnostics, const LexOptions& lex) {
  ExperimentResult result;
  std::vector<GoalEvalRecord> scored;
  std::vector<std::string> utterances;
  size_t premature = 0, repetition = 0, role = 0, contradiction = 0;
  for (const auto& rec : records) {
    DialogEvaluation d;
    d.id = rec.dialog.id;
    d.outcome = rec.dialog.outcome;
    d.termination = rec.termination;
    d.failure = rec.failure;
    for (const auto& turn : rec.dialog.turns) {
      if (turn.speaker == Speaker::kUser) utterances.push_back(turn.text);
    }
    try {
      d.eval = EvaluateDialog(rec.dialog, rec.dialog.goal, ctx);
      d.flags = Diagnose(rec, *d.eval, diagnostics);
      scored.push_back(*d.eval);
      premature += d.flags->premature_termination;
      repetition += d.flags->repetition();
      role += d.flags->role_confusion();
      contradiction += !d.flags->goal_contradictions.empty();
    } catch (const Error& e) {
      d.eval.reset();
      d.flags.reset();
      d.error = e.what();
    }
    result.dialogs.push_back(std::move(d));
  }
  if (!scored.empty()) {
    result.goal_table = AggregateMetrics(scored);
    const double n = static_cast<double>(scored.size());
    result.flag_rates = {static_cast<double>(premature) / n, static_cast<double>(repetition) / n,
                         static_cast<double>(role) / n, static_cast<double>(contradiction) / n};
  }
  result.lex_table = ComputeLexMetrics(Tokenize(utterances), lex);
  return result;
}

Json LexMetricsToJson(const LexMetrics& m) {
  return Json{{"n_utterances", m.n_utterances},  {"mean_length", Opt(m.mean_length)},
              {"unigrams", Opt(m.unigrams)},       {"bigrams", Opt(m.bigrams)},
              {"trigrams", Opt(m.trigrams)},       {"shannon_entropy", Opt(m.shannon_entropy)},
              {"conditional_entropy", Opt(m.conditional_entropy)},
              {"msttr", Opt(m.msttr)},             {"hdd", Opt(m.hdd)},
              {"mtld", Opt(m.mtld)}};
}

LexMetrics LexMetricsFromJson(const Json& j) {
  LexMetrics m;
  m.n_utterances = j.value("n_utterances", 0.0);
  m.mean_length = OptDouble(j, "mean_length");
  m.unigrams = OptDouble(j, "unigrams");
  m.bigrams = OptDouble(j, "bigrams");
  m.trigrams = OptDouble(j, "trigrams");
  m.shannon_entropy = OptDouble(j, "shannon_entropy");
  m.conditional_entropy = OptDouble(j, "conditional_entropy");
  m.msttr = OptDouble(j, "msttr");
  m.hdd = OptDouble(j, "hdd");
  m.mtld = OptDouble(j, "mtld");
  return m;
}

Json GoalAggregateToJson(const GoalAggregate& a) {
  return Json{{"n_dialogs", a.n_dialogs},
              {"compl_rate", a.compl_rate},
              {"succ_rate", a.succ_rate},
              {"book_rate", Opt(a.book_rate)},
              {"inform_precision", a.inform.precision},
              {"inform_recall", a.inform.recall},
              {"inform_f1", a.inform.f1},
              {"succ_dt", Opt(a.succ_dt)},
              {"dt", a.dt}};
}

Json ResultToJson(const ExperimentResult& result) {
  Json dialogs = Json::array();
  for (const auto& d : result.dialogs) dialogs.push_back(DialogEvaluationToJson(d));
  return Json{{"run_id", result.run_id},
              {"config", result.config},
              {"goal_table", result.goal_table ? GoalAggregateToJson(*result.goal_table) : Json(nullptr)},
              {"lex_table", LexMetricsToJson(result.lex_table)},
              {"flag_rates",
               Json{{"premature_termination", result.flag_rates.premature_termination},
                    {"repetition", result.flag_rates.repetition},
                    {"role_confusion", result.flag_rates.role_confusion},
                    {"goal_contradiction", result.flag_rates.goal_contradiction}}},
              {"dialogs", dialogs}};
}

Json SessionToJson(const SessionRecord& record, const BreakdownFlags* flags) {
  Json hashes = Json::array();
  for (const auto& p : record.prompt_trace) hashes.push_back(HexDigest(p.text));
  return Json{{"id", record.dialog.id},
              {"goal", GoalToJson(record.dialog.goal)},
              {"turns", TurnsToJson(record.dialog.turns)},
              {"outcome", OutcomeName(record.dialog.outcome)},
              {"termination", TerminationName(record.termination)},
              {"failure", Opt(record.failure)},
              {"prompt_hashes", hashes},
              {"raw_completions", record.raw_completions},
              {"turn_ms", record.turn_ms},
              {"flags", flags != nullptr ? FlagsToJson(*flags) : Json(nullptr)}};
}

SessionRecord SessionFromJson(const Json& j, const std::string& pointer) {
  RequireObject(j, pointer);
  SessionRecord rec;
  rec.dialog.id = StringField(j, "id", pointer);
  rec.dialog.goal = GoalFromJson(RequireField(j, "goal", pointer), Child(pointer, "goal"));
  rec.dialog.turns = TurnsFromJson(RequireField(j, "turns", pointer), Child(pointer, "turns"));
  try {
    rec.dialog.outcome = ParseOutcome(StringField(j, "outcome", pointer));
    rec.termination = ParseTermination(StringField(j, "termination", pointer));
  } catch (const Error& e) {
    SchemaFail(pointer, e.what());
  }
  if (auto it = j.find("failure"); it != j.end() && !it->is_null()) {
    rec.failure = RequireString(*it, Child(pointer, "failure"));
  }
  if (auto it = j.find("raw_completions"); it != j.end()) {
    RequireArray(*it, Child(pointer, "raw_completions"));
    for (size_t i = 0; i < it->size(); ++i) {
      rec.raw_completions.push_back(RequireString((*it)[i], Child(Child(pointer, "raw_completions"), i)));
    }
  }
  if (auto it = j.find("turn_ms"); it != j.end()) {
    RequireArray(*it, Child(pointer, "turn_ms"));
    for (const auto& v : *it) {
      if (!v.is_number()) SchemaFail(Child(pointer, "turn_ms"), "expected numbers");
      rec.turn_ms.push_back(v.get<double>());
    }
  }
  return rec;
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

void WriteTranscripts(const std::filesystem::path& path, const std::vector<SessionRecord>& records,
                      const ExperimentResult& result) {
  std::string text;
  for (size_t i = 0; i < records.size(); ++i) {
    const BreakdownFlags* flags = nullptr;
    if (i < result.dialogs.size() && result.dialogs[i].flags) flags = &*result.dialogs[i].flags;
    text += SessionToJson(records[i], flags).dump();
    text += "\n";
  }
  WriteTextFile(path, text);
}

std::vector<SessionRecord> ReadTranscripts(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::vector<SessionRecord> records;
  std::string line;
  for (size_t n = 1; std::getline(in, line); ++n) {
    if (TrimWhitespace(line).empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorKind::kSchema, path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
    try {
      records.push_back(SessionFromJson(j, ""));
    } catch (const Error& e) {
      throw Error(ErrorKind::kSchema, path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return records;
}

}  // namespace usersim
