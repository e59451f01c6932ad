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

#include "usersim/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "usersim/error.h"

namespace usersim {
namespace {

struct Column {
  std::string header;
  std::string table;  // goal_table | lex_table | flag_rates
  std::string key;
  int decimals;
};

const std::vector<Column>& GoalColumns() {
  static const std::vector<Column> kColumns = {
      {"Compl Rate", "goal_table", "compl_rate", 2},    {"Succ Rate", "goal_table", "succ_rate", 2},
      {"Book Rate", "goal_table", "book_rate", 2},      {"Inform Prec", "goal_table", "inform_precision", 2},
      {"Inform Rec", "goal_table", "inform_recall", 2}, {"Inform F1", "goal_table", "inform_f1", 2},
      {"Succ DT", "goal_table", "succ_dt", 2},          {"DT", "goal_table", "dt", 2},
  };
  return kColumns;
}

const std::vector<Column>& LexColumns() {
  static const std::vector<Column> kColumns = {
      {"#UUtt", "lex_table", "n_utterances", 0},    {"UUtt Length", "lex_table", "mean_length", 2},
      {"Unigrams", "lex_table", "unigrams", 0},     {"Bigrams", "lex_table", "bigrams", 0},
      {"Trigrams", "lex_table", "trigrams", 0},     {"SE", "lex_table", "shannon_entropy", 2},
      {"CE", "lex_table", "conditional_entropy", 2}, {"MSTTR", "lex_table", "msttr", 2},
      {"HDD", "lex_table", "hdd", 2},               {"MTLD", "lex_table", "mtld", 2},
  };
  return kColumns;
}

const std::vector<Column>& FlagColumns() {
  static const std::vector<Column> kColumns = {
      {"Premature Termination", "flag_rates", "premature_termination", 2},
      {"Repetition", "flag_rates", "repetition", 2},
      {"Role Confusion", "flag_rates", "role_confusion", 2},
      {"Goal Contradiction", "flag_rates", "goal_contradiction", 2},
  };
  return kColumns;
}

const Json* Cell(const Json& result, const Column& c) {
  auto t = result.find(c.table);
  if (t == result.end() || !t->is_object()) return nullptr;
  auto v = t->find(c.key);
  if (v == t->end() || !v->is_number()) return nullptr;
  return &*v;
}

std::string Format(const Json* v, int decimals) {
  if (v == nullptr) return "-";
  const double x = v->get<double>();
  char buf[64];
  if (decimals == 0 && std::floor(x) != x) {
    std::snprintf(buf, sizeof(buf), "%.1f", x);
  } else {
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
  }
  return buf;
}

std::string MarkdownTable(const std::string& title, const std::vector<Column>& columns,
                          const std::vector<Json>& results) {
  std::string out = "## " + title + "\n\n| Run |";
  for (const auto& c : columns) out += " " + c.header + " |";
  out += "\n|---|";
  for (size_t i = 0; i < columns.size(); ++i) out += "---:|";
  out += "\n";
  for (const auto& r : results) {
    out += "| " + r.value("run_id", std::string("?")) + " |";
    for (const auto& c : columns) out += " " + Format(Cell(r, c), c.decimals) + " |";
    out += "\n";
  }
  return out;
}

Json JsonTable(const std::vector<Column>& columns, const std::vector<Json>& results) {
  Json rows = Json::array();
  for (const auto& r : results) {
    Json row{{"run_id", r.value("run_id", std::string("?"))}};
    for (const auto& c : columns) {
      const Json* v = Cell(r, c);
      row[c.header] = v != nullptr ? *v : Json(nullptr);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

ReportFormat ParseReportFormat(std::string_view name) {
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  if (name == "json") return ReportFormat::kJson;
  throw Error(ErrorKind::kConfig, "unknown report format '" + std::string(name) + "'");
}

std::vector<Json> LoadResults(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_regular_file(dir)) {
    files.push_back(dir);
  } else if (std::filesystem::is_directory(dir)) {
    for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().filename() == "result.json") files.push_back(entry.path());
    }
  }
  if (files.empty()) throw Error(ErrorKind::kNoResults, "no result.json under " + dir.string());
  std::sort(files.begin(), files.end());
  std::vector<Json> results;
  for (const auto& f : files) results.push_back(ReadJsonFile(f));
  return results;
}

std::string RenderReport(std::vector<Json> results, ReportFormat format) {
  if (results.empty()) throw Error(ErrorKind::kNoResults, "no results to report");
  std::stable_sort(results.begin(), results.end(), [](const Json& a, const Json& b) {
    return a.value("run_id", std::string()) < b.value("run_id", std::string());
  });
  if (format == ReportFormat::kJson) {
    return Json{{"goal_table", JsonTable(GoalColumns(), results)},
                {"lex_table", JsonTable(LexColumns(), results)},
                {"flag_rates", JsonTable(FlagColumns(), results)}}
               .dump(2) +
           "\n";
  }
  return MarkdownTable("Goal fulfillment", GoalColumns(), results) + "\n" +
         MarkdownTable("Lexical diversity", LexColumns(), results) + "\n" +
         MarkdownTable("Breakdown flags (share of dialogs)", FlagColumns(), results);
}

}  // namespace usersim
