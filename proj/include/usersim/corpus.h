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

#ifndef USERSIM_CORPUS_H_
#define USERSIM_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "usersim/dialog.h"
#include "usersim/lex_metrics.h"

namespace usersim {

using Json = nlohmann::ordered_json;

enum class Split { kTrain, kDev, kTest, kUnspecified };

std::string_view SplitName(Split s);
Split ParseSplit(std::string_view name);

struct Corpus {
  std::vector<Dialog> dialogs;
  Ontology ontology;
  Split split = Split::kUnspecified;
  // Act tokens that did not resolve against the ontology, as
  // "<dialog id>/<turn>: <token>". Informational, never serialized.
  std::vector<std::string> unknown_tokens;
};

// Reads and validates a corpus file. Schema problems raise SchemaError with
// the JSON pointer of the offending field; alternation, duplicate ids and
// goals outside the ontology raise ValidationError.
Corpus ParseCorpus(const std::filesystem::path& path);
Corpus CorpusFromJson(const Json& doc);
Json CorpusToJson(const Corpus& corpus);
void WriteCorpus(const Corpus& corpus, const std::filesystem::path& path);

// Codecs shared with the transcript writer. `pointer` is the JSON pointer of
// `j`, used in error messages.
Json ActToJson(const DialogActItem& act);
DialogActItem ActFromJson(const Json& j, const std::string& pointer);
Json ActsToJson(const std::optional<std::vector<DialogActItem>>& acts);
std::optional<std::vector<DialogActItem>> ActsFromJson(const Json& j, const std::string& pointer);
Json GoalToJson(const UserGoal& goal);
UserGoal GoalFromJson(const Json& j, const std::string& pointer);
Json TurnsToJson(const std::vector<Turn>& turns);
std::vector<Turn> TurnsFromJson(const Json& j, const std::string& pointer);
Json OntologyToJson(const Ontology& ontology);
Ontology OntologyFromJson(const Json& j, const std::string& pointer = "");

Json ReadJsonFile(const std::filesystem::path& path);
Ontology LoadOntology(const std::filesystem::path& path);

struct SkippedDialog {
  std::string id;
  std::string reason;
};

struct ImportResult {
  Corpus corpus;
  std::vector<SkippedDialog> skipped;  // non-empty means a partial import
};

// Converts a MultiWOZ 2.1 data file (dialog id -> {goal, log}). Without a
// reference ontology, one is derived from every goal and act value seen;
// with one, unresolved act tokens go to corpus.unknown_tokens.
ImportResult ImportMultiwoz(const std::filesystem::path& raw_path,
                            const Ontology* reference = nullptr);
ImportResult ImportMultiwozJson(const Json& raw, const Ontology* reference = nullptr);

struct BaselineSample {
  size_t n_repetitions = 0;
  size_t dialogs_per_repetition = 0;
  LexMetrics metric_table;  // metric-wise mean over repetitions
};

// Human lexical-diversity reference: each repetition r draws
// `dialogs_per_rep` dialogs without replacement using seed + r and measures
// their USER turns; the table is the mean over repetitions.
BaselineSample SampleHumanBaseline(const Corpus& corpus, size_t n_reps = 1000,
                                   size_t dialogs_per_rep = 200, uint64_t seed = 0,
                                   const LexOptions& options = {}, int parallelism = 1);

}  // namespace usersim

#endif  // USERSIM_CORPUS_H_
