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

#ifndef USERSIM_GOAL_METRICS_H_
#define USERSIM_GOAL_METRICS_H_

#include <optional>
#include <span>

#include "usersim/dialog.h"
#include "usersim/dialog_system.h"

namespace usersim {

// Sources used to judge whether a system-informed value is valid. With a
// database, values are checked against the record last offered by name in
// the domain (or any record before an offer); otherwise against ontology
// membership. Either pointer may be null.
struct EvalContext {
  const Ontology* ontology = nullptr;
  const MockDatabase* database = nullptr;
};

struct InformScore {
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;
};

struct GoalEvalRecord {
  int success = 0;
  int complete = 0;
  std::optional<double> book_rate;  // none without book items
  InformScore inform;
  size_t turns = 0;
};

// P and R are 1 when their denominator is 0; F1 is 0 when P + R = 0.
InformScore ScoreFromCounts(size_t tp, size_t fp, size_t fn);

// Throws MissingActs if any turn lacks an act list.
InformScore InformPrf(const Dialog& dialog, const UserGoal& goal, const EvalContext& ctx);
int SuccessFlag(const Dialog& dialog, const UserGoal& goal, const EvalContext& ctx);
int CompletionFlag(const Dialog& dialog, const UserGoal& goal, const EvalContext& ctx);
std::optional<double> BookRate(const Dialog& dialog, const UserGoal& goal);
GoalEvalRecord EvaluateDialog(const Dialog& dialog, const UserGoal& goal, const EvalContext& ctx);

struct GoalAggregate {
  size_t n_dialogs = 0;
  double compl_rate = 0;
  double succ_rate = 0;
  std::optional<double> book_rate;  // mean over dialogs with book items
  InformScore inform;               // pooled counts
  std::optional<double> succ_dt;    // mean turns of successful dialogs
  double dt = 0;
};

// Throws EmptyInput for an empty list.
GoalAggregate AggregateMetrics(std::span<const GoalEvalRecord> records);

}  // namespace usersim

#endif  // USERSIM_GOAL_METRICS_H_
