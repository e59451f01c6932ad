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

#include "usersim/goal_metrics.h"

#include <map>
#include <set>
#include <utility>

#include "usersim/error.h"
#include "usersim/text.h"

namespace usersim {
namespace {

using SlotKey = std::pair<std::string, std::string>;

// Informed slots that never count against precision.
bool IgnoredSlot(const std::string& slot) { return slot == "name" || slot == "choice" || slot == "ref"; }

void RequireActs(const Dialog& dialog) {
  for (const auto& turn : dialog.turns) {
    if (!turn.acts) {
      throw Error(ErrorKind::kMissingActs, dialog.id + ": turn " + std::to_string(turn.index) + " has no acts");
    }
  }
}

SlotKey KeyOf(const DialogActItem& a) { return {a.domain, NormalizeText(a.slot)}; }

bool ValidValue(const DialogActItem& act, const std::map<std::string, std::string>& offered,
                const EvalContext& ctx) {
  const std::string slot = NormalizeText(act.slot);
  if (ctx.database != nullptr && !ctx.database->Records(act.domain).empty()) {
    if (slot == "name") return ctx.database->FindByName(act.domain, act.value) != nullptr;
    if (auto it = offered.find(act.domain); it != offered.end()) {
      if (const auto* record = ctx.database->FindByName(act.domain, it->second)) {
        auto field = record->find(slot);
        if (field != record->end()) return ValuesMatch(field->second, act.value);
      }
    }
    return ctx.database->Contains(act.domain, slot, act.value);
  }
  if (ctx.ontology != nullptr && !ctx.ontology->Values(act.domain, slot).empty()) {
    return ctx.ontology->HasValue(act.domain, slot, act.value);
  }
  return !TrimWhitespace(act.value).empty();
}

// Last confirmed value per booked (domain, slot).
std::map<SlotKey, std::string> BookedValues(const Dialog& dialog) {
  std::map<SlotKey, std::string> booked;
  for (const auto& turn : dialog.turns) {
    if (turn.speaker != Speaker::kSystem) continue;
    for (const auto& act : *turn.acts) {
      if (act.intent.kind() == Intent::Kind::kBook) booked[KeyOf(act)] = act.value;
    }
  }
  return booked;
}

}  // namespace

InformScore ScoreFromCounts(size_t tp, size_t fp, size_t fn) {
  InformScore s;
  s.tp = tp;
  s.fp = fp;
  s.fn = fn;
  s.precision = tp + fp == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  s.recall = tp + fn == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  s.f1 = s.precision + s.recall == 0 ? 0.0 : 2 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

InformScore InformPrf(const Dialog& dialog, const UserGoal& goal, const EvalContext& ctx) {
  RequireActs(dialog);
  std::set<SlotKey> requested;
  std::map<SlotKey, std::string> constraints;
  for (const auto& item : goal.items) {
    const auto kind = item.intent.kind();
    if (kind == Intent::Kind::kRequest) requested.insert(KeyOf(item));
    if (kind == Intent::Kind::kInform || kind == Intent::Kind::kBook) constraints[KeyOf(item)] = item.value;
  }

  std::set<SlotKey> valid_requested, false_positive;
  std::map<std::string, std::string> offered;
  for (const auto& turn : dialog.turns) {
    if (turn.speaker != Speaker::kSystem) continue;
    for (const auto& act : *turn.acts) {
      if (act.intent.kind() != Intent::Kind::kInform) continue;
      const SlotKey key = KeyOf(act);
      if (key.second == "name") offered[act.domain] = act.value;
      if (IgnoredSlot(key.second)) continue;
      const bool valid = ValidValue(act, offered, ctx);
      if (requested.count(key)) {
        if (valid) {
          valid_requested.insert(key);
        } else {
          false_positive.insert(key);
        }
        continue;
      }
      auto echo = constraints.find(key);
      const bool matching_echo = echo != constraints.end() && ValuesMatch(echo->second, act.value);
      if (!matching_echo) false_positive.insert(key);
    }
  }
  const size_t tp = valid_requested.size();
  return ScoreFromCounts(tp, false_positive.size(), requested.size() - tp);
}

std::optional<double> BookRate(const Dialog& dialog, const UserGoal& goal) {
  RequireActs(dialog);
  const auto booked = BookedValues(dialog);
  size_t total = 0, matched = 0;
  for (const auto& item : goal.items) {
    if (item.intent.kind() != Intent::Kind::kBook) continue;
    ++total;
    auto it = booked.find(KeyOf(item));
    if (it != booked.end() && ValuesMatch(it->second, item.value)) ++matched;
  }
  if (total == 0) return std::nullopt;
  return static_cast<double>(matched) / static_cast<double>(total);
}

int CompletionFlag(const Dialog& dialog, const UserGoal& goal, const EvalContext& ctx) {
  RequireActs(dialog);
  const auto booked = BookedValues(dialog);
  bool any_book = false;
  for (const auto& item : goal.items) {
    if (item.intent.kind() != Intent::Kind::kBook) continue;
    any_book = true;
    if (!booked.count(KeyOf(item))) return 0;
  }
  if (any_book) return 1;
  return InformPrf(dialog, goal, ctx).fn == 0 ? 1 : 0;
}

int SuccessFlag(const Dialog& dialog, const UserGoal& goal, const EvalContext& ctx) {
  if (InformPrf(dialog, goal, ctx).fn != 0) return 0;
  const auto rate = BookRate(dialog, goal);
  return !rate || *rate == 1.0 ? 1 : 0;
}

GoalEvalRecord EvaluateDialog(const Dialog& dialog, const UserGoal& goal, const EvalContext& ctx) {
  GoalEvalRecord r;
  r.inform = InformPrf(dialog, goal, ctx);
  r.book_rate = BookRate(dialog, goal);
  r.complete = CompletionFlag(dialog, goal, ctx);
  r.success = r.inform.fn == 0 && (!r.book_rate || *r.book_rate == 1.0) ? 1 : 0;
  r.turns = dialog.UserTurnCount();
  return r;
}

GoalAggregate AggregateMetrics(std::span<const GoalEvalRecord> records) {
  if (records.empty()) throw Error(ErrorKind::kEmptyInput, "no evaluation records to aggregate");
  GoalAggregate agg;
  agg.n_dialogs = records.size();
  double compl_sum = 0, succ_sum = 0, book_sum = 0, dt_sum = 0, succ_dt_sum = 0;
  size_t book_n = 0, succ_n = 0, tp = 0, fp = 0, fn = 0;
  for (const auto& r : records) {
    compl_sum += r.complete;
    succ_sum += r.success;
    dt_sum += static_cast<double>(r.turns);
    if (r.book_rate) {
      book_sum += *r.book_rate;
      ++book_n;
    }
    if (r.success) {
      succ_dt_sum += static_cast<double>(r.turns);
      ++succ_n;
    }
    tp += r.inform.tp;
    fp += r.inform.fp;
    fn += r.inform.fn;
  }
  const double n = static_cast<double>(records.size());
  agg.compl_rate = compl_sum / n;
  agg.succ_rate = succ_sum / n;
  agg.dt = dt_sum / n;
  if (book_n > 0) agg.book_rate = book_sum / static_cast<double>(book_n);
  if (succ_n > 0) agg.succ_dt = succ_dt_sum / static_cast<double>(succ_n);
  agg.inform = ScoreFromCounts(tp, fp, fn);
  return agg;
}

}  // namespace usersim
