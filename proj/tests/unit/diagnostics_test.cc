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


#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "usersim/diagnostics.h"

namespace usersim {
namespace {

SessionRecord Record(const std::vector<std::string>& user, TerminationReason why = TerminationReason::kUserFarewell) {
  SessionRecord r;
  int index = 0;
  for (const auto& u : user) {
    r.dialog.turns.push_back({Speaker::kUser, u, std::vector<DialogActItem>{}, index++});
    r.dialog.turns.push_back({Speaker::kSystem, "ok", std::vector<DialogActItem>{}, index++});
    r.raw_completions.push_back(" " + u);
  }
  r.termination = why;
  r.dialog.outcome = why == TerminationReason::kMaxTurns ? Outcome::kMaxTurns : Outcome::kCompleted;
  return r;
}

GoalEvalRecord Eval(int complete, double recall) {
  GoalEvalRecord e;
  e.complete = complete;
  e.success = complete && recall == 1.0;
  e.inform.recall = recall;
  return e;
}

TEST(PrematureTerminationTest, Cases) {
  const auto give_up = Record({"I need a hotel .", "I will end my search here . Bye ."});
  EXPECT_TRUE(DetectPrematureTermination(give_up, Eval(0, 1.0)));
  EXPECT_TRUE(DetectPrematureTermination(give_up, Eval(1, 0.5)));
  EXPECT_FALSE(DetectPrematureTermination(give_up, Eval(1, 1.0)));
  const auto capped = Record({"a", "b"}, TerminationReason::kMaxTurns);
  EXPECT_FALSE(DetectPrematureTermination(capped, Eval(0, 0.0)));
  auto failed = give_up;
  failed.dialog.outcome = Outcome::kGenerationFailure;
  EXPECT_FALSE(DetectPrematureTermination(failed, Eval(0, 0.0)));
}

TEST(RepetitionTest, Cases) {
  const auto looping = Record({"Hello .", "Can you tell me about the restaurant ?", "can you tell me about the restaurant?",
                               "Can you tell me about the restaurant ?"});
  EXPECT_EQ(DetectRepetition(looping, 3), 2);
  EXPECT_FALSE(DetectRepetition(looping, 4).has_value());
  EXPECT_FALSE(DetectRepetition(Record({"a", "b", "c"}), 3).has_value());
  EXPECT_EQ(DetectRepetition(Record({"a", "b"}), 1), 0);
  for (size_t k = 1; k <= 3; ++k) EXPECT_TRUE(DetectRepetition(looping, k).has_value()) << "monotone at " << k;
}

TEST(RoleConfusionTest, Cases) {
  const DiagnosticsConfig defaults;
  const auto echoing = Record({"I need a hotel .", "Booking was successful . Reference number is : 00000038 ."});
  EXPECT_EQ(DetectRoleConfusion(echoing, defaults.assistant_phrases), 2);
  EXPECT_FALSE(DetectRoleConfusion(Record({"I need a hotel .", "Thanks , bye ."}), defaults.assistant_phrases));
  EXPECT_FALSE(DetectRoleConfusion(echoing, {}).has_value());
  auto raw = Record({"I need a hotel .", "Thanks ."});
  raw.raw_completions[1] = " Thanks .\nASSISTANT: You are welcome";
  EXPECT_EQ(DetectRoleConfusion(raw, {}), 2);
}

TEST(GoalContradictionTest, Cases) {
  auto r = Record({"I am not interested in Chinese food .", "An expensive place please ."});
  r.dialog.goal.items = {MakeAct("inform", "restaurant", "food", "lebanese"),
                         MakeAct("inform", "restaurant", "area", "centre")};
  r.dialog.turns[0].acts = std::vector<DialogActItem>{MakeAct("inform", "restaurant", "food", "chinese")};
  r.dialog.turns[2].acts = std::vector<DialogActItem>{MakeAct("inform", "restaurant", "pricerange", "expensive")};
  const auto found = DetectGoalContradictions(r, r.dialog.goal);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].turn, 0);
  EXPECT_EQ(found[0].slot, "food");
  EXPECT_EQ(found[0].goal_value, "lebanese");
  EXPECT_EQ(found[0].uttered_value, "chinese");
  r.dialog.turns[0].acts = std::vector<DialogActItem>{MakeAct("inform", "restaurant", "food", "Lebanese")};
  EXPECT_TRUE(DetectGoalContradictions(r, r.dialog.goal).empty());
}

TEST(DiagnoseTest, PureAndSuccessfulDialogsNotPremature) {
  const auto r = Record({"x", "x", "x"});
  const auto a = Diagnose(r, Eval(1, 1.0));
  const auto b = Diagnose(r, Eval(1, 1.0));
  EXPECT_EQ(a.repetition_turn, b.repetition_turn);
  EXPECT_EQ(a.role_confusion_turn, b.role_confusion_turn);
  EXPECT_FALSE(a.premature_termination);
  EXPECT_TRUE(a.repetition());
}

}  // namespace
}  // namespace usersim
