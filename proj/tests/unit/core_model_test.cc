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


#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "usersim/dialog.h"
#include "usersim/error.h"
#include "usersim/text.h"

namespace usersim {
namespace {

TEST(NormalizeTextTest, Examples) {
  EXPECT_EQ(NormalizeText("  Moderate "), "moderate");
  EXPECT_EQ(NormalizeText("I'm looking!"), "i ' m looking !");
  EXPECT_EQ(NormalizeText(""), "");
  EXPECT_EQ(NormalizeText("arrive by 19:30."), "arrive by 19 : 30 .");
  EXPECT_EQ(NormalizeText("a\t\n b"), "a b");
}

TEST(NormalizeTextTest, IdempotentOnRandomText) {
  const std::string alphabet = "aB z.,!?'\t\n:-Q9";
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string s;
    const int len = std::uniform_int_distribution<int>(0, 30)(rng);
    for (int i = 0; i < len; ++i) {
      s.push_back(alphabet[std::uniform_int_distribution<size_t>(0, alphabet.size() - 1)(rng)]);
    }
    const std::string once = NormalizeText(s);
    EXPECT_EQ(NormalizeText(once), once) << "input: " << s;
    EXPECT_EQ(once, TrimWhitespace(once));
    EXPECT_EQ(once.find("  "), std::string::npos);
  }
}

TEST(TextTest, TokenRuns) {
  const auto hay = NormalizedTokens("That is all I need, thanks.");
  EXPECT_TRUE(ContainsTokenRun(hay, NormalizedTokens("that is all")));
  EXPECT_FALSE(ContainsTokenRun(hay, NormalizedTokens("is all i needed")));
  EXPECT_TRUE(ContainsPhrase("Bye now", "bye"));
  EXPECT_EQ(Join(std::vector<std::string>{"a", "b", "c"}, ", "), "a, b, c");
}

TEST(ActsMatchTest, Examples) {
  EXPECT_TRUE(ActsMatch(MakeAct("inform", "restaurant", "food", "Italian"),
                        MakeAct("inform", "restaurant", "food", "italian")));
  EXPECT_FALSE(ActsMatch(MakeAct("inform", "restaurant", "food", "italian"),
                         MakeAct("inform", "restaurant", "food", "chinese")));
  EXPECT_TRUE(ActsMatch(MakeAct("request", "hotel", "phone"), MakeAct("request", "hotel", "phone")));
  EXPECT_FALSE(ActsMatch(MakeAct("inform", "hotel", "area", "north"), MakeAct("book", "hotel", "area", "north")));
}

TEST(ActsMatchTest, EquivalenceRelation) {
  const std::vector<DialogActItem> acts = {
      MakeAct("inform", "restaurant", "food", "Italian"), MakeAct("inform", "restaurant", "food", "italian"),
      MakeAct("INFORM", "Restaurant", "FOOD", "italian "), MakeAct("inform", "restaurant", "food", "chinese"),
      MakeAct("request", "hotel", "phone"),               MakeAct("Request", "hotel", "Phone"),
      MakeAct("bye", "general"),                          MakeAct("recommend", "restaurant", "name", "x")};
  for (const auto& a : acts) {
    EXPECT_TRUE(ActsMatch(a, a));
    for (const auto& b : acts) {
      EXPECT_EQ(ActsMatch(a, b), ActsMatch(b, a));
      for (const auto& c : acts) {
        if (ActsMatch(a, b) && ActsMatch(b, c)) EXPECT_TRUE(ActsMatch(a, c));
      }
    }
  }
}

TEST(IntentTest, OpenVocabulary) {
  EXPECT_EQ(Intent::Parse("Inform").kind(), Intent::Kind::kInform);
  EXPECT_EQ(Intent::Parse("REQUEST").kind(), Intent::Kind::kRequest);
  const Intent other = Intent::Parse("Recommend");
  EXPECT_EQ(other.kind(), Intent::Kind::kOther);
  EXPECT_EQ(other.token(), "recommend");
}

TEST(DialogActItemTest, Validation) {
  EXPECT_NO_THROW(MakeAct("inform", "hotel", "area", "north").Validate());
  EXPECT_NO_THROW(MakeAct("bye", "general").Validate());
  EXPECT_THROW(MakeAct("inform", "hotel", "", "north").Validate(), Error);
  EXPECT_THROW(MakeAct("request", "hotel", "phone", "0123").Validate(), Error);
  EXPECT_THROW(MakeAct("inform", "", "area", "north").Validate(), Error);
}

TEST(UserGoalTest, Validation) {
  UserGoal goal;
  EXPECT_THROW(goal.Validate(), Error);
  goal.items = {MakeAct("inform", "hotel", "area", "north"), MakeAct("request", "hotel", "phone"),
                MakeAct("book", "hotel", "people", "2")};
  EXPECT_NO_THROW(goal.Validate());
  goal.items.push_back(MakeAct("inform", "hotel", "area", "south"));
  try {
    goal.Validate();
    FAIL() << "duplicate (domain, slot) accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidation);
  }
}

TEST(DialogTest, AlternationAndCounts) {
  Dialog d;
  d.turns = {{Speaker::kUser, "hi", std::nullopt, 0}, {Speaker::kSystem, "hello", std::nullopt, 1},
             {Speaker::kUser, "bye", std::nullopt, 2}};
  EXPECT_NO_THROW(d.ValidateTurns());
  EXPECT_EQ(d.UserTurnCount(), 2);
  d.turns[1].speaker = Speaker::kUser;
  EXPECT_THROW(d.ValidateTurns(), Error);
  d.turns[1].speaker = Speaker::kSystem;
  d.turns[2].index = 1;
  EXPECT_THROW(d.ValidateTurns(), Error);
  Dialog system_first;
  system_first.turns = {{Speaker::kSystem, "hello", std::nullopt, 0}};
  EXPECT_THROW(system_first.ValidateTurns(), Error);
}

TEST(OntologyTest, Lookups) {
  Ontology o;
  o.AddValue("hotel", "area", "north");
  o.AddValue("hotel", "area", "north");
  o.AddSlot("hotel", "phone");
  o.AddBookable("hotel", "people");
  o.AddValue("hotel", "people", "2");
  EXPECT_EQ(o.Values("hotel", "area").size(), 1u);
  EXPECT_TRUE(o.HasValue("hotel", "area", "North"));
  EXPECT_TRUE(o.HasSlot("hotel", "phone"));
  EXPECT_TRUE(o.IsBookable("hotel", "people"));
  EXPECT_FALSE(o.IsBookable("hotel", "area"));
  EXPECT_TRUE(o.Values("taxi", "car").empty());
  EXPECT_TRUE(o.UnknownTokens(MakeAct("inform", "hotel", "area", "north")).empty());
  EXPECT_FALSE(o.UnknownTokens(MakeAct("inform", "hotel", "area", "east")).empty());
  EXPECT_TRUE(o.UnknownTokens(MakeAct("request", "hotel", "phone")).empty());
}

TEST(ErrorTest, MessageCarriesKind) {
  const Error e(ErrorKind::kFixtureExhausted, "script of 1 consumed");
  EXPECT_STREQ(e.what(), "FixtureExhausted: script of 1 consumed");
}

}  // namespace
}  // namespace usersim
