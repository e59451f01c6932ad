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
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.h"
#include "usersim/error.h"
#include "usersim/prompt.h"
#include "usersim/shot_select.h"

namespace usersim {
namespace {

using testing::FixturesDir;
using testing::ReadFile;

UserGoal Goal(std::vector<DialogActItem> items) {
  UserGoal g;
  g.items = std::move(items);
  return g;
}

Dialog Shot(std::string id, UserGoal goal) {
  Dialog d;
  d.id = std::move(id);
  d.goal = std::move(goal);
  d.turns = {{Speaker::kUser, "i need help", std::nullopt, 0},
             {Speaker::kSystem, "sure", std::nullopt, 1}};
  return d;
}

TEST(JaccardTest, Examples) {
  const auto target = Goal({MakeAct("inform", "restaurant", "food", "italian"),
                            MakeAct("book", "restaurant", "people", "2"), MakeAct("book", "restaurant", "day", "monday")});
  const auto other = Goal({MakeAct("inform", "restaurant", "food", "chinese"), MakeAct("inform", "hotel", "area", "north")});
  EXPECT_DOUBLE_EQ(JaccardSimilarity(other, target), 0.125);
  EXPECT_DOUBLE_EQ(JaccardSimilarity(target, target), 1.0);
  EXPECT_DOUBLE_EQ(JaccardSimilarity(target, Goal({MakeAct("inform", "taxi", "food", "x")})), 0.0);
  EXPECT_DOUBLE_EQ(JaccardSimilarity(UserGoal(), UserGoal()), 1.0);
}

TEST(JaccardTest, SymmetricBoundedAndSetBased) {
  const Ontology o = testing::DemoWorld().ontology();
  std::mt19937_64 rng(8);
  std::vector<UserGoal> goals;
  for (int i = 0; i < 60; ++i) goals.push_back(GenerateGoal(o, GoalConfig(), rng));
  for (const auto& a : goals) {
    for (const auto& b : goals) {
      const double j = JaccardSimilarity(a, b);
      EXPECT_EQ(j, JaccardSimilarity(b, a));
      EXPECT_GE(j, 0.0);
      EXPECT_LE(j, 1.0);
    }
    UserGoal dup = a;
    dup.items.push_back(a.items.front());
    EXPECT_EQ(JaccardSimilarity(dup, goals[0]), JaccardSimilarity(a, goals[0]));
  }
}

TEST(SelectShotsTest, JaccardOrderingAndTies) {
  const auto target = Goal({MakeAct("inform", "hotel", "area", "north")});
  std::vector<Dialog> pool = {Shot("c", Goal({MakeAct("inform", "train", "day", "sunday")})),
                              Shot("b", Goal({MakeAct("inform", "hotel", "area", "south")})),
                              Shot("a", Goal({MakeAct("inform", "restaurant", "area", "south")}))};
  const auto one = SelectShots(pool, target, {ShotStrategy::Kind::kJaccard, 1, 0});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0]->id, "b");
  // a and c both score 0: the tie is broken by id, not pool position.
  const auto all = SelectShots(pool, target, {ShotStrategy::Kind::kJaccard, 3, 0});
  EXPECT_EQ(all[1]->id, "a");
  EXPECT_EQ(all[2]->id, "c");
  std::swap(pool[0], pool[2]);
  const auto swapped = SelectShots(pool, target, {ShotStrategy::Kind::kJaccard, 3, 0});
  EXPECT_EQ(swapped[1]->id, "a");
  EXPECT_EQ(swapped[2]->id, "c");
}

TEST(SelectShotsTest, ZeroShotsRandomAndPoolTooSmall) {
  std::vector<Dialog> pool;
  for (int i = 0; i < 10; ++i) pool.push_back(Shot("s" + std::to_string(i), Goal({MakeAct("inform", "hotel", "area", "north")})));
  const auto target = pool[0].goal;
  EXPECT_TRUE(SelectShots(pool, target, {ShotStrategy::Kind::kJaccard, 0, 0}).empty());
  const auto r1 = SelectShots(pool, target, {ShotStrategy::Kind::kRandom, 4, 99});
  const auto r2 = SelectShots(pool, target, {ShotStrategy::Kind::kRandom, 4, 99});
  EXPECT_EQ(r1, r2);
  std::set<const Dialog*> distinct(r1.begin(), r1.end());
  EXPECT_EQ(distinct.size(), 4u);
  try {
    SelectShots(pool, target, {ShotStrategy::Kind::kJaccard, 11, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kPoolTooSmall);
  }
  EXPECT_EQ(ParseShotKind("random"), ShotStrategy::Kind::kRandom);
  EXPECT_THROW(ParseShotKind("nearest"), Error);
}

TEST(TaskDescriptionTest, RenderKinds) {
  const auto& d = TaskDescriptions::Builtin();
  EXPECT_EQ(d.Render(DescriptionKind::kNone, {}), "");
  const Dialog r = Shot("r", Goal({MakeAct("inform", "train", "day", "sunday"), MakeAct("inform", "restaurant", "food", "x")}));
  const Dialog t = Shot("t", Goal({MakeAct("inform", "restaurant", "area", "north")}));
  const std::vector<const Dialog*> shots = {&r, &t};
  EXPECT_EQ(d.Render(DescriptionKind::kDefaultDomains, shots),
            ReadFile(FixturesDir() / "golden" / "description_default_domains_restaurant_train.txt"));
  try {
    d.Render(DescriptionKind::kDefaultDomains, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMissingShotsForDomains);
  }
  EXPECT_EQ(d.Render(DescriptionKind::kDefault, shots), d.Text(DescriptionKind::kDefault));
  for (auto k : {DescriptionKind::kDefault, DescriptionKind::kDefaultDomains, DescriptionKind::kExtraPersonality,
                 DescriptionKind::kMinimal, DescriptionKind::kNone}) {
    EXPECT_EQ(ParseDescriptionKind(DescriptionKindName(k)), k);
  }
}

const PhraseTable& Phrases() {
  static const PhraseTable p = PhraseTable::Load(std::filesystem::path(USERSIM_DATA_DIR) / "phrase_table.json");
  return p;
}

TEST(PromptTest, ZeroShotLayout) {
  const auto s = BuildInitialPrompt("Describe.", {}, "You want a hotel.", RequirementsFormat::kDescriptive, Phrases());
  EXPECT_EQ(s.text, "Describe.\n\nExample 1:\nREQUIREMENTS: You want a hotel.\n\nCUSTOMER:");
  EXPECT_EQ(s.frozen_prefix_len, s.text.size());
  EXPECT_EQ(s.turn, 0);
  const auto bare = BuildInitialPrompt("", {}, "R.", RequirementsFormat::kDescriptive, Phrases());
  EXPECT_EQ(bare.text, "Example 1:\nREQUIREMENTS: R.\n\nCUSTOMER:");
}

TEST(PromptTest, BulletsLayout) {
  Dialog shot = Shot("s", Goal({MakeAct("inform", "hotel", "area", "north"), MakeAct("request", "hotel", "phone")}));
  shot.goal.requirements_text = "ignored in bullets mode";
  const std::vector<const Dialog*> shots = {&shot};
  const std::string target = RenderRequirements(
      Goal({MakeAct("inform", "train", "day", "sunday")}), RequirementsFormat::kBullets, Phrases());
  const auto s = BuildInitialPrompt("D.", shots, target, RequirementsFormat::kBullets, Phrases());
  const std::string shot_block = RenderRequirements(shot.goal, RequirementsFormat::kBullets, Phrases());
  EXPECT_EQ(s.text, "D.\n\nExample 1:\nREQUIREMENTS:\n" + shot_block +
                        "\n\nCUSTOMER: i need help\nASSISTANT: sure\n\nExample 2:\nREQUIREMENTS:\n" + target +
                        "\n\nCUSTOMER:");
  EXPECT_EQ(ShotRequirements(shot, RequirementsFormat::kDescriptive, Phrases()), "ignored in bullets mode");
}

TEST(PromptTest, ErrorsAndAppendOnlyGrowth) {
  Dialog empty;
  empty.id = "e";
  empty.goal = Goal({MakeAct("inform", "hotel", "area", "north")});
  const std::vector<const Dialog*> bad = {&empty};
  try {
    BuildInitialPrompt("", bad, "R.", RequirementsFormat::kDescriptive, Phrases());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyShotDialog);
  }
  std::vector<Dialog> pool;
  for (int i = 0; i < 3; ++i) pool.push_back(Shot("p" + std::to_string(i), Goal({MakeAct("inform", "hotel", "area", "north")})));
  const std::vector<const Dialog*> shots = {&pool[0], &pool[1], &pool[2]};
  auto s = BuildInitialPrompt("D.", shots, "R.", RequirementsFormat::kDescriptive, Phrases());
  size_t headers = 0;
  for (size_t pos = s.text.find("Example "); pos != std::string::npos; pos = s.text.find("Example ", pos + 1)) ++headers;
  EXPECT_EQ(headers, shots.size() + 1);
  const std::string initial = s.text;
  for (int turn = 1; turn <= 5; ++turn) {
    const std::string before = s.text;
    s = ExtendPrompt(s, "user " + std::to_string(turn), "system " + std::to_string(turn));
    EXPECT_EQ(s.text.rfind(before, 0), 0u);
    EXPECT_EQ(s.text.substr(before.size()),
              " user " + std::to_string(turn) + "\nASSISTANT: system " + std::to_string(turn) + "\nCUSTOMER:");
    EXPECT_EQ(s.turn, turn);
    EXPECT_EQ(s.text.substr(0, s.frozen_prefix_len), initial);
    EXPECT_TRUE(s.text.ends_with("CUSTOMER:"));
  }
  try {
    ExtendPrompt(s, "  ", "x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyUserUtterance);
  }
}

}  // namespace
}  // namespace usersim
