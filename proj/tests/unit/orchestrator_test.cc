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


#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.h"
#include "usersim/error.h"
#include "usersim/orchestrator.h"

namespace usersim {
namespace {

using testing::DemoRunConfig;
using testing::DemoWorld;
using testing::ScriptForGoal;

RunConfig Config(size_t n = 1, uint64_t seed = 3) { return DemoRunConfig(n, seed); }

TEST(CheckTerminationTest, Examples) {
  const RunConfig cfg = Config();
  const auto farewell = CheckTermination({}, {}, "thanks for the service, that is all I need.", 3, cfg);
  EXPECT_TRUE(farewell.stop);
  EXPECT_EQ(farewell.reason, TerminationReason::kUserFarewell);
  const auto cap = CheckTermination({}, {}, "I need a hotel .", cfg.max_turns, cfg);
  EXPECT_TRUE(cap.stop);
  EXPECT_EQ(cap.reason, TerminationReason::kMaxTurns);
  EXPECT_FALSE(CheckTermination({MakeAct("inform", "hotel", "area", "north")}, {}, "In the north please .", 2, cfg).stop);
  // A system bye alone does not end the dialog.
  EXPECT_FALSE(CheckTermination({}, {MakeAct("bye", "general")}, "Can I book it ?", 2, cfg).stop);
  const auto dbl = CheckTermination({MakeAct("bye", "general")}, {MakeAct("bye", "general")}, "Cheers .", 2, cfg);
  EXPECT_TRUE(dbl.stop);
  EXPECT_EQ(dbl.reason, TerminationReason::kDoubleFarewell);
  EXPECT_EQ(ParseTermination("double_farewell"), TerminationReason::kDoubleFarewell);
}

TEST(RunConfigTest, Validation) {
  RunConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.n_dialogs = 0;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = RunConfig();
  cfg.max_turns = 0;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = RunConfig();
  cfg.goals.booking_probability = -1;
  EXPECT_THROW(cfg.Validate(), Error);
}

class RunDialogTest : public ::testing::Test {
 protected:
  DemoWorld world;
  SessionRecord Run(const UserGoal& goal, std::vector<std::string> script, const RunConfig& cfg) {
    return RunDialog(goal, 0, cfg, world.Resources({std::move(script)}));
  }
};

TEST_F(RunDialogTest, ScriptedConversationCompletes) {
  const RunConfig cfg = Config();
  const auto goal = GoalForDialog(cfg, world.ontology(), 0);
  const auto script = ScriptForGoal(goal);
  const auto rec = Run(goal, script, cfg);
  EXPECT_EQ(rec.dialog.outcome, Outcome::kCompleted);
  EXPECT_EQ(rec.termination, TerminationReason::kUserFarewell);
  EXPECT_EQ(rec.dialog.turns.size(), 2 * script.size());
  EXPECT_EQ(rec.dialog.id, "sim-00000");
  EXPECT_NO_THROW(rec.dialog.ValidateTurns());
  EXPECT_EQ(rec.prompt_trace.size(), static_cast<size_t>(rec.dialog.UserTurnCount()));
  EXPECT_EQ(rec.turn_ms.size(), static_cast<size_t>(rec.dialog.UserTurnCount()));
  for (const auto& t : rec.dialog.turns) EXPECT_TRUE(t.acts.has_value());
  // Prompt/transcript coherence.
  for (size_t i = 0; i + 1 < rec.prompt_trace.size(); ++i) {
    const auto& user = rec.dialog.turns[2 * i].text;
    const auto& sys = rec.dialog.turns[2 * i + 1].text;
    EXPECT_EQ(ExtendPrompt(rec.prompt_trace[i], user, sys).text, rec.prompt_trace[i + 1].text);
  }
  EXPECT_NE(rec.prompt_trace[0].text.find("Example 3:\nREQUIREMENTS: "), std::string::npos);
}

TEST_F(RunDialogTest, NeverSayingByeHitsTheCap) {
  RunConfig cfg = Config();
  cfg.max_turns = 5;
  const auto goal = GoalForDialog(cfg, world.ontology(), 0);
  const auto rec = Run(goal, std::vector<std::string>(30, "I am looking for a hotel ."), cfg);
  EXPECT_EQ(rec.dialog.outcome, Outcome::kMaxTurns);
  EXPECT_EQ(rec.termination, TerminationReason::kMaxTurns);
  EXPECT_EQ(rec.dialog.UserTurnCount(), 5);
}

TEST_F(RunDialogTest, ShortFixtureIsGenerationFailure) {
  const RunConfig cfg = Config();
  const auto goal = GoalForDialog(cfg, world.ontology(), 0);
  const auto rec = Run(goal, {"I am looking for a hotel .", "It should be in the north ."}, cfg);
  EXPECT_EQ(rec.dialog.outcome, Outcome::kGenerationFailure);
  EXPECT_EQ(rec.dialog.turns.size(), 4u);
  ASSERT_TRUE(rec.failure.has_value());
  EXPECT_NE(rec.failure->find("FixtureExhausted"), std::string::npos);
}

TEST_F(RunDialogTest, EmptyGenerationRetriedOnce) {
  RunConfig cfg = Config();
  const auto goal = GoalForDialog(cfg, world.ontology(), 0);
  const auto rec = Run(goal, {"\nASSISTANT: hi", "Thank you , bye ."}, cfg);
  EXPECT_EQ(rec.dialog.outcome, Outcome::kCompleted);
  EXPECT_EQ(rec.dialog.turns[0].text, "Thank you , bye .");
  EXPECT_EQ(rec.raw_completions.size(), 2u);
  const auto twice = Run(goal, {"CUSTOMER:", "  ", "Bye ."}, cfg);
  EXPECT_EQ(twice.dialog.outcome, Outcome::kGenerationFailure);
  EXPECT_TRUE(twice.dialog.turns.empty());
  cfg.empty_generation_retries = 2;
  EXPECT_EQ(Run(goal, {"CUSTOMER:", "  ", "Bye ."}, cfg).dialog.outcome, Outcome::kCompleted);
}

class ThrowingSystem : public DialogSystem {
 public:
  std::unique_ptr<SystemSession> Open(const std::string&) override {
    struct Session : SystemSession {
      SystemResponse Respond(std::string_view, const std::vector<DialogActItem>&) override {
        throw Error(ErrorKind::kTimeout, "system too slow");
      }
      void Close() override {}
    };
    return std::make_unique<Session>();
  }
};

TEST_F(RunDialogTest, SystemErrorIsSystemFailure) {
  const RunConfig cfg = Config();
  auto res = world.Resources({{"I am looking for a hotel ."}});
  ThrowingSystem broken;
  res.system = &broken;
  const auto rec = RunDialog(GoalForDialog(cfg, world.ontology(), 0), 0, cfg, res);
  EXPECT_EQ(rec.dialog.outcome, Outcome::kSystemFailure);
  EXPECT_EQ(rec.dialog.turns.size(), 1u);
  ASSERT_TRUE(rec.failure.has_value());
  EXPECT_NE(rec.failure->find("Timeout"), std::string::npos);
}

TEST_F(RunDialogTest, DefaultDomainsDescriptionNamesShotDomains) {
  RunConfig cfg = Config();
  cfg.description = DescriptionKind::kDefaultDomains;
  const auto goal = GoalForDialog(cfg, world.ontology(), 0);
  const auto rec = Run(goal, ScriptForGoal(goal), cfg);
  EXPECT_NE(rec.prompt_trace[0].text.find("asking for information about "), std::string::npos);
  EXPECT_EQ(rec.prompt_trace[0].text.find("<domain names>"), std::string::npos);
  cfg.shots.k = 0;
  const auto zero = Run(goal, ScriptForGoal(goal), cfg);
  EXPECT_EQ(zero.prompt_trace[0].text.rfind(TaskDescriptions::Builtin().Text(DescriptionKind::kDefault), 0), 0u);
}

TEST(RunDialogsTest, IndependentOfParallelismAndSiblings) {
  DemoWorld world;
  RunConfig cfg = Config(6, 11);
  std::vector<std::vector<std::string>> scripts;
  for (size_t i = 0; i < cfg.n_dialogs; ++i) scripts.push_back(ScriptForGoal(GoalForDialog(cfg, world.ontology(), i)));
  const auto serial = RunDialogs(cfg, world.Resources(scripts));
  cfg.parallelism = 4;
  const auto parallel = RunDialogs(cfg, world.Resources(scripts));
  ASSERT_EQ(serial.size(), parallel.size());
  for (size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].dialog, parallel[i].dialog);
    EXPECT_EQ(serial[i].raw_completions, parallel[i].raw_completions);
  }
  // Dialog 3 alone, run as the only dialog with the same index, is unchanged.
  const auto solo = RunDialog(GoalForDialog(cfg, world.ontology(), 3), 3, cfg, world.Resources(scripts));
  EXPECT_EQ(solo.dialog, serial[3].dialog);
}

}  // namespace
}  // namespace usersim
