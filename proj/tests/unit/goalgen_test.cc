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


#include <map>
#include <random>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "test_support.h"
#include "usersim/error.h"
#include "usersim/goalgen.h"
#include "usersim/text.h"

namespace usersim {
namespace {

PhraseTable ShippedPhrases() {
  return PhraseTable::Load(std::filesystem::path(USERSIM_DATA_DIR) / "phrase_table.json");
}

Ontology ThreeDomains() { return testing::DemoWorld().ontology(); }

TEST(GoalgenTest, FullyConstrained) {
  Ontology o;
  o.AddValue("restaurant", "food", "italian");
  GoalConfig cfg;
  cfg.domains_max = cfg.informs_per_domain_max = 1;
  cfg.requests_per_domain_min = cfg.requests_per_domain_max = 0;
  cfg.booking_probability = 0;
  std::mt19937_64 rng(1);
  const auto g = GenerateGoal(o, cfg, rng);
  ASSERT_EQ(g.items.size(), 1u);
  EXPECT_EQ(g.items[0], MakeAct("inform", "restaurant", "food", "italian"));
}

TEST(GoalgenTest, EmptyOntologyAndBadConfig) {
  std::mt19937_64 rng(1);
  try {
    GenerateGoal(Ontology(), GoalConfig(), rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyOntology);
  }
  GoalConfig bad;
  bad.domains_min = 3;
  bad.domains_max = 2;
  EXPECT_THROW(bad.Validate(), Error);
  bad = GoalConfig();
  bad.booking_probability = 1.5;
  EXPECT_THROW(bad.Validate(), Error);
}

TEST(GoalgenTest, DeterministicAndWellFormed) {
  const Ontology o = ThreeDomains();
  const GoalConfig cfg;
  const std::set<std::string> requestable(cfg.requestable_slots.begin(), cfg.requestable_slots.end());
  for (uint64_t seed = 0; seed < 300; ++seed) {
    std::mt19937_64 a(seed), b(seed);
    const auto g = GenerateGoal(o, cfg, a);
    EXPECT_EQ(g, GenerateGoal(o, cfg, b));
    EXPECT_NO_THROW(g.Validate());
    // Items grouped per domain as inform*, request*, book*.
    std::string last_domain;
    int phase = 0;
    std::set<std::string> closed;
    for (const auto& it : g.items) {
      if (it.domain != last_domain) {
        EXPECT_FALSE(closed.count(it.domain)) << "domain revisited";
        if (!last_domain.empty()) closed.insert(last_domain);
        last_domain = it.domain;
        phase = 0;
      }
      const int p = it.intent.kind() == Intent::Kind::kInform    ? 0
                    : it.intent.kind() == Intent::Kind::kRequest ? 1
                                                                 : 2;
      EXPECT_GE(p, phase);
      phase = p;
      if (p == 0) {
        EXPECT_TRUE(o.HasValue(it.domain, it.slot, it.value));
        EXPECT_FALSE(o.IsBookable(it.domain, it.slot));
        EXPECT_FALSE(requestable.count(it.slot));
      }
      if (p == 1) EXPECT_TRUE(requestable.count(it.slot));
      if (p == 2) {
        EXPECT_TRUE(o.IsBookable(it.domain, it.slot));
        EXPECT_TRUE(o.HasValue(it.domain, it.slot, it.value));
      }
    }
  }
}

TEST(GoalgenTest, DomainSharesAreBalanced) {
  const Ontology o = ThreeDomains();
  ASSERT_EQ(o.domains().size(), 3u);
  std::map<std::string, int> hits;
  int total = 0;
  std::mt19937_64 rng(123);
  for (int i = 0; i < 1000; ++i) {
    std::set<std::string> domains;
    for (const auto& it : GenerateGoal(o, GoalConfig(), rng).items) domains.insert(it.domain);
    for (const auto& d : domains) ++hits[d];
    total += static_cast<int>(domains.size());
  }
  for (const auto& [d, n] : hits) {
    const double share = static_cast<double>(n) / total;
    EXPECT_GE(share, 0.20) << d;
    EXPECT_LE(share, 0.45) << d;
  }
}

TEST(RequirementsTest, RestaurantGoalDescriptive) {
  UserGoal g;
  g.items = {MakeAct("inform", "restaurant", "food", "italian"), MakeAct("book", "restaurant", "people", "2"),
             MakeAct("book", "restaurant", "day", "monday")};
  EXPECT_EQ(RenderRequirements(g, RequirementsFormat::kDescriptive, ShippedPhrases()),
            "You are looking for a restaurant. The restaurant should serve italian food. Once you find "
            "the restaurant you want to book it for 2 people on monday.");
}

TEST(RequirementsTest, ConstraintsOnlyAndRequests) {
  UserGoal g;
  g.items = {MakeAct("inform", "hotel", "area", "north"), MakeAct("inform", "hotel", "pricerange", "cheap")};
  EXPECT_EQ(RenderRequirements(g, RequirementsFormat::kDescriptive, ShippedPhrases()),
            "You are looking for a hotel. The hotel should be in the north. The hotel should be in the "
            "cheap price range.");
  g.items.push_back(MakeAct("request", "hotel", "phone"));
  g.items.push_back(MakeAct("request", "hotel", "postcode"));
  g.items.push_back(MakeAct("request", "hotel", "address"));
  const auto text = RenderRequirements(g, RequirementsFormat::kDescriptive, ShippedPhrases());
  EXPECT_NE(text.find("Once you find the hotel, make sure you get phone number, postcode and address."),
            std::string::npos)
      << text;
}

TEST(RequirementsTest, BulletsShareSentences) {
  UserGoal g;
  g.items = {MakeAct("inform", "train", "departure", "ely"), MakeAct("inform", "train", "day", "sunday"),
             MakeAct("request", "train", "price"), MakeAct("book", "train", "people", "3")};
  const auto phrases = ShippedPhrases();
  const auto sentences = RequirementSentences(g, phrases);
  const auto bullets = RenderRequirements(g, RequirementsFormat::kBullets, phrases);
  std::string expect;
  for (size_t i = 0; i < sentences.size(); ++i) expect += (i ? "\n- " : "- ") + sentences[i];
  EXPECT_EQ(bullets, expect);
  EXPECT_EQ(RenderRequirements(g, RequirementsFormat::kDescriptive, phrases), Join(sentences, " "));
}

TEST(RequirementsTest, UnknownPhraseFallsBackAndWarns) {
  UserGoal g;
  g.items = {MakeAct("inform", "attraction", "parking", "yes")};
  std::vector<std::string> warnings;
  const auto text = RenderRequirements(g, RequirementsFormat::kDescriptive, PhraseTable(), &warnings);
  EXPECT_NE(text.find("parking"), std::string::npos);
  EXPECT_NE(text.find("yes"), std::string::npos);
  ASSERT_FALSE(warnings.empty());
  EXPECT_NE(warnings[0].find("UnknownSlotPhrase"), std::string::npos);
}

TEST(RequirementsTest, EveryValueAppearsAndRenderingIsPure) {
  const Ontology o = ThreeDomains();
  const auto phrases = ShippedPhrases();
  std::mt19937_64 rng(77);
  for (int i = 0; i < 300; ++i) {
    const auto g = GenerateGoal(o, GoalConfig(), rng);
    const auto text = RenderRequirements(g, RequirementsFormat::kDescriptive, phrases);
    EXPECT_EQ(text, RenderRequirements(g, RequirementsFormat::kDescriptive, phrases));
    const auto tokens = NormalizedTokens(text);
    for (const auto& it : g.items) {
      EXPECT_TRUE(ContainsTokenRun(tokens, NormalizedTokens(it.domain))) << text;
      if (!it.value.empty()) {
        EXPECT_TRUE(ContainsTokenRun(tokens, NormalizedTokens(it.value))) << it.value << " in " << text;
      }
      if (it.intent.kind() == Intent::Kind::kRequest) {
        EXPECT_TRUE(ContainsTokenRun(tokens, NormalizedTokens(phrases.PhraseOr(it.domain, it.slot)))) << it.slot << " in " << text;
      }
      if (it.intent.kind() == Intent::Kind::kBook) {
        EXPECT_TRUE(ContainsPhrase(text, "you want to book it for")) << text;
        if (it.slot == "people") EXPECT_TRUE(ContainsPhrase(text, it.value + " people")) << text;
        if (it.slot == "stay") EXPECT_TRUE(ContainsPhrase(text, "for " + it.value + " nights")) << text;
        if (it.slot == "day") EXPECT_TRUE(ContainsPhrase(text, "on " + it.value)) << text;
      }
    }
  }
}

TEST(PhraseTableTest, DomainOverridesDefault) {
  const auto p = ShippedPhrases();
  EXPECT_EQ(p.PhraseOr("restaurant", "pricerange"), "price range");
  EXPECT_EQ(p.PhraseOr("train", "people"), "number of tickets");
  EXPECT_EQ(p.PhraseOr("hotel", "people"), "number of people");
  EXPECT_EQ(p.PhraseOr("hotel", "unheard"), "unheard");
  EXPECT_FALSE(p.Find("hotel", "unheard").has_value());
}

}  // namespace
}  // namespace usersim
