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


#include <algorithm>
#include <filesystem>
#include <functional>
#include <set>

#include <gtest/gtest.h>

#include "test_support.h"
#include "usersim/corpus.h"
#include "usersim/error.h"
#include "usersim/text.h"

namespace usersim {
namespace {

using testing::FixturesDir;

Json SmallCorpusJson() { return ReadJsonFile(FixturesDir() / "corpus_small.json"); }

ErrorKind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::kIo;
}

TEST(CorpusTest, SmallFixtureMatchesManifest) {
  const Corpus c = ParseCorpus(FixturesDir() / "corpus_small.json");
  const Json manifest = ReadJsonFile(FixturesDir() / "corpus_small.manifest.json");
  EXPECT_EQ(SplitName(c.split), manifest["split"].get<std::string>());
  ASSERT_EQ(c.dialogs.size(), manifest["dialogs"].size());
  for (size_t i = 0; i < c.dialogs.size(); ++i) {
    const auto& m = manifest["dialogs"][i];
    EXPECT_EQ(c.dialogs[i].id, m["id"].get<std::string>());
    EXPECT_EQ(c.dialogs[i].turns.size(), m["turns"].get<size_t>());
    size_t acts = 0;
    for (const auto& t : c.dialogs[i].turns) acts += t.acts ? t.acts->size() : 0;
    EXPECT_EQ(acts, m["acts"].get<size_t>()) << c.dialogs[i].id;
  }
  EXPECT_FALSE(c.dialogs[2].turns[0].acts.has_value());
  EXPECT_EQ(c.dialogs[1].goal.requirements_text, "You are looking for a hotel.");
  EXPECT_EQ(c.dialogs[0].goal.items[1].intent.kind(), Intent::Kind::kRequest);
}

TEST(CorpusTest, UnknownTokensAreReportedNotFatal) {
  Json doc = SmallCorpusJson();
  const size_t before = CorpusFromJson(doc).unknown_tokens.size();
  doc["dialogs"][0]["turns"][1]["acts"][0][3] = "the unknown bistro";
  const Corpus c = CorpusFromJson(doc);
  ASSERT_EQ(c.unknown_tokens.size(), before + 1);
  EXPECT_TRUE(std::any_of(c.unknown_tokens.begin(), c.unknown_tokens.end(),
                          [](const std::string& u) { return u.find("fx-001/1") != std::string::npos; }));
}

TEST(CorpusTest, RoundTripIsExact) {
  const Corpus c = ParseCorpus(FixturesDir() / "corpus_small.json");
  const Corpus back = CorpusFromJson(CorpusToJson(c));
  EXPECT_EQ(back.dialogs, c.dialogs);
  EXPECT_EQ(back.ontology, c.ontology);
  EXPECT_EQ(back.split, c.split);
  EXPECT_EQ(CorpusToJson(back).dump(), CorpusToJson(c).dump());

  const auto tmp = std::filesystem::temp_directory_path() / "usersim_corpus_roundtrip.json";
  WriteCorpus(c, tmp);
  EXPECT_EQ(ParseCorpus(tmp).dialogs, c.dialogs);
  std::filesystem::remove(tmp);
}

TEST(CorpusTest, SystemFirstIsValidationError) {
  Json doc = SmallCorpusJson();
  doc["dialogs"][0]["turns"][0]["speaker"] = "SYSTEM";
  doc["dialogs"][0]["turns"][1]["speaker"] = "USER";
  EXPECT_EQ(KindOf([&] { CorpusFromJson(doc); }), ErrorKind::kValidation);
}

TEST(CorpusTest, SchemaErrorsCarryPointer) {
  Json doc = SmallCorpusJson();
  doc["dialogs"][3]["turns"][2].erase("text");
  try {
    CorpusFromJson(doc);
    FAIL() << "missing text accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSchema);
    EXPECT_NE(std::string(e.what()).find("/dialogs/3/turns/2"), std::string::npos) << e.what();
  }
  doc = SmallCorpusJson();
  doc["dialogs"][0]["goal"]["items"][0]["value"] = 3;
  EXPECT_EQ(KindOf([&] { CorpusFromJson(doc); }), ErrorKind::kSchema);
  EXPECT_EQ(KindOf([&] { ParseCorpus(FixturesDir() / "does_not_exist.json"); }), ErrorKind::kIo);
}

TEST(CorpusTest, DuplicateIdsRejected) {
  Json doc = SmallCorpusJson();
  doc["dialogs"][1]["id"] = "fx-001";
  EXPECT_EQ(KindOf([&] { CorpusFromJson(doc); }), ErrorKind::kValidation);
}

TEST(MultiwozImportTest, MapsGoalsTurnsAndSkips) {
  const auto r = ImportMultiwoz(FixturesDir() / "multiwoz_raw.json");
  ASSERT_EQ(r.corpus.dialogs.size(), 3u);
  ASSERT_EQ(r.skipped.size(), 1u);
  EXPECT_EQ(r.skipped[0].id, "EMPTY0003.json");
  EXPECT_NE(r.skipped[0].reason.find("empty log"), std::string::npos);

  const Dialog& d0 = r.corpus.dialogs[0];
  EXPECT_EQ(d0.id, "MUL0001.json");
  EXPECT_EQ(d0.turns.size(), 4u);
  EXPECT_EQ(r.corpus.dialogs[1].turns.size(), 2u);
  EXPECT_EQ(r.corpus.dialogs[2].turns.size(), 6u);
  ASSERT_GE(d0.goal.items.size(), 3u);
  EXPECT_EQ(d0.goal.items[0], MakeAct("inform", "restaurant", "food", "italian"));
  EXPECT_EQ(d0.goal.items[1], MakeAct("inform", "restaurant", "area", "centre"));
  EXPECT_EQ(d0.goal.items[2], MakeAct("request", "restaurant", "phone"));
  ASSERT_TRUE(d0.goal.requirements_text.has_value());
  EXPECT_EQ(d0.goal.requirements_text->find('<'), std::string::npos);
  ASSERT_TRUE(d0.turns[0].acts.has_value());
  EXPECT_EQ(d0.turns[0].acts->size(), 2u);
  EXPECT_EQ(d0.turns[2].acts->at(0), MakeAct("request", "restaurant", "phone"));

  const Dialog& d2 = r.corpus.dialogs[2];
  std::set<std::string> book_slots;
  for (const auto& it : d2.goal.items) {
    if (it.intent.kind() == Intent::Kind::kBook) book_slots.insert(it.slot);
  }
  EXPECT_EQ(book_slots, (std::set<std::string>{"people", "day", "stay"}));
  EXPECT_TRUE(r.corpus.ontology.IsBookable("hotel", "stay"));
  EXPECT_TRUE(r.corpus.ontology.HasValue("taxi", "destination", "ely"));
  EXPECT_EQ(r.corpus.dialogs[1].goal.items[0], MakeAct("inform", "taxi", "leaveat", "17:15"));
}

TEST(MultiwozImportTest, NonObjectIsSchemaError) {
  EXPECT_EQ(KindOf([] { ImportMultiwozJson(Json::array()); }), ErrorKind::kSchema);
}

Corpus SyntheticCorpus(size_t n) {
  Corpus c;
  for (size_t i = 0; i < n; ++i) {
    Dialog d;
    d.id = "d" + std::to_string(i);
    d.goal.items = {MakeAct("inform", "hotel", "area", "north")};
    d.turns = {{Speaker::kUser, "i need a hotel number " + std::to_string(i % 7) + " in the north please", {}, 0},
               {Speaker::kSystem, "system text is never counted", {}, 1}};
    c.dialogs.push_back(d);
  }
  return c;
}

TEST(BaselineTest, DegenerateSamplingEqualsSingleSample) {
  const Corpus c = SyntheticCorpus(20);
  LexOptions opt;
  opt.msttr_segment = 10;
  opt.hdd_sample = 10;
  const auto s = SampleHumanBaseline(c, 7, 20, 5, opt);
  EXPECT_EQ(s.n_repetitions, 7u);
  std::vector<std::string> users;
  for (const auto& d : c.dialogs) users.push_back(d.turns[0].text);
  const auto direct = ComputeLexMetrics(Tokenize(users), opt);
  EXPECT_NEAR(*s.metric_table.mean_length, *direct.mean_length, 1e-12);
  EXPECT_NEAR(*s.metric_table.msttr, *direct.msttr, 1e-12);
  EXPECT_NEAR(*s.metric_table.hdd, *direct.hdd, 1e-12);
  EXPECT_NEAR(*s.metric_table.unigrams, *direct.unigrams, 1e-12);
}

TEST(BaselineTest, SeededAndParallelDeterministic) {
  const Corpus c = SyntheticCorpus(40);
  LexOptions opt;
  opt.msttr_segment = 10;
  opt.hdd_sample = 10;
  const auto a = SampleHumanBaseline(c, 25, 10, 9, opt, 1);
  const auto b = SampleHumanBaseline(c, 25, 10, 9, opt, 4);
  EXPECT_EQ(*a.metric_table.mtld, *b.metric_table.mtld);
  EXPECT_EQ(*a.metric_table.hdd, *b.metric_table.hdd);
  EXPECT_EQ(*a.metric_table.shannon_entropy, *b.metric_table.shannon_entropy);
  EXPECT_EQ(KindOf([&] { SampleHumanBaseline(c, 1, 41, 0, opt); }), ErrorKind::kInsufficientCorpus);
}

}  // namespace
}  // namespace usersim
