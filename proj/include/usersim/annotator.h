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

#ifndef USERSIM_ANNOTATOR_H_
#define USERSIM_ANNOTATOR_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "usersim/dialog.h"

namespace usersim {

struct AnnotatorConfig {
  bool farewell_patterns = true;
  std::vector<std::string> farewells = {"bye", "goodbye", "that is all", "that's all",
                                        "that is all i need", "have a good day"};
};

// Gazetteer act tagger. Ontology values found in the utterance become inform
// acts, request phrases ("phone number", "postcode", ...) become request
// acts for user turns, and farewell phrases become (bye, general). Values
// that could belong to several domains or slots are skipped unless a nearby
// cue word ("from", "to", "people", "nights", ...) resolves them.
class Annotator {
 public:
  explicit Annotator(const Ontology& ontology, AnnotatorConfig config = {});

  // `active_domain` breaks ties when the utterance names no domain.
  std::vector<DialogActItem> Annotate(std::string_view utterance, Speaker speaker,
                                      std::string_view active_domain = "") const;

 private:
  struct ValueEntry {
    std::string domain;
    std::string slot;
    std::string value;
  };
  // Every (domain, slot, value) sharing one normalized surface form.
  struct SurfaceForm {
    std::vector<std::string> tokens;
    std::vector<ValueEntry> entries;
  };

  Ontology ontology_;
  AnnotatorConfig config_;
  std::vector<SurfaceForm> forms_;  // longest first
  std::map<std::string, std::vector<std::vector<std::string>>> domain_cues_;
  std::vector<std::vector<std::string>> farewells_;
};

std::vector<DialogActItem> AnnotateActs(std::string_view utterance, const Ontology& ontology,
                                        Speaker speaker);

}  // namespace usersim

#endif  // USERSIM_ANNOTATOR_H_
