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

// usersim: run, score and report LLM user-simulator experiments.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "usersim/commands.h"

int main(int argc, char** argv) {
  CLI::App app{"LLM-based user simulator for task-oriented dialog systems"};
  app.require_subcommand(1);

  std::string config, out_dir = "out";
  std::optional<uint64_t> seed;
  std::optional<size_t> dialogs;
  auto* run = app.add_subcommand("run", "Simulate dialogs from a config file");
  run->add_option("--config", config, "Config JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Override run.seed");
  run->add_option("--dialogs", dialogs, "Override run.n_dialogs");
  run->add_option("--out", out_dir, "Output root directory");

  std::string transcripts, corpus;
  std::optional<std::string> database, eval_out;
  auto* evaluate = app.add_subcommand("evaluate", "Re-score saved transcripts");
  evaluate->add_option("--transcripts", transcripts, "transcripts.jsonl")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--corpus", corpus, "Corpus or ontology JSON")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--database", database, "Mock database JSON");
  evaluate->add_option("--out", eval_out, "Output file");

  std::string results, format = "markdown";
  auto* report = app.add_subcommand("report", "Tabulate result.json files");
  report->add_option("--results", results, "Results directory")->required();
  report->add_option("--format", format, "markdown or json")->check(CLI::IsMember({"markdown", "json"}));

  std::string input;
  usersim::LexdivOptions lex;
  auto* lexdiv = app.add_subcommand("lexdiv", "Lexical diversity of user utterances");
  lexdiv->add_option("--input", input, "Corpus JSON, transcripts JSONL or text")->required()->check(CLI::ExistingFile);
  lexdiv->add_option("--segment", lex.segment, "MSTTR window");
  lexdiv->add_option("--hdd-sample", lex.hdd_sample, "HD-D sample size");
  lexdiv->add_flag("--baseline", lex.baseline, "Sample a human baseline from a corpus");
  lexdiv->add_option("--reps", lex.repetitions, "Baseline repetitions");
  lexdiv->add_option("--per-rep", lex.per_repetition, "Dialogs per repetition");
  lexdiv->add_option("--seed", lex.seed, "Baseline seed");
  lexdiv->add_option("--jobs", lex.parallelism, "Worker threads");

  std::string ontology, req_format = "descriptive";
  size_t n_goals = 10;
  uint64_t goal_seed = 0;
  auto* gen_goals = app.add_subcommand("gen-goals", "Sample user goals from an ontology");
  gen_goals->add_option("--ontology", ontology, "Ontology or corpus JSON")->required()->check(CLI::ExistingFile);
  gen_goals->add_option("--n", n_goals, "Number of goals");
  gen_goals->add_option("--seed", goal_seed, "Seed");
  gen_goals->add_option("--format", req_format, "descriptive or bullets")
      ->check(CLI::IsMember({"descriptive", "bullets"}));

  std::string raw_in, corpus_out;
  std::optional<std::string> reference;
  auto* import = app.add_subcommand("import-multiwoz", "Convert a MultiWOZ 2.1 file to a corpus");
  import->add_option("--in", raw_in, "MultiWOZ data JSON")->required()->check(CLI::ExistingFile);
  import->add_option("--out", corpus_out, "Corpus JSON to write")->required();
  import->add_option("--ontology", reference, "Reference ontology");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : usersim::kExitConfig;
  }

  auto opt_path = [](const std::optional<std::string>& s) -> std::optional<std::filesystem::path> {
    if (!s) return std::nullopt;
    return std::filesystem::path(*s);
  };
  if (*run) {
    return usersim::CmdRun(config, usersim::ConfigOverrides{seed, dialogs}, out_dir, std::cout, std::cerr);
  }
  if (*evaluate) {
    return usersim::CmdEvaluate(transcripts, corpus, opt_path(database), opt_path(eval_out), std::cout, std::cerr);
  }
  if (*report) return usersim::CmdReport(results, format, std::cout, std::cerr);
  if (*lexdiv) return usersim::CmdLexdiv(input, lex, std::cout, std::cerr);
  if (*gen_goals) return usersim::CmdGenGoals(ontology, n_goals, goal_seed, req_format, std::cout, std::cerr);
  return usersim::CmdImportMultiwoz(raw_in, corpus_out, opt_path(reference), std::cout, std::cerr);
}
