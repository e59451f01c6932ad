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

#ifndef USERSIM_LEX_METRICS_H_
#define USERSIM_LEX_METRICS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace usersim {

// Normalized tokens of a list of utterances. `utterance_boundaries` holds the
// offset at which each utterance after the first starts, so
// ["A b.", "c"] -> tokens [a b . c], boundaries [3].
struct TokenStream {
  std::vector<std::string> tokens;
  std::vector<size_t> utterance_boundaries;

  size_t utterance_count() const { return tokens.empty() ? 0 : utterance_boundaries.size() + 1; }
  // Token ranges [begin, end) of every utterance.
  std::vector<std::pair<size_t, size_t>> UtteranceRanges() const;
};

// Empty utterances (after normalization) are dropped.
TokenStream Tokenize(std::span<const std::string> utterances);

struct UtteranceStats {
  size_t count = 0;
  double mean_length = 0.0;
};

UtteranceStats ComputeUtteranceStats(const TokenStream& stream);

// Distinct n-token sequences; n-grams never span two utterances.
size_t UniqueNgrams(const TokenStream& stream, int n);

// Unigram entropy in bits.
double ShannonEntropy(const TokenStream& stream);

// H(w2 | w1) in bits over within-utterance bigrams.
double ConditionalBigramEntropy(const TokenStream& stream);

// Mean type-token ratio over consecutive non-overlapping windows of
// `segment` tokens of the pooled stream; the trailing partial window is
// discarded.
double Msttr(const TokenStream& stream, size_t segment = 50);

// Mean of the forward and reversed MTLD passes. A factor closes as soon as
// the running TTR drops to `threshold` or below; the leftover tail counts as
// the partial factor (1 - ttr) / (1 - threshold).
double Mtld(const TokenStream& stream, double threshold = 0.72);

// Expected type-token ratio of a random draw of `sample` tokens without
// replacement (hypergeometric HD-D).
double Hdd(const TokenStream& stream, size_t sample = 42);

struct LexOptions {
  size_t msttr_segment = 50;
  size_t hdd_sample = 42;
  double mtld_threshold = 0.72;
};

// One row of the lexical-diversity table. A metric whose precondition fails
// on the given stream (too short, no bigrams, ...) is left empty.
// Counts are doubles so that averaged rows (e.g. a sampled baseline) use the
// same type.
struct LexMetrics {
  double n_utterances = 0;
  std::optional<double> mean_length;
  std::optional<double> unigrams;
  std::optional<double> bigrams;
  std::optional<double> trigrams;
  std::optional<double> shannon_entropy;
  std::optional<double> conditional_entropy;
  std::optional<double> msttr;
  std::optional<double> hdd;
  std::optional<double> mtld;
};

LexMetrics ComputeLexMetrics(const TokenStream& stream, const LexOptions& options = {});

// Field-wise mean; each field is averaged over the rows where it is defined.
LexMetrics AverageLexMetrics(std::span<const LexMetrics> rows);

}  // namespace usersim

#endif  // USERSIM_LEX_METRICS_H_
