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

#include "usersim/lex_metrics.h"

#include <cmath>
#include <cstdint>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "usersim/error.h"
#include "usersim/text.h"

namespace usersim {
namespace {

// Dense integer ids for the tokens of a stream.
std::vector<uint32_t> InternTokens(const TokenStream& stream, size_t* n_types) {
  std::unordered_map<std::string_view, uint32_t> ids;
  ids.reserve(stream.tokens.size());
  std::vector<uint32_t> out;
  out.reserve(stream.tokens.size());
  for (const auto& t : stream.tokens) {
    auto [it, inserted] = ids.emplace(t, static_cast<uint32_t>(ids.size()));
    out.push_back(it->second);
  }
  *n_types = ids.size();
  return out;
}

void RequireTokens(const TokenStream& stream, const char* what) {
  if (stream.tokens.empty()) {
    throw Error(ErrorKind::kEmptyStream, std::string(what) + " needs at least one token");
  }
}

// One directional MTLD pass; returns the (possibly fractional) factor count.
double MtldFactors(const std::vector<uint32_t>& ids, size_t n_types, double threshold,
                   bool reversed) {
  std::vector<uint32_t> seen(n_types, 0);
  std::vector<uint32_t> touched;
  double factors = 0.0;
  size_t count = 0, types = 0;
  const size_t n = ids.size();
  for (size_t k = 0; k < n; ++k) {
    const uint32_t id = reversed ? ids[n - 1 - k] : ids[k];
    if (seen[id]++ == 0) {
      ++types;
      touched.push_back(id);
    }
    ++count;
    const double ttr = static_cast<double>(types) / static_cast<double>(count);
    if (ttr <= threshold) {
      factors += 1.0;
      for (uint32_t t : touched) seen[t] = 0;
      touched.clear();
      count = types = 0;
    }
  }
  if (count > 0) {
    const double ttr = static_cast<double>(types) / static_cast<double>(count);
    factors += (1.0 - ttr) / (1.0 - threshold);
  }
  return factors;
}

}  // namespace

std::vector<std::pair<size_t, size_t>> TokenStream::UtteranceRanges() const {
  std::vector<std::pair<size_t, size_t>> ranges;
  if (tokens.empty()) return ranges;
  size_t begin = 0;
  for (size_t b : utterance_boundaries) {
    ranges.emplace_back(begin, b);
    begin = b;
  }
  ranges.emplace_back(begin, tokens.size());
  return ranges;
}

TokenStream Tokenize(std::span<const std::string> utterances) {
  TokenStream stream;
  for (const auto& utt : utterances) {
    auto toks = NormalizedTokens(utt);
    if (toks.empty()) continue;
    if (!stream.tokens.empty()) stream.utterance_boundaries.push_back(stream.tokens.size());
    for (auto& t : toks) stream.tokens.push_back(std::move(t));
  }
  return stream;
}

UtteranceStats ComputeUtteranceStats(const TokenStream& stream) {
  RequireTokens(stream, "utterance statistics");
  UtteranceStats stats;
  stats.count = stream.utterance_count();
  stats.mean_length = static_cast<double>(stream.tokens.size()) / static_cast<double>(stats.count);
  return stats;
}

size_t UniqueNgrams(const TokenStream& stream, int n) {
  if (n < 1) throw Error(ErrorKind::kValidation, "n-gram order must be at least 1");
  RequireTokens(stream, "n-gram counting");
  size_t n_types = 0;
  const auto ids = InternTokens(stream, &n_types);
  const size_t order = static_cast<size_t>(n);
  if (order <= 3 && n_types < (1u << 21)) {
    std::unordered_set<uint64_t> seen;
    for (auto [b, e] : stream.UtteranceRanges()) {
      for (size_t i = b; i + order <= e; ++i) {
        uint64_t key = 0;
        for (size_t k = 0; k < order; ++k) key = (key << 21) | ids[i + k];
        seen.insert(key);
      }
    }
    return seen.size();
  }
  std::set<std::vector<uint32_t>> seen;
  for (auto [b, e] : stream.UtteranceRanges()) {
    for (size_t i = b; i + order <= e; ++i) {
      seen.emplace(ids.begin() + static_cast<ptrdiff_t>(i),
                   ids.begin() + static_cast<ptrdiff_t>(i + order));
    }
  }
  return seen.size();
}

double ShannonEntropy(const TokenStream& stream) {
  RequireTokens(stream, "Shannon entropy");
  size_t n_types = 0;
  const auto ids = InternTokens(stream, &n_types);
  std::vector<size_t> counts(n_types, 0);
  for (uint32_t id : ids) ++counts[id];
  const double total = static_cast<double>(ids.size());
  double h = 0.0;
  for (size_t c : counts) {
    const double p = static_cast<double>(c) / total;
    h -= p * std::log2(p);
  }
  return h;
}

double ConditionalBigramEntropy(const TokenStream& stream) {
  size_t n_types = 0;
  const auto ids = InternTokens(stream, &n_types);
  std::unordered_map<uint64_t, size_t> joint;
  std::vector<size_t> first(n_types, 0);
  size_t total = 0;
  for (auto [b, e] : stream.UtteranceRanges()) {
    for (size_t i = b; i + 1 < e; ++i) {
      ++joint[(static_cast<uint64_t>(ids[i]) << 32) | ids[i + 1]];
      ++first[ids[i]];
      ++total;
    }
  }
  if (total == 0) throw Error(ErrorKind::kNoBigrams, "no within-utterance bigrams");
  double h = 0.0;
  for (const auto& [key, c] : joint) {
    const double p_joint = static_cast<double>(c) / static_cast<double>(total);
    const double p_cond = static_cast<double>(c) / static_cast<double>(first[key >> 32]);
    h -= p_joint * std::log2(p_cond);
  }
  return h;
}

double Msttr(const TokenStream& stream, size_t segment) {
  if (segment == 0) throw Error(ErrorKind::kValidation, "MSTTR segment must be positive");
  if (stream.tokens.size() < segment) {
    throw Error(ErrorKind::kTooShort, "MSTTR needs at least " + std::to_string(segment) +
                                          " tokens, got " + std::to_string(stream.tokens.size()));
  }
  const size_t windows = stream.tokens.size() / segment;
  double sum = 0.0;
  for (size_t w = 0; w < windows; ++w) {
    std::unordered_set<std::string_view> types;
    for (size_t i = w * segment; i < (w + 1) * segment; ++i) types.insert(stream.tokens[i]);
    sum += static_cast<double>(types.size()) / static_cast<double>(segment);
  }
  return sum / static_cast<double>(windows);
}

double Mtld(const TokenStream& stream, double threshold) {
  RequireTokens(stream, "MTLD");
  size_t n_types = 0;
  const auto ids = InternTokens(stream, &n_types);
  const double forward = MtldFactors(ids, n_types, threshold, false);
  const double backward = MtldFactors(ids, n_types, threshold, true);
  if (forward == 0.0 || backward == 0.0) {
    throw Error(ErrorKind::kZeroFactors, "MTLD pass produced zero factors");
  }
  const double n = static_cast<double>(ids.size());
  return (n / forward + n / backward) / 2.0;
}

double Hdd(const TokenStream& stream, size_t sample) {
  const size_t n = stream.tokens.size();
  if (sample == 0) throw Error(ErrorKind::kValidation, "HD-D sample size must be positive");
  if (n < sample) {
    throw Error(ErrorKind::kTooShort, "HD-D needs at least " + std::to_string(sample) +
                                          " tokens, got " + std::to_string(n));
  }
  size_t n_types = 0;
  const auto ids = InternTokens(stream, &n_types);
  std::vector<size_t> counts(n_types, 0);
  for (uint32_t id : ids) ++counts[id];
  // P(type absent from the draw) = C(N - n_t, s) / C(N, s)
  //                              = prod_{i<s} (N - n_t - i) / (N - i).
  double sum = 0.0;
  for (size_t c : counts) {
    double absent = 0.0;
    if (n - c >= sample) {
      absent = 1.0;
      for (size_t i = 0; i < sample; ++i) {
        absent *= static_cast<double>(n - c - i) / static_cast<double>(n - i);
      }
    }
    sum += (1.0 - absent) / static_cast<double>(sample);
  }
  return sum;
}

LexMetrics ComputeLexMetrics(const TokenStream& stream, const LexOptions& options) {
  LexMetrics m;
  m.n_utterances = static_cast<double>(stream.utterance_count());
  if (stream.tokens.empty()) return m;
  m.mean_length = ComputeUtteranceStats(stream).mean_length;
  m.unigrams = static_cast<double>(UniqueNgrams(stream, 1));
  m.bigrams = static_cast<double>(UniqueNgrams(stream, 2));
  m.trigrams = static_cast<double>(UniqueNgrams(stream, 3));
  m.shannon_entropy = ShannonEntropy(stream);
  auto guarded = [](auto&& fn) -> std::optional<double> {
    try {
      return fn();
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  m.conditional_entropy = guarded([&] { return ConditionalBigramEntropy(stream); });
  m.msttr = guarded([&] { return Msttr(stream, options.msttr_segment); });
  m.hdd = guarded([&] { return Hdd(stream, options.hdd_sample); });
  m.mtld = guarded([&] { return Mtld(stream, options.mtld_threshold); });
  return m;
}

LexMetrics AverageLexMetrics(std::span<const LexMetrics> rows) {
  LexMetrics mean;
  if (rows.empty()) return mean;
  double n_utt = 0.0;
  for (const auto& r : rows) n_utt += r.n_utterances;
  mean.n_utterances = n_utt / static_cast<double>(rows.size());
  auto average = [&](std::optional<double> LexMetrics::*field) {
    double sum = 0.0;
    size_t defined = 0;
    for (const auto& r : rows) {
      if (const auto& v = r.*field) {
        sum += *v;
        ++defined;
      }
    }
    if (defined > 0) mean.*field = sum / static_cast<double>(defined);
  };
  for (auto field : {&LexMetrics::mean_length, &LexMetrics::unigrams, &LexMetrics::bigrams,
                     &LexMetrics::trigrams, &LexMetrics::shannon_entropy,
                     &LexMetrics::conditional_entropy, &LexMetrics::msttr, &LexMetrics::hdd,
                     &LexMetrics::mtld}) {
    average(field);
  }
  return mean;
}

}  // namespace usersim
