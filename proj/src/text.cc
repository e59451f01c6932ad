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

#include "usersim/text.h"

#include <cctype>
#include <cstdio>

#include "usersim/error.h"

namespace usersim {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return "IoError";
    case ErrorKind::kSchema: return "SchemaError";
    case ErrorKind::kValidation: return "ValidationError";
    case ErrorKind::kInsufficientCorpus: return "InsufficientCorpus";
    case ErrorKind::kEmptyOntology: return "EmptyOntology";
    case ErrorKind::kUnknownSlotPhrase: return "UnknownSlotPhrase";
    case ErrorKind::kPoolTooSmall: return "PoolTooSmall";
    case ErrorKind::kMissingShotsForDomains: return "MissingShotsForDomains";
    case ErrorKind::kEmptyShotDialog: return "EmptyShotDialog";
    case ErrorKind::kEmptyUserUtterance: return "EmptyUserUtterance";
    case ErrorKind::kTimeout: return "Timeout";
    case ErrorKind::kRateLimited: return "RateLimited";
    case ErrorKind::kProtocol: return "ProtocolError";
    case ErrorKind::kFixtureExhausted: return "FixtureExhausted";
    case ErrorKind::kEmptyGeneration: return "EmptyGeneration";
    case ErrorKind::kSessionClosed: return "SessionClosed";
    case ErrorKind::kMissingActs: return "MissingActs";
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kEmptyStream: return "EmptyStream";
    case ErrorKind::kNoBigrams: return "NoBigrams";
    case ErrorKind::kTooShort: return "TooShort";
    case ErrorKind::kZeroFactors: return "ZeroFactors";
    case ErrorKind::kConfig: return "ConfigError";
    case ErrorKind::kBackendUnreachable: return "BackendUnreachable";
    case ErrorKind::kNoResults: return "NoResults";
  }
  return "Error";
}

std::string NormalizeText(std::string_view raw) {
  std::string out;
  out.reserve(raw.size() + raw.size() / 4);
  bool pending_space = false;
  auto emit = [&](char c) {
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  };
  for (char ch : raw) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      pending_space = true;
    } else if (c < 0x80 && std::ispunct(c)) {
      pending_space = true;
      emit(ch);
      pending_space = true;
    } else {
      emit(static_cast<char>(c < 0x80 ? std::tolower(c) : c));
    }
  }
  return out;
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string> NormalizedTokens(std::string_view raw) {
  return SplitWhitespace(NormalizeText(raw));
}

std::string Join(std::span<const std::string> parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

size_t FindTokenRun(std::span<const std::string> haystack,
                    std::span<const std::string> needle, size_t from) {
  if (needle.empty() || needle.size() > haystack.size()) return std::string_view::npos;
  for (size_t i = from; i + needle.size() <= haystack.size(); ++i) {
    bool hit = true;
    for (size_t k = 0; k < needle.size(); ++k) {
      if (haystack[i + k] != needle[k]) {
        hit = false;
        break;
      }
    }
    if (hit) return i;
  }
  return std::string_view::npos;
}

bool ContainsPhrase(std::string_view text, std::string_view phrase) {
  return ContainsTokenRun(NormalizedTokens(text), NormalizedTokens(phrase));
}

std::string TrimWhitespace(std::string_view text) {
  size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

uint64_t Fnv1a64(std::string_view data) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : data) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string HexDigest(std::string_view data) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(Fnv1a64(data)));
  return buf;
}

}  // namespace usersim
