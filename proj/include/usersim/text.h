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

#ifndef USERSIM_TEXT_H_
#define USERSIM_TEXT_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace usersim {

// Canonical text form shared by value matching and the lexical metrics:
// ASCII lowercase, every ASCII punctuation character split off as its own
// token, whitespace runs collapsed to one space, no leading/trailing space.
//   "I'm looking!" -> "i ' m looking !"
std::string NormalizeText(std::string_view raw);

// NormalizeText followed by a split on single spaces.
std::vector<std::string> NormalizedTokens(std::string_view raw);

// Splits on runs of ASCII whitespace.
std::vector<std::string> SplitWhitespace(std::string_view text);

std::string Join(std::span<const std::string> parts, std::string_view sep);

// Position of the first occurrence of `needle` as a contiguous token run
// inside `haystack`, or npos. An empty needle never matches.
size_t FindTokenRun(std::span<const std::string> haystack,
                    std::span<const std::string> needle, size_t from = 0);

inline bool ContainsTokenRun(std::span<const std::string> haystack,
                             std::span<const std::string> needle) {
  return FindTokenRun(haystack, needle) != std::string_view::npos;
}

// True if the normalized form of `phrase` occurs as a token run in the
// normalized form of `text`.
bool ContainsPhrase(std::string_view text, std::string_view phrase);

std::string TrimWhitespace(std::string_view text);

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
uint64_t Fnv1a64(std::string_view data);
std::string HexDigest(std::string_view data);

}  // namespace usersim

#endif  // USERSIM_TEXT_H_
