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

#ifndef USERSIM_SHOT_SELECT_H_
#define USERSIM_SHOT_SELECT_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "usersim/dialog.h"

namespace usersim {

struct ShotStrategy {
  enum class Kind { kRandom, kJaccard };
  Kind kind = Kind::kJaccard;
  size_t k = 2;
  uint64_t seed = 0;  // random kind only
};

std::string_view ShotKindName(ShotStrategy::Kind kind);
ShotStrategy::Kind ParseShotKind(std::string_view name);

// Product of the domain-set and slot-set Jaccard coefficients. A factor
// whose two sets are both empty counts as 1. Slot sets ignore domains.
double JaccardSimilarity(const UserGoal& a, const UserGoal& b);

// Shots are drawn from `pool` (each dialog carries its goal). Jaccard:
// highest similarity first, ties by ascending dialog id. Random: k distinct
// entries under the strategy seed. Throws PoolTooSmall when k > pool size.
std::vector<const Dialog*> SelectShots(std::span<const Dialog> pool, const UserGoal& target,
                                       const ShotStrategy& strategy);

}  // namespace usersim

#endif  // USERSIM_SHOT_SELECT_H_
