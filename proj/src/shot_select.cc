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

#include "usersim/shot_select.h"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "usersim/error.h"
#include "usersim/text.h"

namespace usersim {
namespace {

// Intersection and union sizes; both-empty counts as 1/1.
std::pair<uint64_t, uint64_t> SetJaccard(const std::set<std::string>& a,
                                         const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return {1, 1};
  uint64_t common = 0;
  for (const auto& x : a) common += b.count(x);
  return {common, a.size() + b.size() - common};
}

}  // namespace

std::string_view ShotKindName(ShotStrategy::Kind kind) {
  return kind == ShotStrategy::Kind::kRandom ? "random" : "jaccard";
}

ShotStrategy::Kind ParseShotKind(std::string_view name) {
  if (name == "random") return ShotStrategy::Kind::kRandom;
  if (name == "jaccard") return ShotStrategy::Kind::kJaccard;
  throw Error(ErrorKind::kConfig, "unknown shot strategy '" + std::string(name) + "'");
}

double JaccardSimilarity(const UserGoal& a, const UserGoal& b) {
  std::set<std::string> dom_a, dom_b, slot_a, slot_b;
  for (const auto& item : a.items) {
    dom_a.insert(item.domain);
    slot_a.insert(NormalizeText(item.slot));
  }
  for (const auto& item : b.items) {
    dom_b.insert(item.domain);
    slot_b.insert(NormalizeText(item.slot));
  }
  const auto [dn, dd] = SetJaccard(dom_a, dom_b);
  const auto [sn, sd] = SetJaccard(slot_a, slot_b);
  return static_cast<double>(dn * sn) / static_cast<double>(dd * sd);
}

std::vector<const Dialog*> SelectShots(std::span<const Dialog> pool, const UserGoal& target,
                                       const ShotStrategy& strategy) {
  if (strategy.k > pool.size()) {
    throw Error(ErrorKind::kPoolTooSmall, "requested " + std::to_string(strategy.k) +
                                              " shots from a pool of " + std::to_string(pool.size()));
  }
  std::vector<const Dialog*> out;
  if (strategy.k == 0) return out;

  if (strategy.kind == ShotStrategy::Kind::kRandom) {
    std::vector<size_t> idx(pool.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::mt19937_64 rng(strategy.seed);
    for (size_t i = 0; i < strategy.k; ++i) {
      const size_t j = std::uniform_int_distribution<size_t>(i, idx.size() - 1)(rng);
      std::swap(idx[i], idx[j]);
      out.push_back(&pool[idx[i]]);
    }
    return out;
  }

  std::vector<std::pair<double, const Dialog*>> scored;
  scored.reserve(pool.size());
  for (const auto& d : pool) scored.emplace_back(JaccardSimilarity(d.goal, target), &d);
  auto better = [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return x.second->id < y.second->id;
  };
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(strategy.k),
                    scored.end(), better);
  for (size_t i = 0; i < strategy.k; ++i) out.push_back(scored[i].second);
  return out;
}

}  // namespace usersim
