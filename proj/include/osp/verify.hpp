// Copyright 2026 The OSP Partition Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Obvious dominance relative to a partition of the agents, checked by
// exhaustive enumeration.

#ifndef OSP_VERIFY_HPP_
#define OSP_VERIFY_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "osp/committee.hpp"
#include "osp/core.hpp"
#include "osp/game.hpp"
#include "osp/verdict.hpp"

namespace osp {

// Outcome for each type profile (one type index per agent).
using SocialChoiceFunction = std::function<Alternative(const std::vector<int>&)>;

SocialChoiceFunction rule_from_committee(const Committee& c, const Domain& domain);
SocialChoiceFunction rule_from_table(const ScfTable& f, const Domain& domain);

inline constexpr std::uint64_t kDefaultCap = std::uint64_t{1} << 22;

struct VerifyOptions {
  std::uint64_t cap = kDefaultCap;
  int jobs = 1;
};

// Every move on the way to `node` by an agent with a strategy in `sigma_s`
// follows that strategy.
bool compatible(const Arena& arena, NodeId node, const PartialProfile& sigma_s);

// `sigma_block` holds the strategies of i's whole block, i included.
std::vector<DeparturePoint> earliest_departures(const Arena& arena,
                                                const PartialProfile& sigma_block,
                                                AgentId i,
                                                const Strategy& deviation);

struct OptionSets {
  std::vector<Alternative> o;
  std::vector<Alternative> o_prime;
};
OptionSets option_sets(const Arena& arena, const PartialProfile& sigma_block,
                       const Strategy& deviation, const DeparturePoint& dp);

Verdict is_obviously_dominant(const Arena& arena, const Partition& s,
                              AgentId i, const Preference& r_i,
                              const Strategy& sigma_i,
                              std::uint64_t cap = kDefaultCap);

bool is_weakly_dominant(const Arena& arena, AgentId i, const Preference& r_i,
                        const Strategy& sigma_i, std::uint64_t cap = kDefaultCap);

Verdict induces(const Arena& arena, const TypeStrategyProfile& tsp,
                const SocialChoiceFunction& f);

Verdict osp_implements(const Arena& arena, const TypeStrategyProfile& tsp,
                       const SocialChoiceFunction& f, const Partition& s,
                       const VerifyOptions& opts = {});

// Runs osp_implements for every partition coarser than s_star.
Verdict coarsening_check(const Arena& arena, const TypeStrategyProfile& tsp,
                         const SocialChoiceFunction& f, const Partition& s_star,
                         const VerifyOptions& opts = {});

// Throws HypothesisNotMet unless the arena is in the staged class for s and
// the truth-telling profile implements f in weakly dominant strategies.
Verdict theorem1_property(const Arena& arena, const Partition& s,
                          const TypeStrategyProfile& tsp,
                          const SocialChoiceFunction& f,
                          const VerifyOptions& opts = {});

// True iff the witness still exhibits the violation it records.
bool replay(const Arena& arena, const Partition& s, const DominanceWitness& w);
bool replay(const Arena& arena, const TypeStrategyProfile& tsp,
            const SocialChoiceFunction& f, const InducementWitness& w);

}  // namespace osp

#endif  // OSP_VERIFY_HPP_
