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

// Pass/fail results and the counterexamples they carry.

#ifndef OSP_VERDICT_HPP_
#define OSP_VERDICT_HPP_

#include <cstdint>
#include <variant>
#include <vector>

#include "osp/core.hpp"
#include "osp/game.hpp"

namespace osp {

// A unilateral misreport that strictly helps.
struct ManipulationWitness {
  AgentId agent = 0;
  // x-supporters at the truthful profile.
  Coalition supporters;
  Preference truthful = pref_x();
  Preference misreport = pref_y();
  Alternative truthful_outcome;
  Alternative manipulated_outcome;
};

// A type profile where the game's outcome differs from the rule.
struct InducementWitness {
  std::vector<int> types;
  Alternative expected;
  Alternative actual;
};

// The compatible nodes of an earliest point of departure.
struct DeparturePoint {
  InfoSetId info_set = kNoInfoSet;
  std::vector<NodeId> compatible_nodes;

  friend bool operator==(const DeparturePoint&, const DeparturePoint&) = default;
};

// `worse` is reachable when following the strategy, `better` after the
// deviation, and the agent strictly prefers `better`.
struct DominanceWitness {
  AgentId agent = 0;
  int type = 0;
  Preference preference = pref_x();
  Strategy strategy;
  // Strategies of the agent's block mates, ascending agent.
  std::vector<Strategy> mates;
  Strategy deviation;
  DeparturePoint departure;
  Alternative worse;
  Alternative better;
};

using Witness = std::variant<std::monostate, ManipulationWitness,
                             InducementWitness, DominanceWitness>;

struct Verdict {
  bool pass = true;
  Witness witness;
  // Strategy combinations or profiles examined.
  std::uint64_t evaluations = 0;

  explicit operator bool() const { return pass; }
};

}  // namespace osp

#endif  // OSP_VERDICT_HPP_
