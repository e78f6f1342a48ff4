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

// Finite extensive game forms with imperfect information over a set of
// alternatives, their strategies, and the constructions built on top of them.

#ifndef OSP_GAME_HPP_
#define OSP_GAME_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "osp/core.hpp"

namespace osp {

using NodeId = int;
using InfoSetId = int;

inline constexpr AgentId kTerminal = 0;
inline constexpr NodeId kNoNode = -1;
inline constexpr InfoSetId kNoInfoSet = -1;

// A choice is either an opaque token or a set of preferences.
class ChoiceLabel {
 public:
  ChoiceLabel() = default;
  explicit ChoiceLabel(std::string token) : value_(std::move(token)) {}
  explicit ChoiceLabel(std::vector<Preference> prefs);

  bool is_token() const { return std::holds_alternative<std::string>(value_); }
  bool is_preference_set() const { return !is_token(); }
  const std::string& token() const { return std::get<std::string>(value_); }
  const std::vector<Preference>& preferences() const {
    return std::get<std::vector<Preference>>(value_);
  }
  bool contains(const Preference& p) const;
  std::string to_string() const;

  friend bool operator==(const ChoiceLabel&, const ChoiceLabel&) = default;
  friend bool operator<(const ChoiceLabel& a, const ChoiceLabel& b) {
    return a.value_ < b.value_;
  }

 private:
  std::variant<std::string, std::vector<Preference>> value_;
};

struct Node {
  NodeId id = kNoNode;
  AgentId owner = kTerminal;
  NodeId parent = kNoNode;
  // Index of this node's move among the parent's info-set choices.
  int choice = -1;
  InfoSetId info_set = kNoInfoSet;
  // Index into the arena's alternatives; terminals only.
  int outcome = -1;
  // children[c] is reached by choice c.
  std::vector<NodeId> children;

  bool is_terminal() const { return owner == kTerminal; }
};

struct InfoSet {
  InfoSetId id = kNoInfoSet;
  AgentId owner = kTerminal;
  std::vector<NodeId> nodes;
  std::vector<ChoiceLabel> choices;
};

struct Diagnostic {
  // "a" rooted tree, "b" info-set ownership, "c" uniform choices,
  // "d" children/choice bijection, "e" absent-mindedness, plus "ids",
  // "labels" and "outcome" for malformed records.
  std::string invariant;
  std::string message;
};

class Arena {
 public:
  Arena(int n, std::vector<Alternative> alternatives, std::vector<Node> nodes,
        std::vector<InfoSet> info_sets);

  int n() const { return n_; }
  const std::vector<Alternative>& alternatives() const { return alternatives_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<InfoSet>& info_sets() const { return info_sets_; }
  const Node& node(NodeId z) const { return nodes_.at(z); }
  const InfoSet& info_set(InfoSetId id) const { return info_sets_.at(id); }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_info_sets() const { return static_cast<int>(info_sets_.size()); }
  NodeId root() const { return root_; }

  bool is_terminal(NodeId z) const { return nodes_.at(z).is_terminal(); }
  const Alternative& outcome(NodeId z) const;
  int num_choices(InfoSetId id) const {
    return static_cast<int>(info_sets_.at(id).choices.size());
  }
  int depth(NodeId z) const { return depth_.at(z); }

  // Info sets owned by agent i, ascending id.
  const std::vector<InfoSetId>& agent_info_sets(AgentId i) const;
  // Position of an info set within its owner's list.
  int local_index(InfoSetId id) const { return local_index_.at(id); }

  // z' strictly precedes z in the tree order.
  bool precedes(NodeId z_prime, NodeId z) const;
  // (node, choice taken there) pairs from the root down to z, excluding z.
  std::vector<std::pair<NodeId, int>> history(NodeId z) const;
  std::vector<NodeId> terminals() const;

  std::vector<Diagnostic> validate() const;
  bool is_valid() const { return validate().empty(); }

  friend bool operator==(const Arena& a, const Arena& b);

 private:
  int n_;
  std::vector<Alternative> alternatives_;
  std::vector<Node> nodes_;
  std::vector<InfoSet> info_sets_;
  NodeId root_ = kNoNode;
  std::vector<int> depth_;
  std::vector<std::vector<InfoSetId>> by_agent_;
  std::vector<int> local_index_;
};

// Assembles arenas node by node. Children may be added in any order; the
// builder files each under the parent's choice index.
class ArenaBuilder {
 public:
  ArenaBuilder(int n, std::vector<Alternative> alternatives);

  InfoSetId add_info_set(AgentId owner, std::vector<ChoiceLabel> choices);
  // parent == kNoNode adds the root.
  NodeId add_decision(NodeId parent, int choice, AgentId owner,
                      InfoSetId info_set);
  NodeId add_terminal(NodeId parent, int choice, const Alternative& outcome);

  // Throws InvalidArena listing the diagnostics.
  Arena build() const;
  Arena build_unchecked() const;

 private:
  int n_;
  std::vector<Alternative> alternatives_;
  std::vector<Node> nodes_;
  std::vector<InfoSet> info_sets_;
};

bool info_precedes(const Arena& arena, InfoSetId i_prime, InfoSetId i);

// A pure behavioral strategy: choice index per owned info set.
struct Strategy {
  AgentId owner = kTerminal;
  std::map<InfoSetId, int> choices;

  int at(InfoSetId id) const;
  friend bool operator==(const Strategy&, const Strategy&) = default;
  friend auto operator<=>(const Strategy&, const Strategy&) = default;
};

// One strategy per agent; agents without strategies leave their info sets
// unassigned.
using PartialProfile = std::vector<Strategy>;

// Choice per info set, -1 where unassigned.
using Assignment = std::vector<int>;
Assignment make_assignment(const Arena& arena, const PartialProfile& profile);
void assign(Assignment& a, const Strategy& s);

NodeId play_from(const Arena& arena, NodeId start, const PartialProfile& profile);
NodeId play_from(const Arena& arena, NodeId start, const Assignment& a);

std::uint64_t count_strategies(const Arena& arena, AgentId i);
std::vector<Strategy> enumerate_strategies(const Arena& arena, AgentId i,
                                           std::uint64_t cap);

// D_1 x ... x D_n.
struct Domain {
  std::vector<std::vector<Preference>> prefs;

  static Domain two_alternative(int n);
  int n() const { return static_cast<int>(prefs.size()); }
  const std::vector<Preference>& of(AgentId i) const { return prefs.at(i - 1); }
  std::uint64_t num_profiles() const;
  // Type profile index vector for a flat index; agent 1 varies slowest.
  std::vector<int> profile_at(std::uint64_t index) const;
};

struct TypeStrategyProfile {
  Domain domain;
  // strategies[i-1][t] is agent i's strategy when its preference is
  // domain.of(i)[t].
  std::vector<std::vector<Strategy>> strategies;

  const Strategy& at(AgentId i, int type) const {
    return strategies.at(i - 1).at(type);
  }
  PartialProfile profile(const std::vector<int>& types) const;
};

TypeStrategyProfile truth_telling_profile(const Arena& arena,
                                          const Domain& domain);

// Quota game for an ordered partition: block k votes once each, ascending
// member order, {P^x} before {P^y}.
Arena build_quota_game(const OrderedPartition& s_o, const QuotaVector& q);

struct PruneResult {
  Arena arena;
  TypeStrategyProfile tsp;
};
PruneResult prune(const Arena& arena, const TypeStrategyProfile& tsp);
// Labels every choice with the preferences that reach its info set and
// select it.
Arena relabel(const Arena& arena, const TypeStrategyProfile& tsp);

// Round table properties: (a) disjoint labels, (b) first play partitions
// D_i, (c) later plays partition the intersection of earlier choices.
std::vector<Diagnostic> round_table_violations(const Arena& arena,
                                               const Domain& domain);

struct GameClassReport {
  bool member = false;
  bool singleton_persistence_violated = false;
  std::vector<std::string> violations;
};
GameClassReport game_class_report(const Arena& arena, const Partition& s,
                                  const Domain& domain);
bool is_in_game_class(const Arena& arena, const Partition& s,
                      const Domain& domain);

struct Figure1 {
  Arena arena;
  TypeStrategyProfile tsp;
};
Figure1 figure1_game();

}  // namespace osp

#endif  // OSP_GAME_HPP_
