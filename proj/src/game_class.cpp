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

// Structural test for the class of staged games where, after every commonly
// known history, one block of the partition moves once and simultaneously.

#include <algorithm>
#include <set>

#include "osp/game.hpp"

namespace osp {

namespace {

// What an agent chose the last time it moved along the current path.
struct AgentState {
  bool played = false;
  std::set<Preference> subset;
  bool singleton = false;
};

class ClassChecker {
 public:
  ClassChecker(const Arena& arena, const Partition& s, const Domain& domain)
      : arena_(arena), s_(s), domain_(domain) {}

  GameClassReport run() {
    if (arena_.n() != s_.n() || domain_.n() != arena_.n()) {
      fail("arena, partition and domain disagree on the number of agents");
      return report_;
    }
    for (const auto& is : arena_.info_sets()) {
      for (const auto& c : is.choices) {
        if (!c.is_preference_set()) {
          fail("info set " + std::to_string(is.id) +
               " is not labeled by preferences");
          return report_;
        }
      }
    }
    std::vector<AgentState> state(arena_.n() + 1);
    step(arena_.root(), state);
    report_.member = report_.violations.empty();
    return report_;
  }

 private:
  void fail(std::string msg) { report_.violations.push_back(std::move(msg)); }

  // One step starting at the commonly known node h.
  void step(NodeId h, const std::vector<AgentState>& state) {
    if (arena_.is_terminal(h)) return;
    const Coalition block = s_.block_of(arena_.node(h).owner);
    std::vector<std::vector<NodeId>> region(arena_.n() + 1);
    std::vector<std::pair<NodeId, std::vector<AgentState>>> exits;

    struct Frame {
      NodeId z;
      Coalition played;
      std::vector<AgentState> state;
    };
    std::vector<Frame> stack{{h, Coalition{}, state}};
    while (!stack.empty()) {
      Frame f = std::move(stack.back());
      stack.pop_back();
      const Node& z = arena_.node(f.z);
      if (z.is_terminal() || !block.contains(z.owner) ||
          f.played.contains(z.owner)) {
        if (f.played != block) {
          fail("step at node " + std::to_string(h) + " reaches node " +
               std::to_string(f.z) + " before every member of " +
               block.to_string() + " has moved");
        }
        exits.emplace_back(f.z, std::move(f.state));
        continue;
      }
      region[z.owner].push_back(f.z);
      check_choices(f.z, f.state[z.owner]);
      const auto& choices = arena_.info_set(z.info_set).choices;
      for (int c = static_cast<int>(z.children.size()) - 1; c >= 0; --c) {
        Frame next{z.children[c], f.played, f.state};
        next.played.insert(z.owner);
        AgentState& a = next.state[z.owner];
        a.played = true;
        a.subset = std::set<Preference>(choices[c].preferences().begin(),
                                        choices[c].preferences().end());
        a.singleton = choices.size() == 1;
        stack.push_back(std::move(next));
      }
    }

    // Simultaneity: each member's nodes in the step form exactly one info set.
    for (AgentId j : block.members()) {
      auto& nodes = region[j];
      if (nodes.empty()) continue;
      std::sort(nodes.begin(), nodes.end());
      const InfoSetId id = arena_.node(nodes.front()).info_set;
      std::vector<NodeId> members = arena_.info_set(id).nodes;
      std::sort(members.begin(), members.end());
      if (members != nodes) {
        fail("agent " + std::to_string(j) + " in the step at node " +
             std::to_string(h) +
             " does not move at a single info set covering the step");
      }
    }
    for (auto& [z, st] : exits) step(z, st);
  }

  void check_choices(NodeId z, const AgentState& st) {
    const Node& node = arena_.node(z);
    const auto& choices = arena_.info_set(node.info_set).choices;
    std::set<Preference> target;
    if (st.played) {
      target = st.subset;
    } else {
      const auto& d = domain_.of(node.owner);
      target.insert(d.begin(), d.end());
    }
    std::set<Preference> offered;
    bool overlap = false;
    for (const auto& c : choices) {
      for (const auto& p : c.preferences()) {
        if (!offered.insert(p).second) overlap = true;
      }
    }
    if (overlap || offered != target) {
      fail("choices at node " + std::to_string(z) + " do not partition " +
           (st.played ? "the previously chosen subset" : "the domain") +
           " of agent " + std::to_string(node.owner));
    }
    if (st.played && st.singleton &&
        (choices.size() != 1 ||
         std::set<Preference>(choices.front().preferences().begin(),
                              choices.front().preferences().end()) !=
             st.subset)) {
      report_.singleton_persistence_violated = true;
      fail("agent " + std::to_string(node.owner) + " at node " +
           std::to_string(z) +
           " had a single choice last time but not the same one now");
    }
  }

  const Arena& arena_;
  const Partition& s_;
  const Domain& domain_;
  GameClassReport report_;
};

}  // namespace

GameClassReport game_class_report(const Arena& arena, const Partition& s,
                                  const Domain& domain) {
  return ClassChecker(arena, s, domain).run();
}

bool is_in_game_class(const Arena& arena, const Partition& s,
                      const Domain& domain) {
  return game_class_report(arena, s, domain).member;
}

}  // namespace osp
