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

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "osp/game.hpp"

namespace osp {

namespace {

using TypeMask = std::uint64_t;

void check_tsp(const Arena& arena, const TypeStrategyProfile& tsp) {
  if (tsp.domain.n() != arena.n() ||
      static_cast<int>(tsp.strategies.size()) != arena.n()) {
    throw Error(ErrorCode::kInvalidArgument,
                "type-strategy profile does not match the arena");
  }
  for (AgentId i = 1; i <= arena.n(); ++i) {
    const std::size_t types = tsp.domain.of(i).size();
    if (types == 0 || types > 64 || tsp.strategies[i - 1].size() != types) {
      throw Error(ErrorCode::kInvalidArgument,
                  "agent " + std::to_string(i) +
                      " needs one strategy per preference (at most 64)");
    }
  }
}

TypeMask full_mask(std::size_t types) {
  return types == 64 ? ~TypeMask{0} : (TypeMask{1} << types) - 1;
}

// Walks every node reachable under some type profile, handing each node the
// per-agent sets of types consistent with the path so far.
template <typename Visit>
void walk_consistent(const Arena& arena, const TypeStrategyProfile& tsp,
                     Visit&& visit) {
  std::vector<TypeMask> masks(arena.n() + 1, 0);
  for (AgentId i = 1; i <= arena.n(); ++i) {
    masks[i] = full_mask(tsp.domain.of(i).size());
  }
  struct Frame {
    NodeId z;
    std::vector<TypeMask> masks;
  };
  std::vector<Frame> stack{{arena.root(), masks}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    visit(f.z, f.masks);
    const Node& node = arena.node(f.z);
    if (node.is_terminal()) continue;
    const AgentId i = node.owner;
    for (int c = static_cast<int>(node.children.size()) - 1; c >= 0; --c) {
      TypeMask m = 0;
      for (std::size_t t = 0; t < tsp.strategies[i - 1].size(); ++t) {
        if (((f.masks[i] >> t) & 1U) &&
            tsp.strategies[i - 1][t].at(node.info_set) == c) {
          m |= TypeMask{1} << t;
        }
      }
      if (m == 0) continue;
      Frame child{node.children[c], f.masks};
      child.masks[i] = m;
      stack.push_back(std::move(child));
    }
  }
}

}  // namespace

PruneResult prune(const Arena& arena, const TypeStrategyProfile& tsp) {
  check_tsp(arena, tsp);
  std::vector<bool> kept(arena.num_nodes(), false);
  walk_consistent(arena, tsp, [&](NodeId z, const std::vector<TypeMask>&) {
    kept[z] = true;
  });

  // Surviving moves per decision node.
  auto surviving = [&](NodeId z) {
    std::vector<int> out;
    const auto& ch = arena.node(z).children;
    for (std::size_t c = 0; c < ch.size(); ++c) {
      if (kept[ch[c]]) out.push_back(static_cast<int>(c));
    }
    return out;
  };

  ArenaBuilder b(arena.n(), arena.alternatives());
  // Info sets whose members keep different moves are split by the surviving
  // move set so every member still offers the same choices.
  std::map<std::pair<InfoSetId, std::vector<int>>, InfoSetId> split;
  std::vector<std::pair<InfoSetId, std::vector<int>>> origin;

  struct Item {
    NodeId old;
    NodeId parent;
    int choice;
  };
  std::deque<Item> queue{{arena.root(), kNoNode, 0}};
  while (!queue.empty()) {
    Item it = queue.front();
    queue.pop_front();
    const Node& z = arena.node(it.old);
    if (z.is_terminal()) {
      b.add_terminal(it.parent, it.choice, arena.alternatives()[z.outcome]);
      continue;
    }
    std::vector<int> moves = surviving(it.old);
    auto key = std::make_pair(z.info_set, moves);
    auto found = split.find(key);
    if (found == split.end()) {
      std::vector<ChoiceLabel> labels;
      for (int c : moves) labels.push_back(arena.info_set(z.info_set).choices[c]);
      found = split.emplace(key, b.add_info_set(z.owner, std::move(labels))).first;
      origin.push_back(key);
    }
    const NodeId id = b.add_decision(it.parent, it.choice, z.owner, found->second);
    for (std::size_t k = 0; k < moves.size(); ++k) {
      queue.push_back({z.children[moves[k]], id, static_cast<int>(k)});
    }
  }
  Arena pruned = b.build();

  TypeStrategyProfile out;
  out.domain = tsp.domain;
  out.strategies.resize(arena.n());
  for (AgentId i = 1; i <= arena.n(); ++i) {
    for (const auto& s : tsp.strategies[i - 1]) {
      Strategy ns;
      ns.owner = i;
      for (InfoSetId id : pruned.agent_info_sets(i)) {
        const auto& [old_id, moves] = origin[id];
        auto pos = std::find(moves.begin(), moves.end(), s.at(old_id));
        ns.choices[id] =
            pos == moves.end() ? 0 : static_cast<int>(pos - moves.begin());
      }
      out.strategies[i - 1].push_back(std::move(ns));
    }
  }
  return {std::move(pruned), std::move(out)};
}

Arena relabel(const Arena& arena, const TypeStrategyProfile& tsp) {
  check_tsp(arena, tsp);
  std::vector<TypeMask> reach(arena.num_info_sets(), 0);
  walk_consistent(arena, tsp, [&](NodeId z, const std::vector<TypeMask>& m) {
    const Node& node = arena.node(z);
    if (!node.is_terminal()) reach[node.info_set] |= m[node.owner];
  });
  std::vector<InfoSet> sets = arena.info_sets();
  for (auto& is : sets) {
    const auto& types = tsp.domain.of(is.owner);
    for (std::size_t c = 0; c < is.choices.size(); ++c) {
      std::vector<Preference> label;
      for (std::size_t t = 0; t < types.size(); ++t) {
        if (((reach[is.id] >> t) & 1U) &&
            tsp.strategies[is.owner - 1][t].at(is.id) == static_cast<int>(c)) {
          label.push_back(types[t]);
        }
      }
      if (label.empty()) {
        throw Error(ErrorCode::kEmptyChoiceLabel,
                    "choice " + std::to_string(c) + " at info set " +
                        std::to_string(is.id) + " is never selected");
      }
      is.choices[c] = ChoiceLabel(std::move(label));
    }
  }
  return Arena(arena.n(), arena.alternatives(), arena.nodes(), std::move(sets));
}

std::vector<Diagnostic> round_table_violations(const Arena& arena,
                                               const Domain& domain) {
  std::vector<Diagnostic> out;
  for (const auto& is : arena.info_sets()) {
    std::set<Preference> used;
    for (const auto& c : is.choices) {
      if (!c.is_preference_set()) {
        out.push_back({"a", "info set " + std::to_string(is.id) +
                                " has a non-preference label"});
        return out;
      }
      for (const auto& p : c.preferences()) {
        if (!used.insert(p).second) {
          out.push_back({"a", "info set " + std::to_string(is.id) +
                                  " has overlapping labels"});
        }
      }
    }
  }
  for (const auto& z : arena.nodes()) {
    if (z.is_terminal()) continue;
    const AgentId i = z.owner;
    const auto& own = domain.of(i);
    std::set<Preference> expected(own.begin(), own.end());
    bool first = true;
    for (const auto& [a, c] : arena.history(z.id)) {
      const Node& anc = arena.node(a);
      if (anc.owner != i) continue;
      first = false;
      const auto& chosen = arena.info_set(anc.info_set).choices[c].preferences();
      std::set<Preference> keep;
      for (const auto& p : chosen) {
        if (expected.count(p)) keep.insert(p);
      }
      expected = std::move(keep);
    }
    std::set<Preference> offered;
    for (const auto& c : arena.info_set(z.info_set).choices) {
      offered.insert(c.preferences().begin(), c.preferences().end());
    }
    if (offered != expected) {
      out.push_back({first ? "b" : "c",
                     "node " + std::to_string(z.id) + " of agent " +
                         std::to_string(i) +
                         (first ? " does not partition its domain"
                                : " does not partition its earlier choices")});
    }
  }
  return out;
}

}  // namespace osp
