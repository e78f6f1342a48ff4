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
#include <set>

#include "osp/game.hpp"

namespace osp {

ChoiceLabel::ChoiceLabel(std::vector<Preference> prefs) {
  std::sort(prefs.begin(), prefs.end());
  prefs.erase(std::unique(prefs.begin(), prefs.end()), prefs.end());
  value_ = std::move(prefs);
}

bool ChoiceLabel::contains(const Preference& p) const {
  if (is_token()) return false;
  const auto& v = preferences();
  return std::binary_search(v.begin(), v.end(), p);
}

std::string ChoiceLabel::to_string() const {
  if (is_token()) return token();
  std::string out = "{";
  const auto& v = preferences();
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k > 0) out += ',';
    out += v[k].to_string();
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Arena

Arena::Arena(int n, std::vector<Alternative> alternatives,
             std::vector<Node> nodes, std::vector<InfoSet> info_sets)
    : n_(n),
      alternatives_(std::move(alternatives)),
      nodes_(std::move(nodes)),
      info_sets_(std::move(info_sets)) {
  check_agent_count(n_);
  const int count = num_nodes();
  for (const auto& z : nodes_) {
    if (z.parent == kNoNode && root_ == kNoNode) root_ = z.id;
  }
  // Depths with a cycle guard; malformed arenas get -1.
  depth_.assign(count, -1);
  for (int z = 0; z < count; ++z) {
    int d = 0;
    int cur = z;
    while (cur >= 0 && cur < count && nodes_[cur].parent != kNoNode &&
           d <= count) {
      cur = nodes_[cur].parent;
      ++d;
    }
    if (cur >= 0 && cur < count && nodes_[cur].parent == kNoNode) depth_[z] = d;
  }
  by_agent_.assign(n_ + 1, {});
  local_index_.assign(info_sets_.size(), -1);
  for (std::size_t k = 0; k < info_sets_.size(); ++k) {
    const AgentId owner = info_sets_[k].owner;
    if (owner >= 1 && owner <= n_) {
      local_index_[k] = static_cast<int>(by_agent_[owner].size());
      by_agent_[owner].push_back(static_cast<InfoSetId>(k));
    }
  }
}

const Alternative& Arena::outcome(NodeId z) const {
  const Node& node = nodes_.at(z);
  if (!node.is_terminal()) {
    throw Error(ErrorCode::kInvalidArgument,
                "node " + std::to_string(z) + " is not terminal");
  }
  return alternatives_.at(node.outcome);
}

const std::vector<InfoSetId>& Arena::agent_info_sets(AgentId i) const {
  if (i < 1 || i > n_) {
    throw Error(ErrorCode::kInvalidArgument,
                "agent " + std::to_string(i) + " out of range");
  }
  return by_agent_[i];
}

bool Arena::precedes(NodeId z_prime, NodeId z) const {
  if (depth_.at(z_prime) >= depth_.at(z)) return false;
  NodeId cur = z;
  while (depth_[cur] > depth_[z_prime]) cur = nodes_[cur].parent;
  return cur == z_prime;
}

std::vector<std::pair<NodeId, int>> Arena::history(NodeId z) const {
  std::vector<std::pair<NodeId, int>> out;
  NodeId cur = z;
  while (nodes_.at(cur).parent != kNoNode) {
    out.emplace_back(nodes_[cur].parent, nodes_[cur].choice);
    cur = nodes_[cur].parent;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<NodeId> Arena::terminals() const {
  std::vector<NodeId> out;
  for (const auto& z : nodes_) {
    if (z.is_terminal()) out.push_back(z.id);
  }
  return out;
}

std::vector<Diagnostic> Arena::validate() const {
  std::vector<Diagnostic> out;
  auto report = [&](std::string inv, std::string msg) {
    out.push_back({std::move(inv), std::move(msg)});
  };
  const int count = num_nodes();
  const int num_sets = num_info_sets();
  if (count == 0) {
    report("a", "arena has no nodes");
    return out;
  }
  for (int z = 0; z < count; ++z) {
    if (nodes_[z].id != z) {
      report("ids", "node at position " + std::to_string(z) + " has id " +
                        std::to_string(nodes_[z].id));
    }
  }
  for (int k = 0; k < num_sets; ++k) {
    if (info_sets_[k].id != k) {
      report("ids", "info set at position " + std::to_string(k) + " has id " +
                        std::to_string(info_sets_[k].id));
    }
  }
  if (!out.empty()) return out;

  // (a) rooted tree.
  int roots = 0;
  for (const auto& z : nodes_) {
    if (z.parent == kNoNode) {
      ++roots;
    } else if (z.parent < 0 || z.parent >= count) {
      report("a", "node " + std::to_string(z.id) + " has unknown parent " +
                      std::to_string(z.parent));
    }
  }
  if (roots != 1) {
    report("a", "expected exactly one root, found " + std::to_string(roots));
  }
  for (int z = 0; z < count; ++z) {
    if (depth_[z] < 0) {
      report("a", "node " + std::to_string(z) + " is not connected to the root");
    }
  }
  if (!out.empty()) return out;

  // Node and info-set records.
  for (const auto& z : nodes_) {
    if (z.owner < 0 || z.owner > n_) {
      report("ids", "node " + std::to_string(z.id) + " has owner " +
                        std::to_string(z.owner));
      continue;
    }
    if (z.is_terminal()) {
      if (z.outcome < 0 || z.outcome >= static_cast<int>(alternatives_.size())) {
        report("outcome", "terminal " + std::to_string(z.id) +
                              " has no valid outcome");
      }
      if (!z.children.empty()) {
        report("a", "terminal " + std::to_string(z.id) + " has children");
      }
      if (z.info_set != kNoInfoSet) {
        report("b", "terminal " + std::to_string(z.id) + " is in an info set");
      }
      continue;
    }
    // (b)
    if (z.info_set < 0 || z.info_set >= num_sets) {
      report("b", "decision node " + std::to_string(z.id) +
                      " has no info set");
      continue;
    }
    const InfoSet& is = info_sets_[z.info_set];
    if (is.owner != z.owner) {
      report("b", "info set " + std::to_string(is.id) + " owned by agent " +
                      std::to_string(is.owner) + " contains node " +
                      std::to_string(z.id) + " of agent " +
                      std::to_string(z.owner));
    }
    if (std::find(is.nodes.begin(), is.nodes.end(), z.id) == is.nodes.end()) {
      report("b", "node " + std::to_string(z.id) + " missing from info set " +
                      std::to_string(is.id));
    }
    // (d)
    if (z.children.size() != is.choices.size()) {
      report("d", "node " + std::to_string(z.id) + " has " +
                      std::to_string(z.children.size()) + " children but " +
                      std::to_string(is.choices.size()) + " choices");
    } else {
      for (std::size_t c = 0; c < z.children.size(); ++c) {
        const NodeId child = z.children[c];
        if (child < 0 || child >= count || nodes_[child].parent != z.id ||
            nodes_[child].choice != static_cast<int>(c)) {
          report("d", "child " + std::to_string(c) + " of node " +
                          std::to_string(z.id) + " is inconsistent");
        }
      }
    }
  }
  for (const auto& z : nodes_) {
    if (z.parent == kNoNode) continue;
    const Node& p = nodes_[z.parent];
    if (p.is_terminal() || z.choice < 0 ||
        z.choice >= static_cast<int>(p.children.size()) ||
        p.children[z.choice] != z.id) {
      report("d", "node " + std::to_string(z.id) +
                      " is not filed under its parent's choice " +
                      std::to_string(z.choice));
    }
  }
  for (const auto& is : info_sets_) {
    if (is.nodes.empty()) {
      report("b", "info set " + std::to_string(is.id) + " is empty");
    }
    if (is.choices.empty()) {
      report("c", "info set " + std::to_string(is.id) + " has no choices");
    }
    std::set<NodeId> seen;
    for (NodeId z : is.nodes) {
      if (z < 0 || z >= count) {
        report("b", "info set " + std::to_string(is.id) +
                        " lists unknown node " + std::to_string(z));
        continue;
      }
      if (!seen.insert(z).second) {
        report("b", "info set " + std::to_string(is.id) + " lists node " +
                        std::to_string(z) + " twice");
      }
      if (nodes_[z].info_set != is.id) {
        report("b", "info set " + std::to_string(is.id) + " lists node " +
                        std::to_string(z) + " which belongs elsewhere");
      }
      if (nodes_[z].owner != is.owner) {
        report("b", "info set " + std::to_string(is.id) + " mixes owners " +
                        std::to_string(is.owner) + " and " +
                        std::to_string(nodes_[z].owner));
      }
      // (c) every member has the same number of moves as the label list.
      if (!nodes_[z].is_terminal() &&
          nodes_[z].children.size() != is.choices.size()) {
        report("c", "info set " + std::to_string(is.id) + " node " +
                        std::to_string(z) + " has " +
                        std::to_string(nodes_[z].children.size()) +
                        " choices, expected " +
                        std::to_string(is.choices.size()));
      }
    }
    std::set<ChoiceLabel> labels(is.choices.begin(), is.choices.end());
    if (labels.size() != is.choices.size()) {
      report("labels", "info set " + std::to_string(is.id) +
                           " repeats a choice label");
    }
    bool pref_sets = !is.choices.empty() && is.choices.front().is_preference_set();
    for (const auto& c : is.choices) {
      if (c.is_preference_set() != pref_sets) {
        report("labels", "info set " + std::to_string(is.id) +
                             " mixes token and preference labels");
        break;
      }
      if (c.is_preference_set() && c.preferences().empty()) {
        report("labels", "info set " + std::to_string(is.id) +
                             " has an empty preference label");
      }
    }
    if (pref_sets) {
      std::set<Preference> used;
      for (const auto& c : is.choices) {
        for (const auto& p : c.preferences()) {
          if (!used.insert(p).second) {
            report("labels", "info set " + std::to_string(is.id) +
                                 " has overlapping preference labels");
          }
        }
      }
    }
  }
  if (!out.empty()) return out;

  // (e) no info set twice along a root-to-leaf path.
  for (const auto& z : nodes_) {
    if (z.is_terminal()) continue;
    NodeId cur = z.parent;
    while (cur != kNoNode) {
      if (nodes_[cur].info_set == z.info_set) {
        report("e", "info set " + std::to_string(z.info_set) +
                        " occurs at nodes " + std::to_string(cur) + " and " +
                        std::to_string(z.id) + " on one path");
        break;
      }
      cur = nodes_[cur].parent;
    }
  }
  return out;
}

bool operator==(const Arena& a, const Arena& b) {
  if (a.n_ != b.n_ || a.alternatives_ != b.alternatives_ ||
      a.nodes_.size() != b.nodes_.size() ||
      a.info_sets_.size() != b.info_sets_.size()) {
    return false;
  }
  for (std::size_t k = 0; k < a.nodes_.size(); ++k) {
    const Node& x = a.nodes_[k];
    const Node& y = b.nodes_[k];
    if (x.id != y.id || x.owner != y.owner || x.parent != y.parent ||
        x.choice != y.choice || x.info_set != y.info_set ||
        x.outcome != y.outcome || x.children != y.children) {
      return false;
    }
  }
  for (std::size_t k = 0; k < a.info_sets_.size(); ++k) {
    const InfoSet& x = a.info_sets_[k];
    const InfoSet& y = b.info_sets_[k];
    if (x.id != y.id || x.owner != y.owner || x.nodes != y.nodes ||
        x.choices != y.choices) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// ArenaBuilder

ArenaBuilder::ArenaBuilder(int n, std::vector<Alternative> alternatives)
    : n_(n), alternatives_(std::move(alternatives)) {
  check_agent_count(n_);
}

InfoSetId ArenaBuilder::add_info_set(AgentId owner,
                                     std::vector<ChoiceLabel> choices) {
  InfoSet is;
  is.id = static_cast<InfoSetId>(info_sets_.size());
  is.owner = owner;
  is.choices = std::move(choices);
  info_sets_.push_back(std::move(is));
  return info_sets_.back().id;
}

NodeId ArenaBuilder::add_decision(NodeId parent, int choice, AgentId owner,
                                  InfoSetId info_set) {
  Node z;
  z.id = static_cast<NodeId>(nodes_.size());
  z.owner = owner;
  z.parent = parent;
  z.choice = parent == kNoNode ? -1 : choice;
  z.info_set = info_set;
  nodes_.push_back(z);
  if (info_set >= 0 && info_set < static_cast<int>(info_sets_.size())) {
    info_sets_[info_set].nodes.push_back(z.id);
  }
  return z.id;
}

NodeId ArenaBuilder::add_terminal(NodeId parent, int choice,
                                  const Alternative& outcome) {
  Node z;
  z.id = static_cast<NodeId>(nodes_.size());
  z.owner = kTerminal;
  z.parent = parent;
  z.choice = parent == kNoNode ? -1 : choice;
  auto it = std::find(alternatives_.begin(), alternatives_.end(), outcome);
  if (it == alternatives_.end()) {
    throw Error(ErrorCode::kUnknownAlternative,
                "outcome '" + outcome.label + "' is not an alternative");
  }
  z.outcome = static_cast<int>(it - alternatives_.begin());
  nodes_.push_back(z);
  return z.id;
}

Arena ArenaBuilder::build_unchecked() const {
  std::vector<Node> nodes = nodes_;
  const int count = static_cast<int>(nodes.size());
  for (auto& z : nodes) z.children.clear();
  for (const auto& z : nodes_) {
    if (z.parent < 0 || z.parent >= count || z.choice < 0) continue;
    auto& ch = nodes[z.parent].children;
    if (static_cast<int>(ch.size()) <= z.choice) {
      ch.resize(z.choice + 1, kNoNode);
    }
    if (ch[z.choice] == kNoNode) ch[z.choice] = z.id;
  }
  return Arena(n_, alternatives_, std::move(nodes), info_sets_);
}

Arena ArenaBuilder::build() const {
  Arena arena = build_unchecked();
  const auto diags = arena.validate();
  if (!diags.empty()) {
    std::string msg;
    for (const auto& d : diags) msg += "(" + d.invariant + ") " + d.message + "; ";
    throw Error(ErrorCode::kInvalidArena, msg);
  }
  return arena;
}

bool info_precedes(const Arena& arena, InfoSetId i_prime, InfoSetId i) {
  const auto& later = arena.info_set(i).nodes;
  for (NodeId zp : arena.info_set(i_prime).nodes) {
    bool found = false;
    for (NodeId z : later) {
      if (arena.precedes(zp, z)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Strategies and play

int Strategy::at(InfoSetId id) const {
  auto it = choices.find(id);
  if (it == choices.end()) {
    throw Error(ErrorCode::kIncompleteStrategy,
                "agent " + std::to_string(owner) + " has no choice at info set " +
                    std::to_string(id));
  }
  return it->second;
}

void assign(Assignment& a, const Strategy& s) {
  for (const auto& [id, c] : s.choices) a.at(id) = c;
}

Assignment make_assignment(const Arena& arena, const PartialProfile& profile) {
  Assignment a(arena.num_info_sets(), -1);
  for (const auto& s : profile) assign(a, s);
  return a;
}

NodeId play_from(const Arena& arena, NodeId start, const Assignment& a) {
  NodeId cur = start;
  while (!arena.is_terminal(cur)) {
    const Node& z = arena.node(cur);
    const int c = a.at(z.info_set);
    if (c < 0) {
      throw Error(ErrorCode::kIncompleteStrategy,
                  "no choice for agent " + std::to_string(z.owner) +
                      " at info set " + std::to_string(z.info_set));
    }
    cur = z.children.at(c);
  }
  return cur;
}

NodeId play_from(const Arena& arena, NodeId start,
                 const PartialProfile& profile) {
  return play_from(arena, start, make_assignment(arena, profile));
}

std::uint64_t count_strategies(const Arena& arena, AgentId i) {
  std::uint64_t total = 1;
  constexpr std::uint64_t kSaturate = std::uint64_t{1} << 62;
  for (InfoSetId id : arena.agent_info_sets(i)) {
    total *= static_cast<std::uint64_t>(arena.num_choices(id));
    if (total > kSaturate) return kSaturate;
  }
  return total;
}

std::vector<Strategy> enumerate_strategies(const Arena& arena, AgentId i,
                                           std::uint64_t cap) {
  if (cap == 0) throw Error(ErrorCode::kInvalidArgument, "cap must be positive");
  const std::uint64_t total = count_strategies(arena, i);
  if (total > cap) {
    throw Error(ErrorCode::kSearchSpaceExceeded,
                "agent " + std::to_string(i) + " has " + std::to_string(total) +
                    " strategies, cap " + std::to_string(cap));
  }
  const auto& sets = arena.agent_info_sets(i);
  std::vector<Strategy> out;
  out.reserve(total);
  std::vector<int> digits(sets.size(), 0);
  for (std::uint64_t k = 0; k < total; ++k) {
    Strategy s;
    s.owner = i;
    for (std::size_t j = 0; j < sets.size(); ++j) s.choices[sets[j]] = digits[j];
    out.push_back(std::move(s));
    // Odometer, last info set fastest.
    for (int j = static_cast<int>(sets.size()) - 1; j >= 0; --j) {
      if (++digits[j] < arena.num_choices(sets[j])) break;
      digits[j] = 0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Domains and type strategies

Domain Domain::two_alternative(int n) {
  check_agent_count(n);
  Domain d;
  d.prefs.assign(n, {pref_x(), pref_y()});
  return d;
}

std::uint64_t Domain::num_profiles() const {
  std::uint64_t total = 1;
  for (const auto& p : prefs) total *= p.size();
  return total;
}

std::vector<int> Domain::profile_at(std::uint64_t index) const {
  std::vector<int> out(prefs.size(), 0);
  for (int i = n() - 1; i >= 0; --i) {
    out[i] = static_cast<int>(index % prefs[i].size());
    index /= prefs[i].size();
  }
  return out;
}

PartialProfile TypeStrategyProfile::profile(const std::vector<int>& types) const {
  PartialProfile out;
  out.reserve(strategies.size());
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    out.push_back(strategies[i].at(types.at(i)));
  }
  return out;
}

TypeStrategyProfile truth_telling_profile(const Arena& arena,
                                          const Domain& domain) {
  if (domain.n() != arena.n()) {
    throw Error(ErrorCode::kInvalidArgument, "domain size differs from arena");
  }
  TypeStrategyProfile tsp;
  tsp.domain = domain;
  tsp.strategies.resize(arena.n());
  for (AgentId i = 1; i <= arena.n(); ++i) {
    for (const auto& pref : domain.of(i)) {
      Strategy s;
      s.owner = i;
      for (InfoSetId id : arena.agent_info_sets(i)) {
        const auto& choices = arena.info_set(id).choices;
        int pick = -1;
        for (std::size_t c = 0; c < choices.size() && pick < 0; ++c) {
          if (choices[c].contains(pref)) pick = static_cast<int>(c);
        }
        // Token labels: the token naming the top alternative.
        if (pick < 0 && pref.tiers().front().size() == 1) {
          const std::string& t = pref.tiers().front().front().label;
          for (std::size_t c = 0; c < choices.size() && pick < 0; ++c) {
            if (choices[c].is_token() && choices[c].token() == t) {
              pick = static_cast<int>(c);
            }
          }
        }
        if (pick < 0) {
          pick = static_cast<int>(
              std::min_element(choices.begin(), choices.end()) -
              choices.begin());
        }
        s.choices[id] = pick;
      }
      tsp.strategies[i - 1].push_back(std::move(s));
    }
  }
  return tsp;
}

}  // namespace osp
