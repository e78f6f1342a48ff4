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

#include <deque>
#include <map>

#include "osp/game.hpp"

namespace osp {

namespace {

// A node waiting to be created, with the process state it is created in.
struct Pending {
  NodeId parent;
  int choice;
  int step;
  int pos;       // next mover's position within the block
  int nx;        // {P^x} votes cast so far in this step
  NodeId start;  // first node of the current step
};

}  // namespace

Arena build_quota_game(const OrderedPartition& s_o, const QuotaVector& q) {
  require_compatible(s_o, q);
  const int steps = s_o.size();
  std::vector<std::vector<AgentId>> members;
  for (int k = 0; k < steps; ++k) members.push_back(s_o[k].members());

  const std::vector<ChoiceLabel> labels = {ChoiceLabel({pref_x()}),
                                           ChoiceLabel({pref_y()})};
  ArenaBuilder b(s_o.n(), {kX, kY});
  std::map<std::pair<NodeId, int>, InfoSetId> sets;

  std::deque<Pending> queue;
  queue.push_back({kNoNode, 0, 0, 0, 0, kNoNode});
  while (!queue.empty()) {
    Pending p = queue.front();
    queue.pop_front();
    if (p.pos == static_cast<int>(members[p.step].size())) {
      const int quota = q[p.step];
      if (p.nx > quota) {
        b.add_terminal(p.parent, p.choice, kX);
        continue;
      }
      if (p.nx < quota || p.step + 1 == steps) {
        b.add_terminal(p.parent, p.choice, kY);
        continue;
      }
      p = {p.parent, p.choice, p.step + 1, 0, 0, kNoNode};
    }
    const AgentId owner = members[p.step][p.pos];
    NodeId z;
    if (p.pos == 0) {
      const InfoSetId id = b.add_info_set(owner, labels);
      z = b.add_decision(p.parent, p.choice, owner, id);
      p.start = z;
      sets[{z, 0}] = id;
    } else {
      auto it = sets.find({p.start, p.pos});
      if (it == sets.end()) {
        it = sets.emplace(std::make_pair(p.start, p.pos),
                          b.add_info_set(owner, labels)).first;
      }
      z = b.add_decision(p.parent, p.choice, owner, it->second);
    }
    for (int c = 0; c < 2; ++c) {
      queue.push_back({z, c, p.step, p.pos + 1, p.nx + (c == 0 ? 1 : 0),
                       p.start});
    }
  }
  return b.build();
}

}  // namespace osp
