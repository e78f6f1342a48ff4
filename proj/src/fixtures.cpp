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

#include "osp/game.hpp"

namespace osp {

// Five agents. Agent 1 moves first, agent 2 moves without seeing agent 1.
// After (x, y) agent 3 decides; after (y, x) agents 4 and 5 move, 5 without
// seeing 4. Choice 0 votes y, choice 1 votes x.
Figure1 figure1_game() {
  const std::vector<ChoiceLabel> votes = {ChoiceLabel({pref_y()}),
                                          ChoiceLabel({pref_x()})};
  ArenaBuilder b(5, {kX, kY});
  const InfoSetId i1 = b.add_info_set(1, votes);
  const InfoSetId i2 = b.add_info_set(2, votes);
  const InfoSetId i4 = b.add_info_set(4, votes);
  const InfoSetId i3 = b.add_info_set(3, votes);
  const InfoSetId i5 = b.add_info_set(5, votes);

  const NodeId z0 = b.add_decision(kNoNode, 0, 1, i1);
  const NodeId z1 = b.add_decision(z0, 0, 2, i2);
  const NodeId z2 = b.add_decision(z0, 1, 2, i2);
  b.add_terminal(z1, 0, kY);
  const NodeId z4 = b.add_decision(z1, 1, 4, i4);
  const NodeId z3 = b.add_decision(z2, 0, 3, i3);
  b.add_terminal(z2, 1, kX);
  const NodeId z5 = b.add_decision(z4, 0, 5, i5);
  const NodeId z6 = b.add_decision(z4, 1, 5, i5);
  b.add_terminal(z3, 0, kY);
  b.add_terminal(z3, 1, kX);
  b.add_terminal(z5, 0, kY);
  b.add_terminal(z5, 1, kY);
  b.add_terminal(z6, 0, kY);
  b.add_terminal(z6, 1, kX);

  Arena arena = b.build();
  TypeStrategyProfile tsp = truth_telling_profile(arena, Domain::two_alternative(5));
  return {std::move(arena), std::move(tsp)};
}

}  // namespace osp
