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

#include "osp/random.hpp"

#include <algorithm>

namespace osp {

Partition random_partition(Rng& rng, int n) {
  check_agent_count(n);
  std::uniform_int_distribution<int> label(0, n - 1);
  std::vector<Coalition> groups(n);
  for (AgentId i = 1; i <= n; ++i) groups[label(rng)].insert(i);
  std::vector<Coalition> blocks;
  for (const auto& g : groups) {
    if (!g.empty()) blocks.push_back(g);
  }
  return Partition(n, std::move(blocks));
}

QuotaInstance random_quota_instance(Rng& rng, int min_n, int max_n) {
  const int n = std::uniform_int_distribution<int>(min_n, max_n)(rng);
  const Partition s = random_partition(rng, n);
  std::vector<Coalition> blocks = s.blocks();
  std::shuffle(blocks.begin(), blocks.end(), rng);
  std::vector<int> q;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const int hi = blocks[k].size() - (k + 1 == blocks.size() ? 1 : 0);
    q.push_back(std::uniform_int_distribution<int>(0, hi)(rng));
  }
  return {OrderedPartition(n, std::move(blocks)), QuotaVector(std::move(q))};
}

}  // namespace osp
