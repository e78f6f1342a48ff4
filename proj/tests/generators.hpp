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

// Instance generators for property tests.

#ifndef OSP_TESTS_GENERATORS_HPP_
#define OSP_TESTS_GENERATORS_HPP_

#include <functional>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "osp/committee.hpp"
#include "osp/core.hpp"
#include "osp/game.hpp"
#include "osp/random.hpp"

namespace osp::gen {

// Random arena with at most max_nodes nodes, branching 2 or 3, and no
// information set meeting a single path twice.
inline Arena random_arena(Rng& rng, int n, int max_nodes) {
  struct Draft {
    NodeId parent;
    int choice;
    int arity = 0;  // 0 for terminals
    AgentId owner = 0;
    int group = -1;
  };
  std::vector<Draft> nodes{{kNoNode, -1}};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> agent(1, n);
  // Expand in breadth-first order so ids stay topological.
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const int room = max_nodes - static_cast<int>(nodes.size());
    if (room < 2 || (k > 0 && unit(rng) < 0.35)) continue;
    const int arity = room >= 3 && unit(rng) < 0.25 ? 3 : 2;
    nodes[k].arity = arity;
    nodes[k].owner = agent(rng);
    for (int c = 0; c < arity; ++c) {
      nodes.push_back({static_cast<NodeId>(k), c});
    }
  }
  const auto ancestor = [&](std::size_t a, std::size_t b) {
    for (NodeId p = nodes[b].parent; p != kNoNode; p = nodes[p].parent) {
      if (static_cast<std::size_t>(p) == a) return true;
    }
    return false;
  };
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k].arity == 0) continue;
    std::vector<int> options;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const Draft& head = nodes[groups[g].front()];
      if (head.owner != nodes[k].owner || head.arity != nodes[k].arity) continue;
      bool clash = false;
      for (std::size_t m : groups[g]) clash = clash || ancestor(m, k) || ancestor(k, m);
      if (!clash) options.push_back(static_cast<int>(g));
    }
    if (!options.empty() && unit(rng) < 0.5) {
      const int g = options[std::uniform_int_distribution<std::size_t>(
          0, options.size() - 1)(rng)];
      nodes[k].group = g;
      groups[g].push_back(k);
    } else {
      nodes[k].group = static_cast<int>(groups.size());
      groups.push_back({k});
    }
  }
  ArenaBuilder b(n, {kX, kY});
  std::vector<InfoSetId> ids;
  for (const auto& g : groups) {
    std::vector<ChoiceLabel> labels;
    for (int c = 0; c < nodes[g.front()].arity; ++c) {
      labels.emplace_back(std::string(1, static_cast<char>('a' + c)));
    }
    ids.push_back(b.add_info_set(nodes[g.front()].owner, labels));
  }
  std::bernoulli_distribution coin(0.5);
  for (const Draft& d : nodes) {
    if (d.arity > 0) {
      b.add_decision(d.parent, d.choice, d.owner, ids[d.group]);
    } else {
      b.add_terminal(d.parent, d.choice, coin(rng) ? kX : kY);
    }
  }
  return b.build();
}

// Calls fn on every committee whose winning sets are an up-set of per-block
// count vectors (excluding the two constant rules).
inline void for_each_count_committee(const Partition& s,
                                     const std::function<void(const Committee&)>& fn) {
  const int k_blocks = s.size();
  std::vector<int> radix;
  for (const auto& b : s.blocks()) radix.push_back(b.size() + 1);
  std::vector<std::vector<int>> vecs;
  {
    std::vector<int> v(k_blocks, 0);
    while (true) {
      vecs.push_back(v);
      int k = 0;
      for (; k < k_blocks; ++k) {
        if (++v[k] < radix[k]) break;
        v[k] = 0;
      }
      if (k == k_blocks) break;
    }
  }
  const auto index_of = [&](const std::vector<int>& v) {
    std::size_t idx = 0;
    for (int k = k_blocks - 1; k >= 0; --k) idx = idx * radix[k] + v[k];
    return idx;
  };
  // Largest vectors first, so every upper cover is decided before its base.
  std::vector<std::size_t> order(vecs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::accumulate(vecs[a].begin(), vecs[a].end(), 0) >
           std::accumulate(vecs[b].begin(), vecs[b].end(), 0);
  });
  std::vector<char> in(vecs.size(), 0);
  const std::uint64_t full = (std::uint64_t{1} << s.n()) - 1;
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == order.size()) {
      const bool none = std::none_of(in.begin(), in.end(), [](char c) { return c; });
      if (none || in[0]) return;
      std::vector<Coalition> family;
      for (std::uint64_t b = 0; b <= full; ++b) {
        const Coalition t = Coalition::from_bits(b);
        std::vector<int> v(k_blocks);
        for (int k = 0; k < k_blocks; ++k) v[k] = (t & s.block(k)).size();
        if (in[index_of(v)]) family.push_back(t);
      }
      fn(minimalize(s.n(), family));
      return;
    }
    const std::size_t e = order[pos];
    in[e] = 0;
    rec(pos + 1);
    bool covers_in = true;
    for (int k = 0; k < k_blocks; ++k) {
      if (vecs[e][k] + 1 < radix[k]) {
        auto up = vecs[e];
        ++up[k];
        covers_in = covers_in && in[index_of(up)];
      }
    }
    if (covers_in) {
      in[e] = 1;
      rec(pos + 1);
      in[e] = 0;
    }
  };
  rec(0);
}

// Every non-constant antichain of subsets of {1..n}, n <= 4.
inline std::vector<std::vector<Coalition>> all_antichains(int n) {
  const int subsets = 1 << n;
  std::vector<std::vector<Coalition>> out;
  for (std::uint64_t fam = 1; fam < (std::uint64_t{1} << subsets); ++fam) {
    if (fam & 1) continue;  // contains the empty set
    std::vector<Coalition> family;
    for (int b = 0; b < subsets; ++b) {
      if (fam >> b & 1) family.push_back(Coalition::from_bits(b));
    }
    bool anti = true;
    for (std::size_t a = 0; a < family.size() && anti; ++a) {
      for (std::size_t b = 0; b < family.size() && anti; ++b) {
        if (a != b && family[a].is_subset_of(family[b])) anti = false;
      }
    }
    if (anti) out.push_back(family);
  }
  return out;
}

inline ScfTable random_table(Rng& rng, int n) {
  std::bernoulli_distribution coin(0.5);
  std::vector<Alternative> out(std::size_t{1} << n);
  for (auto& a : out) a = coin(rng) ? kX : kY;
  return ScfTable(n, out);
}

}  // namespace osp::gen

#endif  // OSP_TESTS_GENERATORS_HPP_
