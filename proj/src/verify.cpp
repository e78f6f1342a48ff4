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

#include "osp/verify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace osp {

namespace {

using OutcomeMask = std::uint64_t;

constexpr std::uint64_t kSaturate = std::uint64_t{1} << 62;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturate / a) return kSaturate;
  return a * b;
}

void check_alternatives(const Arena& arena) {
  if (arena.alternatives().size() > 64) {
    throw Error(ErrorCode::kInvalidArgument, "at most 64 alternatives supported");
  }
}

// Outcomes reachable from z when assigned info sets follow their choice and
// every other info set branches freely. Without absent-mindedness each path
// is realized by one strategy of the free agents, so this equals the set of
// outcomes over all their strategies.
OutcomeMask reachable(const Arena& arena, NodeId z, const Assignment& a) {
  const Node& node = arena.node(z);
  if (node.is_terminal()) return OutcomeMask{1} << node.outcome;
  const int c = a[node.info_set];
  if (c >= 0) return reachable(arena, node.children[c], a);
  OutcomeMask out = 0;
  for (NodeId child : node.children) out |= reachable(arena, child, a);
  return out;
}

std::vector<Alternative> to_alternatives(const Arena& arena, OutcomeMask m) {
  std::vector<Alternative> out;
  for (std::size_t k = 0; k < arena.alternatives().size(); ++k) {
    if ((m >> k) & 1U) out.push_back(arena.alternatives()[k]);
  }
  return out;
}

std::vector<int> ranks(const Arena& arena, const Preference& r) {
  std::vector<int> out;
  for (const auto& a : arena.alternatives()) out.push_back(r.rank(a));
  return out;
}

// First (worse in o, better in o') pair with better strictly preferred.
bool find_violation(OutcomeMask o, OutcomeMask o_prime,
                    const std::vector<int>& rank, int& worse, int& better) {
  for (std::size_t x = 0; x < rank.size(); ++x) {
    if (!((o >> x) & 1U)) continue;
    for (std::size_t y = 0; y < rank.size(); ++y) {
      if (((o_prime >> y) & 1U) && rank[y] < rank[x]) {
        worse = static_cast<int>(x);
        better = static_cast<int>(y);
        return true;
      }
    }
  }
  return false;
}

bool node_compatible(const Arena& arena, NodeId z, const Assignment& a) {
  NodeId cur = z;
  while (arena.node(cur).parent != kNoNode) {
    const Node& child = arena.node(cur);
    const Node& parent = arena.node(child.parent);
    const int c = a[parent.info_set];
    if (c >= 0 && c != child.choice) return false;
    cur = child.parent;
  }
  return true;
}

void check_strategy(const Arena& arena, AgentId i, const Strategy& s) {
  if (s.owner != i) {
    throw Error(ErrorCode::kInvalidArgument,
                "strategy of agent " + std::to_string(s.owner) +
                    " used for agent " + std::to_string(i));
  }
  for (InfoSetId id : arena.agent_info_sets(i)) {
    const int c = s.at(id);
    if (c < 0 || c >= arena.num_choices(id)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "choice " + std::to_string(c) + " not available at info set " +
                      std::to_string(id));
    }
  }
}

// Agent i's info sets at which sigma and deviation first disagree.
std::vector<InfoSetId> departure_sets(const Arena& arena, AgentId i,
                                      const Strategy& sigma,
                                      const Strategy& deviation) {
  std::vector<InfoSetId> differ;
  for (InfoSetId id : arena.agent_info_sets(i)) {
    if (sigma.at(id) != deviation.at(id)) differ.push_back(id);
  }
  std::vector<InfoSetId> out;
  for (InfoSetId id : differ) {
    const bool earliest = std::none_of(
        differ.begin(), differ.end(),
        [&](InfoSetId other) { return info_precedes(arena, other, id); });
    if (earliest) out.push_back(id);
  }
  return out;
}

const Strategy& find_own(const PartialProfile& block, AgentId i) {
  for (const auto& s : block) {
    if (s.owner == i) return s;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "block strategies lack agent " + std::to_string(i));
}

// Iterates the cartesian product of per-agent strategy lists, first list
// slowest.
class Odometer {
 public:
  explicit Odometer(std::vector<std::size_t> sizes)
      : sizes_(std::move(sizes)), digits_(sizes_.size(), 0) {
    done_ = std::any_of(sizes_.begin(), sizes_.end(),
                        [](std::size_t s) { return s == 0; });
  }
  bool done() const { return done_; }
  const std::vector<std::size_t>& digits() const { return digits_; }
  void next() {
    for (int j = static_cast<int>(sizes_.size()) - 1; j >= 0; --j) {
      if (++digits_[j] < sizes_[j]) return;
      digits_[j] = 0;
    }
    done_ = true;
  }

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> digits_;
  bool done_ = false;
};

}  // namespace

SocialChoiceFunction rule_from_committee(const Committee& c,
                                         const Domain& domain) {
  if (domain.n() != c.n()) {
    throw Error(ErrorCode::kInvalidArgument, "domain size differs from committee");
  }
  return [c, domain](const std::vector<int>& types) {
    Coalition supporters;
    for (AgentId i = 1; i <= domain.n(); ++i) {
      if (domain.of(i).at(types.at(i - 1)).top() == kX) supporters.insert(i);
    }
    return emvr_evaluate(c, supporters);
  };
}

SocialChoiceFunction rule_from_table(const ScfTable& f, const Domain& domain) {
  if (domain.n() != f.n()) {
    throw Error(ErrorCode::kInvalidArgument, "domain size differs from table");
  }
  return [f, domain](const std::vector<int>& types) {
    Coalition supporters;
    for (AgentId i = 1; i <= domain.n(); ++i) {
      if (domain.of(i).at(types.at(i - 1)).top() == kX) supporters.insert(i);
    }
    return f.at(supporters);
  };
}

bool compatible(const Arena& arena, NodeId node, const PartialProfile& sigma_s) {
  return node_compatible(arena, node, make_assignment(arena, sigma_s));
}

std::vector<DeparturePoint> earliest_departures(const Arena& arena,
                                                const PartialProfile& sigma_block,
                                                AgentId i,
                                                const Strategy& deviation) {
  const Strategy& sigma = find_own(sigma_block, i);
  check_strategy(arena, i, deviation);
  if (sigma.choices == deviation.choices) {
    throw Error(ErrorCode::kIdenticalStrategies,
                "deviation equals the strategy of agent " + std::to_string(i));
  }
  const Assignment a = make_assignment(arena, sigma_block);
  std::vector<DeparturePoint> out;
  for (InfoSetId id : departure_sets(arena, i, sigma, deviation)) {
    DeparturePoint dp{id, {}};
    for (NodeId z : arena.info_set(id).nodes) {
      if (node_compatible(arena, z, a)) dp.compatible_nodes.push_back(z);
    }
    if (!dp.compatible_nodes.empty()) out.push_back(std::move(dp));
  }
  return out;
}

OptionSets option_sets(const Arena& arena, const PartialProfile& sigma_block,
                       const Strategy& deviation, const DeparturePoint& dp) {
  check_alternatives(arena);
  Assignment a = make_assignment(arena, sigma_block);
  Assignment b = a;
  assign(b, deviation);
  OutcomeMask o = 0;
  OutcomeMask o_prime = 0;
  for (NodeId z : dp.compatible_nodes) {
    o |= reachable(arena, z, a);
    o_prime |= reachable(arena, z, b);
  }
  return {to_alternatives(arena, o), to_alternatives(arena, o_prime)};
}

Verdict is_obviously_dominant(const Arena& arena, const Partition& s,
                              AgentId i, const Preference& r_i,
                              const Strategy& sigma_i, std::uint64_t cap) {
  check_alternatives(arena);
  check_strategy(arena, i, sigma_i);
  if (s.n() != arena.n()) {
    throw Error(ErrorCode::kInvalidArgument, "partition size differs from arena");
  }
  const std::vector<int> rank = ranks(arena, r_i);
  const std::vector<AgentId> mates = (s.block_of(i) - Coalition{i}).members();

  std::uint64_t total = count_strategies(arena, i) - 1;
  for (AgentId j : mates) total = saturating_mul(total, count_strategies(arena, j));
  if (total > cap) {
    throw Error(ErrorCode::kSearchSpaceExceeded,
                "obvious dominance check for agent " + std::to_string(i) +
                    " needs " + std::to_string(total) +
                    " combinations, cap " + std::to_string(cap));
  }
  std::vector<std::vector<Strategy>> mate_strategies;
  std::vector<std::size_t> sizes;
  for (AgentId j : mates) {
    mate_strategies.push_back(enumerate_strategies(arena, j, cap));
    sizes.push_back(mate_strategies.back().size());
  }
  const std::vector<Strategy> own = enumerate_strategies(arena, i, cap);
  const auto& own_sets = arena.agent_info_sets(i);

  Verdict v;
  for (Odometer it(sizes); !it.done(); it.next()) {
    Assignment base(arena.num_info_sets(), -1);
    for (std::size_t k = 0; k < mates.size(); ++k) {
      assign(base, mate_strategies[k][it.digits()[k]]);
    }
    assign(base, sigma_i);
    // Compatible nodes and o depend only on the fixed block strategies.
    std::vector<std::vector<NodeId>> compat(own_sets.size());
    std::vector<OutcomeMask> o(own_sets.size(), 0);
    for (std::size_t k = 0; k < own_sets.size(); ++k) {
      for (NodeId z : arena.info_set(own_sets[k]).nodes) {
        if (node_compatible(arena, z, base)) {
          compat[k].push_back(z);
          o[k] |= reachable(arena, z, base);
        }
      }
    }
    for (const Strategy& dev : own) {
      if (dev.choices == sigma_i.choices) continue;
      ++v.evaluations;
      Assignment moved = base;
      assign(moved, dev);
      for (InfoSetId id : departure_sets(arena, i, sigma_i, dev)) {
        const std::size_t k = arena.local_index(id);
        if (compat[k].empty()) continue;
        OutcomeMask o_prime = 0;
        for (NodeId z : compat[k]) o_prime |= reachable(arena, z, moved);
        int worse = -1;
        int better = -1;
        if (find_violation(o[k], o_prime, rank, worse, better)) {
          DominanceWitness w;
          w.agent = i;
          w.preference = r_i;
          w.strategy = sigma_i;
          for (std::size_t m = 0; m < mates.size(); ++m) {
            w.mates.push_back(mate_strategies[m][it.digits()[m]]);
          }
          w.deviation = dev;
          w.departure = {id, compat[k]};
          w.worse = arena.alternatives()[worse];
          w.better = arena.alternatives()[better];
          v.pass = false;
          v.witness = std::move(w);
          return v;
        }
      }
    }
  }
  return v;
}

bool is_weakly_dominant(const Arena& arena, AgentId i, const Preference& r_i,
                        const Strategy& sigma_i, std::uint64_t cap) {
  check_alternatives(arena);
  check_strategy(arena, i, sigma_i);
  const std::vector<int> rank = ranks(arena, r_i);
  std::vector<AgentId> others;
  for (AgentId j = 1; j <= arena.n(); ++j) {
    if (j != i) others.push_back(j);
  }
  std::uint64_t total = 1;
  for (AgentId j : others) total = saturating_mul(total, count_strategies(arena, j));
  if (total > cap) {
    throw Error(ErrorCode::kSearchSpaceExceeded,
                "weak dominance check for agent " + std::to_string(i) +
                    " needs " + std::to_string(total) + " profiles, cap " +
                    std::to_string(cap));
  }
  std::vector<std::vector<Strategy>> lists;
  std::vector<std::size_t> sizes;
  for (AgentId j : others) {
    lists.push_back(enumerate_strategies(arena, j, cap));
    sizes.push_back(lists.back().size());
  }
  for (Odometer it(sizes); !it.done(); it.next()) {
    Assignment a(arena.num_info_sets(), -1);
    for (std::size_t k = 0; k < others.size(); ++k) {
      assign(a, lists[k][it.digits()[k]]);
    }
    // With i free, the reachable outcomes are those of all deviations.
    const OutcomeMask alternatives = reachable(arena, arena.root(), a);
    assign(a, sigma_i);
    const int got = arena.node(play_from(arena, arena.root(), a)).outcome;
    for (std::size_t y = 0; y < rank.size(); ++y) {
      if (((alternatives >> y) & 1U) && rank[y] < rank[got]) return false;
    }
  }
  return true;
}

Verdict induces(const Arena& arena, const TypeStrategyProfile& tsp,
                const SocialChoiceFunction& f) {
  Verdict v;
  const std::uint64_t count = tsp.domain.num_profiles();
  for (std::uint64_t k = 0; k < count; ++k) {
    ++v.evaluations;
    const std::vector<int> types = tsp.domain.profile_at(k);
    const Alternative expected = f(types);
    const Alternative& actual =
        arena.outcome(play_from(arena, arena.root(), tsp.profile(types)));
    if (expected != actual) {
      v.pass = false;
      v.witness = InducementWitness{types, expected, actual};
      return v;
    }
  }
  return v;
}

Verdict osp_implements(const Arena& arena, const TypeStrategyProfile& tsp,
                       const SocialChoiceFunction& f, const Partition& s,
                       const VerifyOptions& opts) {
  Verdict v = induces(arena, tsp, f);
  if (!v.pass) return v;

  struct Task {
    AgentId i;
    int type;
  };
  std::vector<Task> tasks;
  for (AgentId i = 1; i <= arena.n(); ++i) {
    for (std::size_t t = 0; t < tsp.domain.of(i).size(); ++t) {
      tasks.push_back({i, static_cast<int>(t)});
    }
  }
  std::vector<Verdict> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  auto run = [&](std::size_t k) {
    try {
      const Task& task = tasks[k];
      results[k] = is_obviously_dominant(arena, s, task.i,
                                         tsp.domain.of(task.i)[task.type],
                                         tsp.at(task.i, task.type), opts.cap);
      if (auto* w = std::get_if<DominanceWitness>(&results[k].witness)) {
        w->type = task.type;
      }
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };
  const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(tasks.size())));
  if (jobs == 1) {
    for (std::size_t k = 0; k < tasks.size(); ++k) run(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < tasks.size(); k = next++) run(k);
      });
    }
    for (auto& t : pool) t.join();
  }
  // Deterministic reduction: the first task in (agent, type) order decides.
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    if (errors[k]) std::rethrow_exception(errors[k]);
    v.evaluations += results[k].evaluations;
    if (!results[k].pass) {
      results[k].evaluations = v.evaluations;
      return results[k];
    }
  }
  return v;
}

Verdict coarsening_check(const Arena& arena, const TypeStrategyProfile& tsp,
                         const SocialChoiceFunction& f, const Partition& s_star,
                         const VerifyOptions& opts) {
  Verdict total;
  for (const Partition& s : coarsenings(s_star)) {
    Verdict v = osp_implements(arena, tsp, f, s, opts);
    total.evaluations += v.evaluations;
    if (!v.pass) {
      v.evaluations = total.evaluations;
      return v;
    }
  }
  return total;
}

Verdict theorem1_property(const Arena& arena, const Partition& s,
                          const TypeStrategyProfile& tsp,
                          const SocialChoiceFunction& f,
                          const VerifyOptions& opts) {
  const GameClassReport cls = game_class_report(arena, s, tsp.domain);
  if (!cls.member) {
    throw Error(ErrorCode::kHypothesisNotMet,
                "arena is not in the staged class for " + s.to_string() + ": " +
                    (cls.violations.empty() ? "" : cls.violations.front()));
  }
  for (AgentId i = 1; i <= arena.n(); ++i) {
    const auto& types = tsp.domain.of(i);
    for (std::size_t t = 0; t < types.size(); ++t) {
      for (InfoSetId id : arena.agent_info_sets(i)) {
        const auto& choices = arena.info_set(id).choices;
        for (std::size_t c = 0; c < choices.size(); ++c) {
          if (choices[c].contains(types[t]) &&
              tsp.at(i, static_cast<int>(t)).at(id) != static_cast<int>(c)) {
            throw Error(ErrorCode::kHypothesisNotMet,
                        "profile is not truth-telling for agent " +
                            std::to_string(i));
          }
        }
      }
    }
  }
  const Verdict ind = induces(arena, tsp, f);
  if (!ind.pass) {
    throw Error(ErrorCode::kHypothesisNotMet, "truth-telling does not induce f");
  }
  for (AgentId i = 1; i <= arena.n(); ++i) {
    const auto& types = tsp.domain.of(i);
    for (std::size_t t = 0; t < types.size(); ++t) {
      if (!is_weakly_dominant(arena, i, types[t], tsp.at(i, static_cast<int>(t)),
                              opts.cap)) {
        throw Error(ErrorCode::kHypothesisNotMet,
                    "truth-telling is not weakly dominant for agent " +
                        std::to_string(i) + " with " + types[t].to_string());
      }
    }
  }
  return osp_implements(arena, tsp, f, s, opts);
}

bool replay(const Arena& arena, const Partition& s, const DominanceWitness& w) {
  const Coalition mates = s.block_of(w.agent) - Coalition{w.agent};
  Coalition listed;
  for (const auto& m : w.mates) listed.insert(m.owner);
  if (listed != mates) return false;
  PartialProfile block = w.mates;
  block.push_back(w.strategy);
  const auto dps = earliest_departures(arena, block, w.agent, w.deviation);
  if (std::find(dps.begin(), dps.end(), w.departure) == dps.end()) return false;
  const OptionSets sets = option_sets(arena, block, w.deviation, w.departure);
  const bool in_o = std::find(sets.o.begin(), sets.o.end(), w.worse) != sets.o.end();
  const bool in_o_prime = std::find(sets.o_prime.begin(), sets.o_prime.end(),
                                    w.better) != sets.o_prime.end();
  return in_o && in_o_prime && w.preference.strictly_prefers(w.better, w.worse);
}

bool replay(const Arena& arena, const TypeStrategyProfile& tsp,
            const SocialChoiceFunction& f, const InducementWitness& w) {
  const Alternative& actual =
      arena.outcome(play_from(arena, arena.root(), tsp.profile(w.types)));
  return actual == w.actual && f(w.types) == w.expected && actual != w.expected;
}

}  // namespace osp
