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


#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "osp/characterize.hpp"
#include "osp/committee.hpp"
#include "osp/error.hpp"
#include "osp/verify.hpp"

using namespace osp;

namespace {

constexpr InfoSetId kI1 = 0, kI2 = 1, kI4 = 2, kI5 = 4;
const Partition kStar(5, {{1, 2}, {3}, {4, 5}});
const Committee kEx1(5, {{1, 2}, {1, 3}, {2, 4, 5}});

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kInvalidArgument;
}

int pick(const Arena& a, InfoSetId is, const Preference& p) {
  const auto& ch = a.info_set(is).choices;
  for (std::size_t c = 0; c < ch.size(); ++c) {
    if (ch[c].contains(p)) return static_cast<int>(c);
  }
  return -1;
}

Strategy play(const Arena& a, AgentId i, InfoSetId is, const Preference& p) {
  return Strategy{i, {{is, pick(a, is, p)}}};
}

std::set<Alternative> as_set(const std::vector<Alternative>& v) { return {v.begin(), v.end()}; }

Arena one_shot() {
  ArenaBuilder b(1, {kX, kY});
  const InfoSetId is = b.add_info_set(1, {ChoiceLabel({pref_x()}), ChoiceLabel({pref_y()})});
  const NodeId r = b.add_decision(kNoNode, -1, 1, is);
  b.add_terminal(r, 0, kX);
  b.add_terminal(r, 1, kY);
  return b.build();
}

const std::vector<Preference>& test_prefs() {
  static const std::vector<Preference> prefs = {pref_x(), pref_y(), Preference({{kX, kY}})};
  return prefs;
}

}  // namespace

TEST_CASE("compatible examples") {
  const Arena a = figure1_game().arena;
  const PartialProfile s = {play(a, 1, kI1, pref_y()), play(a, 2, kI2, pref_y())};
  CHECK(compatible(a, 1, s));
  CHECK_FALSE(compatible(a, 2, s));
  CHECK(compatible(a, a.root(), s));
}

TEST_CASE("earliest departure examples") {
  const Arena a = figure1_game().arena;
  const Strategy s1 = play(a, 1, kI1, pref_y());
  const Strategy s2 = play(a, 2, kI2, pref_y());
  const Strategy dev = play(a, 2, kI2, pref_x());
  const auto dps = earliest_departures(a, {s1, s2}, 2, dev);
  REQUIRE(dps.size() == 1);
  CHECK(dps[0].info_set == kI2);
  CHECK(dps[0].compatible_nodes == std::vector<NodeId>{1});
  const auto alone = earliest_departures(a, {s2}, 2, dev);
  REQUIRE(alone.size() == 1);
  CHECK(alone[0].compatible_nodes == std::vector<NodeId>{1, 2});
  const Strategy t1 = play(a, 1, kI1, pref_x());
  const auto single = earliest_departures(a, {t1}, 1, s1);
  REQUIRE(single.size() == 1);
  CHECK(single[0].compatible_nodes == std::vector<NodeId>{0});
  CHECK(code_of([&] { (void)earliest_departures(a, {s2}, 2, s2); }) ==
        ErrorCode::kIdenticalStrategies);
}

TEST_CASE("option set examples") {
  const Arena a = figure1_game().arena;
  const Strategy truthful1 = play(a, 1, kI1, pref_x());
  const Strategy dev1 = play(a, 1, kI1, pref_y());
  {
    const PartialProfile block = {truthful1, play(a, 2, kI2, pref_x())};
    const auto dps = earliest_departures(a, block, 1, dev1);
    REQUIRE(dps.size() == 1);
    const OptionSets os = option_sets(a, block, dev1, dps[0]);
    CHECK(as_set(os.o) == std::set<Alternative>{kX});
    CHECK(as_set(os.o_prime) == std::set<Alternative>{kX, kY});
  }
  {
    const PartialProfile block = {truthful1, play(a, 2, kI2, pref_y())};
    const auto dps = earliest_departures(a, block, 1, dev1);
    const OptionSets os = option_sets(a, block, dev1, dps.at(0));
    CHECK(as_set(os.o) == std::set<Alternative>{kX, kY});
    CHECK(as_set(os.o_prime) == std::set<Alternative>{kY});
  }
  {
    const PartialProfile block = {play(a, 4, kI4, pref_x()), play(a, 5, kI5, pref_x())};
    const Strategy dev4 = play(a, 4, kI4, pref_y());
    const auto dps = earliest_departures(a, block, 4, dev4);
    const OptionSets os = option_sets(a, block, dev4, dps.at(0));
    CHECK(as_set(os.o) == std::set<Alternative>{kX});
    CHECK(as_set(os.o_prime) == std::set<Alternative>{kY});
  }
}

TEST_CASE("obvious dominance on the fixture") {
  const Figure1 fig = figure1_game();
  const Strategy truthful1 = play(fig.arena, 1, kI1, pref_x());
  CHECK(is_obviously_dominant(fig.arena, kStar, 1, pref_x(), truthful1).pass);
  const Verdict fine = is_obviously_dominant(fig.arena, Partition::finest(5), 1, pref_x(), truthful1);
  REQUIRE_FALSE(fine.pass);
  const auto& w = std::get<DominanceWitness>(fine.witness);
  CHECK(w.worse == kY);
  CHECK(w.better == kX);
  CHECK(replay(fig.arena, Partition::finest(5), w));
  CHECK(is_obviously_dominant(fig.arena, Partition::coarsest(5), 1, pref_x(), truthful1).pass);
  const Arena single = one_shot();
  CHECK(is_obviously_dominant(single, Partition::finest(1), 1, pref_x(), Strategy{1, {{0, 0}}}).pass);
  CHECK(code_of([&] {
          (void)is_obviously_dominant(fig.arena, kStar, 1, pref_x(), truthful1, 1);
        }) == ErrorCode::kSearchSpaceExceeded);
}

TEST_CASE("weak dominance examples") {
  const Figure1 fig = figure1_game();
  for (const Preference& p : {pref_x(), pref_y()}) {
    CHECK(is_weakly_dominant(fig.arena, 3, p, play(fig.arena, 3, 3, p)));
  }
  const Arena single = one_shot();
  CHECK(is_weakly_dominant(single, 1, pref_x(), Strategy{1, {{0, 0}}}));
  CHECK_FALSE(is_weakly_dominant(single, 1, pref_x(), Strategy{1, {{0, 1}}}));
}

TEST_CASE("osp implementation of the fixture") {
  const Figure1 fig = figure1_game();
  const Domain d = Domain::two_alternative(5);
  const auto f = rule_from_committee(kEx1, d);
  const Verdict ind = induces(fig.arena, fig.tsp, f);
  CHECK(ind.pass);
  CHECK(ind.evaluations == 32);
  CHECK(osp_implements(fig.arena, fig.tsp, f, kStar).pass);
  const Verdict fine = osp_implements(fig.arena, fig.tsp, f, Partition::finest(5));
  REQUIRE_FALSE(fine.pass);
  CHECK(replay(fig.arena, Partition::finest(5), std::get<DominanceWitness>(fine.witness)));
  const Verdict par = osp_implements(fig.arena, fig.tsp, f, Partition::finest(5), {kDefaultCap, 3});
  CHECK(std::get<DominanceWitness>(par.witness).agent ==
        std::get<DominanceWitness>(fine.witness).agent);
  CHECK(std::get<DominanceWitness>(par.witness).deviation ==
        std::get<DominanceWitness>(fine.witness).deviation);
  CHECK(par.evaluations == fine.evaluations);

  // A rule the fixture does not induce.
  const auto g = rule_from_committee(Committee(5, {{1}}), d);
  const Verdict bad = induces(fig.arena, fig.tsp, g);
  REQUIRE_FALSE(bad.pass);
  const auto& w = std::get<InducementWitness>(bad.witness);
  CHECK(replay(fig.arena, fig.tsp, g, w));
  CHECK_FALSE(osp_implements(fig.arena, fig.tsp, g, kStar).pass);
}

TEST_CASE("coarsening harness examples") {
  const Figure1 fig = figure1_game();
  const auto f = rule_from_committee(kEx1, Domain::two_alternative(5));
  CHECK(coarsenings(kStar).size() == 5);
  CHECK(coarsening_check(fig.arena, fig.tsp, f, kStar).pass);
  CHECK(coarsening_check(fig.arena, fig.tsp, f, Partition::coarsest(5)).pass);
  CHECK(osp_implements(fig.arena, fig.tsp, f, Partition(5, {{1, 2, 3}, {4, 5}})).pass);
}

TEST_CASE("staged-game harness examples") {
  const Figure1 fig = figure1_game();
  const Domain d5 = Domain::two_alternative(5);
  CHECK(theorem1_property(fig.arena, kStar, fig.tsp, rule_from_committee(kEx1, d5)).pass);

  const OrderedPartition s_o(4, {{1, 2}, {3, 4}});
  const Arena g = build_quota_game(s_o, QuotaVector{1, 1});
  const Domain d4 = Domain::two_alternative(4);
  const auto c = generate_quota_committee(s_o, QuotaVector{1, 1});
  CHECK(theorem1_property(g, s_o.underlying(), truth_telling_profile(g, d4),
                          rule_from_committee(c, d4)).pass);

  CHECK(code_of([&] {
          (void)theorem1_property(fig.arena, Partition::coarsest(5), fig.tsp,
                                  rule_from_committee(kEx1, d5));
        }) == ErrorCode::kHypothesisNotMet);
}

TEST_CASE("dominance checks agree with literal enumeration on random arenas") {
  Rng rng(2026);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    const Arena a = gen::random_arena(rng, n, 12);
    const Partition s = random_partition(rng, n);
    for (AgentId i = 1; i <= n; ++i) {
      for (const Strategy& sigma : enumerate_strategies(a, i, kDefaultCap)) {
        for (const Preference& r : test_prefs()) {
          const Verdict v = is_obviously_dominant(a, s, i, r, sigma);
          CHECK(v.pass == oracle::obviously_dominant(a, s, i, r, sigma));
          CHECK(is_weakly_dominant(a, i, r, sigma) == oracle::weakly_dominant(a, i, r, sigma));
          if (!v.pass) CHECK(replay(a, s, std::get<DominanceWitness>(v.witness)));
        }
      }
    }
  }
}

TEST_CASE("obvious dominance survives coarsening on random arenas") {
  Rng rng(7);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 4)(rng);
    const Arena a = gen::random_arena(rng, n, 12);
    const Partition s = random_partition(rng, n);
    const auto coarser = coarsenings(s);
    for (AgentId i = 1; i <= n; ++i) {
      for (const Strategy& sigma : enumerate_strategies(a, i, kDefaultCap)) {
        for (const Preference& r : test_prefs()) {
          if (!is_obviously_dominant(a, s, i, r, sigma).pass) continue;
          for (const Partition& t : coarser) {
            CHECK(is_obviously_dominant(a, t, i, r, sigma).pass);
          }
        }
      }
    }
  }
}

TEST_CASE("option sets are non-empty subsets of the alternatives") {
  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 3)(rng);
    const Arena a = gen::random_arena(rng, n, 10);
    const Partition s = random_partition(rng, n);
    for (AgentId i = 1; i <= n; ++i) {
      const auto mine = enumerate_strategies(a, i, kDefaultCap);
      PartialProfile block;
      for (AgentId j : s.block_of(i).members()) {
        if (j != i) block.push_back(enumerate_strategies(a, j, kDefaultCap).front());
      }
      block.push_back(mine.front());
      for (std::size_t k = 1; k < mine.size(); ++k) {
        for (const auto& dp : earliest_departures(a, block, i, mine[k])) {
          CHECK_FALSE(dp.compatible_nodes.empty());
          const OptionSets os = option_sets(a, block, mine[k], dp);
          CHECK_FALSE(os.o.empty());
          CHECK_FALSE(os.o_prime.empty());
          for (const auto& x : os.o) CHECK((x == kX || x == kY));
          for (const auto& x : os.o_prime) CHECK((x == kX || x == kY));
        }
      }
    }
  }
}

TEST_CASE("coarsest-partition obvious dominance is weak dominance") {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    const Arena a = gen::random_arena(rng, n, 12);
    for (AgentId i = 1; i <= n; ++i) {
      for (const Strategy& sigma : enumerate_strategies(a, i, kDefaultCap)) {
        for (const Preference& r : test_prefs()) {
          CHECK(is_obviously_dominant(a, Partition::coarsest(n), i, r, sigma).pass ==
                is_weakly_dominant(a, i, r, sigma));
        }
      }
    }
  }
}
