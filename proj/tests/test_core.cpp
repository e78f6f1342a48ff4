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

#include <set>

#include "osp/core.hpp"
#include "osp/error.hpp"

using namespace osp;

namespace {

const std::vector<std::uint64_t> kBell = {1, 1, 2, 5, 15, 52, 203};

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("top of strict preferences") {
  CHECK(top(pref_x()) == kX);
  CHECK(top(pref_y()) == kY);
  CHECK(top(Preference({{kX}})) == kX);
  const Preference tie({{kX, kY}});
  CHECK(code_of([&] { (void)tie.top(); }) == ErrorCode::kAmbiguousTop);
}

TEST_CASE("prefers and its strict part") {
  CHECK(prefers(pref_x(), kX, kY));
  CHECK_FALSE(pref_x().prefers(kY, kX));
  CHECK(pref_x().strictly_prefers(kX, kY));
  CHECK_FALSE(pref_x().strictly_prefers(kX, kX));
  const Preference tie({{kX, kY}});
  CHECK(tie.prefers(kY, kX));
  CHECK(tie.prefers(kX, kY));
  CHECK(code_of([&] { (void)pref_x().prefers("z", kX); }) == ErrorCode::kUnknownAlternative);
}

TEST_CASE("preferences are complete and transitive on up to four alternatives") {
  const std::vector<Alternative> alts = {"a", "b", "c", "d"};
  // Every weak order as a tier assignment of each alternative.
  for (int m = 1; m <= 4; ++m) {
    std::vector<int> tier(m, 0);
    while (true) {
      std::vector<std::vector<Alternative>> tiers(m);
      for (int a = 0; a < m; ++a) tiers[tier[a]].push_back(alts[a]);
      std::erase_if(tiers, [](const auto& t) { return t.empty(); });
      const Preference r(tiers);
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          CHECK((r.prefers(alts[a], alts[b]) || r.prefers(alts[b], alts[a])));
          for (int c = 0; c < m; ++c) {
            if (r.prefers(alts[a], alts[b]) && r.prefers(alts[b], alts[c])) {
              CHECK(r.prefers(alts[a], alts[c]));
            }
          }
        }
      }
      int k = 0;
      for (; k < m; ++k) {
        if (++tier[k] < m) break;
        tier[k] = 0;
      }
      if (k == m) break;
    }
  }
}

TEST_CASE("preference formatting and ordering") {
  CHECK(pref_x().to_string() == "x>y");
  CHECK(Preference({{kY, kX}}).to_string() == "x~y");
  CHECK(pref_x().is_strict());
  CHECK(pref_x() != pref_y());
}

TEST_CASE("coalition set operations") {
  const Coalition a{1, 2, 4};
  const Coalition b{2, 3};
  CHECK(a.size() == 3);
  CHECK((a | b) == Coalition{1, 2, 3, 4});
  CHECK((a & b) == Coalition{2});
  CHECK((a - b) == Coalition{1, 4});
  CHECK(Coalition{2}.is_subset_of(a));
  CHECK(a.intersects(b));
  CHECK(a.min() == 1);
  CHECK(a.max() == 4);
  CHECK(a.to_string() == "{1,2,4}");
  CHECK(Coalition::range(2, 4) == Coalition{2, 3, 4});
  CHECK(Coalition::all(3) == Coalition{1, 2, 3});
  CHECK(Coalition{1, 2} < Coalition{1, 3});
  CHECK(Coalition{1, 2, 3} < Coalition{1, 3});
  CHECK(Coalition::all(64).size() == 64);
}

TEST_CASE("agent count bounds") {
  CHECK(code_of([] { check_agent_count(0); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { check_agent_count(65); }) == ErrorCode::kInvalidArgument);
  check_agent_count(64);
}

TEST_CASE("partition validation and canonical order") {
  const Partition s(5, {{4, 5}, {3}, {1, 2}});
  CHECK(s.block(0) == Coalition{1, 2});
  CHECK(s.block(2) == Coalition{4, 5});
  CHECK(s.block_of(5) == Coalition{4, 5});
  CHECK(s.block_index_of(3) == 1);
  CHECK(s.to_string() == "{{1,2},{3},{4,5}}");
  CHECK(code_of([] { Partition(3, {{1, 2}, {2, 3}}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { Partition(3, {{1, 2}}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { Partition(3, {{1, 2, 3}, {}}); }) == ErrorCode::kInvalidArgument);
  CHECK(Partition::finest(3).size() == 3);
  CHECK(Partition::coarsest(3).size() == 1);
}

TEST_CASE("is_coarser examples") {
  const Partition star(5, {{1, 2}, {3}, {4, 5}});
  CHECK(is_coarser(Partition(5, {{1, 2, 3}, {4, 5}}), star));
  CHECK(is_coarser(star, star));
  CHECK_FALSE(is_coarser(Partition(3, {{1}, {2, 3}}), Partition(3, {{1, 2}, {3}})));
}

TEST_CASE("all_partitions counts are Bell numbers") {
  for (int n = 1; n <= 6; ++n) {
    const auto ps = all_partitions(n);
    CHECK(ps.size() == kBell[n]);
    std::set<std::string> seen;
    for (const auto& p : ps) seen.insert(p.to_string());
    CHECK(seen.size() == ps.size());
  }
}

TEST_CASE("is_coarser is a partial order on partitions of five agents") {
  const auto ps = all_partitions(5);
  for (const auto& a : ps) {
    CHECK(is_coarser(a, a));
    for (const auto& b : ps) {
      if (is_coarser(a, b) && is_coarser(b, a)) CHECK(a == b);
      for (const auto& c : ps) {
        if (is_coarser(a, b) && is_coarser(b, c)) CHECK(is_coarser(a, c));
      }
    }
  }
}

TEST_CASE("coarsenings enumerate each coarser partition once") {
  CHECK(coarsenings(Partition::finest(2)).size() == 2);
  CHECK(coarsenings(Partition::finest(3)).size() == 5);
  CHECK(coarsenings(Partition::coarsest(4)).size() == 1);
  for (int n = 1; n <= 6; ++n) {
    for (const auto& s : all_partitions(n)) {
      if (s.size() > 5) continue;
      const auto cs = coarsenings(s);
      CHECK(cs.size() == kBell[s.size()]);
      CHECK(cs.front() == s);
      CHECK(cs.back() == Partition::coarsest(n));
      std::size_t expected = 0;
      for (const auto& t : all_partitions(n)) expected += is_coarser(t, s) ? 1 : 0;
      CHECK(cs.size() == expected);
      for (const auto& t : cs) CHECK(is_coarser(t, s));
    }
  }
}

TEST_CASE("ordered partitions and quota compatibility") {
  const OrderedPartition s_o(10, {{1, 2, 3}, {4, 5, 6, 7, 8}, {9, 10}});
  CHECK(s_o.size() == 3);
  CHECK(s_o[1] == Coalition::range(4, 8));
  CHECK(s_o.underlying() == Partition(10, {{1, 2, 3}, {4, 5, 6, 7, 8}, {9, 10}}));
  CHECK(is_compatible(s_o, QuotaVector{2, 5, 0}));
  CHECK(is_compatible(s_o, QuotaVector{3, 5, 1}));
  CHECK_FALSE(is_compatible(s_o, QuotaVector{2, 5, 2}));
  CHECK_FALSE(is_compatible(s_o, QuotaVector{4, 0, 0}));
  CHECK_FALSE(is_compatible(s_o, QuotaVector{2, 5}));
  CHECK(code_of([&] { require_compatible(s_o, QuotaVector{2, 5, 2}); }) ==
        ErrorCode::kIncompatibleQuotas);
  CHECK(code_of([] { QuotaVector{-1}; }) == ErrorCode::kInvalidArgument);
  CHECK(QuotaVector{2, 5, 0}.to_string() == "(2,5,0)");
}
