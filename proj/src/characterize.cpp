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

#include "osp/characterize.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

namespace osp {

namespace {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

// All r-element subsets of `set`, in lexicographic order of member lists.
std::vector<Coalition> subsets_of_size(Coalition set, int r) {
  const std::vector<AgentId> members = set.members();
  const int m = static_cast<int>(members.size());
  std::vector<Coalition> out;
  if (r < 0 || r > m) return out;
  std::vector<int> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    Coalition c;
    for (int k : idx) c.insert(members[k]);
    out.push_back(c);
    int j = r - 1;
    while (j >= 0 && idx[j] == m - r + j) --j;
    if (j < 0) break;
    ++idx[j];
    for (int k = j + 1; k < r; ++k) idx[k] = idx[k - 1] + 1;
  }
  return out;
}

// Size of the generated family, without building it.
std::uint64_t generated_size(const OrderedPartition& s_o, const QuotaVector& q) {
  std::uint64_t total = 0;
  std::uint64_t prefix = 1;
  for (int k = 0; k < s_o.size(); ++k) {
    const int size = s_o[k].size();
    if (q[k] < size) total += prefix * binomial(size, q[k] + 1);
    prefix *= binomial(size, q[k]);
  }
  return total;
}

std::vector<Coalition> generate_family(const OrderedPartition& s_o,
                                       const QuotaVector& q) {
  std::vector<Coalition> out;
  // Unions T_1 u ... u T_{k-1} of the earlier levels.
  std::vector<Coalition> prefixes{Coalition{}};
  for (int k = 0; k < s_o.size(); ++k) {
    const int size = s_o[k].size();
    // T_k u {i_k} ranges over the (q_k + 1)-subsets of S_k.
    if (q[k] < size) {
      const auto tops = subsets_of_size(s_o[k], q[k] + 1);
      for (Coalition p : prefixes) {
        for (Coalition t : tops) out.push_back(p | t);
      }
    }
    std::vector<Coalition> next;
    const auto parts = subsets_of_size(s_o[k], q[k]);
    for (Coalition p : prefixes) {
      for (Coalition t : parts) next.push_back(p | t);
    }
    prefixes = std::move(next);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool matches(const Committee& c, const OrderedPartition& s_o,
             const QuotaVector& q) {
  if (generated_size(s_o, q) != c.minimal().size()) return false;
  return generate_family(s_o, q) == c.minimal();
}

void require_anonymous(const Committee& c, const Partition& s) {
  if (c.is_constant()) {
    throw Error(ErrorCode::kConstantRule, "committee is constant");
  }
  if (!is_anonymous_rel(c, s)) {
    throw Error(ErrorCode::kPreconditionViolated,
                "committee " + c.to_string() + " is not anonymous relative to " +
                    s.to_string());
  }
}

}  // namespace

Committee generate_quota_committee(const OrderedPartition& s_o,
                                   const QuotaVector& q) {
  require_compatible(s_o, q);
  std::vector<Coalition> family = generate_family(s_o, q);
  if (!is_antichain(family)) {
    throw Error(ErrorCode::kNotAntichain,
                "generated family for " + s_o.to_string() + " " + q.to_string() +
                    " is not an antichain");
  }
  return Committee(s_o.n(), std::move(family));
}

std::optional<QuotaVector> derived_quotas(const Committee& c,
                                          const OrderedPartition& s_o) {
  const Coalition last = s_o[s_o.size() - 1];
  for (const auto& m : c.minimal()) {
    if (!m.intersects(last)) continue;
    std::vector<int> q;
    for (int t = 0; t < s_o.size(); ++t) q.push_back((m & s_o[t]).size());
    q.back() -= 1;
    QuotaVector quotas(q);
    if (is_compatible(s_o, quotas)) return quotas;
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<QuotaVector> quotas_for_ordering(const Committee& c,
                                               const OrderedPartition& s_o,
                                               bool derived_only) {
  if (s_o.n() != c.n()) {
    throw Error(ErrorCode::kInvalidArgument, "ordering size differs from committee");
  }
  if (auto q = derived_quotas(c, s_o); q && matches(c, s_o, *q)) return q;
  if (derived_only) return std::nullopt;
  const int k = s_o.size();
  std::vector<int> q(k, 0);
  while (true) {
    QuotaVector quotas(q);
    if (matches(c, s_o, quotas)) return quotas;
    int j = k - 1;
    for (; j >= 0; --j) {
      const int limit = j == k - 1 ? s_o[j].size() - 1 : s_o[j].size();
      if (++q[j] <= limit) break;
      q[j] = 0;
    }
    if (j < 0) break;
  }
  return std::nullopt;
}

std::optional<QuotaDecision> decide_osp_anonymous(const Committee& c,
                                                  const Partition& s, int jobs) {
  if (c.n() != s.n()) {
    throw Error(ErrorCode::kInvalidArgument, "committee and partition sizes differ");
  }
  require_anonymous(c, s);
  const int k = s.size();
  if (k > kMaxBlocks) {
    throw Error(ErrorCode::kSearchSpaceExceeded,
                "ordering search supports at most " + std::to_string(kMaxBlocks) +
                    " blocks");
  }
  std::vector<std::vector<int>> orders;
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    orders.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<std::optional<QuotaVector>> found(orders.size());
  std::atomic<std::size_t> best{orders.size()};
  auto run = [&](std::size_t idx) {
    if (idx > best.load()) return;
    found[idx] = quotas_for_ordering(c, OrderedPartition(s, orders[idx]));
    if (found[idx]) {
      std::size_t cur = best.load();
      while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
      }
    }
  };
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(orders.size())));
  if (jobs == 1) {
    for (std::size_t idx = 0; idx < orders.size() && best.load() == orders.size();
         ++idx) {
      run(idx);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) {
      pool.emplace_back([&] {
        for (std::size_t idx = next++; idx < orders.size(); idx = next++) run(idx);
      });
    }
    for (auto& t : pool) t.join();
  }
  const std::size_t b = best.load();
  if (b == orders.size()) return std::nullopt;
  return QuotaDecision{OrderedPartition(s, orders[b]), *found[b]};
}

bool decide_osp_strong(const Committee& c, const Partition& s) {
  if (c.n() != s.n()) {
    throw Error(ErrorCode::kInvalidArgument, "committee and partition sizes differ");
  }
  const auto q = strong_anonymity_quota(c);
  if (!q) {
    throw Error(ErrorCode::kPreconditionViolated,
                "committee " + c.to_string() + " is not strongly anonymous");
  }
  const int n = c.n();
  const int k = s.size();
  if (*q == 1 || *q == n || k == 1) return true;
  const int first = s.block(0).size();
  return k == 2 && (first == 1 || first == n - 1);
}

Lemma2Result lemma2_conditions(const Committee& c,
                               const std::vector<Coalition>& prefix) {
  Lemma2Result r;
  if (prefix.empty()) return r;
  Coalition upto;
  for (const auto& b : prefix) upto = upto | b;
  const Coalition last = prefix.back();
  std::optional<int> count;
  for (const auto& m : c.minimal()) {
    const Coalition inside = m & upto;
    if (c.is_winning(inside)) continue;
    const int here = (m & last).size();
    if (count && *count != here) r.equal_counts = false;
    count = count.value_or(here);
    for (AgentId i : (last - m).members()) {
      if (!c.is_winning(inside | Coalition{i})) r.completion = false;
    }
  }
  return r;
}

Certificate certify(const Committee& c, const Partition& s,
                    const VerifyOptions& opts) {
  const auto decision = decide_osp_anonymous(c, s, opts.jobs);
  if (!decision) {
    throw Error(ErrorCode::kNotOsp,
                "no ordering and quotas generate " + c.to_string() +
                    " relative to " + s.to_string());
  }
  Arena arena = build_quota_game(decision->ordering, decision->quotas);
  const Domain domain = Domain::two_alternative(c.n());
  const TypeStrategyProfile tsp = truth_telling_profile(arena, domain);
  Verdict report =
      osp_implements(arena, tsp, rule_from_committee(c, domain), s, opts);
  return {decision->ordering, decision->quotas, std::move(arena),
          std::move(report)};
}

}  // namespace osp
