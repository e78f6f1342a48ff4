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

// Which anonymous two-alternative committees are obviously strategy-proof
// relative to a partition, and the quota games that witness it.

#ifndef OSP_CHARACTERIZE_HPP_
#define OSP_CHARACTERIZE_HPP_

#include <optional>
#include <vector>

#include "osp/committee.hpp"
#include "osp/core.hpp"
#include "osp/game.hpp"
#include "osp/verdict.hpp"
#include "osp/verify.hpp"

namespace osp {

// Minimal winning coalitions T_1 u ... u T_k u {i_k} with |T_t| = q_t,
// T_t inside S_t, and i_k in S_k \ T_k.
Committee generate_quota_committee(const OrderedPartition& s_o,
                                   const QuotaVector& q);

struct QuotaDecision {
  OrderedPartition ordering;
  QuotaVector quotas;
};

inline constexpr int kMaxBlocks = 10;

// Requires is_anonymous_rel(c, s). Returns the first ordering (in
// lexicographic order of block-index permutations) and quota vector whose
// generated committee equals c.
std::optional<QuotaDecision> decide_osp_anonymous(const Committee& c,
                                                  const Partition& s,
                                                  int jobs = 1);

// Same search restricted to one ordering; `derived_only` skips the grid.
std::optional<QuotaVector> quotas_for_ordering(const Committee& c,
                                               const OrderedPartition& s_o,
                                               bool derived_only = false);
// The quota vector read off a minimal coalition meeting the last block, if
// it is compatible.
std::optional<QuotaVector> derived_quotas(const Committee& c,
                                          const OrderedPartition& s_o);

// Requires a strongly anonymous committee.
bool decide_osp_strong(const Committee& c, const Partition& s);

struct Lemma2Result {
  bool equal_counts = true;   // condition (i)
  bool completion = true;     // condition (ii)
  explicit operator bool() const { return equal_counts && completion; }
};

// Conditions (i) and (ii) for the last block of `prefix`.
Lemma2Result lemma2_conditions(const Committee& c,
                               const std::vector<Coalition>& prefix);

struct Certificate {
  OrderedPartition ordering;
  QuotaVector quotas;
  Arena arena;
  Verdict report;
};

// Throws NotOsp when no quota game exists.
Certificate certify(const Committee& c, const Partition& s,
                    const VerifyOptions& opts = {});

}  // namespace osp

#endif  // OSP_CHARACTERIZE_HPP_
