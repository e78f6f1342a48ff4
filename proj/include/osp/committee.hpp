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

// Committees (monotone families of winning coalitions) and two-alternative
// social choice functions.

#ifndef OSP_COMMITTEE_HPP_
#define OSP_COMMITTEE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "osp/core.hpp"
#include "osp/verdict.hpp"

namespace osp {

// Stored by its antichain of minimal winning coalitions, sorted. The constant
// rule electing x is {{}}; the one electing y has no winning coalition.
class Committee {
 public:
  // Throws NotAntichain if one member contains another and ConstantRule if
  // the family is trivial.
  Committee(int n, std::vector<Coalition> minimal);
  Committee(int n, std::initializer_list<std::initializer_list<AgentId>> minimal);

  static Committee constant(int n, const Alternative& winner);

  int n() const { return n_; }
  const std::vector<Coalition>& minimal() const { return minimal_; }
  bool is_constant() const;
  // The alternative a constant rule always elects.
  std::optional<Alternative> constant_value() const;
  bool is_winning(Coalition t) const;
  std::string to_string() const;

  friend bool operator==(const Committee&, const Committee&) = default;

 private:
  Committee() = default;
  int n_ = 0;
  std::vector<Coalition> minimal_;
};

// The inclusion-minimal members of `family`.
Committee minimalize(int n, std::vector<Coalition> family);
// True iff no member contains another.
bool is_antichain(const std::vector<Coalition>& family);

// Committee for y: the coalitions meeting every winning coalition for x.
Committee dual(const Committee& c);
Coalition dummies(const Committee& c);

Alternative emvr_evaluate(const Committee& c, Coalition x_supporters);
Alternative emvr_evaluate(const Committee& c, const Profile& p);

// Membership depends only on the per-block counts, and nobody is a dummy.
bool is_anonymous_rel(const Committee& c, const Partition& s);
std::optional<int> strong_anonymity_quota(const Committee& c);

// The 2^n strict profiles over {x, y}, indexed by the x-supporter mask.
class ScfTable {
 public:
  ScfTable(int n, std::vector<Alternative> outcomes);
  static ScfTable from_committee(const Committee& c);

  int n() const { return n_; }
  const Alternative& at(Coalition x_supporters) const {
    return outcomes_.at(x_supporters.bits());
  }
  const std::vector<Alternative>& outcomes() const { return outcomes_; }

  friend bool operator==(const ScfTable&, const ScfTable&) = default;

 private:
  int n_;
  std::vector<Alternative> outcomes_;
};

inline constexpr int kMaxTableAgents = 20;

Verdict is_sp(const ScfTable& f);

enum class ExtractStatus { kEmvr, kConstant, kNotEmvr };

struct ExtractResult {
  ExtractStatus status = ExtractStatus::kNotEmvr;
  // Present unless kNotEmvr.
  std::optional<Committee> committee;
};

ExtractResult extract_committee(const ScfTable& f);

}  // namespace osp

#endif  // OSP_COMMITTEE_HPP_
