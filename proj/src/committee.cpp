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

#include "osp/committee.hpp"

#include <algorithm>
#include <map>

namespace osp {

namespace {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

void sort_family(std::vector<Coalition>& family) {
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
}

void check_members(int n, const std::vector<Coalition>& family) {
  const Coalition all = Coalition::all(n);
  for (const auto& m : family) {
    if (!m.is_subset_of(all)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "coalition " + m.to_string() + " exceeds 1.." +
                      std::to_string(n));
    }
  }
}

void check_table_size(int n) {
  if (n < 1 || n > kMaxTableAgents) {
    throw Error(ErrorCode::kInvalidArgument,
                "tables support 1.." + std::to_string(kMaxTableAgents) +
                    " agents, got " + std::to_string(n));
  }
}

}  // namespace

bool is_antichain(const std::vector<Coalition>& family) {
  for (std::size_t a = 0; a < family.size(); ++a) {
    for (std::size_t b = 0; b < family.size(); ++b) {
      if (a != b && family[a].is_subset_of(family[b])) return false;
    }
  }
  return true;
}

Committee::Committee(int n, std::vector<Coalition> minimal)
    : n_(n), minimal_(std::move(minimal)) {
  check_agent_count(n_);
  check_members(n_, minimal_);
  if (minimal_.empty() ||
      std::any_of(minimal_.begin(), minimal_.end(),
                  [](Coalition m) { return m.empty(); })) {
    throw Error(ErrorCode::kConstantRule,
                "committee is trivial; use Committee::constant");
  }
  sort_family(minimal_);
  if (!is_antichain(minimal_)) {
    throw Error(ErrorCode::kNotAntichain,
                "minimal coalitions are not an antichain: " + to_string());
  }
}

Committee::Committee(
    int n, std::initializer_list<std::initializer_list<AgentId>> minimal)
    : Committee(n, [&] {
        std::vector<Coalition> out;
        for (const auto& m : minimal) out.emplace_back(m);
        return out;
      }()) {}

Committee Committee::constant(int n, const Alternative& winner) {
  check_agent_count(n);
  Committee c;
  c.n_ = n;
  if (winner == kX) {
    c.minimal_ = {Coalition{}};
  } else if (winner != kY) {
    throw Error(ErrorCode::kUnknownAlternative,
                "committees elect x or y, not '" + winner.label + "'");
  }
  return c;
}

bool Committee::is_constant() const {
  return minimal_.empty() || (minimal_.size() == 1 && minimal_[0].empty());
}

std::optional<Alternative> Committee::constant_value() const {
  if (minimal_.empty()) return kY;
  if (minimal_.size() == 1 && minimal_[0].empty()) return kX;
  return std::nullopt;
}

bool Committee::is_winning(Coalition t) const {
  return std::any_of(minimal_.begin(), minimal_.end(),
                     [t](Coalition m) { return m.is_subset_of(t); });
}

std::string Committee::to_string() const {
  std::string out = "{";
  for (std::size_t k = 0; k < minimal_.size(); ++k) {
    if (k > 0) out += ',';
    out += minimal_[k].to_string();
  }
  return out + "}";
}

Committee minimalize(int n, std::vector<Coalition> family) {
  if (family.empty() ||
      std::any_of(family.begin(), family.end(),
                  [](Coalition m) { return m.empty(); })) {
    throw Error(ErrorCode::kConstantRule,
                "family is empty or contains the empty coalition");
  }
  sort_family(family);
  std::vector<Coalition> out;
  for (const auto& m : family) {
    const bool has_smaller =
        std::any_of(family.begin(), family.end(), [&](Coalition o) {
          return o != m && o.is_subset_of(m);
        });
    if (!has_smaller) out.push_back(m);
  }
  return Committee(n, std::move(out));
}

Committee dual(const Committee& c) {
  if (auto v = c.constant_value()) {
    return Committee::constant(c.n(), *v == kX ? kY : kX);
  }
  check_table_size(c.n());
  const std::uint64_t count = std::uint64_t{1} << c.n();
  std::vector<Coalition> out;
  auto transversal = [&](Coalition t) {
    return std::all_of(c.minimal().begin(), c.minimal().end(),
                       [t](Coalition m) { return m.intersects(t); });
  };
  for (std::uint64_t bits = 1; bits < count; ++bits) {
    const Coalition t = Coalition::from_bits(bits);
    if (!transversal(t)) continue;
    bool minimal = true;
    for (AgentId i : t.members()) {
      if (transversal(t - Coalition{i})) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(t);
  }
  return Committee(c.n(), std::move(out));
}

Coalition dummies(const Committee& c) {
  Coalition used;
  for (const auto& m : c.minimal()) used = used | m;
  return Coalition::all(c.n()) - used;
}

Alternative emvr_evaluate(const Committee& c, Coalition x_supporters) {
  return c.is_winning(x_supporters) ? kX : kY;
}

Alternative emvr_evaluate(const Committee& c, const Profile& p) {
  if (p.n() != c.n()) {
    throw Error(ErrorCode::kInvalidArgument, "profile size differs from committee");
  }
  Coalition supporters;
  for (AgentId i = 1; i <= p.n(); ++i) {
    const Preference& pref = p[i];
    if (!pref.is_strict() || pref.alternatives() != std::vector<Alternative>{kX, kY}) {
      throw Error(ErrorCode::kInvalidArgument,
                  "agent " + std::to_string(i) + " needs a strict preference over {x,y}");
    }
    if (pref.top() == kX) supporters.insert(i);
  }
  return emvr_evaluate(c, supporters);
}

// Block-preserving permutations act transitively on the coalitions sharing a
// count vector, so the minimal family is invariant iff each count vector that
// occurs is realized by every coalition with that vector.
bool is_anonymous_rel(const Committee& c, const Partition& s) {
  if (c.n() != s.n()) {
    throw Error(ErrorCode::kInvalidArgument, "committee and partition sizes differ");
  }
  if (!dummies(c).empty()) return false;
  std::map<std::vector<int>, std::uint64_t> groups;
  for (const auto& m : c.minimal()) {
    std::vector<int> v;
    for (const auto& b : s.blocks()) v.push_back((m & b).size());
    ++groups[v];
  }
  for (const auto& [v, count] : groups) {
    std::uint64_t orbit = 1;
    for (int k = 0; k < s.size(); ++k) orbit *= binomial(s.block(k).size(), v[k]);
    if (orbit != count) return false;
  }
  return true;
}

std::optional<int> strong_anonymity_quota(const Committee& c) {
  if (c.is_constant()) return std::nullopt;
  const int q = c.minimal().front().size();
  for (const auto& m : c.minimal()) {
    if (m.size() != q) return std::nullopt;
  }
  if (c.minimal().size() != binomial(c.n(), q)) return std::nullopt;
  return q;
}

// ---------------------------------------------------------------------------
// Tables

ScfTable::ScfTable(int n, std::vector<Alternative> outcomes)
    : n_(n), outcomes_(std::move(outcomes)) {
  check_table_size(n_);
  if (outcomes_.size() != (std::size_t{1} << n_)) {
    throw Error(ErrorCode::kInvalidArgument,
                "table needs 2^" + std::to_string(n_) + " entries");
  }
  for (const auto& a : outcomes_) {
    if (a != kX && a != kY) {
      throw Error(ErrorCode::kUnknownAlternative,
                  "table entries must be x or y, got '" + a.label + "'");
    }
  }
}

ScfTable ScfTable::from_committee(const Committee& c) {
  check_table_size(c.n());
  std::vector<Alternative> out;
  const std::uint64_t count = std::uint64_t{1} << c.n();
  out.reserve(count);
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    out.push_back(emvr_evaluate(c, Coalition::from_bits(bits)));
  }
  return ScfTable(c.n(), std::move(out));
}

Verdict is_sp(const ScfTable& f) {
  Verdict v;
  const std::uint64_t count = std::uint64_t{1} << f.n();
  // Profiles in domain order: agent 1 varies slowest, P^x before P^y.
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Coalition t;
    for (AgentId i = 1; i <= f.n(); ++i) {
      if ((idx >> (f.n() - i) & 1) == 0) t.insert(i);
    }
    const Alternative& truthful = f.at(t);
    for (AgentId i = 1; i <= f.n(); ++i) {
      ++v.evaluations;
      const bool supports_x = t.contains(i);
      const Coalition lie = supports_x ? t - Coalition{i} : t | Coalition{i};
      const Alternative& manipulated = f.at(lie);
      const Alternative& wanted = supports_x ? kX : kY;
      if (truthful != wanted && manipulated == wanted) {
        ManipulationWitness w;
        w.agent = i;
        w.supporters = t;
        w.truthful = supports_x ? pref_x() : pref_y();
        w.misreport = supports_x ? pref_y() : pref_x();
        w.truthful_outcome = truthful;
        w.manipulated_outcome = manipulated;
        v.pass = false;
        v.witness = w;
        return v;
      }
    }
  }
  return v;
}

ExtractResult extract_committee(const ScfTable& f) {
  const std::uint64_t count = std::uint64_t{1} << f.n();
  std::vector<Coalition> winning;
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    const Coalition t = Coalition::from_bits(bits);
    if (f.at(t) != kX) continue;
    for (AgentId i = 1; i <= f.n(); ++i) {
      if (!t.contains(i) && f.at(t | Coalition{i}) != kX) return {};
    }
    winning.push_back(t);
  }
  if (winning.empty()) {
    return {ExtractStatus::kConstant, Committee::constant(f.n(), kY)};
  }
  if (winning.front().empty()) {
    return {ExtractStatus::kConstant, Committee::constant(f.n(), kX)};
  }
  return {ExtractStatus::kEmvr, minimalize(f.n(), std::move(winning))};
}

}  // namespace osp
