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

#include "osp/core.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace osp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kAmbiguousTop: return "AmbiguousTop";
    case ErrorCode::kUnknownAlternative: return "UnknownAlternative";
    case ErrorCode::kConstantRule: return "ConstantRule";
    case ErrorCode::kNotEmvr: return "NotEmvr";
    case ErrorCode::kInvalidArena: return "InvalidArena";
    case ErrorCode::kIncompleteStrategy: return "IncompleteStrategy";
    case ErrorCode::kSearchSpaceExceeded: return "SearchSpaceExceeded";
    case ErrorCode::kIncompatibleQuotas: return "IncompatibleQuotas";
    case ErrorCode::kEmptyChoiceLabel: return "EmptyChoiceLabel";
    case ErrorCode::kIdenticalStrategies: return "IdenticalStrategies";
    case ErrorCode::kHypothesisNotMet: return "HypothesisNotMet";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kNotOsp: return "NotOsp";
    case ErrorCode::kNotAntichain: return "NotAntichain";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kGoldenMismatch: return "GoldenMismatch";
  }
  return "Unknown";
}

void check_agent_count(int n) {
  if (n < 1 || n > kMaxAgents) {
    throw Error(ErrorCode::kInvalidArgument,
                "agent count must lie in [1, 64], got " + std::to_string(n));
  }
}

// ---------------------------------------------------------------------------
// Preference

Preference::Preference(std::vector<std::vector<Alternative>> tiers)
    : tiers_(std::move(tiers)) {
  if (tiers_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "preference has no tiers");
  }
  std::set<Alternative> seen;
  for (auto& tier : tiers_) {
    if (tier.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "preference has an empty tier");
    }
    std::sort(tier.begin(), tier.end());
    for (const auto& a : tier) {
      if (!seen.insert(a).second) {
        throw Error(ErrorCode::kInvalidArgument,
                    "alternative '" + a.label + "' appears twice");
      }
    }
  }
}

Preference Preference::strict(const std::vector<Alternative>& best_first) {
  std::vector<std::vector<Alternative>> tiers;
  tiers.reserve(best_first.size());
  for (const auto& a : best_first) tiers.push_back({a});
  return Preference(std::move(tiers));
}

std::vector<Alternative> Preference::alternatives() const {
  std::vector<Alternative> out;
  for (const auto& tier : tiers_) out.insert(out.end(), tier.begin(), tier.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool Preference::is_strict() const {
  return std::all_of(tiers_.begin(), tiers_.end(),
                     [](const auto& t) { return t.size() == 1; });
}

int Preference::rank(const Alternative& a) const {
  for (std::size_t t = 0; t < tiers_.size(); ++t) {
    if (std::binary_search(tiers_[t].begin(), tiers_[t].end(), a)) {
      return static_cast<int>(t);
    }
  }
  throw Error(ErrorCode::kUnknownAlternative,
              "'" + a.label + "' is not ranked by " + to_string());
}

bool Preference::contains(const Alternative& a) const {
  return std::any_of(tiers_.begin(), tiers_.end(), [&](const auto& t) {
    return std::binary_search(t.begin(), t.end(), a);
  });
}

Alternative Preference::top() const {
  if (tiers_.front().size() != 1) {
    throw Error(ErrorCode::kAmbiguousTop,
                "top tier of " + to_string() + " is not a singleton");
  }
  return tiers_.front().front();
}

bool Preference::prefers(const Alternative& a, const Alternative& b) const {
  return rank(a) <= rank(b);
}

bool Preference::strictly_prefers(const Alternative& a,
                                  const Alternative& b) const {
  return rank(a) < rank(b);
}

std::string Preference::to_string() const {
  std::string out;
  for (std::size_t t = 0; t < tiers_.size(); ++t) {
    if (t > 0) out += '>';
    for (std::size_t j = 0; j < tiers_[t].size(); ++j) {
      if (j > 0) out += '~';
      out += tiers_[t][j].label;
    }
  }
  return out;
}

const Preference& pref_x() {
  static const Preference p = Preference::strict({kX, kY});
  return p;
}

const Preference& pref_y() {
  static const Preference p = Preference::strict({kY, kX});
  return p;
}

Alternative top(const Preference& pref) { return pref.top(); }

bool prefers(const Preference& pref, const Alternative& a,
             const Alternative& b) {
  return pref.prefers(a, b);
}

Profile::Profile(std::vector<Preference> prefs) : prefs_(std::move(prefs)) {
  check_agent_count(n());
  const auto alts = prefs_.front().alternatives();
  for (const auto& p : prefs_) {
    if (p.alternatives() != alts) {
      throw Error(ErrorCode::kInvalidArgument,
                  "profile preferences range over different alternatives");
    }
  }
}

// ---------------------------------------------------------------------------
// Coalition

namespace {

void check_agent_id(AgentId i) {
  if (i < 1 || i > kMaxAgents) {
    throw Error(ErrorCode::kInvalidArgument,
                "agent index out of range: " + std::to_string(i));
  }
}

}  // namespace

Coalition::Coalition(std::initializer_list<AgentId> members) {
  for (AgentId i : members) insert(i);
}

Coalition::Coalition(const std::vector<AgentId>& members) {
  for (AgentId i : members) insert(i);
}

Coalition Coalition::range(AgentId first, AgentId last) {
  Coalition c;
  for (AgentId i = first; i <= last; ++i) c.insert(i);
  return c;
}

Coalition Coalition::all(int n) {
  check_agent_count(n);
  return n == 64 ? from_bits(~std::uint64_t{0})
                 : from_bits((std::uint64_t{1} << n) - 1);
}

bool Coalition::contains(AgentId i) const {
  if (i < 1 || i > kMaxAgents) return false;
  return (bits_ >> (i - 1)) & 1U;
}

void Coalition::insert(AgentId i) {
  check_agent_id(i);
  bits_ |= std::uint64_t{1} << (i - 1);
}

void Coalition::erase(AgentId i) {
  check_agent_id(i);
  bits_ &= ~(std::uint64_t{1} << (i - 1));
}

AgentId Coalition::min() const {
  if (empty()) throw Error(ErrorCode::kInvalidArgument, "min of empty coalition");
  return std::countr_zero(bits_) + 1;
}

AgentId Coalition::max() const {
  if (empty()) throw Error(ErrorCode::kInvalidArgument, "max of empty coalition");
  return 64 - std::countl_zero(bits_);
}

std::vector<AgentId> Coalition::members() const {
  std::vector<AgentId> out;
  out.reserve(size());
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(std::countr_zero(b) + 1);
  }
  return out;
}

std::string Coalition::to_string() const {
  std::string out = "{";
  bool first = true;
  for (AgentId i : members()) {
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

std::strong_ordering operator<=>(Coalition a, Coalition b) {
  // Walk both member lists in increasing order.
  std::uint64_t x = a.bits_;
  std::uint64_t y = b.bits_;
  while (x != 0 && y != 0) {
    const int ix = std::countr_zero(x);
    const int iy = std::countr_zero(y);
    if (ix != iy) return ix <=> iy;
    x &= x - 1;
    y &= y - 1;
  }
  if (x == 0 && y == 0) return std::strong_ordering::equal;
  return x == 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

// ---------------------------------------------------------------------------
// Partitions

namespace {

std::string blocks_to_string(const std::vector<Coalition>& blocks) {
  std::string out = "{";
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (k > 0) out += ',';
    out += blocks[k].to_string();
  }
  return out + "}";
}

void check_cover(int n, const std::vector<Coalition>& blocks) {
  check_agent_count(n);
  if (blocks.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "partition has no blocks");
  }
  Coalition seen;
  for (const auto& b : blocks) {
    if (b.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "partition has an empty block");
    }
    if (b.intersects(seen)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "partition blocks overlap: " + blocks_to_string(blocks));
    }
    seen = seen | b;
  }
  if (seen != Coalition::all(n)) {
    throw Error(ErrorCode::kInvalidArgument,
                "blocks do not cover 1.." + std::to_string(n) + ": " +
                    blocks_to_string(blocks));
  }
}

std::vector<Coalition> to_blocks(
    std::initializer_list<std::initializer_list<AgentId>> blocks) {
  std::vector<Coalition> out;
  for (const auto& b : blocks) out.emplace_back(b);
  return out;
}

}  // namespace

Partition::Partition(int n, std::vector<Coalition> blocks)
    : n_(n), blocks_(std::move(blocks)) {
  check_cover(n_, blocks_);
  std::sort(blocks_.begin(), blocks_.end(),
            [](Coalition a, Coalition b) { return a.min() < b.min(); });
}

Partition::Partition(
    int n, std::initializer_list<std::initializer_list<AgentId>> blocks)
    : Partition(n, to_blocks(blocks)) {}

Partition Partition::finest(int n) {
  check_agent_count(n);
  std::vector<Coalition> blocks;
  for (AgentId i = 1; i <= n; ++i) blocks.push_back(Coalition{i});
  return Partition(n, std::move(blocks));
}

Partition Partition::coarsest(int n) {
  return Partition(n, std::vector<Coalition>{Coalition::all(n)});
}

const Coalition& Partition::block_of(AgentId i) const {
  return blocks_[block_index_of(i)];
}

int Partition::block_index_of(AgentId i) const {
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (blocks_[k].contains(i)) return static_cast<int>(k);
  }
  throw Error(ErrorCode::kInvalidArgument,
              "agent " + std::to_string(i) + " not in partition");
}

std::string Partition::to_string() const { return blocks_to_string(blocks_); }

bool is_coarser(const Partition& coarse, const Partition& fine) {
  if (coarse.n() != fine.n()) return false;
  return std::all_of(fine.blocks().begin(), fine.blocks().end(),
                     [&](Coalition b) {
                       return b.is_subset_of(coarse.block_of(b.min()));
                     });
}

namespace {

// Restricted growth strings: label[j] <= 1 + max(label[0..j-1]).
void for_each_rgs(int k, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> label(k, 0);
  std::function<void(int, int)> rec = [&](int pos, int max_label) {
    if (pos == k) {
      visit(label);
      return;
    }
    for (int v = 0; v <= max_label + 1; ++v) {
      label[pos] = v;
      rec(pos + 1, std::max(max_label, v));
    }
  };
  if (k == 0) return;
  label[0] = 0;
  rec(1, 0);
}

}  // namespace

void for_each_coarsening(const Partition& fine,
                         const std::function<void(const Partition&)>& visit) {
  const int k = fine.size();
  // Enumerate in reverse RGS order so the finest grouping comes first and the
  // single merged block last.
  std::vector<std::vector<int>> labels;
  for_each_rgs(k, [&](const std::vector<int>& l) { labels.push_back(l); });
  std::stable_sort(labels.begin(), labels.end(),
                   [](const auto& a, const auto& b) {
                     return *std::max_element(a.begin(), a.end()) >
                            *std::max_element(b.begin(), b.end());
                   });
  for (const auto& l : labels) {
    const int groups = *std::max_element(l.begin(), l.end()) + 1;
    std::vector<Coalition> merged(groups);
    for (int j = 0; j < k; ++j) merged[l[j]] = merged[l[j]] | fine.block(j);
    visit(Partition(fine.n(), std::move(merged)));
  }
}

std::vector<Partition> coarsenings(const Partition& fine) {
  std::vector<Partition> out;
  for_each_coarsening(fine, [&](const Partition& p) { out.push_back(p); });
  return out;
}

std::vector<Partition> all_partitions(int n) {
  check_agent_count(n);
  std::vector<Partition> out;
  for_each_rgs(n, [&](const std::vector<int>& l) {
    const int groups = *std::max_element(l.begin(), l.end()) + 1;
    std::vector<Coalition> blocks(groups);
    for (int j = 0; j < n; ++j) blocks[l[j]].insert(j + 1);
    out.emplace_back(n, std::move(blocks));
  });
  return out;
}

OrderedPartition::OrderedPartition(int n, std::vector<Coalition> blocks)
    : n_(n), blocks_(std::move(blocks)) {
  check_cover(n_, blocks_);
}

OrderedPartition::OrderedPartition(
    int n, std::initializer_list<std::initializer_list<AgentId>> blocks)
    : OrderedPartition(n, to_blocks(blocks)) {}

OrderedPartition::OrderedPartition(const Partition& p,
                                   const std::vector<int>& order)
    : n_(p.n()) {
  if (static_cast<int>(order.size()) != p.size()) {
    throw Error(ErrorCode::kInvalidArgument, "order length mismatch");
  }
  for (int k : order) blocks_.push_back(p.block(k));
  check_cover(n_, blocks_);
}

std::string OrderedPartition::to_string() const {
  std::string out = "(";
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (k > 0) out += ',';
    out += blocks_[k].to_string();
  }
  return out + ")";
}

QuotaVector::QuotaVector(std::vector<int> q) : q_(std::move(q)) {
  for (int v : q_) {
    if (v < 0) throw Error(ErrorCode::kInvalidArgument, "negative quota");
  }
}

std::string QuotaVector::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t k = 0; k < q_.size(); ++k) {
    if (k > 0) out << ',';
    out << q_[k];
  }
  out << ')';
  return out.str();
}

bool is_compatible(const OrderedPartition& order, const QuotaVector& q) {
  const int k = order.size();
  if (q.size() != k) return false;
  for (int t = 0; t + 1 < k; ++t) {
    if (q[t] > order[t].size()) return false;
  }
  return q[k - 1] < order[k - 1].size();
}

void require_compatible(const OrderedPartition& order, const QuotaVector& q) {
  if (!is_compatible(order, q)) {
    throw Error(ErrorCode::kIncompatibleQuotas,
                "quotas " + q.to_string() + " are not compatible with " +
                    order.to_string());
  }
}

}  // namespace osp
