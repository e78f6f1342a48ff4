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

// Ground types: agents, alternatives, preferences, coalitions and partitions.

#ifndef OSP_CORE_HPP_
#define OSP_CORE_HPP_

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "osp/error.hpp"

namespace osp {

// Agents are the dense indices 1..n.
using AgentId = int;
inline constexpr int kMaxAgents = 64;

void check_agent_count(int n);

struct Alternative {
  std::string label;

  Alternative() = default;
  Alternative(std::string l) : label(std::move(l)) {}  // NOLINT
  Alternative(const char* l) : label(l) {}             // NOLINT

  friend auto operator<=>(const Alternative&, const Alternative&) = default;
  friend bool operator==(const Alternative&, const Alternative&) = default;
};

inline const Alternative kX{"x"};
inline const Alternative kY{"y"};

// A weak preference stored as tiers, best tier first.
class Preference {
 public:
  explicit Preference(std::vector<std::vector<Alternative>> tiers);

  // x P y P z ... from a best-first list.
  static Preference strict(const std::vector<Alternative>& best_first);

  const std::vector<std::vector<Alternative>>& tiers() const { return tiers_; }
  std::vector<Alternative> alternatives() const;
  bool is_strict() const;

  // Tier index of `a`; 0 is the most preferred tier.
  int rank(const Alternative& a) const;
  bool contains(const Alternative& a) const;

  Alternative top() const;
  // a R b
  bool prefers(const Alternative& a, const Alternative& b) const;
  // a P b
  bool strictly_prefers(const Alternative& a, const Alternative& b) const;

  // "x>y", "x~y>z"
  std::string to_string() const;

  friend auto operator<=>(const Preference&, const Preference&) = default;
  friend bool operator==(const Preference&, const Preference&) = default;

 private:
  std::vector<std::vector<Alternative>> tiers_;
};

// x P^x y and y P^y x.
const Preference& pref_x();
const Preference& pref_y();

Alternative top(const Preference& pref);
bool prefers(const Preference& pref, const Alternative& a,
             const Alternative& b);

class Profile {
 public:
  explicit Profile(std::vector<Preference> prefs);

  int n() const { return static_cast<int>(prefs_.size()); }
  const Preference& operator[](AgentId i) const { return prefs_.at(i - 1); }
  const std::vector<Preference>& preferences() const { return prefs_; }

 private:
  std::vector<Preference> prefs_;
};

// A set of agents as a 64-bit mask; agent i occupies bit i-1.
class Coalition {
 public:
  constexpr Coalition() = default;
  Coalition(std::initializer_list<AgentId> members);
  explicit Coalition(const std::vector<AgentId>& members);

  static constexpr Coalition from_bits(std::uint64_t bits) {
    Coalition c;
    c.bits_ = bits;
    return c;
  }
  // {first, ..., last}
  static Coalition range(AgentId first, AgentId last);
  static Coalition all(int n);

  constexpr std::uint64_t bits() const { return bits_; }
  bool contains(AgentId i) const;
  void insert(AgentId i);
  void erase(AgentId i);
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool is_subset_of(Coalition other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  bool intersects(Coalition other) const { return (bits_ & other.bits_) != 0; }
  AgentId min() const;
  AgentId max() const;
  std::vector<AgentId> members() const;
  std::string to_string() const;

  friend constexpr Coalition operator|(Coalition a, Coalition b) {
    return from_bits(a.bits_ | b.bits_);
  }
  friend constexpr Coalition operator&(Coalition a, Coalition b) {
    return from_bits(a.bits_ & b.bits_);
  }
  friend constexpr Coalition operator-(Coalition a, Coalition b) {
    return from_bits(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(Coalition a, Coalition b) {
    return a.bits_ == b.bits_;
  }
  // Lexicographic on the sorted member lists.
  friend std::strong_ordering operator<=>(Coalition a, Coalition b);

 private:
  std::uint64_t bits_ = 0;
};

// Unordered partition of {1..n}; blocks are kept sorted by minimum member.
class Partition {
 public:
  Partition(int n, std::vector<Coalition> blocks);
  Partition(int n, std::initializer_list<std::initializer_list<AgentId>> blocks);

  static Partition finest(int n);
  static Partition coarsest(int n);

  int n() const { return n_; }
  int size() const { return static_cast<int>(blocks_.size()); }
  const std::vector<Coalition>& blocks() const { return blocks_; }
  const Coalition& block(int k) const { return blocks_.at(k); }
  // The block S^i containing agent i.
  const Coalition& block_of(AgentId i) const;
  int block_index_of(AgentId i) const;
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  int n_;
  std::vector<Coalition> blocks_;
};

// True iff every block of `fine` lies inside some block of `coarse`.
bool is_coarser(const Partition& coarse, const Partition& fine);

// Every partition coarser than `fine`, each once, `fine` first and {N} last.
std::vector<Partition> coarsenings(const Partition& fine);
void for_each_coarsening(const Partition& fine,
                         const std::function<void(const Partition&)>& visit);

// All set partitions of {1..n} (Bell(n) of them) in restricted-growth order.
std::vector<Partition> all_partitions(int n);

class OrderedPartition {
 public:
  OrderedPartition(int n, std::vector<Coalition> blocks);
  OrderedPartition(int n,
                   std::initializer_list<std::initializer_list<AgentId>> blocks);
  OrderedPartition(const Partition& p, const std::vector<int>& order);

  int n() const { return n_; }
  int size() const { return static_cast<int>(blocks_.size()); }
  const std::vector<Coalition>& blocks() const { return blocks_; }
  const Coalition& operator[](int k) const { return blocks_.at(k); }
  Partition underlying() const { return Partition(n_, blocks_); }
  std::string to_string() const;

  friend bool operator==(const OrderedPartition&,
                         const OrderedPartition&) = default;

 private:
  int n_;
  std::vector<Coalition> blocks_;
};

class QuotaVector {
 public:
  QuotaVector() = default;
  explicit QuotaVector(std::vector<int> q);
  QuotaVector(std::initializer_list<int> q) : QuotaVector(std::vector<int>(q)) {}

  int size() const { return static_cast<int>(q_.size()); }
  int operator[](int k) const { return q_.at(k); }
  const std::vector<int>& values() const { return q_; }
  std::string to_string() const;

  friend bool operator==(const QuotaVector&, const QuotaVector&) = default;

 private:
  std::vector<int> q_;
};

// q_k <= |S_k| for k < K and q_K < |S_K|.
bool is_compatible(const OrderedPartition& order, const QuotaVector& q);
void require_compatible(const OrderedPartition& order, const QuotaVector& q);

}  // namespace osp

#endif  // OSP_CORE_HPP_
