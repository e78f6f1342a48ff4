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

#include "osp/io.hpp"

#include <openssl/sha.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace osp {

namespace {

[[noreturn]] void parse_fail(const std::string& msg) {
  throw Error(ErrorCode::kParseError, msg);
}

void expect(bool ok, const std::string& msg) {
  if (!ok) parse_fail(msg);
}

// Library errors raised while decoding become parse errors.
template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    parse_fail(std::string(what) + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    parse_fail(std::string(what) + ": " + e.what());
  }
}

int agent_count(const std::vector<Coalition>& blocks) {
  int n = 0;
  for (const auto& b : blocks) n += b.size();
  return n;
}

std::vector<Coalition> blocks_from_json(const Json& j) {
  expect(j.is_array(), "partition must be an array of arrays");
  std::vector<Coalition> blocks;
  for (const auto& b : j) blocks.push_back(coalition_from_json(b));
  return blocks;
}

Json witness_to_json(const Arena* arena, const Witness& w) {
  return std::visit(
      [&](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, ManipulationWitness>) {
          return {{"kind", "manipulation"},
                  {"agent", x.agent},
                  {"supporters", to_json(x.supporters)},
                  {"truthful", to_json(x.truthful)},
                  {"misreport", to_json(x.misreport)},
                  {"truthfulOutcome", x.truthful_outcome.label},
                  {"manipulatedOutcome", x.manipulated_outcome.label}};
        } else if constexpr (std::is_same_v<T, InducementWitness>) {
          return {{"kind", "inducement"},
                  {"types", x.types},
                  {"expected", x.expected.label},
                  {"actual", x.actual.label}};
        } else {
          Json mates = Json::array();
          for (const auto& m : x.mates) mates.push_back(strategy_to_json(m, arena));
          return {{"kind", "dominance"},
                  {"agent", x.agent},
                  {"type", x.type},
                  {"preference", to_json(x.preference)},
                  {"strategy", strategy_to_json(x.strategy, arena)},
                  {"mates", mates},
                  {"deviation", strategy_to_json(x.deviation, arena)},
                  {"departure",
                   {{"infoSet", x.departure.info_set},
                    {"nodes", x.departure.compatible_nodes}}},
                  {"worse", x.worse.label},
                  {"better", x.better.label}};
        }
      },
      w);
}

}  // namespace

Json to_json(const Coalition& c) { return c.members(); }

Json to_json(const Partition& s) {
  Json out = Json::array();
  for (const auto& b : s.blocks()) out.push_back(to_json(b));
  return out;
}

Json to_json(const OrderedPartition& s) {
  Json out = Json::array();
  for (const auto& b : s.blocks()) out.push_back(to_json(b));
  return out;
}

Json to_json(const QuotaVector& q) { return q.values(); }

Json to_json(const Preference& p) {
  Json out = Json::array();
  for (const auto& tier : p.tiers()) {
    Json t = Json::array();
    for (const auto& a : tier) t.push_back(a.label);
    out.push_back(t);
  }
  return out;
}

Json to_json(const ChoiceLabel& c) {
  if (c.is_token()) return c.token();
  Json out = Json::array();
  for (const auto& p : c.preferences()) out.push_back(to_json(p));
  return out;
}

Json to_json(const Committee& c) {
  Json minimal = Json::array();
  for (const auto& m : c.minimal()) minimal.push_back(to_json(m));
  return {{"n", c.n()}, {"minimal", minimal}};
}

Json to_json(const ScfTable& f) {
  Json out = Json::object();
  const std::uint64_t count = std::uint64_t{1} << f.n();
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    const Coalition t = Coalition::from_bits(bits);
    out[supporters_key(t, f.n())] = f.at(t).label;
  }
  return out;
}

Json to_json(const Arena& arena) {
  Json alts = Json::array();
  for (const auto& a : arena.alternatives()) alts.push_back(a.label);
  Json nodes = Json::array();
  for (const auto& z : arena.nodes()) {
    Json node;
    node["id"] = z.id;
    node["owner"] = z.is_terminal() ? Json("terminal") : Json(z.owner);
    node["parent"] = z.parent == kNoNode ? Json(nullptr) : Json(z.parent);
    if (z.parent == kNoNode) {
      node["choice"] = nullptr;
    } else {
      const Node& p = arena.node(z.parent);
      node["choice"] = to_json(arena.info_set(p.info_set).choices.at(z.choice));
    }
    node["infoSet"] = z.is_terminal() ? Json(nullptr) : Json(z.info_set);
    if (z.is_terminal()) node["outcome"] = arena.alternatives().at(z.outcome).label;
    nodes.push_back(node);
  }
  Json sets = Json::array();
  for (const auto& is : arena.info_sets()) {
    Json choices = Json::array();
    for (const auto& c : is.choices) choices.push_back(to_json(c));
    sets.push_back({{"id", is.id},
                    {"owner", is.owner},
                    {"nodes", is.nodes},
                    {"choices", choices}});
  }
  return {{"n", arena.n()},
          {"alternatives", alts},
          {"nodes", nodes},
          {"infoSets", sets}};
}

Json strategy_to_json(const Strategy& s, const Arena* arena) {
  Json choices = Json::array();
  for (const auto& [id, c] : s.choices) {
    const Json label =
        arena ? to_json(arena->info_set(id).choices.at(c)) : Json(c);
    choices.push_back({{"infoSet", id}, {"choice", label}});
  }
  return {{"owner", s.owner}, {"choices", choices}};
}

Json verdict_to_json(const Verdict& v, const Arena* arena) {
  return {{"pass", v.pass},
          {"evaluations", v.evaluations},
          {"witness", witness_to_json(arena, v.witness)}};
}

Json to_json(const Certificate& cert) {
  return {{"ordering", to_json(cert.ordering)},
          {"quotas", to_json(cert.quotas)},
          {"nodes", cert.arena.num_nodes()},
          {"infoSets", cert.arena.num_info_sets()},
          {"report", verdict_to_json(cert.report, &cert.arena)}};
}

Coalition coalition_from_json(const Json& j) {
  return guarded("coalition", [&] {
    expect(j.is_array(), "coalition must be an array of agent indices");
    Coalition c;
    for (const auto& v : j) {
      expect(v.is_number_integer(), "agent indices must be integers");
      const int i = v.get<int>();
      expect(!c.contains(i), "agent " + std::to_string(i) + " listed twice");
      c.insert(i);
    }
    return c;
  });
}

Partition partition_from_json(const Json& j) {
  return guarded("partition", [&] {
    auto blocks = blocks_from_json(j);
    const int n = agent_count(blocks);
    return Partition(n, std::move(blocks));
  });
}

OrderedPartition ordered_partition_from_json(const Json& j) {
  return guarded("ordered partition", [&] {
    auto blocks = blocks_from_json(j);
    const int n = agent_count(blocks);
    return OrderedPartition(n, std::move(blocks));
  });
}

QuotaVector quotas_from_json(const Json& j) {
  return guarded("quotas", [&] {
    expect(j.is_array(), "quotas must be an array of integers");
    return QuotaVector(j.get<std::vector<int>>());
  });
}

Preference preference_from_json(const Json& j) {
  return guarded("preference", [&] {
    expect(j.is_array(), "preference must be an array of tiers");
    std::vector<std::vector<Alternative>> tiers;
    for (const auto& t : j) {
      expect(t.is_array(), "preference tier must be an array of labels");
      std::vector<Alternative> tier;
      for (const auto& a : t) tier.emplace_back(a.get<std::string>());
      tiers.push_back(std::move(tier));
    }
    return Preference(std::move(tiers));
  });
}

ChoiceLabel choice_label_from_json(const Json& j) {
  return guarded("choice label", [&] {
    if (j.is_string()) return ChoiceLabel(j.get<std::string>());
    expect(j.is_array(), "choice label must be a string or preference list");
    std::vector<Preference> prefs;
    for (const auto& p : j) prefs.push_back(preference_from_json(p));
    return ChoiceLabel(std::move(prefs));
  });
}

Committee committee_from_json(const Json& j) {
  return guarded("committee", [&] {
    expect(j.is_object() && j.contains("n") && j.contains("minimal"),
           "committee needs \"n\" and \"minimal\"");
    const int n = j.at("n").get<int>();
    std::vector<Coalition> minimal;
    for (const auto& m : j.at("minimal")) minimal.push_back(coalition_from_json(m));
    if (minimal.empty()) return Committee::constant(n, kY);
    if (minimal.size() == 1 && minimal[0].empty()) return Committee::constant(n, kX);
    return Committee(n, std::move(minimal));
  });
}

ScfTable scf_table_from_json(const Json& j) {
  return guarded("table", [&] {
    expect(j.is_object() && !j.empty(), "table must be a non-empty object");
    const int n = static_cast<int>(j.begin().key().size());
    expect(n >= 1 && n <= kMaxTableAgents, "table keys have a bad length");
    const std::size_t count = std::size_t{1} << n;
    expect(j.size() == count, "table must list all 2^n profiles");
    std::vector<Alternative> out(count);
    for (const auto& [key, value] : j.items()) {
      expect(static_cast<int>(key.size()) == n, "table keys differ in length");
      std::uint64_t bits = 0;
      for (int i = 0; i < n; ++i) {
        expect(key[i] == '0' || key[i] == '1', "table keys must be bit strings");
        if (key[i] == '1') bits |= std::uint64_t{1} << i;
      }
      out[bits] = Alternative(value.get<std::string>());
    }
    return ScfTable(n, std::move(out));
  });
}

Arena arena_from_json(const Json& j) {
  return guarded("arena", [&] {
    expect(j.is_object(), "arena must be an object");
    const int n = j.at("n").get<int>();
    std::vector<Alternative> alts;
    for (const auto& a : j.at("alternatives")) alts.emplace_back(a.get<std::string>());

    std::vector<InfoSet> sets;
    for (const auto& s : j.at("infoSets")) {
      InfoSet is;
      is.id = s.at("id").get<int>();
      is.owner = s.at("owner").get<int>();
      is.nodes = s.at("nodes").get<std::vector<int>>();
      for (const auto& c : s.at("choices")) is.choices.push_back(choice_label_from_json(c));
      sets.push_back(std::move(is));
    }
    std::sort(sets.begin(), sets.end(),
              [](const InfoSet& a, const InfoSet& b) { return a.id < b.id; });

    std::vector<Node> nodes;
    std::vector<Json> labels;
    for (const auto& z : j.at("nodes")) {
      Node node;
      node.id = z.at("id").get<int>();
      const Json& owner = z.at("owner");
      if (owner.is_string()) {
        expect(owner.get<std::string>() == "terminal", "owner must be an agent or \"terminal\"");
        node.owner = kTerminal;
        const std::string out = z.at("outcome").get<std::string>();
        auto it = std::find(alts.begin(), alts.end(), Alternative(out));
        expect(it != alts.end(), "unknown outcome '" + out + "'");
        node.outcome = static_cast<int>(it - alts.begin());
      } else {
        node.owner = owner.get<int>();
        const Json& is = z.at("infoSet");
        expect(is.is_number_integer(), "decision nodes need an info set");
        node.info_set = is.get<int>();
      }
      const Json& parent = z.at("parent");
      node.parent = parent.is_null() ? kNoNode : parent.get<int>();
      labels.push_back(z.value("choice", Json(nullptr)));
      nodes.push_back(std::move(node));
    }
    std::vector<std::size_t> order(nodes.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return nodes[a].id < nodes[b].id; });
    std::vector<Node> sorted;
    std::vector<Json> sorted_labels;
    for (std::size_t k : order) {
      sorted.push_back(nodes[k]);
      sorted_labels.push_back(labels[k]);
    }
    const int count = static_cast<int>(sorted.size());
    for (int k = 0; k < count; ++k) {
      expect(sorted[k].id == k, "node ids must be 0..N-1");
    }
    // Resolve each move's label against the parent's info set.
    for (int k = 0; k < count; ++k) {
      Node& z = sorted[k];
      if (z.parent == kNoNode) continue;
      expect(z.parent >= 0 && z.parent < count, "unknown parent");
      const Node& p = sorted[z.parent];
      expect(p.info_set >= 0 && p.info_set < static_cast<int>(sets.size()),
             "parent of node " + std::to_string(k) + " has no info set");
      const ChoiceLabel label = choice_label_from_json(sorted_labels[k]);
      const auto& choices = sets[p.info_set].choices;
      auto it = std::find(choices.begin(), choices.end(), label);
      expect(it != choices.end(), "node " + std::to_string(k) +
                                      " is reached by an unknown choice");
      z.choice = static_cast<int>(it - choices.begin());
    }
    for (const Node& z : sorted) {
      if (z.parent == kNoNode) continue;
      auto& ch = sorted[z.parent].children;
      if (static_cast<int>(ch.size()) <= z.choice) ch.resize(z.choice + 1, kNoNode);
      expect(ch[z.choice] == kNoNode, "two children share a choice");
      ch[z.choice] = z.id;
    }
    return Arena(n, std::move(alts), std::move(sorted), std::move(sets));
  });
}

std::string supporters_key(Coalition supporters, int n) {
  std::string key(n, '0');
  for (AgentId i = 1; i <= n; ++i) {
    if (supporters.contains(i)) key[i - 1] = '1';
  }
  return key;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  }
  out << j.dump(2) << '\n';
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), digest);
  std::ostringstream out;
  for (unsigned char b : digest) {
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(b);
  }
  return out.str();
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

}  // namespace osp
