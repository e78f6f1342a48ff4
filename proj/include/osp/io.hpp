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

// JSON encodings. Parsers throw ParseError on malformed input.

#ifndef OSP_IO_HPP_
#define OSP_IO_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "osp/characterize.hpp"
#include "osp/committee.hpp"
#include "osp/core.hpp"
#include "osp/game.hpp"
#include "osp/verdict.hpp"

namespace osp {

using Json = nlohmann::json;

Json to_json(const Coalition& c);
Json to_json(const Partition& s);
Json to_json(const OrderedPartition& s);
Json to_json(const QuotaVector& q);
Json to_json(const Preference& p);
Json to_json(const ChoiceLabel& c);
Json to_json(const Committee& c);
Json to_json(const ScfTable& f);
Json to_json(const Arena& arena);
// With an arena, choices are written as labels; otherwise as indices.
Json strategy_to_json(const Strategy& s, const Arena* arena = nullptr);
Json verdict_to_json(const Verdict& v, const Arena* arena = nullptr);
Json to_json(const Certificate& cert);

Coalition coalition_from_json(const Json& j);
Partition partition_from_json(const Json& j);
OrderedPartition ordered_partition_from_json(const Json& j);
QuotaVector quotas_from_json(const Json& j);
Preference preference_from_json(const Json& j);
ChoiceLabel choice_label_from_json(const Json& j);
Committee committee_from_json(const Json& j);
ScfTable scf_table_from_json(const Json& j);
Arena arena_from_json(const Json& j);

// Bit string whose character i-1 is '1' when agent i supports x.
std::string supporters_key(Coalition supporters, int n);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);
std::string sha256_hex(const std::string& bytes);
std::string file_digest(const std::string& path);

}  // namespace osp

#endif  // OSP_IO_HPP_
