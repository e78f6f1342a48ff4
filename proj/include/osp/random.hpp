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

// Seeded instance generators shared by the CLI and the property suites.

#ifndef OSP_RANDOM_HPP_
#define OSP_RANDOM_HPP_

#include <random>

#include "osp/core.hpp"

namespace osp {

using Rng = std::mt19937_64;

// Uniform set partition of {1..n} into random labels, then canonicalized.
Partition random_partition(Rng& rng, int n);

struct QuotaInstance {
  OrderedPartition ordering;
  QuotaVector quotas;
};

// n uniform in [min_n, max_n], a random ordered partition, and uniform
// compatible quotas.
QuotaInstance random_quota_instance(Rng& rng, int min_n, int max_n);

}  // namespace osp

#endif  // OSP_RANDOM_HPP_
