// Copyright 2026 The mkcp-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MKCP_GENERATORS_H_
#define MKCP_GENERATORS_H_

#include <cstdint>
#include <string_view>

#include "mkcp/instance.h"

namespace mkcp {

enum class ObjectiveFamily { kModular, kCoverage, kCut, kTable };
enum class AdditionalFamily { kFree, kUniform, kPartition };

std::string_view FamilyName(ObjectiveFamily family);
std::string_view FamilyName(AdditionalFamily family);

struct GeneratorOptions {
  int items = 6;
  int constraints = 1;
  int min_bins = 1;
  int max_bins = 3;
  ObjectiveFamily objective = ObjectiveFamily::kModular;
  AdditionalFamily additional = AdditionalFamily::kFree;
  bool uniform_capacities = false;
  // Weights are integers in [1, max_weight], occasionally halved.
  int max_weight = 10;
  int min_capacity = 5;
  int max_capacity = 15;
};

// Deterministic for a fixed (options, seed).
Instance RandomInstance(const GeneratorOptions& options, uint64_t seed);

// Random submodular objective of a family over n items.
Objective RandomObjective(ObjectiveFamily family, int n, uint64_t seed);

}  // namespace mkcp

#endif  // MKCP_GENERATORS_H_
