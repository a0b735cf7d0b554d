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

#ifndef MKCP_CONSTRAINT_HULL_H_
#define MKCP_CONSTRAINT_HULL_H_

#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace mkcp {

struct FreeConstraint {};

struct UniformMatroid {
  int rank = 0;
};

struct PartitionMatroid {
  std::vector<int> item_class;  // per item
  std::vector<int> caps;        // per class
};

using AdditionalConstraint =
    std::variant<FreeConstraint, UniformMatroid, PartitionMatroid>;

std::string_view KindName(const AdditionalConstraint& spec);

// Throws ParseError when the constraint does not fit n items.
void ValidateAdditional(const AdditionalConstraint& spec, int num_items);

bool IsMember(const AdditionalConstraint& spec, std::span<const int> set);

// Indicator of a maximum c-weight independent set (matroid greedy).
std::vector<int> HullLinearOptimize(const AdditionalConstraint& spec,
                                    std::span<const double> c);

// The rank inequalities sum_{i in items} x_i <= cap describing P(I) for the
// supported families (together with 0 <= x <= 1).
struct HullRow {
  std::vector<int> items;
  int cap = 0;
};
std::vector<HullRow> HullRows(const AdditionalConstraint& spec, int num_items);

bool InHull(const AdditionalConstraint& spec, std::span<const double> x,
            double tol);

// The constraint {T : T ∪ committed ∈ I} over the survivors, renumbered
// 0..|survivors|-1. committed must be independent.
AdditionalConstraint Contract(const AdditionalConstraint& spec,
                              std::span<const int> committed,
                              std::span<const int> survivors);

}  // namespace mkcp

#endif  // MKCP_CONSTRAINT_HULL_H_
