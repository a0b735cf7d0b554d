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

#ifndef MKCP_EXACT_H_
#define MKCP_EXACT_H_

#include <optional>
#include <span>
#include <vector>

#include "mkcp/configuration_lp.h"
#include "mkcp/instance.h"
#include "mkcp/rational.h"

namespace mkcp {

// Ground-truth solvers for tiny inputs.

struct KnapsackOptimum {
  std::vector<int> items;
  Rational profit;
};
KnapsackOptimum ExactKnapsack(std::span<const Rational> weights,
                              std::span<const Rational> profits,
                              const Rational& capacity);

// Minimum number of bins of the given capacity holding all items (n <= 16).
int ExactBinPack(std::span<const int> items, std::span<const Rational> weights,
                 const Rational& capacity);

// Exhaustive search for an assignment of the set to the bins of k.
std::optional<Assignment> FindAssignment(const MultiKnapsackConstraint& k,
                                         std::span<const int> set);

struct ExactBlockLpResult {
  Rational value;
  std::vector<Rational> y;
  std::vector<ExactConfig> z;
};
// max c.y over the block polytope, by listing every configuration of the
// items with positive c that fit a bin (at most 12 such items).
ExactBlockLpResult ExactBlockLp(std::span<const Rational> weights,
                                const Rational& capacity, int bins,
                                std::span<const Rational> c);

// Optimal solution by enumerating all subsets (n <= 12, d <= 2, at most 4
// bins per constraint).
Solution BruteForceSolve(const Instance& instance);

}  // namespace mkcp

#endif  // MKCP_EXACT_H_
