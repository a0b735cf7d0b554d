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

#ifndef MKCP_KNAPSACK_H_
#define MKCP_KNAPSACK_H_

#include <span>
#include <vector>

#include "mkcp/rational.h"

namespace mkcp {

// Profit-scaling dynamic program. Returns C with w(C) <= capacity (exactly)
// and p(C) >= (1 - eps) * OPT. Items with non-positive profit are ignored.
std::vector<int> KnapsackFptas(std::span<const Rational> weights,
                               std::span<const double> profits,
                               const Rational& capacity, double eps);

// Same, restricted to the listed items.
std::vector<int> KnapsackFptas(std::span<const Rational> weights,
                               std::span<const double> profits,
                               std::span<const int> eligible,
                               const Rational& capacity, double eps);

}  // namespace mkcp

#endif  // MKCP_KNAPSACK_H_
