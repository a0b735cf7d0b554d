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

#ifndef MKCP_GROUPING_H_
#define MKCP_GROUPING_H_

#include <span>
#include <vector>

#include "mkcp/configuration_lp.h"
#include "mkcp/rational.h"

namespace mkcp {

// H = {mu W* < w <= W*}, L = {w <= mu W*}. Heavier items are in neither.
struct Classification {
  std::vector<int> heavy;
  std::vector<int> light;
};
Classification Classify(std::span<const Rational> weights,
                        const Rational& capacity, const Rational& mu);

// Heavy items of a block cut into groups G_1..G_tau along the weight order
// (weight descending, id ascending). A group closes at the first item where
// its y-mass reaches mu |K|; the remainder forms the last group.
struct Grouping {
  Rational mu;
  Rational capacity;
  int block_size = 0;
  std::vector<int> heavy_order;
  std::vector<std::vector<int>> groups;
  std::vector<int> pivots;    // last item of each group
  std::vector<int> group_of;  // per item, group index or -1

  int tau() const { return static_cast<int>(groups.size()); }
};
Grouping ComputeGrouping(std::span<const Rational> y,
                         std::span<const Rational> weights,
                         const Rational& capacity, int block_size,
                         const Rational& mu);

struct GroupedPacking {
  std::vector<std::vector<int>> bins;  // non-empty bins only
  int typed_bins = 0;                  // bins opened for configuration types
};

// Packs S using the configuration types present in z: heavy items of group
// k >= 2 go to typed bins with a free slot of group k-1, light items are
// added by First-Fit, items of G_1 get one bin each. Throws PackingError
// when an input inequality turns out false during placement.
GroupedPacking PackWithGrouping(std::span<const int> set, const Grouping& grouping,
                                std::span<const Rational> weights,
                                std::span<const Rational> y,
                                const std::vector<ExactConfig>& z,
                                const Rational& lambda);

// (1 - delta + 3 mu)|K| + 4 * 4^(mu^-2) + 2 lambda, as a double (can be huge).
double GroupedPackingBound(int block_size, double delta, double mu, double lambda);

// Each item goes to the first bin with room, else to a new bin.
void FirstFit(std::span<const int> items, std::span<const Rational> weights,
              const Rational& capacity, std::vector<std::vector<int>>* bins);

// First-Fit on items sorted by weight descending (ties by id).
std::vector<std::vector<int>> FfdBinPack(std::span<const int> items,
                                         std::span<const Rational> weights,
                                         const Rational& capacity);

}  // namespace mkcp

#endif  // MKCP_GROUPING_H_
