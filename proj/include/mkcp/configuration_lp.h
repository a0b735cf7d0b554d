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

#ifndef MKCP_CONFIGURATION_LP_H_
#define MKCP_CONFIGURATION_LP_H_

#include <span>
#include <string>
#include <vector>

#include "mkcp/instance.h"
#include "mkcp/rational.h"

namespace mkcp {

// One configuration C (items fitting a single bin of the block) with its
// fractional multiplicity z_C.
struct WeightedConfig {
  std::vector<int> items;
  double weight = 0.0;
};
using ConfigWeights = std::vector<WeightedConfig>;

struct BlockPoint {
  std::vector<double> y;
  ConfigWeights z;
};

// x together with the per-block witnesses (y^{t,j}, z^{t,j}).
struct FractionalPoint {
  std::vector<double> x;
  std::vector<std::vector<BlockPoint>> blocks;  // [constraint][block]
};

// Per constraint, the blocks in order.
using BlockPartition = std::vector<Block>;

struct LpStats {
  int rounds = 0;
  int columns = 0;
  double value = 0.0;
  double upper_bound = 0.0;
};

// max c.y over the block polytope of |bins| bins of the given capacity.
struct BlockLpResult {
  std::vector<double> y;
  ConfigWeights z;
  double value = 0.0;
};
BlockLpResult BlockLpOptimize(std::span<const Rational> weights,
                              const Rational& capacity, int bins,
                              std::span<const double> c, double eps,
                              LpStats* stats = nullptr);

// Either (1-eps) y is in the block polytope (witness covers (1-eps) y) or
// beta separates: beta.y > bins while every configuration has beta(C) <= 1.
struct SeparationResult {
  bool in_polytope = false;
  ConfigWeights witness;
  std::vector<double> beta;
};
SeparationResult SeparateBlock(std::span<const Rational> weights,
                               const Rational& capacity, int bins,
                               std::span<const double> y, double eps);

// max c.x over the gamma-instance polytope: x in P(I) and, for every
// constraint t, x = sum_j y^{t,j} with y^{t,j} in the block polytope of
// block j, where singleton blocks only admit gamma-light items.
FractionalPoint InstanceLpOptimize(const Instance& instance,
                                   const std::vector<BlockPartition>& partitions,
                                   double gamma, std::span<const double> c,
                                   double eps, LpStats* stats = nullptr);

// One singleton block per bin.
std::vector<BlockPartition> SingletonPartitions(const Instance& instance);

// Validates the invariants of a FractionalPoint. Empty string when fine.
std::string CheckFractionalPoint(const Instance& instance,
                                 const std::vector<BlockPartition>& partitions,
                                 double gamma, const FractionalPoint& point,
                                 double tol);

// Checks (y, z) against the extended block polytope; empty when fine.
std::string CheckBlockPoint(std::span<const Rational> weights,
                            const Rational& capacity, int bins,
                            std::span<const double> y, const ConfigWeights& z,
                            double tol);

// The same point in exact arithmetic, moved slightly inward so that every
// inequality holds exactly: z is shrunk and floored to a dyadic grid, y is
// capped by the exact coverage, and x = sum_j y^{t,j} for every t.
struct ExactConfig {
  std::vector<int> items;
  Rational weight;
};
struct ExactBlockPoint {
  std::vector<Rational> y;
  std::vector<ExactConfig> z;
};
struct ExactPoint {
  std::vector<Rational> x;
  std::vector<std::vector<ExactBlockPoint>> blocks;
};
ExactPoint SnapToExact(const Instance& instance,
                       const std::vector<BlockPartition>& partitions,
                       const FractionalPoint& point);

// Multiplies every coordinate (x, y and z) by factor.
ExactPoint ScalePoint(const ExactPoint& point, const Rational& factor);

bool IsGammaLight(const Rational& weight, const Rational& capacity, double gamma);

}  // namespace mkcp

#endif  // MKCP_CONFIGURATION_LP_H_
