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

#ifndef MKCP_ROUNDING_H_
#define MKCP_ROUNDING_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mkcp/configuration_lp.h"
#include "mkcp/constraint_hull.h"
#include "mkcp/instance.h"
#include "mkcp/objective.h"
#include "mkcp/rational.h"

namespace mkcp {

struct PipageOptions {
  // F is evaluated exactly while at most this many coordinates of x are
  // fractional; otherwise paired samples decide each step.
  int exact_limit = 12;
  int samples = 200;
};

struct PipageResult {
  std::vector<double> x;
  // The last fractional coordinate of G, rounded without a partner; -1 when
  // every step had one.
  int i_star = -1;
  int steps = 0;
  // Steps whose sampled comparison was within its confidence half-width.
  int ambiguous = 0;
};

// Rounds x on G to {0,1} by two-coordinate moves that keep sum_G c_i x_i
// fixed, each time moving to the endpoint with the larger F. Coordinates off
// G are untouched.
PipageResult Pipage(std::span<const double> x, const Objective& f,
                    std::span<const int> group, std::span<const Rational> costs,
                    uint64_t seed, const PipageOptions& options = {});

// Random R with Pr(i in R) = (1-delta)^2 x_i and R in I. Free constraints
// sample independently; matroid classes use pairwise dependent rounding.
std::vector<int> SampleSet(std::span<const double> x, double delta,
                           const AdditionalConstraint& constraint, uint64_t seed);

// max c.x over some polytope, with a witness.
using LinearOracle = std::function<FractionalPoint(std::span<const double> c)>;

// The gamma-instance polytope of the given partitions.
LinearOracle InstanceOracle(const Instance& instance,
                            const std::vector<BlockPartition>& partitions,
                            double gamma, double eps);

struct GreedyOptions {
  int steps = 10;
  int samples = 200;
};

// x = (1/T) sum of the LP vertices chosen along the way, with the witnesses
// averaged the same way. Objective size must match the oracle dimension.
FractionalPoint ContinuousGreedy(const LinearOracle& oracle, const Objective& f,
                                 uint64_t seed, const GreedyOptions& options = {});

// Measured variant for non-monotone f: x += (1/T) v o (1 - x).
FractionalPoint MeasuredContinuousGreedy(const LinearOracle& oracle,
                                         const Objective& f, uint64_t seed,
                                         const GreedyOptions& options = {});

// E[f(R + i) - f(R)] for R drawn from x, with common samples for all i.
std::vector<double> EstimateMarginals(const Objective& f, std::span<const double> x,
                                      int samples, uint64_t seed);

}  // namespace mkcp

#endif  // MKCP_ROUNDING_H_
