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

#ifndef MKCP_ASSOCIATION_H_
#define MKCP_ASSOCIATION_H_

#include <functional>
#include <span>
#include <vector>

#include "mkcp/configuration_lp.h"
#include "mkcp/grouping.h"
#include "mkcp/rational.h"

namespace mkcp {

// c . v <= bound.
struct LinearConstraint {
  std::vector<Rational> coeffs;
  Rational bound;
};

bool Satisfies(std::span<const Rational> v, const LinearConstraint& constraint);

// Item whose removal from the support makes v satisfy the constraint, chosen
// with the largest c_i v_i. Returns -1 when v already satisfies it and -2
// when no single removal is enough.
int SemiSatisfyWitness(std::span<const Rational> v, const LinearConstraint& constraint);

bool IsDecomposition(std::span<const Rational> x,
                     const std::vector<std::vector<Rational>>& vectors);
bool IsPerfect(const std::vector<std::vector<Rational>>& vectors);

// Edges of the broken bipartite graph: pairs (item, vector) with a non-zero
// entry where the item has non-zero entries in at least two vectors.
int BrokenEdgeCount(const std::vector<std::vector<Rational>>& vectors);

struct MakePerfectResult {
  std::vector<std::vector<Rational>> vectors;
  int iterations = 0;
  int initial_edges = 0;
};

using IterationObserver = std::function<void(const std::vector<std::vector<Rational>>&)>;

// Turns a decomposition of x, whose vectors satisfy their constraints, into
// a perfect one whose vectors semi-satisfy them. The observer, if any, sees
// the vectors after every iteration.
MakePerfectResult MakePerfect(std::span<const Rational> x,
                              std::vector<std::vector<Rational>> vectors,
                              const std::vector<LinearConstraint>& constraints,
                              const IterationObserver& observer = nullptr);

struct BlockAssociation {
  std::vector<std::vector<int>> sets;  // I_j per block
  std::vector<int> exceptional;        // i*_j or -1
  std::vector<Grouping> groupings;     // per block; empty for singletons
  int iterations = 0;
};

// Splits supp(x) among the blocks of one constraint. The point must be in
// the extended polytope already scaled by the caller.
BlockAssociation BlockAssociate(std::span<const Rational> x,
                                const std::vector<ExactBlockPoint>& points,
                                const BlockPartition& blocks,
                                std::span<const Rational> weights,
                                const Rational& mu);

}  // namespace mkcp

#endif  // MKCP_ASSOCIATION_H_
