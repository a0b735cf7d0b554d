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

#ifndef MKCP_STRUCTURING_H_
#define MKCP_STRUCTURING_H_

#include <span>
#include <vector>

#include "mkcp/configuration_lp.h"
#include "mkcp/instance.h"
#include "mkcp/objective.h"
#include "mkcp/rational.h"

namespace mkcp {

// Bins sorted by capacity (descending, ties by id) and cut into blocks of
// N^floor(j / N^2) bins. Bins past the last complete block are dropped.
// Leveled bin r is original bin order[r]; blocks hold leveled bin indices.
struct NLeveledPartition {
  int n_level = 2;
  std::vector<int> order;                   // original bin ids by rank
  std::vector<int> block_start;             // first rank of each block
  std::vector<int> block_size;
  std::vector<Rational> block_capacity;     // min capacity within the block
  int num_blocks() const { return static_cast<int>(block_size.size()); }
  // Number of retained bins.
  int size() const;
  // ell; -1 when there are no bins.
  int last_block() const { return num_blocks() - 1; }
};

NLeveledPartition StructureInBlocks(std::span<const Rational> capacities, int n_level);

// The constraint over the retained bins (in rank order) with the reduced
// capacities, and its block partition for constraint index t.
MultiKnapsackConstraint LeveledConstraint(const MultiKnapsackConstraint& k,
                                          const NLeveledPartition& partition);
BlockPartition LeveledBlocks(const NLeveledPartition& partition, int t);

struct TransferResult {
  std::vector<int> kept;  // sorted subset of the input set
  Assignment assignment;  // over leveled bins
  std::vector<int> evicted;  // super-block chosen per level
};

// Moves a feasible assignment on the original bins to the leveled bins,
// giving up one super-block per level, so that f(kept) >= (1 - 1/N) f(S).
TransferResult TransferAssignment(const MultiKnapsackConstraint& k,
                                  const Assignment& assignment, const Objective& f,
                                  const NLeveledPartition& partition);

}  // namespace mkcp

#endif  // MKCP_STRUCTURING_H_
