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

#include "mkcp/structuring.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "mkcp/errors.h"

namespace mkcp {
namespace {

std::vector<int> CapacityOrder(std::span<const Rational> capacities) {
  std::vector<int> order(capacities.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return capacities[a] > capacities[b]; });
  return order;
}

long long IntPow(int base, int exp) {
  long long v = 1;
  for (int e = 0; e < exp; ++e) v *= base;
  return v;
}

}  // namespace

int NLeveledPartition::size() const {
  return block_size.empty() ? 0 : block_start.back() + block_size.back();
}

NLeveledPartition StructureInBlocks(std::span<const Rational> capacities, int n_level) {
  if (n_level < 2) throw PreconditionError("N must be at least 2");
  NLeveledPartition p;
  p.n_level = n_level;
  const std::vector<int> order = CapacityOrder(capacities);
  const long long m = static_cast<long long>(capacities.size());
  long long used = 0;
  for (int j = 0;; ++j) {
    const long long size = IntPow(n_level, j / (n_level * n_level));
    if (used + size > m) break;
    p.block_start.push_back(static_cast<int>(used));
    p.block_size.push_back(static_cast<int>(size));
    // Sorted descending, so the last bin of the block has the minimum.
    p.block_capacity.push_back(capacities[order[used + size - 1]]);
    used += size;
  }
  p.order.assign(order.begin(), order.begin() + used);
  return p;
}

MultiKnapsackConstraint LeveledConstraint(const MultiKnapsackConstraint& k,
                                          const NLeveledPartition& partition) {
  MultiKnapsackConstraint out;
  out.weights = k.weights;
  for (int j = 0; j < partition.num_blocks(); ++j) {
    for (int r = 0; r < partition.block_size[j]; ++r) {
      out.capacities.push_back(partition.block_capacity[j]);
      if (!k.bin_labels.empty()) {
        out.bin_labels.push_back(k.bin_labels[partition.order[partition.block_start[j] + r]]);
      }
    }
  }
  return out;
}

BlockPartition LeveledBlocks(const NLeveledPartition& partition, int t) {
  BlockPartition blocks;
  for (int j = 0; j < partition.num_blocks(); ++j) {
    Block b;
    b.constraint = t;
    b.capacity = partition.block_capacity[j];
    for (int r = 0; r < partition.block_size[j]; ++r) b.bins.push_back(partition.block_start[j] + r);
    blocks.push_back(std::move(b));
  }
  return blocks;
}

TransferResult TransferAssignment(const MultiKnapsackConstraint& k,
                                  const Assignment& assignment, const Objective& f,
                                  const NLeveledPartition& partition) {
  const int m = k.num_bins();
  const int n = static_cast<int>(k.weights.size());
  if (static_cast<int>(assignment.bins.size()) != m) {
    throw PreconditionError("assignment needs one entry per bin");
  }
  if (f.size() != n) throw PreconditionError("objective size does not match the constraint");
  if (!AssignmentFits(k, assignment)) throw PreconditionError("assignment exceeds a capacity");
  std::vector<char> seen(n, 0);
  for (const auto& bin : assignment.bins) {
    for (int i : bin) {
      if (i < 0 || i >= n) throw ReferenceError("assignment references unknown item");
      if (seen[i]) throw PreconditionError("assignment is not disjoint");
      seen[i] = 1;
    }
  }
  const std::vector<int> order = CapacityOrder(k.capacities);
  if (!std::equal(partition.order.begin(), partition.order.end(), order.begin())) {
    throw PreconditionError("partition was not built from this constraint");
  }

  const int N = partition.n_level;
  const int ell = partition.last_block();
  const int retained = partition.size();
  // Contents by rank, dropped bins included.
  std::vector<std::vector<int>> content(m);
  for (int p = 0; p < m; ++p) content[p] = assignment.bins[order[p]];

  TransferResult result;
  const int levels = (ell + 1) / (N * N);  // k in the construction
  auto finish = [&](std::vector<std::vector<int>> leveled) {
    result.assignment.bins = std::move(leveled);
    for (const auto& bin : result.assignment.bins) {
      result.kept.insert(result.kept.end(), bin.begin(), bin.end());
    }
    std::sort(result.kept.begin(), result.kept.end());
    return result;
  };
  if (levels == 0) {
    // All blocks are singletons and nothing is dropped.
    content.resize(retained);
    return finish(std::move(content));
  }

  auto super_start = [&](int t, int r) { return partition.block_start[t * N * N + r * N]; };
  auto super_size = [&](int t) { return static_cast<int>(IntPow(N, t + 1)); };
  const int last_level_start = levels * N * N <= ell ? partition.block_start[levels * N * N] : retained;

  // g(Q) = f(Q ∪ R) with R the items of the last level; choose per level the
  // super-block whose removal keeps the most value.
  auto value_without = [&](const std::vector<int>& evict) {
    std::vector<char> drop(m, 0);
    for (int t = 0; t < levels; ++t) {
      for (int o = 0; o < super_size(t); ++o) drop[super_start(t, evict[t]) + o] = 1;
    }
    std::vector<int> set;
    for (int p = 0; p < m; ++p) {
      if (!drop[p]) set.insert(set.end(), content[p].begin(), content[p].end());
    }
    std::sort(set.begin(), set.end());
    return f.Evaluate(set);
  };
  // The same r on every level: the N candidate removals are disjoint, so one
  // of them loses at most f(S)/N.
  std::vector<int> evict(levels, 0);
  Rational best = value_without(evict);
  for (int r = 1; r < N; ++r) {
    std::vector<int> cand(levels, r);
    Rational v = value_without(cand);
    if (v > best) {
      best = v;
      evict = cand;
    }
  }
  for (int t = 0; t < levels; ++t) {
    for (int r = 0; r < N; ++r) {
      if (r == evict[t]) continue;
      std::vector<int> cand = evict;
      cand[t] = r;
      Rational v = value_without(cand);
      if (v > best) {
        best = v;
        evict = cand;
      }
    }
  }
  result.evicted = evict;

  // Eviction, then shuffling: the last super-block of each level moves into
  // the evicted slots, which have at least the same capacities.
  for (int t = 0; t < levels; ++t) {
    const int dst = super_start(t, evict[t]);
    const int src = super_start(t, N - 1);
    for (int o = 0; o < super_size(t); ++o) {
      content[dst + o].clear();
      if (dst != src) {
        content[dst + o] = std::move(content[src + o]);
        content[src + o].clear();
      }
    }
  }

  // Shifting: each block of level t >= 1 moves N^t ranks forward, into the
  // previous block or the vacated last super-block of level t - 1.
  std::vector<std::vector<int>> leveled(retained);
  std::vector<char> filled(retained, 0);
  auto place = [&](int from, int to) {
    if (content[from].empty()) return;
    if (to < 0 || to >= retained || filled[to]) {
      throw InvariantError("assignment transfer collided at rank " + std::to_string(to));
    }
    filled[to] = 1;
    leveled[to] = content[from];
  };
  const int level0_keep = N * N - N;
  for (int p = 0; p < std::min(level0_keep, m); ++p) place(p, p);
  for (int t = 1; t <= levels; ++t) {
    const int begin = t < levels ? partition.block_start[t * N * N] : last_level_start;
    const int end = t < levels ? super_start(t, N - 1) : m;
    const int shift = static_cast<int>(IntPow(N, t));
    for (int p = begin; p < end; ++p) place(p, p - shift);
  }
  for (int t = 0; t < levels; ++t) {
    for (int o = 0; o < super_size(t); ++o) {
      if (!content[super_start(t, N - 1) + o].empty()) {
        throw InvariantError("last super-block not vacated");
      }
    }
  }
  // Capacity check against the reduced capacities.
  for (int j = 0; j < partition.num_blocks(); ++j) {
    for (int r = 0; r < partition.block_size[j]; ++r) {
      const int p = partition.block_start[j] + r;
      if (BinLoad(k, leveled[p]) > partition.block_capacity[j]) {
        throw InvariantError("transferred bin " + std::to_string(p) + " exceeds its capacity");
      }
    }
  }
  return finish(std::move(leveled));
}

}  // namespace mkcp
