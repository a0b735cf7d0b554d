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

#ifndef MKCP_SOLVER_H_
#define MKCP_SOLVER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mkcp/association.h"
#include "mkcp/configuration_lp.h"
#include "mkcp/instance.h"
#include "mkcp/rounding.h"

namespace mkcp {

struct SolverConfig {
  double epsilon = 0.1;
  double delta = 0.2;
  double mu = 0.0;  // 0 means delta / 4
  double gamma = 0.05;
  int n_level = 4;
  int xi = 2;
  uint64_t seed = 0;
  int restarts = 5;
  int cg_steps = 10;
  int gradient_samples = 200;
  int pipage_samples = 200;
  int workers = 1;

  double effective_mu() const { return mu > 0.0 ? mu : delta / 4.0; }
};

// Throws PreconditionError when a parameter is out of range.
void ValidateConfig(const SolverConfig& config);

// g(T) = f(S ∪ T) on the items that may still be added, with the capacity
// left over by the committed assignments.
struct ResidualInstance {
  Instance instance;
  std::vector<int> survivors;  // original ids, ascending
  std::vector<int> committed;  // S
};

ResidualInstance MakeResidual(const Instance& instance, const std::vector<int>& committed,
                              const std::vector<Assignment>& assignments, int xi);

// Compliance of a sampled set with one block.
struct BlockCompliance {
  int constraint = 0;
  int block = 0;
  bool ok = true;
  std::string reason;
};

// Per-constraint data a restricted run keeps about its association.
struct AssociationData {
  BlockPartition blocks;
  BlockAssociation association;
  std::vector<ExactBlockPoint> points;  // already scaled by (1 - delta)
};

std::vector<BlockCompliance> CheckCompliance(const std::vector<int>& set,
                                             const Instance& instance,
                                             const std::vector<AssociationData>& data,
                                             double mu);

struct SolveStats {
  int iterations = 0;         // enumerated (S, A) pairs solved
  int restricted_runs = 0;    // sampling rounds
  int compliant_runs = 0;     // rounds where every block was compliant
  int packing_failures = 0;   // rounds returning the empty set
  int compliance_counterexamples = 0;  // compliant but packing failed
  bool monotone_optimizer = true;      // continuous greedy vs measured variant

  void Merge(const SolveStats& other);
};

// Restricted problem on an instance whose bins are already grouped into the
// given partitions (one per constraint). Always returns a feasible solution.
Solution SolveRestricted(const Instance& instance,
                         const std::vector<BlockPartition>& partitions,
                         const SolverConfig& config, uint64_t seed,
                         SolveStats* stats = nullptr);

// Enumerates partial solutions of at most xi items, solves each leveled
// residual and keeps the best combined solution.
Solution Solve(const Instance& instance, const SolverConfig& config,
               SolveStats* stats = nullptr);

struct UniformStats {
  double mu = 0.0;
  double scale = 0.0;
  // Per group: items selected and the bound mu|B| + 2.
  std::vector<int> group_selected;
  double group_bound = 0.0;
  bool packed = false;
};

// One constraint with equal capacities, no additional constraint, monotone f.
Solution SolveUniform(const Instance& instance, const SolverConfig& config,
                      UniformStats* stats = nullptr);

}  // namespace mkcp

#endif  // MKCP_SOLVER_H_
