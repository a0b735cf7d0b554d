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

#ifndef MKCP_INSTANCE_H_
#define MKCP_INSTANCE_H_

#include <span>
#include <string>
#include <vector>

#include "mkcp/constraint_hull.h"
#include "mkcp/objective.h"
#include "mkcp/rational.h"

namespace mkcp {

// K = (w, B, W). Bins are numbered 0..num_bins()-1.
struct MultiKnapsackConstraint {
  std::vector<Rational> weights;     // per item
  std::vector<Rational> capacities;  // per bin
  std::vector<std::string> bin_labels;  // optional, empty or one per bin

  int num_bins() const { return static_cast<int>(capacities.size()); }
};

// Bins of one constraint sharing the capacity W*_K.
struct Block {
  int constraint = 0;
  std::vector<int> bins;
  Rational capacity;

  int size() const { return static_cast<int>(bins.size()); }
};

struct Instance {
  std::vector<std::string> labels;
  std::vector<MultiKnapsackConstraint> constraints;
  Objective objective;
  AdditionalConstraint additional;

  int num_items() const { return static_cast<int>(labels.size()); }
  int num_constraints() const { return static_cast<int>(constraints.size()); }
};

// Throws ParseError on inconsistent dimensions or negative data.
void ValidateInstance(const Instance& instance);

// Items per bin.
struct Assignment {
  std::vector<std::vector<int>> bins;
};

struct Solution {
  std::vector<int> selected;  // sorted
  std::vector<Assignment> assignments;  // one per constraint
};

Solution EmptySolution(const Instance& instance);

struct Violation {
  enum class Kind { kShape, kCapacity, kCoverage, kMembership };
  Kind kind = Kind::kShape;
  int constraint = -1;
  int bin = -1;
  int item = -1;
  Rational excess;
  std::string message;
};

struct FeasibilityReport {
  bool ok = true;
  std::vector<Violation> violations;
};

// Throws ReferenceError for item or bin ids outside the instance.
FeasibilityReport ValidateSolution(const Instance& instance,
                                   const Solution& solution);

Rational BinLoad(const MultiKnapsackConstraint& k, std::span<const int> items);

bool AssignmentFits(const MultiKnapsackConstraint& k, const Assignment& a);

}  // namespace mkcp

#endif  // MKCP_INSTANCE_H_
