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

#include "mkcp/instance.h"

#include <algorithm>
#include <string>

#include "mkcp/errors.h"

namespace mkcp {

void ValidateInstance(const Instance& instance) {
  const int n = instance.num_items();
  if (instance.constraints.empty()) {
    throw ParseError("instance needs at least one knapsack constraint");
  }
  for (int t = 0; t < instance.num_constraints(); ++t) {
    const MultiKnapsackConstraint& k = instance.constraints[t];
    const std::string where = "constraint " + std::to_string(t);
    if (static_cast<int>(k.weights.size()) != n) {
      throw ParseError(where + ": expected " + std::to_string(n) +
                       " weights, got " + std::to_string(k.weights.size()));
    }
    for (int i = 0; i < n; ++i) {
      if (k.weights[i] < 0) {
        throw ParseError(where + ": negative weight for item " +
                         std::to_string(i));
      }
    }
    for (int b = 0; b < k.num_bins(); ++b) {
      if (k.capacities[b] < 0) {
        throw ParseError(where + ": negative capacity for bin " +
                         std::to_string(b));
      }
    }
    if (!k.bin_labels.empty() &&
        static_cast<int>(k.bin_labels.size()) != k.num_bins()) {
      throw ParseError(where + ": bin label count mismatch");
    }
  }
  if (instance.objective.size() != n) {
    throw ParseError("objective is defined on " +
                     std::to_string(instance.objective.size()) +
                     " items, instance has " + std::to_string(n));
  }
  ValidateAdditional(instance.additional, n);
}

Solution EmptySolution(const Instance& instance) {
  Solution s;
  for (const auto& k : instance.constraints) {
    s.assignments.push_back(Assignment{std::vector<std::vector<int>>(k.num_bins())});
  }
  return s;
}

Rational BinLoad(const MultiKnapsackConstraint& k, std::span<const int> items) {
  Rational load = 0;
  for (int i : items) load += k.weights[i];
  return load;
}

bool AssignmentFits(const MultiKnapsackConstraint& k, const Assignment& a) {
  if (static_cast<int>(a.bins.size()) != k.num_bins()) return false;
  for (int b = 0; b < k.num_bins(); ++b) {
    if (BinLoad(k, a.bins[b]) > k.capacities[b]) return false;
  }
  return true;
}

FeasibilityReport ValidateSolution(const Instance& instance,
                                   const Solution& solution) {
  const int n = instance.num_items();
  auto check_item = [&](int i) {
    if (i < 0 || i >= n) throw ReferenceError("unknown item id " + std::to_string(i));
  };
  for (int i : solution.selected) check_item(i);

  FeasibilityReport report;
  auto fail = [&](Violation v) {
    report.ok = false;
    report.violations.push_back(std::move(v));
  };

  std::vector<char> selected(n, 0);
  for (int i : solution.selected) {
    if (selected[i]) {
      fail({Violation::Kind::kShape, -1, -1, i, 0,
            "item " + std::to_string(i) + " selected twice"});
    }
    selected[i] = 1;
  }
  const bool empty_everything =
      solution.selected.empty() && solution.assignments.empty();
  if (!empty_everything &&
      static_cast<int>(solution.assignments.size()) != instance.num_constraints()) {
    fail({Violation::Kind::kShape, -1, -1, -1, 0,
          "expected " + std::to_string(instance.num_constraints()) +
              " assignments, got " + std::to_string(solution.assignments.size())});
  }
  for (int t = 0; t < static_cast<int>(solution.assignments.size()) &&
                  t < instance.num_constraints();
       ++t) {
    const MultiKnapsackConstraint& k = instance.constraints[t];
    const Assignment& a = solution.assignments[t];
    if (static_cast<int>(a.bins.size()) > k.num_bins()) {
      throw ReferenceError("constraint " + std::to_string(t) + " has " +
                           std::to_string(k.num_bins()) +
                           " bins, assignment uses " + std::to_string(a.bins.size()));
    }
    std::vector<char> covered(n, 0);
    for (int b = 0; b < static_cast<int>(a.bins.size()); ++b) {
      for (int i : a.bins[b]) {
        check_item(i);
        covered[i] = 1;
        if (!selected[i]) {
          fail({Violation::Kind::kCoverage, t, b, i, 0,
                "item " + std::to_string(i) + " packed in constraint " +
                    std::to_string(t) + " bin " + std::to_string(b) +
                    " but not selected"});
        }
      }
      const Rational load = BinLoad(k, a.bins[b]);
      if (load > k.capacities[b]) {
        fail({Violation::Kind::kCapacity, t, b, -1, load - k.capacities[b],
              "constraint " + std::to_string(t) + " bin " + std::to_string(b) +
                  " over capacity by " + FormatRational(load - k.capacities[b])});
      }
    }
    for (int i : solution.selected) {
      if (!covered[i]) {
        fail({Violation::Kind::kCoverage, t, -1, i, 0,
              "selected item " + std::to_string(i) +
                  " is not packed in constraint " + std::to_string(t)});
      }
    }
  }
  if (!IsMember(instance.additional, solution.selected)) {
    fail({Violation::Kind::kMembership, -1, -1, -1, 0,
          "selected set violates the " +
              std::string(KindName(instance.additional)) + " constraint"});
  }
  return report;
}

}  // namespace mkcp
