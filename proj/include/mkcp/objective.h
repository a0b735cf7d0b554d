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

#ifndef MKCP_OBJECTIVE_H_
#define MKCP_OBJECTIVE_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "mkcp/rational.h"

namespace mkcp {

// f(S) = offset + sum of profits.
struct ModularSpec {
  Rational offset;
  std::vector<Rational> profits;
};

// f(S) = total weight of universe elements covered by S.
struct CoverageSpec {
  std::vector<Rational> element_weights;
  std::vector<std::vector<int>> covers;  // per item
};

struct CutEdge {
  int u = 0;
  int v = 0;
  Rational weight;
};

// f(S) = weight of edges with exactly one endpoint in the vertex set of S.
struct CutSpec {
  int num_vertices = 0;
  std::vector<CutEdge> edges;
  std::vector<int> item_vertex;  // injective
};

// Explicit value table indexed by bitmask, n <= 16. Checked for
// submodularity on construction.
struct TableSpec {
  int num_items = 0;
  std::vector<Rational> values;
};

using ObjectiveSpec = std::variant<ModularSpec, CoverageSpec, CutSpec, TableSpec>;

// A value oracle. Either a root objective built from a spec, or the
// restriction g(T) = f(B ∪ T) of a root objective to a subset of its items,
// with a committed set B. Items of a restriction are numbered 0..size()-1.
// Cheap to copy; immutable.
class Objective {
 public:
  Objective();
  explicit Objective(ObjectiveSpec spec);

  int size() const { return static_cast<int>(items_.size()); }
  std::string_view kind() const;
  bool modular() const;
  bool monotone() const;
  const ObjectiveSpec& spec() const;

  // Root ids of the committed set and of the local items.
  const std::vector<int>& committed() const { return committed_; }
  const std::vector<int>& items() const { return items_; }

  Rational Evaluate(std::span<const int> set) const;
  double EvaluateDouble(std::span<const int> set) const;
  // mask has size() entries.
  double EvaluateMask(const std::vector<char>& mask) const;
  Rational Marginal(std::span<const int> set, int item) const;

  // g(T) = this(committed ∪ T) over the given survivors (local ids here).
  Objective Restrict(std::span<const int> committed,
                     std::span<const int> survivors) const;

  // For modular objectives: f(S) = offset + sum_{i in S} profits[i].
  void LinearForm(Rational* offset, std::vector<Rational>* profits) const;

  struct Data;

 private:
  void CheckSet(std::span<const int> set) const;
  void FillRootMask(std::span<const int> set, std::vector<char>* root) const;

  std::shared_ptr<const Data> data_;
  std::vector<int> committed_;
  std::vector<int> items_;
};

struct MultilinearEstimate {
  double mean = 0.0;
  double half_width = 0.0;  // 95% normal approximation
  int samples = 0;
};

// F(x) = E[f(R)], R containing each i independently with probability x_i.
// Exact for modular objectives and integral x.
MultilinearEstimate EstimateMultilinear(const Objective& f,
                                        std::span<const double> x,
                                        int samples, uint64_t seed);

// Exact F(x) by enumerating the fractional coordinates. At most 20 of them.
double ExactMultilinear(const Objective& f, std::span<const double> x);

// Keeps i (ascending ids) iff its marginal to the kept set is >= 0.
std::vector<int> Purge(const Objective& f, std::span<const int> set);

}  // namespace mkcp

#endif  // MKCP_OBJECTIVE_H_
