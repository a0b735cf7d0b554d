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

#include "mkcp/generators.h"

#include <algorithm>

#include "mkcp/rng.h"

namespace mkcp {
namespace {

Rational RandomWeight(Rng& rng, int max_weight) {
  Rational w = rng.UniformInt(1, max_weight);
  if (rng.Bernoulli(0.2)) w /= 2;
  return w;
}

CutSpec RandomCut(Rng& rng, int n) {
  CutSpec cut;
  cut.num_vertices = n + 1;
  for (int i = 0; i < n; ++i) cut.item_vertex.push_back(i);
  const int edges = std::max(1, rng.UniformInt(n, 2 * n));
  for (int e = 0; e < edges; ++e) {
    int u = rng.UniformInt(0, n);
    int v = rng.UniformInt(0, n);
    if (u == v) v = (u + 1) % (n + 1);
    cut.edges.push_back({u, v, Rational(rng.UniformInt(1, 5))});
  }
  return cut;
}

}  // namespace

std::string_view FamilyName(ObjectiveFamily family) {
  switch (family) {
    case ObjectiveFamily::kModular:
      return "modular";
    case ObjectiveFamily::kCoverage:
      return "coverage";
    case ObjectiveFamily::kCut:
      return "cut";
    case ObjectiveFamily::kTable:
      return "table";
  }
  return "?";
}

std::string_view FamilyName(AdditionalFamily family) {
  switch (family) {
    case AdditionalFamily::kFree:
      return "free";
    case AdditionalFamily::kUniform:
      return "uniform";
    case AdditionalFamily::kPartition:
      return "partition";
  }
  return "?";
}

Objective RandomObjective(ObjectiveFamily family, int n, uint64_t seed) {
  Rng rng(DeriveSeed(seed, "objective"));
  switch (family) {
    case ObjectiveFamily::kModular: {
      ModularSpec spec;
      spec.offset = rng.UniformInt(0, 2);
      for (int i = 0; i < n; ++i) spec.profits.push_back(Rational(rng.UniformInt(0, 10)));
      return Objective(spec);
    }
    case ObjectiveFamily::kCoverage: {
      CoverageSpec spec;
      const int universe = std::max(1, 2 * n);
      for (int e = 0; e < universe; ++e) spec.element_weights.push_back(Rational(rng.UniformInt(1, 5)));
      for (int i = 0; i < n; ++i) {
        std::vector<int> cover;
        const int k = rng.UniformInt(1, 3);
        for (int r = 0; r < k; ++r) cover.push_back(rng.UniformInt(0, universe - 1));
        std::sort(cover.begin(), cover.end());
        cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
        spec.covers.push_back(std::move(cover));
      }
      return Objective(spec);
    }
    case ObjectiveFamily::kCut:
      return Objective(RandomCut(rng, n));
    case ObjectiveFamily::kTable: {
      // A cut function plus a budgeted modular one; both are submodular.
      Objective cut(RandomCut(rng, n));
      std::vector<Rational> profits;
      for (int i = 0; i < n; ++i) profits.push_back(Rational(rng.UniformInt(0, 6)));
      const Rational budget = rng.UniformInt(3, 12);
      TableSpec table;
      table.num_items = n;
      std::vector<int> set;
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        set.clear();
        Rational modular = 0;
        for (int i = 0; i < n; ++i) {
          if (mask & (1u << i)) {
            set.push_back(i);
            modular += profits[i];
          }
        }
        table.values.push_back(cut.Evaluate(set) + std::min(modular, budget));
      }
      return Objective(table);
    }
  }
  return Objective();
}

Instance RandomInstance(const GeneratorOptions& options, uint64_t seed) {
  Rng rng(DeriveSeed(seed, "instance"));
  const int n = options.items;
  Instance instance;
  for (int i = 0; i < n; ++i) instance.labels.push_back("i" + std::to_string(i));
  for (int t = 0; t < options.constraints; ++t) {
    MultiKnapsackConstraint k;
    for (int i = 0; i < n; ++i) k.weights.push_back(RandomWeight(rng, options.max_weight));
    const int bins = rng.UniformInt(options.min_bins, options.max_bins);
    const Rational shared = rng.UniformInt(options.min_capacity, options.max_capacity);
    for (int b = 0; b < bins; ++b) {
      k.capacities.push_back(options.uniform_capacities
                                 ? shared
                                 : Rational(rng.UniformInt(options.min_capacity, options.max_capacity)));
    }
    instance.constraints.push_back(std::move(k));
  }
  instance.objective = RandomObjective(options.objective, n, DeriveSeed(seed, "f"));
  switch (options.additional) {
    case AdditionalFamily::kFree:
      instance.additional = FreeConstraint{};
      break;
    case AdditionalFamily::kUniform:
      instance.additional = UniformMatroid{rng.UniformInt(1, std::max(1, n - 1))};
      break;
    case AdditionalFamily::kPartition: {
      PartitionMatroid pm;
      const int classes = std::max(1, std::min(n, rng.UniformInt(1, 3)));
      for (int i = 0; i < n; ++i) pm.item_class.push_back(rng.UniformInt(0, classes - 1));
      for (int c = 0; c < classes; ++c) pm.caps.push_back(rng.UniformInt(1, 2));
      instance.additional = pm;
      break;
    }
  }
  ValidateInstance(instance);
  return instance;
}

}  // namespace mkcp
