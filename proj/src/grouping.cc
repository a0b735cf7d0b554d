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

#include "mkcp/grouping.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "mkcp/errors.h"

namespace mkcp {
namespace {

std::vector<int> WeightOrder(std::vector<int> items, std::span<const Rational> weights) {
  std::sort(items.begin(), items.end(), [&](int a, int b) {
    if (weights[a] != weights[b]) return weights[a] > weights[b];
    return a < b;
  });
  return items;
}

Rational Ceil(const Rational& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return Rational(q);
}

}  // namespace

Classification Classify(std::span<const Rational> weights,
                        const Rational& capacity, const Rational& mu) {
  if (!(mu > 0 && mu <= Rational(1, 2))) throw PreconditionError("mu must lie in (0, 1/2]");
  Classification c;
  const Rational threshold = mu * capacity;
  for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
    if (weights[i] <= threshold) {
      c.light.push_back(i);
    } else if (weights[i] <= capacity) {
      c.heavy.push_back(i);
    }
  }
  return c;
}

Grouping ComputeGrouping(std::span<const Rational> y,
                         std::span<const Rational> weights,
                         const Rational& capacity, int block_size,
                         const Rational& mu) {
  Grouping g;
  g.mu = mu;
  g.capacity = capacity;
  g.block_size = block_size;
  g.group_of.assign(weights.size(), -1);
  g.heavy_order = WeightOrder(Classify(weights, capacity, mu).heavy, weights);
  const Rational threshold = mu * block_size;
  std::vector<int> current;
  Rational mass = 0;
  for (int i : g.heavy_order) {
    if (y[i] < 0 || y[i] > 1) throw PreconditionError("grouping needs y in [0,1]");
    current.push_back(i);
    mass += y[i];
    if (mass >= threshold) {
      g.pivots.push_back(i);
      g.groups.push_back(std::move(current));
      current.clear();
      mass = 0;
    }
  }
  if (!current.empty()) {
    g.pivots.push_back(current.back());
    g.groups.push_back(std::move(current));
  }
  for (int k = 0; k < g.tau(); ++k) {
    for (int i : g.groups[k]) g.group_of[i] = k;
  }
  return g;
}

GroupedPacking PackWithGrouping(std::span<const int> set, const Grouping& grouping,
                                std::span<const Rational> weights,
                                std::span<const Rational> y,
                                const std::vector<ExactConfig>& z,
                                const Rational& lambda) {
  const int tau = grouping.tau();
  const Rational& capacity = grouping.capacity;
  const Rational light_cap = grouping.mu * capacity;

  std::vector<std::vector<int>> in_group(tau);
  std::vector<int> light;
  Rational light_weight = 0;
  for (int i : set) {
    const int k = grouping.group_of.at(i);
    if (k >= 0) {
      in_group[k].push_back(i);
    } else if (weights[i] <= light_cap) {
      light.push_back(i);
      light_weight += weights[i];
    } else {
      throw PackingError("item " + std::to_string(i) + " is neither light nor in a group");
    }
  }
  const Rational group_cap = grouping.mu * grouping.block_size;
  for (int k = 0; k < tau; ++k) {
    if (Rational(static_cast<long>(in_group[k].size())) > group_cap) {
      throw PackingError("|S ∩ G_" + std::to_string(k + 1) + "| = " +
                         std::to_string(in_group[k].size()) + " exceeds mu|K|");
    }
  }
  Rational light_mass = 0;
  for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
    if (weights[i] <= light_cap && y[i] > 0) light_mass += y[i] * weights[i];
  }
  if (light_weight > light_mass + lambda * capacity) {
    throw PackingError("light weight of S exceeds the fractional light weight plus lambda W*");
  }

  // eta(T) over the configuration types in the support of z.
  std::map<std::vector<int>, Rational> eta;
  for (const ExactConfig& config : z) {
    if (config.weight <= 0) continue;
    std::vector<int> type(tau, 0);
    for (int i : config.items) {
      const int k = grouping.group_of.at(i);
      if (k >= 0) ++type[k];
    }
    eta[type] += config.weight;
  }
  struct TypedBin {
    const std::vector<int>* type;
    std::vector<int> used;
  };
  std::vector<TypedBin> typed;
  std::vector<std::vector<int>> bins;
  for (const auto& [type, mass] : eta) {
    const long count = Ceil(mass).get_num().get_si();
    for (long r = 0; r < count; ++r) {
      typed.push_back({&type, std::vector<int>(tau, 0)});
      bins.emplace_back();
    }
  }
  GroupedPacking result;
  result.typed_bins = static_cast<int>(typed.size());

  for (int k = 1; k < tau; ++k) {
    for (int i : in_group[k]) {
      bool placed = false;
      for (size_t b = 0; b < typed.size() && !placed; ++b) {
        if (typed[b].used[k] < (*typed[b].type)[k - 1]) {
          ++typed[b].used[k];
          bins[b].push_back(i);
          placed = true;
        }
      }
      if (!placed) {
        throw PackingError("no typed bin has a free slot for group " + std::to_string(k + 1) +
                           "; the witness z does not cover y on group " + std::to_string(k));
      }
    }
  }
  FirstFit(light, weights, capacity, &bins);
  if (tau > 0) {
    for (int i : in_group[0]) bins.push_back({i});
  }
  for (auto& bin : bins) {
    Rational load = 0;
    for (int i : bin) load += weights[i];
    if (load > capacity) throw InvariantError("grouped packing overfilled a bin");
    if (!bin.empty()) result.bins.push_back(std::move(bin));
  }
  return result;
}

double GroupedPackingBound(int block_size, double delta, double mu, double lambda) {
  return (1.0 - delta + 3.0 * mu) * block_size + 4.0 * std::pow(4.0, 1.0 / (mu * mu)) +
         2.0 * lambda;
}

void FirstFit(std::span<const int> items, std::span<const Rational> weights,
              const Rational& capacity, std::vector<std::vector<int>>* bins) {
  std::vector<Rational> load;
  for (const auto& bin : *bins) {
    Rational l = 0;
    for (int i : bin) l += weights[i];
    load.push_back(l);
  }
  for (int i : items) {
    if (weights[i] > capacity) {
      throw PreconditionError("item " + std::to_string(i) + " is heavier than the bin capacity");
    }
    size_t b = 0;
    while (b < bins->size() && load[b] + weights[i] > capacity) ++b;
    if (b == bins->size()) {
      bins->emplace_back();
      load.push_back(0);
    }
    (*bins)[b].push_back(i);
    load[b] += weights[i];
  }
}

std::vector<std::vector<int>> FfdBinPack(std::span<const int> items,
                                         std::span<const Rational> weights,
                                         const Rational& capacity) {
  std::vector<int> order = WeightOrder(std::vector<int>(items.begin(), items.end()), weights);
  std::vector<std::vector<int>> bins;
  FirstFit(order, weights, capacity, &bins);
  return bins;
}

}  // namespace mkcp
