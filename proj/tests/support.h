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

#ifndef MKCP_TESTS_SUPPORT_H_
#define MKCP_TESTS_SUPPORT_H_

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mkcp/association.h"
#include "mkcp/configuration_lp.h"
#include "mkcp/grouping.h"
#include "mkcp/rng.h"

namespace mkcp::testing {

// mpq_class(a, b) does not reduce the fraction.
inline Rational Frac(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

template <typename T>
void Shuffle(std::vector<T>* v, Rng& rng) {
  for (int i = static_cast<int>(v->size()) - 1; i > 0; --i) {
    std::swap((*v)[i], (*v)[rng.UniformInt(0, i)]);
  }
}

// Random disjoint packings of the items into bins of the given capacities.
// Each packing is a list of bin contents, one per bin.
inline std::vector<std::vector<std::vector<int>>> RandomPackings(
    const std::vector<Rational>& weights, const std::vector<Rational>& capacities,
    int count, Rng& rng) {
  std::vector<std::vector<std::vector<int>>> packings;
  const int n = static_cast<int>(weights.size());
  const int m = static_cast<int>(capacities.size());
  for (int r = 0; r < count; ++r) {
    std::vector<std::vector<int>> bins(m);
    std::vector<Rational> load(m, 0);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    Shuffle(&order, rng);
    for (int i : order) {
      if (rng.Uniform() < 0.15) continue;
      std::vector<int> targets(m);
      for (int b = 0; b < m; ++b) targets[b] = b;
      Shuffle(&targets, rng);
      for (int b : targets) {
        if (load[b] + weights[i] <= capacities[b]) {
          load[b] += weights[i];
          bins[b].push_back(i);
          break;
        }
      }
    }
    for (auto& bin : bins) std::sort(bin.begin(), bin.end());
    packings.push_back(std::move(bins));
  }
  return packings;
}

struct GroupingCase {
  std::vector<Rational> weights;
  Rational capacity;
  int bins = 0;
  Rational mu, delta, lambda;
  std::vector<Rational> y;
  std::vector<ExactConfig> z;
  Grouping grouping;
  std::vector<int> set;
};

// (y, z) is a (1 - delta)-scaled average of feasible packings; the set meets
// the cardinality and light-weight preconditions of the grouped packing.
inline GroupingCase RandomGroupingCase(Rng& rng, int max_bins, const Rational& mu) {
  GroupingCase gc;
  gc.capacity = 1000;
  gc.mu = mu;
  gc.bins = rng.UniformInt(1, max_bins);
  const int n = rng.UniformInt(gc.bins, 4 * gc.bins + 5);
  const Rational light_cap = mu * gc.capacity;
  const long light_max = mpz_class(light_cap.get_num() / light_cap.get_den()).get_si();
  for (int i = 0; i < n; ++i) {
    if (rng.Uniform() < 0.5) {
      gc.weights.push_back(Rational(rng.UniformInt(static_cast<int>(light_max) + 1, 1000)));
    } else {
      gc.weights.push_back(Rational(rng.UniformInt(1, static_cast<int>(light_max))));
    }
  }
  const Rational deltas[] = {Rational(0), Rational(1, 10), Rational(1, 5), Rational(3, 10)};
  gc.delta = deltas[rng.UniformInt(0, 3)];
  const Rational lambdas[] = {Rational(0), Rational(1, 2), Rational(1), Rational(2), Rational(3)};
  gc.lambda = lambdas[rng.UniformInt(0, 4)];
  const int r = rng.UniformInt(1, 4);
  auto packings = RandomPackings(gc.weights, std::vector<Rational>(gc.bins, gc.capacity), r, rng);
  const Rational share = (1 - gc.delta) / r;
  gc.y.assign(n, 0);
  std::map<std::vector<int>, Rational> configs;
  for (const auto& packing : packings) {
    for (const auto& bin : packing) {
      for (int i : bin) gc.y[i] += share;
      if (!bin.empty()) configs[bin] += share;
    }
  }
  for (auto& [items, w] : configs) gc.z.push_back({items, w});
  gc.grouping = ComputeGrouping(gc.y, gc.weights, gc.capacity, gc.bins, mu);

  const Rational per_group = mu * gc.bins;
  const long cap = mpz_class(per_group.get_num() / per_group.get_den()).get_si();
  for (const auto& group : gc.grouping.groups) {
    std::vector<int> members = group;
    Shuffle(&members, rng);
    const int take = rng.UniformInt(0, static_cast<int>(std::min<long>(cap, members.size())));
    gc.set.insert(gc.set.end(), members.begin(), members.begin() + take);
  }
  Rational budget = gc.lambda * gc.capacity;
  std::vector<int> light;
  for (int i = 0; i < n; ++i) {
    if (gc.weights[i] <= light_cap) {
      budget += gc.y[i] * gc.weights[i];
      light.push_back(i);
    }
  }
  Shuffle(&light, rng);
  Rational used = 0;
  for (int i : light) {
    if (rng.Uniform() < 0.9 && used + gc.weights[i] <= budget) {
      used += gc.weights[i];
      gc.set.push_back(i);
    }
  }
  std::sort(gc.set.begin(), gc.set.end());
  return gc;
}

// Empty when the packing holds exactly the set, within capacity, using at
// most the grouped-packing bound of bins.
inline std::string CheckGroupedPacking(const GroupingCase& gc, const GroupedPacking& packing) {
  std::vector<int> seen;
  for (const auto& bin : packing.bins) {
    Rational load = 0;
    for (int i : bin) {
      load += gc.weights[i];
      seen.push_back(i);
    }
    if (load > gc.capacity) return "bin over capacity";
  }
  std::sort(seen.begin(), seen.end());
  if (seen != gc.set) return "bins do not hold exactly the set";
  const double mu = gc.mu.get_d();
  const double bound = (1.0 - gc.delta.get_d() + 3.0 * mu) * gc.bins +
                       4.0 * std::pow(4.0, 1.0 / (mu * mu)) + 2.0 * gc.lambda.get_d();
  if (packing.bins.size() > bound) return "too many bins";
  const double typed_bound = std::pow(4.0, 1.0 / (mu * mu)) + (1.0 - gc.delta.get_d()) * gc.bins;
  if (packing.typed_bins > typed_bound) return "too many typed bins";
  return "";
}

struct DecompositionCase {
  std::vector<Rational> x;
  std::vector<std::vector<Rational>> vectors;
  std::vector<LinearConstraint> constraints;
};

inline Rational RandomFraction(Rng& rng) {
  const int den = rng.UniformInt(1, 12);
  return Frac(rng.UniformInt(0, den), den);
}

inline DecompositionCase RandomDecomposition(Rng& rng, int max_items, int max_vectors) {
  DecompositionCase dc;
  const int n = rng.UniformInt(1, max_items);
  const int p = rng.UniformInt(1, max_vectors);
  dc.vectors.assign(p, std::vector<Rational>(n, 0));
  dc.x.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    if (rng.Uniform() < 0.1) continue;
    const Rational xi = rng.Uniform() < 0.2 ? Rational(1) : RandomFraction(rng);
    dc.x[i] = xi;
    if (xi == 0) continue;
    // Split x_i among a few random vectors.
    const int parts = rng.UniformInt(1, std::min(p, 4));
    std::vector<Rational> cuts{Rational(0), Rational(1)};
    for (int k = 1; k < parts; ++k) cuts.push_back(RandomFraction(rng));
    std::sort(cuts.begin(), cuts.end());
    for (int k = 0; k < parts; ++k) {
      const int r = rng.UniformInt(0, p - 1);
      dc.vectors[r][i] += xi * (cuts[k + 1] - cuts[k]);
    }
  }
  for (int r = 0; r < p; ++r) {
    LinearConstraint c;
    for (int i = 0; i < n; ++i) {
      c.coeffs.push_back(Rational(rng.Uniform() < 0.15 ? 0 : rng.UniformInt(1, 6)));
    }
    c.bound = 0;
    for (int i = 0; i < n; ++i) c.bound += c.coeffs[i] * dc.vectors[r][i];
    if (rng.Uniform() < 0.3) c.bound += RandomFraction(rng);
    dc.constraints.push_back(std::move(c));
  }
  return dc;
}

inline bool SemiSatisfies(const std::vector<Rational>& v, const LinearConstraint& c) {
  Rational total = 0;
  for (size_t i = 0; i < v.size(); ++i) total += c.coeffs[i] * v[i];
  if (total <= c.bound) return true;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0 && total - c.coeffs[i] * v[i] <= c.bound) return true;
  }
  return false;
}

// The loop invariants of the perfect-decomposition algorithm.
inline std::string CheckDecompositionState(const DecompositionCase& dc,
                                           const std::vector<std::vector<Rational>>& lam,
                                           bool require_perfect) {
  const size_t n = dc.x.size();
  std::vector<int> owners(n, 0);
  for (size_t i = 0; i < n; ++i) {
    Rational sum = 0;
    for (size_t r = 0; r < lam.size(); ++r) {
      if (lam[r][i] < 0) return "negative entry";
      if (lam[r][i] != 0 && dc.vectors[r][i] == 0) return "support grew";
      if (lam[r][i] != 0) ++owners[i];
      sum += lam[r][i];
    }
    if (sum != dc.x[i]) return "not a decomposition of x";
    if (require_perfect && owners[i] > 1) return "not perfect";
  }
  for (size_t r = 0; r < lam.size(); ++r) {
    Rational total = 0;
    bool perfect = true;
    for (size_t i = 0; i < n; ++i) {
      total += dc.constraints[r].coeffs[i] * lam[r][i];
      if (lam[r][i] != 0 && owners[i] > 1) perfect = false;
    }
    const bool satisfied = total <= dc.constraints[r].bound;
    if (!satisfied && !(perfect && SemiSatisfies(lam[r], dc.constraints[r]))) {
      return "vector " + std::to_string(r) + " neither satisfies nor is perfect and semi-satisfying";
    }
  }
  return "";
}

struct AssociationCase {
  std::vector<Rational> weights;
  BlockPartition blocks;
  std::vector<ExactBlockPoint> points;
  std::vector<Rational> x;
  Rational mu;
};

inline AssociationCase RandomAssociationCase(Rng& rng, int max_items, int max_blocks) {
  AssociationCase ac;
  const int n = rng.UniformInt(1, max_items);
  for (int i = 0; i < n; ++i) ac.weights.push_back(Rational(rng.UniformInt(1, 60)));
  const int ell = rng.UniformInt(1, max_blocks);
  std::vector<Rational> capacities;
  std::vector<int> block_of_bin;
  for (int j = 0; j < ell; ++j) {
    Block block;
    block.capacity = rng.UniformInt(20, 100);
    const int size = rng.UniformInt(1, 6);
    for (int b = 0; b < size; ++b) {
      block.bins.push_back(static_cast<int>(capacities.size()));
      capacities.push_back(block.capacity);
      block_of_bin.push_back(j);
    }
    ac.blocks.push_back(std::move(block));
  }
  const Rational mus[] = {Rational(1, 2), Rational(1, 4), Rational(1, 8)};
  ac.mu = mus[rng.UniformInt(0, 2)];
  const int r = rng.UniformInt(1, 4);
  auto packings = RandomPackings(ac.weights, capacities, r, rng);
  const Rational share = Rational(4, 5) / r;
  ac.points.assign(ell, ExactBlockPoint{std::vector<Rational>(n, 0), {}});
  std::vector<std::map<std::vector<int>, Rational>> configs(ell);
  for (const auto& packing : packings) {
    for (size_t b = 0; b < packing.size(); ++b) {
      const int j = block_of_bin[b];
      for (int i : packing[b]) ac.points[j].y[i] += share;
      if (!packing[b].empty()) configs[j][packing[b]] += share;
    }
  }
  for (int j = 0; j < ell; ++j) {
    for (auto& [items, w] : configs[j]) ac.points[j].z.push_back({items, w});
  }
  ac.x.assign(n, 0);
  for (int j = 0; j < ell; ++j) {
    for (int i = 0; i < n; ++i) ac.x[i] += ac.points[j].y[i];
  }
  return ac;
}

// The three block-association properties, checked from scratch.
inline std::string CheckAssociation(const AssociationCase& ac, const BlockAssociation& assoc) {
  const int n = static_cast<int>(ac.x.size());
  const int ell = static_cast<int>(ac.blocks.size());
  std::vector<int> owner(n, -1);
  for (int j = 0; j < ell; ++j) {
    for (int i : assoc.sets[j]) {
      if (owner[i] >= 0) return "item in two sets";
      owner[i] = j;
      if (ac.points[j].y[i] == 0) return "set not inside supp(y^j)";
    }
  }
  for (int i = 0; i < n; ++i) {
    if ((ac.x[i] != 0) != (owner[i] >= 0)) return "sets do not partition supp(x)";
  }
  // Exists an item whose removal brings the weighted sum under the bound.
  auto semi = [&](const std::vector<int>& items, const Rational& bound) {
    Rational total = 0;
    for (int i : items) total += ac.x[i] * ac.weights[i];
    if (total <= bound) return true;
    for (int i : items) {
      if (total - ac.x[i] * ac.weights[i] <= bound) return true;
    }
    return false;
  };
  for (int j = 0; j < ell; ++j) {
    const Block& block = ac.blocks[j];
    const std::vector<Rational>& y = ac.points[j].y;
    if (block.size() == 1) {
      Rational bound = 0;
      for (int i = 0; i < n; ++i) bound += y[i] * ac.weights[i];
      if (!semi(assoc.sets[j], bound)) return "singleton block weight property fails";
      continue;
    }
    const Rational light_cap = ac.mu * block.capacity;
    std::vector<int> heavy;
    Rational bound = 0;
    for (int i = 0; i < n; ++i) {
      if (ac.weights[i] <= light_cap) {
        bound += y[i] * ac.weights[i];
      } else if (ac.weights[i] <= block.capacity) {
        heavy.push_back(i);
      }
    }
    std::vector<int> light_in;
    for (int i : assoc.sets[j]) {
      if (ac.weights[i] <= light_cap) light_in.push_back(i);
    }
    if (!semi(light_in, bound)) return "light weight property fails";
    std::stable_sort(heavy.begin(), heavy.end(),
                     [&](int a, int b) { return ac.weights[a] > ac.weights[b]; });
    const Rational threshold = ac.mu * block.size();
    std::set<int> in_set(assoc.sets[j].begin(), assoc.sets[j].end());
    Rational mass = 0, in_group = 0;
    for (size_t k = 0; k < heavy.size(); ++k) {
      const int i = heavy[k];
      mass += y[i];
      if (in_set.count(i)) in_group += ac.x[i];
      if (mass >= threshold || k + 1 == heavy.size()) {
        if (in_group > threshold + 2) return "group cardinality property fails";
        mass = 0;
        in_group = 0;
      }
    }
  }
  return "";
}

}  // namespace mkcp::testing

#endif  // MKCP_TESTS_SUPPORT_H_
