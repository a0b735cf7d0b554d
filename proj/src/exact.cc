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

#include "mkcp/exact.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "mkcp/constraint_hull.h"
#include "mkcp/errors.h"
#include "mkcp/simplex.h"

namespace mkcp {

KnapsackOptimum ExactKnapsack(std::span<const Rational> weights,
                              std::span<const Rational> profits,
                              const Rational& capacity) {
  struct State {
    Rational weight;
    Rational profit;
    std::vector<int> items;
  };
  std::vector<State> front{{Rational(0), Rational(0), {}}};
  for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
    if (profits[i] <= 0 || weights[i] > capacity) continue;
    std::vector<State> merged = front;
    for (const State& s : front) {
      if (s.weight + weights[i] > capacity) continue;
      State next{s.weight + weights[i], s.profit + profits[i], s.items};
      next.items.push_back(i);
      merged.push_back(std::move(next));
    }
    std::stable_sort(merged.begin(), merged.end(), [](const State& a, const State& b) {
      if (a.weight != b.weight) return a.weight < b.weight;
      return a.profit > b.profit;
    });
    front.clear();
    for (State& s : merged) {
      if (front.empty() || s.profit > front.back().profit) front.push_back(std::move(s));
    }
  }
  KnapsackOptimum best{front.back().items, front.back().profit};
  return best;
}

int ExactBinPack(std::span<const int> items, std::span<const Rational> weights,
                 const Rational& capacity) {
  const int n = static_cast<int>(items.size());
  if (n > 16) throw LimitError("exact bin packing is limited to 16 items");
  for (int i : items) {
    if (weights[i] > capacity) {
      throw PreconditionError("item " + std::to_string(i) + " is heavier than the bin capacity");
    }
  }
  // (bins used, load of the open bin), lexicographically minimal.
  const unsigned full = (1u << n) - 1;
  std::vector<std::pair<int, Rational>> best(full + 1, {n + 1, Rational(0)});
  best[0] = {0, capacity};
  for (unsigned mask = 0; mask < full; ++mask) {
    const auto& [bins, load] = best[mask];
    if (bins > n) continue;
    for (int k = 0; k < n; ++k) {
      if (mask & (1u << k)) continue;
      const Rational& w = weights[items[k]];
      std::pair<int, Rational> next =
          load + w <= capacity ? std::pair<int, Rational>{bins, load + w}
                               : std::pair<int, Rational>{bins + 1, w};
      auto& slot = best[mask | (1u << k)];
      if (next.first < slot.first || (next.first == slot.first && next.second < slot.second)) {
        slot = std::move(next);
      }
    }
  }
  return best[full].first;
}

namespace {

bool PlaceItems(const MultiKnapsackConstraint& k, const std::vector<int>& order,
                size_t next, std::vector<Rational>* load, Assignment* out) {
  if (next == order.size()) return true;
  const int i = order[next];
  const Rational& w = k.weights[i];
  for (int b = 0; b < k.num_bins(); ++b) {
    if ((*load)[b] + w > k.capacities[b]) continue;
    // Bins with equal capacity and equal load are interchangeable.
    bool seen = false;
    for (int e = 0; e < b && !seen; ++e) {
      seen = k.capacities[e] == k.capacities[b] && (*load)[e] == (*load)[b];
    }
    if (seen) continue;
    (*load)[b] += w;
    out->bins[b].push_back(i);
    if (PlaceItems(k, order, next + 1, load, out)) return true;
    out->bins[b].pop_back();
    (*load)[b] -= w;
  }
  return false;
}

}  // namespace

std::optional<Assignment> FindAssignment(const MultiKnapsackConstraint& k,
                                         std::span<const int> set) {
  std::vector<int> order(set.begin(), set.end());
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (k.weights[a] != k.weights[b]) return k.weights[a] > k.weights[b];
    return a < b;
  });
  Assignment a;
  a.bins.resize(k.num_bins());
  std::vector<Rational> load(k.num_bins(), 0);
  if (!PlaceItems(k, order, 0, &load, &a)) return std::nullopt;
  for (auto& bin : a.bins) std::sort(bin.begin(), bin.end());
  return a;
}

ExactBlockLpResult ExactBlockLp(std::span<const Rational> weights,
                                const Rational& capacity, int bins,
                                std::span<const Rational> c) {
  const int n = static_cast<int>(weights.size());
  std::vector<int> eligible;
  for (int i = 0; i < n; ++i) {
    if (c[i] > 0 && weights[i] <= capacity) eligible.push_back(i);
  }
  const int m = static_cast<int>(eligible.size());
  if (m > 12) throw LimitError("exact block LP is limited to 12 eligible items");
  ExactBlockLpResult result;
  result.value = 0;
  result.y.assign(n, 0);
  if (m == 0 || bins == 0) return result;

  std::vector<std::vector<int>> configs;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    Rational load = 0;
    std::vector<int> items;
    for (int a = 0; a < m; ++a) {
      if (mask & (1u << a)) {
        load += weights[eligible[a]];
        items.push_back(eligible[a]);
      }
    }
    if (load <= capacity) configs.push_back(std::move(items));
  }
  // Rows: cover (m), count (1), y <= 1 (m).
  std::vector<Rational> rhs(2 * m + 1, 0);
  rhs[m] = bins;
  for (int a = 0; a < m; ++a) rhs[m + 1 + a] = 1;
  PackingSimplex<Rational> lp(rhs, Rational(0));
  for (int a = 0; a < m; ++a) {
    std::vector<std::pair<int, Rational>> entries{{a, Rational(1)}, {m + 1 + a, Rational(1)}};
    lp.AddColumn(c[eligible[a]], entries);
  }
  std::vector<int> slot(n, -1);
  for (int a = 0; a < m; ++a) slot[eligible[a]] = a;
  for (const auto& config : configs) {
    std::vector<std::pair<int, Rational>> entries;
    for (int i : config) entries.push_back({slot[i], Rational(-1)});
    entries.push_back({m, Rational(1)});
    lp.AddColumn(Rational(0), entries);
  }
  if (lp.Solve() != LpStatus::kOptimal) throw InvariantError("exact block LP did not converge");
  const std::vector<Rational> primal = lp.Primal();
  result.value = lp.objective();
  for (int a = 0; a < m; ++a) result.y[eligible[a]] = primal[a];
  for (size_t k = 0; k < configs.size(); ++k) {
    if (primal[m + k] > 0) result.z.push_back({configs[k], primal[m + k]});
  }
  return result;
}

Solution BruteForceSolve(const Instance& instance) {
  const int n = instance.num_items();
  const int d = instance.num_constraints();
  if (n > 12) throw LimitError("brute force is limited to 12 items");
  if (d > 2) throw LimitError("brute force is limited to 2 constraints");
  for (const auto& k : instance.constraints) {
    if (k.num_bins() > 4) throw LimitError("brute force is limited to 4 bins per constraint");
  }
  struct Candidate {
    unsigned mask;
    Rational value;
  };
  std::vector<Candidate> candidates;
  std::vector<int> set;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    set.clear();
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) set.push_back(i);
    }
    if (!IsMember(instance.additional, set)) continue;
    candidates.push_back({mask, instance.objective.Evaluate(set)});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
  for (const Candidate& cand : candidates) {
    set.clear();
    for (int i = 0; i < n; ++i) {
      if (cand.mask & (1u << i)) set.push_back(i);
    }
    Solution sol;
    sol.selected = set;
    bool packed = true;
    for (int t = 0; t < d && packed; ++t) {
      std::optional<Assignment> a = FindAssignment(instance.constraints[t], set);
      if (a) {
        sol.assignments.push_back(std::move(*a));
      } else {
        packed = false;
      }
    }
    if (packed) return sol;
  }
  return EmptySolution(instance);
}

}  // namespace mkcp
