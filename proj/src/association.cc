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

#include "mkcp/association.h"

#include <algorithm>
#include <map>
#include <string>

#include "mkcp/errors.h"

namespace mkcp {

bool Satisfies(std::span<const Rational> v, const LinearConstraint& constraint) {
  Rational total = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) total += constraint.coeffs[i] * v[i];
  }
  return total <= constraint.bound;
}

int SemiSatisfyWitness(std::span<const Rational> v, const LinearConstraint& constraint) {
  Rational total = 0;
  int best = -1;
  Rational best_term = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    Rational term = constraint.coeffs[i] * v[i];
    total += term;
    if (best < 0 || term > best_term) {
      best = static_cast<int>(i);
      best_term = term;
    }
  }
  if (total <= constraint.bound) return -1;
  if (total - best_term <= constraint.bound) return best;
  return -2;
}

bool IsDecomposition(std::span<const Rational> x,
                     const std::vector<std::vector<Rational>>& vectors) {
  for (size_t i = 0; i < x.size(); ++i) {
    Rational sum = 0;
    for (const auto& v : vectors) {
      if (v[i] < 0 || v[i] > 1) return false;
      sum += v[i];
    }
    if (sum != x[i]) return false;
  }
  return true;
}

bool IsPerfect(const std::vector<std::vector<Rational>>& vectors) {
  if (vectors.empty()) return true;
  for (size_t i = 0; i < vectors[0].size(); ++i) {
    int nonzero = 0;
    for (const auto& v : vectors) nonzero += v[i] != 0;
    if (nonzero > 1) return false;
  }
  return true;
}

int BrokenEdgeCount(const std::vector<std::vector<Rational>>& vectors) {
  if (vectors.empty()) return 0;
  int edges = 0;
  for (size_t i = 0; i < vectors[0].size(); ++i) {
    int nonzero = 0;
    for (const auto& v : vectors) nonzero += v[i] != 0;
    if (nonzero > 1) edges += nonzero;
  }
  return edges;
}

MakePerfectResult MakePerfect(std::span<const Rational> x,
                              std::vector<std::vector<Rational>> vectors,
                              const std::vector<LinearConstraint>& constraints,
                              const IterationObserver& observer) {
  const int n = static_cast<int>(x.size());
  const int p = static_cast<int>(vectors.size());
  if (static_cast<int>(constraints.size()) != p) {
    throw PreconditionError("need one constraint per vector");
  }
  for (int r = 0; r < p; ++r) {
    if (static_cast<int>(vectors[r].size()) != n ||
        static_cast<int>(constraints[r].coeffs.size()) != n) {
      throw PreconditionError("vector dimension mismatch");
    }
    for (const Rational& c : constraints[r].coeffs) {
      if (c < 0) throw PreconditionError("constraint coefficients must be non-negative");
    }
    if (!Satisfies(vectors[r], constraints[r])) {
      throw PreconditionError("vector " + std::to_string(r) + " violates its constraint");
    }
  }
  if (!IsDecomposition(x, vectors)) throw PreconditionError("vectors do not decompose x");

  MakePerfectResult result;
  result.initial_edges = BrokenEdgeCount(vectors);
  auto& lam = vectors;
  while (true) {
    std::vector<char> broken_item(n, 0);
    bool any = false;
    for (int i = 0; i < n; ++i) {
      int nonzero = 0;
      for (int r = 0; r < p; ++r) nonzero += lam[r][i] != 0;
      if (nonzero > 1) {
        broken_item[i] = 1;
        any = true;
      }
    }
    if (!any) break;
    if (++result.iterations > result.initial_edges) {
      throw InvariantError("make_perfect exceeded the initial broken edge count");
    }
    std::vector<std::vector<int>> items_of(p), vectors_of(n);
    for (int r = 0; r < p; ++r) {
      for (int i = 0; i < n; ++i) {
        if (broken_item[i] && lam[r][i] != 0) {
          items_of[r].push_back(i);
          vectors_of[i].push_back(r);
        }
      }
    }

    int leaf = -1;
    for (int r = 0; r < p && leaf < 0; ++r) {
      if (items_of[r].size() == 1) leaf = r;
    }
    if (leaf >= 0) {
      const int i = items_of[leaf][0];
      for (int r = 0; r < p; ++r) lam[r][i] = 0;
      lam[leaf][i] = x[i];
      if (observer) observer(lam);
      continue;
    }

    // Every broken vector has degree >= 2 and so does every broken item, so
    // a walk that never returns along its last edge must close a cycle.
    int start = 0;
    while (!broken_item[start]) ++start;
    std::vector<std::pair<int, int>> path;  // (kind, id): 0 = item, 1 = vector
    std::map<std::pair<int, int>, int> where;
    path.push_back({0, start});
    where[{0, start}] = 0;
    size_t cycle_start = 0;
    while (true) {
      const auto [kind, id] = path.back();
      const int prev = path.size() >= 2 ? path[path.size() - 2].second : -1;
      const std::vector<int>& adj = kind == 0 ? vectors_of[id] : items_of[id];
      int next = -1;
      for (int a : adj) {
        if (a != prev) {
          next = a;
          break;
        }
      }
      if (next < 0) throw InvariantError("broken graph walk got stuck");
      const std::pair<int, int> node{1 - kind, next};
      if (auto it = where.find(node); it != where.end()) {
        cycle_start = static_cast<size_t>(it->second);
        break;
      }
      where[node] = static_cast<int>(path.size());
      path.push_back(node);
    }
    std::vector<std::pair<int, int>> cycle(path.begin() + cycle_start, path.end());
    if (cycle.front().first == 1) std::rotate(cycle.begin(), cycle.begin() + 1, cycle.end());
    const int k = static_cast<int>(cycle.size()) / 2;
    std::vector<int> ci(k), cr(k);
    for (int j = 0; j < k; ++j) {
      ci[j] = cycle[2 * j].second;
      cr[j] = cycle[2 * j + 1].second;
    }
    auto next_item = [&](int j) { return ci[(j + 1) % k]; };
    // a_j nu_j - b_j nu_{j+1} <= 0 for all j (cyclically).
    std::vector<Rational> a(k), b(k), nu(k, 0);
    for (int j = 0; j < k; ++j) {
      a[j] = constraints[cr[j]].coeffs[ci[j]];
      b[j] = constraints[cr[j]].coeffs[next_item(j)];
    }
    int zero_b = -1, zero_a = -1;
    for (int j = 0; j < k; ++j) {
      if (zero_b < 0 && b[j] == 0) zero_b = j;
      if (zero_a < 0 && a[j] == 0) zero_a = j;
    }
    if (zero_b >= 0) {
      nu[(zero_b + 1) % k] = -1;
    } else if (zero_a >= 0) {
      nu[zero_a] = 1;
    } else {
      nu[0] = 1;
      for (int j = 0; j + 1 < k; ++j) nu[j + 1] = a[j] * nu[j] / b[j];
      if (a[k - 1] * nu[k - 1] - b[k - 1] * nu[0] > 0) {
        for (Rational& v : nu) v = -v;
      }
    }
    for (int j = 0; j < k; ++j) {
      if (a[j] * nu[j] - b[j] * nu[(j + 1) % k] > 0) {
        throw InvariantError("cycle direction violates a constraint");
      }
    }
    Rational step = -1;
    auto limit = [&](const Rational& value, const Rational& rate) {
      // value + step * rate >= 0 with rate < 0.
      if (rate < 0) {
        Rational s = value / -rate;
        if (step < 0 || s < step) step = s;
      }
    };
    for (int j = 0; j < k; ++j) {
      limit(lam[cr[j]][ci[j]], nu[j]);
      limit(lam[cr[j]][next_item(j)], -nu[(j + 1) % k]);
    }
    if (step <= 0) throw InvariantError("cycle step is not positive");
    for (int j = 0; j < k; ++j) {
      lam[cr[j]][ci[j]] += step * nu[j];
      lam[cr[j]][next_item(j)] -= step * nu[(j + 1) % k];
    }
    if (observer) observer(lam);
  }
  result.vectors = std::move(vectors);
  return result;
}

BlockAssociation BlockAssociate(std::span<const Rational> x,
                                const std::vector<ExactBlockPoint>& points,
                                const BlockPartition& blocks,
                                std::span<const Rational> weights,
                                const Rational& mu) {
  const int n = static_cast<int>(x.size());
  const int ell = static_cast<int>(blocks.size());
  if (static_cast<int>(points.size()) != ell) throw PreconditionError("one point per block needed");

  std::vector<std::vector<Rational>> vectors;
  std::vector<LinearConstraint> constraints;
  std::vector<int> owner;   // block of each vector
  std::vector<int> light_vector(ell, -1);
  BlockAssociation assoc;
  assoc.groupings.resize(ell);

  auto add = [&](int j, const std::vector<char>& members, bool unit) {
    std::vector<Rational> gamma(n, 0);
    LinearConstraint c;
    c.coeffs.assign(n, 0);
    c.bound = 0;
    for (int i = 0; i < n; ++i) {
      if (!members[i]) continue;
      c.coeffs[i] = unit ? Rational(1) : weights[i];
      gamma[i] = points[j].y[i];
      c.bound += c.coeffs[i] * gamma[i];
    }
    vectors.push_back(std::move(gamma));
    constraints.push_back(std::move(c));
    owner.push_back(j);
    return static_cast<int>(vectors.size()) - 1;
  };

  for (int j = 0; j < ell; ++j) {
    const Block& block = blocks[j];
    const std::vector<Rational>& y = points[j].y;
    std::vector<char> covered(n, 0);
    if (block.size() > 1) {
      assoc.groupings[j] = ComputeGrouping(y, weights, block.capacity, block.size(), mu);
      const Classification cls = Classify(weights, block.capacity, mu);
      std::vector<char> light(n, 0);
      for (int i : cls.light) light[i] = 1;
      light_vector[j] = add(j, light, false);
      for (const auto& group : assoc.groupings[j].groups) {
        std::vector<char> members(n, 0);
        for (int i : group) members[i] = 1;
        add(j, members, true);
        for (int i : group) covered[i] = 1;
      }
      for (int i : cls.light) covered[i] = 1;
    } else {
      std::vector<char> fits(n, 0);
      for (int i = 0; i < n; ++i) fits[i] = weights[i] <= block.capacity;
      light_vector[j] = add(j, fits, false);
      covered = fits;
    }
    for (int i = 0; i < n; ++i) {
      if (y[i] != 0 && !covered[i]) {
        throw PreconditionError("block " + std::to_string(j) + " carries item " +
                                std::to_string(i) + " that fits no bin of the block");
      }
    }
  }

  MakePerfectResult perfect = MakePerfect(x, std::move(vectors), constraints);
  assoc.iterations = perfect.iterations;
  assoc.sets.assign(ell, {});
  assoc.exceptional.assign(ell, -1);
  for (size_t r = 0; r < perfect.vectors.size(); ++r) {
    for (int i = 0; i < n; ++i) {
      if (perfect.vectors[r][i] != 0) assoc.sets[owner[r]].push_back(i);
    }
  }
  for (int j = 0; j < ell; ++j) {
    std::sort(assoc.sets[j].begin(), assoc.sets[j].end());
    const int r = light_vector[j];
    const int witness = SemiSatisfyWitness(perfect.vectors[r], constraints[r]);
    if (witness == -2) throw InvariantError("make_perfect output does not semi-satisfy");
    assoc.exceptional[j] = witness;
  }
  return assoc;
}

}  // namespace mkcp
