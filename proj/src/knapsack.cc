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

#include "mkcp/knapsack.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "mkcp/errors.h"

namespace mkcp {
namespace {

// Integer images of the weights over a common denominator, when they fit.
bool ScaleToIntegers(std::span<const Rational> weights, std::span<const int> items,
                     const Rational& capacity, std::vector<int64_t>* scaled,
                     int64_t* scaled_capacity) {
  mpz_class lcm = capacity.get_den();
  for (int i : items) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), weights[i].get_den().get_mpz_t());
  }
  const mpz_class limit = mpz_class(1) << 52;
  mpz_class cap = capacity.get_num() * (lcm / capacity.get_den());
  if (cap > limit) return false;
  scaled->clear();
  for (int i : items) {
    mpz_class w = weights[i].get_num() * (lcm / weights[i].get_den());
    if (w > limit) return false;
    scaled->push_back(w.get_si());
  }
  *scaled_capacity = cap.get_si();
  return true;
}

template <typename W>
std::vector<int> ProfitDp(const std::vector<W>& w, const W& capacity,
                          const std::vector<int>& scaled_profit, const W& infinity) {
  const int n = static_cast<int>(w.size());
  const int total = std::accumulate(scaled_profit.begin(), scaled_profit.end(), 0);
  std::vector<W> min_weight(total + 1, infinity);
  min_weight[0] = 0;
  std::vector<std::vector<bool>> take(n, std::vector<bool>(total + 1, false));
  int reach = 0;
  for (int k = 0; k < n; ++k) {
    const int pk = scaled_profit[k];
    if (pk == 0) continue;
    for (int p = reach + pk; p >= pk; --p) {
      if (min_weight[p - pk] == infinity) continue;
      W candidate = min_weight[p - pk] + w[k];
      if (candidate > capacity) continue;
      if (min_weight[p] == infinity || candidate < min_weight[p]) {
        min_weight[p] = candidate;
        take[k][p] = true;
      }
    }
    reach += pk;
  }
  int best = 0;
  for (int p = total; p > 0; --p) {
    if (!(min_weight[p] == infinity)) {
      best = p;
      break;
    }
  }
  std::vector<int> chosen;
  for (int k = n - 1, p = best; k >= 0 && p > 0; --k) {
    if (take[k][p]) {
      chosen.push_back(k);
      p -= scaled_profit[k];
    }
  }
  return chosen;
}

}  // namespace

std::vector<int> KnapsackFptas(std::span<const Rational> weights,
                               std::span<const double> profits,
                               const Rational& capacity, double eps) {
  std::vector<int> all(weights.size());
  std::iota(all.begin(), all.end(), 0);
  return KnapsackFptas(weights, profits, all, capacity, eps);
}

std::vector<int> KnapsackFptas(std::span<const Rational> weights,
                               std::span<const double> profits,
                               std::span<const int> eligible,
                               const Rational& capacity, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("FPTAS needs eps in (0,1)");
  std::vector<int> items;
  double pmax = 0.0;
  for (int i : eligible) {
    if (profits[i] > 0.0 && weights[i] <= capacity) {
      items.push_back(i);
      pmax = std::max(pmax, profits[i]);
    }
  }
  if (items.empty()) return {};
  const int n = static_cast<int>(items.size());
  const double unit = eps * pmax / n;
  std::vector<int> scaled_profit(n);
  for (int k = 0; k < n; ++k) {
    scaled_profit[k] = static_cast<int>(std::floor(profits[items[k]] / unit));
  }

  std::vector<int> picked;
  std::vector<int64_t> w64;
  int64_t cap64 = 0;
  if (ScaleToIntegers(weights, items, capacity, &w64, &cap64)) {
    picked = ProfitDp<int64_t>(w64, cap64, scaled_profit,
                               std::numeric_limits<int64_t>::max());
  } else {
    std::vector<Rational> wq;
    for (int i : items) wq.push_back(weights[i]);
    picked = ProfitDp<Rational>(wq, capacity, scaled_profit, Rational(-1));
  }

  std::vector<char> in(n, 0);
  Rational load = 0;
  for (int k : picked) {
    in[k] = 1;
    load += weights[items[k]];
  }
  // Fill with whatever still fits; never hurts the guarantee.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return profits[items[a]] > profits[items[b]];
  });
  for (int k : order) {
    if (in[k]) continue;
    if (load + weights[items[k]] <= capacity) {
      in[k] = 1;
      load += weights[items[k]];
    }
  }
  std::vector<int> result;
  for (int k = 0; k < n; ++k) {
    if (in[k]) result.push_back(items[k]);
  }
  return result;
}

}  // namespace mkcp
