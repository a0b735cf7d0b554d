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

#include "mkcp/constraint_hull.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "mkcp/errors.h"

namespace mkcp {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string_view KindName(const AdditionalConstraint& spec) {
  return std::visit(Overloaded{
                        [](const FreeConstraint&) { return "free"; },
                        [](const UniformMatroid&) { return "uniform"; },
                        [](const PartitionMatroid&) { return "partition"; },
                    },
                    spec);
}

void ValidateAdditional(const AdditionalConstraint& spec, int num_items) {
  std::visit(Overloaded{
                 [](const FreeConstraint&) {},
                 [](const UniformMatroid& u) {
                   if (u.rank < 0) throw ParseError("uniform matroid rank is negative");
                 },
                 [&](const PartitionMatroid& p) {
                   if (static_cast<int>(p.item_class.size()) != num_items) {
                     throw ParseError("partition matroid needs one class per item");
                   }
                   for (int c : p.caps) {
                     if (c < 0) throw ParseError("partition matroid cap is negative");
                   }
                   for (int c : p.item_class) {
                     if (c < 0 || c >= static_cast<int>(p.caps.size())) {
                       throw ParseError("partition matroid class " +
                                        std::to_string(c) + " has no cap");
                     }
                   }
                 },
             },
             spec);
}

bool IsMember(const AdditionalConstraint& spec, std::span<const int> set) {
  std::vector<int> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  const int distinct = static_cast<int>(
      std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  sorted.resize(distinct);
  return std::visit(Overloaded{
                        [](const FreeConstraint&) { return true; },
                        [&](const UniformMatroid& u) { return distinct <= u.rank; },
                        [&](const PartitionMatroid& p) {
                          std::vector<int> used(p.caps.size(), 0);
                          for (int i : sorted) {
                            if (++used[p.item_class.at(i)] > p.caps[p.item_class[i]]) {
                              return false;
                            }
                          }
                          return true;
                        },
                    },
                    spec);
}

std::vector<int> HullLinearOptimize(const AdditionalConstraint& spec,
                                    std::span<const double> c) {
  const int n = static_cast<int>(c.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return c[a] > c[b]; });
  std::vector<int> x(n, 0);
  std::vector<int> chosen;
  for (int i : order) {
    if (c[i] <= 0) break;
    chosen.push_back(i);
    if (IsMember(spec, chosen)) {
      x[i] = 1;
    } else {
      chosen.pop_back();
    }
  }
  return x;
}

std::vector<HullRow> HullRows(const AdditionalConstraint& spec, int num_items) {
  std::vector<HullRow> rows;
  std::visit(Overloaded{
                 [](const FreeConstraint&) {},
                 [&](const UniformMatroid& u) {
                   if (u.rank >= num_items) return;
                   HullRow row;
                   row.cap = u.rank;
                   row.items.resize(num_items);
                   std::iota(row.items.begin(), row.items.end(), 0);
                   rows.push_back(std::move(row));
                 },
                 [&](const PartitionMatroid& p) {
                   std::vector<HullRow> by_class(p.caps.size());
                   for (int i = 0; i < num_items; ++i) {
                     by_class[p.item_class[i]].items.push_back(i);
                   }
                   for (size_t k = 0; k < p.caps.size(); ++k) {
                     by_class[k].cap = p.caps[k];
                     if (by_class[k].cap < static_cast<int>(by_class[k].items.size())) {
                       rows.push_back(std::move(by_class[k]));
                     }
                   }
                 },
             },
             spec);
  return rows;
}

bool InHull(const AdditionalConstraint& spec, std::span<const double> x,
            double tol) {
  for (double v : x) {
    if (v < -tol || v > 1.0 + tol) return false;
  }
  for (const HullRow& row : HullRows(spec, static_cast<int>(x.size()))) {
    double sum = 0.0;
    for (int i : row.items) sum += x[i];
    if (sum > row.cap + tol) return false;
  }
  return true;
}

AdditionalConstraint Contract(const AdditionalConstraint& spec,
                              std::span<const int> committed,
                              std::span<const int> survivors) {
  if (!IsMember(spec, committed)) {
    throw PreconditionError("cannot contract by a dependent set");
  }
  return std::visit(
      Overloaded{
          [](const FreeConstraint& f) -> AdditionalConstraint { return f; },
          [&](const UniformMatroid& u) -> AdditionalConstraint {
            return UniformMatroid{u.rank - static_cast<int>(committed.size())};
          },
          [&](const PartitionMatroid& p) -> AdditionalConstraint {
            PartitionMatroid out;
            out.caps = p.caps;
            for (int c : committed) --out.caps[p.item_class[c]];
            for (int s : survivors) out.item_class.push_back(p.item_class[s]);
            return out;
          },
      },
      spec);
}

}  // namespace mkcp
