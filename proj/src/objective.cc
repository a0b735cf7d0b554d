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

#include "mkcp/objective.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include "mkcp/errors.h"
#include "mkcp/rng.h"

namespace mkcp {

struct Objective::Data {
  ObjectiveSpec spec;
  int num_items = 0;
  bool modular = false;
  bool monotone = false;
  // Double mirrors for the hot paths.
  double offset = 0.0;
  std::vector<double> weights;  // profits, element weights, edge weights or table
  std::vector<int> vertex_item;  // cut only
};

namespace {

template <typename T>
T Convert(const Rational& r) {
  if constexpr (std::is_same_v<T, double>) {
    return r.get_d();
  } else {
    return r;
  }
}

int SpecSize(const ObjectiveSpec& spec) {
  return std::visit(
      [](const auto& s) -> int {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ModularSpec>) {
          return static_cast<int>(s.profits.size());
        } else if constexpr (std::is_same_v<S, CoverageSpec>) {
          return static_cast<int>(s.covers.size());
        } else if constexpr (std::is_same_v<S, CutSpec>) {
          return static_cast<int>(s.item_vertex.size());
        } else {
          return s.num_items;
        }
      },
      spec);
}

void CheckTable(const TableSpec& t, bool* monotone, bool* modular) {
  if (t.num_items < 0 || t.num_items > 16) {
    throw ParseError("table objective supports at most 16 items");
  }
  const uint32_t full = 1u << t.num_items;
  if (t.values.size() != full) {
    throw ParseError("table objective needs 2^n = " + std::to_string(full) +
                     " values, got " + std::to_string(t.values.size()));
  }
  for (const Rational& v : t.values) {
    if (v < 0) throw ParseError("table objective has a negative value");
  }
  *monotone = true;
  *modular = true;
  for (uint32_t s = 0; s < full; ++s) {
    Rational additive = t.values[0];
    for (int i = 0; i < t.num_items; ++i) {
      if (s >> i & 1) additive += t.values[1u << i] - t.values[0];
    }
    if (additive != t.values[s]) *modular = false;
    for (int i = 0; i < t.num_items; ++i) {
      if (s >> i & 1) continue;
      const uint32_t si = s | 1u << i;
      if (t.values[si] < t.values[s]) *monotone = false;
      for (int j = i + 1; j < t.num_items; ++j) {
        if (s >> j & 1) continue;
        const uint32_t sj = s | 1u << j;
        if (t.values[si] + t.values[sj] < t.values[si | sj] + t.values[s]) {
          throw ParseError("table objective is not submodular at set mask " +
                           std::to_string(s) + " with items " +
                           std::to_string(i) + "," + std::to_string(j));
        }
      }
    }
  }
}

template <typename T>
T EvaluateRoot(const Objective::Data& d, const std::vector<char>& root);

}  // namespace

Objective::Objective() : Objective(ObjectiveSpec(ModularSpec{})) {}

Objective::Objective(ObjectiveSpec spec) {
  auto data = std::make_shared<Data>();
  data->num_items = SpecSize(spec);
  const int n = data->num_items;
  std::visit(
      [&](auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ModularSpec>) {
          Rational worst = s.offset;
          bool monotone = true;
          for (const Rational& p : s.profits) {
            if (p < 0) {
              worst += p;
              monotone = false;
            }
          }
          if (s.offset < 0 || worst < 0) {
            throw ParseError("modular objective can take negative values");
          }
          data->modular = true;
          data->monotone = monotone;
          data->offset = s.offset.get_d();
          data->weights = ToDoubles(s.profits);
        } else if constexpr (std::is_same_v<S, CoverageSpec>) {
          const int u = static_cast<int>(s.element_weights.size());
          for (const Rational& w : s.element_weights) {
            if (w < 0) throw ParseError("coverage element weight is negative");
          }
          for (int i = 0; i < n; ++i) {
            for (int e : s.covers[i]) {
              if (e < 0 || e >= u) {
                throw ParseError("coverage item " + std::to_string(i) +
                                 " references unknown element " +
                                 std::to_string(e));
              }
            }
          }
          data->monotone = true;
          data->weights = ToDoubles(s.element_weights);
        } else if constexpr (std::is_same_v<S, CutSpec>) {
          if (s.num_vertices < 0) throw ParseError("negative vertex count");
          data->vertex_item.assign(s.num_vertices, -1);
          for (int i = 0; i < n; ++i) {
            const int v = s.item_vertex[i];
            if (v < 0 || v >= s.num_vertices) {
              throw ParseError("cut item " + std::to_string(i) +
                               " maps to unknown vertex");
            }
            if (data->vertex_item[v] != -1) {
              throw ParseError("cut items must map to distinct vertices");
            }
            data->vertex_item[v] = i;
          }
          for (const CutEdge& e : s.edges) {
            if (e.u < 0 || e.u >= s.num_vertices || e.v < 0 ||
                e.v >= s.num_vertices) {
              throw ParseError("cut edge references unknown vertex");
            }
            if (e.weight < 0) throw ParseError("cut edge weight is negative");
            data->weights.push_back(e.weight.get_d());
          }
        } else {
          bool monotone = false, modular = false;
          CheckTable(s, &monotone, &modular);
          data->monotone = monotone;
          data->modular = modular;
          data->weights = ToDoubles(s.values);
        }
      },
      spec);
  data->spec = std::move(spec);
  data_ = std::move(data);
  items_.resize(n);
  for (int i = 0; i < n; ++i) items_[i] = i;
}

std::string_view Objective::kind() const {
  switch (data_->spec.index()) {
    case 0:
      return "modular";
    case 1:
      return "coverage";
    case 2:
      return "cut";
    default:
      return "table";
  }
}

bool Objective::modular() const { return data_->modular; }
bool Objective::monotone() const { return data_->monotone; }
const ObjectiveSpec& Objective::spec() const { return data_->spec; }

void Objective::CheckSet(std::span<const int> set) const {
  for (int i : set) {
    if (i < 0 || i >= size()) {
      throw ReferenceError("unknown item id " + std::to_string(i));
    }
  }
}

void Objective::FillRootMask(std::span<const int> set,
                             std::vector<char>* root) const {
  root->assign(data_->num_items, 0);
  for (int c : committed_) (*root)[c] = 1;
  for (int i : set) (*root)[items_[i]] = 1;
}

namespace {

template <typename T>
T EvaluateRoot(const Objective::Data& d, const std::vector<char>& root) {
  constexpr bool kExact = std::is_same_v<T, Rational>;
  return std::visit(
      [&](const auto& s) -> T {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ModularSpec>) {
          T total = kExact ? T(Convert<T>(s.offset)) : T(d.offset);
          for (int i = 0; i < d.num_items; ++i) {
            if (!root[i]) continue;
            if constexpr (kExact) {
              total += s.profits[i];
            } else {
              total += d.weights[i];
            }
          }
          return total;
        } else if constexpr (std::is_same_v<S, CoverageSpec>) {
          thread_local std::vector<char> covered;
          covered.assign(s.element_weights.size(), 0);
          T total = 0;
          for (int i = 0; i < d.num_items; ++i) {
            if (!root[i]) continue;
            for (int e : s.covers[i]) {
              if (covered[e]) continue;
              covered[e] = 1;
              if constexpr (kExact) {
                total += s.element_weights[e];
              } else {
                total += d.weights[e];
              }
            }
          }
          return total;
        } else if constexpr (std::is_same_v<S, CutSpec>) {
          T total = 0;
          for (size_t k = 0; k < s.edges.size(); ++k) {
            const int a = d.vertex_item[s.edges[k].u];
            const int b = d.vertex_item[s.edges[k].v];
            const bool in_a = a >= 0 && root[a];
            const bool in_b = b >= 0 && root[b];
            if (in_a == in_b) continue;
            if constexpr (kExact) {
              total += s.edges[k].weight;
            } else {
              total += d.weights[k];
            }
          }
          return total;
        } else {
          uint32_t mask = 0;
          for (int i = 0; i < d.num_items; ++i) {
            if (root[i]) mask |= 1u << i;
          }
          if constexpr (kExact) {
            return s.values[mask];
          } else {
            return d.weights[mask];
          }
        }
      },
      d.spec);
}

}  // namespace

Rational Objective::Evaluate(std::span<const int> set) const {
  CheckSet(set);
  thread_local std::vector<char> root;
  FillRootMask(set, &root);
  return EvaluateRoot<Rational>(*data_, root);
}

double Objective::EvaluateDouble(std::span<const int> set) const {
  CheckSet(set);
  thread_local std::vector<char> root;
  FillRootMask(set, &root);
  return EvaluateRoot<double>(*data_, root);
}

double Objective::EvaluateMask(const std::vector<char>& mask) const {
  thread_local std::vector<char> root;
  root.assign(data_->num_items, 0);
  for (int c : committed_) root[c] = 1;
  for (int i = 0; i < size(); ++i) {
    if (mask[i]) root[items_[i]] = 1;
  }
  return EvaluateRoot<double>(*data_, root);
}

Rational Objective::Marginal(std::span<const int> set, int item) const {
  CheckSet(set);
  CheckSet(std::span<const int>(&item, 1));
  if (std::find(set.begin(), set.end(), item) != set.end()) {
    throw PreconditionError("marginal of item " + std::to_string(item) +
                            " that is already in the set");
  }
  std::vector<int> with(set.begin(), set.end());
  with.push_back(item);
  return Evaluate(with) - Evaluate(set);
}

Objective Objective::Restrict(std::span<const int> committed,
                              std::span<const int> survivors) const {
  CheckSet(committed);
  CheckSet(survivors);
  std::vector<char> taken(size(), 0);
  for (int c : committed) taken[c] = 1;
  Objective out = *this;
  for (int c : committed) out.committed_.push_back(items_[c]);
  std::sort(out.committed_.begin(), out.committed_.end());
  out.committed_.erase(std::unique(out.committed_.begin(), out.committed_.end()),
                       out.committed_.end());
  out.items_.clear();
  for (int s : survivors) {
    if (taken[s]) {
      throw PreconditionError("survivor " + std::to_string(s) +
                              " is also committed");
    }
    out.items_.push_back(items_[s]);
  }
  return out;
}

void Objective::LinearForm(Rational* offset,
                           std::vector<Rational>* profits) const {
  if (!modular()) throw ContractError("objective is not modular");
  const std::vector<int> none;
  *offset = Evaluate(none);
  profits->assign(size(), 0);
  for (int i = 0; i < size(); ++i) {
    const int one[1] = {i};
    (*profits)[i] = Evaluate(one) - *offset;
  }
}

MultilinearEstimate EstimateMultilinear(const Objective& f,
                                        std::span<const double> x,
                                        int samples, uint64_t seed) {
  const int n = f.size();
  if (static_cast<int>(x.size()) != n) {
    throw PreconditionError("point dimension does not match the objective");
  }
  bool integral = true;
  for (double xi : x) {
    if (!(xi >= 0.0 && xi <= 1.0)) {
      throw PreconditionError("point component outside [0,1]");
    }
    if (xi != 0.0 && xi != 1.0) integral = false;
  }
  if (f.modular() || integral) {
    MultilinearEstimate est;
    if (integral && !f.modular()) {
      std::vector<char> mask(n);
      for (int i = 0; i < n; ++i) mask[i] = x[i] == 1.0;
      est.mean = f.EvaluateMask(mask);
    } else {
      Rational offset;
      std::vector<Rational> profits;
      f.LinearForm(&offset, &profits);
      // Exact a + x.p on the double grid of x.
      Rational total = offset;
      for (int i = 0; i < n; ++i) total += Rational(x[i]) * profits[i];
      est.mean = total.get_d();
    }
    return est;
  }
  if (samples <= 0) throw PreconditionError("need at least one sample");
  std::vector<char> mask(n);
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < samples; ++s) {
    Rng rng(DeriveSeed(seed, "multilinear", static_cast<uint64_t>(s)));
    for (int i = 0; i < n; ++i) mask[i] = rng.Uniform() < x[i];
    const double v = f.EvaluateMask(mask);
    sum += v;
    sum_sq += v * v;
  }
  MultilinearEstimate est;
  est.samples = samples;
  est.mean = sum / samples;
  if (samples > 1) {
    const double var =
        std::max(0.0, (sum_sq - samples * est.mean * est.mean) / (samples - 1));
    est.half_width = 1.96 * std::sqrt(var / samples);
  }
  return est;
}

double ExactMultilinear(const Objective& f, std::span<const double> x) {
  const int n = f.size();
  std::vector<int> fractional;
  std::vector<char> mask(n, 0);
  for (int i = 0; i < n; ++i) {
    if (x[i] >= 1.0) {
      mask[i] = 1;
    } else if (x[i] > 0.0) {
      fractional.push_back(i);
    }
  }
  if (fractional.size() > 20) {
    throw LimitError("exact multilinear evaluation limited to 20 fractional coordinates");
  }
  const uint32_t full = 1u << fractional.size();
  double total = 0.0;
  for (uint32_t s = 0; s < full; ++s) {
    double p = 1.0;
    for (size_t k = 0; k < fractional.size(); ++k) {
      const double xi = x[fractional[k]];
      const bool in = s >> k & 1;
      mask[fractional[k]] = in;
      p *= in ? xi : 1.0 - xi;
    }
    if (p == 0.0) continue;
    total += p * f.EvaluateMask(mask);
  }
  return total;
}

std::vector<int> Purge(const Objective& f, std::span<const int> set) {
  std::vector<int> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (f.monotone()) return sorted;
  std::vector<int> kept;
  Rational current = f.Evaluate(kept);
  for (int i : sorted) {
    kept.push_back(i);
    Rational with = f.Evaluate(kept);
    if (with >= current) {
      current = with;
    } else {
      kept.pop_back();
    }
  }
  return kept;
}

}  // namespace mkcp
