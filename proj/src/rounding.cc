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

#include "mkcp/rounding.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "mkcp/errors.h"
#include "mkcp/rng.h"

namespace mkcp {
namespace {

constexpr double kSnap = 1e-12;

bool IsFractional(const Rational& v) { return v > 0 && v < 1; }

std::vector<double> ToPoint(std::span<const double> base, std::span<const int> group,
                            const std::vector<Rational>& values) {
  std::vector<double> out(base.begin(), base.end());
  for (size_t g = 0; g < group.size(); ++g) out[group[g]] = values[g].get_d();
  return out;
}

int CountFractional(const std::vector<double>& x) {
  int count = 0;
  for (double v : x) count += v > 0.0 && v < 1.0;
  return count;
}

struct Comparison {
  bool first = true;
  bool ambiguous = false;
};

// Decides whether F(a) >= F(b).
Comparison CompareEndpoints(const Objective& f, const std::vector<double>& a,
                            const std::vector<double>& b, uint64_t seed,
                            const PipageOptions& options) {
  Comparison cmp;
  if (f.modular()) {
    Rational offset;
    std::vector<Rational> profits;
    f.LinearForm(&offset, &profits);
    Rational diff = 0;
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) diff += (RationalFromDouble(a[i]) - RationalFromDouble(b[i])) * profits[i];
    }
    cmp.first = diff >= 0;
    return cmp;
  }
  if (std::max(CountFractional(a), CountFractional(b)) <= options.exact_limit) {
    cmp.first = ExactMultilinear(f, a) >= ExactMultilinear(f, b);
    return cmp;
  }
  const int n = static_cast<int>(a.size());
  const int samples = std::max(2, options.samples);
  Rng rng(seed);
  std::vector<char> ma(n), mb(n);
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < n; ++i) {
      const double u = rng.Uniform();
      ma[i] = u < a[i];
      mb[i] = u < b[i];
    }
    const double d = f.EvaluateMask(ma) - f.EvaluateMask(mb);
    sum += d;
    sum_sq += d * d;
  }
  const double mean = sum / samples;
  const double var = std::max(0.0, (sum_sq - samples * mean * mean) / (samples - 1));
  const double half = 1.96 * std::sqrt(var / samples);
  cmp.first = mean >= 0.0;
  cmp.ambiguous = std::abs(mean) <= half;
  return cmp;
}

void AddScaled(const FractionalPoint& v, double factor, FractionalPoint* acc,
               std::vector<std::vector<std::map<std::vector<int>, double>>>* configs) {
  const int n = static_cast<int>(v.x.size());
  if (acc->x.empty()) {
    acc->x.assign(n, 0.0);
    acc->blocks.resize(v.blocks.size());
    configs->resize(v.blocks.size());
    for (size_t t = 0; t < v.blocks.size(); ++t) {
      acc->blocks[t].resize(v.blocks[t].size());
      (*configs)[t].resize(v.blocks[t].size());
      for (BlockPoint& bp : acc->blocks[t]) bp.y.assign(n, 0.0);
    }
  }
  for (int i = 0; i < n; ++i) acc->x[i] += factor * v.x[i];
  for (size_t t = 0; t < v.blocks.size(); ++t) {
    for (size_t j = 0; j < v.blocks[t].size(); ++j) {
      const BlockPoint& bp = v.blocks[t][j];
      for (int i = 0; i < n; ++i) acc->blocks[t][j].y[i] += factor * bp.y[i];
      for (const WeightedConfig& c : bp.z) (*configs)[t][j][c.items] += factor * c.weight;
    }
  }
}

void FinishConfigs(const std::vector<std::vector<std::map<std::vector<int>, double>>>& configs,
                   FractionalPoint* point) {
  for (size_t t = 0; t < configs.size(); ++t) {
    for (size_t j = 0; j < configs[t].size(); ++j) {
      ConfigWeights& z = point->blocks[t][j].z;
      z.clear();
      for (const auto& [items, w] : configs[t][j]) {
        if (w > 0.0) z.push_back({items, std::min(w, 1.0)});
      }
    }
  }
  for (double& v : point->x) v = std::clamp(v, 0.0, 1.0);
}

std::vector<double> ClippedWeights(const std::vector<double>& w) {
  std::vector<double> c(w.size());
  for (size_t i = 0; i < w.size(); ++i) c[i] = std::max(0.0, w[i]);
  return c;
}

void CheckOracleOutput(const FractionalPoint& v, int n) {
  if (static_cast<int>(v.x.size()) != n) {
    throw PreconditionError("linear oracle dimension does not match the objective");
  }
}

}  // namespace

PipageResult Pipage(std::span<const double> x, const Objective& f,
                    std::span<const int> group, std::span<const Rational> costs,
                    uint64_t seed, const PipageOptions& options) {
  const int n = static_cast<int>(x.size());
  if (f.size() != n) throw PreconditionError("point dimension does not match the objective");
  if (costs.size() != group.size()) throw PreconditionError("need one cost per group item");
  std::vector<char> seen(n, 0);
  for (size_t g = 0; g < group.size(); ++g) {
    const int i = group[g];
    if (i < 0 || i >= n) throw ReferenceError("group item " + std::to_string(i) + " out of range");
    if (seen[i]) throw PreconditionError("group lists item " + std::to_string(i) + " twice");
    seen[i] = 1;
    if (costs[g] < 0) throw PreconditionError("negative pipage cost");
  }
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) throw PreconditionError("pipage point outside [0,1]");
  }

  const int m = static_cast<int>(group.size());
  std::vector<Rational> values(m);
  for (int g = 0; g < m; ++g) values[g] = RationalFromDouble(x[group[g]]);

  PipageResult result;
  auto fractional = [&]() {
    std::vector<int> out;
    for (int g = 0; g < m; ++g) {
      if (IsFractional(values[g])) out.push_back(g);
    }
    return out;
  };
  for (std::vector<int> frac = fractional(); !frac.empty(); frac = fractional()) {
    const uint64_t step_seed = DeriveSeed(seed, "pipage", static_cast<uint64_t>(result.steps));
    if (frac.size() == 1) {
      const int g = frac[0];
      std::vector<Rational> up = values, down = values;
      up[g] = 1;
      down[g] = 0;
      Comparison cmp = CompareEndpoints(f, ToPoint(x, group, up), ToPoint(x, group, down),
                                        step_seed, options);
      result.ambiguous += cmp.ambiguous;
      values = cmp.first ? up : down;
      result.i_star = group[g];
      ++result.steps;
      break;
    }
    const int gi = frac[0], gj = frac[1];
    Rational di = costs[gj], dj = -costs[gi];
    if (di == 0 && dj == 0) {
      di = 1;
      dj = -1;
    }
    // Largest step along +d and along -d keeping both coordinates in [0,1].
    Rational forward = -1, backward = -1;
    auto limit = [](Rational* bound, const Rational& candidate) {
      if (*bound < 0 || candidate < *bound) *bound = candidate;
    };
    for (auto [g, d] : {std::pair<int, Rational>{gi, di}, std::pair<int, Rational>{gj, dj}}) {
      if (d > 0) {
        limit(&forward, (1 - values[g]) / d);
        limit(&backward, values[g] / d);
      } else if (d < 0) {
        limit(&forward, values[g] / -d);
        limit(&backward, (1 - values[g]) / -d);
      }
    }
    std::vector<Rational> a = values, b = values;
    a[gi] += forward * di;
    a[gj] += forward * dj;
    b[gi] -= backward * di;
    b[gj] -= backward * dj;
    Comparison cmp = CompareEndpoints(f, ToPoint(x, group, a), ToPoint(x, group, b),
                                      step_seed, options);
    result.ambiguous += cmp.ambiguous;
    values = cmp.first ? a : b;
    ++result.steps;
  }
  result.x = ToPoint(x, group, values);
  return result;
}

std::vector<int> SampleSet(std::span<const double> x, double delta,
                           const AdditionalConstraint& constraint, uint64_t seed) {
  const int n = static_cast<int>(x.size());
  if (!(delta >= 0.0 && delta < 1.0)) throw PreconditionError("delta must lie in [0,1)");
  ValidateAdditional(constraint, n);
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) throw PreconditionError("sampling point outside [0,1]");
  }
  if (!InHull(constraint, x, 1e-9)) throw PreconditionError("sampling point outside P(I)");
  const double scale = (1.0 - delta) * (1.0 - delta);
  Rng rng(DeriveSeed(seed, "sample"));
  std::vector<double> p(n);
  for (int i = 0; i < n; ++i) p[i] = scale * x[i];

  std::vector<std::vector<int>> classes;
  if (std::holds_alternative<FreeConstraint>(constraint)) {
    std::vector<int> set;
    for (int i = 0; i < n; ++i) {
      if (rng.Bernoulli(p[i])) set.push_back(i);
    }
    return set;
  } else if (std::holds_alternative<UniformMatroid>(constraint)) {
    classes.emplace_back();
    for (int i = 0; i < n; ++i) classes[0].push_back(i);
  } else {
    const auto& pm = std::get<PartitionMatroid>(constraint);
    classes.resize(pm.caps.size());
    for (int i = 0; i < n; ++i) classes[pm.item_class[i]].push_back(i);
  }

  auto snap = [](double* v) {
    if (*v < kSnap) *v = 0.0;
    if (*v > 1.0 - kSnap) *v = 1.0;
  };
  std::vector<char> in(n, 0);
  for (const auto& items : classes) {
    int open = -1;
    for (int i : items) {
      snap(&p[i]);
      if (p[i] == 0.0 || p[i] == 1.0) continue;
      if (open < 0) {
        open = i;
        continue;
      }
      // Pairwise dependent rounding of (open, i); the sum is preserved and
      // each coordinate keeps its expectation.
      const double alpha = std::min(1.0 - p[open], p[i]);
      const double beta = std::min(p[open], 1.0 - p[i]);
      if (rng.Uniform() * (alpha + beta) < beta) {
        p[open] += alpha;
        p[i] -= alpha;
      } else {
        p[open] -= beta;
        p[i] += beta;
      }
      snap(&p[open]);
      snap(&p[i]);
      const bool open_done = p[open] == 0.0 || p[open] == 1.0;
      const bool i_done = p[i] == 0.0 || p[i] == 1.0;
      if (open_done) open = i_done ? -1 : i;
    }
    if (open >= 0) p[open] = rng.Bernoulli(p[open]) ? 1.0 : 0.0;
    for (int i : items) in[i] = p[i] == 1.0;
  }
  std::vector<int> set;
  for (int i = 0; i < n; ++i) {
    if (in[i]) set.push_back(i);
  }
  if (!IsMember(constraint, set)) throw InvariantError("dependent rounding left the matroid");
  return set;
}

LinearOracle InstanceOracle(const Instance& instance,
                            const std::vector<BlockPartition>& partitions,
                            double gamma, double eps) {
  return [instance, partitions, gamma, eps](std::span<const double> c) {
    return InstanceLpOptimize(instance, partitions, gamma, c, eps);
  };
}

std::vector<double> EstimateMarginals(const Objective& f, std::span<const double> x,
                                      int samples, uint64_t seed) {
  const int n = f.size();
  if (static_cast<int>(x.size()) != n) throw PreconditionError("point dimension mismatch");
  std::vector<double> w(n, 0.0);
  if (f.modular()) {
    Rational offset;
    std::vector<Rational> profits;
    f.LinearForm(&offset, &profits);
    for (int i = 0; i < n; ++i) w[i] = (1.0 - x[i]) * profits[i].get_d();
    return w;
  }
  if (samples <= 0) throw PreconditionError("need at least one sample");
  Rng rng(DeriveSeed(seed, "marginals"));
  std::vector<char> mask(n);
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < n; ++i) mask[i] = rng.Uniform() < x[i];
    const double base = f.EvaluateMask(mask);
    for (int i = 0; i < n; ++i) {
      if (mask[i]) continue;
      mask[i] = 1;
      w[i] += f.EvaluateMask(mask) - base;
      mask[i] = 0;
    }
  }
  for (double& v : w) v /= samples;
  return w;
}

FractionalPoint ContinuousGreedy(const LinearOracle& oracle, const Objective& f,
                                 uint64_t seed, const GreedyOptions& options) {
  if (!f.monotone()) {
    throw ContractError("continuous greedy needs a monotone objective; use the measured variant");
  }
  if (options.steps < 1) throw PreconditionError("continuous greedy needs at least one step");
  const int n = f.size();
  if (f.modular()) {
    // F is linear, so one LP solve is the whole optimization.
    std::vector<double> zero(n, 0.0);
    FractionalPoint v = oracle(ClippedWeights(EstimateMarginals(f, zero, 1, seed)));
    CheckOracleOutput(v, n);
    return v;
  }
  FractionalPoint acc;
  std::vector<std::vector<std::map<std::vector<int>, double>>> configs;
  std::vector<double> x(n, 0.0);
  const double step = 1.0 / options.steps;
  for (int t = 0; t < options.steps; ++t) {
    std::vector<double> w =
        EstimateMarginals(f, x, options.samples, DeriveSeed(seed, "greedy", t));
    FractionalPoint v = oracle(ClippedWeights(w));
    CheckOracleOutput(v, n);
    AddScaled(v, step, &acc, &configs);
    for (int i = 0; i < n; ++i) x[i] = std::min(1.0, acc.x[i]);
  }
  FinishConfigs(configs, &acc);
  return acc;
}

FractionalPoint MeasuredContinuousGreedy(const LinearOracle& oracle,
                                         const Objective& f, uint64_t seed,
                                         const GreedyOptions& options) {
  if (options.steps < 1) throw PreconditionError("continuous greedy needs at least one step");
  const int n = f.size();
  FractionalPoint acc;
  std::vector<std::vector<std::map<std::vector<int>, double>>> configs;
  std::vector<double> x(n, 0.0);
  const double step = 1.0 / options.steps;
  for (int t = 0; t < options.steps; ++t) {
    std::vector<double> w =
        EstimateMarginals(f, x, options.samples, DeriveSeed(seed, "measured", t));
    FractionalPoint v = oracle(ClippedWeights(w));
    CheckOracleOutput(v, n);
    AddScaled(v, step, &acc, &configs);
    for (int i = 0; i < n; ++i) x[i] = std::min(1.0, x[i] + step * v.x[i] * (1.0 - x[i]));
  }
  FinishConfigs(configs, &acc);
  // x is dominated by the average of the vertices; shrink the witnesses item
  // by item to match it.
  for (int i = 0; i < n; ++i) {
    const double factor = acc.x[i] > 0.0 ? std::min(1.0, x[i] / acc.x[i]) : 0.0;
    for (auto& per_t : acc.blocks) {
      for (BlockPoint& bp : per_t) bp.y[i] *= factor;
    }
    acc.x[i] *= factor;
  }
  return acc;
}

}  // namespace mkcp
