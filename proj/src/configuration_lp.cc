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

#include "mkcp/configuration_lp.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "mkcp/constraint_hull.h"
#include "mkcp/errors.h"
#include "mkcp/knapsack.h"
#include "mkcp/simplex.h"

namespace mkcp {
namespace {

constexpr double kLpTolerance = 1e-9;
constexpr int kMaxRounds = 2000;

struct EngineBlock {
  int constraint = 0;
  std::span<const Rational> weights;
  Rational capacity;
  int size = 0;
  std::vector<int> eligible;
};

struct ConfigColumn {
  int block = 0;
  std::vector<int> items;
  int column = 0;
};

// Column generation over configuration columns. Returns x (dense over n),
// per-block (y, z) grouped by constraint.
FractionalPoint SolveConfigurationLp(int n, int num_constraints,
                                     const std::vector<EngineBlock>& blocks,
                                     const std::vector<HullRow>& hull,
                                     std::span<const double> c, double eps,
                                     LpStats* stats) {
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("LP needs eps in (0,1)");
  const double eps_pricing = 1.0 - std::sqrt(1.0 - eps);

  std::vector<int> active;
  std::vector<int> slot(n, -1);
  for (int i = 0; i < n; ++i) {
    if (c[i] > 0.0) {
      slot[i] = static_cast<int>(active.size());
      active.push_back(i);
    }
  }
  const int a_count = static_cast<int>(active.size());
  const int b_count = static_cast<int>(blocks.size());
  auto cover_row = [&](int t, int a) { return t * a_count + a; };
  const int count_base = num_constraints * a_count;
  const int xcap_base = count_base + b_count;
  const int hull_base = xcap_base + a_count;

  std::vector<std::vector<int>> active_hull;
  for (const HullRow& row : hull) {
    std::vector<int> items;
    for (int i : row.items) {
      if (slot[i] >= 0) items.push_back(i);
    }
    active_hull.push_back(std::move(items));
  }
  std::vector<double> rhs(hull_base + hull.size(), 0.0);
  for (int b = 0; b < b_count; ++b) rhs[count_base + b] = blocks[b].size;
  for (int a = 0; a < a_count; ++a) rhs[xcap_base + a] = 1.0;
  for (size_t h = 0; h < hull.size(); ++h) rhs[hull_base + h] = hull[h].cap;

  PackingSimplex<double> lp(rhs, kLpTolerance);
  std::vector<std::vector<int>> hull_of(n);
  for (size_t h = 0; h < active_hull.size(); ++h) {
    for (int i : active_hull[h]) hull_of[i].push_back(static_cast<int>(h));
  }
  for (int a = 0; a < a_count; ++a) {
    const int i = active[a];
    std::vector<std::pair<int, double>> entries;
    for (int t = 0; t < num_constraints; ++t) entries.push_back({cover_row(t, a), 1.0});
    entries.push_back({xcap_base + a, 1.0});
    for (int h : hull_of[i]) entries.push_back({hull_base + h, 1.0});
    lp.AddColumn(c[i], entries);
  }

  std::vector<ConfigColumn> configs;
  std::vector<std::set<std::vector<int>>> known(b_count);
  std::vector<double> profits(n, 0.0);
  double upper = 0.0;
  int rounds = 0;
  for (; rounds < kMaxRounds; ++rounds) {
    if (lp.Solve() == LpStatus::kUnbounded) {
      throw InvariantError("configuration LP reported unbounded");
    }
    const std::vector<double> dual = lp.Dual();
    const double value = lp.objective();
    double gap = 0.0;
    int added = 0;
    for (int b = 0; b < b_count; ++b) {
      const EngineBlock& block = blocks[b];
      std::vector<int> eligible;
      for (int i : block.eligible) {
        if (slot[i] < 0) continue;
        profits[i] = dual[cover_row(block.constraint, slot[i])];
        if (profits[i] > 0.0) eligible.push_back(i);
      }
      if (eligible.empty()) continue;
      std::vector<int> config = KnapsackFptas(block.weights, profits, eligible,
                                              block.capacity, eps_pricing);
      std::sort(config.begin(), config.end());
      double found = 0.0;
      for (int i : config) found += profits[i];
      for (int i : eligible) profits[i] = 0.0;
      const double v = dual[count_base + b];
      gap += block.size * std::max(0.0, found / (1.0 - eps_pricing) - v);
      if (found > v * (1.0 + 1e-9) + 1e-10 && known[b].insert(config).second) {
        std::vector<std::pair<int, double>> entries;
        for (int i : config) entries.push_back({cover_row(block.constraint, slot[i]), -1.0});
        entries.push_back({count_base + b, 1.0});
        const int column = lp.AddColumn(0.0, entries);
        configs.push_back({b, std::move(config), column});
        ++added;
      }
    }
    upper = value + gap;
    if (added == 0 || value >= (1.0 - eps) * upper) break;
  }
  if (lp.Solve() == LpStatus::kUnbounded) {
    throw InvariantError("configuration LP reported unbounded");
  }
  const std::vector<double> primal = lp.Primal();

  FractionalPoint point;
  point.x.assign(n, 0.0);
  for (int a = 0; a < a_count; ++a) {
    point.x[active[a]] = std::clamp(primal[a], 0.0, 1.0);
  }
  std::vector<std::vector<double>> coverage(b_count, std::vector<double>(n, 0.0));
  std::vector<ConfigWeights> z(b_count);
  for (const ConfigColumn& col : configs) {
    const double w = std::min(1.0, primal[col.column]);
    if (w <= 1e-12) continue;
    z[col.block].push_back({col.items, w});
    for (int i : col.items) coverage[col.block][i] += w;
  }
  for (auto& cov : coverage) {
    for (double& v : cov) v = std::min(v, 1.0);
  }
  for (int t = 0; t < num_constraints; ++t) {
    std::vector<double> avail(n, 0.0);
    for (int b = 0; b < b_count; ++b) {
      if (blocks[b].constraint != t) continue;
      for (int i = 0; i < n; ++i) avail[i] += coverage[b][i];
    }
    for (int i = 0; i < n; ++i) point.x[i] = std::min(point.x[i], avail[i]);
  }
  point.blocks.resize(num_constraints);
  for (int t = 0; t < num_constraints; ++t) {
    std::vector<double> remaining = point.x;
    for (int b = 0; b < b_count; ++b) {
      if (blocks[b].constraint != t) continue;
      BlockPoint bp;
      bp.y.assign(n, 0.0);
      for (int i = 0; i < n; ++i) {
        bp.y[i] = std::min(remaining[i], coverage[b][i]);
        remaining[i] -= bp.y[i];
      }
      bp.z = std::move(z[b]);
      point.blocks[t].push_back(std::move(bp));
    }
  }
  if (stats != nullptr) {
    stats->rounds = rounds;
    stats->columns = static_cast<int>(configs.size());
    double value = 0.0;
    for (int i = 0; i < n; ++i) value += c[i] * point.x[i];
    stats->value = value;
    stats->upper_bound = std::max(upper, value);
  }
  return point;
}

}  // namespace

bool IsGammaLight(const Rational& weight, const Rational& capacity, double gamma) {
  return weight <= Rational(gamma) * capacity;
}

BlockLpResult BlockLpOptimize(std::span<const Rational> weights,
                              const Rational& capacity, int bins,
                              std::span<const double> c, double eps,
                              LpStats* stats) {
  const int n = static_cast<int>(weights.size());
  if (static_cast<int>(c.size()) != n) throw PreconditionError("objective size mismatch");
  EngineBlock block;
  block.weights = weights;
  block.capacity = capacity;
  block.size = bins;
  for (int i = 0; i < n; ++i) {
    if (weights[i] <= capacity) block.eligible.push_back(i);
  }
  FractionalPoint point = SolveConfigurationLp(n, 1, {block}, {}, c, eps, stats);
  BlockLpResult result;
  result.y = std::move(point.blocks[0][0].y);
  result.z = std::move(point.blocks[0][0].z);
  for (int i = 0; i < n; ++i) result.value += c[i] * result.y[i];
  return result;
}

SeparationResult SeparateBlock(std::span<const Rational> weights,
                               const Rational& capacity, int bins,
                               std::span<const double> y, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("separation needs eps in (0,1)");
  const int n = static_cast<int>(weights.size());
  SeparationResult result;
  std::vector<int> support;
  for (int i = 0; i < n; ++i) {
    if (y[i] < 0.0) throw PreconditionError("separation needs y >= 0");
    if (y[i] <= 0.0) continue;
    if (weights[i] > capacity) {
      // No configuration contains i at all.
      result.beta.assign(n, 0.0);
      result.beta[i] = (bins + 1.0) / y[i];
      return result;
    }
    support.push_back(i);
  }
  for (int i : support) {
    if ((1.0 - eps) * y[i] > 1.0) {
      // Outside the unit box: y'_i <= 1 on the whole polytope.
      result.beta.assign(n, 0.0);
      result.beta[i] = bins;
      return result;
    }
  }
  if (support.empty()) {
    result.in_polytope = true;
    return result;
  }

  // max lambda  s.t.  lambda * y_i <= sum_{C ∋ i} z_C,  sum_C z_C <= bins.
  const int m = static_cast<int>(support.size());
  std::vector<int> slot(n, -1);
  for (int a = 0; a < m; ++a) slot[support[a]] = a;
  std::vector<double> rhs(m + 1, 0.0);
  rhs[m] = bins;
  PackingSimplex<double> lp(rhs, kLpTolerance);
  {
    std::vector<std::pair<int, double>> entries;
    for (int a = 0; a < m; ++a) entries.push_back({a, y[support[a]]});
    lp.AddColumn(1.0, entries);
  }
  std::vector<std::vector<int>> configs;
  std::set<std::vector<int>> known;
  auto add_config = [&](std::vector<int> config) {
    if (!known.insert(config).second) return false;
    std::vector<std::pair<int, double>> entries;
    for (int i : config) entries.push_back({slot[i], -1.0});
    entries.push_back({m, 1.0});
    lp.AddColumn(0.0, entries);
    configs.push_back(std::move(config));
    return true;
  };
  for (int i : support) add_config({i});

  std::vector<double> profits(n, 0.0);
  std::vector<double> dual;
  for (int round = 0; round < kMaxRounds; ++round) {
    lp.Solve();
    dual = lp.Dual();
    for (int a = 0; a < m; ++a) profits[support[a]] = std::max(0.0, dual[a]);
    std::vector<int> config = KnapsackFptas(weights, profits, support, capacity, eps);
    std::sort(config.begin(), config.end());
    double found = 0.0;
    for (int i : config) found += profits[i];
    if (!(found > dual[m] * (1.0 + 1e-9) + 1e-12) || !add_config(std::move(config))) break;
  }
  const double lambda = lp.objective();
  const std::vector<double> primal = lp.Primal();
  if (lambda >= 1.0 - eps) {
    result.in_polytope = true;
    // A little headroom when lambda allows it, so rounding in the doubles
    // does not leave coverage just below (1 - eps) y.
    const double target = std::min(lambda, (1.0 - eps) * (1.0 + 1e-9));
    const double scale = target / lambda;
    for (size_t k = 0; k < configs.size(); ++k) {
      const double w = std::min(1.0, primal[k + 1] * scale);
      if (w > 0.0) result.witness.push_back({configs[k], w});
    }
    // Exact top-up of any remaining shortfall through singleton configurations.
    const Rational keep = 1 - RationalFromDouble(eps);
    std::vector<Rational> cover(n, 0);
    for (const WeightedConfig& wc : result.witness) {
      for (int i : wc.items) cover[i] += RationalFromDouble(wc.weight);
    }
    for (int i : support) {
      const Rational deficit = keep * RationalFromDouble(y[i]) - cover[i];
      if (deficit <= 0) continue;
      double add = deficit.get_d();
      while (RationalFromDouble(add) < deficit) add = std::nextafter(add, 2.0);
      result.witness.push_back({{i}, add});
    }
    return result;
  }
  const double v = dual[m];
  result.beta.assign(n, 0.0);
  if (v <= 0.0) throw InvariantError("separation LP has a zero bin dual");
  for (int a = 0; a < m; ++a) {
    result.beta[support[a]] = std::max(0.0, dual[a]) * (1.0 - eps) / v;
  }
  return result;
}

std::vector<BlockPartition> SingletonPartitions(const Instance& instance) {
  std::vector<BlockPartition> partitions;
  for (int t = 0; t < instance.num_constraints(); ++t) {
    BlockPartition p;
    const auto& k = instance.constraints[t];
    for (int b = 0; b < k.num_bins(); ++b) p.push_back(Block{t, {b}, k.capacities[b]});
    partitions.push_back(std::move(p));
  }
  return partitions;
}

namespace {

void CheckPartitions(const Instance& instance,
                     const std::vector<BlockPartition>& partitions) {
  if (static_cast<int>(partitions.size()) != instance.num_constraints()) {
    throw PreconditionError("need one block partition per constraint");
  }
  for (int t = 0; t < instance.num_constraints(); ++t) {
    const auto& k = instance.constraints[t];
    std::vector<char> used(k.num_bins(), 0);
    for (const Block& block : partitions[t]) {
      if (block.bins.empty()) throw PreconditionError("empty block");
      for (int b : block.bins) {
        if (b < 0 || b >= k.num_bins()) throw ReferenceError("block references unknown bin");
        if (used[b]) throw PreconditionError("bin used by two blocks");
        used[b] = 1;
        if (k.capacities[b] < block.capacity) {
          throw PreconditionError("block capacity exceeds a member bin's capacity");
        }
      }
    }
  }
}

}  // namespace

FractionalPoint InstanceLpOptimize(const Instance& instance,
                                   const std::vector<BlockPartition>& partitions,
                                   double gamma, std::span<const double> c,
                                   double eps, LpStats* stats) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw PreconditionError("gamma must lie in (0,1)");
  CheckPartitions(instance, partitions);
  const int n = instance.num_items();
  if (static_cast<int>(c.size()) != n) throw PreconditionError("objective size mismatch");
  std::vector<EngineBlock> blocks;
  for (int t = 0; t < instance.num_constraints(); ++t) {
    const auto& weights = instance.constraints[t].weights;
    for (const Block& block : partitions[t]) {
      EngineBlock eb;
      eb.constraint = t;
      eb.weights = weights;
      eb.capacity = block.capacity;
      eb.size = block.size();
      for (int i = 0; i < n; ++i) {
        if (weights[i] > block.capacity) continue;
        if (block.size() == 1 && !IsGammaLight(weights[i], block.capacity, gamma)) continue;
        eb.eligible.push_back(i);
      }
      blocks.push_back(std::move(eb));
    }
  }
  return SolveConfigurationLp(n, instance.num_constraints(), blocks,
                              HullRows(instance.additional, n), c, eps, stats);
}

std::string CheckBlockPoint(std::span<const Rational> weights,
                            const Rational& capacity, int bins,
                            std::span<const double> y, const ConfigWeights& z,
                            double tol) {
  const int n = static_cast<int>(weights.size());
  std::vector<double> cover(n, 0.0);
  double total = 0.0;
  for (const WeightedConfig& config : z) {
    if (config.weight < -tol || config.weight > 1.0 + tol) return "configuration weight outside [0,1]";
    Rational load = 0;
    for (int i : config.items) {
      if (i < 0 || i >= n) return "configuration references unknown item";
      load += weights[i];
      cover[i] += config.weight;
    }
    if (load > capacity) return "configuration does not fit a bin";
    total += config.weight;
  }
  if (total > bins + tol) return "configuration weights exceed the block size";
  double load = 0.0;
  for (int i = 0; i < n; ++i) {
    if (y[i] < -tol || y[i] > 1.0 + tol) return "y outside [0,1]";
    if (y[i] > cover[i] + tol) {
      std::ostringstream os;
      os << "item " << i << " has y " << y[i] << " above its coverage " << cover[i];
      return os.str();
    }
    load += y[i] * weights[i].get_d();
  }
  if (load > bins * capacity.get_d() * (1.0 + tol) + tol) return "fractional weight exceeds block capacity";
  return "";
}

std::string CheckFractionalPoint(const Instance& instance,
                                 const std::vector<BlockPartition>& partitions,
                                 double gamma, const FractionalPoint& point,
                                 double tol) {
  const int n = instance.num_items();
  if (static_cast<int>(point.x.size()) != n) return "x has the wrong dimension";
  if (!InHull(instance.additional, point.x, tol)) return "x is outside P(I)";
  for (int t = 0; t < instance.num_constraints(); ++t) {
    if (point.blocks[t].size() != partitions[t].size()) return "block count mismatch";
    std::vector<double> sum(n, 0.0);
    for (size_t j = 0; j < partitions[t].size(); ++j) {
      const Block& block = partitions[t][j];
      const BlockPoint& bp = point.blocks[t][j];
      std::string err = CheckBlockPoint(instance.constraints[t].weights, block.capacity,
                                        block.size(), bp.y, bp.z, tol);
      if (!err.empty()) return "constraint " + std::to_string(t) + " block " + std::to_string(j) + ": " + err;
      for (int i = 0; i < n; ++i) {
        sum[i] += bp.y[i];
        if (block.size() == 1 && bp.y[i] > 0.0 &&
            !IsGammaLight(instance.constraints[t].weights[i], block.capacity, gamma)) {
          return "gamma-heavy item " + std::to_string(i) + " in a singleton block";
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      if (std::abs(sum[i] - point.x[i]) > tol) {
        return "constraint " + std::to_string(t) + ": block shares of item " +
               std::to_string(i) + " do not sum to x";
      }
    }
  }
  return "";
}

ExactPoint SnapToExact(const Instance& instance,
                       const std::vector<BlockPartition>& partitions,
                       const FractionalPoint& point) {
  constexpr int kBits = 40;
  const double shrink = 1.0 - 1e-6;
  const int n = instance.num_items();
  ExactPoint exact;
  exact.x.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    exact.x[i] = FloorToGrid(std::clamp(point.x[i], 0.0, 1.0) * shrink, kBits);
  }
  exact.blocks.resize(instance.num_constraints());
  for (int t = 0; t < instance.num_constraints(); ++t) {
    std::vector<Rational> total(n, 0);
    for (size_t j = 0; j < partitions[t].size(); ++j) {
      const BlockPoint& bp = point.blocks[t][j];
      ExactBlockPoint eb;
      std::vector<Rational> cover(n, 0);
      for (const WeightedConfig& config : bp.z) {
        Rational w = FloorToGrid(std::min(1.0, config.weight) * shrink, kBits);
        if (w <= 0) continue;
        for (int i : config.items) cover[i] += w;
        eb.z.push_back({config.items, w});
      }
      eb.y.assign(n, 0);
      for (int i = 0; i < n; ++i) {
        Rational yi = FloorToGrid(std::clamp(bp.y[i], 0.0, 1.0) * shrink, kBits);
        if (yi > cover[i]) yi = cover[i];
        if (yi > 1) yi = 1;
        eb.y[i] = yi;
        total[i] += yi;
      }
      exact.blocks[t].push_back(std::move(eb));
    }
    for (int i = 0; i < n; ++i) {
      if (exact.x[i] > total[i]) exact.x[i] = total[i];
    }
  }
  for (const HullRow& row : HullRows(instance.additional, n)) {
    Rational sum = 0;
    for (int i : row.items) sum += exact.x[i];
    if (sum > row.cap) {
      Rational factor = Rational(row.cap) / sum;
      for (int i : row.items) exact.x[i] *= factor;
    }
  }
  for (int t = 0; t < instance.num_constraints(); ++t) {
    for (int i = 0; i < n; ++i) {
      Rational remaining = exact.x[i];
      for (ExactBlockPoint& eb : exact.blocks[t]) {
        if (eb.y[i] > remaining) eb.y[i] = remaining;
        remaining -= eb.y[i];
      }
    }
  }
  return exact;
}

ExactPoint ScalePoint(const ExactPoint& point, const Rational& factor) {
  ExactPoint out = point;
  for (Rational& v : out.x) v *= factor;
  for (auto& per_t : out.blocks) {
    for (ExactBlockPoint& eb : per_t) {
      for (Rational& v : eb.y) v *= factor;
      for (ExactConfig& config : eb.z) config.weight *= factor;
    }
  }
  return out;
}

}  // namespace mkcp
