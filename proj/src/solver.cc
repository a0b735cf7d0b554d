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

#include "mkcp/solver.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <set>
#include <mutex>
#include <thread>

#include "mkcp/errors.h"
#include "mkcp/grouping.h"
#include "mkcp/rng.h"
#include "mkcp/structuring.h"

namespace mkcp {

void ValidateConfig(const SolverConfig& c) {
  auto open_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (!open_unit(c.epsilon)) throw PreconditionError("epsilon must lie in (0,1)");
  if (!open_unit(c.delta)) throw PreconditionError("delta must lie in (0,1)");
  if (!open_unit(c.gamma)) throw PreconditionError("gamma must lie in (0,1)");
  const double mu = c.effective_mu();
  if (!(mu > 0.0 && mu <= 0.5)) throw PreconditionError("mu must lie in (0,1/2]");
  if (c.n_level < 2) throw PreconditionError("N must be at least 2");
  if (c.xi < 0) throw PreconditionError("xi must be non-negative");
  if (c.restarts < 1) throw PreconditionError("need at least one restart");
  if (c.cg_steps < 1 || c.gradient_samples < 1 || c.pipage_samples < 1) {
    throw PreconditionError("step and sample counts must be positive");
  }
  if (c.workers < 1) throw PreconditionError("need at least one worker");
}

void SolveStats::Merge(const SolveStats& o) {
  iterations += o.iterations;
  restricted_runs += o.restricted_runs;
  compliant_runs += o.compliant_runs;
  packing_failures += o.packing_failures;
  compliance_counterexamples += o.compliance_counterexamples;
  monotone_optimizer = monotone_optimizer && o.monotone_optimizer;
}

ResidualInstance MakeResidual(const Instance& instance, const std::vector<int>& committed,
                              const std::vector<Assignment>& assignments, int xi) {
  const int n = instance.num_items();
  const int d = instance.num_constraints();
  std::vector<int> s = committed;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw PreconditionError("partial solution repeats an item");
  }
  for (int i : s) {
    if (i < 0 || i >= n) throw ReferenceError("partial solution references unknown item");
  }
  if (!IsMember(instance.additional, s)) {
    throw PreconditionError("partial solution violates the additional constraint");
  }
  if (static_cast<int>(assignments.size()) != d) {
    throw PreconditionError("need one assignment per constraint");
  }
  std::vector<char> in_s(n, 0);
  for (int i : s) in_s[i] = 1;
  for (int t = 0; t < d; ++t) {
    const auto& k = instance.constraints[t];
    const Assignment& a = assignments[t];
    if (static_cast<int>(a.bins.size()) != k.num_bins() || !AssignmentFits(k, a)) {
      throw PreconditionError("partial assignment is infeasible");
    }
    std::vector<int> placed;
    for (const auto& bin : a.bins) placed.insert(placed.end(), bin.begin(), bin.end());
    std::sort(placed.begin(), placed.end());
    if (placed != s) throw PreconditionError("partial assignment does not place S exactly once");
  }

  ResidualInstance res;
  res.committed = s;
  const Rational fs = instance.objective.Evaluate(s);
  std::vector<int> with = s;
  for (int i = 0; i < n; ++i) {
    if (in_s[i]) continue;
    if (!s.empty()) {
      if (xi <= 0) continue;
      with = s;
      with.push_back(i);
      std::sort(with.begin(), with.end());
      if (instance.objective.Evaluate(with) - fs > fs / xi) continue;
    }
    res.survivors.push_back(i);
  }
  Instance& r = res.instance;
  for (int i : res.survivors) r.labels.push_back(instance.labels[i]);
  for (int t = 0; t < d; ++t) {
    const auto& k = instance.constraints[t];
    MultiKnapsackConstraint rk;
    for (int i : res.survivors) rk.weights.push_back(k.weights[i]);
    for (int b = 0; b < k.num_bins(); ++b) {
      rk.capacities.push_back(k.capacities[b] - BinLoad(k, assignments[t].bins[b]));
    }
    rk.bin_labels = k.bin_labels;
    r.constraints.push_back(std::move(rk));
  }
  r.objective = instance.objective.Restrict(s, res.survivors);
  r.additional = Contract(instance.additional, s, res.survivors);
  return res;
}

std::vector<BlockCompliance> CheckCompliance(const std::vector<int>& set,
                                             const Instance& instance,
                                             const std::vector<AssociationData>& data,
                                             double mu_value) {
  const int n = instance.num_items();
  const Rational mu = RationalFromDouble(mu_value);
  std::vector<char> in(n, 0);
  for (int i : set) in[i] = 1;
  std::vector<BlockCompliance> out;
  for (int t = 0; t < static_cast<int>(data.size()); ++t) {
    const auto& weights = instance.constraints[t].weights;
    const AssociationData& ad = data[t];
    for (int j = 0; j < static_cast<int>(ad.blocks.size()); ++j) {
      const Block& block = ad.blocks[j];
      BlockCompliance bc{t, j, true, ""};
      const std::vector<int>& members = ad.association.sets[j];
      if (block.size() == 1) {
        Rational load = 0;
        for (int i : members) {
          if (in[i]) load += weights[i];
        }
        if (load > block.capacity) {
          bc.ok = false;
          bc.reason = "sampled weight exceeds the bin";
        }
      } else {
        const Grouping& g = ad.association.groupings[j];
        std::vector<int> count(g.tau(), 0);
        Rational light_load = 0;
        for (int i : members) {
          if (!in[i]) continue;
          if (g.group_of[i] >= 0) {
            ++count[g.group_of[i]];
          } else if (weights[i] <= mu * block.capacity) {
            light_load += weights[i];
          } else {
            bc.ok = false;
            bc.reason = "sampled item fits no class of the block";
          }
        }
        for (int k = 0; k < g.tau() && bc.ok; ++k) {
          if (count[k] > mu * block.size()) {
            bc.ok = false;
            bc.reason = "too many items from group " + std::to_string(k);
          }
        }
        Rational light_bound = mu / 4 * block.capacity * block.size();
        for (int i = 0; i < n; ++i) {
          if (weights[i] <= mu * block.capacity) light_bound += ad.points[j].y[i] * weights[i];
        }
        if (bc.ok && light_load > light_bound) {
          bc.ok = false;
          bc.reason = "light weight above its share";
        }
      }
      out.push_back(std::move(bc));
    }
  }
  return out;
}

namespace {

// Packs set into the blocks it was associated with. False on failure.
bool PackAssociated(const Instance& instance, const std::vector<int>& set,
                    const std::vector<AssociationData>& data, Solution* out) {
  const int n = instance.num_items();
  out->selected = set;
  out->assignments.clear();
  for (int t = 0; t < instance.num_constraints(); ++t) {
    const auto& k = instance.constraints[t];
    const AssociationData& ad = data[t];
    std::vector<int> block_of(n, -1);
    for (int j = 0; j < static_cast<int>(ad.blocks.size()); ++j) {
      for (int i : ad.association.sets[j]) block_of[i] = j;
    }
    std::vector<std::vector<int>> per_block(ad.blocks.size());
    for (int i : set) {
      if (block_of[i] < 0) return false;
      per_block[block_of[i]].push_back(i);
    }
    Assignment a;
    a.bins.resize(k.num_bins());
    for (int j = 0; j < static_cast<int>(ad.blocks.size()); ++j) {
      const Block& block = ad.blocks[j];
      if (per_block[j].empty()) continue;
      if (block.size() == 1) {
        if (BinLoad(k, per_block[j]) > block.capacity) return false;
        a.bins[block.bins[0]] = per_block[j];
      } else {
        std::vector<std::vector<int>> bins = FfdBinPack(per_block[j], k.weights, block.capacity);
        if (static_cast<int>(bins.size()) > block.size()) return false;
        for (size_t b = 0; b < bins.size(); ++b) {
          std::sort(bins[b].begin(), bins[b].end());
          a.bins[block.bins[b]] = std::move(bins[b]);
        }
      }
    }
    out->assignments.push_back(std::move(a));
  }
  return true;
}

}  // namespace

Solution SolveRestricted(const Instance& instance,
                         const std::vector<BlockPartition>& partitions,
                         const SolverConfig& config, uint64_t seed,
                         SolveStats* stats) {
  ValidateConfig(config);
  const int n = instance.num_items();
  Solution best = EmptySolution(instance);
  if (n == 0) return best;
  const Objective& f = instance.objective;

  // Step 1: continuous optimization over the gamma-instance polytope.
  LinearOracle oracle = InstanceOracle(instance, partitions, config.gamma, config.epsilon);
  GreedyOptions greedy{config.cg_steps, config.gradient_samples};
  const bool monotone = f.monotone();
  FractionalPoint point =
      monotone ? ContinuousGreedy(oracle, f, DeriveSeed(seed, "optimize"), greedy)
               : MeasuredContinuousGreedy(oracle, f, DeriveSeed(seed, "optimize"), greedy);
  const ExactPoint exact = SnapToExact(instance, partitions, point);

  // Steps 3-4: witnesses and block association of the (1 - delta) point.
  const Rational mu = RationalFromDouble(config.effective_mu());
  const ExactPoint scaled = ScalePoint(exact, RationalFromDouble(1.0 - config.delta));
  std::vector<AssociationData> data;
  for (int t = 0; t < instance.num_constraints(); ++t) {
    AssociationData ad;
    ad.blocks = partitions[t];
    ad.points = scaled.blocks[t];
    ad.association = BlockAssociate(scaled.x, ad.points, ad.blocks,
                                    instance.constraints[t].weights, mu);
    data.push_back(std::move(ad));
  }

  const std::vector<double> x = ToDoubles(exact.x);
  Rational best_value = f.Evaluate(best.selected);
  SolveStats local;
  local.monotone_optimizer = monotone;
  for (int r = 0; r < config.restarts; ++r) {
    // Step 2: sample and purge.
    const std::vector<int> sample =
        SampleSet(x, config.delta, instance.additional, DeriveSeed(seed, "restart", r));
    const std::vector<int> kept = Purge(f, sample);
    bool compliant = true;
    for (const BlockCompliance& bc : CheckCompliance(sample, instance, data, config.effective_mu())) {
      compliant = compliant && bc.ok;
    }
    // Step 5: pack each block; step 6: empty on failure.
    Solution candidate;
    const bool packed = PackAssociated(instance, kept, data, &candidate);
    ++local.restricted_runs;
    local.compliant_runs += compliant;
    if (!packed) {
      ++local.packing_failures;
      local.compliance_counterexamples += compliant;
      continue;
    }
    const Rational value = f.Evaluate(candidate.selected);
    if (value > best_value) {
      best_value = value;
      best = std::move(candidate);
    }
  }
  if (!ValidateSolution(instance, best).ok) {
    throw InvariantError("restricted solver produced an infeasible solution");
  }
  if (stats != nullptr) stats->Merge(local);
  return best;
}

namespace {

void EnumerateAssignments(const MultiKnapsackConstraint& k, const std::vector<int>& set,
                          size_t next, std::vector<Rational>* load, Assignment* current,
                          std::vector<Assignment>* out) {
  if (next == set.size()) {
    out->push_back(*current);
    return;
  }
  const int i = set[next];
  for (int b = 0; b < k.num_bins(); ++b) {
    if ((*load)[b] + k.weights[i] > k.capacities[b]) continue;
    (*load)[b] += k.weights[i];
    current->bins[b].push_back(i);
    EnumerateAssignments(k, set, next + 1, load, current, out);
    current->bins[b].pop_back();
    (*load)[b] -= k.weights[i];
  }
}

// Feasible assignments of the set to k, one per multiset of leftover
// capacities (assignments with equal multisets give the same residual up to
// renaming bins).
std::vector<Assignment> DistinctAssignments(const MultiKnapsackConstraint& k,
                                            const std::vector<int>& set) {
  std::vector<Assignment> all;
  std::vector<Rational> load(k.num_bins(), 0);
  Assignment current;
  current.bins.resize(k.num_bins());
  EnumerateAssignments(k, set, 0, &load, &current, &all);
  std::vector<Assignment> out;
  std::set<std::vector<Rational>> seen;
  for (Assignment& a : all) {
    std::vector<Rational> left;
    for (int b = 0; b < k.num_bins(); ++b) left.push_back(k.capacities[b] - BinLoad(k, a.bins[b]));
    std::sort(left.begin(), left.end());
    if (seen.insert(left).second) out.push_back(std::move(a));
  }
  return out;
}

struct Task {
  std::vector<int> set;
  std::vector<Assignment> assignments;
};

struct TaskResult {
  Solution solution;
  Rational value;
  SolveStats stats;
};

TaskResult RunTask(const Instance& instance, const Task& task, const SolverConfig& config,
                   uint64_t seed) {
  TaskResult out;
  ResidualInstance res = MakeResidual(instance, task.set, task.assignments, config.xi);
  out.solution.selected = task.set;
  out.solution.assignments = task.assignments;
  ++out.stats.iterations;
  if (!res.survivors.empty()) {
    Instance leveled = res.instance;
    std::vector<BlockPartition> partitions;
    std::vector<NLeveledPartition> levels;
    for (int t = 0; t < instance.num_constraints(); ++t) {
      levels.push_back(StructureInBlocks(res.instance.constraints[t].capacities, config.n_level));
      leveled.constraints[t] = LeveledConstraint(res.instance.constraints[t], levels[t]);
      partitions.push_back(LeveledBlocks(levels[t], t));
    }
    Solution sub = SolveRestricted(leveled, partitions, config, seed, &out.stats);
    const Rational g = leveled.objective.Evaluate(sub.selected);
    for (int i : sub.selected) out.solution.selected.push_back(res.survivors[i]);
    std::sort(out.solution.selected.begin(), out.solution.selected.end());
    if (!sub.selected.empty()) {
      for (int t = 0; t < instance.num_constraints(); ++t) {
        const auto& bins = sub.assignments[t].bins;
        for (size_t r = 0; r < bins.size(); ++r) {
          auto& target = out.solution.assignments[t].bins[levels[t].order[r]];
          for (int i : bins[r]) target.push_back(res.survivors[i]);
          std::sort(target.begin(), target.end());
        }
      }
    }
    out.value = instance.objective.Evaluate(out.solution.selected);
    if (out.value != g) throw InvariantError("residual value does not lift to the instance");
  } else {
    out.value = instance.objective.Evaluate(out.solution.selected);
  }
  return out;
}

}  // namespace

Solution Solve(const Instance& instance, const SolverConfig& config, SolveStats* stats) {
  ValidateConfig(config);
  ValidateInstance(instance);
  const int n = instance.num_items();
  const int d = instance.num_constraints();

  std::vector<Task> tasks;
  const int max_size = std::min(config.xi, n);
  std::vector<int> set;
  // Subsets by size, then lexicographically.
  for (int size = 0; size <= max_size; ++size) {
    std::vector<int> idx(size);
    for (int a = 0; a < size; ++a) idx[a] = a;
    while (true) {
      if (IsMember(instance.additional, idx)) {
        std::vector<std::vector<Assignment>> options;
        bool feasible = true;
        for (int t = 0; t < d && feasible; ++t) {
          options.push_back(DistinctAssignments(instance.constraints[t], idx));
          feasible = !options.back().empty();
        }
        if (feasible) {
          std::vector<size_t> pick(d, 0);
          while (true) {
            Task task{idx, {}};
            for (int t = 0; t < d; ++t) task.assignments.push_back(options[t][pick[t]]);
            tasks.push_back(std::move(task));
            int t = d - 1;
            while (t >= 0 && ++pick[t] == options[t].size()) pick[t--] = 0;
            if (t < 0) break;
          }
        }
      }
      int a = size - 1;
      while (a >= 0 && idx[a] == n - size + a) --a;
      if (a < 0) break;
      ++idx[a];
      for (int b = a + 1; b < size; ++b) idx[b] = idx[b - 1] + 1;
    }
  }

  std::vector<TaskResult> results(tasks.size());
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&]() {
    for (size_t k = next++; k < tasks.size(); k = next++) {
      try {
        results[k] = RunTask(instance, tasks[k], config, DeriveSeed(config.seed, "solve", k));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };
  const int workers = std::min<int>(config.workers, std::max<size_t>(1, tasks.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  Solution best = EmptySolution(instance);
  Rational best_value = instance.objective.Evaluate(best.selected);
  SolveStats total;
  for (TaskResult& r : results) {
    total.Merge(r.stats);
    if (r.value > best_value) {
      best_value = r.value;
      best = std::move(r.solution);
    }
  }
  if (!ValidateSolution(instance, best).ok) {
    throw InvariantError("solver produced an infeasible solution");
  }
  if (stats != nullptr) stats->Merge(total);
  return best;
}

Solution SolveUniform(const Instance& instance, const SolverConfig& config,
                      UniformStats* stats) {
  ValidateConfig(config);
  ValidateInstance(instance);
  if (instance.num_constraints() != 1) throw ContractError("uniform solver needs exactly one constraint");
  const auto& k = instance.constraints[0];
  if (k.num_bins() == 0) throw ContractError("uniform solver needs at least one bin");
  for (const Rational& c : k.capacities) {
    if (c != k.capacities[0]) throw ContractError("uniform solver needs equal capacities");
  }
  if (!std::holds_alternative<FreeConstraint>(instance.additional)) {
    throw ContractError("uniform solver does not take an additional constraint");
  }
  const Objective& f = instance.objective;
  if (!f.monotone()) throw ContractError("uniform solver needs a monotone objective");

  const int bins = k.num_bins();
  const Rational& cap = k.capacities[0];
  const int n = instance.num_items();
  BlockPartition block{Block{0, {}, cap}};
  for (int b = 0; b < bins; ++b) block[0].bins.push_back(b);
  const std::vector<BlockPartition> partitions{block};

  LinearOracle oracle = [&](std::span<const double> c) {
    BlockLpResult r = BlockLpOptimize(k.weights, cap, bins, c, config.epsilon);
    FractionalPoint p;
    p.x = r.y;
    p.blocks = {{BlockPoint{r.y, r.z}}};
    return p;
  };
  FractionalPoint point = ContinuousGreedy(
      oracle, f, DeriveSeed(config.seed, "uniform"), {config.cg_steps, config.gradient_samples});

  const double log_bins = std::log(static_cast<double>(bins));
  const double mu_value = log_bins > 0.0 ? std::min(std::pow(log_bins, -0.25), 0.5) : 0.5;
  // 1 - 4 mu is not positive until log|B| > 256; fall back to 1 - delta.
  const double scale = 1.0 - 4.0 * mu_value > 0.0 ? 1.0 - 4.0 * mu_value : 1.0 - config.delta;
  const Rational mu = mu_value == 0.5 ? Rational(1, 2) : RationalFromDouble(mu_value);
  const ExactPoint y0 =
      ScalePoint(SnapToExact(instance, partitions, point), RationalFromDouble(scale));
  const Grouping grouping = ComputeGrouping(y0.x, k.weights, cap, bins, mu);

  std::vector<double> y = ToDoubles(y0.x);
  PipageOptions popt;
  popt.samples = config.pipage_samples;
  UniformStats local;
  local.mu = mu_value;
  local.scale = scale;
  local.group_bound = mu_value * bins + 2;
  for (int g = 0; g < grouping.tau(); ++g) {
    std::vector<Rational> ones(grouping.groups[g].size(), 1);
    y = Pipage(y, f, grouping.groups[g], ones, DeriveSeed(config.seed, "pipage-group", g), popt).x;
    int selected = 0;
    for (int i : grouping.groups[g]) selected += y[i] == 1.0;
    local.group_selected.push_back(selected);
  }
  const std::vector<int> light = Classify(k.weights, cap, mu).light;
  std::vector<Rational> light_costs;
  for (int i : light) light_costs.push_back(k.weights[i]);
  y = Pipage(y, f, light, light_costs, DeriveSeed(config.seed, "pipage-light"), popt).x;

  std::vector<int> chosen;
  for (int i = 0; i < n; ++i) {
    if (y[i] == 1.0) chosen.push_back(i);
  }
  Solution sol = EmptySolution(instance);
  std::vector<std::vector<int>> packing = FfdBinPack(chosen, k.weights, cap);
  if (static_cast<int>(packing.size()) <= bins) {
    sol.selected = chosen;
    sol.assignments.assign(1, Assignment{});
    sol.assignments[0].bins.resize(bins);
    for (size_t b = 0; b < packing.size(); ++b) {
      std::sort(packing[b].begin(), packing[b].end());
      sol.assignments[0].bins[b] = std::move(packing[b]);
    }
    local.packed = true;
  }
  if (!ValidateSolution(instance, sol).ok) {
    throw InvariantError("uniform solver produced an infeasible solution");
  }
  if (stats != nullptr) *stats = std::move(local);
  return sol;
}

}  // namespace mkcp
