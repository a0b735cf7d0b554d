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

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mkcp/bench.h"
#include "mkcp/configuration_lp.h"
#include "mkcp/errors.h"
#include "mkcp/exact.h"
#include "mkcp/grouping.h"
#include "mkcp/instance_io.h"
#include "mkcp/solver.h"
#include "mkcp/structuring.h"

namespace {

using json = nlohmann::json;
using namespace mkcp;

int WorkersFromEnv() {
  const char* v = std::getenv("MKCP_WORKERS");
  if (v == nullptr) return 1;
  const int n = std::atoi(v);
  return n >= 1 ? n : 1;
}

void Emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    WriteFile(out, text);
  }
}

void ReportRegime(const Instance& inst, const SolverConfig& c) {
  const double eps = c.epsilon;
  const int d = inst.num_constraints();
  // N >= d / eps makes the structuring loss d/N at most eps; the sampling
  // bound needs exp(-0.1 (1-eps^2)^4 eps^6 xi / 20) <= eps^2 / 2.
  const double n_required = std::ceil(d / eps);
  const double xi_required =
      std::ceil(20.0 * std::log(2.0 / (eps * eps)) /
                (0.1 * std::pow(1.0 - eps * eps, 4) * std::pow(eps, 6)));
  std::cerr << "config: epsilon=" << c.epsilon << " delta=" << c.delta
            << " mu=" << c.effective_mu() << " gamma=" << c.gamma << " N=" << c.n_level
            << " xi=" << c.xi << " restarts=" << c.restarts << " seed=" << c.seed << "\n";
  std::cerr << "theory regime: N >= " << n_required << ", xi >= " << xi_required << "\n";
}

// Per constraint: the N-leveled structure of its bins.
struct Leveled {
  Instance instance;
  std::vector<NLeveledPartition> levels;
  std::vector<BlockPartition> partitions;
};

Leveled LevelInstance(const Instance& inst, int n_level) {
  Leveled l{inst, {}, {}};
  for (int t = 0; t < inst.num_constraints(); ++t) {
    l.levels.push_back(StructureInBlocks(inst.constraints[t].capacities, n_level));
    l.instance.constraints[t] = LeveledConstraint(inst.constraints[t], l.levels[t]);
    l.partitions.push_back(LeveledBlocks(l.levels[t], t));
  }
  return l;
}

// Singleton marginals f({i}) - f(empty), clipped at zero.
std::vector<double> SingletonGains(const Objective& f) {
  std::vector<double> c;
  const Rational base = f.Evaluate(std::vector<int>{});
  for (int i = 0; i < f.size(); ++i) {
    c.push_back(std::max(0.0, ToDouble(f.Evaluate(std::vector<int>{i}) - base)));
  }
  return c;
}

json LpJson(const Instance& inst, const Leveled& l, const FractionalPoint& p) {
  json root;
  root["x"] = p.x;
  root["blocks"] = json::array();
  for (int t = 0; t < inst.num_constraints(); ++t) {
    for (size_t j = 0; j < l.partitions[t].size(); ++j) {
      const Block& b = l.partitions[t][j];
      json block;
      block["constraint"] = t;
      block["block"] = j;
      json bins = json::array();
      for (int r : b.bins) bins.push_back(l.levels[t].order[r]);
      block["bins"] = bins;
      block["capacity"] = FormatRational(b.capacity);
      block["y"] = p.blocks[t][j].y;
      block["z"] = json::array();
      for (const WeightedConfig& wc : p.blocks[t][j].z) {
        json cfg;
        json items = json::array();
        for (int i : wc.items) items.push_back(inst.labels[i]);
        cfg["config"] = items;
        cfg["weight"] = wc.weight;
        block["z"].push_back(cfg);
      }
      root["blocks"].push_back(block);
    }
  }
  return root;
}

int Run(int argc, char** argv) {
  CLI::App app{"mkcp-kit: submodular maximization under multiple knapsack constraints"};
  app.require_subcommand(1);

  SolverConfig config;
  config.workers = WorkersFromEnv();
  std::string instance_path, solution_path, out;

  auto* solve = app.add_subcommand("solve", "approximate solver with enumeration");
  solve->add_option("instance", instance_path)->required();
  solve->add_option("--epsilon", config.epsilon);
  solve->add_option("--delta", config.delta);
  solve->add_option("--gamma", config.gamma);
  solve->add_option("--n-level", config.n_level);
  solve->add_option("--xi", config.xi);
  solve->add_option("--seed", config.seed);
  solve->add_option("--restarts", config.restarts);
  solve->add_option("--out", out);

  auto* uniform = app.add_subcommand("solve-uniform", "single uniform-capacity constraint");
  uniform->add_option("instance", instance_path)->required();
  uniform->add_option("--seed", config.seed);
  uniform->add_option("--out", out);

  auto* brute = app.add_subcommand("brute", "exact solution by enumeration");
  brute->add_option("instance", instance_path)->required();
  brute->add_option("--out", out);

  double lp_gamma = config.gamma;
  int n_level = config.n_level;
  auto* lp = app.add_subcommand("lp", "fractional point of the instance LP");
  lp->add_option("instance", instance_path)->required();
  lp->add_option("--epsilon", config.epsilon);
  lp->add_option("--gamma", lp_gamma);
  lp->add_option("--n-level", n_level);
  lp->add_option("--out", out);

  int constraint = 0, block = 0;
  double mu = 0.05;
  auto* grouping = app.add_subcommand("grouping", "mu-grouping of one block");
  grouping->add_option("instance", instance_path)->required();
  grouping->add_option("--constraint", constraint);
  grouping->add_option("--block", block);
  grouping->add_option("--mu", mu);
  grouping->add_option("--epsilon", config.epsilon);
  grouping->add_option("--n-level", n_level);

  auto* validate = app.add_subcommand("validate", "check a solution file");
  validate->add_option("instance", instance_path)->required();
  validate->add_option("solution", solution_path)->required();

  std::string suite = "tiny-exact";
  uint64_t bench_seed = 0;
  auto* bench = app.add_subcommand("bench", "randomized suites against exact references");
  bench->add_option("--suite", suite);
  bench->add_option("--seed", bench_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*bench) {
      const std::vector<BenchRow> rows = RunBench(suite, bench_seed, config.workers);
      std::cout << BenchCsvHeader() << "\n";
      for (const BenchRow& r : rows) std::cout << BenchCsvLine(r) << "\n";
      return 0;
    }
    const Instance inst = LoadInstance(ReadFile(instance_path));
    ValidateInstance(inst);
    if (*solve) {
      ReportRegime(inst, config);
      SolveStats stats;
      Solution sol = Solve(inst, config, &stats);
      std::cerr << "optimizer: " << (stats.monotone_optimizer ? "continuous greedy (1-1/e)"
                                                               : "measured continuous greedy (1/e)")
                << "; iterations=" << stats.iterations
                << " packing_failures=" << stats.packing_failures << "\n";
      Emit(SaveSolution(inst, sol), out);
    } else if (*uniform) {
      UniformStats stats;
      Solution sol = SolveUniform(inst, config, &stats);
      std::cerr << "mu=" << stats.mu << " scale=" << stats.scale
                << " packed=" << (stats.packed ? "yes" : "no") << "\n";
      Emit(SaveSolution(inst, sol), out);
    } else if (*brute) {
      Emit(SaveSolution(inst, BruteForceSolve(inst)), out);
    } else if (*lp) {
      const Leveled l = LevelInstance(inst, n_level);
      const FractionalPoint p = InstanceLpOptimize(l.instance, l.partitions, lp_gamma,
                                                   SingletonGains(inst.objective), config.epsilon);
      Emit(LpJson(inst, l, p).dump(2) + "\n", out);
    } else if (*grouping) {
      if (constraint < 0 || constraint >= inst.num_constraints()) {
        throw ReferenceError("no constraint " + std::to_string(constraint));
      }
      const Leveled l = LevelInstance(inst, n_level);
      if (block < 0 || block >= static_cast<int>(l.partitions[constraint].size())) {
        throw ReferenceError("no block " + std::to_string(block));
      }
      const FractionalPoint p = InstanceLpOptimize(l.instance, l.partitions, config.gamma,
                                                   SingletonGains(inst.objective), config.epsilon);
      const ExactPoint e = SnapToExact(l.instance, l.partitions, p);
      const Block& b = l.partitions[constraint][block];
      const Grouping g = ComputeGrouping(e.blocks[constraint][block].y,
                                         inst.constraints[constraint].weights, b.capacity,
                                         b.size(), RationalFromDouble(mu));
      json root;
      root["capacity"] = FormatRational(b.capacity);
      root["bins"] = b.size();
      root["groups"] = json::array();
      for (int k = 0; k < g.tau(); ++k) {
        json items = json::array();
        for (int i : g.groups[k]) items.push_back(inst.labels[i]);
        root["groups"].push_back({{"items", items}, {"pivot", inst.labels[g.pivots[k]]}});
      }
      std::cout << root.dump(2) << "\n";
    } else if (*validate) {
      const Solution sol = LoadSolution(inst, ReadFile(solution_path));
      const FeasibilityReport report = ValidateSolution(inst, sol);
      if (!report.ok) {
        for (const Violation& v : report.violations) std::cerr << v.message << "\n";
        return 1;
      }
      std::cout << "OK\n";
    }
  } catch (const InvariantError& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return Run(argc, argv); }
