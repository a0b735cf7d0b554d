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

#include "mkcp/bench.h"

#include <chrono>
#include <cstdio>

#include "mkcp/configuration_lp.h"
#include "mkcp/errors.h"
#include "mkcp/exact.h"
#include "mkcp/generators.h"
#include "mkcp/rng.h"
#include "mkcp/solver.h"

namespace mkcp {
namespace {

using Clock = std::chrono::steady_clock;

double Millis(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

BenchRow Row(std::string_view suite, int index, uint64_t seed, double value, double reference,
             Clock::time_point start) {
  BenchRow row;
  row.suite = std::string(suite);
  row.case_index = index;
  row.seed = seed;
  row.value = value;
  row.reference = reference;
  row.ratio = reference > 0.0 ? value / reference : 1.0;
  row.runtime_ms = Millis(start);
  return row;
}

std::vector<BenchRow> TinyExact(uint64_t seed, int workers) {
  std::vector<BenchRow> rows;
  for (int c = 0; c < 30; ++c) {
    const uint64_t s = DeriveSeed(seed, "tiny-exact", c);
    Rng rng(s);
    GeneratorOptions opt;
    opt.items = rng.UniformInt(1, 6);
    opt.constraints = rng.UniformInt(1, 2);
    opt.objective = static_cast<ObjectiveFamily>(c % 4);
    opt.additional = static_cast<AdditionalFamily>((c / 4) % 3);
    Instance inst = RandomInstance(opt, s);
    const auto start = Clock::now();
    SolverConfig config;
    config.xi = inst.num_items();
    config.seed = s;
    config.cg_steps = 2;
    config.gradient_samples = 20;
    config.pipage_samples = 20;
    config.restarts = 1;
    config.workers = workers;
    Solution sol = Solve(inst, config);
    const double value = ToDouble(inst.objective.Evaluate(sol.selected));
    const double ref = ToDouble(inst.objective.Evaluate(BruteForceSolve(inst).selected));
    rows.push_back(Row("tiny-exact", c, s, value, ref, start));
  }
  return rows;
}

std::vector<BenchRow> Greedy(uint64_t seed, int workers) {
  std::vector<BenchRow> rows;
  for (int c = 0; c < 20; ++c) {
    const uint64_t s = DeriveSeed(seed, "greedy", c);
    Rng rng(s);
    GeneratorOptions opt;
    opt.items = rng.UniformInt(3, 8);
    opt.objective = c % 2 == 0 ? ObjectiveFamily::kCoverage : ObjectiveFamily::kModular;
    opt.additional = AdditionalFamily::kUniform;
    Instance inst = RandomInstance(opt, s);
    const auto start = Clock::now();
    SolverConfig config;
    config.seed = s;
    config.workers = workers;
    Solution sol = Solve(inst, config);
    const double value = ToDouble(inst.objective.Evaluate(sol.selected));
    const double ref = ToDouble(inst.objective.Evaluate(BruteForceSolve(inst).selected));
    rows.push_back(Row("greedy", c, s, value, ref, start));
  }
  return rows;
}

std::vector<BenchRow> Uniform(uint64_t seed) {
  std::vector<BenchRow> rows;
  for (int c = 0; c < 20; ++c) {
    const uint64_t s = DeriveSeed(seed, "uniform", c);
    Rng rng(s);
    GeneratorOptions opt;
    opt.items = rng.UniformInt(2, 8);
    opt.max_bins = 4;
    opt.uniform_capacities = true;
    opt.objective = c % 2 == 0 ? ObjectiveFamily::kCoverage : ObjectiveFamily::kModular;
    Instance inst = RandomInstance(opt, s);
    const auto start = Clock::now();
    SolverConfig config;
    config.seed = s;
    Solution sol = SolveUniform(inst, config);
    const double value = ToDouble(inst.objective.Evaluate(sol.selected));
    const double ref = ToDouble(inst.objective.Evaluate(BruteForceSolve(inst).selected));
    rows.push_back(Row("uniform", c, s, value, ref, start));
  }
  return rows;
}

std::vector<BenchRow> BlockLp(uint64_t seed) {
  std::vector<BenchRow> rows;
  for (int c = 0; c < 40; ++c) {
    const uint64_t s = DeriveSeed(seed, "block-lp", c);
    Rng rng(s);
    const int n = rng.UniformInt(1, 10);
    const int bins = rng.UniformInt(1, 4);
    const Rational cap = rng.UniformInt(5, 20);
    std::vector<Rational> weights;
    std::vector<Rational> exact_c;
    std::vector<double> costs;
    for (int i = 0; i < n; ++i) {
      weights.push_back(rng.UniformInt(1, 15));
      const int v = rng.UniformInt(0, 9);
      exact_c.push_back(v);
      costs.push_back(v);
    }
    const auto start = Clock::now();
    BlockLpResult r = BlockLpOptimize(weights, cap, bins, costs, 0.05);
    const double ref = ToDouble(ExactBlockLp(weights, cap, bins, exact_c).value);
    rows.push_back(Row("block-lp", c, s, r.value, ref, start));
  }
  return rows;
}

}  // namespace

std::vector<std::string> BenchSuites() { return {"tiny-exact", "greedy", "uniform", "block-lp"}; }

double BenchFloor(std::string_view suite) {
  if (suite == "tiny-exact") return 1.0;
  if (suite == "block-lp") return 0.95;
  return 0.0;
}

std::vector<BenchRow> RunBench(std::string_view suite, uint64_t seed, int workers) {
  if (suite == "tiny-exact") return TinyExact(seed, workers);
  if (suite == "greedy") return Greedy(seed, workers);
  if (suite == "uniform") return Uniform(seed);
  if (suite == "block-lp") return BlockLp(seed);
  throw PreconditionError("unknown bench suite '" + std::string(suite) + "'");
}

std::string BenchCsvHeader() { return "suite,case,seed,value,reference,ratio,runtime_ms"; }

std::string BenchCsvLine(const BenchRow& row) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s,%d,%llu,%.6g,%.6g,%.6f,%.3f", row.suite.c_str(),
                row.case_index, static_cast<unsigned long long>(row.seed), row.value,
                row.reference, row.ratio, row.runtime_ms);
  return buf;
}

}  // namespace mkcp
