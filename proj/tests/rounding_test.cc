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

#include <gtest/gtest.h>

#include <cmath>

#include "mkcp/errors.h"
#include "mkcp/exact.h"
#include "mkcp/generators.h"
#include "mkcp/rng.h"
#include "mkcp/rounding.h"
#include "support.h"

namespace mkcp {
namespace {

Objective SmallCoverage() {
  CoverageSpec spec;
  spec.element_weights = {Rational(3), Rational(1), Rational(2), Rational(4), Rational(1), Rational(2)};
  spec.covers = {{0, 1}, {1, 2}, {2, 3}, {3, 4, 0}, {5}};
  return Objective(spec);
}

Rational CostOf(std::span<const double> x, std::span<const int> group,
                std::span<const Rational> costs) {
  Rational total = 0;
  for (size_t g = 0; g < group.size(); ++g) total += RationalFromDouble(x[group[g]]) * costs[g];
  return total;
}

TEST(Pipage, IntegralInputUnchanged) {
  Objective f = SmallCoverage();
  std::vector<double> x = {1, 0, 1, 0, 0.5};
  std::vector<int> group = {0, 1, 2, 3};
  std::vector<Rational> costs(4, 1);
  PipageResult r = Pipage(x, f, group, costs, 1);
  EXPECT_EQ(r.x, x);
  EXPECT_EQ(r.steps, 0);
}

TEST(Pipage, ModularPairWithUnitCosts) {
  Objective f(ModularSpec{0, {Rational(2), Rational(5)}});
  std::vector<double> x = {0.5, 0.5};
  std::vector<int> group = {0, 1};
  std::vector<Rational> costs = {1, 1};
  PipageResult r = Pipage(x, f, group, costs, 3);
  const bool allowed = (r.x[0] == 1 && r.x[1] == 0) || (r.x[0] == 0 && r.x[1] == 1) ||
                       (r.x[0] == 1 && r.x[1] == 1);
  EXPECT_TRUE(allowed);
  // The larger profit wins the exchange.
  EXPECT_EQ(r.x[1], 1.0);
  EXPECT_LE(r.x[0] + r.x[1], 2.0);
}

TEST(Pipage, SemiConservationAndFixedComplement) {
  Rng rng(11);
  for (int run = 0; run < 300; ++run) {
    const int n = rng.UniformInt(1, 9);
    Objective f = RandomObjective(static_cast<ObjectiveFamily>(run % 4), n, run);
    std::vector<double> x(n);
    for (double& v : x) v = rng.UniformInt(0, 8) / 8.0;
    std::vector<int> group;
    for (int i = 0; i < n; ++i) {
      if (rng.Bernoulli(0.7)) group.push_back(i);
    }
    std::vector<Rational> costs;
    for (size_t g = 0; g < group.size(); ++g) {
      costs.push_back(rng.Bernoulli(0.2) ? Rational(0) : testing::Frac(rng.UniformInt(1, 9), 4));
    }
    PipageOptions opt;
    opt.exact_limit = run % 2 == 0 ? 12 : 0;
    opt.samples = 20;
    PipageResult r = Pipage(x, f, group, costs, run, opt);
    std::vector<char> in_group(n, 0);
    for (int i : group) in_group[i] = 1;
    for (int i = 0; i < n; ++i) {
      if (in_group[i]) {
        EXPECT_TRUE(r.x[i] == 0.0 || r.x[i] == 1.0);
      } else {
        EXPECT_EQ(r.x[i], x[i]);
      }
    }
    const Rational before = CostOf(x, group, costs);
    const Rational after = CostOf(r.x, group, costs);
    Rational allowance = 0;
    for (size_t g = 0; g < group.size(); ++g) {
      if (group[g] == r.i_star) allowance = costs[g];
    }
    if (r.i_star < 0) {
      EXPECT_EQ(after, before);
    } else {
      EXPECT_LE(after, before + allowance);
    }
  }
}

TEST(Pipage, ExactModeNeverDecreasesF) {
  Objective f = SmallCoverage();
  Rng rng(5);
  for (int run = 0; run < 200; ++run) {
    std::vector<double> x(5);
    for (double& v : x) v = rng.Uniform();
    std::vector<int> group = {0, 1, 2, 3, 4};
    std::vector<Rational> costs = {1, 2, 1, 3, 1};
    PipageResult r = Pipage(x, f, group, costs, run);
    EXPECT_GE(ExactMultilinear(f, r.x), ExactMultilinear(f, x) - 1e-9);
  }
}

TEST(Pipage, SampledModeKeepsExpectation) {
  Objective f = SmallCoverage();
  const std::vector<double> x = {0.3, 0.6, 0.45, 0.7, 0.2};
  const std::vector<int> group = {0, 1, 2, 3, 4};
  const std::vector<Rational> costs = {1, 1, 1, 1, 1};
  PipageOptions opt;
  opt.exact_limit = 0;
  opt.samples = 30;
  const int runs = 2000;
  double sum = 0.0, sum_sq = 0.0;
  for (int run = 0; run < runs; ++run) {
    PipageResult r = Pipage(x, f, group, costs, 1000 + run, opt);
    const double v = ExactMultilinear(f, r.x);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / runs;
  const double sigma = std::sqrt(std::max(0.0, sum_sq / runs - mean * mean) / runs);
  EXPECT_GE(mean, ExactMultilinear(f, x) - 3 * sigma);
}

TEST(Pipage, RejectsBadInput) {
  Objective f = SmallCoverage();
  std::vector<double> x(5, 0.5);
  std::vector<int> group = {0, 0};
  std::vector<Rational> costs = {1, 1};
  EXPECT_THROW(Pipage(x, f, group, costs, 1), PreconditionError);
  group = {0, 7};
  EXPECT_THROW(Pipage(x, f, group, costs, 1), ReferenceError);
  group = {0, 1};
  costs = {1, -1};
  EXPECT_THROW(Pipage(x, f, group, costs, 1), PreconditionError);
}

TEST(SampleSet, Trivial) {
  std::vector<double> zero(4, 0.0);
  EXPECT_TRUE(SampleSet(zero, 0.2, FreeConstraint{}, 1).empty());
  std::vector<double> one = {1.0, 0.0};
  for (uint64_t s = 0; s < 100; ++s) {
    EXPECT_EQ(SampleSet(one, 0.0, FreeConstraint{}, s), std::vector<int>{0});
  }
}

TEST(SampleSet, FreeMarginalsAndIndependence) {
  std::vector<double> x = {0.5, 0.5, 0.9};
  const int draws = 40000;
  std::vector<int> hits(3, 0);
  int both = 0;
  for (int d = 0; d < draws; ++d) {
    std::vector<int> r = SampleSet(x, 0.1, FreeConstraint{}, d);
    std::vector<char> in(3, 0);
    for (int i : r) in[i] = 1;
    for (int i = 0; i < 3; ++i) hits[i] += in[i];
    both += in[0] && in[1];
  }
  for (int i = 0; i < 3; ++i) {
    const double p = 0.81 * x[i];
    const double sigma = std::sqrt(p * (1 - p) / draws);
    EXPECT_NEAR(static_cast<double>(hits[i]) / draws, p, 3 * sigma) << i;
  }
  const double p01 = 0.405 * 0.405;
  EXPECT_NEAR(static_cast<double>(both) / draws, p01, 3 * std::sqrt(p01 * (1 - p01) / draws));
}

TEST(SampleSet, MatroidMembershipAndNegativeCorrelation) {
  std::vector<double> x = {0.5, 0.5, 0.5, 0.5};
  UniformMatroid m{2};
  PartitionMatroid pm{{0, 0, 1, 1}, {1, 1}};
  const int draws = 30000;
  std::vector<int> hits(4, 0);
  int pair = 0;
  for (int d = 0; d < draws; ++d) {
    std::vector<int> r = SampleSet(x, 0.0, m, d);
    ASSERT_TRUE(IsMember(m, r));
    std::vector<char> in(4, 0);
    for (int i : r) in[i] = 1;
    for (int i = 0; i < 4; ++i) hits[i] += in[i];
    pair += in[0] && in[1];
    std::vector<int> q = SampleSet(x, 0.0, pm, d);
    ASSERT_TRUE(IsMember(pm, q));
  }
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(static_cast<double>(hits[i]) / draws, 0.5, 3 * std::sqrt(0.25 / draws));
  }
  // Positive correlation would put Pr(0 and 1) above 1/4.
  EXPECT_LE(static_cast<double>(pair) / draws, 0.25 + 3 * std::sqrt(0.25 * 0.75 / draws));
}

TEST(SampleSet, RejectsPointsOutsideTheHull) {
  std::vector<double> x = {0.8, 0.8};
  EXPECT_THROW(SampleSet(x, 0.1, UniformMatroid{1}, 1), PreconditionError);
  EXPECT_THROW(SampleSet(x, 1.0, FreeConstraint{}, 1), PreconditionError);
}

Instance OneConstraint(const std::vector<Rational>& weights, std::vector<Rational> capacities,
                       Objective f, AdditionalConstraint additional) {
  Instance inst;
  for (size_t i = 0; i < weights.size(); ++i) inst.labels.push_back("i" + std::to_string(i));
  inst.constraints.push_back({weights, std::move(capacities), {}});
  inst.objective = std::move(f);
  inst.additional = std::move(additional);
  return inst;
}

TEST(ContinuousGreedy, ModularIsOneLpSolve) {
  Objective f(ModularSpec{0, {Rational(3), Rational(4), Rational(2)}});
  Instance inst = OneConstraint({2, 3, 1}, {4}, f, FreeConstraint{});
  auto parts = SingletonPartitions(inst);
  int calls = 0;
  LinearOracle base = InstanceOracle(inst, parts, 0.99, 0.05);
  LinearOracle counted = [&](std::span<const double> c) {
    ++calls;
    return base(c);
  };
  FractionalPoint p = ContinuousGreedy(counted, f, 1);
  EXPECT_EQ(calls, 1);
  std::vector<double> c = {3, 4, 2};
  LpStats stats;
  InstanceLpOptimize(inst, parts, 0.99, c, 0.05, &stats);
  double value = 0.0;
  for (int i = 0; i < 3; ++i) value += c[i] * p.x[i];
  EXPECT_GE(value, 0.95 * stats.upper_bound - 1e-9);
  EXPECT_EQ(CheckFractionalPoint(inst, parts, 0.99, p, 1e-7), "");
}

TEST(ContinuousGreedy, RankOneMatroid) {
  CoverageSpec spec{{Rational(1), Rational(2)}, {{0}, {1}}};
  Objective f(spec);
  Instance inst = OneConstraint({1, 1}, {2}, f, UniformMatroid{1});
  auto parts = SingletonPartitions(inst);
  GreedyOptions opt;
  opt.steps = 20;
  FractionalPoint p = ContinuousGreedy(InstanceOracle(inst, parts, 0.99, 0.01), f, 7, opt);
  EXPECT_GE(ExactMultilinear(f, p.x), (1 - std::exp(-1.0) - 0.05) * 2);
  EXPECT_EQ(CheckFractionalPoint(inst, parts, 0.99, p, 1e-7), "");
}

TEST(ContinuousGreedy, SingleStepIsAVertex) {
  Objective f = SmallCoverage();
  Instance inst = OneConstraint({1, 1, 1, 1, 1}, {3, 2}, f, FreeConstraint{});
  auto parts = SingletonPartitions(inst);
  LinearOracle oracle = InstanceOracle(inst, parts, 0.99, 0.05);
  GreedyOptions opt;
  opt.steps = 1;
  FractionalPoint p = ContinuousGreedy(oracle, f, 3, opt);
  std::vector<double> zero(5, 0.0);
  std::vector<double> w = EstimateMarginals(f, zero, opt.samples, DeriveSeed(3, "greedy", 0));
  FractionalPoint v = oracle(w);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(p.x[i], v.x[i], 1e-12);
}

TEST(ContinuousGreedy, RejectsNonMonotone) {
  CutSpec cut{2, {{0, 1, Rational(1)}}, {0, 1}};
  Objective f(cut);
  Instance inst = OneConstraint({1, 1}, {2}, f, FreeConstraint{});
  auto parts = SingletonPartitions(inst);
  EXPECT_THROW(ContinuousGreedy(InstanceOracle(inst, parts, 0.99, 0.05), f, 1), ContractError);
}

TEST(ContinuousGreedy, TinyInstancesAgainstBruteForce) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    GeneratorOptions gen;
    gen.items = 6;
    gen.max_bins = 2;
    // Every item is below 0.99 of every capacity, so the singleton blocks
    // admit all of them and the integral optimum lies in the polytope.
    gen.max_weight = 4;
    gen.min_capacity = 5;
    gen.objective = seed % 2 ? ObjectiveFamily::kCoverage : ObjectiveFamily::kModular;
    gen.additional = AdditionalFamily::kUniform;
    Instance inst = RandomInstance(gen, seed);
    auto parts = SingletonPartitions(inst);
    FractionalPoint p = ContinuousGreedy(InstanceOracle(inst, parts, 0.99, 0.05),
                                         inst.objective, seed);
    ASSERT_EQ(CheckFractionalPoint(inst, parts, 0.99, p, 1e-7), "");
    const double opt = inst.objective.EvaluateDouble(BruteForceSolve(inst).selected);
    EXPECT_GE(ExactMultilinear(inst.objective, p.x), (1 - std::exp(-1.0) - 0.05) * opt) << seed;
  }
}

TEST(MeasuredGreedy, ModularMatchesContinuousGreedy) {
  Objective f(ModularSpec{1, {Rational(3), Rational(4), Rational(2)}});
  Instance inst = OneConstraint({2, 3, 1}, {4}, f, FreeConstraint{});
  auto parts = SingletonPartitions(inst);
  LinearOracle oracle = InstanceOracle(inst, parts, 0.99, 0.05);
  GreedyOptions opt;
  opt.steps = 50;
  const double cg = ExactMultilinear(f, ContinuousGreedy(oracle, f, 1, opt).x);
  FractionalPoint m = MeasuredContinuousGreedy(oracle, f, 1, opt);
  EXPECT_EQ(CheckFractionalPoint(inst, parts, 0.99, m, 1e-7), "");
  const double measured = ExactMultilinear(f, m.x);
  EXPECT_LE(measured, cg + 1e-9);
  EXPECT_GE(measured, (1 - std::exp(-1.0)) * cg - 1e-9);
}

TEST(MeasuredGreedy, SingleEdgeCut) {
  CutSpec cut{2, {{0, 1, Rational(1)}}, {0, 1}};
  Objective f(cut);
  Instance inst = OneConstraint({1, 1}, {2}, f, FreeConstraint{});
  auto parts = SingletonPartitions(inst);
  GreedyOptions opt;
  opt.steps = 20;
  FractionalPoint p = MeasuredContinuousGreedy(InstanceOracle(inst, parts, 0.99, 0.05), f, 2, opt);
  EXPECT_GE(ExactMultilinear(f, p.x), std::exp(-1.0) - 0.1);
  for (double v : p.x) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_EQ(CheckFractionalPoint(inst, parts, 0.99, p, 1e-7), "");
}

}  // namespace
}  // namespace mkcp
