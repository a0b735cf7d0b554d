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

#include "mkcp/configuration_lp.h"
#include "mkcp/errors.h"
#include "mkcp/exact.h"
#include "mkcp/generators.h"
#include "mkcp/knapsack.h"
#include "mkcp/rng.h"
#include "support.h"

namespace mkcp {
namespace {

std::vector<Rational> R(std::initializer_list<int> v) {
  std::vector<Rational> out;
  for (int x : v) out.push_back(Rational(x));
  return out;
}

double Profit(const std::vector<int>& set, const std::vector<double>& p) {
  double v = 0.0;
  for (int i : set) v += p[i];
  return v;
}

TEST(KnapsackFptas, Examples) {
  auto w = R({1, 2, 3});
  std::vector<double> p{1, 2, 3};
  auto set = KnapsackFptas(w, p, Rational(4), 0.1);
  EXPECT_GE(Profit(set, p), 3.6);
  EXPECT_EQ(ExactKnapsack(w, R({1, 2, 3}), Rational(4)).profit, Rational(4));
  EXPECT_TRUE(KnapsackFptas(R({5, 6}), std::vector<double>{1, 1}, Rational(4), 0.1).empty());
  EXPECT_EQ(KnapsackFptas(R({3}), std::vector<double>{2}, Rational(4), 0.1), std::vector<int>{0});
}

TEST(KnapsackFptas, RandomAgainstExact) {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = rng.UniformInt(1, 14);
    std::vector<Rational> w(n), pr(n);
    std::vector<double> p(n);
    for (int i = 0; i < n; ++i) {
      w[i] = testing::Frac(rng.UniformInt(1, 20), rng.UniformInt(1, 3));
      p[i] = rng.UniformInt(0, 50) + rng.Uniform();
      pr[i] = RationalFromDouble(p[i]);
    }
    const Rational cap = rng.UniformInt(1, 40);
    const double eps = trial % 2 ? 0.1 : 0.3;
    auto set = KnapsackFptas(w, p, cap, eps);
    Rational load = 0;
    for (int i : set) load += w[i];
    ASSERT_LE(load, cap);
    const double opt = ExactKnapsack(w, pr, cap).profit.get_d();
    EXPECT_GE(Profit(set, p), (1 - eps) * opt - 1e-9);
  }
}

// beta.y > bins, and either a box certificate or beta(C) <= 1/(1-eps) for
// every configuration, checked with the exact knapsack.
void ExpectSeparating(const std::vector<Rational>& w, const Rational& cap, int bins,
                      const std::vector<double>& y, const SeparationResult& r, double eps) {
  ASSERT_FALSE(r.in_polytope);
  Rational dot = 0;
  std::vector<Rational> beta;
  int nonzero = 0;
  for (size_t i = 0; i < y.size(); ++i) {
    beta.push_back(RationalFromDouble(r.beta[i]));
    dot += beta.back() * RationalFromDouble(y[i]);
    nonzero += r.beta[i] != 0.0;
  }
  EXPECT_GT(dot, bins);
  if (nonzero == 1) {
    for (size_t i = 0; i < y.size(); ++i) {
      if (r.beta[i] != 0.0 && (w[i] > cap || r.beta[i] == bins)) return;
    }
  }
  const Rational best = ExactKnapsack(w, beta, cap).profit;
  EXPECT_LE(best.get_d(), 1.0 / (1.0 - eps) + 1e-9);
}

TEST(SeparateBlock, Examples) {
  auto w = R({3, 4});
  std::vector<double> zero{0, 0};
  EXPECT_TRUE(SeparateBlock(w, Rational(5), 2, zero, 0.1).in_polytope);

  std::vector<Rational> one{Rational(5)};
  std::vector<double> two{2.0};
  ExpectSeparating(one, Rational(5), 1, two, SeparateBlock(one, Rational(5), 1, two, 0.1), 0.1);

  // Items {0,1} in bin 0 and {2} in bin 1.
  auto w3 = R({2, 3, 5});
  std::vector<double> packed{1, 1, 1};
  for (double eps : {0.01, 0.1, 0.5}) {
    SeparationResult r = SeparateBlock(w3, Rational(5), 2, packed, eps);
    ASSERT_TRUE(r.in_polytope);
    std::vector<double> scaled{1 - eps, 1 - eps, 1 - eps};
    EXPECT_EQ(CheckBlockPoint(w3, Rational(5), 2, scaled, r.witness, 1e-7), "");
  }
}

TEST(SeparateBlock, RandomVerdictsCarryCertificates) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.UniformInt(1, 8);
    std::vector<Rational> w(n);
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
      w[i] = rng.UniformInt(1, 10);
      y[i] = rng.Uniform() < 0.2 ? 0.0 : rng.Uniform() * 1.2;
    }
    const Rational cap = rng.UniformInt(5, 15);
    const int bins = rng.UniformInt(1, 3);
    const double eps = 0.1;
    SeparationResult r = SeparateBlock(w, cap, bins, y, eps);
    if (r.in_polytope) {
      std::vector<double> scaled(y);
      for (double& v : scaled) v *= 1 - eps;
      EXPECT_EQ(CheckBlockPoint(w, cap, bins, scaled, r.witness, 1e-7), "");
    } else {
      ExpectSeparating(w, cap, bins, y, r, eps);
    }
  }
}

TEST(BlockLpOptimize, Examples) {
  auto w = R({4, 7});
  std::vector<double> neg{-1, 0};
  BlockLpResult r = BlockLpOptimize(w, Rational(10), 1, neg, 0.05);
  EXPECT_EQ(r.value, 0.0);

  std::vector<double> ones{1, 1};
  r = BlockLpOptimize(w, Rational(10), 1, ones, 0.05);
  const Rational exact = ExactBlockLp(w, Rational(10), 1, R({1, 1})).value;
  EXPECT_EQ(exact, Rational(1));
  EXPECT_GE(r.value, 0.95 * exact.get_d());
  EXPECT_EQ(CheckBlockPoint(w, Rational(10), 1, r.y, r.z, 1e-7), "");

  r = BlockLpOptimize(w, Rational(7), 2, ones, 0.05);
  EXPECT_EQ(ExactBlockLp(w, Rational(7), 2, R({1, 1})).value, Rational(2));
  EXPECT_GE(r.value, 1.9);
}

TEST(BlockLpOptimize, RandomAgainstExactLp) {
  Rng rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = rng.UniformInt(1, 10);
    std::vector<Rational> w(n), cr(n);
    std::vector<double> c(n);
    for (int i = 0; i < n; ++i) {
      w[i] = rng.UniformInt(1, 12);
      c[i] = rng.UniformInt(-2, 9);
      cr[i] = RationalFromDouble(c[i]);
    }
    const Rational cap = rng.UniformInt(5, 15);
    const int bins = rng.UniformInt(1, 3);
    BlockLpResult r = BlockLpOptimize(w, cap, bins, c, 0.05);
    EXPECT_EQ(CheckBlockPoint(w, cap, bins, r.y, r.z, 1e-7), "");
    EXPECT_GE(r.value, 0.95 * ExactBlockLp(w, cap, bins, cr).value.get_d() - 1e-9);
  }
}

Instance SingleBin(const Rational& weight, const Rational& capacity) {
  Instance inst;
  inst.labels = {"a"};
  inst.constraints.push_back({{weight}, {capacity}, {}});
  inst.objective = Objective(ModularSpec{0, {1}});
  return inst;
}

TEST(InstanceLpOptimize, Examples) {
  Instance light = SingleBin(1, 100);
  auto parts = SingletonPartitions(light);
  std::vector<double> zero{0.0}, one{1.0};
  EXPECT_EQ(InstanceLpOptimize(light, parts, 0.05, zero, 0.1).x[0], 0.0);
  FractionalPoint p = InstanceLpOptimize(light, parts, 0.05, one, 0.1);
  EXPECT_GE(p.x[0], 0.9);
  EXPECT_EQ(CheckFractionalPoint(light, parts, 0.05, p, 1e-7), "");

  Instance heavy = SingleBin(10, 100);
  p = InstanceLpOptimize(heavy, SingletonPartitions(heavy), 0.05, one, 0.1);
  EXPECT_EQ(p.x[0], 0.0);
}

TEST(InstanceLpOptimize, RandomPointsAreValid) {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    GeneratorOptions opt;
    opt.items = 12;
    opt.constraints = 1 + seed % 2;
    opt.max_bins = 6;
    opt.additional = static_cast<AdditionalFamily>(seed % 3);
    opt.max_weight = 4;
    opt.min_capacity = 20;
    opt.max_capacity = 30;
    Instance inst = RandomInstance(opt, seed);
    // Alternate singleton blocks and one block per constraint.
    std::vector<BlockPartition> parts = SingletonPartitions(inst);
    if (seed % 3 == 0) {
      for (int t = 0; t < inst.num_constraints(); ++t) {
        Block all{t, {}, inst.constraints[t].capacities[0]};
        for (int b = 0; b < inst.constraints[t].num_bins(); ++b) {
          all.bins.push_back(b);
          all.capacity = std::min(all.capacity, inst.constraints[t].capacities[b]);
        }
        parts[t] = {all};
      }
    }
    Rng rng(seed);
    std::vector<double> c(opt.items);
    for (double& v : c) v = rng.UniformInt(-1, 10);
    LpStats stats;
    FractionalPoint p = InstanceLpOptimize(inst, parts, 0.2, c, 0.1, &stats);
    EXPECT_EQ(CheckFractionalPoint(inst, parts, 0.2, p, 1e-7), "") << seed;
    EXPECT_GE(stats.value, 0.9 * stats.upper_bound - 1e-9) << seed;

    ExactPoint e = SnapToExact(inst, parts, p);
    for (int t = 0; t < inst.num_constraints(); ++t) {
      std::vector<Rational> sum(opt.items, 0);
      for (size_t j = 0; j < parts[t].size(); ++j) {
        const ExactBlockPoint& eb = e.blocks[t][j];
        std::vector<Rational> cover(opt.items, 0);
        Rational total = 0;
        for (const ExactConfig& config : eb.z) {
          Rational load = 0;
          for (int i : config.items) {
            load += inst.constraints[t].weights[i];
            cover[i] += config.weight;
          }
          EXPECT_LE(load, parts[t][j].capacity);
          EXPECT_LE(config.weight, 1);
          total += config.weight;
        }
        EXPECT_LE(total, parts[t][j].size());
        for (int i = 0; i < opt.items; ++i) {
          EXPECT_LE(eb.y[i], cover[i]);
          sum[i] += eb.y[i];
        }
      }
      EXPECT_EQ(sum, e.x);
    }
  }
}

}  // namespace
}  // namespace mkcp
