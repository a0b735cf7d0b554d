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
#include "mkcp/generators.h"
#include "mkcp/objective.h"
#include "mkcp/rng.h"

namespace mkcp {
namespace {

Objective TwoItemCoverage() {
  return Objective(CoverageSpec{{1, 1, 1}, {{0, 1}, {1, 2}}});
}

Objective Triangle() {
  CutSpec cut;
  cut.num_vertices = 3;
  cut.item_vertex = {0, 1, 2};
  cut.edges = {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}};
  return Objective(cut);
}

TEST(Evaluate, Examples) {
  Objective modular(ModularSpec{2, {1, 3}});
  std::vector<int> both{0, 1};
  EXPECT_EQ(modular.Evaluate(both), Rational(6));
  std::vector<int> one{0};
  EXPECT_EQ(Triangle().Evaluate(one), Rational(2));
  EXPECT_EQ(TwoItemCoverage().Evaluate(both), Rational(3));
  std::vector<int> bad{5};
  EXPECT_THROW(modular.Evaluate(bad), ReferenceError);
}

TEST(Evaluate, FamilyFlags) {
  EXPECT_TRUE(Objective(ModularSpec{2, {1, 3}}).modular());
  EXPECT_TRUE(Objective(ModularSpec{2, {1, 3}}).monotone());
  EXPECT_TRUE(TwoItemCoverage().monotone());
  EXPECT_FALSE(TwoItemCoverage().modular());
  EXPECT_FALSE(Triangle().monotone());
}

TEST(Marginal, Examples) {
  Objective modular(ModularSpec{0, {1, 3}});
  EXPECT_EQ(modular.Marginal({}, 1), Rational(3));
  std::vector<int> first{0};
  EXPECT_EQ(TwoItemCoverage().Marginal(first, 1), Rational(1));
  EXPECT_THROW(TwoItemCoverage().Marginal(first, 0), PreconditionError);
}

TEST(Marginal, SubmodularityOnRandomTriples) {
  for (int family = 0; family < 4; ++family) {
    const int n = 8;
    Objective f = RandomObjective(static_cast<ObjectiveFamily>(family), n, 31 + family);
    Rng rng(family);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<int> small, large;
      const int item = rng.UniformInt(0, n - 1);
      for (int i = 0; i < n; ++i) {
        if (i == item) continue;
        const double u = rng.Uniform();
        if (u < 0.3) {
          small.push_back(i);
          large.push_back(i);
        } else if (u < 0.6) {
          large.push_back(i);
        }
      }
      EXPECT_GE(f.Marginal(small, item), f.Marginal(large, item));
      EXPECT_GE(f.Marginal({}, item), f.Marginal(large, item));
      EXPECT_GE(f.Evaluate(large), 0);
    }
  }
}

TEST(Table, RejectsNonSubmodular) {
  // f({0,1}) - f({0}) > f({1}) - f({}).
  EXPECT_THROW(Objective(TableSpec{2, {0, 1, 1, 3}}), ParseError);
  EXPECT_THROW(Objective(TableSpec{2, {0, 1, 1}}), ParseError);
}

TEST(Multilinear, ModularClosedForm) {
  Objective f(ModularSpec{0, {2, 4}});
  std::vector<double> x{0.5, 0.25};
  MultilinearEstimate est = EstimateMultilinear(f, x, 10, 1);
  EXPECT_EQ(est.mean, 2.0);
  EXPECT_EQ(est.half_width, 0.0);
}

TEST(Multilinear, IntegralPointIsExact) {
  Objective f = TwoItemCoverage();
  std::vector<double> x{1.0, 0.0};
  MultilinearEstimate est = EstimateMultilinear(f, x, 10, 1);
  EXPECT_EQ(est.mean, 2.0);
  EXPECT_EQ(est.half_width, 0.0);
}

TEST(Multilinear, CoverageMatchesExpectation) {
  Objective f = TwoItemCoverage();
  std::vector<double> x{0.5, 0.5};
  // 0.25 * (0 + 2 + 2 + 3)
  const double exact = 1.75;
  EXPECT_DOUBLE_EQ(ExactMultilinear(f, x), exact);
  MultilinearEstimate est = EstimateMultilinear(f, x, 20000, 5);
  EXPECT_GT(est.half_width, 0.0);
  EXPECT_LE(std::abs(est.mean - exact), 3.0 * est.half_width);
}

TEST(Multilinear, ThreeItemEstimateWithinThreeHalfWidths) {
  Objective f = RandomObjective(ObjectiveFamily::kCoverage, 3, 8);
  std::vector<double> x{0.3, 0.6, 0.9};
  MultilinearEstimate est = EstimateMultilinear(f, x, 100000, 3);
  EXPECT_LE(std::abs(est.mean - ExactMultilinear(f, x)), 3.0 * est.half_width);
}

TEST(Multilinear, DeterministicForSeed) {
  Objective f = RandomObjective(ObjectiveFamily::kCut, 6, 2);
  std::vector<double> x(6, 0.4);
  EXPECT_EQ(EstimateMultilinear(f, x, 500, 77).mean, EstimateMultilinear(f, x, 500, 77).mean);
  x[0] = 1.5;
  EXPECT_THROW(EstimateMultilinear(f, x, 10, 1), PreconditionError);
}

TEST(Purge, Examples) {
  Objective cov = TwoItemCoverage();
  std::vector<int> both{0, 1};
  EXPECT_EQ(Purge(cov, both), both);
  CutSpec edge;
  edge.num_vertices = 2;
  edge.item_vertex = {0, 1};
  edge.edges = {{0, 1, 1}};
  EXPECT_EQ(Purge(Objective(edge), both), std::vector<int>{0});
  EXPECT_TRUE(Purge(cov, {}).empty());
}

TEST(Purge, NeverBelowEmptySet) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Objective f = RandomObjective(ObjectiveFamily::kCut, 7, seed);
    std::vector<int> set;
    for (int i = 0; i < 7; ++i) {
      if ((seed >> i) & 1) set.push_back(i);
    }
    std::vector<int> kept = Purge(f, set);
    EXPECT_GE(f.Evaluate(kept), f.Evaluate({}));
    EXPECT_TRUE(std::includes(set.begin(), set.end(), kept.begin(), kept.end()));
  }
}

TEST(Restrict, ResidualFunction) {
  Objective f = RandomObjective(ObjectiveFamily::kCoverage, 6, 4);
  std::vector<int> committed{1, 4};
  std::vector<int> survivors{0, 2, 5};
  Objective g = f.Restrict(committed, survivors);
  EXPECT_EQ(g.size(), 3);
  EXPECT_EQ(g.monotone(), f.monotone());
  std::vector<int> local{0, 2};
  std::vector<int> root{0, 1, 4, 5};
  EXPECT_EQ(g.Evaluate(local), f.Evaluate(root));
}

}  // namespace
}  // namespace mkcp
