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

#include "mkcp/association.h"
#include "mkcp/errors.h"
#include "support.h"

namespace mkcp {
namespace {

LinearConstraint Tight(const std::vector<Rational>& v) {
  LinearConstraint c{std::vector<Rational>(v.size(), 1), 0};
  for (const Rational& x : v) c.bound += x;
  return c;
}

TEST(MakePerfect, PerfectInputUnchanged) {
  std::vector<Rational> x{Rational(1, 2), Rational(1, 3)};
  std::vector<std::vector<Rational>> v{{Rational(1, 2), 0}, {0, Rational(1, 3)}};
  MakePerfectResult r = MakePerfect(x, v, {Tight(v[0]), Tight(v[1])});
  EXPECT_EQ(r.vectors, v);
  EXPECT_EQ(r.iterations, 0);
}

TEST(MakePerfect, SingleVector) {
  std::vector<Rational> x{Rational(1, 2), 1};
  MakePerfectResult r = MakePerfect(x, {x}, {Tight(x)});
  EXPECT_EQ(r.vectors[0], x);
}

TEST(MakePerfect, ThreeVectorExample) {
  std::vector<Rational> x{1, 1, 1};
  std::vector<std::vector<Rational>> v{{Rational(1, 3), 0, Rational(2, 3)},
                                       {0, 1, 0},
                                       {Rational(2, 3), 0, Rational(1, 3)}};
  std::vector<LinearConstraint> cs{Tight(v[0]), Tight(v[1]), Tight(v[2])};
  testing::DecompositionCase dc{x, v, cs};
  MakePerfectResult r = MakePerfect(x, v, cs);
  EXPECT_EQ(testing::CheckDecompositionState(dc, r.vectors, true), "");
  EXPECT_TRUE(IsPerfect(r.vectors));
  EXPECT_TRUE(IsDecomposition(x, r.vectors));
  EXPECT_EQ(r.initial_edges, 4);
  EXPECT_LE(r.iterations, r.initial_edges);
}

TEST(MakePerfect, RejectsBadInput) {
  std::vector<Rational> x{1};
  std::vector<std::vector<Rational>> v{{Rational(1, 2)}};
  EXPECT_THROW(MakePerfect(x, v, {Tight(v[0])}), PreconditionError);
  std::vector<std::vector<Rational>> w{{1}};
  LinearConstraint tight{{1}, Rational(1, 2)};
  EXPECT_THROW(MakePerfect(x, w, {tight}), PreconditionError);
}

TEST(MakePerfect, RandomDecompositionsKeepInvariants) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    testing::DecompositionCase dc = testing::RandomDecomposition(rng, 30, 12);
    std::string error;
    MakePerfectResult r = MakePerfect(
        dc.x, dc.vectors, dc.constraints, [&](const std::vector<std::vector<Rational>>& lam) {
          if (error.empty()) error = testing::CheckDecompositionState(dc, lam, false);
        });
    EXPECT_EQ(error, "") << trial;
    EXPECT_EQ(testing::CheckDecompositionState(dc, r.vectors, true), "") << trial;
    EXPECT_LE(r.iterations, r.initial_edges);
    for (size_t k = 0; k < r.vectors.size(); ++k) {
      EXPECT_NE(SemiSatisfyWitness(r.vectors[k], dc.constraints[k]), -2);
    }
  }
}

TEST(SemiSatisfyWitness, PicksLargestContribution) {
  LinearConstraint c{{1, 2, 3}, 2};
  std::vector<Rational> v{1, 1, 1};
  EXPECT_EQ(SemiSatisfyWitness(v, c), -2);
  c.bound = 3;
  EXPECT_EQ(SemiSatisfyWitness(v, c), 2);
  c.bound = 6;
  EXPECT_EQ(SemiSatisfyWitness(v, c), -1);
}

TEST(BlockAssociate, EmptySupport) {
  std::vector<Rational> w{5, 6};
  BlockPartition blocks{Block{0, {0}, 10}, Block{0, {1, 2}, 10}};
  std::vector<ExactBlockPoint> points(2, ExactBlockPoint{{0, 0}, {}});
  std::vector<Rational> x{0, 0};
  BlockAssociation a = BlockAssociate(x, points, blocks, w, Rational(1, 4));
  EXPECT_TRUE(a.sets[0].empty());
  EXPECT_TRUE(a.sets[1].empty());
}

TEST(BlockAssociate, SingleCarryingBlock) {
  std::vector<Rational> w{5, 6, 7};
  BlockPartition blocks{Block{0, {0, 1}, 10}, Block{0, {2}, 10}};
  std::vector<Rational> x{Rational(1, 2), 0, Rational(1, 3)};
  std::vector<ExactBlockPoint> points{
      {x, {{{0}, Rational(1, 2)}, {{2}, Rational(1, 3)}}},
      {{0, 0, 0}, {}}};
  BlockAssociation a = BlockAssociate(x, points, blocks, w, Rational(1, 4));
  EXPECT_EQ(a.sets[0], (std::vector<int>{0, 2}));
  EXPECT_TRUE(a.sets[1].empty());
}

TEST(BlockAssociate, RandomPointsPassPropertyChecker) {
  Rng rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    testing::AssociationCase ac = testing::RandomAssociationCase(rng, trial % 3 == 0 ? 8 : 20, 4);
    BlockAssociation a = BlockAssociate(ac.x, ac.points, ac.blocks, ac.weights, ac.mu);
    EXPECT_EQ(testing::CheckAssociation(ac, a), "") << trial;
  }
}

}  // namespace
}  // namespace mkcp
