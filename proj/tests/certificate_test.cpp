// Copyright 2026 The assign Authors
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

#include "assign/certificate.hpp"

#include <gtest/gtest.h>

#include <random>

#include "assign/oracle.hpp"
#include "assign/solver.hpp"
#include "test_util.hpp"

namespace assign {
namespace {

TEST(CheckFeasibleTest, Examples) {
  const Instance one = new_instance({{5}});
  EXPECT_TRUE(check_feasible(one, Labeling{{5}, {0}}));
  EXPECT_FALSE(check_feasible(one, Labeling{{4}, {0}}));
  EXPECT_TRUE(check_feasible(new_instance({{2, 1}, {2, 1}}), Labeling{{1, 1}, {1, 0}}));
}

TEST(CheckFeasibleTest, DimensionMismatch) {
  EXPECT_THROW(check_feasible(new_instance({{5}}), Labeling{{5, 1}, {0}}), DimensionMismatch);
}

TEST(CheckOptimalTest, SolverOutputIsOptimal) {
  const Instance inst = new_instance({{1, 2}, {3, 1}});
  EXPECT_EQ(check_optimal(inst, solve(inst)), Verdict::kOptimal);
}

TEST(CheckOptimalTest, SlackEdgeInMatching) {
  const Instance inst = new_instance({{1, 2}, {3, 1}});
  Solution sol;
  const std::vector<Index> identity{0, 1};
  sol.matching = Matching::from_permutation(identity);
  sol.labeling = initial_labeling(inst);
  sol.total_weight = sol.matching.weight(inst);
  EXPECT_EQ(check_optimal(inst, sol), Verdict::kSlackEdgeInMatching);
}

TEST(CheckOptimalTest, VerdictOrder) {
  const Instance inst = new_instance({{1, 2}, {3, 1}});
  Solution good = solve(inst);

  Solution partial = good;
  partial.matching.unlink_worker(0);
  partial.labeling = Labeling{{0, 0}, {0, 0}};  // also infeasible; perfection is checked first
  EXPECT_EQ(check_optimal(inst, partial), Verdict::kNotPerfect);

  Solution infeasible = good;
  infeasible.labeling.labels_x[1] -= 1;
  EXPECT_EQ(check_optimal(inst, infeasible), Verdict::kInfeasibleLabels);

  Solution loose = good;
  loose.labeling.labels_y[0] += 1;
  EXPECT_EQ(check_optimal(inst, loose), Verdict::kSlackEdgeInMatching);

  Solution lying = good;
  lying.total_weight += 1;
  EXPECT_EQ(check_optimal(inst, lying), Verdict::kWeightMismatch);
}

TEST(CheckOptimalTest, DimensionMismatch) {
  const Instance inst = new_instance({{1, 2}, {3, 1}});
  Solution sol = solve(new_instance({{5}}));
  EXPECT_THROW(check_optimal(inst, sol), DimensionMismatch);
}

TEST(CheckOptimalTest, SoundAgainstOracle) {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 1000; ++iter) {
    const Index n = 1 + iter % 7;
    const Instance inst = new_instance(testing::random_matrix(rng, n, n, -50, 50));
    const Solution sol = solve(inst);
    const bool optimal = check_optimal(inst, sol) == Verdict::kOptimal;
    EXPECT_EQ(optimal, sol.total_weight == brute_force_solve(inst).total_weight);
    EXPECT_TRUE(optimal);
  }
}

TEST(CheckOptimalTest, DetectsSwapOfUniqueOptimum) {
  std::mt19937_64 rng(29);
  int checked = 0;
  while (checked < 100) {
    const Index n = 2 + checked % 5;
    const Instance inst = new_instance(testing::random_matrix(rng, n, n, -50, 50));
    if (enumerate_optimal(inst).size() != 1) continue;
    const Solution sol = solve(inst);
    for (Index a = 0; a < n; ++a) {
      for (Index b = a + 1; b < n; ++b) {
        auto perm = sol.matching.permutation();
        std::swap(perm[a], perm[b]);
        Solution swapped = sol;
        swapped.matching = Matching::from_permutation(perm);
        swapped.total_weight = swapped.matching.weight(inst);
        EXPECT_NE(check_optimal(inst, swapped), Verdict::kOptimal);
      }
    }
    ++checked;
  }
}

}  // namespace
}  // namespace assign
