// Copyright 2026 The eprapprox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "epr/moe.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "epr/angles.hpp"

namespace epr {
namespace {

WeightedGraph path(int n) { return generate(GraphKind::kPath, {.n = n}); }

TEST(Moe, SingleEdgeHasNothingToCheck) {
    const WeightedGraph g = path(2);
    const MomentSolution sol = solve(g);
    const MoeSummary s = check_all(sol, g);
    EXPECT_EQ(s.checks, 0);
    EXPECT_TRUE(s.ok());
}

TEST(Moe, PathIsTightButSatisfied) {
    const WeightedGraph g = path(4);
    SolverOptions opt;
    opt.tol = 1e-8;
    const MomentSolution sol = solve(g, opt);
    EXPECT_TRUE(check_star_p(sol, g).empty());
    EXPECT_TRUE(check_star_q(sol, g).empty());
    EXPECT_TRUE(check_pair_r(sol, g).empty());
    const MoeSummary s = check_all(sol, g);
    EXPECT_TRUE(s.ok());
    // Two centers of degree 2: 4 star P, 4 star Q, 4 ordered pairs.
    EXPECT_EQ(s.checks, 12);
    EXPECT_LT(std::abs(s.min_slack), 1e-5);
}

TEST(Moe, StarWithThreeLeaves) {
    const WeightedGraph g = generate(GraphKind::kStar, {.n = 3});
    const MomentSolution sol = solve(g);
    const MoeSummary s = check_all(sol, g);
    EXPECT_TRUE(s.ok());
    EXPECT_EQ(s.checks, 3 + 3 + 6);
}

TEST(Moe, RandomGraphsSatisfyAllInequalities) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const WeightedGraph g = generate(GraphKind::kRandom, {.n = 6, .p = 0.5, .w_min = 0.5, .w_max = 2.0}, seed);
        if (g.num_edges() == 0) {
            continue;
        }
        const MomentSolution sol = solve(g);
        const MoeSummary s = check_all(sol, g);
        EXPECT_TRUE(s.ok()) << g.serialize() << to_json(s).dump();
    }
}

TEST(Moe, FabricatedViolationsAreReported) {
    const WeightedGraph g = path(3);
    MomentSolution sol = solve(g);
    sol.g = {1.0, 1.0};
    const auto p = check_star_p(sol, g);
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p[0].kind, MoeKind::kStarP);
    EXPECT_EQ(p[0].center, 1);
    EXPECT_NEAR(p[0].rhs, -0.5, 1e-15);
    EXPECT_NEAR(p[0].slack, -1.5, 1e-15);
    ASSERT_EQ(p[0].witness.size(), 2u);
    EXPECT_EQ(p[0].witness[0], (std::pair<int, int>{0, 1}));
    EXPECT_EQ(check_star_q(sol, g).size(), 2u);
    // Both orientations of the pair are evaluated.
    EXPECT_EQ(check_pair_r(sol, g).size(), 2u);
    const nlohmann::json j = to_json(p[0]);
    EXPECT_EQ(j["kind"], "star_P");
}

TEST(Moe, NegativeValuesOnlyAffectStarP) {
    const WeightedGraph g = generate(GraphKind::kStar, {.n = 3});
    MomentSolution sol = solve(g);
    sol.g = {-0.9, -0.9, -0.9};
    EXPECT_TRUE(check_star_q(sol, g).empty());
    EXPECT_TRUE(check_pair_r(sol, g).empty());
    EXPECT_TRUE(check_star_p(sol, g).empty());
}

TEST(Moe, PairROrientation) {
    const WeightedGraph g = path(3);
    MomentSolution sol = solve(g);
    // R is not monotone below -1/2, so the two orientations can disagree.
    sol.g = {-0.9, 0.9};
    const auto r = check_pair_r(sol, g);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].witness[0], (std::pair<int, int>{1, 2}));
    EXPECT_NEAR(r[0].rhs, r_bound(-0.9), 1e-15);
}

TEST(Moe, RejectsMismatchedGraph) {
    const MomentSolution sol = solve(path(3));
    EXPECT_THROW(check_all(sol, path(4)), std::invalid_argument);
}

}  // namespace
}  // namespace epr
