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

#include "epr/angles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace epr {
namespace {

const double kSqrt3Half = std::sqrt(3.0) / 2.0;

// Reference values computed once with 50-digit arithmetic.
constexpr double kQBeta = 0.3079035697521052;
constexpr double kThetaBeta = 0.19125979483339317;
constexpr double kLambdaSqrt3Half = 0.32097760255968;
constexpr double kLambdaOne = 0.461070876484;
constexpr double kFStarZero = 0.82402815330565;

TEST(QBound, Pieces) {
    EXPECT_DOUBLE_EQ(q_bound(0.5), 0.5);
    EXPECT_NEAR(r_bound(0.5), 0.5, 1e-15);
    EXPECT_NEAR(q_bound(kSqrt3Half), 0.0, 1e-15);
    EXPECT_NEAR(q_bound(0.67), kQBeta, 1e-15);
    EXPECT_EQ(q_bound(0.9), 0.0);
    EXPECT_EQ(q_bound(0.2), 0.8);
}

TEST(QBound, ContinuousAndEqualToROnMiddlePiece) {
    for (int k = 0; k <= 1000; ++k) {
        const double x = k / 1000.0;
        if (x >= 0.5 && x <= kSqrt3Half) {
            EXPECT_EQ(q_bound(x), r_bound(x));
        }
        if (k > 0) {
            EXPECT_LT(std::abs(q_bound(x) - q_bound(x - 1e-3)), 5e-3);
        }
    }
}

TEST(QBound, RejectsOutOfDomain) {
    EXPECT_THROW(q_bound(-0.1), DomainError);
    EXPECT_THROW(q_bound(1.1), DomainError);
    EXPECT_NO_THROW(q_bound(1.0 + 1e-13));
}

TEST(RBound, Examples) {
    EXPECT_NEAR(r_bound(0.0), kSqrt3Half, 1e-15);
    EXPECT_NEAR(r_bound(1.0), -0.5, 1e-15);
    for (double x : {0.0, 0.3, 0.6}) {
        EXPECT_NEAR(r_bound(r_bound(x)), x, 1e-14);
    }
    EXPECT_THROW(r_bound(-1.5), DomainError);
}

TEST(Theta, Breakpoints) {
    const Schedule s;
    EXPECT_EQ(s.theta(0.0), 0.0);
    EXPECT_NEAR(s.theta(q_bound(0.67)), 0.049, 1e-15);
    EXPECT_NEAR(s.theta(1.0), 2.0 * (1.0 - 0.839511), 1e-15);
    EXPECT_NEAR(s.theta(0.67), kThetaBeta, 1e-15);
    EXPECT_THROW(s.theta(1.5), DomainError);
}

TEST(Theta, SlopeChain) {
    const Schedule s;
    EXPECT_NEAR(s.theta_slope(1), 0.1591407, 1e-7);
    EXPECT_NEAR(s.theta_slope(2), 0.3928782, 1e-7);
    EXPECT_NEAR(s.theta_slope(3), 0.3930855, 1e-7);
    EXPECT_LE(s.theta_slope(1), 0.2);
    EXPECT_LE(0.2, s.theta_slope(2));
    EXPECT_LE(s.theta_slope(2), 0.393);
    EXPECT_LE(0.393, s.theta_slope(3));
}

TEST(Theta, SubadditiveProductProperty) {
    const Schedule s;
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < 10000; ++t) {
        const int p = 1 + static_cast<int>(rng() % 5);
        std::vector<double> xs(p);
        double sum = 0.0;
        for (double &x : xs) {
            x = unit(rng);
            sum += x;
        }
        // Rescale so that the total is uniform in [0, 1].
        const double total = unit(rng);
        double prod = 1.0;
        for (double &x : xs) {
            x *= total / sum;
            prod *= 1.0 - s.theta(x);
        }
        EXPECT_GE(prod, 1.0 - s.theta(std::min(total, 1.0)) - 1e-15);
    }
}

TEST(Lambda, Examples) {
    const Schedule s;
    EXPECT_NEAR(s.lambda(0.67), s.theta(0.67), 1e-12);
    EXPECT_NEAR(s.lambda(kSqrt3Half), kLambdaSqrt3Half, 1e-13);
    EXPECT_NEAR(s.lambda(1.0), kLambdaOne, 1e-12);
    EXPECT_NEAR(s.lambda(1.0), std::pow(2.0 * 0.839511 - 1.0, 2), 1e-15);
}

TEST(Nu, Examples) {
    const Schedule s;
    EXPECT_EQ(s.nu(0.0), 0.0);
    EXPECT_EQ(s.nu(-0.4), 0.0);
    EXPECT_NEAR(std::sin(s.nu(1.0)), 2.0 * 0.839511 - 1.0, 1e-15);
    EXPECT_NEAR(std::pow(std::sin(s.nu(kSqrt3Half)), 2), kLambdaSqrt3Half, 1e-13);
    EXPECT_THROW(s.nu(1.01), DomainError);
}

TEST(Nu, MonotoneOnUnitInterval) {
    const Schedule s;
    double prev = s.nu(0.0);
    for (int k = 1; k <= 1000; ++k) {
        const double v = s.nu(k / 1000.0);
        EXPECT_GE(v, prev) << k;
        prev = v;
    }
}

TEST(FStar, Examples) {
    const Schedule s;
    EXPECT_NEAR(s.f_star(0.0), kFStarZero, 1e-13);
    EXPECT_NEAR(s.f_star(0.0), std::sqrt(1.0 - s.lambda(kSqrt3Half)), 1e-15);
    for (int k = 0; k < 50; ++k) {
        const double x = -1.0 + (1.0 - kSqrt3Half) * (k + 1) / 50.0;
        EXPECT_GT(s.f_star(x), 0.6) << x;
    }
}

TEST(F, DecreasingInYAboveBeta) {
    const Schedule s;
    const double hi = r_bound(0.0);
    double prev = s.f(0.0, 0.67 + 1e-9);
    for (int k = 1; k <= 200; ++k) {
        const double y = 0.67 + (hi - 0.67) * k / 200.0;
        const double v = s.f(0.0, y);
        EXPECT_LE(v, prev + 1e-15) << y;
        prev = v;
    }
}

TEST(StarBound, Examples) {
    EXPECT_NEAR(star_bound(1.0, 2), -0.5, 1e-15);
    EXPECT_EQ(star_bound(-0.9, 3), 1.0);
    for (int d : {2, 3, 5}) {
        const double g = -1.0 / d;
        const double dd = d;
        const double radical = 0.5 * (2.0 - dd - g + std::sqrt((dd * dd - 1.0) * (1.0 - g * g)));
        EXPECT_NEAR(radical, 1.0, 1e-12) << d;
        EXPECT_NEAR(star_bound(g, d), 1.0, 1e-12) << d;
    }
    EXPECT_THROW(star_bound(0.0, 1), DomainError);
    EXPECT_THROW(star_bound(2.0, 3), DomainError);
}

TEST(StarBound, NeverExceedsOne) {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const int d = 2 + static_cast<int>(rng() % 10);
        EXPECT_LE(star_bound(unit(rng), d), 1.0 + 1e-15);
    }
}

TEST(ScheduleParams, DefaultInstantiation) {
    const ScheduleParams p = ScheduleParams::defaults();
    EXPECT_TRUE(p.is_default());
    EXPECT_TRUE(p.invariant_violations().empty());
    EXPECT_EQ(p.theta_points[0].x, 0.0);
    EXPECT_NEAR(p.theta_points[1].x, kQBeta, 1e-15);
    EXPECT_NEAR(p.theta_points[2].y, kThetaBeta, 1e-15);
    const nlohmann::json j = p.to_json();
    EXPECT_EQ(j["variant"], "default");
    EXPECT_EQ(j["alpha_prime"], 0.839511);
}

TEST(ScheduleParams, ShiftedBetaBreaksContinuity) {
    ScheduleParams p = ScheduleParams::defaults();
    p.beta = 0.60;
    EXPECT_FALSE(p.is_default());
    EXPECT_FALSE(p.invariant_violations().empty());
    // Rebuilding the breakpoints restores continuity, though not every beta
    // gives a convex Theta.
    EXPECT_TRUE(ScheduleParams::from_constants(0.839511, 0.65, 0.049).invariant_violations().empty());
    EXPECT_FALSE(ScheduleParams::from_constants(0.839511, 0.60, 0.049).invariant_violations().empty());
}

TEST(LimitConstants, ClosedForms) {
    const LimitConstants lc = limit_constants();
    EXPECT_NEAR(lc.x, 0.5665490330101321, 1e-14);
    EXPECT_NEAR(lc.alpha, 0.8395110965976421, 1e-14);
    EXPECT_NEAR(lc.ansatz_cap, (3.0 + std::sqrt(5.0)) / 6.0, 1e-15);
    EXPECT_GE(lc.alpha, 0.839511);
}

TEST(Schedule, Deterministic) {
    const Schedule a;
    const Schedule b;
    for (int k = 0; k <= 100; ++k) {
        const double x = -1.0 + k / 50.0;
        EXPECT_EQ(a.nu(x), b.nu(x));
        EXPECT_EQ(a.f_star(x), b.f_star(x));
    }
}

}  // namespace
}  // namespace epr
