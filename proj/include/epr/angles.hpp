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

#ifndef EPR_ANGLES_HPP
#define EPR_ANGLES_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace epr {

/// Rounding slack absorbed at domain edges and inside square roots.
inline constexpr double kClampSlack = 1e-12;

/// Argument outside the documented domain of a schedule function.
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Internal inconsistency in the schedule, e.g. a negative radicand.
class ScheduleError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Breakpoint {
    double x = 0.0;
    double y = 0.0;
};

/// Constants of the angle schedule plus the breakpoints of Theta.
struct ScheduleParams {
    double alpha_prime = 0.839511;
    double beta = 0.67;
    double gamma = 0.049;
    std::array<Breakpoint, 4> theta_points{};
    std::string variant;

    /// The instantiation with the certified ratio 0.839511.
    static ScheduleParams defaults();
    /// Builds Theta through (0, 0), (Q(beta), gamma),
    /// (beta, (gamma/2 + a(1+beta) - 1)^2 / (1-gamma)), (1, 2(1-a)).
    static ScheduleParams from_constants(double alpha_prime, double beta, double gamma,
                                         std::string variant = "custom");

    bool is_default() const;
    /// Human-readable descriptions of failed invariants; empty when valid.
    std::vector<std::string> invariant_violations() const;
    nlohmann::json to_json() const;
};

/// Aggregate neighbor bound: 1 - x on [0, 1/2], R(x) on (1/2, sqrt(3)/2],
/// 0 beyond. Domain [0, 1].
double q_bound(double x);

/// Pairwise neighbor bound (sqrt(3(1 - x^2)) - x) / 2. Domain [-1, 1].
double r_bound(double x);

/// Star bound P(g, d) on the other d - 1 edges at a degree-d vertex.
/// Domain |g| <= 1, d >= 2.
double star_bound(double g, int d);

/// Evaluates Theta, Lambda, nu and friends for fixed parameters.
class Schedule {
   public:
    explicit Schedule(ScheduleParams params = ScheduleParams::defaults());

    const ScheduleParams &params() const { return params_; }

    /// Piecewise-linear interpolation of the breakpoints. Domain [0, 1].
    double theta(double x) const;
    /// Line through breakpoints k - 1 and k (k = 1, 2, 3), evaluated
    /// anywhere without a domain check.
    double theta_piece(int k, double x) const;
    double theta_slope(int k) const;

    /// (Theta(Q(x))/2 + a(1+x) - 1)^2 / (1 - Theta(Q(x))). Domain [0, 1].
    double lambda(double x) const;
    /// Theta(x+) for x <= beta, Lambda(x+) above. Domain [-1, 1].
    double nu_tilde(double x) const;
    /// arcsin(sqrt(nu_tilde(x))), in [0, pi/2].
    double nu(double x) const;

    /// sqrt((1 - Lambda(y+)) (1 - Theta(Q(y+) - x+))). Domain [-1, 1]^2.
    double f(double x, double y) const;
    /// f(x, R(x)).
    double f_star(double x) const;

   private:
    ScheduleParams params_;
};

/// Closed-form constants of the worst single-edge analysis and of the
/// ansatz ceiling on the 4-cycle.
struct LimitConstants {
    double x;            // maximizing edge value
    double alpha;        // best ratio achievable by any schedule
    double ansatz_cap;   // (3 + sqrt(5)) / 6
};

LimitConstants limit_constants();

}  // namespace epr

#endif
