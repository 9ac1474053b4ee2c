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

#ifndef EPR_MOE_HPP
#define EPR_MOE_HPP

#include <utility>
#include <vector>

#include <json.hpp>

#include "epr/graph.hpp"
#include "epr/sdp.hpp"

namespace epr {

inline constexpr double kMoeTol = 1e-6;

enum class MoeKind { kStarP, kStarQ, kPairR };

const char *to_string(MoeKind kind);

/// One failed bound lhs <= rhs at a vertex. witness[0] is the edge the
/// bound is evaluated at; the rest are the edges summed on the left.
struct MoeViolation {
    MoeKind kind = MoeKind::kStarP;
    int center = 0;
    std::vector<std::pair<int, int>> witness;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs
};

/// Every vertex i with degree d >= 2 and j in N(i):
/// sum_{k in N(i) \ j} g_ik <= P(g_ij, d).
std::vector<MoeViolation> check_star_p(const MomentSolution &sol, const WeightedGraph &g, double tol = kMoeTol);

/// sum_{k in N(i) \ j} g+_ik <= Q(g+_ij).
std::vector<MoeViolation> check_star_q(const MomentSolution &sol, const WeightedGraph &g, double tol = kMoeTol);

/// g_ij <= R(g_ik) and g_ik <= R(g_ij) for neighboring edges ij, ik.
std::vector<MoeViolation> check_pair_r(const MomentSolution &sol, const WeightedGraph &g, double tol = kMoeTol);

/// All three checks. Bounds missed by less than tol count as noise.
struct MoeSummary {
    std::vector<MoeViolation> violations;
    int checks = 0;
    int noise = 0;
    double min_slack = 0.0;

    bool ok() const { return violations.empty(); }
};

MoeSummary check_all(const MomentSolution &sol, const WeightedGraph &g, double tol = kMoeTol);

nlohmann::json to_json(const MoeViolation &v);
nlohmann::json to_json(const MoeSummary &s);

}  // namespace epr

#endif
