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

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

#include "epr/angles.hpp"

namespace epr {

namespace {

using Sink = std::function<void(MoeViolation &&)>;

double clip(double v, double lo) { return std::clamp(v, lo, 1.0); }

std::pair<int, int> edge_pair(const WeightedGraph &g, int k) {
    const Edge &e = g.edges()[k];
    return {e.u, e.v};
}

void check_inputs(const MomentSolution &sol, const WeightedGraph &g) {
    if (sol.edges != g.edges()) {
        throw std::invalid_argument("moe: solution was not solved on this graph");
    }
}

void scan_star(const MomentSolution &sol, const WeightedGraph &g, MoeKind kind, const Sink &sink) {
    for (int i = 0; i < g.num_vertices(); ++i) {
        const auto inc = g.incident_edges(i);
        const int d = static_cast<int>(inc.size());
        if (d < 2) {
            continue;
        }
        for (int j : inc) {
            MoeViolation rec;
            rec.kind = kind;
            rec.center = i;
            rec.witness.push_back(edge_pair(g, j));
            for (int k : inc) {
                if (k == j) {
                    continue;
                }
                rec.witness.push_back(edge_pair(g, k));
                rec.lhs += kind == MoeKind::kStarP ? sol.g[k] : std::max(sol.g[k], 0.0);
            }
            // Bound arguments are clipped into the function domain only.
            rec.rhs = kind == MoeKind::kStarP ? star_bound(clip(sol.g[j], -1.0), d) : q_bound(clip(sol.g[j], 0.0));
            rec.slack = rec.rhs - rec.lhs;
            sink(std::move(rec));
        }
    }
}

void scan_pair(const MomentSolution &sol, const WeightedGraph &g, const Sink &sink) {
    for (int i = 0; i < g.num_vertices(); ++i) {
        const auto inc = g.incident_edges(i);
        for (size_t a = 0; a < inc.size(); ++a) {
            for (size_t b = 0; b < inc.size(); ++b) {
                if (a == b) {
                    continue;
                }
                MoeViolation rec;
                rec.kind = MoeKind::kPairR;
                rec.center = i;
                rec.witness = {edge_pair(g, inc[a]), edge_pair(g, inc[b])};
                rec.lhs = sol.g[inc[a]];
                rec.rhs = r_bound(clip(sol.g[inc[b]], -1.0));
                rec.slack = rec.rhs - rec.lhs;
                sink(std::move(rec));
            }
        }
    }
}

std::vector<MoeViolation> collect(double tol, const std::function<void(const Sink &)> &scan) {
    std::vector<MoeViolation> out;
    scan([&](MoeViolation &&rec) {
        if (rec.slack < -tol) {
            out.push_back(std::move(rec));
        }
    });
    return out;
}

}  // namespace

const char *to_string(MoeKind kind) {
    switch (kind) {
        case MoeKind::kStarP:
            return "star_P";
        case MoeKind::kStarQ:
            return "star_Q";
        case MoeKind::kPairR:
            return "pair_R";
    }
    return "unknown";
}

std::vector<MoeViolation> check_star_p(const MomentSolution &sol, const WeightedGraph &g, double tol) {
    check_inputs(sol, g);
    return collect(tol, [&](const Sink &s) { scan_star(sol, g, MoeKind::kStarP, s); });
}

std::vector<MoeViolation> check_star_q(const MomentSolution &sol, const WeightedGraph &g, double tol) {
    check_inputs(sol, g);
    return collect(tol, [&](const Sink &s) { scan_star(sol, g, MoeKind::kStarQ, s); });
}

std::vector<MoeViolation> check_pair_r(const MomentSolution &sol, const WeightedGraph &g, double tol) {
    check_inputs(sol, g);
    return collect(tol, [&](const Sink &s) { scan_pair(sol, g, s); });
}

MoeSummary check_all(const MomentSolution &sol, const WeightedGraph &g, double tol) {
    check_inputs(sol, g);
    MoeSummary summary;
    summary.min_slack = std::numeric_limits<double>::infinity();
    const Sink sink = [&](MoeViolation &&rec) {
        ++summary.checks;
        summary.min_slack = std::min(summary.min_slack, rec.slack);
        if (rec.slack < -tol) {
            summary.violations.push_back(std::move(rec));
        } else if (rec.slack < 0.0) {
            ++summary.noise;
        }
    };
    scan_star(sol, g, MoeKind::kStarP, sink);
    scan_star(sol, g, MoeKind::kStarQ, sink);
    scan_pair(sol, g, sink);
    if (summary.checks == 0) {
        summary.min_slack = 0.0;
    }
    return summary;
}

nlohmann::json to_json(const MoeViolation &v) {
    nlohmann::json witness = nlohmann::json::array();
    for (const auto &[a, b] : v.witness) {
        witness.push_back({a, b});
    }
    return {{"kind", to_string(v.kind)}, {"center", v.center}, {"witness", witness},
            {"lhs", v.lhs},              {"rhs", v.rhs},       {"slack", v.slack}};
}

nlohmann::json to_json(const MoeSummary &s) {
    nlohmann::json violations = nlohmann::json::array();
    for (const MoeViolation &v : s.violations) {
        violations.push_back(to_json(v));
    }
    return {{"checks", s.checks}, {"noise", s.noise}, {"min_slack", s.min_slack}, {"violations", violations}};
}

}  // namespace epr
