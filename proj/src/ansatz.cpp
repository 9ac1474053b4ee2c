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

#include "epr/ansatz.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include <Eigen/Eigenvalues>

namespace epr {

namespace {

constexpr double kGuaranteeSlack = 1e-6;
constexpr double kLanczosTol = 1e-10;

void check_state_budget(const WeightedGraph &g, int cap) {
    if (g.num_vertices() > cap) {
        throw SizeLimitError("instance has " + std::to_string(g.num_vertices()) + " vertices; state budget is " +
                             std::to_string(cap));
    }
}

std::uint64_t pair_mask(const Edge &e) { return (std::uint64_t{1} << e.u) | (std::uint64_t{1} << e.v); }

// y = H x for real x. H only couples s with s ^ mask when bits u, v agree.
void apply_hamiltonian(const WeightedGraph &g, const Eigen::VectorXd &x, Eigen::VectorXd &y) {
    y.setZero(x.size());
    const auto dim = static_cast<std::uint64_t>(x.size());
    for (const Edge &e : g.edges()) {
        const std::uint64_t m = pair_mask(e);
        for (std::uint64_t s = 0; s < dim; ++s) {
            if ((s & m) != 0) {
                continue;
            }
            const std::uint64_t t = s | m;
            const double sum = e.w * (x[s] + x[t]);
            y[s] += sum;
            y[t] += sum;
        }
    }
}

double lanczos_max(const WeightedGraph &g) {
    const Eigen::Index dim = Eigen::Index{1} << g.num_vertices();
    const int m = static_cast<int>(std::min<Eigen::Index>(dim, 60));
    // All-ones overlaps the nonnegative top eigenvector of this nonnegative H.
    Eigen::VectorXd start = Eigen::VectorXd::Ones(dim).normalized();
    Eigen::MatrixXd basis(dim, m);
    Eigen::VectorXd w(dim);
    double last = 0.0;
    for (int restart = 0; restart < 200; ++restart) {
        Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m);
        Eigen::VectorXd beta = Eigen::VectorXd::Zero(m);
        basis.col(0) = start;
        int steps = m;
        for (int j = 0; j < m; ++j) {
            apply_hamiltonian(g, basis.col(j), w);
            alpha[j] = basis.col(j).dot(w);
            // Full reorthogonalization, applied twice for stability.
            for (int pass = 0; pass < 2; ++pass) {
                w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
            }
            beta[j] = w.norm();
            if (j + 1 == m) {
                break;
            }
            if (beta[j] < 1e-14) {
                steps = j + 1;
                break;
            }
            basis.col(j + 1) = w / beta[j];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        tri.computeFromTridiagonal(alpha.head(steps), beta.head(std::max(steps - 1, 0)), Eigen::ComputeEigenvectors);
        const Eigen::Index top = steps - 1;
        const double theta = tri.eigenvalues()[top];
        const Eigen::VectorXd y = tri.eigenvectors().col(top);
        const double residual = std::abs(beta[steps - 1] * y[steps - 1]);
        last = theta;
        if (steps < m || residual <= kLanczosTol * std::max(1.0, std::abs(theta))) {
            return theta;
        }
        start = (basis.leftCols(steps) * y).normalized();
    }
    throw ConvergenceError("lambda_max: Lanczos did not converge; last estimate " + std::to_string(last));
}

double dense_sector_max(const WeightedGraph &g) {
    const int n = g.num_vertices();
    const std::uint64_t dim = std::uint64_t{1} << n;
    double best = 0.0;
    for (int parity = 0; parity < 2; ++parity) {
        std::vector<std::uint64_t> states;
        std::vector<int> pos(dim, -1);
        for (std::uint64_t s = 0; s < dim; ++s) {
            if ((std::popcount(s) & 1) == parity) {
                pos[s] = static_cast<int>(states.size());
                states.push_back(s);
            }
        }
        const auto size = static_cast<Eigen::Index>(states.size());
        Eigen::MatrixXd block = Eigen::MatrixXd::Zero(size, size);
        for (const Edge &e : g.edges()) {
            const std::uint64_t m = pair_mask(e);
            for (std::uint64_t s : states) {
                if ((s & m) == 0) {
                    const int a = pos[s];
                    const int b = pos[s | m];
                    block(a, a) += e.w;
                    block(b, b) += e.w;
                    block(a, b) += e.w;
                    block(b, a) += e.w;
                }
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) {
            throw ConvergenceError("lambda_max: dense eigensolver failed");
        }
        best = std::max(best, es.eigenvalues()[size - 1]);
    }
    return best;
}

}  // namespace

std::vector<double> angles_from_g(const std::vector<double> &g, const Schedule &schedule) {
    std::vector<double> out(g.size());
    std::transform(g.begin(), g.end(), out.begin(),
                   [&](double v) { return schedule.nu(std::clamp(v, -1.0, 1.0)); });
    return out;
}

Eigen::VectorXcd build_state(const WeightedGraph &g, const std::vector<double> &angles) {
    check_state_budget(g, kMaxStateQubits);
    if (angles.size() != g.edges().size()) {
        throw std::invalid_argument("build_state: one angle per edge required");
    }
    const std::uint64_t dim = std::uint64_t{1} << g.num_vertices();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    psi[0] = 1.0;
    const std::complex<double> i1(0.0, 1.0);
    for (size_t k = 0; k < angles.size(); ++k) {
        const Edge &e = g.edges()[k];
        const double c = std::cos(angles[k] / 2.0);
        const double s = std::sin(angles[k] / 2.0);
        const std::uint64_t bu = std::uint64_t{1} << e.u;
        const std::uint64_t bv = std::uint64_t{1} << e.v;
        for (std::uint64_t x = 0; x < dim; ++x) {
            if ((x & (bu | bv)) != 0) {
                continue;
            }
            // G|00> = -i|11>, G|11> = i|00>, G|01> = |10>, G|10> = |01>.
            const std::complex<double> a00 = psi[x];
            const std::complex<double> a11 = psi[x | bu | bv];
            const std::complex<double> a01 = psi[x | bv];
            const std::complex<double> a10 = psi[x | bu];
            psi[x] = c * a00 - s * a11;
            psi[x | bu | bv] = c * a11 + s * a00;
            psi[x | bv] = c * a01 + i1 * s * a10;
            psi[x | bu] = c * a10 + i1 * s * a01;
        }
    }
    return psi;
}

double energy(const WeightedGraph &g, const Eigen::VectorXcd &state) {
    const std::uint64_t dim = std::uint64_t{1} << g.num_vertices();
    if (static_cast<std::uint64_t>(state.size()) != dim) {
        throw std::invalid_argument("energy: state has " + std::to_string(state.size()) + " amplitudes, expected " +
                                    std::to_string(dim));
    }
    double total = 0.0;
    for (const Edge &e : g.edges()) {
        const std::uint64_t m = pair_mask(e);
        double edge = 0.0;
        for (std::uint64_t x = 0; x < dim; ++x) {
            if ((x & m) == 0) {
                edge += std::norm(state[x] + state[x | m]);
            }
        }
        total += e.w * edge;
    }
    return total;
}

std::vector<double> edge_lower_bounds(const WeightedGraph &g, const std::vector<double> &angles) {
    if (angles.size() != g.edges().size()) {
        throw std::invalid_argument("lower_bound_ell: one angle per edge required");
    }
    // A for endpoint a of edge k: product of cos over the other edges at a.
    auto side = [&](int a, int k) {
        double prod = 1.0;
        for (int other : g.incident_edges(a)) {
            if (other != k) {
                prod *= std::cos(angles[other]);
            }
        }
        return prod;
    };
    std::vector<double> out(angles.size());
    for (size_t k = 0; k < angles.size(); ++k) {
        const Edge &e = g.edges()[k];
        const double au = side(e.u, static_cast<int>(k));
        const double av = side(e.v, static_cast<int>(k));
        out[k] = e.w * (1.0 + au * av + (au + av) * std::sin(angles[k])) / 2.0;
    }
    return out;
}

double lower_bound_ell(const WeightedGraph &g, const std::vector<double> &angles) {
    const std::vector<double> terms = edge_lower_bounds(g, angles);
    double total = 0.0;
    for (double t : terms) {
        total += t;
    }
    return total;
}

Eigen::MatrixXd hamiltonian_dense(const WeightedGraph &g) {
    check_state_budget(g, kMaxDenseHamiltonianQubits);
    const std::uint64_t dim = std::uint64_t{1} << g.num_vertices();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (const Edge &e : g.edges()) {
        const std::uint64_t m = pair_mask(e);
        for (std::uint64_t s = 0; s < dim; ++s) {
            if ((s & m) == 0) {
                const auto a = static_cast<Eigen::Index>(s);
                const auto b = static_cast<Eigen::Index>(s | m);
                h(a, a) += e.w;
                h(b, b) += e.w;
                h(a, b) += e.w;
                h(b, a) += e.w;
            }
        }
    }
    return h;
}

double lambda_max(const WeightedGraph &g) {
    check_state_budget(g, kMaxStateQubits);
    if (g.num_edges() == 0) {
        return 0.0;
    }
    if (g.num_vertices() <= kMaxDenseHamiltonianQubits) {
        return dense_sector_max(g);
    }
    return lanczos_max(g);
}

bool AnsatzRun::sandwich_holds(double tol) const {
    if (energy < ell - tol) {
        return false;
    }
    if (lambda_max && (*lambda_max < energy - tol || *lambda_max > u + tol)) {
        return false;
    }
    return energy <= u + tol;
}

AnsatzRun run_pipeline(const WeightedGraph &g, const AnsatzOptions &options) {
    AnsatzRun run;
    run.solution = solve(g, options.solver);
    const Schedule schedule(options.params);
    run.angles = angles_from_g(run.solution.g, schedule);
    Eigen::VectorXcd psi = build_state(g, run.angles);
    run.energy = energy(g, psi);
    const std::vector<double> terms = edge_lower_bounds(g, run.angles);
    for (double t : terms) {
        run.ell += t;
    }
    run.u = run.solution.u;
    run.edge_ratios.resize(terms.size());
    for (size_t k = 0; k < terms.size(); ++k) {
        const Edge &e = g.edges()[k];
        run.edge_ratios[k] = terms[k] / (e.w * (1.0 + run.solution.g[k]));
    }
    run.ratio_lower = run.u > 0.0 ? run.ell / run.u : 1.0;
    if (options.compute_lambda_max) {
        run.lambda_max = lambda_max(g);
        if (*run.lambda_max > 0.0) {
            run.ratio_true = run.energy / *run.lambda_max;
        }
    }
    run.guarantee_met = run.ratio_lower >= options.params.alpha_prime - kGuaranteeSlack;
    if (options.keep_state) {
        run.state = std::move(psi);
    }
    return run;
}

nlohmann::json to_json(const AnsatzRun &run, bool include_state) {
    nlohmann::json angles = nlohmann::json::object();
    nlohmann::json ratios = nlohmann::json::object();
    const auto &edges = run.solution.edges;
    for (size_t k = 0; k < edges.size(); ++k) {
        const std::string key = std::to_string(edges[k].u) + "-" + std::to_string(edges[k].v);
        angles[key] = run.angles[k];
        ratios[key] = run.edge_ratios[k];
    }
    nlohmann::json out = {
        {"angles", angles},
        {"ell", run.ell},
        {"u", run.u},
        {"energy", run.energy},
        {"ratio_lower", run.ratio_lower},
        {"edge_ratios", ratios},
        {"guarantee_met", run.guarantee_met},
        {"lambda_max", run.lambda_max ? nlohmann::json(*run.lambda_max) : nlohmann::json(nullptr)},
        {"ratio_true", run.ratio_true ? nlohmann::json(*run.ratio_true) : nlohmann::json(nullptr)},
        {"solver", to_json(run.solution)},
    };
    if (include_state && run.state) {
        nlohmann::json amps = nlohmann::json::array();
        for (Eigen::Index k = 0; k < run.state->size(); ++k) {
            amps.push_back({(*run.state)[k].real(), (*run.state)[k].imag()});
        }
        out["amplitudes"] = amps;
    }
    return out;
}

}  // namespace epr
