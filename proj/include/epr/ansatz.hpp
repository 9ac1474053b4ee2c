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

#ifndef EPR_ANSATZ_HPP
#define EPR_ANSATZ_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "epr/angles.hpp"
#include "epr/graph.hpp"
#include "epr/sdp.hpp"

namespace epr {

/// Largest instance build_state will simulate.
inline constexpr int kMaxStateQubits = 20;
/// Largest instance lambda_max diagonalizes densely.
inline constexpr int kMaxDenseHamiltonianQubits = 12;

/// Raised when the eigensolver fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// theta_e = nu(g_e) per edge; g is clipped to [-1, 1] first.
std::vector<double> angles_from_g(const std::vector<double> &g, const Schedule &schedule);

/// Applies cos(t/2) I + i sin(t/2) G_e for every edge, in edge order, to
/// |0...0>. G_e = (X - Y)(X - Y) / 2 on the endpoints. Qubit q is bit q of
/// the amplitude index.
Eigen::VectorXcd build_state(const WeightedGraph &g, const std::vector<double> &angles);

/// <psi| H |psi> with H = sum_e w_e (II + XX - YY + ZZ) / 2.
double energy(const WeightedGraph &g, const Eigen::VectorXcd &state);

/// Per-edge terms w (1 + A_ij A_ji + (A_ij + A_ji) sin t) / 2 with
/// A_ij = prod over k in N(i) \ {j} of cos t_ik.
std::vector<double> edge_lower_bounds(const WeightedGraph &g, const std::vector<double> &angles);
double lower_bound_ell(const WeightedGraph &g, const std::vector<double> &angles);

/// Dense H(G) in the computational basis. n <= kMaxDenseHamiltonianQubits.
Eigen::MatrixXd hamiltonian_dense(const WeightedGraph &g);

/// Largest eigenvalue of H(G). Dense per parity sector up to
/// kMaxDenseHamiltonianQubits, restarted Lanczos up to kMaxStateQubits.
double lambda_max(const WeightedGraph &g);

struct AnsatzOptions {
    SolverOptions solver;
    ScheduleParams params = ScheduleParams::defaults();
    bool keep_state = false;
    bool compute_lambda_max = true;
};

struct AnsatzRun {
    MomentSolution solution;
    std::vector<double> angles;
    std::optional<Eigen::VectorXcd> state;
    double energy = 0.0;
    double ell = 0.0;
    double u = 0.0;
    std::optional<double> lambda_max;
    double ratio_lower = 1.0;            // ell / u, 1 on edgeless graphs
    std::optional<double> ratio_true;    // energy / lambda_max, diagnostic
    std::vector<double> edge_ratios;     // per-edge ell term over w (1 + g)
    bool guarantee_met = false;          // ratio_lower >= alpha' - 1e-6

    /// ell <= energy <= lambda_max <= u within tol.
    bool sandwich_holds(double tol) const;
};

AnsatzRun run_pipeline(const WeightedGraph &g, const AnsatzOptions &options = {});

/// {"angles", "ell", "u", "lambda_max", "energy", "ratio_lower",
/// "ratio_true", ...}; amplitudes only when include_state and present.
nlohmann::json to_json(const AnsatzRun &run, bool include_state = false);

}  // namespace epr

#endif
