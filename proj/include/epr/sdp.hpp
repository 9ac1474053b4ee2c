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

#ifndef EPR_SDP_HPP
#define EPR_SDP_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "epr/graph.hpp"
#include "epr/pauli.hpp"

namespace epr {

/// One off-diagonal moment-matrix entry (a, b), a < b, with Gamma(a, b) =
/// sign * L(label) for the class it belongs to.
struct ClassMember {
    int a = 0;
    int b = 0;
    int sign = 1;
};

struct EntryClass {
    PauliString label;
    std::vector<ClassMember> members;
};

/// Equality structure of the level-2 moment matrix over enumerate_basis(n, 2).
///
/// Every pair a < b is either in exactly one class (basis[a] * basis[b] is
/// +-label) or in zero_entries (the product is anti-Hermitian). The diagonal
/// is fixed to 1 and is not represented.
struct ConstraintClasses {
    int num_qubits = 0;
    std::vector<PauliString> basis;
    std::vector<EntryClass> classes;
    std::vector<std::pair<int, int>> zero_entries;
    std::unordered_map<PauliString, int> index;

    std::optional<int> find(const PauliString &label) const;
};

/// Objective: constant + sum_c objective[c] * L(classes[c].label).
struct Relaxation {
    ConstraintClasses constraints;
    std::vector<double> objective;
    double constant = 0.0;
    WeightedGraph graph;
};

Relaxation build_relaxation(const WeightedGraph &g);

/// Thrown when the moment matrix would exceed SolverOptions::max_qubits.
class SizeLimitError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

enum class SolverMethod {
    kAuto,           // interior point up to interior_point_class_limit, else ADMM
    kInteriorPoint,
    kAdmm,
};

const char *to_string(SolverMethod method);

struct SolverOptions {
    double tol = 1e-8;         // primal and dual residual target
    double tol_psd = 1e-7;     // feasibility assertions
    SolverMethod method = SolverMethod::kAuto;
    int interior_point_class_limit = 2000;
    int max_ipm_iters = 100;
    int max_iters = 100000;    // ADMM
    double rho = 1.0;          // ADMM initial penalty
    bool certified = false;    // also extract a dual-feasible upper bound
    bool symmetry_reduction = true;
    int max_qubits = 14;
    int anderson_memory = 10;  // 0 gives plain ADMM
};

/// Result of solve(). Immutable once returned.
struct MomentSolution {
    std::shared_ptr<const Relaxation> relaxation;
    Eigen::MatrixXd gamma;            // indexed by relaxation->constraints.basis
    std::vector<double> class_values; // L per entry class
    std::vector<Edge> edges;
    std::vector<double> g;            // raw, unclipped
    std::vector<double> q;
    double u = 0.0;                   // sum_e w_e (1 + g_e)
    // Dual-feasible objective; only meaningful when certified is true.
    double certified_bound = 0.0;
    double gap = 0.0;                 // certified_bound - u, or the last dual residual
    bool certified = false;
    bool converged = false;
    SolverMethod method = SolverMethod::kAuto;
    int iterations = 0;
    // ADMM: ||X - Z||_F and rho ||Z - Z_prev||_F. Interior point: relative
    // infeasibility of the dual matrix and relative complementarity gap.
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double min_eigenvalue = 1.0;

    /// g clipped to [-1, 1].
    std::vector<double> g_clipped() const;
    /// Index of edge {a, b} in edges, if present.
    std::optional<int> edge_position(int a, int b) const;
};

MomentSolution solve(const WeightedGraph &g, const SolverOptions &options = {});

/// L(p) for a monomial of weight <= 4. Throws std::invalid_argument otherwise.
double pseudo_expectation(const MomentSolution &sol, const PauliString &p);

/// Applies the entrywise sign map induced by conjugating every vertex in
/// `part` with Y. Swaps g and q on every edge crossing the cut. Throws
/// std::invalid_argument when some edge does not cross `part`.
MomentSolution bipartite_transform(const MomentSolution &sol, const std::vector<int> &part);

struct ConstraintReport {
    double max_diagonal_error = 0.0;
    double max_asymmetry = 0.0;
    double max_class_spread = 0.0;  // over members, |sign * Gamma(a,b) - L|
    double max_zero_entry = 0.0;
    double min_eigenvalue = 0.0;

    bool ok(double tol) const;
};

/// Re-derives every level-2 moment constraint directly from gamma.
ConstraintReport check_constraints(const MomentSolution &sol);

/// {"g": {"i-j": v}, "q": {...}, "u": v, "gap": v, "certified": b, ...}.
/// Vertex labels are 0-based.
nlohmann::json to_json(const MomentSolution &sol);

}  // namespace epr

#endif
