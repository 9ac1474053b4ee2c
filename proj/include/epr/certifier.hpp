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

#ifndef EPR_CERTIFIER_HPP
#define EPR_CERTIFIER_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "epr/angles.hpp"

namespace epr {

/// Worst-edge ratio functions of the three cases, both as direct
/// compositions of the schedule and as explicit per-piece formulas.
///
/// Cases: r1 on [0, beta], r2 on [beta, 1], r3 on (-1, R(beta)].
/// Pieces: r1a [0, Q(beta)], r1b [Q(beta), 1-beta], r1c [1-beta, 1/2],
/// r1d [1/2, beta]; r3a (-1, -d1], r3b [-d1, -sqrt(3)/2],
/// r3c [-sqrt(3)/2, 0], r3d [0, Q(beta)], with d1 = beta + R(beta).
/// Piece functions do not check their domain.
class Certifier {
   public:
    explicit Certifier(ScheduleParams params = ScheduleParams::defaults());

    const Schedule &schedule() const { return schedule_; }
    const ScheduleParams &params() const { return schedule_.params(); }
    double alpha_prime() const { return params().alpha_prime; }
    double beta() const { return params().beta; }
    double q_beta() const { return q_beta_; }
    double delta1() const { return delta1_; }
    double delta2() const { return delta2_; }

    double r1_direct(double g) const;
    double r2_direct(double g) const;
    double r3_direct(double g) const;

    /// Dispatch to the piece containing g.
    double eval_r1(double g) const;
    double eval_r2(double g) const;
    double eval_r3(double g) const;

    double r1a(double g) const;
    double r1b(double g) const;
    double r1c(double g) const;
    double r1d(double g) const;
    double r3a(double g) const;
    double r3b(double g) const;
    double r3c(double g) const;
    double r3d(double g) const;

    double f_star_a(double g) const;
    double f_star_b(double g) const;
    double f_star_c(double g) const;
    double f_star_d(double g) const;

    /// r1d'(g) * 2 (1 + g)^2, in closed form.
    double r1d_derivative_numerator(double g) const;
    /// r3c'(g) in closed form.
    double r3c_derivative(double g) const;

   private:
    double r1_piece(double g, double t_q, double t) const;
    double lambda_root(double t, double g) const;

    Schedule schedule_;
    double q_beta_;
    double delta1_;
    double delta2_;
};

/// Derivative of R.
double r_bound_derivative(double x);

/// One named inequality or identity with its evaluated value.
struct CertificateCheck {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    std::string relation;  // ">", "<" or "="; "=" passes when |value - threshold| <= tol
    double tol = 0.0;
    bool pass = false;
};

enum class GridKind { kR1dDerivative, kR3dValue };

/// Lipschitz grid argument. For r1d the derivative numerator must satisfy
/// worst + 2 * bound * spacing < 0 on [1/2, beta]; for r3d the values must
/// satisfy worst - 2 * bound * spacing > alpha' on [0.02, Q(beta)].
struct GridEvidence {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
    int points = 0;
    double bound = 0.0;
    double spacing = 0.0;
    double worst = 0.0;
    double worst_at = 0.0;
    double certified = 0.0;  // worst shifted by the spacing margin
    bool pass = false;
};

inline constexpr int kDefaultR1dPoints = 300;
inline constexpr int kDefaultR3dPoints = 1000;
inline constexpr double kDefaultR1dBound = 30.0;
inline constexpr double kDefaultR3dBound = 6.1;

/// Throws std::invalid_argument when points or bound are below the defaults.
GridEvidence certify_grid(const Certifier &c, GridKind kind, int points, double bound);

/// Closed-form endpoint values of the r1 pieces and of r3 at 0.
std::vector<CertificateCheck> certify_endpoints(const Certifier &c);

/// Evidence that r3 stays above alpha' on (-1, 0] and near 0 on the right.
std::vector<CertificateCheck> certify_r3_low_pieces(const Certifier &c);

struct CaseMinimum {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
    int samples = 0;
    double min_value = 0.0;
    double argmin = 0.0;
};

struct CertifyDensities {
    int r1d_points = kDefaultR1dPoints;
    int r3d_points = kDefaultR3dPoints;
    double r1d_bound = kDefaultR1dBound;
    double r3d_bound = kDefaultR3dBound;
    int samples = 10000;  // per case piece
};

struct CertificateReport {
    ScheduleParams params;
    std::vector<std::string> invariant_violations;
    std::vector<CaseMinimum> case_minima;
    std::vector<GridEvidence> grid_evidence;
    std::vector<CertificateCheck> checks;
    double max_piecewise_error = 0.0;  // relative, piecewise vs direct
    double overall_margin = 0.0;       // min over cases minus alpha'
    std::vector<std::string> failures;
    bool pass = false;

    nlohmann::json to_json() const;
};

CertificateReport certify_all(const ScheduleParams &params = ScheduleParams::defaults(),
                              const CertifyDensities &densities = {});

/// Rows "g,r1,r2,r3" on an even grid of [-1, 1]; a column is empty
/// outside its case domain.
void write_samples_csv(const Certifier &c, std::ostream &out, int points = 2001);

}  // namespace epr

#endif
