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

#include "epr/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace epr {

namespace {

const double kSqrt3Half = std::sqrt(3.0) / 2.0;

constexpr double kMarginTol = 1e-9;
constexpr double kIdentityTol = 1e-9;
constexpr double kPiecewiseTol = 1e-12;
constexpr double kSpacingSafety = 2.0;
// The r3d grid starts here; [0, kR3dSplit) is covered by a monotonicity argument.
constexpr double kR3dSplit = 0.02;

double root(double v) {
    if (v < -kClampSlack || std::isnan(v)) {
        throw ScheduleError("certifier: negative radicand " + std::to_string(v));
    }
    return std::sqrt(std::max(v, 0.0));
}

void require_domain(const char *fn, double g, double lo, double hi, bool open_lo = false) {
    const bool low_ok = open_lo ? g > lo : g >= lo - kClampSlack;
    if (!low_ok || g > hi + kClampSlack || std::isnan(g)) {
        throw DomainError(std::string(fn) + ": argument " + std::to_string(g) + " outside its case domain");
    }
}

// Closed grid of `points` values on [lo, hi], or (lo, hi] when open_lo.
double grid_point(double lo, double hi, int points, int k, bool open_lo) {
    if (open_lo) {
        return k + 1 == points ? hi : lo + (hi - lo) * (k + 1) / points;
    }
    if (points == 1 || k == 0) {
        return lo;
    }
    // Pin the last point so rounding cannot step over a piece boundary.
    return k + 1 == points ? hi : std::min(hi, lo + (hi - lo) * k / (points - 1));
}

CertificateCheck make_check(std::string name, double value, const char *relation, double threshold,
                            double tol = 0.0) {
    CertificateCheck c{std::move(name), value, threshold, relation, tol, false};
    if (c.relation == ">") {
        c.pass = value > threshold;
    } else if (c.relation == "<") {
        c.pass = value < threshold;
    } else {
        c.pass = std::abs(value - threshold) <= tol;
    }
    return c;
}

}  // namespace

double r_bound_derivative(double x) {
    if (!(std::abs(x) < 1.0)) {
        throw DomainError("R': argument must satisfy |x| < 1");
    }
    return 0.5 * (-3.0 * x / std::sqrt(3.0 * (1.0 - x * x)) - 1.0);
}

Certifier::Certifier(ScheduleParams params)
    : schedule_(std::move(params)),
      q_beta_(q_bound(schedule_.params().beta)),
      delta1_(schedule_.params().beta + r_bound(schedule_.params().beta)),
      delta2_(r_bound(1.0 - schedule_.params().beta)) {}

double Certifier::r1_direct(double g) const {
    require_domain("r1", g, 0.0, beta());
    g = std::clamp(g, 0.0, beta());
    const double tq = schedule_.theta(q_bound(g));
    return (2.0 - tq + 2.0 * root(schedule_.theta(g) * (1.0 - tq))) / (2.0 * (1.0 + g));
}

double Certifier::r2_direct(double g) const {
    require_domain("r2", g, beta(), 1.0);
    g = std::clamp(g, beta(), 1.0);
    const double tq = schedule_.theta(q_bound(g));
    return (2.0 - tq + 2.0 * root(schedule_.lambda(g) * (1.0 - tq))) / (2.0 * (1.0 + g));
}

double Certifier::r3_direct(double g) const {
    require_domain("r3", g, -1.0, q_beta_, true);
    g = std::min(g, q_beta_);
    const double fs = schedule_.f_star(g);
    return (1.0 + fs * fs + 2.0 * root(schedule_.theta(std::max(g, 0.0))) * fs) / (2.0 * (1.0 + g));
}

double Certifier::r1_piece(double g, double t_q, double t) const {
    return (2.0 - t_q + 2.0 * root(t * (1.0 - t_q))) / (2.0 * (1.0 + g));
}

double Certifier::r1a(double g) const {
    return r1_piece(g, schedule_.theta_piece(3, 1.0 - g), schedule_.theta_piece(1, g));
}

double Certifier::r1b(double g) const {
    return r1_piece(g, schedule_.theta_piece(3, 1.0 - g), schedule_.theta_piece(2, g));
}

double Certifier::r1c(double g) const {
    return r1_piece(g, schedule_.theta_piece(2, 1.0 - g), schedule_.theta_piece(2, g));
}

double Certifier::r1d(double g) const {
    return r1_piece(g, schedule_.theta_piece(2, r_bound(g)), schedule_.theta_piece(2, g));
}

double Certifier::eval_r1(double g) const {
    require_domain("r1", g, 0.0, beta());
    g = std::clamp(g, 0.0, beta());
    if (g <= q_beta_) {
        return r1a(g);
    }
    if (g <= 1.0 - beta()) {
        return r1b(g);
    }
    if (g <= 0.5) {
        return r1c(g);
    }
    return r1d(g);
}

double Certifier::eval_r2(double g) const {
    require_domain("r2", g, beta(), 1.0);
    g = std::clamp(g, beta(), 1.0);
    const double tq = g <= kSqrt3Half ? schedule_.theta_piece(1, r_bound(g)) : 0.0;
    const double m = 0.5 * tq + alpha_prime() * (1.0 + g) - 1.0;
    return (2.0 - tq + 2.0 * root(m * m)) / (2.0 * (1.0 + g));
}

double Certifier::lambda_root(double t, double g) const { return 0.5 * t + alpha_prime() * (1.0 + r_bound(g)) - 1.0; }

double Certifier::f_star_a(double g) const {
    const double t = schedule_.theta_piece(2, -r_bound(-g));
    const double m = lambda_root(t, g);
    return root((1.0 - t) - m * m);
}

double Certifier::f_star_b(double g) const {
    const double t = schedule_.theta_piece(1, -r_bound(-g));
    const double m = lambda_root(t, g);
    return root((1.0 - t) - m * m);
}

double Certifier::f_star_c(double g) const {
    const double m = lambda_root(0.0, g);
    return root(1.0 - m * m);
}

double Certifier::f_star_d(double g) const {
    const double t = schedule_.theta_piece(1, g);
    const double m = lambda_root(t, g);
    return root(1.0 - m * m / (1.0 - t));
}

double Certifier::r3a(double g) const {
    const double f = f_star_a(g);
    return (1.0 + f * f) / (2.0 * (1.0 + g));
}

double Certifier::r3b(double g) const {
    const double f = f_star_b(g);
    return (1.0 + f * f) / (2.0 * (1.0 + g));
}

double Certifier::r3c(double g) const {
    const double m = lambda_root(0.0, g);
    return (2.0 - m * m) / (2.0 * (1.0 + g));
}

double Certifier::r3d(double g) const {
    const double f = f_star_d(g);
    return (1.0 + f * f + 2.0 * root(schedule_.theta_piece(1, g)) * f) / (2.0 * (1.0 + g));
}

double Certifier::eval_r3(double g) const {
    require_domain("r3", g, -1.0, q_beta_, true);
    g = std::min(g, q_beta_);
    if (g <= -delta1_) {
        return r3a(g);
    }
    if (g <= -kSqrt3Half) {
        return r3b(g);
    }
    if (g <= 0.0) {
        return r3c(g);
    }
    return r3d(g);
}

double Certifier::r1d_derivative_numerator(double g) const {
    const double s2 = schedule_.theta_slope(2);
    const double t = schedule_.theta_piece(2, r_bound(g));
    const double dt = s2 * r_bound_derivative(g);
    const double th = schedule_.theta_piece(2, g);
    const double h = th * (1.0 - t);
    const double dh = s2 * (1.0 - t) - th * dt;
    const double num = 2.0 - t + 2.0 * root(h);
    const double dnum = -dt + dh / root(h);
    return dnum * (1.0 + g) - num;
}

double Certifier::r3c_derivative(double g) const {
    const double a = alpha_prime();
    const double m = a * (1.0 + r_bound(g)) - 1.0;
    return (-2.0 * a * r_bound_derivative(g) * (1.0 + g) * m - 2.0 + m * m) / (2.0 * (1.0 + g) * (1.0 + g));
}

GridEvidence certify_grid(const Certifier &c, GridKind kind, int points, double bound) {
    const bool r1d = kind == GridKind::kR1dDerivative;
    const int min_points = r1d ? kDefaultR1dPoints : kDefaultR3dPoints;
    const double min_bound = r1d ? kDefaultR1dBound : kDefaultR3dBound;
    if (points < min_points || bound < min_bound) {
        throw std::invalid_argument("certify_grid: need at least " + std::to_string(min_points) +
                                    " points and derivative bound >= " + std::to_string(min_bound));
    }
    GridEvidence ev;
    ev.name = r1d ? "r1d_derivative" : "r3d_value";
    ev.lo = r1d ? 0.5 : kR3dSplit;
    ev.hi = r1d ? c.beta() : c.q_beta();
    ev.points = points;
    ev.bound = bound;
    ev.spacing = (ev.hi - ev.lo) / (points - 1);
    ev.worst = r1d ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
    for (int k = 0; k < points; ++k) {
        const double g = grid_point(ev.lo, ev.hi, points, k, false);
        const double v = r1d ? c.r1d_derivative_numerator(g) : c.r3d(g);
        if (r1d ? v > ev.worst : v < ev.worst) {
            ev.worst = v;
            ev.worst_at = g;
        }
    }
    const double margin = kSpacingSafety * bound * ev.spacing;
    if (r1d) {
        ev.certified = ev.worst + margin;
        ev.pass = ev.certified < 0.0;
    } else {
        ev.certified = ev.worst - margin;
        ev.pass = ev.certified > c.alpha_prime();
    }
    return ev;
}

std::vector<CertificateCheck> certify_endpoints(const Certifier &c) {
    const double a = c.alpha_prime();
    const double qb = c.q_beta();
    const double b = c.beta();
    return {
        make_check("r1a(0) = alpha'", c.r1a(0.0), "=", a, kIdentityTol),
        make_check("r1a(Q(beta)) > 0.839529", c.r1a(qb), ">", 0.839529),
        make_check("r1b(Q(beta)) > 0.839529", c.r1b(qb), ">", 0.839529),
        make_check("r1b(1-beta) > 0.842", c.r1b(1.0 - b), ">", 0.842),
        make_check("r1c(1-beta) > 0.842", c.r1c(1.0 - b), ">", 0.842),
        make_check("r1c(1/2) > 0.845", c.r1c(0.5), ">", 0.845),
        make_check("r1d(beta) = alpha'", c.r1d(b), "=", a, kIdentityTol),
        make_check("r3c(0) > alpha'", c.r3c(0.0), ">", a),
        // r3(0) exceeds alpha' by about 2e-7 because alpha' is rounded.
        make_check("r3(0) - alpha' within 1e-6", c.eval_r3(0.0), "=", a, 1e-6),
    };
}

std::vector<CertificateCheck> certify_r3_low_pieces(const Certifier &c) {
    const double a = c.alpha_prime();
    const Schedule &s = c.schedule();
    std::vector<CertificateCheck> out;

    constexpr int kFStarPoints = 50;
    double fa = std::numeric_limits<double>::infinity();
    double fb = std::numeric_limits<double>::infinity();
    for (int k = 0; k < kFStarPoints; ++k) {
        fa = std::min(fa, c.f_star_a(grid_point(-1.0, -c.delta1(), kFStarPoints, k, true)));
        fb = std::min(fb, c.f_star_b(grid_point(-c.delta1(), -kSqrt3Half, kFStarPoints, k, false)));
    }
    out.push_back(make_check("min f*_a on (-1, -delta1] > 0.6", fa, ">", 0.6));
    out.push_back(make_check("min f*_b on [-delta1, -sqrt(3)/2] > 0.6", fb, ">", 0.6));
    // On g <= -sqrt(3)/2 the inner Theta argument -R(-g) lies in [0, 1/2].
    out.push_back(make_check("Theta(1/2) < 0.2", s.theta(0.5), "<", 0.2));
    const double m = 1.5 * a - 0.6;
    out.push_back(make_check("sqrt(0.8 - (1.5 alpha' - 0.6)^2) > 0.6", std::sqrt(0.8 - m * m), ">", 0.6));
    out.push_back(
        make_check("r3a, r3b floor (1 + 0.36) / (2 (1 - sqrt(3)/2)) > 1", 1.36 / (2.0 * (1.0 - kSqrt3Half)), ">", 1.0));

    constexpr int kR3cPoints = 200;
    double worst_deriv = -std::numeric_limits<double>::infinity();
    double worst_diff = -std::numeric_limits<double>::infinity();
    double prev = 0.0;
    for (int k = 0; k < kR3cPoints; ++k) {
        const double g = grid_point(-kSqrt3Half, 0.0, kR3cPoints, k, false);
        worst_deriv = std::max(worst_deriv, c.r3c_derivative(g));
        const double v = c.r3c(g);
        if (k > 0) {
            worst_diff = std::max(worst_diff, v - prev);
        }
        prev = v;
    }
    out.push_back(make_check("max r3c' on [-sqrt(3)/2, 0] < 0", worst_deriv, "<", 0.0));
    out.push_back(make_check("max r3c finite difference on [-sqrt(3)/2, 0] < 0", worst_diff, "<", 0.0));
    out.push_back(make_check("r3c(0) > alpha'", c.r3c(0.0), ">", a));

    // Increase of r3d on [0, 0.02): the surrogate needs Theta_1(g) < 0.16 g.
    out.push_back(make_check("Theta_1 slope < 0.16", s.theta_slope(1), "<", 0.16));
    out.push_back(make_check("0.1185 / sqrt(0.16 * 0.02) - 2.04 > 0", 0.1185 / std::sqrt(0.16 * kR3dSplit) - 2.04,
                             ">", 0.0));
    constexpr int kR3dNearPoints = 200;
    double min_diff = std::numeric_limits<double>::infinity();
    prev = c.r3d(0.0);
    for (int k = 1; k < kR3dNearPoints; ++k) {
        const double v = c.r3d(grid_point(0.0, kR3dSplit, kR3dNearPoints, k, false));
        min_diff = std::min(min_diff, v - prev);
        prev = v;
    }
    out.push_back(make_check("min r3d finite difference on [0, 0.02] > 0", min_diff, ">", 0.0));
    out.push_back(make_check("r3d(0) >= alpha'", c.r3d(0.0) - a, ">", -kMarginTol));
    return out;
}

nlohmann::json CertificateReport::to_json() const {
    nlohmann::json minima = nlohmann::json::array();
    for (const CaseMinimum &m : case_minima) {
        minima.push_back({{"case", m.name},
                          {"domain", {m.lo, m.hi}},
                          {"samples", m.samples},
                          {"min", m.min_value},
                          {"argmin", m.argmin}});
    }
    nlohmann::json grids = nlohmann::json::array();
    for (const GridEvidence &gv : grid_evidence) {
        grids.push_back({{"grid", gv.name},
                         {"domain", {gv.lo, gv.hi}},
                         {"points", gv.points},
                         {"derivative_bound", gv.bound},
                         {"spacing", gv.spacing},
                         {"worst", gv.worst},
                         {"worst_at", gv.worst_at},
                         {"certified", gv.certified},
                         {"pass", gv.pass}});
    }
    nlohmann::json cks = nlohmann::json::array();
    for (const CertificateCheck &c : checks) {
        cks.push_back({{"name", c.name},
                       {"value", c.value},
                       {"relation", c.relation},
                       {"threshold", c.threshold},
                       {"tol", c.tol},
                       {"pass", c.pass}});
    }
    return {{"params", params.to_json()},
            {"default_params", params.is_default()},
            {"invariant_violations", invariant_violations},
            {"case_minima", minima},
            {"grid_evidence", grids},
            {"checks", cks},
            {"max_piecewise_error", max_piecewise_error},
            {"overall_margin", overall_margin},
            {"failures", failures},
            {"pass", pass}};
}

CertificateReport certify_all(const ScheduleParams &params, const CertifyDensities &densities) {
    CertificateReport rep;
    rep.params = params;
    rep.invariant_violations = params.invariant_violations();
    for (const std::string &v : rep.invariant_violations) {
        rep.failures.push_back("invariant: " + v);
    }
    const Certifier c(params);
    const double a = c.alpha_prime();

    auto guarded = [&](const std::string &what, const std::function<void()> &fn) {
        try {
            fn();
        } catch (const std::exception &e) {
            rep.failures.push_back(what + ": " + e.what());
        }
    };

    guarded("endpoints", [&] {
        auto v = certify_endpoints(c);
        rep.checks.insert(rep.checks.end(), v.begin(), v.end());
    });
    guarded("r3 low pieces", [&] {
        auto v = certify_r3_low_pieces(c);
        rep.checks.insert(rep.checks.end(), v.begin(), v.end());
    });
    guarded("theta slope chain", [&] {
        const Schedule &s = c.schedule();
        rep.checks.push_back(make_check("Theta slope 1 <= 0.2", s.theta_slope(1), "<", 0.2));
        rep.checks.push_back(make_check("Theta slope 2 >= 0.2", s.theta_slope(2), ">", 0.2));
        rep.checks.push_back(make_check("Theta slope 2 <= 0.393", s.theta_slope(2), "<", 0.393));
        rep.checks.push_back(make_check("Theta slope 3 >= 0.393", s.theta_slope(3), ">", 0.393));
    });
    guarded("r1d grid", [&] {
        GridEvidence ev = certify_grid(c, GridKind::kR1dDerivative, densities.r1d_points, densities.r1d_bound);
        rep.checks.push_back(make_check("r1d derivative grid all < -0.11", ev.worst, "<", -0.11));
        rep.grid_evidence.push_back(std::move(ev));
    });
    guarded("r3d grid", [&] {
        GridEvidence ev = certify_grid(c, GridKind::kR3dValue, densities.r3d_points, densities.r3d_bound);
        rep.checks.push_back(make_check("r3d value grid all > 0.842", ev.worst, ">", 0.842));
        rep.grid_evidence.push_back(std::move(ev));
    });

    struct PieceSpec {
        const char *name;
        double lo;
        double hi;
        bool open_lo;
        double (Certifier::*piece)(double) const;
        double (Certifier::*direct)(double) const;
    };
    const double b = c.beta();
    const double qb = c.q_beta();
    const std::vector<PieceSpec> pieces = {
        {"r1a", 0.0, qb, false, &Certifier::r1a, &Certifier::r1_direct},
        {"r1b", qb, 1.0 - b, false, &Certifier::r1b, &Certifier::r1_direct},
        {"r1c", 1.0 - b, 0.5, false, &Certifier::r1c, &Certifier::r1_direct},
        {"r1d", 0.5, b, false, &Certifier::r1d, &Certifier::r1_direct},
        {"r2", b, 1.0, false, &Certifier::eval_r2, &Certifier::r2_direct},
        {"r3a", -1.0, -c.delta1(), true, &Certifier::r3a, &Certifier::r3_direct},
        {"r3b", -c.delta1(), -kSqrt3Half, false, &Certifier::r3b, &Certifier::r3_direct},
        {"r3c", -kSqrt3Half, 0.0, false, &Certifier::r3c, &Certifier::r3_direct},
        {"r3d", 0.0, qb, false, &Certifier::r3d, &Certifier::r3_direct},
    };
    double overall = std::numeric_limits<double>::infinity();
    double r2_dev = 0.0;
    for (const PieceSpec &p : pieces) {
        guarded(std::string("sampling ") + p.name, [&] {
            CaseMinimum cm{p.name, p.lo, p.hi, densities.samples, std::numeric_limits<double>::infinity(), p.lo};
            for (int k = 0; k < densities.samples; ++k) {
                const double g = grid_point(p.lo, p.hi, densities.samples, k, p.open_lo);
                const double v = (c.*p.piece)(g);
                const double d = (c.*p.direct)(g);
                rep.max_piecewise_error =
                    std::max(rep.max_piecewise_error, std::abs(v - d) / std::max(1.0, std::abs(d)));
                if (p.piece == &Certifier::eval_r2) {
                    r2_dev = std::max(r2_dev, std::abs(v - a));
                }
                if (v < cm.min_value) {
                    cm.min_value = v;
                    cm.argmin = g;
                }
            }
            overall = std::min(overall, cm.min_value);
            rep.case_minima.push_back(std::move(cm));
        });
    }
    rep.checks.push_back(make_check("max |r2 - alpha'| on [beta, 1]", r2_dev, "=", 0.0, 1e-12));
    rep.checks.push_back(make_check("piecewise matches direct", rep.max_piecewise_error, "=", 0.0, kPiecewiseTol));
    rep.overall_margin = overall - a;

    for (const CertificateCheck &ck : rep.checks) {
        if (!ck.pass) {
            rep.failures.push_back("check failed: " + ck.name);
        }
    }
    for (const GridEvidence &gv : rep.grid_evidence) {
        if (!gv.pass) {
            rep.failures.push_back("grid failed: " + gv.name + " at g = " + std::to_string(gv.worst_at));
        }
    }
    if (!(rep.overall_margin >= -kMarginTol)) {
        rep.failures.push_back("sampled minimum below alpha' by " + std::to_string(-rep.overall_margin));
    }
    rep.pass = rep.failures.empty();
    return rep;
}

void write_samples_csv(const Certifier &c, std::ostream &out, int points) {
    if (points < 2) {
        throw std::invalid_argument("write_samples_csv: need at least 2 points");
    }
    out.precision(12);
    out << "g,r1,r2,r3\n";
    for (int k = 0; k < points; ++k) {
        const double g = grid_point(-1.0, 1.0, points, k, false);
        out << g << ',';
        if (g >= 0.0 && g <= c.beta()) {
            out << c.eval_r1(g);
        }
        out << ',';
        if (g >= c.beta()) {
            out << c.eval_r2(g);
        }
        out << ',';
        if (g > -1.0 && g <= c.q_beta()) {
            out << c.eval_r3(g);
        }
        out << '\n';
    }
}

}  // namespace epr
