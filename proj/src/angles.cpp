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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace epr {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

double check_range(const char *fn, double x, double lo, double hi) {
    if (!(x >= lo - kClampSlack && x <= hi + kClampSlack)) {
        throw DomainError(std::string(fn) + ": argument " + fmt(x) + " outside [" + fmt(lo) + ", " + fmt(hi) + "]");
    }
    return std::clamp(x, lo, hi);
}

double checked_sqrt(const char *what, double v) {
    if (v < -kClampSlack || std::isnan(v)) {
        throw ScheduleError(std::string(what) + ": negative radicand " + fmt(v));
    }
    return std::sqrt(std::max(v, 0.0));
}

double pos(double x) { return std::max(x, 0.0); }

}  // namespace

ScheduleParams ScheduleParams::defaults() { return from_constants(0.839511, 0.67, 0.049, "default"); }

ScheduleParams ScheduleParams::from_constants(double alpha_prime, double beta, double gamma, std::string variant) {
    if (!(beta > 0.0 && beta < 1.0) || !(gamma >= 0.0 && gamma < 1.0) || !(alpha_prime > 0.0 && alpha_prime < 1.0)) {
        throw DomainError("schedule constants out of range: need 0 < alpha', beta < 1 and 0 <= gamma < 1");
    }
    ScheduleParams p;
    p.alpha_prime = alpha_prime;
    p.beta = beta;
    p.gamma = gamma;
    p.variant = std::move(variant);
    const double knee = gamma / 2.0 + alpha_prime * (1.0 + beta) - 1.0;
    p.theta_points = {Breakpoint{0.0, 0.0}, Breakpoint{q_bound(beta), gamma},
                      Breakpoint{beta, knee * knee / (1.0 - gamma)}, Breakpoint{1.0, 2.0 * (1.0 - alpha_prime)}};
    return p;
}

bool ScheduleParams::is_default() const {
    const ScheduleParams ref = defaults();
    return alpha_prime == ref.alpha_prime && beta == ref.beta && gamma == ref.gamma;
}

std::vector<std::string> ScheduleParams::invariant_violations() const {
    std::vector<std::string> out;
    const auto &pt = theta_points;
    for (size_t k = 1; k < pt.size(); ++k) {
        if (!(pt[k].x > pt[k - 1].x)) {
            out.push_back("theta breakpoints not strictly increasing at index " + std::to_string(k));
        }
    }
    if (pt[0].x != 0.0 || pt[0].y != 0.0) {
        out.push_back("theta does not start at (0, 0)");
    }
    if (pt[3].x != 1.0) {
        out.push_back("theta does not end at x = 1");
    }
    if (!out.empty()) {
        return out;
    }
    double prev = -std::numeric_limits<double>::infinity();
    for (size_t k = 1; k < pt.size(); ++k) {
        const double slope = (pt[k].y - pt[k - 1].y) / (pt[k].x - pt[k - 1].x);
        if (slope < prev) {
            out.push_back("theta slope decreases on piece " + std::to_string(k));
        }
        if (slope < 0.0) {
            out.push_back("theta decreasing on piece " + std::to_string(k));
        }
        prev = slope;
    }
    if (pt[3].y >= 1.0) {
        out.push_back("theta reaches 1");
    }
    // Switching from Theta to Lambda at beta must be continuous.
    try {
        const Schedule s(*this);
        const double jump = std::abs(s.theta(beta) - s.lambda(beta));
        if (jump > 1e-12) {
            out.push_back("nu_tilde discontinuous at beta (jump " + fmt(jump) + ")");
        }
    } catch (const std::exception &e) {
        out.push_back(std::string("schedule evaluation failed: ") + e.what());
    }
    return out;
}

nlohmann::json ScheduleParams::to_json() const {
    nlohmann::json pts = nlohmann::json::array();
    for (const Breakpoint &b : theta_points) {
        pts.push_back({b.x, b.y});
    }
    return {{"alpha_prime", alpha_prime}, {"beta", beta},     {"gamma", gamma},
            {"theta_points", pts},        {"variant", variant}};
}

double q_bound(double x) {
    x = check_range("Q", x, 0.0, 1.0);
    if (x <= 0.5) {
        return 1.0 - x;
    }
    if (x <= std::sqrt(3.0) / 2.0) {
        return r_bound(x);
    }
    return 0.0;
}

double r_bound(double x) {
    x = check_range("R", x, -1.0, 1.0);
    return (std::sqrt(3.0 * (1.0 - x * x)) - x) / 2.0;
}

double star_bound(double g, int d) {
    g = check_range("P", g, -1.0, 1.0);
    if (d < 2) {
        throw DomainError("P: degree must be at least 2, got " + std::to_string(d));
    }
    const double dd = static_cast<double>(d);
    if (g < -1.0 / dd) {
        return 1.0;
    }
    return 0.5 * (2.0 - dd - g + std::sqrt((dd * dd - 1.0) * (1.0 - g * g)));
}

Schedule::Schedule(ScheduleParams params) : params_(std::move(params)) {}

double Schedule::theta_piece(int k, double x) const {
    if (k < 1 || k > 3) {
        throw DomainError("theta piece index must be 1, 2 or 3");
    }
    const Breakpoint &a = params_.theta_points[k - 1];
    return a.y + theta_slope(k) * (x - a.x);
}

double Schedule::theta_slope(int k) const {
    if (k < 1 || k > 3) {
        throw DomainError("theta piece index must be 1, 2 or 3");
    }
    const Breakpoint &a = params_.theta_points[k - 1];
    const Breakpoint &b = params_.theta_points[k];
    return (b.y - a.y) / (b.x - a.x);
}

double Schedule::theta(double x) const {
    x = check_range("Theta", x, 0.0, 1.0);
    const auto &pt = params_.theta_points;
    for (int k = 1; k < 3; ++k) {
        if (x <= pt[k].x) {
            return theta_piece(k, x);
        }
    }
    return theta_piece(3, x);
}

double Schedule::lambda(double x) const {
    x = check_range("Lambda", x, 0.0, 1.0);
    const double t = theta(q_bound(x));
    const double num = 0.5 * t + params_.alpha_prime * (1.0 + x) - 1.0;
    return num * num / (1.0 - t);
}

double Schedule::nu_tilde(double x) const {
    x = check_range("nu", x, -1.0, 1.0);
    return x <= params_.beta ? theta(pos(x)) : lambda(pos(x));
}

double Schedule::nu(double x) const {
    const double v = nu_tilde(x);
    if (v < -kClampSlack || v > 1.0 + kClampSlack) {
        throw ScheduleError("nu: arcsin argument squared " + fmt(v) + " outside [0, 1]");
    }
    return std::asin(std::sqrt(std::clamp(v, 0.0, 1.0)));
}

double Schedule::f(double x, double y) const {
    x = check_range("f", x, -1.0, 1.0);
    y = check_range("f", y, -1.0, 1.0);
    const double inner = q_bound(pos(y)) - pos(x);
    if (inner < -kClampSlack || inner > 1.0 + kClampSlack) {
        throw ScheduleError("f: inner Theta argument " + fmt(inner) + " outside [0, 1]");
    }
    const double t = theta(std::clamp(inner, 0.0, 1.0));
    return checked_sqrt("f", (1.0 - lambda(pos(y))) * (1.0 - t));
}

double Schedule::f_star(double x) const { return f(x, r_bound(x)); }

LimitConstants limit_constants() {
    const double s3 = std::sqrt(3.0);
    const double root = std::sqrt(10.0 + 4.0 * s3);
    return LimitConstants{(-2.0 + root) / (2.0 + s3), 2.0 * (s3 + root) / ((2.0 + s3) * (2.0 + s3)),
                          (3.0 + std::sqrt(5.0)) / 6.0};
}

}  // namespace epr
