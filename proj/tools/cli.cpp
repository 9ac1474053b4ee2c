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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "epr/angles.hpp"
#include "epr/ansatz.hpp"
#include "epr/certifier.hpp"
#include "epr/graph.hpp"
#include "epr/moe.hpp"
#include "epr/sdp.hpp"

namespace epr::cli {

namespace {

constexpr double kSandwichTol = 1e-6;

struct Config {
    std::string input;
    std::string out;
    std::string csv;
    std::string method = "auto";
    double tol_sdp = 1e-8;
    double tol_psd = 1e-7;
    double tol_moe = kMoeTol;
    bool certified_bound = false;
    bool dump_amplitudes = false;
    int grid_r1d = kDefaultR1dPoints;
    int grid_r3d = kDefaultR3dPoints;
    int samples = 10000;
    double beta = 0.0;  // 0 keeps the certified instantiation
    int max_n = 5;
    int random = 0;
    int random_max_n = 8;
    std::uint64_t seed = 1;
};

// Input problems that map to exit code 2.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

SolverMethod parse_method(const std::string &m) {
    if (m == "auto") {
        return SolverMethod::kAuto;
    }
    if (m == "ipm") {
        return SolverMethod::kInteriorPoint;
    }
    return SolverMethod::kAdmm;
}

SolverOptions solver_options(const Config &cfg) {
    SolverOptions opt;
    opt.tol = cfg.tol_sdp;
    opt.tol_psd = cfg.tol_psd;
    opt.method = parse_method(cfg.method);
    opt.certified = cfg.certified_bound;
    return opt;
}

ScheduleParams schedule_params(const Config &cfg) {
    ScheduleParams p = ScheduleParams::defaults();
    if (cfg.beta != 0.0) {
        // Same Theta breakpoints, shifted switch point: diagnostic only.
        p.beta = cfg.beta;
        p.variant = "beta=" + std::to_string(cfg.beta);
    }
    return p;
}

nlohmann::json stamp(const std::string &command, const Config &cfg) {
    return {{"command", command},
            {"schedule", schedule_params(cfg).to_json()},
            {"solver", {{"tol_sdp", cfg.tol_sdp}, {"tol_psd", cfg.tol_psd}, {"method", cfg.method},
                        {"certified_bound", cfg.certified_bound}}},
            {"seed", cfg.seed}};
}

void emit(const nlohmann::json &j, const Config &cfg, std::ostream &out) {
    if (cfg.out.empty()) {
        out << j.dump(2) << '\n';
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) {
        throw UsageError("cannot open output file " + cfg.out);
    }
    f << j.dump(2) << '\n';
}

WeightedGraph load_input(const Config &cfg) {
    try {
        return load_graph(cfg.input);
    } catch (const GraphError &e) {
        throw UsageError(cfg.input + ": " + e.what());
    }
}

int cmd_solve(const Config &cfg, std::ostream &out, std::ostream &err) {
    const WeightedGraph g = load_input(cfg);
    const MomentSolution sol = solve(g, solver_options(cfg));
    const ConstraintReport cr = check_constraints(sol);
    nlohmann::json j = to_json(sol);
    j["constraints_ok"] = cr.ok(cfg.tol_psd);
    j["params"] = stamp("solve", cfg);
    emit(j, cfg, out);
    err << "u = " << sol.u << " (" << to_string(sol.method) << ", " << sol.iterations << " iterations, "
        << (sol.converged ? "converged" : "NOT converged") << ")\n";
    return sol.converged && cr.ok(cfg.tol_psd) ? kExitPass : kExitFail;
}

int cmd_run(const Config &cfg, std::ostream &out, std::ostream &err) {
    const WeightedGraph g = load_input(cfg);
    AnsatzOptions opt;
    opt.solver = solver_options(cfg);
    opt.params = schedule_params(cfg);
    opt.keep_state = cfg.dump_amplitudes;
    const AnsatzRun run = run_pipeline(g, opt);
    const MoeSummary moe = check_all(run.solution, g, cfg.tol_moe);
    const double cap = limit_constants().ansatz_cap;
    nlohmann::json j = to_json(run, cfg.dump_amplitudes);
    j["moe"] = to_json(moe);
    j["sandwich_holds"] = run.sandwich_holds(kSandwichTol);
    j["ansatz_cap"] = cap;
    if (run.ratio_true) {
        j["ratio_true_within_cap"] = *run.ratio_true <= cap + kSandwichTol;
    }
    j["params"] = stamp("run", cfg);
    if (cfg.dump_amplitudes && g.num_vertices() > 16) {
        err << "warning: amplitude dump has " << (std::uint64_t{1} << g.num_vertices()) << " entries\n";
    }
    emit(j, cfg, out);
    err << "ell/u = " << run.ratio_lower << ", energy = " << run.energy << ", u = " << run.u;
    if (run.lambda_max) {
        err << ", lambda_max = " << *run.lambda_max;
    }
    err << ", MoE violations = " << moe.violations.size() << '\n';
    return run.guarantee_met && moe.ok() ? kExitPass : kExitFail;
}

int cmd_verify_moe(const Config &cfg, std::ostream &out, std::ostream &err) {
    const WeightedGraph g = load_input(cfg);
    const MomentSolution sol = solve(g, solver_options(cfg));
    const MoeSummary moe = check_all(sol, g, cfg.tol_moe);
    nlohmann::json j = to_json(moe);
    j["params"] = stamp("verify-moe", cfg);
    emit(j, cfg, out);
    err << moe.checks << " bounds checked, " << moe.violations.size() << " violations, " << moe.noise
        << " within tolerance\n";
    return moe.ok() ? kExitPass : kExitFail;
}

int cmd_certify(const Config &cfg, std::ostream &out, std::ostream &err) {
    CertifyDensities dens;
    dens.r1d_points = cfg.grid_r1d;
    dens.r3d_points = cfg.grid_r3d;
    dens.samples = cfg.samples;
    if (dens.r1d_points < kDefaultR1dPoints || dens.r3d_points < kDefaultR3dPoints) {
        throw UsageError("grid densities may not go below 300 (r1d) and 1000 (r3d) points");
    }
    const ScheduleParams params = schedule_params(cfg);
    const CertificateReport rep = certify_all(params, dens);
    if (!cfg.csv.empty()) {
        std::ofstream f(cfg.csv);
        if (!f) {
            throw UsageError("cannot open csv file " + cfg.csv);
        }
        write_samples_csv(Certifier(params), f);
    }
    nlohmann::json j = rep.to_json();
    j["stamp"] = stamp("certify", cfg);
    emit(j, cfg, out);
    err << "certificate " << (rep.pass ? "PASS" : "FAIL") << ", margin " << rep.overall_margin << '\n';
    for (const std::string &f : rep.failures) {
        err << "  " << f << '\n';
    }
    return rep.pass ? kExitPass : kExitFail;
}

int cmd_limits(const Config &cfg, std::ostream &out, std::ostream &) {
    const LimitConstants lc = limit_constants();
    nlohmann::json j = {{"x", lc.x},
                        {"alpha", lc.alpha},
                        {"ansatz_cap", lc.ansatz_cap},
                        {"alpha_prime", ScheduleParams::defaults().alpha_prime},
                        {"params", stamp("limits", cfg)}};
    emit(j, cfg, out);
    return kExitPass;
}

WeightedGraph random_instance(std::mt19937_64 &rng, int max_n) {
    std::uniform_int_distribution<int> pick_n(3, max_n);
    std::uniform_int_distribution<std::uint64_t> pick_seed;
    for (;;) {
        GeneratorParams gp;
        gp.n = pick_n(rng);
        gp.p = 0.5;
        gp.w_min = 0.5;
        gp.w_max = 2.0;
        WeightedGraph g = generate(GraphKind::kRandom, gp, pick_seed(rng));
        if (g.num_edges() > 0) {
            return g;
        }
    }
}

int cmd_sweep(const Config &cfg, std::ostream &out, std::ostream &err) {
    if (cfg.max_n < 2 || cfg.max_n > 6) {
        throw UsageError("--max-n must lie in [2, 6]");
    }
    std::vector<WeightedGraph> instances;
    for (int n = 2; n <= cfg.max_n; ++n) {
        for (WeightedGraph &g : connected_graphs(n)) {
            instances.push_back(std::move(g));
        }
    }
    std::mt19937_64 rng(cfg.seed);
    for (int k = 0; k < cfg.random; ++k) {
        instances.push_back(random_instance(rng, cfg.random_max_n));
    }
    AnsatzOptions opt;
    opt.solver = solver_options(cfg);
    opt.params = schedule_params(cfg);
    nlohmann::json failures = nlohmann::json::array();
    double worst = 1.0;
    for (const WeightedGraph &g : instances) {
        const AnsatzRun run = run_pipeline(g, opt);
        const MoeSummary moe = check_all(run.solution, g, cfg.tol_moe);
        worst = std::min(worst, run.ratio_lower);
        if (!run.guarantee_met || !run.sandwich_holds(kSandwichTol) || !moe.ok() || !run.solution.converged) {
            failures.push_back({{"graph", g.serialize()}, {"ratio_lower", run.ratio_lower},
                                {"sandwich", run.sandwich_holds(kSandwichTol)},
                                {"moe_violations", moe.violations.size()},
                                {"converged", run.solution.converged}});
        }
    }
    nlohmann::json j = {{"instances", instances.size()},
                        {"min_ratio_lower", worst},
                        {"failures", failures},
                        {"params", stamp("sweep", cfg)}};
    emit(j, cfg, out);
    err << instances.size() << " instances, min ell/u = " << worst << ", failures = " << failures.size() << '\n';
    return failures.empty() ? kExitPass : kExitFail;
}

void add_solver_flags(CLI::App *sub, Config &cfg) {
    sub->add_option("--tol-sdp", cfg.tol_sdp, "Solver stopping tolerance")->capture_default_str();
    sub->add_option("--tol-psd", cfg.tol_psd, "Moment constraint check tolerance")->capture_default_str();
    sub->add_option("--method", cfg.method, "Solver: auto, ipm or admm")
        ->check(CLI::IsMember({"auto", "ipm", "admm"}))
        ->capture_default_str();
    sub->add_flag("--certified-bound", cfg.certified_bound, "Also report a dual-feasible upper bound");
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Config cfg;
    CLI::App app{"Approximation ansatz for the EPR Hamiltonian: moment relaxation, angle schedule, certificate"};
    app.name("epr");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--out", cfg.out, "Write JSON here instead of standard output");
    app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();

    CLI::App *solve_cmd = app.add_subcommand("solve", "Solve the level-2 moment relaxation of a graph");
    solve_cmd->add_option("graph", cfg.input, "Edge-list file")->required()->check(CLI::ExistingFile);
    add_solver_flags(solve_cmd, cfg);

    CLI::App *run_cmd = app.add_subcommand("run", "Run the full ansatz pipeline on a graph");
    run_cmd->add_option("graph", cfg.input, "Edge-list file")->required()->check(CLI::ExistingFile);
    add_solver_flags(run_cmd, cfg);
    run_cmd->add_option("--tol-moe", cfg.tol_moe, "MoE violation tolerance")->capture_default_str();
    run_cmd->add_flag("--dump-amplitudes", cfg.dump_amplitudes, "Include the 2^n state amplitudes");

    CLI::App *moe_cmd = app.add_subcommand("verify-moe", "Check the monogamy bounds on a solved relaxation");
    moe_cmd->add_option("graph", cfg.input, "Edge-list file")->required()->check(CLI::ExistingFile);
    add_solver_flags(moe_cmd, cfg);
    moe_cmd->add_option("--tol-moe", cfg.tol_moe, "MoE violation tolerance")->capture_default_str();

    CLI::App *cert_cmd = app.add_subcommand("certify", "Check the ratio guarantee of the angle schedule");
    cert_cmd->add_option("--grid-r1d", cfg.grid_r1d, "Points on the r1d derivative grid")->capture_default_str();
    cert_cmd->add_option("--grid-r3d", cfg.grid_r3d, "Points on the r3d value grid")->capture_default_str();
    cert_cmd->add_option("--samples", cfg.samples, "Dense samples per case piece")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cert_cmd->add_option("--beta", cfg.beta, "Override beta (diagnostic, keeps Theta breakpoints)")
        ->check(CLI::Range(0.5, 0.8660254));
    cert_cmd->add_option("--csv", cfg.csv, "Write g,r1,r2,r3 samples here");

    CLI::App *limits_cmd = app.add_subcommand("limits", "Print the limit constants of the analysis");

    CLI::App *sweep_cmd = app.add_subcommand("sweep", "Check the guarantee on all small connected graphs");
    sweep_cmd->add_option("--max-n", cfg.max_n, "Largest vertex count enumerated (2 to 6)")->capture_default_str();
    sweep_cmd->add_option("--random", cfg.random, "Additional random weighted instances")->capture_default_str();
    sweep_cmd->add_option("--random-max-n", cfg.random_max_n, "Largest random instance")
        ->check(CLI::Range(3, 12))
        ->capture_default_str();
    add_solver_flags(sweep_cmd, cfg);
    sweep_cmd->add_option("--tol-moe", cfg.tol_moe, "MoE violation tolerance")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (solve_cmd->parsed()) {
            return cmd_solve(cfg, out, err);
        }
        if (run_cmd->parsed()) {
            return cmd_run(cfg, out, err);
        }
        if (moe_cmd->parsed()) {
            return cmd_verify_moe(cfg, out, err);
        }
        if (cert_cmd->parsed()) {
            return cmd_certify(cfg, out, err);
        }
        if (limits_cmd->parsed()) {
            return cmd_limits(cfg, out, err);
        }
        return cmd_sweep(cfg, out, err);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SizeLimitError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "failure: " << e.what() << '\n';
        return kExitFail;
    }
}

}  // namespace epr::cli
