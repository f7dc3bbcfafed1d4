// Copyright 2026 The gcans Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Command-line front end: run, sweep, ground, cost, verify.
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "gcans/bench.hpp"
#include "gcans/convex.hpp"
#include "gcans/kernels.hpp"

namespace {

using namespace gcans;

int cmd_run(const std::string &spec_path) {
    const auto spec = bench::load_spec(spec_path);
    const auto result = bench::run_experiment(spec);
    fmt::print("ground energy {:.10f}, {} terms, d = {}, L = {}\n", result.ground_energy,
               result.terms, result.dimension, result.lipschitz);
    for (const auto &c : result.cells) {
        fmt::print("{:>8} seed {:>3}  K={:<6} S={:<10} final={:.6f}  to_threshold={}\n", c.label,
                   c.seed, c.iterations(), c.shots(), c.trace.final_energy(),
                   c.shots_to_threshold ? std::to_string(*c.shots_to_threshold) : "null");
    }
    fmt::print("wrote {} traces and summary.json to {}\n", result.cells.size(),
               spec.output_dir.string());
    return 0;
}

int cmd_sweep(const std::string &spec_path, const std::string &axis_name) {
    const auto spec = bench::load_spec(spec_path);
    const auto axis = bench::parse_axis(axis_name);
    const auto report = bench::run_sweep(spec, axis);
    for (const auto &p : report.points) {
        if (p.feasible) {
            fmt::print("{:>8} {}={:<8} median normalized gap {:.4f}\n", p.label, axis_name, p.value,
                       p.median_gap());
        } else {
            fmt::print("{:>8} {}={:<8} infeasible: {}\n", p.label, axis_name, p.value, p.error);
        }
    }
    fmt::print("wrote sweep_{}.csv to {}\n", axis_name, spec.output_dir.string());
    return 0;
}

int cmd_ground(const std::string &tfim_arg, const std::string &file_arg) {
    bench::ProblemSpec problem;
    if (!tfim_arg.empty()) {
        std::vector<std::string> parts;
        std::stringstream ss(tfim_arg);
        for (std::string item; std::getline(ss, item, ',');) {
            parts.push_back(item);
        }
        if (parts.size() < 2 || parts.size() > 3) {
            throw std::invalid_argument("--tfim expects n,g[,boundary]");
        }
        problem.kind = bench::ProblemSpec::Kind::tfim;
        problem.num_qubits = std::stoul(parts[0]);
        problem.field = std::stod(parts[1]);
        problem.boundary = parts.size() == 3 ? parse_boundary(parts[2]) : Boundary::open;
    } else {
        problem.kind = bench::ProblemSpec::Kind::file;
        problem.hamiltonian_file = file_arg;
    }
    fmt::print("{:.15g}\n", bench::ground(problem));
    return 0;
}

int cmd_cost(std::uint64_t k, std::uint64_t s, std::uint64_t p) {
    const double t = bench::time_seconds(k, s, p);
    fmt::print("cost_usd {:.2f}\ntime_seconds {:.1f}\ntime_hours {:.2f}\n", bench::cost_usd(k, s, p),
               t, t / 3600.0);
    return 0;
}

struct VerifyConfig {
    std::uint64_t seed = 2021;
    std::size_t rate_trials = 1000;
    std::size_t rate_iterations = 60;
    std::size_t descent_problems = 5;
    std::size_t descent_points = 50;
    std::size_t descent_trials = 10000;
    std::size_t pl_points = 1000;
};

VerifyConfig load_verify_config(const std::string &path) {
    VerifyConfig c;
    if (path.empty()) {
        return c;
    }
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open '{}'", path));
    }
    const auto j = nlohmann::json::parse(in);
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto &k = it.key();
        const auto v = it.value().get<std::uint64_t>();
        if (k == "seed") c.seed = v;
        else if (k == "rate_trials") c.rate_trials = v;
        else if (k == "rate_iterations") c.rate_iterations = v;
        else if (k == "descent_problems") c.descent_problems = v;
        else if (k == "descent_points") c.descent_points = v;
        else if (k == "descent_trials") c.descent_trials = v;
        else if (k == "pl_points") c.pl_points = v;
        else throw std::runtime_error(fmt::format("unknown key '{}' in verify config", k));
    }
    return c;
}

int cmd_verify(const std::string &config_path) {
    using namespace gcans::convex;
    const VerifyConfig c = load_verify_config(config_path);
    bool ok = true;
    auto report = [&](bool pass, const std::string &line) {
        fmt::print("[{}] {}\n", pass ? "PASS" : "FAIL", line);
        ok = ok && pass;
    };

    const auto iso = QuadraticProblem::isotropic(10, 1.0);
    const Eigen::VectorXd start = Eigen::VectorXd::Ones(10);
    const auto ens = run_idealized_gcans(iso, 0.5, c.rate_iterations, c.rate_trials, start, c.seed);
    const double rate = fit_geometric_rate(ens.mean());
    report(rate <= 0.78, fmt::format("isotropic rate {:.4f} <= 0.75 + 0.03", rate));
    const auto step = check_step_contraction(ens, 0.75);
    report(step.passed, fmt::format("per-step contraction 0.75, worst z {:.2f} at k={}",
                                    step.worst_z, step.worst_step));

    Rng rng(c.seed, 1);
    std::size_t failures = 0;
    std::size_t pl_violations = 0;
    for (std::size_t p = 0; p < c.descent_problems; ++p) {
        const auto prob = QuadraticProblem::random_spd(10, 0.5, 2.0, 1.0, rng);
        const double alpha = 0.5 / prob.lipschitz();
        std::vector<Eigen::VectorXd> points;
        for (std::size_t i = 0; i < std::max(c.descent_points, c.pl_points); ++i) {
            Eigen::VectorXd theta(10);
            for (auto &x : theta) {
                x = 3.0 * rng.normal();
            }
            points.push_back(theta);
        }
        for (std::size_t i = 0; i < c.descent_points; ++i) {
            failures += check_descent_step(prob, points[i], alpha, c.descent_trials, rng).passed ? 0 : 1;
        }
        points.resize(c.pl_points);
        pl_violations += check_pl_inequality(prob, points).violations;
    }
    report(failures == 0, fmt::format("descent inequality at {} points, {} failures",
                                      c.descent_problems * c.descent_points, failures));
    report(pl_violations == 0, fmt::format("PL inequality, {} violations", pl_violations));
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"gcans: shot-adaptive SGD for variational eigensolvers"};
    app.require_subcommand(1);

    std::string spec_path;
    auto *run = app.add_subcommand("run", "run an experiment spec");
    run->add_option("spec", spec_path, "experiment spec (JSON)")->required()->check(CLI::ExistingFile);

    std::string axis;
    auto *sweep = app.add_subcommand("sweep", "hyperparameter sweep over an experiment spec");
    sweep->add_option("spec", spec_path, "experiment spec (JSON)")->required()->check(CLI::ExistingFile);
    sweep->add_option("--axis", axis, "learning_rate_multiplier or common_ratio")->required();

    std::string tfim_arg;
    std::string file_arg;
    auto *ground = app.add_subcommand("ground", "exact ground energy by dense diagonalization");
    auto *tfim_opt = ground->add_option("--tfim", tfim_arg, "n,g[,open|periodic]");
    auto *file_opt = ground->add_option("--file", file_arg, "Hamiltonian file")->check(CLI::ExistingFile);
    tfim_opt->excludes(file_opt);
    ground->require_option(1);

    std::uint64_t iters = 0;
    std::uint64_t shots = 0;
    std::uint64_t terms = 0;
    auto *cost = app.add_subcommand("cost", "cloud cost and wall-clock estimate");
    cost->add_option("--iters", iters, "iterations K")->required();
    cost->add_option("--shots", shots, "total shots S")->required();
    cost->add_option("--terms", terms, "Pauli term count P")->required();

    std::string verify_config;
    auto *verify = app.add_subcommand("verify", "convex-testbed convergence checks");
    verify->add_option("--config", verify_config, "trial counts (JSON)")->check(CLI::ExistingFile);

    bool scalar = false;
    app.add_flag("--scalar", scalar, "force the scalar kernels");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }
    if (scalar) {
        kernels::force_scalar(true);
    }

    try {
        if (*run) return cmd_run(spec_path);
        if (*sweep) return cmd_sweep(spec_path, axis);
        if (*ground) return cmd_ground(tfim_arg, file_arg);
        if (*cost) return cmd_cost(iters, shots, terms);
        if (*verify) return cmd_verify(verify_config);
    } catch (const std::exception &e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    return 1;
}
