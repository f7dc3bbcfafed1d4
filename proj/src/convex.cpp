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
#include "gcans/convex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace gcans::convex {

QuadraticProblem::QuadraticProblem(Eigen::MatrixXd hessian, Eigen::VectorXd optimum,
                                   Eigen::VectorXd noise_std)
    : hessian_(std::move(hessian)), optimum_(std::move(optimum)), noise_std_(std::move(noise_std)) {
    const auto d = optimum_.size();
    if (d == 0 || hessian_.rows() != d || hessian_.cols() != d || noise_std_.size() != d) {
        throw std::invalid_argument("quadratic problem: inconsistent dimensions");
    }
    if (!hessian_.isApprox(hessian_.transpose(), 1e-12)) {
        throw std::invalid_argument("quadratic problem: Hessian must be symmetric");
    }
    if ((noise_std_.array() < 0.0).any()) {
        throw std::invalid_argument("quadratic problem: noise std must be non-negative");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hessian_, Eigen::EigenvaluesOnly);
    mu_ = solver.eigenvalues()(0);
    lipschitz_ = solver.eigenvalues()(d - 1);
    if (!(mu_ > 0.0)) {
        throw std::invalid_argument(
            fmt::format("quadratic problem: Hessian not positive definite (min eigenvalue {})", mu_));
    }
}

QuadraticProblem QuadraticProblem::isotropic(std::size_t dimension, double noise_std) {
    const auto d = static_cast<Eigen::Index>(dimension);
    return {Eigen::MatrixXd::Identity(d, d), Eigen::VectorXd::Zero(d),
            Eigen::VectorXd::Constant(d, noise_std)};
}

QuadraticProblem QuadraticProblem::random_spd(std::size_t dimension, double mu, double lipschitz,
                                              double noise_std, Rng &rng) {
    if (!(mu > 0.0 && lipschitz >= mu)) {
        throw std::invalid_argument("random_spd needs 0 < mu <= L");
    }
    const auto d = static_cast<Eigen::Index>(dimension);
    Eigen::MatrixXd gaussian(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            gaussian(i, j) = rng.normal();
        }
    }
    const Eigen::MatrixXd rotation = Eigen::HouseholderQR<Eigen::MatrixXd>(gaussian).householderQ();
    Eigen::VectorXd spectrum(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        spectrum(i) = mu * std::pow(lipschitz / mu, rng.uniform());
    }
    spectrum(0) = mu;
    spectrum(d - 1) = lipschitz;
    Eigen::MatrixXd hessian = rotation * spectrum.asDiagonal() * rotation.transpose();
    hessian = 0.5 * (hessian + hessian.transpose()).eval();
    Eigen::VectorXd optimum(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        optimum(i) = rng.normal();
    }
    return {std::move(hessian), std::move(optimum), Eigen::VectorXd::Constant(d, noise_std)};
}

double QuadraticProblem::value(const Eigen::VectorXd &theta) const {
    const Eigen::VectorXd delta = theta - optimum_;
    return 0.5 * delta.dot(hessian_ * delta);
}

Eigen::VectorXd QuadraticProblem::gradient(const Eigen::VectorXd &theta) const {
    return hessian_ * (theta - optimum_);
}

Eigen::VectorXd NoisyGradientOracle::sample(const Eigen::VectorXd &theta,
                                            const Eigen::VectorXd &shots, Rng &rng) const {
    Eigen::VectorXd g = problem_->gradient(theta);
    const auto &sigma = problem_->noise_std();
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        if (shots(i) > 0.0 && sigma(i) > 0.0) {
            g(i) += sigma(i) / std::sqrt(shots(i)) * rng.normal();
        }
    }
    return g;
}

Eigen::VectorXd idealized_gcans_shots(const QuadraticProblem &problem,
                                      const Eigen::VectorXd &theta, double learning_rate) {
    const double grad_sq = problem.gradient(theta).squaredNorm();
    if (!(grad_sq > 0.0)) {
        throw std::domain_error("idealized gCANS shots undefined at a zero gradient");
    }
    const double la = problem.lipschitz() * learning_rate;
    const auto &sigma = problem.noise_std();
    return (2.0 * la / (2.0 - la)) * sigma.sum() / grad_sq * sigma;
}

double idealized_noise_power(const QuadraticProblem &problem, const Eigen::VectorXd &theta,
                             double learning_rate) {
    const Eigen::VectorXd shots = idealized_gcans_shots(problem, theta, learning_rate);
    const auto &sigma = problem.noise_std();
    double total = 0.0;
    for (Eigen::Index i = 0; i < shots.size(); ++i) {
        if (shots(i) > 0.0) {
            total += sigma(i) * sigma(i) / shots(i);
        }
    }
    return total;
}

std::vector<double> GapEnsemble::mean() const {
    std::vector<double> out(steps(), 0.0);
    for (const auto &trial : gaps) {
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] += trial[k];
        }
    }
    for (auto &v : out) {
        v /= static_cast<double>(trials());
    }
    return out;
}

namespace {

/// theta <- theta - a g with idealized shots; returns false at an exact optimum.
bool idealized_step(const QuadraticProblem &problem, const NoisyGradientOracle &oracle,
                    Eigen::VectorXd &theta, double learning_rate, Rng &rng) {
    if (!(problem.gradient(theta).squaredNorm() > 0.0)) {
        return false;
    }
    const Eigen::VectorXd shots = idealized_gcans_shots(problem, theta, learning_rate);
    theta -= learning_rate * oracle.sample(theta, shots, rng);
    return true;
}

} // namespace

GapEnsemble run_idealized_gcans(const QuadraticProblem &problem, double learning_rate,
                                std::size_t iterations, std::size_t trials,
                                const Eigen::VectorXd &theta0, std::uint64_t seed) {
    const double limit = std::min(1.0 / problem.lipschitz(), 2.0 / problem.mu());
    if (!(learning_rate > 0.0 && learning_rate < limit)) {
        throw std::invalid_argument(fmt::format(
            "learning rate {} outside (0, min(1/L, 2/mu)) = (0, {})", learning_rate, limit));
    }
    if (theta0.size() != static_cast<Eigen::Index>(problem.dimension())) {
        throw std::invalid_argument("initial point has the wrong dimension");
    }
    const NoisyGradientOracle oracle(problem);
    GapEnsemble out;
    out.gaps.resize(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(seed, t);
        Eigen::VectorXd theta = theta0;
        auto &gaps = out.gaps[t];
        gaps.reserve(iterations + 1);
        gaps.push_back(problem.gap(theta));
        for (std::size_t k = 0; k < iterations; ++k) {
            idealized_step(problem, oracle, theta, learning_rate, rng);
            gaps.push_back(problem.gap(theta));
        }
    }
    return out;
}

double fit_geometric_rate(const std::vector<double> &mean_gaps) {
    std::vector<double> logs;
    for (double g : mean_gaps) {
        if (!(g > 0.0)) {
            break;
        }
        logs.push_back(std::log(g));
    }
    if (logs.size() < 2) {
        throw std::domain_error("need at least two positive mean gaps to fit a rate");
    }
    const double n = static_cast<double>(logs.size());
    const double k_mean = 0.5 * (n - 1.0);
    double y_mean = 0.0;
    for (double y : logs) {
        y_mean += y;
    }
    y_mean /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < logs.size(); ++k) {
        const double dk = static_cast<double>(k) - k_mean;
        sxy += dk * (logs[k] - y_mean);
        sxx += dk * dk;
    }
    return std::exp(sxy / sxx);
}

StepBoundCheck check_step_contraction(const GapEnsemble &ensemble, double factor, double sigmas) {
    StepBoundCheck out;
    out.passed = true;
    out.worst_z = -std::numeric_limits<double>::infinity();
    const std::size_t trials = ensemble.trials();
    if (trials < 2) {
        throw std::invalid_argument("step contraction check needs at least two trials");
    }
    for (std::size_t k = 0; k + 1 < ensemble.steps(); ++k) {
        double mean = 0.0;
        double m2 = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            const double x = ensemble.gaps[t][k + 1] - factor * ensemble.gaps[t][k];
            const double delta = x - mean;
            mean += delta / static_cast<double>(t + 1);
            m2 += delta * (x - mean);
        }
        const double se = std::sqrt(m2 / static_cast<double>(trials - 1) / static_cast<double>(trials));
        if (mean <= 0.0) {
            continue;
        }
        const double z = se > 0.0 ? mean / se : std::numeric_limits<double>::infinity();
        if (z > out.worst_z) {
            out.worst_z = z;
            out.worst_step = k;
        }
        if (z > sigmas) {
            out.passed = false;
        }
    }
    return out;
}

PlReport check_pl_inequality(const QuadraticProblem &problem,
                             const std::vector<Eigen::VectorXd> &points) {
    PlReport report;
    for (const auto &theta : points) {
        ++report.points;
        const double lhs = 2.0 * problem.mu() * problem.gap(theta);
        const double rhs = problem.gradient(theta).squaredNorm();
        if (rhs > 0.0) {
            report.max_ratio = std::max(report.max_ratio, lhs / rhs);
        }
        if (lhs > rhs * (1.0 + 1e-9) + 1e-300) {
            ++report.violations;
        }
    }
    return report;
}

DescentCheck check_descent_step(const QuadraticProblem &problem, const Eigen::VectorXd &theta,
                                double learning_rate, std::size_t trials, Rng &rng,
                                double sigmas) {
    DescentCheck out;
    const double grad_sq = problem.gradient(theta).squaredNorm();
    out.bound = -0.25 * learning_rate * grad_sq;
    if (!(grad_sq > 0.0)) {
        out.passed = true;
        return out;
    }
    if (trials < 2) {
        throw std::invalid_argument("descent check needs at least two trials");
    }
    const NoisyGradientOracle oracle(problem);
    const double f0 = problem.value(theta);
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Eigen::VectorXd next = theta;
        idealized_step(problem, oracle, next, learning_rate, rng);
        const double x = problem.value(next) - f0;
        const double delta = x - mean;
        mean += delta / static_cast<double>(t + 1);
        m2 += delta * (x - mean);
    }
    out.mean_change = mean;
    out.standard_error =
        std::sqrt(m2 / static_cast<double>(trials - 1) / static_cast<double>(trials));
    out.passed = out.mean_change - out.bound <= sigmas * out.standard_error;
    return out;
}

} // namespace gcans::convex
