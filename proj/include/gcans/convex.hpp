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
/**
 * @file convex.hpp
 * Strongly convex quadratic testbed for SGD driven by the idealized gCANS
 * allocation (true gradient and true per-component noise in the shot rule).
 *
 * f(theta) = 1/2 (theta - theta*)^T A (theta - theta*), f* = 0. A gradient
 * sample with (possibly fractional) shot counts s_i is grad f + e with
 * independent e_i ~ N(0, sigma_i^2 / s_i).
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gcans/rng.hpp"

namespace gcans::convex {

class QuadraticProblem {
  public:
    QuadraticProblem(Eigen::MatrixXd hessian, Eigen::VectorXd optimum, Eigen::VectorXd noise_std);

    /// A = I on d dimensions, theta* = 0, sigma_i = noise_std.
    static QuadraticProblem isotropic(std::size_t dimension, double noise_std);

    /// Random SPD A with eigenvalues log-uniform in [mu, L], random rotation and optimum.
    static QuadraticProblem random_spd(std::size_t dimension, double mu, double lipschitz,
                                       double noise_std, Rng &rng);

    [[nodiscard]] std::size_t dimension() const { return static_cast<std::size_t>(optimum_.size()); }
    [[nodiscard]] const Eigen::MatrixXd &hessian() const { return hessian_; }
    [[nodiscard]] const Eigen::VectorXd &optimum() const { return optimum_; }
    [[nodiscard]] const Eigen::VectorXd &noise_std() const { return noise_std_; }
    /// Strong-convexity constant (smallest eigenvalue of A).
    [[nodiscard]] double mu() const { return mu_; }
    /// Gradient Lipschitz constant (largest eigenvalue of A).
    [[nodiscard]] double lipschitz() const { return lipschitz_; }

    [[nodiscard]] double value(const Eigen::VectorXd &theta) const;
    [[nodiscard]] Eigen::VectorXd gradient(const Eigen::VectorXd &theta) const;
    /// f(theta) - f*.
    [[nodiscard]] double gap(const Eigen::VectorXd &theta) const { return value(theta); }

  private:
    Eigen::MatrixXd hessian_;
    Eigen::VectorXd optimum_;
    Eigen::VectorXd noise_std_;
    double mu_ = 0.0;
    double lipschitz_ = 0.0;
};

/// Unbiased gradient samples with Var[g_i] = sigma_i^2 / s_i exactly.
class NoisyGradientOracle {
  public:
    explicit NoisyGradientOracle(const QuadraticProblem &problem) : problem_(&problem) {}

    /// Components with s_i = 0 or sigma_i = 0 are returned noise free.
    Eigen::VectorXd sample(const Eigen::VectorXd &theta, const Eigen::VectorXd &shots,
                           Rng &rng) const;

  private:
    const QuadraticProblem *problem_;
};

/// s_i = (2 L a / (2 - L a)) sigma_i sum_j sigma_j / ||grad f(theta)||^2, real valued.
Eigen::VectorXd idealized_gcans_shots(const QuadraticProblem &problem,
                                      const Eigen::VectorXd &theta, double learning_rate);

/// sum_i sigma_i^2 / s_i under idealized shots; equals ((2 - L a) / (2 L a)) ||grad f||^2.
double idealized_noise_power(const QuadraticProblem &problem, const Eigen::VectorXd &theta,
                             double learning_rate);

/// gaps[trial][k] = f(theta_k) - f*, k = 0..T.
struct GapEnsemble {
    std::vector<std::vector<double>> gaps;

    [[nodiscard]] std::size_t trials() const { return gaps.size(); }
    [[nodiscard]] std::size_t steps() const { return gaps.empty() ? 0 : gaps.front().size(); }
    [[nodiscard]] std::vector<double> mean() const;
};

/**
 * SGD with idealized gCANS shots from `theta0`, `trials` independent runs of
 * `iterations` steps. Trial t uses Rng(seed, t). Requires
 * 0 < a < min(1/L, 2/mu). A run whose gradient is exactly zero stays put.
 */
GapEnsemble run_idealized_gcans(const QuadraticProblem &problem, double learning_rate,
                                std::size_t iterations, std::size_t trials,
                                const Eigen::VectorXd &theta0, std::uint64_t seed);

/**
 * exp of the least-squares slope of log(mean gap) against k. The sequence is
 * cut at the first non-positive entry; at least two positive entries needed.
 */
double fit_geometric_rate(const std::vector<double> &mean_gaps);

struct StepBoundCheck {
    std::size_t worst_step = 0;
    double worst_z = 0.0; ///< largest (mean excess) / (standard error) over steps
    bool passed = false;
};

/**
 * Per-step check of E[gap_{k+1}] <= factor * E[gap_k] within `sigmas` standard
 * errors of the per-trial difference gap_{k+1} - factor * gap_k.
 */
StepBoundCheck check_step_contraction(const GapEnsemble &ensemble, double factor,
                                      double sigmas = 3.0);

struct PlReport {
    std::size_t points = 0;
    std::size_t violations = 0;
    double max_ratio = 0.0; ///< max 2 mu gap / ||grad||^2 over points with nonzero gradient
    [[nodiscard]] bool passed() const { return violations == 0; }
};

/// 2 mu (f - f*) <= ||grad f||^2 at every point, with 1e-9 relative slack.
PlReport check_pl_inequality(const QuadraticProblem &problem,
                             const std::vector<Eigen::VectorXd> &points);

struct DescentCheck {
    double mean_change = 0.0;    ///< Monte Carlo E[f(theta+)] - f(theta)
    double standard_error = 0.0; ///< of mean_change
    double bound = 0.0;          ///< -a ||grad f||^2 / 4
    bool passed = false;
};

/// One idealized-gCANS SGD step from theta, repeated `trials` times.
DescentCheck check_descent_step(const QuadraticProblem &problem, const Eigen::VectorXd &theta,
                                double learning_rate, std::size_t trials, Rng &rng,
                                double sigmas = 3.0);

} // namespace gcans::convex
