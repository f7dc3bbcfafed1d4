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
 * @file optimizers.hpp
 * Shot-adaptive stochastic gradient descent: gCANS, and the iCANS, Adam and
 * SGD-with-dynamic-sampling baselines. All four run the same budgeted loop
 *
 *   while s_tot < N:
 *       g, sigma = estimate(theta, s);  s_tot += 2 sum_i s_i
 *       update theta (and the running averages); choose next s
 *
 * and differ only in the update and the shot rule.
 */
#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "gcans/estimator.hpp"
#include "gcans/pauli.hpp"
#include "gcans/rng.hpp"
#include "gcans/statevector.hpp"

namespace gcans {

/// Source of stochastic gradients and of the monitoring energy f(theta).
class GradientOracle {
  public:
    virtual ~GradientOracle() = default;
    [[nodiscard]] virtual std::size_t dimension() const = 0;
    virtual GradientEstimate estimate(std::span<const double> theta,
                                      std::span<const ShotCount> shots, Rng &rng) const = 0;
    [[nodiscard]] virtual double energy(std::span<const double> theta) const = 0;
};

struct VqeProblem {
    AnsatzCircuit circuit;
    Observable observable;

    [[nodiscard]] std::size_t dimension() const { return circuit.parameter_count(); }
    [[nodiscard]] double lipschitz() const {
        return lipschitz_bound(observable, circuit.parameter_count());
    }
};

/// Shot-noisy parameter-shift gradients via ievaluate.
class VqeOracle final : public GradientOracle {
  public:
    explicit VqeOracle(VqeProblem problem,
                       AllocationStrategy strategy = AllocationStrategy::weighted_random);

    [[nodiscard]] std::size_t dimension() const override { return problem_.dimension(); }
    GradientEstimate estimate(std::span<const double> theta, std::span<const ShotCount> shots,
                              Rng &rng) const override;
    [[nodiscard]] double energy(std::span<const double> theta) const override;
    [[nodiscard]] const VqeProblem &problem() const { return problem_; }

  private:
    VqeProblem problem_;
    AllocationStrategy strategy_;
};

/// Exact parameter-shift gradients with zero reported spread; shots are only booked.
class ExactVqeOracle final : public GradientOracle {
  public:
    explicit ExactVqeOracle(VqeProblem problem) : problem_(std::move(problem)) {}

    [[nodiscard]] std::size_t dimension() const override { return problem_.dimension(); }
    GradientEstimate estimate(std::span<const double> theta, std::span<const ShotCount> shots,
                              Rng &rng) const override;
    [[nodiscard]] double energy(std::span<const double> theta) const override;

  private:
    VqeProblem problem_;
};

enum class OptimizerKind { gcans, icans, adam, sgd_ds };

OptimizerKind parse_optimizer(std::string_view name);
std::string_view to_string(OptimizerKind kind);

struct OptimizerConfig {
    double learning_rate = 0.0; ///< alpha
    double lipschitz = 0.0;     ///< L
    double mu = 0.99;           ///< running-average constant
    ShotCount min_shots = 2;    ///< s_min
    ShotCount budget = 0;       ///< N
    /// Upper bound on any adaptive s_i.
    ShotCount max_shots_per_component = 10'000'000;

    double icans_bias = 1e-6; ///< b

    double adam_beta1 = 0.9;
    double adam_beta2 = 0.99;
    double adam_epsilon = 1e-8;
    ShotCount adam_shots = 2500;

    ShotCount sgd_initial_shots = 500; ///< s0
    double sgd_common_ratio = 1.0025;  ///< r

    bool record_theta = false;

    /// Throws std::invalid_argument for out-of-range values; `dimension` sizes the budget check.
    void validate(OptimizerKind kind, std::size_t dimension) const;
};

/// Defaults used across the benchmarks: mu = 0.99, b = 1e-6, Adam (0.9, 0.99, 1e-8).
OptimizerConfig default_config(double lipschitz, ShotCount budget,
                               double learning_rate_multiplier = 0.5);

struct IterationRecord {
    std::uint64_t k;
    double energy;         ///< exact f(theta) after the update
    double grad_norm;      ///< ||g|| of the estimate used in this iteration
    ShotCount shots_this_iteration;
    ShotCount cumulative_shots;
    std::vector<ShotCount> shots; ///< s used in this iteration
    std::vector<double> theta;    ///< theta after the update, when recorded
};

struct OptimizationTrace {
    std::vector<double> initial_theta;
    double initial_energy = 0.0;
    std::vector<IterationRecord> records;
    std::vector<double> best_theta;
    double best_energy = 0.0;
    std::vector<double> final_theta;

    [[nodiscard]] std::size_t iterations() const { return records.size(); }
    [[nodiscard]] ShotCount total_shots() const {
        return records.empty() ? 0 : records.back().cumulative_shots;
    }
    [[nodiscard]] double final_energy() const {
        return records.empty() ? initial_energy : records.back().energy;
    }
};

/**
 * Unrounded gCANS allocation (2 L a / (2 - L a)) xi_i sum_j xi_j / ||chi||^2.
 * Throws std::domain_error when ||chi|| = 0.
 */
std::vector<double> gcans_shots_unrounded(std::span<const double> xi, std::span<const double> chi,
                                          double lipschitz, double learning_rate);

/// max(s_min, ceil(unrounded)) clamped to `cap`; ||chi|| = 0 gives s_min everywhere.
std::vector<ShotCount> shots_rule_gcans(std::span<const double> xi, std::span<const double> chi,
                                        double lipschitz, double learning_rate, ShotCount min_shots,
                                        ShotCount cap = std::numeric_limits<ShotCount>::max());

/**
 * s_i = max(s_min, ceil((2 L a / (2 - L a)) (xi_i^2 + b mu^k) / chi_i^2)), then
 * every s_i is clipped to s_{i*} where i* maximizes the per-component shot
 * efficiency gamma_i. Components with chi_i = 0 get s_min.
 */
std::vector<ShotCount> shots_rule_icans(std::span<const double> xi, std::span<const double> chi,
                                        double lipschitz, double learning_rate, double bias,
                                        double mu, std::uint64_t k, ShotCount min_shots,
                                        ShotCount cap = std::numeric_limits<ShotCount>::max());

/// gamma_i = ((a - L a^2 / 2) chi_i^2 - (L a^2 / 2) xi_i^2 / s_i) / s_i.
double icans_efficiency(double xi, double chi, double lipschitz, double learning_rate,
                        double shots);

/// E[G] = (a - L a^2 / 2) ||grad f||^2 - (L a^2 / 2) sum_i sigma_i^2 / s_i.
double expected_gain(double learning_rate, double lipschitz, double grad_norm_sq,
                     std::span<const double> variances, std::span<const double> shots);

/// floor(s0 r^k).
ShotCount sgd_ds_shots(ShotCount initial_shots, double common_ratio, std::uint64_t k);

/// Uniform in [0, 2 pi)^d.
std::vector<double> random_initial_theta(std::size_t dimension, Rng &rng);

OptimizationTrace run_gcans(const GradientOracle &oracle, const OptimizerConfig &config,
                            std::span<const double> theta0, Rng &rng);
OptimizationTrace run_icans(const GradientOracle &oracle, const OptimizerConfig &config,
                            std::span<const double> theta0, Rng &rng);
OptimizationTrace run_adam(const GradientOracle &oracle, const OptimizerConfig &config,
                           std::span<const double> theta0, Rng &rng);
OptimizationTrace run_sgd_ds(const GradientOracle &oracle, const OptimizerConfig &config,
                             std::span<const double> theta0, Rng &rng);

OptimizationTrace run_optimizer(OptimizerKind kind, const GradientOracle &oracle,
                                const OptimizerConfig &config, std::span<const double> theta0,
                                Rng &rng);

/// Draws theta0 from `rng` with random_initial_theta, then runs.
OptimizationTrace run_optimizer(OptimizerKind kind, const GradientOracle &oracle,
                                const OptimizerConfig &config, Rng &rng);

} // namespace gcans
