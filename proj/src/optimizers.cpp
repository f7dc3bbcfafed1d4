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
#include "gcans/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace gcans {

VqeOracle::VqeOracle(VqeProblem problem, AllocationStrategy strategy)
    : problem_(std::move(problem)), strategy_(strategy) {
    if (problem_.circuit.num_qubits() != problem_.observable.num_qubits()) {
        throw std::invalid_argument(fmt::format("circuit has {} qubits, observable {}",
                                                problem_.circuit.num_qubits(),
                                                problem_.observable.num_qubits()));
    }
}

GradientEstimate VqeOracle::estimate(std::span<const double> theta,
                                     std::span<const ShotCount> shots, Rng &rng) const {
    return ievaluate(problem_.circuit, problem_.observable, theta, shots, strategy_, rng);
}

double VqeOracle::energy(std::span<const double> theta) const {
    return exact_energy(problem_.circuit, problem_.observable, theta);
}

GradientEstimate ExactVqeOracle::estimate(std::span<const double> theta,
                                          std::span<const ShotCount> shots, Rng & /*rng*/) const {
    return {exact_gradient(problem_.circuit, problem_.observable, theta),
            std::vector<double>(theta.size(), 0.0),
            std::vector<ShotCount>(shots.begin(), shots.end())};
}

double ExactVqeOracle::energy(std::span<const double> theta) const {
    return exact_energy(problem_.circuit, problem_.observable, theta);
}

OptimizerKind parse_optimizer(std::string_view name) {
    if (name == "gcans") {
        return OptimizerKind::gcans;
    }
    if (name == "icans") {
        return OptimizerKind::icans;
    }
    if (name == "adam") {
        return OptimizerKind::adam;
    }
    if (name == "sgd_ds") {
        return OptimizerKind::sgd_ds;
    }
    throw std::invalid_argument(fmt::format("unknown optimizer '{}'", name));
}

std::string_view to_string(OptimizerKind kind) {
    switch (kind) {
    case OptimizerKind::gcans:
        return "gcans";
    case OptimizerKind::icans:
        return "icans";
    case OptimizerKind::adam:
        return "adam";
    case OptimizerKind::sgd_ds:
        return "sgd_ds";
    }
    return "?";
}

void OptimizerConfig::validate(OptimizerKind kind, std::size_t dimension) const {
    auto fail = [](const std::string &msg) { throw std::invalid_argument(msg); };
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        fail(fmt::format("learning rate must be positive, got {}", learning_rate));
    }
    if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) {
        fail(fmt::format("Lipschitz constant must be positive, got {}", lipschitz));
    }
    if (!(mu >= 0.0 && mu < 1.0)) {
        fail(fmt::format("running-average constant must lie in [0, 1), got {}", mu));
    }
    if (min_shots < 2) {
        fail("min_shots must be at least 2");
    }
    if (max_shots_per_component < min_shots) {
        fail("max_shots_per_component must be >= min_shots");
    }
    if (budget == 0) {
        fail("shot budget must be positive");
    }
    ShotCount first_iteration = min_shots;
    switch (kind) {
    case OptimizerKind::gcans:
    case OptimizerKind::icans:
        if (lipschitz * learning_rate >= 2.0) {
            fail(fmt::format("learning rate {} violates L * alpha < 2 (L = {})", learning_rate,
                             lipschitz));
        }
        if (kind == OptimizerKind::icans && !(icans_bias >= 0.0)) {
            fail("iCANS bias must be non-negative");
        }
        break;
    case OptimizerKind::adam:
        if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0)) {
            fail("Adam betas must lie in [0, 1)");
        }
        if (!(adam_epsilon > 0.0)) {
            fail("Adam epsilon must be positive");
        }
        if (adam_shots < 2) {
            fail("Adam shots per component must be at least 2");
        }
        first_iteration = adam_shots;
        break;
    case OptimizerKind::sgd_ds:
        if (!(sgd_common_ratio >= 1.0) || !std::isfinite(sgd_common_ratio)) {
            fail(fmt::format("common ratio must be >= 1, got {}", sgd_common_ratio));
        }
        if (sgd_initial_shots < 2) {
            fail("initial shots s0 must be at least 2");
        }
        first_iteration = sgd_initial_shots;
        break;
    }
    const ShotCount minimum_cost = 2 * first_iteration * dimension;
    if (budget < minimum_cost) {
        fail(fmt::format("budget {} is smaller than one iteration's minimum cost {}", budget,
                         minimum_cost));
    }
}

OptimizerConfig default_config(double lipschitz, ShotCount budget,
                               double learning_rate_multiplier) {
    OptimizerConfig config;
    config.lipschitz = lipschitz;
    config.budget = budget;
    config.learning_rate = learning_rate_multiplier / lipschitz;
    return config;
}

namespace {

double norm_sq(std::span<const double> v) {
    return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

ShotCount ceil_to_shots(double value, ShotCount min_shots, ShotCount cap) {
    if (!(value < static_cast<double>(cap))) { // also catches inf / nan
        return std::max(cap, min_shots);
    }
    const auto rounded = static_cast<ShotCount>(std::ceil(value));
    return std::clamp(rounded, min_shots, std::max(cap, min_shots));
}

double shot_prefactor(double lipschitz, double learning_rate) {
    const double la = lipschitz * learning_rate;
    return 2.0 * la / (2.0 - la);
}

} // namespace

std::vector<double> gcans_shots_unrounded(std::span<const double> xi, std::span<const double> chi,
                                          double lipschitz, double learning_rate) {
    if (xi.size() != chi.size()) {
        throw std::invalid_argument("xi and chi must have equal length");
    }
    const double chi_sq = norm_sq(chi);
    if (!(chi_sq > 0.0)) {
        throw std::domain_error("gCANS rule undefined for ||chi|| = 0");
    }
    const double xi_sum = std::accumulate(xi.begin(), xi.end(), 0.0);
    const double scale = shot_prefactor(lipschitz, learning_rate) * xi_sum / chi_sq;
    std::vector<double> out(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        out[i] = scale * xi[i];
    }
    return out;
}

std::vector<ShotCount> shots_rule_gcans(std::span<const double> xi, std::span<const double> chi,
                                        double lipschitz, double learning_rate, ShotCount min_shots,
                                        ShotCount cap) {
    if (xi.size() != chi.size()) {
        throw std::invalid_argument("xi and chi must have equal length");
    }
    if (!(norm_sq(chi) > 0.0)) {
        return std::vector<ShotCount>(xi.size(), min_shots);
    }
    const auto raw = gcans_shots_unrounded(xi, chi, lipschitz, learning_rate);
    std::vector<ShotCount> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        out[i] = ceil_to_shots(raw[i], min_shots, cap);
    }
    return out;
}

double icans_efficiency(double xi, double chi, double lipschitz, double learning_rate,
                        double shots) {
    const double a = learning_rate;
    const double la2 = 0.5 * lipschitz * a * a;
    return ((a - la2) * chi * chi - la2 * xi * xi / shots) / shots;
}

std::vector<ShotCount> shots_rule_icans(std::span<const double> xi, std::span<const double> chi,
                                        double lipschitz, double learning_rate, double bias,
                                        double mu, std::uint64_t k, ShotCount min_shots,
                                        ShotCount cap) {
    if (xi.size() != chi.size()) {
        throw std::invalid_argument("xi and chi must have equal length");
    }
    const double prefactor = shot_prefactor(lipschitz, learning_rate);
    const double regularizer = bias * std::pow(mu, static_cast<double>(k));
    std::vector<ShotCount> out(xi.size(), min_shots);
    for (std::size_t i = 0; i < xi.size(); ++i) {
        const double chi_sq = chi[i] * chi[i];
        if (chi_sq > 0.0) {
            out[i] = ceil_to_shots(prefactor * (xi[i] * xi[i] + regularizer) / chi_sq, min_shots,
                                   cap);
        }
    }
    std::size_t best = 0;
    double best_gamma = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xi.size(); ++i) {
        const double gamma = icans_efficiency(xi[i], chi[i], lipschitz, learning_rate,
                                              static_cast<double>(out[i]));
        if (gamma > best_gamma) {
            best_gamma = gamma;
            best = i;
        }
    }
    const ShotCount ceiling = out[best];
    for (auto &s : out) {
        s = std::max(min_shots, std::min(s, ceiling));
    }
    return out;
}

double expected_gain(double learning_rate, double lipschitz, double grad_norm_sq,
                     std::span<const double> variances, std::span<const double> shots) {
    if (variances.size() != shots.size()) {
        throw std::invalid_argument("variances and shots must have equal length");
    }
    const double a = learning_rate;
    const double la2 = 0.5 * lipschitz * a * a;
    double noise = 0.0;
    for (std::size_t i = 0; i < shots.size(); ++i) {
        noise += variances[i] / shots[i];
    }
    return (a - la2) * grad_norm_sq - la2 * noise;
}

ShotCount sgd_ds_shots(ShotCount initial_shots, double common_ratio, std::uint64_t k) {
    const long double value = static_cast<long double>(initial_shots) *
                              std::pow(static_cast<long double>(common_ratio),
                                       static_cast<long double>(k));
    return static_cast<ShotCount>(std::floor(value));
}

std::vector<double> random_initial_theta(std::size_t dimension, Rng &rng) {
    std::vector<double> theta(dimension);
    for (auto &t : theta) {
        t = 2.0 * std::numbers::pi * rng.uniform();
    }
    return theta;
}

namespace {

/**
 * Shared budget loop. `update` receives the estimate and iteration index,
 * moves theta in place, and returns the shot vector for the next iteration.
 */
template <class Update>
OptimizationTrace run_loop(const GradientOracle &oracle, const OptimizerConfig &config,
                           std::span<const double> theta0, std::vector<ShotCount> shots, Rng &rng,
                           Update update) {
    if (theta0.size() != oracle.dimension()) {
        throw std::invalid_argument(fmt::format("initial point has {} entries, expected {}",
                                                theta0.size(), oracle.dimension()));
    }
    OptimizationTrace trace;
    trace.initial_theta.assign(theta0.begin(), theta0.end());
    trace.initial_energy = oracle.energy(theta0);
    trace.best_theta = trace.initial_theta;
    trace.best_energy = trace.initial_energy;

    std::vector<double> theta = trace.initial_theta;
    ShotCount total = 0;
    for (std::uint64_t k = 0; total < config.budget; ++k) {
        const GradientEstimate est = oracle.estimate(theta, shots, rng);
        const ShotCount spent = est.total_shots();
        total += spent;
        std::vector<ShotCount> next = update(est, theta, k);

        IterationRecord rec;
        rec.k = k;
        rec.energy = oracle.energy(theta);
        rec.grad_norm = std::sqrt(norm_sq(est.gradient));
        rec.shots_this_iteration = spent;
        rec.cumulative_shots = total;
        rec.shots = std::move(shots);
        if (config.record_theta) {
            rec.theta = theta;
        }
        if (rec.energy < trace.best_energy) {
            trace.best_energy = rec.energy;
            trace.best_theta = theta;
        }
        trace.records.push_back(std::move(rec));
        shots = std::move(next);
    }
    trace.final_theta = std::move(theta);
    return trace;
}

/// Bias-corrected exponential moving averages of g and sigma_hat.
class RunningAverages {
  public:
    RunningAverages(std::size_t d, double mu) : mu_(mu), chi_raw_(d, 0.0), xi_raw_(d, 0.0) {}

    void update(const GradientEstimate &est, std::uint64_t k) {
        const double correction = 1.0 - std::pow(mu_, static_cast<double>(k + 1));
        chi_.resize(chi_raw_.size());
        xi_.resize(xi_raw_.size());
        for (std::size_t i = 0; i < chi_raw_.size(); ++i) {
            chi_raw_[i] = mu_ * chi_raw_[i] + (1.0 - mu_) * est.gradient[i];
            xi_raw_[i] = mu_ * xi_raw_[i] + (1.0 - mu_) * est.sigma_hat[i];
            chi_[i] = chi_raw_[i] / correction;
            xi_[i] = xi_raw_[i] / correction;
        }
    }

    [[nodiscard]] const std::vector<double> &chi() const { return chi_; }
    [[nodiscard]] const std::vector<double> &xi() const { return xi_; }

  private:
    double mu_;
    std::vector<double> chi_raw_;
    std::vector<double> xi_raw_;
    std::vector<double> chi_;
    std::vector<double> xi_;
};

void descend(std::vector<double> &theta, std::span<const double> gradient, double alpha) {
    for (std::size_t i = 0; i < theta.size(); ++i) {
        theta[i] -= alpha * gradient[i];
    }
}

} // namespace

OptimizationTrace run_gcans(const GradientOracle &oracle, const OptimizerConfig &config,
                            std::span<const double> theta0, Rng &rng) {
    const std::size_t d = oracle.dimension();
    config.validate(OptimizerKind::gcans, d);
    RunningAverages averages(d, config.mu);
    return run_loop(oracle, config, theta0, std::vector<ShotCount>(d, config.min_shots), rng,
                    [&](const GradientEstimate &est, std::vector<double> &theta, std::uint64_t k) {
                        averages.update(est, k);
                        descend(theta, est.gradient, config.learning_rate);
                        return shots_rule_gcans(averages.xi(), averages.chi(), config.lipschitz,
                                                config.learning_rate, config.min_shots,
                                                config.max_shots_per_component);
                    });
}

OptimizationTrace run_icans(const GradientOracle &oracle, const OptimizerConfig &config,
                            std::span<const double> theta0, Rng &rng) {
    const std::size_t d = oracle.dimension();
    config.validate(OptimizerKind::icans, d);
    RunningAverages averages(d, config.mu);
    return run_loop(oracle, config, theta0, std::vector<ShotCount>(d, config.min_shots), rng,
                    [&](const GradientEstimate &est, std::vector<double> &theta, std::uint64_t k) {
                        averages.update(est, k);
                        descend(theta, est.gradient, config.learning_rate);
                        return shots_rule_icans(averages.xi(), averages.chi(), config.lipschitz,
                                                config.learning_rate, config.icans_bias, config.mu,
                                                k, config.min_shots,
                                                config.max_shots_per_component);
                    });
}

OptimizationTrace run_adam(const GradientOracle &oracle, const OptimizerConfig &config,
                           std::span<const double> theta0, Rng &rng) {
    const std::size_t d = oracle.dimension();
    config.validate(OptimizerKind::adam, d);
    std::vector<double> m(d, 0.0);
    std::vector<double> v(d, 0.0);
    const std::vector<ShotCount> shots(d, config.adam_shots);
    return run_loop(oracle, config, theta0, shots, rng,
                    [&](const GradientEstimate &est, std::vector<double> &theta, std::uint64_t k) {
                        const double t = static_cast<double>(k + 1);
                        const double c1 = 1.0 - std::pow(config.adam_beta1, t);
                        const double c2 = 1.0 - std::pow(config.adam_beta2, t);
                        for (std::size_t i = 0; i < d; ++i) {
                            const double g = est.gradient[i];
                            m[i] = config.adam_beta1 * m[i] + (1.0 - config.adam_beta1) * g;
                            v[i] = config.adam_beta2 * v[i] + (1.0 - config.adam_beta2) * g * g;
                            theta[i] -= config.learning_rate * (m[i] / c1) /
                                        (std::sqrt(v[i] / c2) + config.adam_epsilon);
                        }
                        return shots;
                    });
}

OptimizationTrace run_sgd_ds(const GradientOracle &oracle, const OptimizerConfig &config,
                             std::span<const double> theta0, Rng &rng) {
    const std::size_t d = oracle.dimension();
    config.validate(OptimizerKind::sgd_ds, d);
    const auto schedule = [&](std::uint64_t k) {
        return std::vector<ShotCount>(
            d, sgd_ds_shots(config.sgd_initial_shots, config.sgd_common_ratio, k));
    };
    return run_loop(oracle, config, theta0, schedule(0), rng,
                    [&](const GradientEstimate &est, std::vector<double> &theta, std::uint64_t k) {
                        descend(theta, est.gradient, config.learning_rate);
                        return schedule(k + 1);
                    });
}

OptimizationTrace run_optimizer(OptimizerKind kind, const GradientOracle &oracle,
                                const OptimizerConfig &config, std::span<const double> theta0,
                                Rng &rng) {
    switch (kind) {
    case OptimizerKind::gcans:
        return run_gcans(oracle, config, theta0, rng);
    case OptimizerKind::icans:
        return run_icans(oracle, config, theta0, rng);
    case OptimizerKind::adam:
        return run_adam(oracle, config, theta0, rng);
    case OptimizerKind::sgd_ds:
        return run_sgd_ds(oracle, config, theta0, rng);
    }
    throw std::invalid_argument("unknown optimizer kind");
}

OptimizationTrace run_optimizer(OptimizerKind kind, const GradientOracle &oracle,
                                const OptimizerConfig &config, Rng &rng) {
    const auto theta0 = random_initial_theta(oracle.dimension(), rng);
    return run_optimizer(kind, oracle, config, theta0, rng);
}

} // namespace gcans
