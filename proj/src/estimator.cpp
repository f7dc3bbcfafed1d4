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
#include "gcans/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace gcans {

AllocationStrategy parse_strategy(std::string_view name) {
    if (name == "uniform_deterministic" || name == "uniform") {
        return AllocationStrategy::uniform_deterministic;
    }
    if (name == "weighted_deterministic" || name == "wds") {
        return AllocationStrategy::weighted_deterministic;
    }
    if (name == "weighted_random" || name == "wrs") {
        return AllocationStrategy::weighted_random;
    }
    throw std::invalid_argument(fmt::format("unknown allocation strategy '{}'", name));
}

std::string_view to_string(AllocationStrategy strategy) {
    switch (strategy) {
    case AllocationStrategy::uniform_deterministic:
        return "uniform_deterministic";
    case AllocationStrategy::weighted_deterministic:
        return "weighted_deterministic";
    case AllocationStrategy::weighted_random:
        return "weighted_random";
    }
    return "?";
}

namespace {

double abs_sum(std::span<const double> coefficients) {
    double total = 0.0;
    for (double c : coefficients) {
        total += std::abs(c);
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("all coefficients are zero");
    }
    return total;
}

std::vector<double> cumulative_weights(std::span<const double> coefficients) {
    const double norm = abs_sum(coefficients);
    std::vector<double> cumulative(coefficients.size());
    double running = 0.0;
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        running += std::abs(coefficients[k]);
        cumulative[k] = running / norm;
    }
    cumulative.back() = 1.0;
    return cumulative;
}

std::size_t draw_index(std::span<const double> cumulative, Rng &rng) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return std::min(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

} // namespace

std::vector<ShotCount> allocate_uniform(std::size_t num_terms, ShotCount total) {
    if (num_terms == 0) {
        throw std::invalid_argument("no terms to allocate");
    }
    std::vector<ShotCount> out(num_terms, total / num_terms);
    for (std::size_t k = 0; k < total % num_terms; ++k) {
        ++out[k];
    }
    return out;
}

std::vector<ShotCount> allocate_wds(std::span<const double> coefficients, ShotCount total) {
    if (total == 0) {
        throw std::invalid_argument("total shots must be positive");
    }
    const double norm = abs_sum(coefficients);
    std::vector<ShotCount> out(coefficients.size());
    ShotCount assigned = 0;
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        out[k] = static_cast<ShotCount>(
            std::floor(static_cast<double>(total) * std::abs(coefficients[k]) / norm));
        assigned += out[k];
    }
    // rounding can in principle overshoot by one ulp-level floor
    while (assigned > total) {
        auto it = std::max_element(out.begin(), out.end());
        --*it;
        --assigned;
    }
    std::vector<std::size_t> order(coefficients.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(coefficients[a]) > std::abs(coefficients[b]);
    });
    for (std::size_t r = 0; assigned < total; r = (r + 1) % order.size()) {
        ++out[order[r]];
        ++assigned;
    }
    return out;
}

std::vector<ShotCount> allocate_wrs(std::span<const double> coefficients, ShotCount total,
                                    Rng &rng) {
    if (total == 0) {
        throw std::invalid_argument("total shots must be positive");
    }
    const auto cumulative = cumulative_weights(coefficients);
    std::vector<ShotCount> out(coefficients.size(), 0);
    for (ShotCount j = 0; j < total; ++j) {
        ++out[draw_index(cumulative, rng)];
    }
    return out;
}

ShotSampler::ShotSampler(const StateVector &state, const Observable &obs, ShotCount total,
                         AllocationStrategy strategy)
    : expectations_(term_expectations(state, obs)), strategy_(strategy), total_(total) {
    if (total == 0) {
        throw std::invalid_argument("total shots must be positive");
    }
    const auto coefficients = obs.coefficients();
    if (strategy == AllocationStrategy::weighted_random) {
        cumulative_ = cumulative_weights(coefficients);
        weights_.resize(coefficients.size());
        for (std::size_t k = 0; k < coefficients.size(); ++k) {
            weights_[k] = coefficients[k] < 0.0 ? -obs.one_norm() : obs.one_norm();
        }
        return;
    }
    allocation_ = strategy == AllocationStrategy::uniform_deterministic
                      ? allocate_uniform(coefficients.size(), total)
                      : allocate_wds(coefficients, total);
    weights_.resize(coefficients.size());
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        if (allocation_[k] == 0) {
            throw std::invalid_argument(
                fmt::format("{} allocation of {} shots leaves term {} unmeasured",
                            to_string(strategy), total, k));
        }
        weights_[k] =
            coefficients[k] * static_cast<double>(total) / static_cast<double>(allocation_[k]);
    }
}

double ShotSampler::next(Rng &rng) {
    if (strategy_ == AllocationStrategy::weighted_random) {
        const std::size_t k = draw_index(cumulative_, rng);
        return weights_[k] * sample_outcome(expectations_[k], rng);
    }
    while (used_in_term_ == allocation_[term_]) {
        term_ = (term_ + 1) % allocation_.size();
        used_in_term_ = 0;
    }
    ++used_in_term_;
    return weights_[term_] * sample_outcome(expectations_[term_], rng);
}

ExpectationEstimate estimate_expectation(const StateVector &state, const Observable &obs,
                                         ShotCount total, AllocationStrategy strategy, Rng &rng) {
    ShotSampler sampler(state, obs, total, strategy);
    ExpectationEstimate out{0.0, std::vector<double>(total)};
    for (auto &v : out.shot_values) {
        v = sampler.next(rng);
        out.mean += v;
    }
    out.mean /= static_cast<double>(total);
    return out;
}

ShotCount GradientEstimate::total_shots() const {
    return 2 * std::accumulate(shots.begin(), shots.end(), ShotCount{0});
}

namespace {

std::vector<double> shifted(std::span<const double> theta, std::size_t i, double delta) {
    std::vector<double> out(theta.begin(), theta.end());
    out[i] += delta;
    return out;
}

constexpr double half_pi = 0.5 * std::numbers::pi;

} // namespace

GradientEstimate ievaluate(const AnsatzCircuit &circuit, const Observable &obs,
                           std::span<const double> theta, std::span<const ShotCount> shots,
                           AllocationStrategy strategy, Rng &rng) {
    const std::size_t d = circuit.parameter_count();
    if (theta.size() != d || shots.size() != d) {
        throw std::invalid_argument(fmt::format(
            "ievaluate: expected {} parameters and shot counts, got {} and {}", d, theta.size(),
            shots.size()));
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (shots[i] < 2) {
            throw std::invalid_argument(
                fmt::format("ievaluate: component {} has {} shots, need at least 2", i, shots[i]));
        }
    }
    const std::uint64_t key = rng.next_u64();
    GradientEstimate out{std::vector<double>(d), std::vector<double>(d),
                         std::vector<ShotCount>(shots.begin(), shots.end())};
    for (std::size_t i = 0; i < d; ++i) {
        Rng stream(key, i);
        ShotSampler plus(prepare_state(circuit, shifted(theta, i, half_pi)), obs, shots[i],
                         strategy);
        ShotSampler minus(prepare_state(circuit, shifted(theta, i, -half_pi)), obs, shots[i],
                          strategy);
        // Welford over the paired samples
        double mean = 0.0;
        double m2 = 0.0;
        for (ShotCount j = 0; j < shots[i]; ++j) {
            const double a_plus = plus.next(stream);
            const double a_minus = minus.next(stream);
            const double x = 0.5 * (a_plus - a_minus);
            const double delta = x - mean;
            mean += delta / static_cast<double>(j + 1);
            m2 += delta * (x - mean);
        }
        out.gradient[i] = mean;
        out.sigma_hat[i] = std::sqrt(std::max(0.0, m2 / static_cast<double>(shots[i] - 1)));
    }
    return out;
}

double exact_energy(const AnsatzCircuit &circuit, const Observable &obs,
                    std::span<const double> theta) {
    return exact_expectation(prepare_state(circuit, theta), obs);
}

std::vector<double> exact_gradient(const AnsatzCircuit &circuit, const Observable &obs,
                                   std::span<const double> theta) {
    const std::size_t d = circuit.parameter_count();
    if (theta.size() != d) {
        throw std::invalid_argument(
            fmt::format("expected {} parameters, got {}", d, theta.size()));
    }
    std::vector<double> grad(d);
    for (std::size_t i = 0; i < d; ++i) {
        grad[i] = 0.5 * (exact_energy(circuit, obs, shifted(theta, i, half_pi)) -
                         exact_energy(circuit, obs, shifted(theta, i, -half_pi)));
    }
    return grad;
}

} // namespace gcans
