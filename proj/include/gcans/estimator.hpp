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
 * @file estimator.hpp
 * Shot allocation across Pauli terms and the parameter-shift stochastic
 * gradient estimator.
 */
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "gcans/pauli.hpp"
#include "gcans/rng.hpp"
#include "gcans/statevector.hpp"

namespace gcans {

using ShotCount = std::uint64_t;

enum class AllocationStrategy { uniform_deterministic, weighted_deterministic, weighted_random };

AllocationStrategy parse_strategy(std::string_view name);
std::string_view to_string(AllocationStrategy strategy);

/// s_tot split evenly; the remainder goes one shot each to the lowest indices.
std::vector<ShotCount> allocate_uniform(std::size_t num_terms, ShotCount total);

/**
 * floor(s_tot |c_k| / sum|c|) per term; leftover shots go one each to terms
 * in descending |c_k| order, ties broken by lower index.
 */
std::vector<ShotCount> allocate_wds(std::span<const double> coefficients, ShotCount total);

/// Multinomial(s_tot, |c_k| / sum|c|) drawn shot by shot.
std::vector<ShotCount> allocate_wrs(std::span<const double> coefficients, ShotCount total,
                                    Rng &rng);

/**
 * Draws single-shot values of an observable on a fixed state.
 *
 * Weighted random: each shot picks term k with probability |c_k| / ||c||_1
 * and yields ||c||_1 sgn(c_k) m with m = +-1 measured on P_k. Shots are i.i.d.
 *
 * Deterministic strategies: the allocation is fixed up front and shots are
 * emitted term by term in index order, each worth c_k (s_tot / s_k) m, so
 * the sample mean is sum_k c_k mean_k. Every term must receive a shot.
 */
class ShotSampler {
  public:
    ShotSampler(const StateVector &state, const Observable &obs, ShotCount total,
                AllocationStrategy strategy);

    double next(Rng &rng);

    [[nodiscard]] ShotCount total() const { return total_; }

  private:
    std::vector<double> expectations_;
    std::vector<double> weights_;    // per term: signed shot value scale
    std::vector<double> cumulative_; // weighted random only
    std::vector<ShotCount> allocation_;
    AllocationStrategy strategy_;
    ShotCount total_;
    std::size_t term_ = 0;
    ShotCount used_in_term_ = 0;
};

struct ExpectationEstimate {
    double mean;
    std::vector<double> shot_values;
};

ExpectationEstimate estimate_expectation(const StateVector &state, const Observable &obs,
                                         ShotCount total, AllocationStrategy strategy, Rng &rng);

struct GradientEstimate {
    std::vector<double> gradient;
    /// Unbiased sample standard deviation of the paired single-shot samples X_i.
    std::vector<double> sigma_hat;
    std::vector<ShotCount> shots;

    /// Circuit shots consumed: both shifted circuits use s_i shots each.
    [[nodiscard]] ShotCount total_shots() const;
};

/**
 * Parameter-shift estimate of grad f with s_i shots on each of the two shifted
 * circuits of component i. The j-th plus shot is paired with the j-th minus
 * shot to form X_ij = (A+_ij - A-_ij) / 2.
 *
 * One 64-bit key is drawn from `rng`; component i then samples from
 * Rng(key, i), so components can be evaluated in any order (or concurrently)
 * with bit-identical results.
 */
GradientEstimate ievaluate(const AnsatzCircuit &circuit, const Observable &obs,
                           std::span<const double> theta, std::span<const ShotCount> shots,
                           AllocationStrategy strategy, Rng &rng);

/// Parameter-shift gradient from exact expectations.
std::vector<double> exact_gradient(const AnsatzCircuit &circuit, const Observable &obs,
                                   std::span<const double> theta);

/// f(theta) = <0|U^dag(theta) A U(theta)|0>.
double exact_energy(const AnsatzCircuit &circuit, const Observable &obs,
                    std::span<const double> theta);

} // namespace gcans
