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
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "gcans/estimator.hpp"
#include "gcans/pauli.hpp"
#include "gcans/rng.hpp"
#include "gcans/statevector.hpp"
#include "oracles.hpp"

using namespace gcans;

namespace {

struct Moments {
    double mean = 0;
    double var = 0; // unbiased
};

Moments moments(const std::vector<double> &x) {
    Moments m;
    m.mean = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
    for (double v : x) {
        m.var += (v - m.mean) * (v - m.mean);
    }
    m.var /= (x.size() - 1);
    return m;
}

} // namespace

TEST(Strategy, Names) {
    EXPECT_EQ(parse_strategy("wrs"), AllocationStrategy::weighted_random);
    EXPECT_EQ(parse_strategy("weighted_deterministic"), AllocationStrategy::weighted_deterministic);
    EXPECT_EQ(to_string(AllocationStrategy::uniform_deterministic), "uniform_deterministic");
    EXPECT_THROW(parse_strategy("best"), std::invalid_argument);
}

TEST(AllocateWds, Examples) {
    EXPECT_EQ(allocate_wds(std::vector<double>{0.5, 0.3, 0.2}, 10), (std::vector<ShotCount>{5, 3, 2}));
    EXPECT_EQ(allocate_wds(std::vector<double>{0.5, 0.5}, 3), (std::vector<ShotCount>{2, 1}));
    EXPECT_EQ(allocate_wds(std::vector<double>{1.0}, 17), (std::vector<ShotCount>{17}));
    EXPECT_THROW(allocate_wds(std::vector<double>{0.0, 0.0}, 3), std::invalid_argument);
}

TEST(AllocateWds, ResidualsByDescendingMagnitude) {
    // floors (0, 1, 0) for s_tot = 2 and |c| = (0.2, 0.5, 0.3); the leftover goes to the largest |c|
    EXPECT_EQ(allocate_wds(std::vector<double>{0.2, -0.5, 0.3}, 2), (std::vector<ShotCount>{0, 2, 0}));
    // two leftovers: one each to 0.5 and 0.3
    EXPECT_EQ(allocate_wds(std::vector<double>{0.2, -0.5, 0.3}, 3), (std::vector<ShotCount>{0, 2, 1}));
}

TEST(AllocateWds, ConservationProperty) {
    Rng rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> c(1 + rng.next_u64() % 10);
        for (auto &x : c) {
            x = rng.normal();
        }
        const ShotCount total = 1 + rng.next_u64() % 1000;
        const auto s = allocate_wds(c, total);
        EXPECT_EQ(std::accumulate(s.begin(), s.end(), ShotCount{0}), total);
        const double norm = std::accumulate(c.begin(), c.end(), 0.0,
                                            [](double a, double b) { return a + std::abs(b); });
        for (std::size_t k = 0; k < c.size(); ++k) {
            const double ideal = total * std::abs(c[k]) / norm;
            EXPECT_GE(static_cast<double>(s[k]), std::floor(ideal) - 1e-9);
            EXPECT_LE(static_cast<double>(s[k]), std::floor(ideal) + 1);
        }
    }
}

TEST(AllocateUniform, SplitsEvenly) {
    EXPECT_EQ(allocate_uniform(3, 10), (std::vector<ShotCount>{4, 3, 3}));
}

TEST(AllocateWrs, MultinomialMean) {
    const std::vector<double> c{0.5, -0.3, 0.2};
    const ShotCount total = 20;
    const int draws = 10000;
    Rng rng(5);
    std::vector<double> sums(3, 0.0);
    for (int i = 0; i < draws; ++i) {
        const auto s = allocate_wrs(c, total, rng);
        ASSERT_EQ(std::accumulate(s.begin(), s.end(), ShotCount{0}), total);
        for (int k = 0; k < 3; ++k) {
            sums[k] += static_cast<double>(s[k]);
        }
    }
    for (int k = 0; k < 3; ++k) {
        const double p = std::abs(c[k]) / 1.0;
        const double se = std::sqrt(total * p * (1 - p) / draws);
        EXPECT_NEAR(sums[k] / draws, total * p, 3 * se);
    }
}

TEST(AllocateWrs, SingleTermAndSingleShot) {
    Rng rng(6);
    EXPECT_EQ(allocate_wrs(std::vector<double>{-2.0}, 9, rng), (std::vector<ShotCount>{9}));
    for (int i = 0; i < 100; ++i) {
        const auto s = allocate_wrs(std::vector<double>{0.1, 0.7, 0.2}, 1, rng);
        EXPECT_EQ(std::accumulate(s.begin(), s.end(), ShotCount{0}), 1U);
    }
    EXPECT_THROW(allocate_wrs(std::vector<double>{0.0}, 1, rng), std::invalid_argument);
}

TEST(EstimateExpectation, EigenstateExact) {
    Rng rng(1);
    const auto est = estimate_expectation(StateVector(1), parse_observable("1.0 Z"), 37,
                                          AllocationStrategy::weighted_random, rng);
    EXPECT_DOUBLE_EQ(est.mean, 1.0);
    EXPECT_EQ(est.shot_values.size(), 37U);
}

TEST(EstimateExpectation, TfimOnAllZerosWithMillionShots) {
    Rng rng(2);
    const auto est = estimate_expectation(StateVector(2), tfim(2, 1.5, Boundary::open), 1000000,
                                          AllocationStrategy::weighted_random, rng);
    EXPECT_NEAR(est.mean, 1.0, 0.02);
}

TEST(EstimateExpectation, DeterministicStrategyNeedsEveryTerm) {
    Rng rng(3);
    const auto obs = parse_observable("1.0 ZZ\n0.01 XI\n0.01 IX");
    EXPECT_THROW(estimate_expectation(StateVector(2), obs, 10, AllocationStrategy::weighted_deterministic, rng),
                 std::invalid_argument);
    EXPECT_THROW(estimate_expectation(StateVector(2), obs, 2, AllocationStrategy::uniform_deterministic, rng),
                 std::invalid_argument);
    EXPECT_NO_THROW(estimate_expectation(StateVector(2), obs, 3, AllocationStrategy::uniform_deterministic, rng));
}

TEST(EstimateExpectation, DeterministicMeanIsWeightedTermMeans) {
    // |0> is an eigenstate of every Z-type term, so the WDS estimate is exact.
    Rng rng(4);
    const auto obs = parse_observable("0.7 ZI\n-0.2 IZ\n0.1 ZZ");
    const auto est = estimate_expectation(StateVector(2), obs, 10, AllocationStrategy::weighted_deterministic, rng);
    EXPECT_NEAR(est.mean, 0.7 - 0.2 + 0.1, 1e-14);
}

TEST(EstimateExpectation, UnbiasedForAllStrategies) {
    Rng state_rng(8);
    const StateVector psi(oracle::random_state(2, state_rng));
    const auto obs = parse_observable("1.0 ZZ\n-0.6 XI\n0.4 IY\n0.3 XX");
    const double exact = exact_expectation(psi, obs);
    for (auto strategy : {AllocationStrategy::weighted_random, AllocationStrategy::weighted_deterministic,
                          AllocationStrategy::uniform_deterministic}) {
        Rng rng(9);
        std::vector<double> means;
        for (int rep = 0; rep < 4000; ++rep) {
            means.push_back(estimate_expectation(psi, obs, 20, strategy, rng).mean);
        }
        const auto m = moments(means);
        EXPECT_NEAR(m.mean, exact, 4 * std::sqrt(m.var / means.size())) << to_string(strategy);
    }
}

TEST(EstimateExpectation, WrsVarianceMatchesBruteForceOracle) {
    Rng state_rng(12);
    for (std::size_t n = 1; n <= 2; ++n) {
        const auto amps = oracle::random_state(n, state_rng);
        const StateVector psi(amps);
        const auto obs = n == 1 ? parse_observable("0.8 Z\n-0.5 X\n0.3 Y")
                                : parse_observable("1.0 ZZ\n-1.5 XI\n1.5 IX\n0.25 YY");
        const double var1 = oracle::wrs_single_shot_variance(obs, oracle::to_eigen(amps));
        // closed form for comparison: ||c||^2 - <A>^2
        EXPECT_NEAR(var1, obs.one_norm() * obs.one_norm() - std::pow(exact_expectation(psi, obs), 2), 1e-12);

        const ShotCount shots = 16;
        const int reps = 20000;
        Rng rng(100 + n);
        std::vector<double> means;
        for (int r = 0; r < reps; ++r) {
            means.push_back(estimate_expectation(psi, obs, shots, AllocationStrategy::weighted_random, rng).mean);
        }
        const double expected = var1 / shots;
        const double empirical = moments(means).var;
        // the sample variance has relative standard error about sqrt(2 / reps) for near-normal means
        EXPECT_NEAR(empirical / expected, 1.0, 4 * std::sqrt(2.0 / reps) + 0.02);
    }
}

TEST(Ievaluate, SingleQubitExactGradient) {
    const AnsatzCircuit c(1, 1);
    const auto obs = parse_observable("1.0 Z");
    for (double ty : {0.0, 0.3, 1.1, 2.5, -0.7}) {
        const std::vector<double> theta{ty, 0.0};
        const auto g = exact_gradient(c, obs, theta);
        EXPECT_NEAR(g[0], -std::sin(ty), 1e-14);
        EXPECT_NEAR(g[1], 0.0, 1e-14);
        EXPECT_NEAR(exact_energy(c, obs, theta), std::cos(ty), 1e-14);
    }
}

TEST(ExactGradient, MatchesFiniteDifferences) {
    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const AnsatzCircuit c(3, 2);
        const auto obs = tfim(3, 0.5 + rng.uniform(), Boundary::open);
        const auto theta = oracle::random_angles(c.parameter_count(), rng);
        const auto g = exact_gradient(c, obs, theta);
        const auto fd = oracle::finite_difference_gradient(obs, 2, theta);
        for (std::size_t i = 0; i < g.size(); ++i) {
            EXPECT_NEAR(g[i], fd[i], 1e-6);
        }
    }
}

TEST(ExactGradient, BoundedAtZero) {
    const AnsatzCircuit c(4, 3);
    const auto obs = tfim(4, 1.5, Boundary::open);
    for (double g : exact_gradient(c, obs, std::vector<double>(c.parameter_count(), 0.0))) {
        EXPECT_TRUE(std::isfinite(g));
        EXPECT_LE(std::abs(g), obs.one_norm());
    }
}

TEST(Ievaluate, RejectsTooFewShots) {
    const AnsatzCircuit c(1, 1);
    const auto obs = parse_observable("1.0 Z");
    Rng rng(1);
    const std::vector<double> theta{0.1, 0.2};
    EXPECT_THROW(ievaluate(c, obs, theta, std::vector<ShotCount>{2, 1}, AllocationStrategy::weighted_random, rng),
                 std::invalid_argument);
    EXPECT_THROW(ievaluate(c, obs, theta, std::vector<ShotCount>{2}, AllocationStrategy::weighted_random, rng),
                 std::invalid_argument);
    EXPECT_THROW(ievaluate(c, obs, std::vector<double>{0.1}, std::vector<ShotCount>{2, 2},
                           AllocationStrategy::weighted_random, rng),
                 std::invalid_argument);
}

TEST(Ievaluate, ShotsAndBounds) {
    const AnsatzCircuit c(2, 2);
    const auto obs = tfim(2, 1.5, Boundary::open);
    Rng rng(2);
    const auto theta = oracle::random_angles(c.parameter_count(), rng);
    std::vector<ShotCount> s(c.parameter_count());
    for (std::size_t i = 0; i < s.size(); ++i) {
        s[i] = 2 + i;
    }
    for (int rep = 0; rep < 200; ++rep) {
        const auto est = ievaluate(c, obs, theta, s, AllocationStrategy::weighted_random, rng);
        EXPECT_EQ(est.shots, s);
        EXPECT_EQ(est.total_shots(), 2 * std::accumulate(s.begin(), s.end(), ShotCount{0}));
        for (std::size_t i = 0; i < s.size(); ++i) {
            EXPECT_LE(std::abs(est.gradient[i]), obs.one_norm());
            EXPECT_GE(est.sigma_hat[i], 0.0);
        }
    }
}

TEST(Ievaluate, DeterministicPerSeed) {
    const AnsatzCircuit c(2, 2);
    const auto obs = tfim(2, 1.5, Boundary::open);
    const std::vector<double> theta(8, 0.4);
    const std::vector<ShotCount> s(8, 10);
    Rng a(77);
    Rng b(77);
    const auto ea = ievaluate(c, obs, theta, s, AllocationStrategy::weighted_random, a);
    const auto eb = ievaluate(c, obs, theta, s, AllocationStrategy::weighted_random, b);
    EXPECT_EQ(ea.gradient, eb.gradient);
    EXPECT_EQ(ea.sigma_hat, eb.sigma_hat);
}

TEST(Ievaluate, UnbiasedAtCriticalPoint) {
    // theta = 0 on Z: f = cos(theta_y), a critical point
    const AnsatzCircuit c(1, 1);
    const auto obs = parse_observable("1.0 Z");
    const std::vector<double> theta{0.0, 0.0};
    Rng rng(5);
    std::vector<double> g0;
    for (int rep = 0; rep < 5000; ++rep) {
        g0.push_back(ievaluate(c, obs, theta, std::vector<ShotCount>{4, 4}, AllocationStrategy::weighted_random, rng)
                         .gradient[0]);
    }
    const auto m = moments(g0);
    EXPECT_NEAR(m.mean, 0.0, 4 * std::sqrt(m.var / g0.size()) + 1e-15);
}

TEST(Ievaluate, UnbiasedAndVarianceLaw) {
    const AnsatzCircuit c(2, 1);
    const auto obs = tfim(2, 1.5, Boundary::open);
    Rng theta_rng(6);
    const auto theta = oracle::random_angles(c.parameter_count(), theta_rng);
    const auto exact = exact_gradient(c, obs, theta);
    const std::size_t d = c.parameter_count();
    const int reps = 3000;
    const ShotCount s = 6;
    Rng rng(7);
    std::vector<std::vector<double>> g(d);
    std::vector<double> sigma_sq_sum(d, 0.0);
    for (int r = 0; r < reps; ++r) {
        const auto est = ievaluate(c, obs, theta, std::vector<ShotCount>(d, s),
                                   AllocationStrategy::weighted_random, rng);
        for (std::size_t i = 0; i < d; ++i) {
            g[i].push_back(est.gradient[i]);
            sigma_sq_sum[i] += est.sigma_hat[i] * est.sigma_hat[i];
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        const auto m = moments(g[i]);
        EXPECT_NEAR(m.mean, exact[i], 4 * std::sqrt(m.var / reps)) << i;
        // E[sigma_hat^2] is the single-shot Var[X_i]; Var[g_i] should be that over s
        const double single = sigma_sq_sum[i] / reps;
        EXPECT_NEAR(m.var / (single / s), 1.0, 3 * std::sqrt(2.0 / (reps - 1)) + 0.05) << i;
    }
}
