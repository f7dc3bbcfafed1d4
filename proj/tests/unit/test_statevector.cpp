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

#include "gcans/pauli.hpp"
#include "gcans/rng.hpp"
#include "gcans/statevector.hpp"
#include "oracles.hpp"

using namespace gcans;

namespace {

StateVector plus_state() {
    const double r = 1.0 / std::sqrt(2.0);
    return StateVector(std::vector<Complex>{r, r});
}

} // namespace

TEST(Ansatz, ParameterCounts) {
    EXPECT_EQ(build_ansatz(4, 6).parameter_count(), 48U);
    EXPECT_EQ(build_ansatz(1, 1).parameter_count(), 2U);
    EXPECT_EQ(build_ansatz(1, 1).cnot_count(), 0U);
    EXPECT_EQ(build_ansatz(2, 2).parameter_count(), 8U);
    EXPECT_EQ(build_ansatz(2, 2).cnot_count(), 1U);
    EXPECT_THROW(build_ansatz(0, 1), std::invalid_argument);
    EXPECT_THROW(build_ansatz(2, 0), std::invalid_argument);
}

TEST(PrepareState, ZeroAnglesGiveAllZeros) {
    const AnsatzCircuit c(3, 2);
    const auto psi = prepare_state(c, std::vector<double>(c.parameter_count(), 0.0));
    EXPECT_NEAR(std::abs(psi.amplitudes()[0]), 1.0, 1e-15);
}

TEST(PrepareState, RyPiFlipsQubit) {
    const AnsatzCircuit c(1, 1);
    const std::vector<double> theta{M_PI, 0.0};
    const auto psi = prepare_state(c, theta);
    EXPECT_NEAR(std::abs(psi.amplitudes()[1]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(psi.amplitudes()[0]), 0.0, 1e-15);
}

TEST(PrepareState, LengthMismatch) {
    const AnsatzCircuit c(2, 2);
    EXPECT_THROW(prepare_state(c, std::vector<double>(7, 0.0)), std::invalid_argument);
}

TEST(PrepareState, MatchesDenseGateByGateOracle) {
    Rng rng(21);
    for (std::size_t n = 1; n <= 4; ++n) {
        for (std::size_t depth = 1; depth <= 3; ++depth) {
            const AnsatzCircuit c(n, depth);
            const auto theta = oracle::random_angles(c.parameter_count(), rng);
            const auto psi = prepare_state(c, theta);
            const auto ref = oracle::ansatz_state(n, depth, theta);
            for (std::size_t i = 0; i < psi.amplitudes().size(); ++i) {
                ASSERT_LT(std::abs(psi.amplitudes()[i] - ref(static_cast<Eigen::Index>(i))), 1e-13);
            }
        }
    }
}

TEST(PrepareState, NormPreservedProperty) {
    Rng rng(4);
    const AnsatzCircuit c(4, 3);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto psi = prepare_state(c, oracle::random_angles(c.parameter_count(), rng));
        ASSERT_LT(std::abs(psi.norm_squared() - 1.0), 1e-12);
    }
}

TEST(PauliExpectation, Examples) {
    const StateVector zero(1);
    EXPECT_DOUBLE_EQ(exact_pauli_expectation(zero, PauliString::parse("Z")), 1.0);
    EXPECT_DOUBLE_EQ(exact_pauli_expectation(zero, PauliString::parse("X")), 0.0);
    EXPECT_NEAR(exact_pauli_expectation(plus_state(), PauliString::parse("X")), 1.0, 1e-15);
    EXPECT_THROW(exact_pauli_expectation(zero, PauliString::parse("ZZ")), std::invalid_argument);
}

TEST(PauliExpectation, MatchesDenseOracleIncludingY) {
    Rng rng(31);
    const char letters[] = {'I', 'X', 'Y', 'Z'};
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto amps = oracle::random_state(n, rng);
        const StateVector psi(amps);
        const auto v = oracle::to_eigen(amps);
        for (int trial = 0; trial < 30; ++trial) {
            std::string s;
            for (std::size_t q = 0; q < n; ++q) {
                s.push_back(letters[rng.next_u64() % 4]);
            }
            EXPECT_NEAR(exact_pauli_expectation(psi, PauliString::parse(s)),
                        oracle::expectation(v, oracle::pauli_matrix(s)), 1e-12)
                << s;
        }
    }
}

TEST(Expectation, Examples) {
    const auto h = tfim(2, 1.5, Boundary::open);
    EXPECT_NEAR(exact_expectation(StateVector(2), h), 1.0, 1e-15);
    Rng rng(2);
    const StateVector psi(oracle::random_state(3, rng));
    const auto obs = tfim(3, 0.9, Boundary::open);
    for (double t : {-2.0, 0.5, 3.0}) {
        EXPECT_NEAR(exact_expectation(psi, obs.scaled(t)), t * exact_expectation(psi, obs), 1e-12);
    }
}

TEST(Expectation, GroundStateOfTwoSiteTfim) {
    // Ground vector from the dense oracle, fed back into the simulator.
    const auto h = tfim(2, 1.5, Boundary::open);
    Eigen::SelfAdjointEigenSolver<oracle::Mat> solver(oracle::observable_matrix(h));
    const oracle::Vec g = solver.eigenvectors().col(0);
    const StateVector psi(std::vector<Complex>(g.data(), g.data() + g.size()));
    EXPECT_NEAR(exact_expectation(psi, h), -std::sqrt(10.0), 1e-12);
}

TEST(Expectation, BoundedAndAboveGroundProperty) {
    Rng rng(17);
    for (std::size_t n = 2; n <= 4; ++n) {
        const auto obs = tfim(n, 1.5, Boundary::open);
        const double e0 = ground_energy_dense(obs);
        const AnsatzCircuit c(n, 2);
        for (int trial = 0; trial < 100; ++trial) {
            const auto psi = prepare_state(c, oracle::random_angles(c.parameter_count(), rng));
            const double e = exact_expectation(psi, obs);
            EXPECT_LE(std::abs(e), obs.one_norm() + 1e-10);
            EXPECT_GE(e, e0 - 1e-10);
        }
    }
}

TEST(GroundEnergy, Examples) {
    // 2x2 analytic case: H = ZZ + g(XI + IX) has ground energy -sqrt(1 + 4 g^2).
    EXPECT_NEAR(ground_energy_dense(tfim(2, 1.5, Boundary::open)), -std::sqrt(10.0), 1e-12);
    EXPECT_NEAR(ground_energy_dense(parse_observable("1.0 Z")), -1.0, 1e-15);
    EXPECT_NEAR(ground_energy_dense(tfim(2, 0.0, Boundary::open)), -1.0, 1e-15);
    EXPECT_THROW(ground_energy_dense(tfim(13, 1.0, Boundary::open)), std::invalid_argument);
}

TEST(GroundEnergy, MatchesIndependentDenseOracle) {
    Rng rng(55);
    const char letters[] = {'I', 'X', 'Y', 'Z'};
    for (std::size_t n = 1; n <= 5; ++n) {
        std::vector<PauliTerm> terms;
        for (int k = 0; k < 8; ++k) {
            std::string s;
            for (std::size_t q = 0; q < n; ++q) {
                s.push_back(letters[rng.next_u64() % 4]);
            }
            terms.push_back({rng.normal(), PauliString::parse(s)});
        }
        const Observable obs(n, terms);
        EXPECT_NEAR(ground_energy_dense(obs), oracle::min_eigenvalue(oracle::observable_matrix(obs)), 1e-10);
    }
    for (std::size_t n = 3; n <= 6; ++n) {
        const auto obs = tfim(n, 1.5, Boundary::periodic);
        EXPECT_NEAR(ground_energy_dense(obs), oracle::min_eigenvalue(oracle::observable_matrix(obs)), 1e-10);
    }
}

TEST(SamplePauli, EigenstateIsDeterministic) {
    Rng rng(1);
    const auto out = sample_pauli(StateVector(1), PauliString::parse("Z"), 1000, rng);
    EXPECT_EQ(std::count(out.begin(), out.end(), 1), 1000);
}

TEST(SamplePauli, PlusStateZMean) {
    Rng rng(2);
    const auto out = sample_pauli(plus_state(), PauliString::parse("Z"), 1000000, rng);
    const double mean = std::accumulate(out.begin(), out.end(), 0.0) / out.size();
    EXPECT_LT(std::abs(mean), 5e-3);
}

TEST(SamplePauli, SameSeedSameOutcomes) {
    Rng a(9);
    Rng b(9);
    const auto psi = plus_state();
    EXPECT_EQ(sample_pauli(psi, PauliString::parse("Z"), 500, a),
              sample_pauli(psi, PauliString::parse("Z"), 500, b));
}

TEST(SamplePauli, UnbiasedOverRepetitions) {
    Rng state_rng(3);
    const StateVector psi(oracle::random_state(2, state_rng));
    const auto p = PauliString::parse("XY");
    const double exact = exact_pauli_expectation(psi, p);
    int within = 0;
    for (int rep = 0; rep < 100; ++rep) {
        Rng rng(1000 + rep);
        const auto out = sample_pauli(psi, p, 100000, rng);
        const double mean = std::accumulate(out.begin(), out.end(), 0.0) / out.size();
        within += std::abs(mean - exact) < 5 / std::sqrt(1e5);
    }
    EXPECT_GE(within, 99);
}
