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
#include "gcans/statevector.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace gcans {

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0 || num_qubits > max_qubits) {
        throw std::invalid_argument(
            fmt::format("state vector supports 1..{} qubits, got {}", max_qubits, num_qubits));
    }
    amps_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() < 2 || !std::has_single_bit(amps_.size())) {
        throw std::invalid_argument("amplitude count must be a power of two >= 2");
    }
    num_qubits_ = static_cast<std::size_t>(std::countr_zero(amps_.size()));
    if (num_qubits_ > max_qubits) {
        throw std::invalid_argument("state vector too large");
    }
}

double StateVector::norm_squared() const { return kernels::active_kernels().norm_squared(amps_); }

void StateVector::apply_ry(unsigned qubit, double angle) {
    kernels::active_kernels().apply_ry(amps_, qubit, angle);
}

void StateVector::apply_rz(unsigned qubit, double angle) {
    kernels::active_kernels().apply_rz(amps_, qubit, angle);
}

void StateVector::apply_cnot(unsigned control, unsigned target) {
    kernels::active_kernels().apply_cnot(amps_, control, target);
}

AnsatzCircuit::AnsatzCircuit(std::size_t num_qubits, std::size_t depth)
    : num_qubits_(num_qubits), depth_(depth) {
    if (num_qubits == 0 || num_qubits > StateVector::max_qubits) {
        throw std::invalid_argument(fmt::format("ansatz qubit count {} out of range", num_qubits));
    }
    if (depth == 0) {
        throw std::invalid_argument("ansatz depth must be positive");
    }
}

StateVector prepare_state(const AnsatzCircuit &circuit, std::span<const double> theta) {
    if (theta.size() != circuit.parameter_count()) {
        throw std::invalid_argument(fmt::format("expected {} parameters, got {}",
                                                circuit.parameter_count(), theta.size()));
    }
    const auto &k = kernels::active_kernels();
    StateVector state(circuit.num_qubits());
    auto amps = state.amplitudes();
    const auto n = static_cast<unsigned>(circuit.num_qubits());
    std::size_t p = 0;
    for (std::size_t block = 0; block < circuit.depth(); ++block) {
        for (unsigned q = 0; q < n; ++q) {
            k.apply_ry(amps, q, theta[p++]);
            k.apply_rz(amps, q, theta[p++]);
        }
        if (block + 1 < circuit.depth()) {
            for (unsigned q = 0; q + 1 < n; ++q) {
                k.apply_cnot(amps, q, q + 1);
            }
        }
    }
    return state;
}

namespace {

/// i^power for power mod 4.
Complex i_power(std::size_t power) {
    switch (power % 4) {
    case 0:
        return {1.0, 0.0};
    case 1:
        return {0.0, 1.0};
    case 2:
        return {-1.0, 0.0};
    default:
        return {0.0, -1.0};
    }
}

void check_dims(const StateVector &state, std::size_t num_qubits) {
    if (state.num_qubits() != num_qubits) {
        throw std::invalid_argument(fmt::format("dimension mismatch: state has {} qubits, "
                                                "operator acts on {}",
                                                state.num_qubits(), num_qubits));
    }
}

double pauli_value(const StateVector &state, const PauliString &pauli) {
    const Complex braket =
        kernels::active_kernels().pauli_braket(state.amplitudes(), pauli.x_mask(), pauli.z_mask());
    return (i_power(pauli.y_count()) * braket).real();
}

} // namespace

double exact_pauli_expectation(const StateVector &state, const PauliString &pauli) {
    check_dims(state, pauli.num_qubits());
    return pauli_value(state, pauli);
}

std::vector<double> term_expectations(const StateVector &state, const Observable &obs) {
    check_dims(state, obs.num_qubits());
    std::vector<double> out;
    out.reserve(obs.size());
    for (const auto &term : obs.terms()) {
        out.push_back(pauli_value(state, term.string));
    }
    return out;
}

double exact_expectation(const StateVector &state, const Observable &obs) {
    const auto values = term_expectations(state, obs);
    double total = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        total += obs.terms()[k].coefficient * values[k];
    }
    return total;
}

std::vector<int> sample_pauli(const StateVector &state, const PauliString &pauli,
                              std::size_t shots, Rng &rng) {
    if (shots == 0) {
        throw std::invalid_argument("shots must be positive");
    }
    const double expectation = exact_pauli_expectation(state, pauli);
    std::vector<int> outcomes(shots);
    for (auto &o : outcomes) {
        o = sample_outcome(expectation, rng);
    }
    return outcomes;
}

double ground_energy_dense(const Observable &obs) {
    const std::size_t n = obs.num_qubits();
    if (n > dense_max_qubits) {
        throw std::invalid_argument(fmt::format(
            "dense diagonalization limited to {} qubits, got {}", dense_max_qubits, n));
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    const bool real = std::all_of(obs.terms().begin(), obs.terms().end(),
                                  [](const PauliTerm &t) { return t.string.y_count() % 2 == 0; });
    // P|i> = i^ny (-1)^popcount(i & z) |i ^ x>
    if (real) {
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
        for (const auto &t : obs.terms()) {
            const std::uint64_t x = t.string.x_mask();
            const std::uint64_t z = t.string.z_mask();
            const double phase = i_power(t.string.y_count()).real();
            for (Eigen::Index i = 0; i < dim; ++i) {
                const auto u = static_cast<std::uint64_t>(i);
                const double sign = __builtin_parityll(u & z) != 0 ? -1.0 : 1.0;
                h(static_cast<Eigen::Index>(u ^ x), i) += t.coefficient * phase * sign;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
        return solver.eigenvalues()(0);
    }
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &t : obs.terms()) {
        const std::uint64_t x = t.string.x_mask();
        const std::uint64_t z = t.string.z_mask();
        const Complex phase = i_power(t.string.y_count());
        for (Eigen::Index i = 0; i < dim; ++i) {
            const auto u = static_cast<std::uint64_t>(i);
            const double sign = __builtin_parityll(u & z) != 0 ? -1.0 : 1.0;
            h(static_cast<Eigen::Index>(u ^ x), i) += t.coefficient * sign * phase;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

} // namespace gcans
