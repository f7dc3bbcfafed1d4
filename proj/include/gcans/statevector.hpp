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
 * @file statevector.hpp
 * Exact simulation of the hardware-efficient SU(2) 2-local ansatz, exact
 * Pauli expectations, single-shot sampling and a dense ground-state oracle.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gcans/kernels.hpp"
#include "gcans/pauli.hpp"
#include "gcans/rng.hpp"

namespace gcans {

using kernels::Complex;

class StateVector {
  public:
    static constexpr std::size_t max_qubits = 26;

    /// |0...0> on `num_qubits` qubits.
    explicit StateVector(std::size_t num_qubits);

    /// Takes ownership of explicit amplitudes; size must be a power of two >= 2.
    explicit StateVector(std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t num_qubits() const { return num_qubits_; }
    [[nodiscard]] std::span<const Complex> amplitudes() const { return amps_; }
    [[nodiscard]] std::span<Complex> amplitudes() { return amps_; }
    [[nodiscard]] double norm_squared() const;

    void apply_ry(unsigned qubit, double angle);
    void apply_rz(unsigned qubit, double angle);
    void apply_cnot(unsigned control, unsigned target);

  private:
    std::size_t num_qubits_;
    std::vector<Complex> amps_;
};

/**
 * Depth-D hardware-efficient circuit: each block applies R_Y then R_Z on every
 * qubit; blocks 1..D-1 are followed by a CNOT ladder (i -> i+1). Parameters are
 * consumed block-major, qubit-minor, Y before Z:
 *   theta[2 * (block * n + qubit)]     -> R_Y(block, qubit)
 *   theta[2 * (block * n + qubit) + 1] -> R_Z(block, qubit)
 */
class AnsatzCircuit {
  public:
    AnsatzCircuit(std::size_t num_qubits, std::size_t depth);

    [[nodiscard]] std::size_t num_qubits() const { return num_qubits_; }
    [[nodiscard]] std::size_t depth() const { return depth_; }
    [[nodiscard]] std::size_t parameter_count() const { return 2 * num_qubits_ * depth_; }
    [[nodiscard]] std::size_t cnot_count() const { return (depth_ - 1) * (num_qubits_ - 1); }

  private:
    std::size_t num_qubits_;
    std::size_t depth_;
};

inline AnsatzCircuit build_ansatz(std::size_t num_qubits, std::size_t depth) {
    return AnsatzCircuit(num_qubits, depth);
}

/// U(theta)|0...0>.
StateVector prepare_state(const AnsatzCircuit &circuit, std::span<const double> theta);

double exact_pauli_expectation(const StateVector &state, const PauliString &pauli);

double exact_expectation(const StateVector &state, const Observable &obs);

/// <P_k> for every term of `obs`, in term order.
std::vector<double> term_expectations(const StateVector &state, const Observable &obs);

/// Independent +-1 outcomes with P(+1) = (1 + <P>) / 2.
std::vector<int> sample_pauli(const StateVector &state, const PauliString &pauli,
                              std::size_t shots, Rng &rng);

/// Single +-1 outcome for a Pauli with known expectation value.
inline int sample_outcome(double expectation, Rng &rng) {
    return rng.uniform() < 0.5 * (1.0 + expectation) ? 1 : -1;
}

/// Smallest eigenvalue of the dense 2^n x 2^n matrix of `obs`; n <= 12.
double ground_energy_dense(const Observable &obs);

inline constexpr std::size_t dense_max_qubits = 12;

} // namespace gcans
