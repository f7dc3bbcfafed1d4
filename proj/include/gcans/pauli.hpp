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
 * @file pauli.hpp
 * Pauli strings, weighted Pauli-sum observables, the transverse-field Ising
 * generator and the plain-text Hamiltonian file format.
 *
 * Qubit convention: letter q of a string acts on qubit q, and qubit q is bit q
 * of a computational-basis index (little-endian). The string "XI" therefore
 * applies X to qubit 0.
 */
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gcans {

enum class Pauli : std::uint8_t { I, X, Y, Z };

class PauliString {
  public:
    static constexpr std::size_t max_qubits = 63;

    PauliString() = default;
    explicit PauliString(std::vector<Pauli> letters);

    /// Parses a word over {I, X, Y, Z}; throws std::invalid_argument otherwise.
    static PauliString parse(std::string_view word);

    [[nodiscard]] std::size_t num_qubits() const { return letters_.size(); }
    [[nodiscard]] Pauli operator[](std::size_t qubit) const { return letters_[qubit]; }
    [[nodiscard]] const std::vector<Pauli> &letters() const { return letters_; }
    [[nodiscard]] bool is_identity() const;

    /// Qubits carrying X or Y (bit flips).
    [[nodiscard]] std::uint64_t x_mask() const;
    /// Qubits carrying Z or Y (sign flips).
    [[nodiscard]] std::uint64_t z_mask() const;
    [[nodiscard]] std::size_t y_count() const;

    [[nodiscard]] std::string to_string() const;

    auto operator<=>(const PauliString &) const = default;
    bool operator==(const PauliString &) const = default;

  private:
    std::vector<Pauli> letters_;
};

struct PauliTerm {
    double coefficient;
    PauliString string;
};

/**
 * A = sum_k c_k P_k over a fixed qubit count.
 *
 * Construction merges duplicate strings (keeping the position of the first
 * appearance) and drops terms whose merged coefficient is exactly zero. An
 * observable with no remaining terms is rejected, so one_norm() > 0 always.
 */
class Observable {
  public:
    Observable(std::size_t num_qubits, std::vector<PauliTerm> terms);

    [[nodiscard]] std::size_t num_qubits() const { return num_qubits_; }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] std::vector<double> coefficients() const;
    [[nodiscard]] double one_norm() const { return one_norm_; }

    /// Same strings, every coefficient multiplied by `factor` (nonzero).
    [[nodiscard]] Observable scaled(double factor) const;

  private:
    std::size_t num_qubits_;
    std::vector<PauliTerm> terms_;
    double one_norm_ = 0.0;
};

/// Error raised by parse_observable; line() is 1-based, 0 for whole-input errors.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string &what);
    [[nodiscard]] std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/**
 * Reads the Hamiltonian text format: one `<coefficient> <letters>` pair per
 * line, whitespace separated, `#` starting a comment, blank lines ignored.
 */
Observable parse_observable(std::string_view text);

/// Inverse of parse_observable; coefficients carry 17 significant digits.
std::string serialize_observable(const Observable &obs);

inline double one_norm(const Observable &obs) { return obs.one_norm(); }

enum class Boundary { open, periodic };

/// H = sum_<i,j> Z_i Z_j + g sum_i X_i on a chain of n sites.
Observable tfim(std::size_t num_qubits, double field, Boundary boundary = Boundary::open);

/// d * sum_k |c_k|: the gradient Lipschitz bound for a d-parameter rotation ansatz.
double lipschitz_bound(const Observable &obs, std::size_t num_parameters);

Boundary parse_boundary(std::string_view name);

} // namespace gcans
