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
#include "gcans/kernels.hpp"

#include <cmath>
#include <utility>

namespace gcans::kernels {

namespace {

void ry_scalar(std::span<Complex> amps, unsigned qubit, double angle) {
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    const std::size_t stride = std::size_t{1} << qubit;
    for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; ++k) {
            const Complex a0 = amps[k];
            const Complex a1 = amps[k + stride];
            amps[k] = c * a0 - s * a1;
            amps[k + stride] = s * a0 + c * a1;
        }
    }
}

void rz_scalar(std::span<Complex> amps, unsigned qubit, double angle) {
    const Complex lower = std::polar(1.0, -0.5 * angle);
    const Complex upper = std::polar(1.0, 0.5 * angle);
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] *= (i & bit) ? upper : lower;
    }
}

void cnot_scalar(std::span<Complex> amps, unsigned control, unsigned target) {
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cbit) != 0 && (i & tbit) == 0) {
            std::swap(amps[i], amps[i | tbit]);
        }
    }
}

Complex pauli_braket_scalar(std::span<const Complex> amps, std::uint64_t x_mask,
                            std::uint64_t z_mask) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const Complex bra = std::conj(amps[i ^ x_mask]);
        const Complex term = bra * amps[i];
        if (__builtin_parityll(i & z_mask) != 0) {
            re -= term.real();
            im -= term.imag();
        } else {
            re += term.real();
            im += term.imag();
        }
    }
    return {re, im};
}

double norm_squared_scalar(std::span<const Complex> amps) {
    double total = 0.0;
    for (const Complex &a : amps) {
        total += std::norm(a);
    }
    return total;
}

constexpr KernelTable scalar_table{"scalar", ry_scalar, rz_scalar, cnot_scalar,
                                   pauli_braket_scalar, norm_squared_scalar};

} // namespace

const KernelTable &scalar_kernels() { return scalar_table; }

} // namespace gcans::kernels
