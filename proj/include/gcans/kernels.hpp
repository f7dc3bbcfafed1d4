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
 * @file kernels.hpp
 * Statevector inner loops. Every kernel exists as a scalar reference and, on
 * x86-64 hosts with AVX2+FMA, as a vectorized variant chosen at runtime.
 *
 * All kernels take the full amplitude array of an n-qubit register
 * (2^n entries, n >= 1) with qubit q mapped to bit q of the index.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <span>

namespace gcans::kernels {

using Complex = std::complex<double>;

struct KernelTable {
    const char *name;

    /// exp(-i angle Y / 2) on `qubit`.
    void (*apply_ry)(std::span<Complex> amps, unsigned qubit, double angle);

    /// exp(-i angle Z / 2) on `qubit`.
    void (*apply_rz)(std::span<Complex> amps, unsigned qubit, double angle);

    void (*apply_cnot)(std::span<Complex> amps, unsigned control, unsigned target);

    /**
     * sum_i (-1)^popcount(i & z_mask) conj(amps[i ^ x_mask]) amps[i].
     * Multiplying by i^(number of Y letters) gives <psi|P|psi>.
     */
    Complex (*pauli_braket)(std::span<const Complex> amps, std::uint64_t x_mask,
                            std::uint64_t z_mask);

    double (*norm_squared)(std::span<const Complex> amps);
};

const KernelTable &scalar_kernels();

/// AVX2+FMA table, or nullptr when not compiled in or not supported by this CPU.
const KernelTable *avx2_kernels();

/**
 * Table used by the simulator: AVX2 when available unless scalar mode is
 * forced through force_scalar() or the GCANS_FORCE_SCALAR environment variable.
 */
const KernelTable &active_kernels();

void force_scalar(bool on);

} // namespace gcans::kernels
