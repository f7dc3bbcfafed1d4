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

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define GCANS_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#else
#define GCANS_HAVE_AVX2_KERNELS 0
#endif

namespace gcans::kernels {

#if GCANS_HAVE_AVX2_KERNELS

// A __m256d holds two complex amplitudes laid out as [re0, im0, re1, im1].
// Every register count here is a multiple of two amplitudes, which always
// holds because a register has at least one qubit.

namespace {

#define GCANS_AVX2 __attribute__((target("avx2,fma")))

GCANS_AVX2 inline __m256d load2(const Complex *p) {
    return _mm256_loadu_pd(reinterpret_cast<const double *>(p));
}

GCANS_AVX2 inline void store2(Complex *p, __m256d v) {
    _mm256_storeu_pd(reinterpret_cast<double *>(p), v);
}

/// [a, b] -> [b, a] at complex granularity.
GCANS_AVX2 inline __m256d swap_halves(__m256d v) { return _mm256_permute2f128_pd(v, v, 0x01); }

/// [re, im] -> [im, re] inside each complex.
GCANS_AVX2 inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

GCANS_AVX2 inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

GCANS_AVX2 void ry_avx2(std::span<Complex> amps, unsigned qubit, double angle) {
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    Complex *data = amps.data();
    const std::size_t dim = amps.size();
    const __m256d vc = _mm256_set1_pd(c);
    if (qubit == 0) {
        // partner amplitude sits in the other half of the same register
        const __m256d vs = _mm256_setr_pd(-s, -s, s, s);
        for (std::size_t i = 0; i < dim; i += 2) {
            const __m256d v = load2(data + i);
            store2(data + i, _mm256_fmadd_pd(vs, swap_halves(v), _mm256_mul_pd(vc, v)));
        }
        return;
    }
    const __m256d vs = _mm256_set1_pd(s);
    const std::size_t stride = std::size_t{1} << qubit;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; k += 2) {
            const __m256d a0 = load2(data + k);
            const __m256d a1 = load2(data + k + stride);
            store2(data + k, _mm256_fnmadd_pd(vs, a1, _mm256_mul_pd(vc, a0)));
            store2(data + k + stride, _mm256_fmadd_pd(vs, a0, _mm256_mul_pd(vc, a1)));
        }
    }
}

GCANS_AVX2 void rz_avx2(std::span<Complex> amps, unsigned qubit, double angle) {
    // (x + iy)(c + id) = (xc - yd) + i(yc + xd)
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    Complex *data = amps.data();
    const std::size_t dim = amps.size();
    const __m256d vc = _mm256_set1_pd(c);
    if (qubit == 0) {
        // lane 0 gets d = -s, lane 1 gets d = +s
        const __m256d vd = _mm256_setr_pd(s, -s, -s, s);
        for (std::size_t i = 0; i < dim; i += 2) {
            const __m256d v = load2(data + i);
            store2(data + i, _mm256_fmadd_pd(vd, swap_re_im(v), _mm256_mul_pd(vc, v)));
        }
        return;
    }
    const __m256d vd_lower = _mm256_setr_pd(s, -s, s, -s);
    const __m256d vd_upper = _mm256_setr_pd(-s, s, -s, s);
    const std::size_t stride = std::size_t{1} << qubit;
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; k += 2) {
            const __m256d a0 = load2(data + k);
            const __m256d a1 = load2(data + k + stride);
            store2(data + k, _mm256_fmadd_pd(vd_lower, swap_re_im(a0), _mm256_mul_pd(vc, a0)));
            store2(data + k + stride,
                   _mm256_fmadd_pd(vd_upper, swap_re_im(a1), _mm256_mul_pd(vc, a1)));
        }
    }
}

GCANS_AVX2 void cnot_avx2(std::span<Complex> amps, unsigned control, unsigned target) {
    Complex *data = amps.data();
    const std::size_t dim = amps.size();
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    if (control == 0) {
        // controlled amplitudes are the odd indices; no contiguous pairs
        for (std::size_t i = 1; i < dim; i += 2) {
            if ((i & tbit) == 0) {
                std::swap(data[i], data[i | tbit]);
            }
        }
        return;
    }
    if (target == 0) {
        for (std::size_t i = 0; i < dim; i += 2) {
            if ((i & cbit) != 0) {
                store2(data + i, swap_halves(load2(data + i)));
            }
        }
        return;
    }
    for (std::size_t i = 0; i < dim; i += 2) {
        if ((i & cbit) != 0 && (i & tbit) == 0) {
            const __m256d lo = load2(data + i);
            const __m256d hi = load2(data + (i | tbit));
            store2(data + i, hi);
            store2(data + (i | tbit), lo);
        }
    }
}

GCANS_AVX2 Complex pauli_braket_avx2(std::span<const Complex> amps, std::uint64_t x_mask,
                                     std::uint64_t z_mask) {
    const Complex *data = amps.data();
    const std::size_t dim = amps.size();
    const bool flip_low = (x_mask & 1U) != 0;
    const bool sign_low = (z_mask & 1U) != 0;
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    for (std::size_t i = 0; i < dim; i += 2) {
        const __m256d ket = load2(data + i);
        // bra lanes hold amps[i ^ x] and amps[(i + 1) ^ x]
        __m256d bra = load2(data + ((i ^ x_mask) & ~std::size_t{1}));
        if (flip_low) {
            bra = swap_halves(bra);
        }
        const double s0 = __builtin_parityll(i & z_mask) != 0 ? -1.0 : 1.0;
        const double s1 = sign_low ? -s0 : s0;
        const __m256d sign = _mm256_setr_pd(s0, s0, s1, s1);
        // conj(b) k = (br kr + bi ki) + i (br ki - bi kr)
        acc_re = _mm256_fmadd_pd(sign, _mm256_mul_pd(bra, ket), acc_re);
        acc_im = _mm256_fmadd_pd(sign, _mm256_mul_pd(bra, swap_re_im(ket)), acc_im);
    }
    alignas(32) double im_lanes[4];
    _mm256_store_pd(im_lanes, acc_im);
    return {hsum(acc_re), (im_lanes[0] - im_lanes[1]) + (im_lanes[2] - im_lanes[3])};
}

GCANS_AVX2 double norm_squared_avx2(std::span<const Complex> amps) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < amps.size(); i += 2) {
        const __m256d v = load2(amps.data() + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    return hsum(acc);
}

#undef GCANS_AVX2

constexpr KernelTable avx2_table{"avx2", ry_avx2, rz_avx2, cnot_avx2, pauli_braket_avx2,
                                 norm_squared_avx2};

} // namespace

const KernelTable *avx2_kernels() {
    static const bool supported =
        __builtin_cpu_supports("avx2") != 0 && __builtin_cpu_supports("fma") != 0;
    return supported ? &avx2_table : nullptr;
}

#else

const KernelTable *avx2_kernels() { return nullptr; }

#endif

} // namespace gcans::kernels
