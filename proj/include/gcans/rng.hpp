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
#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace gcans {

/**
 * Seeded random stream.
 *
 * The engine (mt19937_64) and the seed_seq mixing are fully specified by the
 * standard, and the floating-point transforms below are written out by hand,
 * so a given (seed, stream) produces the same numbers on every platform.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }

    /// Standard normal variate (Marsaglia polar method).
    double normal();

    /// Independent child stream keyed by `id`; advances this stream by one draw.
    Rng split(std::uint64_t id) { return Rng(next_u64(), id); }

  private:
    std::mt19937_64 engine_;
    std::optional<double> spare_normal_;
};

} // namespace gcans
