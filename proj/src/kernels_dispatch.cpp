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
#include <atomic>
#include <cstdlib>
#include <string_view>

#include "gcans/kernels.hpp"

namespace gcans::kernels {

namespace {

bool env_forces_scalar() {
    const char *value = std::getenv("GCANS_FORCE_SCALAR");
    return value != nullptr && std::string_view(value) != "" && std::string_view(value) != "0";
}

std::atomic<bool> &forced_flag() {
    static std::atomic<bool> flag{env_forces_scalar()};
    return flag;
}

} // namespace

void force_scalar(bool on) { forced_flag().store(on, std::memory_order_relaxed); }

const KernelTable &active_kernels() {
    if (!forced_flag().load(std::memory_order_relaxed)) {
        if (const KernelTable *simd = avx2_kernels()) {
            return *simd;
        }
    }
    return scalar_kernels();
}

} // namespace gcans::kernels
