/*
 * Copyright 2026 The Woven Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <atomic>
#include <cstdlib>
#include <string>

#include "woven/kernels.hpp"

namespace woven::kernels {

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
    }
    return "unknown";
}

const KernelTable* table_for(Isa isa) noexcept {
    switch (isa) {
    case Isa::Scalar: return &scalar_table();
    case Isa::Avx2: return detail::avx2_table();
    case Isa::Neon: return detail::neon_table();
    }
    return nullptr;
}

std::vector<Isa> available() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
        if (table_for(isa) != nullptr) out.push_back(isa);
    return out;
}

namespace {

const KernelTable* pick_default() noexcept {
    if (const char* env = std::getenv("WOVEN_KERNELS")) {
        const std::string_view want(env);
        for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
            if (want == isa_name(isa))
                if (const KernelTable* t = table_for(isa)) return t;
    }
    if (const KernelTable* t = detail::avx2_table()) return t;
    if (const KernelTable* t = detail::neon_table()) return t;
    return &scalar_table();
}

std::atomic<const KernelTable*>& slot() noexcept {
    static std::atomic<const KernelTable*> current{pick_default()};
    return current;
}

} // namespace

const KernelTable& active() noexcept { return *slot().load(std::memory_order_acquire); }

bool select(Isa isa) noexcept {
    const KernelTable* t = table_for(isa);
    if (t == nullptr) return false;
    slot().store(t, std::memory_order_release);
    return true;
}

} // namespace woven::kernels
