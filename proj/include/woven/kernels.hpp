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

#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

// Data-parallel inner loops used by the double-precision paths: elimination
// row updates, bracket and Grammian accumulation over frequency grids, and
// trigonometric moments. Every kernel has a scalar reference implementation
// and optional vector variants selected at runtime.
//
// The element-wise kernels perform the same floating-point operations in the
// same order in every variant, so their results are bit-identical across
// variants. `cdot` is a reduction and only agrees to rounding.

namespace woven::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
    Isa isa;
    /// y[i] -= a * x[i]
    void (*caxpy_neg)(std::size_t n, cplx a, const cplx* x, cplx* y);
    /// acc[i] += |z[i]|^2
    void (*accumulate_abs2)(std::size_t n, const cplx* z, double* acc);
    /// acc[i] += |a[i] - b[i]|^2
    void (*accumulate_abs2_diff)(std::size_t n, const cplx* a, const cplx* b, double* acc);
    /// acc[i] += a[i] * conj(b[i])
    void (*accumulate_conj_product)(std::size_t n, const cplx* a, const cplx* b, cplx* acc);
    /// sum_i a[i] * b[i]
    cplx (*cdot)(std::size_t n, const cplx* a, const cplx* b);
};

/// The scalar reference table; always available.
const KernelTable& scalar_table() noexcept;

/// Table for `isa`, or nullptr when this build or CPU cannot run it.
const KernelTable* table_for(Isa isa) noexcept;

/// Every variant runnable here, scalar first.
std::vector<Isa> available();

/// The table used by the library. Picked once from CPU features; the
/// WOVEN_KERNELS environment variable (scalar|avx2|neon) overrides it.
const KernelTable& active() noexcept;

/// Overrides the active table. Returns false if `isa` is unavailable.
bool select(Isa isa) noexcept;

namespace detail {
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;
} // namespace detail

} // namespace woven::kernels
