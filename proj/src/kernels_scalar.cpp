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

#include "woven/kernels.hpp"

namespace woven::kernels {

namespace {

// Explicit real arithmetic instead of std::complex operators: the vector
// variants reproduce exactly these operations.

void caxpy_neg(std::size_t n, cplx a, const cplx* x, cplx* y) {
    const double ar = a.real();
    const double ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real();
        const double xi = x[i].imag();
        const double pr = ar * xr - ai * xi;
        const double pi = ar * xi + ai * xr;
        y[i] = cplx(y[i].real() - pr, y[i].imag() - pi);
    }
}

void accumulate_abs2(std::size_t n, const cplx* z, double* acc) {
    for (std::size_t i = 0; i < n; ++i) {
        const double r = z[i].real();
        const double m = z[i].imag();
        acc[i] += r * r + m * m;
    }
}

void accumulate_abs2_diff(std::size_t n, const cplx* a, const cplx* b, double* acc) {
    for (std::size_t i = 0; i < n; ++i) {
        const double r = a[i].real() - b[i].real();
        const double m = a[i].imag() - b[i].imag();
        acc[i] += r * r + m * m;
    }
}

void accumulate_conj_product(std::size_t n, const cplx* a, const cplx* b, cplx* acc) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real();
        const double ai = a[i].imag();
        const double br = b[i].real();
        const double bi = b[i].imag();
        const double re = ar * br + ai * bi;
        const double im = ai * br - ar * bi;
        acc[i] = cplx(acc[i].real() + re, acc[i].imag() + im);
    }
}

cplx cdot(std::size_t n, const cplx* a, const cplx* b) {
    double sr = 0.0;
    double si = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real();
        const double ai = a[i].imag();
        const double br = b[i].real();
        const double bi = b[i].imag();
        sr += ar * br - ai * bi;
        si += ar * bi + ai * br;
    }
    return {sr, si};
}

constexpr KernelTable kScalar{Isa::Scalar, caxpy_neg, accumulate_abs2, accumulate_abs2_diff,
                              accumulate_conj_product, cdot};

} // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

} // namespace woven::kernels
