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

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

namespace woven::kernels::detail {

namespace {

// One complex per float64x2_t. Built with -ffp-contract=off so the
// multiply/add pairs stay separate and match the scalar reference.

void caxpy_neg(std::size_t n, cplx a, const cplx* x, cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    const float64x2_t flip = {-1.0, 1.0};
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t xv = vld1q_f64(xd + 2 * i);
        const float64x2_t t1 = vmulq_n_f64(xv, a.real());
        const float64x2_t t2 = vmulq_n_f64(vextq_f64(xv, xv, 1), a.imag());
        const float64x2_t p = vaddq_f64(t1, vmulq_f64(t2, flip));
        vst1q_f64(yd + 2 * i, vsubq_f64(vld1q_f64(yd + 2 * i), p));
    }
}

void accumulate_abs2(std::size_t n, const cplx* z, double* acc) {
    const double* zd = reinterpret_cast<const double*>(z);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t z0 = vld1q_f64(zd + 2 * i);
        const float64x2_t z1 = vld1q_f64(zd + 2 * i + 2);
        const float64x2_t s = vpaddq_f64(vmulq_f64(z0, z0), vmulq_f64(z1, z1));
        vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), s));
    }
    if (i < n) scalar_table().accumulate_abs2(n - i, z + i, acc + i);
}

void accumulate_abs2_diff(std::size_t n, const cplx* a, const cplx* b, double* acc) {
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d0 = vsubq_f64(vld1q_f64(ad + 2 * i), vld1q_f64(bd + 2 * i));
        const float64x2_t d1 = vsubq_f64(vld1q_f64(ad + 2 * i + 2), vld1q_f64(bd + 2 * i + 2));
        const float64x2_t s = vpaddq_f64(vmulq_f64(d0, d0), vmulq_f64(d1, d1));
        vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), s));
    }
    if (i < n) scalar_table().accumulate_abs2_diff(n - i, a + i, b + i, acc + i);
}

void accumulate_conj_product(std::size_t n, const cplx* a, const cplx* b, cplx* acc) {
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    double* cd = reinterpret_cast<double*>(acc);
    const float64x2_t sign = {1.0, -1.0};
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t av = vld1q_f64(ad + 2 * i);
        const double br = bd[2 * i];
        const double bi = bd[2 * i + 1];
        const float64x2_t t1 = vmulq_n_f64(av, br);
        const float64x2_t t2 = vmulq_n_f64(vextq_f64(av, av, 1), bi);
        const float64x2_t r = vaddq_f64(t1, vmulq_f64(t2, sign));
        vst1q_f64(cd + 2 * i, vaddq_f64(vld1q_f64(cd + 2 * i), r));
    }
}

cplx cdot(std::size_t n, const cplx* a, const cplx* b) {
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    const float64x2_t flip = {-1.0, 1.0};
    float64x2_t s0 = vdupq_n_f64(0.0);
    float64x2_t s1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    auto prod = [&](std::size_t k) {
        const float64x2_t av = vld1q_f64(ad + 2 * k);
        const float64x2_t t1 = vmulq_n_f64(av, bd[2 * k]);
        const float64x2_t t2 = vmulq_n_f64(vextq_f64(av, av, 1), bd[2 * k + 1]);
        return vaddq_f64(t1, vmulq_f64(t2, flip));
    };
    for (; i + 2 <= n; i += 2) {
        s0 = vaddq_f64(s0, prod(i));
        s1 = vaddq_f64(s1, prod(i + 1));
    }
    if (i < n) s0 = vaddq_f64(s0, prod(i));
    const float64x2_t s = vaddq_f64(s0, s1);
    return {vgetq_lane_f64(s, 0), vgetq_lane_f64(s, 1)};
}

constexpr KernelTable kNeon{Isa::Neon, caxpy_neg, accumulate_abs2, accumulate_abs2_diff, accumulate_conj_product,
                            cdot};

} // namespace

const KernelTable* neon_table() noexcept { return &kNeon; }

} // namespace woven::kernels::detail

#else

namespace woven::kernels::detail {
const KernelTable* neon_table() noexcept { return nullptr; }
} // namespace woven::kernels::detail

#endif
