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

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace woven::kernels::detail {

namespace {

__attribute__((target("avx2"))) void caxpy_neg(std::size_t n, cplx a, const cplx* x, cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d t1 = _mm256_mul_pd(ar, xv);
        const __m256d t2 = _mm256_mul_pd(ai, _mm256_permute_pd(xv, 0x5));
        const __m256d p = _mm256_addsub_pd(t1, t2);
        _mm256_storeu_pd(yd + 2 * i, _mm256_sub_pd(_mm256_loadu_pd(yd + 2 * i), p));
    }
    if (i < n) scalar_table().caxpy_neg(n - i, a, x + i, y + i);
}

__attribute__((target("avx2"))) inline __m256d abs2_quad(__m256d z01, __m256d z23) {
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(z01, z01), _mm256_mul_pd(z23, z23));
    return _mm256_permute4x64_pd(h, _MM_SHUFFLE(3, 1, 2, 0));
}

__attribute__((target("avx2"))) void accumulate_abs2(std::size_t n, const cplx* z, double* acc) {
    const double* zd = reinterpret_cast<const double*>(z);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d s = abs2_quad(_mm256_loadu_pd(zd + 2 * i), _mm256_loadu_pd(zd + 2 * i + 4));
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), s));
    }
    if (i < n) scalar_table().accumulate_abs2(n - i, z + i, acc + i);
}

__attribute__((target("avx2"))) void accumulate_abs2_diff(std::size_t n, const cplx* a, const cplx* b,
                                                          double* acc) {
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d01 = _mm256_sub_pd(_mm256_loadu_pd(ad + 2 * i), _mm256_loadu_pd(bd + 2 * i));
        const __m256d d23 = _mm256_sub_pd(_mm256_loadu_pd(ad + 2 * i + 4), _mm256_loadu_pd(bd + 2 * i + 4));
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), abs2_quad(d01, d23)));
    }
    if (i < n) scalar_table().accumulate_abs2_diff(n - i, a + i, b + i, acc + i);
}

__attribute__((target("avx2"))) void accumulate_conj_product(std::size_t n, const cplx* a, const cplx* b,
                                                             cplx* acc) {
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    double* cd = reinterpret_cast<double*>(acc);
    const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d av = _mm256_loadu_pd(ad + 2 * i);
        const __m256d bv = _mm256_loadu_pd(bd + 2 * i);
        const __m256d t1 = _mm256_mul_pd(av, _mm256_movedup_pd(bv));
        const __m256d t2 = _mm256_mul_pd(_mm256_permute_pd(av, 0x5), _mm256_permute_pd(bv, 0xF));
        const __m256d r = _mm256_add_pd(t1, _mm256_mul_pd(t2, sign));
        _mm256_storeu_pd(cd + 2 * i, _mm256_add_pd(_mm256_loadu_pd(cd + 2 * i), r));
    }
    if (i < n) scalar_table().accumulate_conj_product(n - i, a + i, b + i, acc + i);
}

__attribute__((target("avx2"))) cplx cdot(std::size_t n, const cplx* a, const cplx* b) {
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    __m256d sum = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d av = _mm256_loadu_pd(ad + 2 * i);
        const __m256d bv = _mm256_loadu_pd(bd + 2 * i);
        const __m256d t1 = _mm256_mul_pd(av, _mm256_movedup_pd(bv));
        const __m256d t2 = _mm256_mul_pd(_mm256_permute_pd(av, 0x5), _mm256_permute_pd(bv, 0xF));
        sum = _mm256_add_pd(sum, _mm256_addsub_pd(t1, t2));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, sum);
    cplx total(lanes[0] + lanes[2], lanes[1] + lanes[3]);
    if (i < n) total += scalar_table().cdot(n - i, a + i, b + i);
    return total;
}

constexpr KernelTable kAvx2{Isa::Avx2, caxpy_neg, accumulate_abs2, accumulate_abs2_diff, accumulate_conj_product,
                            cdot};

} // namespace

const KernelTable* avx2_table() noexcept {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") ? &kAvx2 : nullptr;
}

} // namespace woven::kernels::detail

#else

namespace woven::kernels::detail {
const KernelTable* avx2_table() noexcept { return nullptr; }
} // namespace woven::kernels::detail

#endif
