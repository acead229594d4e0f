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
#include <span>
#include <vector>

#include <mpfr.h>

#include "woven/matrix.hpp"

// Complex ball arithmetic on top of MPFR: a midpoint with `bits` of mantissa
// per component and a radius kept as an upward-rounded long double. Every
// operation widens the radius by the propagated input radii plus a bound on
// its own rounding error, so the exact result always lies in the ball.

namespace woven::extended {

/// Owning mpfr_t.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t bits);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    mpfr_ptr get() noexcept { return value_; }
    mpfr_srcptr get() const noexcept { return value_; }
    mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

    void swap(BigFloat& other) noexcept { mpfr_swap(value_, other.value_); }

private:
    mpfr_t value_;
};

struct Ball {
    BigFloat re;
    BigFloat im;
    long double rad = 0.0L;

    explicit Ball(mpfr_prec_t bits) : re(bits), im(bits) {}

    void set(std::complex<double> z, long double radius = 0.0L);
    void set(const Ball& other);
    void swap(Ball& other) noexcept;

    /// Upper and lower bounds on |midpoint|.
    long double mag_upper() const;
    long double mag_lower() const;
    bool contains_zero() const { return mag_lower() <= rad; }

    std::complex<double> to_complex() const;
};

/// Determinant of a ball matrix together with its enclosure.
struct BallDet {
    std::complex<double> value;
    double abs_value = 0.0;
    /// Upward-rounded radius of the enclosure around `value`.
    double error_bound = 0.0;
    /// The enclosure contains zero (decided before rounding to double).
    bool contains_zero = false;
    unsigned bits = 0;
};

/// Reusable k x k ball matrix plus temporaries for elimination. One per
/// thread; reloading entries does not allocate.
class DetWorkspace {
public:
    DetWorkspace(std::size_t capacity, unsigned bits);

    unsigned bits() const noexcept { return bits_; }
    std::size_t capacity() const noexcept { return capacity_; }

    /// Sets the active size; entries keep stale values until assigned.
    void resize(std::size_t k);
    std::size_t size() const noexcept { return k_; }

    Ball& at(std::size_t i, std::size_t j) { return cells_[i * (capacity_ + 1) + j]; }

    /// Full-pivoting elimination on the active block. Destroys the block.
    BallDet determinant();

    /// Solves the active block against rhs (length k); midpoints only.
    std::vector<std::complex<double>> solve(std::span<const std::complex<double>> rhs);

private:
    long double unit() const noexcept { return unit_; }
    void mul(Ball& out, const Ball& x, const Ball& y);
    void submul(Ball& acc, const Ball& x, const Ball& y);
    void div(Ball& out, const Ball& x, const Ball& y);

    std::size_t capacity_;
    unsigned bits_;
    long double unit_;
    std::size_t k_ = 0;
    std::vector<Ball> cells_;
    Ball acc_;
    Ball factor_;
    Ball tmp_;
    BigFloat s1_;
    BigFloat s2_;
    BigFloat s3_;
    BigFloat p1_;
    BigFloat p2_;
    BigFloat p3_;
    BigFloat p4_;
};

/// Determinant of a double matrix (entries exact, radius 0) at `bits`.
BallDet determinant(const CMatrix& a, unsigned bits);

/// Rounds a non-negative long double up to the next representable double.
double to_double_up(long double x);

} // namespace woven::extended
