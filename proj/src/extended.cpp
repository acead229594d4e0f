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

#include "woven/extended.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "woven/errors.hpp"

namespace woven::extended {

namespace {

// Radius arithmetic runs in long double (64-bit mantissa); a few operations
// per update stay well below this relative slack.
constexpr long double kUp = 1.0L + 0x1p-56L;
constexpr long double kDown = 1.0L - 0x1p-56L;

} // namespace

BigFloat::BigFloat(mpfr_prec_t bits) { mpfr_init2(value_, bits); mpfr_set_zero(value_, 1); }

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(value_, other.precision());
    mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

void Ball::set(std::complex<double> z, long double radius) {
    mpfr_set_d(re.get(), z.real(), MPFR_RNDN);
    mpfr_set_d(im.get(), z.imag(), MPFR_RNDN);
    rad = radius;
}

void Ball::set(const Ball& other) {
    mpfr_set(re.get(), other.re.get(), MPFR_RNDN);
    mpfr_set(im.get(), other.im.get(), MPFR_RNDN);
    rad = other.rad;
}

void Ball::swap(Ball& other) noexcept {
    re.swap(other.re);
    im.swap(other.im);
    std::swap(rad, other.rad);
}

long double Ball::mag_upper() const {
    const long double a = std::fabs(mpfr_get_ld(re.get(), MPFR_RNDA));
    const long double b = std::fabs(mpfr_get_ld(im.get(), MPFR_RNDA));
    if (a == 0.0L && b == 0.0L) return 0.0L;
    return std::sqrt(a * a + b * b) * kUp;
}

long double Ball::mag_lower() const {
    const long double a = std::fabs(mpfr_get_ld(re.get(), MPFR_RNDZ));
    const long double b = std::fabs(mpfr_get_ld(im.get(), MPFR_RNDZ));
    return std::sqrt(a * a + b * b) * kDown;
}

std::complex<double> Ball::to_complex() const {
    return {mpfr_get_d(re.get(), MPFR_RNDN), mpfr_get_d(im.get(), MPFR_RNDN)};
}

double to_double_up(long double x) {
    double d = static_cast<double>(x);
    if (static_cast<long double>(d) < x) d = std::nextafter(d, std::numeric_limits<double>::infinity());
    return d;
}

DetWorkspace::DetWorkspace(std::size_t capacity, unsigned bits)
    : capacity_(capacity),
      bits_(bits),
      unit_(std::ldexp(1.0L, -static_cast<int>(bits))),
      acc_(bits),
      factor_(bits),
      tmp_(bits),
      s1_(bits),
      s2_(bits),
      s3_(bits),
      p1_(2 * bits),
      p2_(2 * bits),
      p3_(2 * bits),
      p4_(2 * bits) {
    if (bits < 53) throw ArgumentError("extended precision needs at least 53 bits");
    cells_.reserve(capacity_ * (capacity_ + 1));
    for (std::size_t i = 0; i < capacity_ * (capacity_ + 1); ++i) cells_.emplace_back(bits);
}

void DetWorkspace::resize(std::size_t k) {
    if (k > capacity_) throw SizeLimitError("determinant workspace too small");
    k_ = k;
}

void DetWorkspace::mul(Ball& out, const Ball& x, const Ball& y) {
    // Products are exact at doubled precision; each component is rounded once.
    mpfr_mul(p1_.get(), x.re.get(), y.re.get(), MPFR_RNDN);
    mpfr_mul(p2_.get(), x.im.get(), y.im.get(), MPFR_RNDN);
    mpfr_mul(p3_.get(), x.re.get(), y.im.get(), MPFR_RNDN);
    mpfr_mul(p4_.get(), x.im.get(), y.re.get(), MPFR_RNDN);
    mpfr_sub(out.re.get(), p1_.get(), p2_.get(), MPFR_RNDN);
    mpfr_add(out.im.get(), p3_.get(), p4_.get(), MPFR_RNDN);
    const long double mx = x.mag_upper();
    const long double my = y.mag_upper();
    out.rad = (mx * y.rad + my * x.rad + x.rad * y.rad + 3.0L * unit_ * mx * my) * kUp;
}

void DetWorkspace::submul(Ball& acc, const Ball& x, const Ball& y) {
    mul(tmp_, x, y);
    const long double ma = acc.mag_upper();
    const long double mp = tmp_.mag_upper();
    mpfr_sub(acc.re.get(), acc.re.get(), tmp_.re.get(), MPFR_RNDN);
    mpfr_sub(acc.im.get(), acc.im.get(), tmp_.im.get(), MPFR_RNDN);
    acc.rad = (acc.rad + tmp_.rad + 2.0L * unit_ * (ma + mp)) * kUp;
}

void DetWorkspace::div(Ball& out, const Ball& x, const Ball& y) {
    // x conj(y) / |y|^2 with exact products: three roundings per component.
    mpfr_mul(p1_.get(), y.re.get(), y.re.get(), MPFR_RNDN);
    mpfr_mul(p2_.get(), y.im.get(), y.im.get(), MPFR_RNDN);
    mpfr_add(s1_.get(), p1_.get(), p2_.get(), MPFR_RNDN);
    mpfr_mul(p1_.get(), x.re.get(), y.re.get(), MPFR_RNDN);
    mpfr_mul(p2_.get(), x.im.get(), y.im.get(), MPFR_RNDN);
    mpfr_mul(p3_.get(), x.im.get(), y.re.get(), MPFR_RNDN);
    mpfr_mul(p4_.get(), x.re.get(), y.im.get(), MPFR_RNDN);
    mpfr_add(s2_.get(), p1_.get(), p2_.get(), MPFR_RNDN);
    mpfr_sub(s3_.get(), p3_.get(), p4_.get(), MPFR_RNDN);
    mpfr_div(out.re.get(), s2_.get(), s1_.get(), MPFR_RNDN);
    mpfr_div(out.im.get(), s3_.get(), s1_.get(), MPFR_RNDN);
    const long double ml = out.mag_upper();
    const long double gap = y.mag_lower() - y.rad;
    const long double propagated = gap > 0.0L ? (x.rad + ml * y.rad) / (gap * kDown)
                                              : std::numeric_limits<long double>::infinity();
    out.rad = (propagated + 8.0L * unit_ * ml) * kUp;
}

BallDet DetWorkspace::determinant() {
    const std::size_t k = k_;
    const std::size_t stride = capacity_ + 1;
    acc_.set({1.0, 0.0});
    bool negate = false;
    for (std::size_t s = 0; s < k; ++s) {
        std::size_t bi = s;
        std::size_t bj = s;
        long double best = -std::numeric_limits<long double>::infinity();
        for (std::size_t i = s; i < k; ++i)
            for (std::size_t j = s; j < k; ++j) {
                const Ball& c = cells_[i * stride + j];
                const long double score = c.mag_lower() - c.rad;
                if (score > best) {
                    best = score;
                    bi = i;
                    bj = j;
                }
            }
        if (!(best > 0.0L)) {
            // Every remaining entry may vanish: bound the Schur complement by
            // Hadamard's inequality and report an enclosure centred at zero.
            long double hadamard = 1.0L;
            for (std::size_t j = s; j < k; ++j) {
                long double col = 0.0L;
                for (std::size_t i = s; i < k; ++i) {
                    const Ball& c = cells_[i * stride + j];
                    const long double m = c.mag_upper() + c.rad;
                    col += m * m;
                }
                hadamard *= std::sqrt(col * kUp) * kUp;
            }
            const long double bound = (acc_.mag_upper() + acc_.rad) * hadamard * kUp;
            BallDet out;
            out.value = {0.0, 0.0};
            out.abs_value = 0.0;
            out.error_bound = to_double_up(bound);
            out.contains_zero = true;
            out.bits = bits_;
            return out;
        }
        if (bi != s) {
            for (std::size_t j = 0; j < k; ++j) cells_[s * stride + j].swap(cells_[bi * stride + j]);
            negate = !negate;
        }
        if (bj != s) {
            for (std::size_t i = 0; i < k; ++i) cells_[i * stride + s].swap(cells_[i * stride + bj]);
            negate = !negate;
        }
        const Ball& pivot = cells_[s * stride + s];
        mul(tmp_, acc_, pivot);
        acc_.swap(tmp_);
        for (std::size_t i = s + 1; i < k; ++i) {
            div(factor_, cells_[i * stride + s], pivot);
            for (std::size_t j = s + 1; j < k; ++j) submul(cells_[i * stride + j], factor_, cells_[s * stride + j]);
        }
    }
    if (negate) {
        mpfr_neg(acc_.re.get(), acc_.re.get(), MPFR_RNDN);
        mpfr_neg(acc_.im.get(), acc_.im.get(), MPFR_RNDN);
    }
    BallDet out;
    out.value = acc_.to_complex();
    out.abs_value = std::abs(out.value);
    out.error_bound = to_double_up(acc_.rad);
    out.contains_zero = acc_.contains_zero();
    out.bits = bits_;
    return out;
}

std::vector<std::complex<double>> DetWorkspace::solve(std::span<const std::complex<double>> rhs) {
    const std::size_t k = k_;
    const std::size_t stride = capacity_ + 1;
    if (rhs.size() != k) throw DimensionError("right-hand side length mismatch");
    for (std::size_t i = 0; i < k; ++i) cells_[i * stride + k].set(rhs[i]);
    for (std::size_t s = 0; s < k; ++s) {
        std::size_t bi = s;
        long double best = -1.0L;
        for (std::size_t i = s; i < k; ++i) {
            const long double m = cells_[i * stride + s].mag_lower();
            if (m > best) {
                best = m;
                bi = i;
            }
        }
        if (!(best > 0.0L)) throw ArgumentError("extended solve hit a zero pivot");
        if (bi != s)
            for (std::size_t j = 0; j <= k; ++j) cells_[s * stride + j].swap(cells_[bi * stride + j]);
        const Ball& pivot = cells_[s * stride + s];
        for (std::size_t i = s + 1; i < k; ++i) {
            div(factor_, cells_[i * stride + s], pivot);
            for (std::size_t j = s + 1; j <= k; ++j) submul(cells_[i * stride + j], factor_, cells_[s * stride + j]);
        }
    }
    std::vector<std::complex<double>> x(k);
    for (std::size_t ii = k; ii-- > 0;) {
        Ball& b = cells_[ii * stride + k];
        for (std::size_t j = ii + 1; j < k; ++j) submul(b, cells_[ii * stride + j], cells_[j * stride + k]);
        div(tmp_, b, cells_[ii * stride + ii]);
        b.set(tmp_);
        x[ii] = b.to_complex();
    }
    return x;
}

BallDet determinant(const CMatrix& a, unsigned bits) {
    require_square(a, "determinant");
    DetWorkspace ws(a.rows(), bits);
    ws.resize(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) ws.at(i, j).set(a(i, j));
    return ws.determinant();
}

} // namespace woven::extended
