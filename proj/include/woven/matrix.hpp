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
#include <initializer_list>
#include <span>
#include <vector>

namespace woven {

using CScalar = std::complex<double>;
using CVector = std::vector<CScalar>;

/// Dense row-major complex matrix.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);
    CMatrix(std::size_t rows, std::size_t cols, std::vector<CScalar> entries);
    CMatrix(std::initializer_list<std::initializer_list<CScalar>> rows);

    static CMatrix identity(std::size_t n);
    static CMatrix diagonal(std::span<const CScalar> d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return entries_.empty(); }

    CScalar& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * cols_ + j]; }
    const CScalar& operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * cols_ + j]; }

    std::span<CScalar> row(std::size_t i) noexcept { return {entries_.data() + i * cols_, cols_}; }
    std::span<const CScalar> row(std::size_t i) const noexcept { return {entries_.data() + i * cols_, cols_}; }

    std::span<const CScalar> data() const noexcept { return entries_; }
    std::span<CScalar> data() noexcept { return entries_; }

    CMatrix transpose() const;
    CMatrix adjoint() const;

    /// True when every entry is finite.
    bool all_finite() const noexcept;

    friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<CScalar> entries_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);
CVector operator*(const CMatrix& a, std::span<const CScalar> x);

/// Largest absolute entry difference; matrices must share a shape.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

double norm2(std::span<const CScalar> x);
double frobenius_norm(const CMatrix& a);

/// Throws DimensionError unless `a` is square.
void require_square(const CMatrix& a, const char* what);

} // namespace woven
