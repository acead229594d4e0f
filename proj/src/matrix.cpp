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

#include "woven/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "woven/errors.hpp"

namespace woven {

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, CScalar{0.0, 0.0}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<CScalar> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
        throw DimensionError("matrix entry count " + std::to_string(entries_.size()) + " does not match " +
                             std::to_string(rows_) + "x" + std::to_string(cols_));
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<CScalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("ragged matrix literal");
        entries_.insert(entries_.end(), r.begin(), r.end());
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const CScalar> d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CMatrix CMatrix::transpose() const {
    CMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

CMatrix CMatrix::adjoint() const {
    CMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
}

bool CMatrix::all_finite() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const CScalar& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
    CMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const CScalar aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

namespace {

template <class Op>
CMatrix elementwise(const CMatrix& a, const CMatrix& b, Op op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix shape mismatch");
    CMatrix c(a.rows(), a.cols());
    auto ad = a.data();
    auto bd = b.data();
    auto cd = c.data();
    for (std::size_t i = 0; i < cd.size(); ++i) cd[i] = op(ad[i], bd[i]);
    return c;
}

} // namespace

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    return elementwise(a, b, [](CScalar x, CScalar y) { return x + y; });
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    return elementwise(a, b, [](CScalar x, CScalar y) { return x - y; });
}

CVector operator*(const CMatrix& a, std::span<const CScalar> x) {
    if (a.cols() != x.size()) throw DimensionError("matrix-vector shape mismatch");
    CVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        CScalar s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

double norm2(std::span<const CScalar> x) {
    double s = 0.0;
    for (const auto& z : x) s += std::norm(z);
    return std::sqrt(s);
}

double frobenius_norm(const CMatrix& a) { return norm2(a.data()); }

void require_square(const CMatrix& a, const char* what) {
    if (!a.is_square())
        throw DimensionError(std::string(what) + ": expected a square matrix, got " + std::to_string(a.rows()) +
                             "x" + std::to_string(a.cols()));
}

} // namespace woven
