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

#include "woven/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "woven/extended.hpp"
#include "woven/kernels.hpp"

namespace woven {

std::string_view to_string(PrecisionMode mode) noexcept {
    return mode == PrecisionMode::Double ? "double" : "extended";
}

std::string_view to_string(Invertibility status) noexcept {
    switch (status) {
    case Invertibility::Invertible: return "invertible";
    case Invertibility::Singular: return "singular";
    case Invertibility::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

PrecisionConfig PrecisionConfig::double_mode(double zero_tol) {
    PrecisionConfig cfg;
    cfg.zero_tol = zero_tol;
    return cfg;
}

PrecisionConfig PrecisionConfig::extended(unsigned bits) {
    PrecisionConfig cfg;
    cfg.mode = PrecisionMode::Extended;
    cfg.bits = bits;
    cfg.escalation_bits = bits;
    return cfg;
}

void PrecisionConfig::validate() const {
    if (mode == PrecisionMode::Extended && bits < 53)
        throw ArgumentError("extended precision requires at least 53 bits, got " + std::to_string(bits));
    if (!(zero_tol > 0.0) || !std::isfinite(zero_tol)) throw ArgumentError("zero_tol must be positive");
    if (!(rel_tol >= 0.0) || !std::isfinite(rel_tol)) throw ArgumentError("rel_tol must be non-negative");
    if (escalation_bits < 53) throw ArgumentError("escalation_bits must be at least 53");
}

namespace {

constexpr double kUnitRoundoff = 0x1p-53;

using EigenMatrix = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenMatrix> as_eigen(const CMatrix& a) {
    return {a.data().data(), static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols())};
}

// In-place LU with partial pivoting; returns the row permutation parity.
// Row updates go through the active SIMD kernel.
struct LuFactors {
    CMatrix lu;
    std::vector<std::size_t> perm;
    bool odd = false;
    bool zero_pivot = false;
};

LuFactors lu_partial(const CMatrix& a) {
    const std::size_t n = a.rows();
    LuFactors f{a, std::vector<std::size_t>(n), false, false};
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
    const auto& k = kernels::active();
    CMatrix& m = f.lu;
    for (std::size_t s = 0; s < n; ++s) {
        std::size_t best = s;
        double best_mag = std::abs(m(s, s));
        for (std::size_t i = s + 1; i < n; ++i) {
            const double mag = std::abs(m(i, s));
            if (mag > best_mag) {
                best_mag = mag;
                best = i;
            }
        }
        if (best != s) {
            std::swap_ranges(m.row(s).begin(), m.row(s).end(), m.row(best).begin());
            std::swap(f.perm[s], f.perm[best]);
            f.odd = !f.odd;
        }
        if (best_mag == 0.0) {
            f.zero_pivot = true;
            continue;
        }
        const CScalar pivot = m(s, s);
        for (std::size_t i = s + 1; i < n; ++i) {
            const CScalar l = m(i, s) / pivot;
            m(i, s) = l;
            if (l != CScalar{0.0, 0.0}) k.caxpy_neg(n - s - 1, l, &m(s, s + 1), &m(i, s + 1));
        }
    }
    return f;
}

DetResult det_double(const CMatrix& a) {
    const std::size_t n = a.rows();
    if (n == 0) return {CScalar{1.0, 0.0}, 0.0};
    LuFactors f = lu_partial(a);
    CScalar d = f.odd ? -1.0 : 1.0;
    double max_u = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        d *= f.lu(i, i);
        for (std::size_t j = i; j < n; ++j) max_u = std::max(max_u, std::abs(f.lu(i, j)));
    }
    double max_a = 0.0;
    double hadamard = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            col += std::norm(a(i, j));
            max_a = std::max(max_a, std::abs(a(i, j)));
        }
        hadamard *= std::sqrt(col);
    }
    const double growth = max_a > 0.0 ? std::max(1.0, max_u / max_a) : 1.0;
    const double bound = 4.0 * static_cast<double>(n) * kUnitRoundoff * growth * hadamard;
    return {d, bound};
}

CVector lu_apply(const LuFactors& f, std::span<const CScalar> b) {
    const std::size_t n = f.lu.rows();
    CVector y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = b[f.perm[i]];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) y[i] -= f.lu(i, j) * y[j];
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n; ++j) y[ii] -= f.lu(ii, j) * y[j];
        y[ii] /= f.lu(ii, ii);
    }
    return y;
}

InvertibilityVerdict assess_double(const CMatrix& a, double zero_tol) {
    InvertibilityVerdict v;
    v.mode = PrecisionMode::Double;
    v.bits = 53;
    const SingularValueRange s = sigma_extremes(a);
    const DetResult d = det_double(a);
    v.min_singular = s.sigma_min;
    v.abs_det = std::abs(d.value);
    v.error_bound = d.error_bound;
    const double threshold = zero_tol * std::max(1.0, s.sigma_max);
    if (s.sigma_min <= threshold)
        v.status = Invertibility::Singular;
    else if (s.sigma_min < 10.0 * threshold)
        v.status = Invertibility::Inconclusive;
    else
        v.status = Invertibility::Invertible;
    return v;
}

InvertibilityVerdict assess_extended(const CMatrix& a, unsigned bits) {
    InvertibilityVerdict v;
    v.mode = PrecisionMode::Extended;
    v.bits = bits;
    v.min_singular = sigma_extremes(a).sigma_min;
    const extended::BallDet d = extended::determinant(a, bits);
    v.abs_det = d.abs_value;
    v.error_bound = d.error_bound;
    v.status = d.contains_zero ? Invertibility::Singular : Invertibility::Invertible;
    return v;
}

} // namespace

DetResult det(const CMatrix& a, const PrecisionConfig& cfg) {
    require_square(a, "det");
    cfg.validate();
    if (cfg.mode == PrecisionMode::Double) return det_double(a);
    const extended::BallDet d = extended::determinant(a, cfg.bits);
    return {d.value, d.error_bound};
}

SingularValueRange sigma_extremes(const CMatrix& a) {
    require_square(a, "sigma_extremes");
    const std::size_t n = a.rows();
    if (n == 0) return {0.0, 0.0};
    if (n == 1) {
        const double m = std::abs(a(0, 0));
        return {m, m};
    }
    Eigen::JacobiSVD<EigenMatrix> svd(as_eigen(a));
    const auto& s = svd.singularValues();
    return {s(s.size() - 1), s(0)};
}

EigenRange hermitian_eigen_range(const CMatrix& g, double rel_tol) {
    require_square(g, "hermitian_eigen_range");
    const std::size_t n = g.rows();
    double scale = 1.0;
    for (const auto& z : g.data()) scale = std::max(scale, std::abs(z));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (std::abs(g(i, j) - std::conj(g(j, i))) > rel_tol * scale)
                throw SymmetryError("matrix is not Hermitian at (" + std::to_string(i) + ", " + std::to_string(j) +
                                    ")");
    if (n == 0) return {0.0, 0.0};
    if (n == 1) return {g(0, 0).real(), g(0, 0).real()};
    Eigen::SelfAdjointEigenSolver<EigenMatrix> es(as_eigen(g), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return {ev(0), ev(ev.size() - 1)};
}

InvertibilityVerdict assess_invertibility(const CMatrix& a, const PrecisionConfig& cfg) {
    require_square(a, "assess_invertibility");
    cfg.validate();
    if (cfg.mode == PrecisionMode::Extended) return assess_extended(a, cfg.bits);
    return assess_double(a, cfg.zero_tol);
}

InvertibilityVerdict certify_invertibility(const CMatrix& a, const PrecisionConfig& cfg) {
    InvertibilityVerdict v = assess_invertibility(a, cfg);
    if (v.status == Invertibility::Inconclusive) v = assess_extended(a, cfg.escalation_bits);
    return v;
}

CVector lu_solve(const CMatrix& a, std::span<const CScalar> b) {
    require_square(a, "solve");
    if (b.size() != a.rows()) throw DimensionError("solve: right-hand side length mismatch");
    return lu_apply(lu_partial(a), b);
}

CVector solve(const CMatrix& a, std::span<const CScalar> b, const PrecisionConfig& cfg) {
    require_square(a, "solve");
    if (b.size() != a.rows()) throw DimensionError("solve: right-hand side length mismatch");
    const InvertibilityVerdict v = certify_invertibility(a, cfg);
    if (!v.invertible())
        throw SingularSystemError("solve: system matrix is " + std::string(to_string(v.status)), v);
    if (cfg.mode == PrecisionMode::Extended) {
        extended::DetWorkspace ws(a.rows(), cfg.bits);
        ws.resize(a.rows());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) ws.at(i, j).set(a(i, j));
        return ws.solve(b);
    }
    return lu_solve(a, b);
}

CMatrix inverse(const CMatrix& a, const PrecisionConfig& cfg) {
    require_square(a, "inverse");
    const InvertibilityVerdict v = certify_invertibility(a, cfg);
    if (!v.invertible()) throw SingularSystemError("inverse: matrix is " + std::string(to_string(v.status)), v);
    const std::size_t n = a.rows();
    const LuFactors f = lu_partial(a);
    CMatrix inv(n, n);
    CVector e(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(e.begin(), e.end(), CScalar{0.0, 0.0});
        e[j] = 1.0;
        const CVector col = lu_apply(f, e);
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return inv;
}

} // namespace woven
