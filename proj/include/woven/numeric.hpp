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

#include <span>
#include <string_view>

#include "woven/errors.hpp"
#include "woven/matrix.hpp"

namespace woven {

enum class PrecisionMode { Double, Extended };

std::string_view to_string(PrecisionMode mode) noexcept;

/// Arithmetic and zero-test settings shared by every decision procedure.
struct PrecisionConfig {
    PrecisionMode mode = PrecisionMode::Double;
    /// Mantissa bits in extended mode; 53 in double mode.
    unsigned bits = 53;
    /// Double-mode singularity threshold, relative to max(1, sigma_max).
    double zero_tol = 1e-9;
    /// Relative tolerance for residual and symmetry checks.
    double rel_tol = 1e-10;
    /// Precision used when a double-mode verdict lands in the inconclusive band.
    unsigned escalation_bits = 192;

    static PrecisionConfig double_mode(double zero_tol = 1e-9);
    static PrecisionConfig extended(unsigned bits);

    /// Throws ArgumentError when a field is out of range.
    void validate() const;

    friend bool operator==(const PrecisionConfig&, const PrecisionConfig&) = default;
};

enum class Invertibility { Invertible, Singular, Inconclusive };

std::string_view to_string(Invertibility status) noexcept;

struct InvertibilityVerdict {
    Invertibility status = Invertibility::Inconclusive;
    double min_singular = 0.0;
    double abs_det = 0.0;
    double error_bound = 0.0;
    PrecisionMode mode = PrecisionMode::Double;
    unsigned bits = 53;

    bool invertible() const noexcept { return status == Invertibility::Invertible; }
    bool singular() const noexcept { return status == Invertibility::Singular; }
};

/// Raised by solve() when the system matrix is not certified invertible.
class SingularSystemError : public Error {
public:
    SingularSystemError(const std::string& what, InvertibilityVerdict verdict)
        : Error(what), verdict_(verdict) {}
    const InvertibilityVerdict& verdict() const noexcept { return verdict_; }

private:
    InvertibilityVerdict verdict_;
};

struct DetResult {
    CScalar value;
    /// Bound on |value - exact determinant of the stored entries|.
    double error_bound = 0.0;
};

/// Determinant by pivoted elimination. Double mode uses partial pivoting and
/// a Hadamard-scaled roundoff estimate; extended mode uses full pivoting in
/// ball arithmetic and the bound is rigorous for the stored entries.
DetResult det(const CMatrix& a, const PrecisionConfig& cfg);

/// Solves a x = b. Throws SingularSystemError unless `a` is certified
/// invertible (double mode escalates the inconclusive band).
CVector solve(const CMatrix& a, std::span<const CScalar> b, const PrecisionConfig& cfg);

struct SingularValueRange {
    double sigma_min = 0.0;
    double sigma_max = 0.0;
};

SingularValueRange sigma_extremes(const CMatrix& a);

struct EigenRange {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

/// Extreme eigenvalues of a Hermitian matrix. Throws SymmetryError when
/// |g - g*| exceeds rel_tol * max(1, max|g|).
EigenRange hermitian_eigen_range(const CMatrix& g, double rel_tol = 1e-10);

/// Invertibility decision at the configured precision only. Double mode
/// reports Inconclusive when sigma_min lies in (thr, 10 thr) with
/// thr = zero_tol * max(1, sigma_max).
InvertibilityVerdict assess_invertibility(const CMatrix& a, const PrecisionConfig& cfg);

/// assess_invertibility, re-deciding an inconclusive double-mode verdict at
/// cfg.escalation_bits.
InvertibilityVerdict certify_invertibility(const CMatrix& a, const PrecisionConfig& cfg);

/// Solution of a x = b with a known invertible; no verdict is computed.
CVector lu_solve(const CMatrix& a, std::span<const CScalar> b);

/// Inverse by LU; throws SingularSystemError when not certified invertible.
CMatrix inverse(const CMatrix& a, const PrecisionConfig& cfg);

} // namespace woven
