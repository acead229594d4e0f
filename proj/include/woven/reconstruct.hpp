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

#include "woven/index_set.hpp"
#include "woven/matrix.hpp"
#include "woven/numeric.hpp"

namespace woven {

/// Y_J(x): values[j] = (Ax)(j) for j in J and x(j) otherwise.
struct MixedSamples {
    IndexSet J;
    CVector values;
};

/// Recovery is impossible because the central block at J is singular.
class RecoveryImpossible : public Error {
public:
    RecoveryImpossible(const std::string& what, IndexSet j, InvertibilityVerdict verdict)
        : Error(what), j_(std::move(j)), verdict_(verdict) {}
    const IndexSet& witness() const noexcept { return j_; }
    const InvertibilityVerdict& verdict() const noexcept { return verdict_; }

private:
    IndexSet j_;
    InvertibilityVerdict verdict_;
};

/// A(J): row j of A for j in J, the j-th unit row otherwise.
CMatrix weaving_operator(const CMatrix& a, const IndexSet& j);

MixedSamples sample(const CMatrix& a, const IndexSet& j, std::span<const CScalar> x);

/// Solves A(J) x = s.values. The central block A_J decides invertibility
/// (det A(J) = det A_J); an empty J returns the samples unchanged.
CVector recover(const CMatrix& a, const MixedSamples& s, const PrecisionConfig& cfg);

/// Recovers x from (Ax)(j), j in J, and (Bx)(j), j not in J.
CVector two_matrix_recover(const CMatrix& a, const CMatrix& b, const IndexSet& j, std::span<const CScalar> mixed,
                           const PrecisionConfig& cfg);

} // namespace woven
