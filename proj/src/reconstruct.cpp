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

#include "woven/reconstruct.hpp"

#include <string>

#include "woven/weaving.hpp"

namespace woven {

namespace {

void require_ambient(const CMatrix& a, const IndexSet& j, const char* what) {
    require_square(a, what);
    if (j.ambient() != a.rows())
        throw DimensionError(std::string(what) + ": index set ambient size does not match matrix size");
}

} // namespace

CMatrix weaving_operator(const CMatrix& a, const IndexSet& j) {
    require_ambient(a, j, "weaving_operator");
    const std::size_t n = a.rows();
    CMatrix out = CMatrix::identity(n);
    for (std::size_t r : j)
        for (std::size_t c = 0; c < n; ++c) out(r, c) = a(r, c);
    return out;
}

MixedSamples sample(const CMatrix& a, const IndexSet& j, std::span<const CScalar> x) {
    require_ambient(a, j, "sample");
    if (x.size() != a.rows()) throw DimensionError("sample: vector length does not match matrix size");
    return {j, weaving_operator(a, j) * x};
}

CVector recover(const CMatrix& a, const MixedSamples& s, const PrecisionConfig& cfg) {
    require_ambient(a, s.J, "recover");
    if (s.values.size() != a.rows()) throw DimensionError("recover: sample length does not match matrix size");
    if (s.J.empty()) return s.values;
    const InvertibilityVerdict v = certify_invertibility(central_submatrix(a, s.J), cfg);
    if (!v.invertible())
        throw RecoveryImpossible("recover: central block at " + s.J.to_string() + " is " +
                                     std::string(to_string(v.status)),
                                 s.J, v);
    const CMatrix op = weaving_operator(a, s.J);
    if (cfg.mode == PrecisionMode::Extended) return solve(op, s.values, cfg);
    return lu_solve(op, s.values);
}

CVector two_matrix_recover(const CMatrix& a, const CMatrix& b, const IndexSet& j, std::span<const CScalar> mixed,
                           const PrecisionConfig& cfg) {
    require_ambient(a, j, "two_matrix_recover");
    require_square(b, "two_matrix_recover");
    if (b.rows() != a.rows() || mixed.size() != a.rows())
        throw DimensionError("two_matrix_recover: operand sizes differ");
    if (!certify_invertibility(b, cfg).invertible()) throw ArgumentError("two_matrix_recover: B must be invertible");
    const std::size_t n = a.rows();
    CMatrix stacked(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        const CMatrix& src = j.contains(r) ? a : b;
        for (std::size_t c = 0; c < n; ++c) stacked(r, c) = src(r, c);
    }
    try {
        return solve(stacked, mixed, cfg);
    } catch (const SingularSystemError& e) {
        throw RecoveryImpossible("two_matrix_recover: mixed system at " + j.to_string() + " is " +
                                     std::string(to_string(e.verdict().status)),
                                 j, e.verdict());
    }
}

} // namespace woven
