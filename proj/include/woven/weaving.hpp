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

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "woven/index_set.hpp"
#include "woven/matrix.hpp"
#include "woven/numeric.hpp"

namespace woven {

enum class ClassW { InW, NotInW, Inconclusive };

std::string_view to_string(ClassW status) noexcept;

/// Structural shortcut that decided a certificate without enumeration.
enum class FastPath { None, Triangular, HermitianDefinite };

std::string_view to_string(FastPath path) noexcept;

/// Outcome of a class-W decision.
///
/// With FastPath::None every nonempty subset up to the witness (or all of
/// them) was decided and min_sigma / min_abs_det are exact minima over those
/// subsets. With a fast path no subset is enumerated and both values are
/// certified lower bounds.
struct WeavingCertificate {
    ClassW status = ClassW::Inconclusive;
    /// Singular witness (NotInW), first undecided subset (Inconclusive) or the
    /// subset attaining min_sigma (InW, enumerated).
    std::optional<IndexSet> worst_J;
    double min_sigma = 0.0;
    double min_abs_det = 0.0;
    std::uint64_t subsets_checked = 0;
    PrecisionConfig precision_used;
    FastPath fast_path = FastPath::None;
    /// Subsets re-decided at extended precision.
    std::uint64_t escalations = 0;
};

struct WeavingOptions {
    std::size_t max_n = 24;
    /// 0 picks the hardware concurrency.
    unsigned threads = 0;
    bool fast_paths = true;
};

/// (a_{j,k}) for j, k in J, in J's order.
CMatrix central_submatrix(const CMatrix& a, const IndexSet& j);

/// Decides whether every central submatrix of `a` is invertible.
WeavingCertificate classify_class_w(const CMatrix& a, const PrecisionConfig& cfg, const WeavingOptions& opts = {});

/// Columns of V and W are the two bases.
struct BasisPair {
    CMatrix v;
    CMatrix w;
};

/// A = V^{-1} W, so column i of W equals V times column i of A.
CMatrix change_of_basis(const BasisPair& p, const PrecisionConfig& cfg);

WeavingCertificate are_woven(const BasisPair& p, const PrecisionConfig& cfg, const WeavingOptions& opts = {});

struct PermutationSearch {
    bool found = false;
    /// Column i of the reindexed second basis is column sigma[i] of W.
    std::optional<std::vector<std::size_t>> sigma;
    std::optional<WeavingCertificate> certificate;
    /// Permutations that survived pruning and were fully classified.
    std::uint64_t candidates_classified = 0;
    /// Some candidate ended inconclusive, so "not found" is not a proof.
    bool any_inconclusive = false;
};

/// Lexicographically first sigma making (V, W o sigma) woven.
PermutationSearch woven_up_to_permutation(const BasisPair& p, const PrecisionConfig& cfg, std::size_t max_n = 8,
                                          const WeavingOptions& opts = {});

struct Minor {
    IndexSet rows;
    IndexSet cols;
};

struct MinorScan {
    bool holds = false;
    std::optional<Minor> witness;
    bool inconclusive = false;
    std::uint64_t minors_checked = 0;
};

/// Every square submatrix invertible? Visits sizes ascending, then row and
/// column masks ascending; the witness is the first singular minor.
MinorScan all_minors_nonzero(const CMatrix& a, const PrecisionConfig& cfg, std::size_t max_n = 12);

namespace symmetry {
struct Inverse {};
struct Transpose {};
struct Adjoint {};
/// D* A D with D = diag(d).
struct ConjDiag {
    CVector d;
};
/// P* A P where P e_j = e_{p[j]}; entry (i, j) becomes a(p[i], p[j]).
struct ConjPerm {
    std::vector<std::size_t> p;
};
} // namespace symmetry

using Symmetry =
    std::variant<symmetry::Inverse, symmetry::Transpose, symmetry::Adjoint, symmetry::ConjDiag, symmetry::ConjPerm>;

CMatrix apply_symmetry(const CMatrix& a, const Symmetry& sym, const PrecisionConfig& cfg = {});

/// The l2 operator I + E with E zero outside support x support.
struct FinitePerturbation {
    std::vector<std::size_t> support;
    CMatrix block;

    /// Throws unless support is strictly increasing and block is |S| x |S|.
    void validate() const;
};

/// Central submatrices of I + E split as (I + E)_{J cap S} (+) I, so only
/// subsets of the support are enumerated. min_sigma = min(1, min_T sigma_min).
/// worst_J is expressed in ambient indices (n = max(S) + 1).
WeavingCertificate classify_finite_perturbation(const FinitePerturbation& fp, const PrecisionConfig& cfg,
                                                const WeavingOptions& opts = {});

struct DiagonalDominance {
    bool satisfied = false;
    double norm_r = 0.0;
    double sup_d = 0.0;
};

/// Splits I + E into diagonal D and off-diagonal R and tests 2 ||R|| <= sup |d_nn|.
/// The identity tail contributes d_nn = 1 to the supremum.
DiagonalDominance dr_criterion(const FinitePerturbation& fp);

} // namespace woven
