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
#include <utility>
#include <vector>

#include "woven/index_set.hpp"
#include "woven/matrix.hpp"
#include "woven/numeric.hpp"
#include "woven/weaving.hpp"

namespace woven {

/// F_n with entry (j, k) = zeta^(jk mod n), zeta = e^{2 pi i / n}; unnormalized.
/// Equal exponents give bit-identical entries and quarter turns are exact.
CMatrix fourier_matrix(std::size_t n);

struct SquareFree {
    bool flag = true;
    /// Smallest prime p with p^2 | n when flag is false.
    std::optional<std::size_t> factor;
};

SquareFree is_square_free(std::size_t n);

/// {0, pq} when n = p^2 q, whose central block [[1,1],[1,1]] is singular.
std::optional<IndexSet> two_by_two_witness(std::size_t n);

struct FourierOptions {
    std::size_t max_n = 20;
    /// Enumerate only the subsets containing index 0.
    bool reduce_to_zero = true;
    /// Answer non-square-free n with the 2 x 2 witness instead of enumerating.
    bool square_free_fast_path = true;
    /// Escalation ceiling; a subset still undecided at this precision is inconclusive.
    unsigned cap_bits = 1024;
    /// 0 picks the hardware concurrency.
    unsigned threads = 0;
};

struct FourierScanRow {
    std::size_t n = 0;
    bool square_free = true;
    ClassW in_W = ClassW::Inconclusive;
    /// Smallest |det| over decided subsets (the witness block when not in W).
    double min_abs_det = 0.0;
    double min_abs_det_error = 0.0;
    std::optional<IndexSet> witness_J;
    std::uint64_t subsets_checked = 0;
    /// Highest precision any subset needed.
    unsigned precision_bits = 0;
    std::uint64_t escalations = 0;
    double seconds = 0.0;
};

/// Starting precision is cfg.bits in extended mode, cfg.escalation_bits otherwise.
FourierScanRow classify_fourier(std::size_t n, const PrecisionConfig& cfg, const FourierOptions& opts = {});

struct ScanReport {
    std::vector<FourierScanRow> rows;
    PrecisionConfig config;
    FourierOptions options;
    /// Non-square-free n not classified as outside W: contradicts a proven statement.
    std::vector<std::size_t> contradictions;
    /// Square-free n classified outside W: a counterexample candidate to the square-free criterion.
    std::vector<std::size_t> findings;
    std::vector<std::size_t> inconclusive;
    double seconds = 0.0;

    bool clean() const noexcept { return contradictions.empty() && findings.empty() && inconclusive.empty(); }
};

/// Rows for n_lo..n_hi; n_lo > n_hi gives an empty report.
ScanReport scan(std::size_t n_lo, std::size_t n_hi, const PrecisionConfig& cfg, const FourierOptions& opts = {});

struct MinorsReport {
    bool all_nonzero = false;
    std::uint64_t count = 0;
    double min_abs = 0.0;
    double min_abs_error = 0.0;
    std::optional<Minor> witness;
    bool inconclusive = false;
    unsigned precision_bits = 0;
};

/// Every square submatrix of F_n, sizes ascending, then row and column masks ascending.
MinorsReport minors_exhaustive(std::size_t n, const PrecisionConfig& cfg, std::size_t max_n = 11,
                               const FourierOptions& opts = {});

} // namespace woven
