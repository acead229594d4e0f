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

// Batch-synchronous subset scan shared by the class-W and Fourier searches.
//
// Items are visited in ascending sequence order. Each batch is split across
// workers, every outcome is stored by position, and the coordinator folds the
// batch serially. The first singular item therefore is the smallest one in
// sequence order and the folded statistics cover exactly the items up to it,
// whatever the worker count.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "woven/numeric.hpp"

namespace woven::detail {

struct SubsetOutcome {
    Invertibility status = Invertibility::Inconclusive;
    double sigma = 0.0;
    double abs_det = 0.0;
    double error_bound = 0.0;
    bool escalated = false;
    unsigned bits = 53;
};

struct ScanSummary {
    std::uint64_t checked = 0;
    std::optional<std::uint64_t> singular_at;
    std::optional<std::uint64_t> first_inconclusive;
    double min_sigma = std::numeric_limits<double>::infinity();
    std::uint64_t min_sigma_at = 0;
    double min_abs_det = std::numeric_limits<double>::infinity();
    double min_abs_det_bound = 0.0;
    std::uint64_t min_abs_det_at = 0;
    std::uint64_t escalations = 0;
    unsigned max_bits = 0;
    SubsetOutcome singular_outcome;
};

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// `make_worker()` returns a callable `SubsetOutcome(std::uint64_t index)`;
/// one is built per thread so workers can own scratch state.
template <class Factory>
ScanSummary scan_sequence(std::uint64_t total, unsigned threads, Factory&& make_worker) {
    ScanSummary summary;
    threads = std::max(1u, resolve_threads(threads));
    const std::uint64_t batch = std::max<std::uint64_t>(256, 256ull * threads);
    std::vector<SubsetOutcome> outcomes(static_cast<std::size_t>(std::min(batch, total)));

    using Worker = decltype(make_worker());
    std::vector<Worker> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) workers.push_back(make_worker());

    for (std::uint64_t start = 0; start < total; start += batch) {
        const std::uint64_t count = std::min(batch, total - start);
        if (threads == 1 || count < 2 * threads) {
            for (std::uint64_t i = 0; i < count; ++i) outcomes[i] = workers[0](start + i);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(threads);
            for (unsigned t = 0; t < threads; ++t)
                pool.emplace_back([&, t] {
                    for (std::uint64_t i = t; i < count; i += threads) outcomes[i] = workers[t](start + i);
                });
            for (auto& th : pool) th.join();
        }
        for (std::uint64_t i = 0; i < count; ++i) {
            const SubsetOutcome& o = outcomes[i];
            const std::uint64_t idx = start + i;
            ++summary.checked;
            summary.max_bits = std::max(summary.max_bits, o.bits);
            if (o.escalated) ++summary.escalations;
            if (o.sigma < summary.min_sigma) {
                summary.min_sigma = o.sigma;
                summary.min_sigma_at = idx;
            }
            if (o.abs_det < summary.min_abs_det) {
                summary.min_abs_det = o.abs_det;
                summary.min_abs_det_bound = o.error_bound;
                summary.min_abs_det_at = idx;
            }
            if (o.status == Invertibility::Inconclusive && !summary.first_inconclusive)
                summary.first_inconclusive = idx;
            if (o.status == Invertibility::Singular) {
                summary.singular_at = idx;
                summary.singular_outcome = o;
                return summary;
            }
        }
    }
    return summary;
}

} // namespace woven::detail
