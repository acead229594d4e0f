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

#include "woven/fourier.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "enumerate.hpp"
#include "woven/extended.hpp"

namespace woven {

namespace {

using extended::Ball;
using extended::BallDet;
using extended::DetWorkspace;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// zeta^e for 0 <= e <= n/2; the rest follow by conjugation.
CScalar root_of_unity(std::size_t e, std::size_t n) {
    if ((4 * e) % n == 0) {
        switch ((4 * e) / n) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
        }
    }
    if (2 * e > n) return std::conj(root_of_unity(n - e, n));
    const double t = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n);
    return {std::cos(t), std::sin(t)};
}

// zeta^e, e = 0..n-1, as balls at `bits`. Off the quarter turns the value is
// evaluated with 32 guard bits and rounded once, so each component is within
// 2^-bits (plus a guard-bit term) of the exact value.
std::vector<Ball> root_table(std::size_t n, unsigned bits) {
    std::vector<Ball> table;
    table.reserve(n);
    const mpfr_prec_t work = static_cast<mpfr_prec_t>(bits) + 32;
    extended::BigFloat t(work), c(work), s(work);
    const long double radius = std::ldexp(4.0L, -static_cast<int>(bits));
    for (std::size_t e = 0; e < n; ++e) {
        Ball z(bits);
        if ((4 * e) % n == 0) {
            z.set(root_of_unity(e, n));
        } else if (2 * e > n) {
            z.set(table[n - e]);
            mpfr_neg(z.im.get(), z.im.get(), MPFR_RNDN);
        } else {
            mpfr_const_pi(t.get(), MPFR_RNDN);
            mpfr_mul_ui(t.get(), t.get(), 2 * e, MPFR_RNDN);
            mpfr_div_ui(t.get(), t.get(), n, MPFR_RNDN);
            mpfr_sin_cos(s.get(), c.get(), t.get(), MPFR_RNDN);
            mpfr_set(z.re.get(), c.get(), MPFR_RNDN);
            mpfr_set(z.im.get(), s.get(), MPFR_RNDN);
            z.rad = radius;
        }
        table.push_back(std::move(z));
    }
    return table;
}

std::vector<unsigned> precision_ladder(unsigned start, unsigned cap) {
    std::vector<unsigned> levels{start};
    while (levels.back() < cap) levels.push_back(std::min(cap, 2 * levels.back()));
    return levels;
}

struct RootTables {
    std::size_t n;
    std::vector<unsigned> levels;
    std::vector<std::vector<Ball>> tables;

    RootTables(std::size_t n_, unsigned start, unsigned cap) : n(n_), levels(precision_ladder(start, cap)) {
        for (unsigned b : levels) tables.push_back(root_table(n, b));
    }
};

// Decides one submatrix of F_n given by row and column index lists.
//
// An enclosure excluding zero proves invertibility. An enclosure containing
// zero counts as singular once it does so at two consecutive precisions and
// its radius shrinks by at least half the added bits (a nonzero determinant
// would eventually be separated from zero). Otherwise the precision doubles;
// past the cap the subset stays inconclusive.
class MinorDecider {
public:
    explicit MinorDecider(const RootTables& roots) : roots_(roots) {
        for (unsigned b : roots.levels) ws_.emplace_back(roots.n, b);
    }

    detail::SubsetOutcome operator()(const std::size_t* rows, const std::size_t* cols, std::size_t k) {
        detail::SubsetOutcome o;
        std::optional<BallDet> previous;
        for (std::size_t level = 0; level < ws_.size(); ++level) {
            const BallDet d = evaluate(level, rows, cols, k);
            o.bits = d.bits;
            o.abs_det = d.abs_value;
            o.sigma = d.abs_value;
            o.error_bound = d.error_bound;
            o.escalated = level > 0;
            if (!d.contains_zero) {
                o.status = Invertibility::Invertible;
                return o;
            }
            if (d.error_bound == 0.0) {
                o.status = Invertibility::Singular;
                return o;
            }
            if (previous) {
                const int gained = static_cast<int>(roots_.levels[level] - roots_.levels[level - 1]);
                if (d.error_bound <= std::ldexp(previous->error_bound, -gained / 2)) {
                    o.status = Invertibility::Singular;
                    return o;
                }
            }
            previous = d;
        }
        o.status = Invertibility::Inconclusive;
        return o;
    }

private:
    BallDet evaluate(std::size_t level, const std::size_t* rows, const std::size_t* cols, std::size_t k) {
        DetWorkspace& ws = ws_[level];
        const std::vector<Ball>& table = roots_.tables[level];
        ws.resize(k);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) ws.at(r, c).set(table[(rows[r] * cols[c]) % roots_.n]);
        return ws.determinant();
    }

    const RootTables& roots_;
    std::vector<DetWorkspace> ws_;
};

std::size_t members_of(std::uint64_t mask, std::size_t* out) {
    std::size_t k = 0;
    for (std::size_t i = 0; mask != 0; ++i, mask >>= 1)
        if (mask & 1U) out[k++] = i;
    return k;
}

unsigned start_bits(const PrecisionConfig& cfg) {
    return cfg.mode == PrecisionMode::Extended ? cfg.bits : cfg.escalation_bits;
}

} // namespace

CMatrix fourier_matrix(std::size_t n) {
    if (n == 0) throw ArgumentError("fourier_matrix: n must be at least 1");
    std::vector<CScalar> roots(n);
    for (std::size_t e = 0; e < n; ++e) roots[e] = root_of_unity(e, n);
    CMatrix f(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) f(j, k) = roots[(j * k) % n];
    return f;
}

SquareFree is_square_free(std::size_t n) {
    if (n < 2) throw ArgumentError("is_square_free: n must be at least 2");
    for (std::size_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        if ((n / p) % p == 0) return {false, p};
        n /= p;
    }
    return {true, std::nullopt};
}

std::optional<IndexSet> two_by_two_witness(std::size_t n) {
    const SquareFree sf = is_square_free(n);
    if (sf.flag) return std::nullopt;
    const std::size_t p = *sf.factor;
    const std::size_t pq = n / p;
    return IndexSet(n, {0, pq});
}

FourierScanRow classify_fourier(std::size_t n, const PrecisionConfig& cfg, const FourierOptions& opts) {
    if (n == 0) throw ArgumentError("classify_fourier: n must be at least 1");
    cfg.validate();
    if (n > opts.max_n || n > 62)
        throw SizeLimitError("classify_fourier: n = " + std::to_string(n) + " exceeds limit " +
                             std::to_string(std::min<std::size_t>(opts.max_n, 62)));
    const auto start = std::chrono::steady_clock::now();
    const unsigned bits = start_bits(cfg);
    if (opts.cap_bits < bits) throw ArgumentError("classify_fourier: cap_bits is below the starting precision");

    FourierScanRow row;
    row.n = n;
    row.square_free = n == 1 || is_square_free(n).flag;
    const RootTables roots(n, bits, opts.cap_bits);

    if (!row.square_free && opts.square_free_fast_path) {
        const IndexSet w = *two_by_two_witness(n);
        MinorDecider decide(roots);
        const std::size_t idx[2] = {w[0], w[1]};
        const detail::SubsetOutcome o = decide(idx, idx, 2);
        row.in_W = o.status == Invertibility::Singular ? ClassW::NotInW : ClassW::Inconclusive;
        row.witness_J = w;
        row.min_abs_det = o.abs_det;
        row.min_abs_det_error = o.error_bound;
        row.precision_bits = o.bits;
        row.seconds = seconds_since(start);
        return row;
    }

    // Reduced enumeration visits masks 1 | (i << 1); the full one visits i + 1.
    const bool reduced = opts.reduce_to_zero;
    const std::uint64_t total = reduced ? (std::uint64_t{1} << (n - 1)) : (std::uint64_t{1} << n) - 1;
    auto mask_at = [reduced](std::uint64_t i) { return reduced ? (1 | (i << 1)) : i + 1; };
    const detail::ScanSummary s = detail::scan_sequence(total, opts.threads, [&] {
        return [decide = std::make_shared<MinorDecider>(roots), &mask_at](std::uint64_t i) {
            std::size_t idx[64];
            const std::size_t k = members_of(mask_at(i), idx);
            return (*decide)(idx, idx, k);
        };
    });
    row.subsets_checked = s.checked;
    row.precision_bits = s.max_bits;
    row.escalations = s.escalations;
    if (s.singular_at) {
        row.in_W = ClassW::NotInW;
        row.witness_J = IndexSet::from_mask(n, mask_at(*s.singular_at));
        row.min_abs_det = s.singular_outcome.abs_det;
        row.min_abs_det_error = s.singular_outcome.error_bound;
    } else {
        row.in_W = s.first_inconclusive ? ClassW::Inconclusive : ClassW::InW;
        row.min_abs_det = s.min_abs_det;
        row.min_abs_det_error = s.min_abs_det_bound;
    }
    row.seconds = seconds_since(start);
    return row;
}

ScanReport scan(std::size_t n_lo, std::size_t n_hi, const PrecisionConfig& cfg, const FourierOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    ScanReport report;
    report.config = cfg;
    report.options = opts;
    if (n_lo > n_hi) return report;
    if (n_lo == 0) throw ArgumentError("scan: n must be at least 1");
    if (n_hi > opts.max_n)
        throw SizeLimitError("scan: n = " + std::to_string(n_hi) + " exceeds limit " + std::to_string(opts.max_n));
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
        FourierScanRow row = classify_fourier(n, cfg, opts);
        if (!row.square_free && row.in_W != ClassW::NotInW) report.contradictions.push_back(n);
        if (row.square_free && row.in_W == ClassW::NotInW) report.findings.push_back(n);
        if (row.in_W == ClassW::Inconclusive) report.inconclusive.push_back(n);
        report.rows.push_back(std::move(row));
    }
    report.seconds = seconds_since(start);
    return report;
}

MinorsReport minors_exhaustive(std::size_t n, const PrecisionConfig& cfg, std::size_t max_n,
                               const FourierOptions& opts) {
    if (n == 0) throw ArgumentError("minors_exhaustive: n must be at least 1");
    cfg.validate();
    if (n > max_n || n > 30)
        throw SizeLimitError("minors_exhaustive: n = " + std::to_string(n) + " exceeds limit " +
                             std::to_string(std::min<std::size_t>(max_n, 30)));
    const unsigned bits = start_bits(cfg);
    if (opts.cap_bits < bits) throw ArgumentError("minors_exhaustive: cap_bits is below the starting precision");
    const RootTables roots(n, bits, opts.cap_bits);

    std::vector<std::vector<std::uint32_t>> by_size(n + 1);
    for (std::uint32_t m = 1; m < (std::uint32_t{1} << n); ++m) by_size[std::popcount(m)].push_back(m);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> order;
    for (std::size_t k = 1; k <= n; ++k)
        for (std::uint32_t rm : by_size[k])
            for (std::uint32_t cm : by_size[k]) order.emplace_back(rm, cm);

    const detail::ScanSummary s = detail::scan_sequence(order.size(), opts.threads, [&] {
        return [decide = std::make_shared<MinorDecider>(roots), &order](std::uint64_t i) {
            std::size_t rows[32];
            std::size_t cols[32];
            const std::size_t k = members_of(order[i].first, rows);
            members_of(order[i].second, cols);
            return (*decide)(rows, cols, k);
        };
    });
    MinorsReport out;
    out.count = s.checked;
    out.precision_bits = s.max_bits;
    out.inconclusive = s.first_inconclusive.has_value();
    if (s.singular_at) {
        const auto [rm, cm] = order[*s.singular_at];
        out.witness = Minor{IndexSet::from_mask(n, rm), IndexSet::from_mask(n, cm)};
        out.min_abs = s.singular_outcome.abs_det;
        out.min_abs_error = s.singular_outcome.error_bound;
    } else {
        out.all_nonzero = !out.inconclusive;
        out.min_abs = s.min_abs_det;
        out.min_abs_error = s.min_abs_det_bound;
    }
    return out;
}

} // namespace woven
