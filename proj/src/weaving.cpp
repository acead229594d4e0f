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

#include "woven/weaving.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "enumerate.hpp"

namespace woven {

std::string_view to_string(ClassW status) noexcept {
    switch (status) {
    case ClassW::InW: return "in_W";
    case ClassW::NotInW: return "not_in_W";
    case ClassW::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

std::string_view to_string(FastPath path) noexcept {
    switch (path) {
    case FastPath::None: return "none";
    case FastPath::Triangular: return "triangular";
    case FastPath::HermitianDefinite: return "hermitian_definite";
    }
    return "unknown";
}

CMatrix central_submatrix(const CMatrix& a, const IndexSet& j) {
    require_square(a, "central_submatrix");
    if (j.ambient() != a.rows())
        throw DimensionError("index set ambient size " + std::to_string(j.ambient()) + " does not match matrix size " +
                             std::to_string(a.rows()));
    if (j.empty()) throw ArgumentError("central_submatrix: J must be nonempty");
    const std::size_t k = j.size();
    CMatrix out(k, k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) out(r, c) = a(j[r], j[c]);
    return out;
}

namespace {

CMatrix central_by_mask(const CMatrix& a, std::uint64_t mask) {
    const int k = std::popcount(mask);
    std::size_t idx[64];
    int m = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        if ((mask >> i) & 1U) idx[m++] = i;
    CMatrix out(k, k);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) out(r, c) = a(idx[r], idx[c]);
    return out;
}

detail::SubsetOutcome decide(const CMatrix& block, const PrecisionConfig& cfg) {
    const InvertibilityVerdict v = certify_invertibility(block, cfg);
    detail::SubsetOutcome o;
    o.status = v.status;
    o.sigma = v.min_singular;
    o.abs_det = v.abs_det;
    o.error_bound = v.error_bound;
    o.bits = v.bits;
    o.escalated = cfg.mode == PrecisionMode::Double && v.mode == PrecisionMode::Extended;
    return o;
}

bool is_triangular(const CMatrix& a) {
    const std::size_t n = a.rows();
    bool lower = true;
    bool upper = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (a(i, j) == CScalar{0.0, 0.0}) continue;
            if (j > i) lower = false;
            if (j < i) upper = false;
        }
    return lower || upper;
}

// Triangular T: central blocks are triangular with a subset of the diagonal.
// For the comparison matrix M (|t_ii| on the diagonal, -|t_ij| elsewhere),
// |T_J^{-1}| <= M_J^{-1} <= (M^{-1})_J entrywise, hence
// sigma_min(T_J) >= 1 / ||M^{-1}||_2 for every J.
std::optional<WeavingCertificate> triangular_path(const CMatrix& a, const PrecisionConfig& cfg) {
    const std::size_t n = a.rows();
    if (!is_triangular(a)) return std::nullopt;
    CMatrix comparison(n, n);
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        CMatrix one(1, 1);
        one(0, 0) = a(i, i);
        if (!certify_invertibility(one, cfg).invertible()) return std::nullopt;
        diag[i] = std::abs(a(i, i));
        for (std::size_t j = 0; j < n; ++j) comparison(i, j) = i == j ? diag[i] : -std::abs(a(i, j));
    }
    WeavingCertificate cert;
    cert.status = ClassW::InW;
    cert.fast_path = FastPath::Triangular;
    cert.precision_used = cfg;
    const CMatrix m_inv = inverse(comparison, PrecisionConfig::double_mode(cfg.zero_tol));
    cert.min_sigma = 1.0 / sigma_extremes(m_inv).sigma_max;
    double below_one = 1.0;
    bool any_below = false;
    for (double d : diag)
        if (d < 1.0) {
            below_one *= d;
            any_below = true;
        }
    cert.min_abs_det = any_below ? below_one : *std::min_element(diag.begin(), diag.end());
    return cert;
}

// Hermitian definite: eigenvalues of every central block interlace inside
// [lambda_min, lambda_max], so min_sigma = min |lambda| exactly (J = full
// attains it) and |det A_J| >= m^{|J|}.
std::optional<WeavingCertificate> hermitian_path(const CMatrix& a, const PrecisionConfig& cfg) {
    EigenRange e;
    try {
        e = hermitian_eigen_range(a, cfg.rel_tol);
    } catch (const SymmetryError&) {
        return std::nullopt;
    }
    double m = 0.0;
    if (e.lambda_min > cfg.zero_tol)
        m = e.lambda_min;
    else if (e.lambda_max < -cfg.zero_tol)
        m = -e.lambda_max;
    else
        return std::nullopt;
    WeavingCertificate cert;
    cert.status = ClassW::InW;
    cert.fast_path = FastPath::HermitianDefinite;
    cert.precision_used = cfg;
    cert.min_sigma = m;
    cert.min_abs_det = std::min(m, std::pow(m, static_cast<double>(a.rows())));
    return cert;
}

WeavingCertificate enumerate_class_w(const CMatrix& a, const PrecisionConfig& cfg, unsigned threads) {
    const std::size_t n = a.rows();
    const std::uint64_t total = (std::uint64_t{1} << n) - 1;
    WeavingCertificate cert;
    cert.precision_used = cfg;
    if (total == 0) {
        cert.status = ClassW::InW;
        cert.min_sigma = std::numeric_limits<double>::infinity();
        cert.min_abs_det = std::numeric_limits<double>::infinity();
        return cert;
    }
    const detail::ScanSummary s = detail::scan_sequence(total, threads, [&] {
        return [&](std::uint64_t index) { return decide(central_by_mask(a, index + 1), cfg); };
    });
    cert.subsets_checked = s.checked;
    cert.min_sigma = s.min_sigma;
    cert.min_abs_det = s.min_abs_det;
    cert.escalations = s.escalations;
    if (s.singular_at) {
        cert.status = ClassW::NotInW;
        cert.worst_J = IndexSet::from_mask(n, *s.singular_at + 1);
    } else if (s.first_inconclusive) {
        cert.status = ClassW::Inconclusive;
        cert.worst_J = IndexSet::from_mask(n, *s.first_inconclusive + 1);
    } else {
        cert.status = ClassW::InW;
        cert.worst_J = IndexSet::from_mask(n, s.min_sigma_at + 1);
    }
    return cert;
}

} // namespace

WeavingCertificate classify_class_w(const CMatrix& a, const PrecisionConfig& cfg, const WeavingOptions& opts) {
    require_square(a, "classify_class_w");
    cfg.validate();
    if (a.rows() > opts.max_n || a.rows() > 62)
        throw SizeLimitError("classify_class_w: n = " + std::to_string(a.rows()) + " exceeds limit " +
                             std::to_string(std::min<std::size_t>(opts.max_n, 62)));
    if (!a.all_finite()) throw ArgumentError("classify_class_w: matrix has non-finite entries");
    if (opts.fast_paths && a.rows() > 0) {
        if (auto c = triangular_path(a, cfg)) return *c;
        if (auto c = hermitian_path(a, cfg)) return *c;
    }
    return enumerate_class_w(a, cfg, opts.threads);
}

CMatrix change_of_basis(const BasisPair& p, const PrecisionConfig& cfg) {
    require_square(p.v, "change_of_basis");
    require_square(p.w, "change_of_basis");
    if (p.v.rows() != p.w.rows()) throw DimensionError("change_of_basis: bases live in different dimensions");
    if (!certify_invertibility(p.v, cfg).invertible()) throw BasisError("first family is not a basis");
    if (!certify_invertibility(p.w, cfg).invertible()) throw BasisError("second family is not a basis");
    const std::size_t n = p.v.rows();
    CMatrix a(n, n);
    CVector col(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = p.w(i, j);
        const CVector x = lu_solve(p.v, col);
        for (std::size_t i = 0; i < n; ++i) a(i, j) = x[i];
    }
    return a;
}

WeavingCertificate are_woven(const BasisPair& p, const PrecisionConfig& cfg, const WeavingOptions& opts) {
    return classify_class_w(change_of_basis(p, cfg), cfg, opts);
}

namespace {

bool may_be_invertible(const CMatrix& block, const PrecisionConfig& cfg) {
    return !certify_invertibility(block, cfg).singular();
}

struct PermutationDfs {
    const CMatrix& a;
    const PrecisionConfig& cfg;
    const WeavingOptions& opts;
    std::size_t n;
    std::vector<std::size_t> sigma;
    std::vector<bool> used;
    PermutationSearch result;

    // Position i takes column c; prune on the new 1x1 and 2x2 central blocks.
    bool admissible(std::size_t i, std::size_t c) const {
        CMatrix one(1, 1);
        one(0, 0) = a(i, c);
        if (!may_be_invertible(one, cfg)) return false;
        for (std::size_t j = 0; j < i; ++j) {
            CMatrix two{{a(j, sigma[j]), a(j, c)}, {a(i, sigma[j]), a(i, c)}};
            if (!may_be_invertible(two, cfg)) return false;
        }
        return true;
    }

    bool descend(std::size_t i) {
        if (i == n) {
            CMatrix permuted(n, n);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) permuted(r, c) = a(r, sigma[c]);
            WeavingCertificate cert = classify_class_w(permuted, cfg, opts);
            ++result.candidates_classified;
            if (cert.status == ClassW::InW) {
                result.found = true;
                result.sigma = sigma;
                result.certificate = std::move(cert);
                return true;
            }
            if (cert.status == ClassW::Inconclusive) result.any_inconclusive = true;
            return false;
        }
        for (std::size_t c = 0; c < n; ++c) {
            if (used[c] || !admissible(i, c)) continue;
            used[c] = true;
            sigma[i] = c;
            if (descend(i + 1)) return true;
            used[c] = false;
        }
        return false;
    }
};

} // namespace

PermutationSearch woven_up_to_permutation(const BasisPair& p, const PrecisionConfig& cfg, std::size_t max_n,
                                          const WeavingOptions& opts) {
    if (p.v.rows() > max_n)
        throw SizeLimitError("woven_up_to_permutation: n = " + std::to_string(p.v.rows()) + " exceeds limit " +
                             std::to_string(max_n));
    const CMatrix a = change_of_basis(p, cfg);
    const std::size_t n = a.rows();
    PermutationDfs dfs{a, cfg, opts, n, std::vector<std::size_t>(n), std::vector<bool>(n, false), {}};
    dfs.descend(0);
    return dfs.result;
}

MinorScan all_minors_nonzero(const CMatrix& a, const PrecisionConfig& cfg, std::size_t max_n) {
    require_square(a, "all_minors_nonzero");
    cfg.validate();
    const std::size_t n = a.rows();
    if (n > max_n || n > 62)
        throw SizeLimitError("all_minors_nonzero: n = " + std::to_string(n) + " exceeds limit " +
                             std::to_string(max_n));
    std::vector<std::vector<std::uint64_t>> by_size(n + 1);
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) by_size[std::popcount(m)].push_back(m);
    MinorScan scan;
    for (std::size_t k = 1; k <= n; ++k)
        for (std::uint64_t rm : by_size[k]) {
            const IndexSet rows = IndexSet::from_mask(n, rm);
            for (std::uint64_t cm : by_size[k]) {
                const IndexSet cols = IndexSet::from_mask(n, cm);
                CMatrix block(k, k);
                for (std::size_t r = 0; r < k; ++r)
                    for (std::size_t c = 0; c < k; ++c) block(r, c) = a(rows[r], cols[c]);
                const InvertibilityVerdict v = certify_invertibility(block, cfg);
                ++scan.minors_checked;
                if (v.singular()) {
                    scan.holds = false;
                    scan.witness = Minor{rows, cols};
                    return scan;
                }
                if (v.status == Invertibility::Inconclusive) scan.inconclusive = true;
            }
        }
    scan.holds = !scan.inconclusive;
    return scan;
}

CMatrix apply_symmetry(const CMatrix& a, const Symmetry& sym, const PrecisionConfig& cfg) {
    require_square(a, "apply_symmetry");
    const std::size_t n = a.rows();
    struct Visitor {
        const CMatrix& a;
        const PrecisionConfig& cfg;
        std::size_t n;
        CMatrix operator()(const symmetry::Inverse&) const { return inverse(a, cfg); }
        CMatrix operator()(const symmetry::Transpose&) const { return a.transpose(); }
        CMatrix operator()(const symmetry::Adjoint&) const { return a.adjoint(); }
        CMatrix operator()(const symmetry::ConjDiag& s) const {
            if (s.d.size() != n) throw DimensionError("conj_diag: diagonal length mismatch");
            for (const auto& z : s.d)
                if (z == CScalar{0.0, 0.0}) throw ArgumentError("conj_diag: diagonal entries must be nonzero");
            CMatrix out(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) out(i, j) = std::conj(s.d[i]) * a(i, j) * s.d[j];
            return out;
        }
        CMatrix operator()(const symmetry::ConjPerm& s) const {
            if (s.p.size() != n) throw DimensionError("conj_perm: permutation length mismatch");
            std::vector<bool> seen(n, false);
            for (std::size_t v : s.p) {
                if (v >= n || seen[v]) throw ArgumentError("conj_perm: not a permutation");
                seen[v] = true;
            }
            CMatrix out(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) out(i, j) = a(s.p[i], s.p[j]);
            return out;
        }
    };
    return std::visit(Visitor{a, cfg, n}, sym);
}

void FinitePerturbation::validate() const {
    for (std::size_t i = 1; i < support.size(); ++i)
        if (support[i] <= support[i - 1]) throw ArgumentError("perturbation support must be strictly increasing");
    if (block.rows() != support.size() || block.cols() != support.size())
        throw DimensionError("perturbation block must be |support| x |support|");
    if (!block.all_finite()) throw ArgumentError("perturbation block has non-finite entries");
}

WeavingCertificate classify_finite_perturbation(const FinitePerturbation& fp, const PrecisionConfig& cfg,
                                                const WeavingOptions& opts) {
    fp.validate();
    if (fp.support.size() > 24)
        throw SizeLimitError("classify_finite_perturbation: support size " + std::to_string(fp.support.size()) +
                             " exceeds 24");
    const std::size_t s = fp.support.size();
    CMatrix shifted = fp.block;
    for (std::size_t i = 0; i < s; ++i) shifted(i, i) += 1.0;
    WeavingOptions local = opts;
    local.max_n = std::max<std::size_t>(opts.max_n, s);
    WeavingCertificate cert = classify_class_w(shifted, cfg, local);
    cert.min_sigma = std::min(1.0, cert.min_sigma);
    cert.min_abs_det = std::min(1.0, cert.min_abs_det);
    if (cert.worst_J) {
        std::vector<std::size_t> ambient;
        for (std::size_t k : *cert.worst_J) ambient.push_back(fp.support[k]);
        cert.worst_J = IndexSet(fp.support.back() + 1, std::move(ambient));
    }
    return cert;
}

DiagonalDominance dr_criterion(const FinitePerturbation& fp) {
    fp.validate();
    const std::size_t s = fp.support.size();
    DiagonalDominance out;
    out.sup_d = 1.0;
    CMatrix r = fp.block;
    for (std::size_t i = 0; i < s; ++i) {
        out.sup_d = std::max(out.sup_d, std::abs(1.0 + fp.block(i, i)));
        r(i, i) = 0.0;
    }
    out.norm_r = s == 0 ? 0.0 : sigma_extremes(r).sigma_max;
    out.satisfied = 2.0 * out.norm_r <= out.sup_d;
    return out;
}

} // namespace woven
