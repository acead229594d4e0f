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

#include "woven/sis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "woven/errors.hpp"
#include "woven/kernels.hpp"
#include "woven/numeric.hpp"

namespace woven::sis {

namespace {

void require_same_grid(const SpectrumSamples& a, const SpectrumSamples& b, const char* what) {
    if (a.grid_size() != b.grid_size() || a.k_max() != b.k_max())
        throw GridMismatchError(std::string(what) + ": spectra differ in grid size or shelf count (G " +
                                std::to_string(a.grid_size()) + " vs " + std::to_string(b.grid_size()) + ", K " +
                                std::to_string(a.k_max()) + " vs " + std::to_string(b.k_max()) + ")");
}

void require_same_grid(const std::vector<SpectrumSamples>& gens, const char* what) {
    if (gens.empty()) throw ArgumentError(std::string(what) + ": no generators");
    for (const auto& g : gens) {
        g.validate();
        require_same_grid(gens.front(), g, what);
    }
}

double tail_mass(const SpectrumSamples& s) {
    const long k = static_cast<long>(s.k_max());
    double worst = 0.0;
    for (std::size_t g = 0; g < s.grid_size(); ++g) {
        double m = std::norm(s.at(k, g));
        if (k != 0) m += std::norm(s.at(-k, g));
        worst = std::max(worst, m);
    }
    return worst;
}

// acc[g] = sum_k |a_k(g) - b_k(g)|^2.
std::vector<double> difference_bracket(const SpectrumSamples& a, const SpectrumSamples& b) {
    const auto& kt = kernels::active();
    std::vector<double> acc(a.grid_size(), 0.0);
    const long k_max = static_cast<long>(a.k_max());
    for (long k = -k_max; k <= k_max; ++k) kt.accumulate_abs2_diff(a.grid_size(), a.shelf(k), b.shelf(k), acc.data());
    return acc;
}

// acc[g] = sum_k a_k(g) conj(b_k(g)).
std::vector<CScalar> cross_bracket(const SpectrumSamples& a, const SpectrumSamples& b) {
    const auto& kt = kernels::active();
    std::vector<CScalar> acc(a.grid_size(), CScalar{0.0, 0.0});
    const long k_max = static_cast<long>(a.k_max());
    for (long k = -k_max; k <= k_max; ++k)
        kt.accumulate_conj_product(a.grid_size(), a.shelf(k), b.shelf(k), acc.data());
    return acc;
}

SpectrumSamples difference(const SpectrumSamples& a, const SpectrumSamples& b) {
    std::vector<CScalar> v(a.values().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] - b.values()[i];
    return SpectrumSamples(a.grid_size(), a.k_max(), std::move(v));
}

SISCertificate make_certificate(double a_est, double b_est, double mu_est, const SpectrumSamples& grid) {
    SISCertificate c;
    c.A_est = a_est;
    c.B_est = b_est;
    c.mu_est = mu_est;
    c.margin = a_est - mu_est;
    c.grid_size = grid.grid_size();
    c.k_max = grid.k_max();
    c.status = (mu_est < a_est && a_est > 0.0) ? SISStatus::CertifiedWoven : SISStatus::NotCertified;
    return c;
}

} // namespace

std::string_view to_string(SISStatus status) noexcept {
    return status == SISStatus::CertifiedWoven ? "certified_woven" : "not_certified";
}

SpectrumSamples::SpectrumSamples(std::size_t grid_size, std::size_t k_max, std::vector<CScalar> values)
    : grid_(grid_size), k_max_(k_max), values_(std::move(values)) {
    validate();
}

SpectrumSamples SpectrumSamples::zeros(std::size_t grid_size, std::size_t k_max) {
    return SpectrumSamples(grid_size, k_max, std::vector<CScalar>((2 * k_max + 1) * grid_size));
}

SpectrumSamples SpectrumSamples::from_function(std::size_t grid_size, std::size_t k_max,
                                               const std::function<CScalar(double)>& f) {
    SpectrumSamples s = zeros(grid_size, k_max);
    const long km = static_cast<long>(k_max);
    for (long k = -km; k <= km; ++k)
        for (std::size_t g = 0; g < grid_size; ++g) s.at(k, g) = f(s.zeta(g) + static_cast<double>(k));
    s.validate();
    return s;
}

SpectrumSamples SpectrumSamples::sinc(std::size_t grid_size, std::size_t k_max) {
    return base_shelf(grid_size, k_max, [](double) { return CScalar{1.0, 0.0}; });
}

SpectrumSamples SpectrumSamples::base_shelf(std::size_t grid_size, std::size_t k_max,
                                            const std::function<CScalar(double)>& f) {
    SpectrumSamples s = zeros(grid_size, k_max);
    for (std::size_t g = 0; g < grid_size; ++g) s.at(0, g) = f(s.zeta(g));
    s.validate();
    return s;
}

void SpectrumSamples::validate() const {
    if (grid_ < 2) throw ArgumentError("spectrum grid needs at least 2 points");
    if (values_.size() != (2 * k_max_ + 1) * grid_)
        throw DimensionError("spectrum has " + std::to_string(values_.size()) + " values, expected " +
                             std::to_string((2 * k_max_ + 1) * grid_));
    for (const auto& z : values_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw ArgumentError("spectrum has non-finite values");
}

BracketSamples bracket(const SpectrumSamples& s) {
    s.validate();
    const auto& kt = kernels::active();
    BracketSamples b{s.grid_size(), std::vector<double>(s.grid_size(), 0.0)};
    const long k_max = static_cast<long>(s.k_max());
    for (long k = -k_max; k <= k_max; ++k) kt.accumulate_abs2(s.grid_size(), s.shelf(k), b.values.data());
    return b;
}

RieszBounds riesz_bounds(const BracketSamples& b) {
    if (b.values.empty()) throw ArgumentError("riesz_bounds: empty bracket");
    const auto [lo, hi] = std::minmax_element(b.values.begin(), b.values.end());
    return {*lo, *hi};
}

SISCertificate perturbation_certify(const SpectrumSamples& phi, const SpectrumSamples& psi) {
    phi.validate();
    psi.validate();
    require_same_grid(phi, psi, "perturbation_certify");
    const RieszBounds rb = riesz_bounds(bracket(phi));
    const std::vector<double> diff = difference_bracket(phi, psi);
    const double mu = *std::max_element(diff.begin(), diff.end());
    SISCertificate c = make_certificate(rb.A_est, rb.B_est, mu, phi);
    c.tail_mass = std::max(tail_mass(phi), tail_mass(psi));
    return c;
}

SISCertificate pw_corollary_certify(const SpectrumSamples& psi) {
    psi.validate();
    const long k_max = static_cast<long>(psi.k_max());
    for (long k = -k_max; k <= k_max; ++k) {
        if (k == 0) continue;
        for (std::size_t g = 0; g < psi.grid_size(); ++g)
            if (std::abs(psi.at(k, g)) > 1e-12)
                throw DomainError("pw_corollary_certify: spectrum has mass on shelf " + std::to_string(k) +
                                  "; this test needs support in [-1/2, 1/2)");
    }
    SISCertificate c = perturbation_certify(SpectrumSamples::sinc(psi.grid_size(), psi.k_max()), psi);
    const RieszBounds own = riesz_bounds(bracket(psi));
    c.psi_A = own.A_est;
    c.psi_B = own.B_est;
    c.second_clause = std::max(own.B_est - 1.0, 1.0 - own.A_est) < 1.0;
    return c;
}

GramField gram_field(const std::vector<SpectrumSamples>& gens) {
    require_same_grid(gens, "gram_field");
    const std::size_t n = gens.size();
    const std::size_t grid = gens.front().grid_size();
    GramField field{grid, n, std::vector<CMatrix>(grid, CMatrix(n, n))};
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = j; l < n; ++l) {
            const std::vector<CScalar> b = cross_bracket(gens[j], gens[l]);
            for (std::size_t g = 0; g < grid; ++g) {
                field.matrices[g](j, l) = b[g];
                field.matrices[g](l, j) = std::conj(b[g]);
            }
            if (j == l)
                for (std::size_t g = 0; g < grid; ++g) field.matrices[g](j, j) = b[g].real();
        }
    return field;
}

SISCertificate multi_perturbation_certify(const std::vector<SpectrumSamples>& phi,
                                          const std::vector<SpectrumSamples>& psi) {
    require_same_grid(phi, "multi_perturbation_certify");
    require_same_grid(psi, "multi_perturbation_certify");
    if (phi.size() != psi.size()) throw DimensionError("multi_perturbation_certify: generator counts differ");
    require_same_grid(phi.front(), psi.front(), "multi_perturbation_certify");
    std::vector<SpectrumSamples> diff;
    diff.reserve(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) diff.push_back(difference(phi[i], psi[i]));
    const GramField g_phi = gram_field(phi);
    const GramField g_diff = gram_field(diff);
    double a_est = std::numeric_limits<double>::infinity();
    double b_est = -std::numeric_limits<double>::infinity();
    double mu = -std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < g_phi.grid_size; ++g) {
        const EigenRange e = hermitian_eigen_range(g_phi.matrices[g]);
        a_est = std::min(a_est, e.lambda_min);
        b_est = std::max(b_est, e.lambda_max);
        mu = std::max(mu, hermitian_eigen_range(g_diff.matrices[g]).lambda_max);
    }
    SISCertificate c = make_certificate(a_est, b_est, mu, phi.front());
    for (const auto& s : phi) c.tail_mass = std::max(c.tail_mass, tail_mass(s));
    for (const auto& s : psi) c.tail_mass = std::max(c.tail_mass, tail_mass(s));
    return c;
}

FiniteSectionReport finite_section_validate(const SpectrumSamples& phi, const SpectrumSamples& psi, std::size_t N,
                                            std::size_t trials, std::uint64_t seed) {
    phi.validate();
    psi.validate();
    require_same_grid(phi, psi, "finite_section_validate");
    const std::size_t grid = phi.grid_size();
    if (2 * N >= grid)
        throw ArgumentError("finite_section_validate: 2N must stay below the grid size to avoid aliasing");
    const std::size_t m = 2 * N + 1;
    const long span = 2 * static_cast<long>(N);

    // Cross brackets b_ab for (a, b) in {phi, psi}^2, indexed 2 * a + b.
    const std::vector<CScalar> brackets[4] = {cross_bracket(phi, phi), cross_bracket(phi, psi),
                                              cross_bracket(psi, phi), cross_bracket(psi, psi)};

    // moments[t][d + 2N] = (1/G) sum_g e^{-2 pi i d zeta_g} b_t(g).
    std::vector<CScalar> roots(grid);
    for (std::size_t e = 0; e < grid; ++e)
        roots[e] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(grid));
    const auto& kt = kernels::active();
    std::vector<std::vector<CScalar>> moments(4, std::vector<CScalar>(2 * span + 1));
    std::vector<CScalar> phase(grid);
    for (long d = -span; d <= span; ++d) {
        const double sign = (d % 2 == 0) ? 1.0 : -1.0;
        const std::size_t step = static_cast<std::size_t>(((-d) % static_cast<long>(grid) + static_cast<long>(grid)) %
                                                          static_cast<long>(grid));
        for (std::size_t g = 0; g < grid; ++g) phase[g] = sign * roots[(step * g) % grid];
        for (int t = 0; t < 4; ++t)
            moments[t][d + span] = kt.cdot(grid, phase.data(), brackets[t].data()) / static_cast<double>(grid);
    }

    // Subsets are drawn serially up front: bit k set means t_k psi.
    std::mt19937_64 rng(seed);
    std::vector<std::vector<int>> choices(trials, std::vector<int>(m));
    for (auto& c : choices)
        for (auto& bit : c) bit = static_cast<int>(rng() >> 63);

    FiniteSectionReport report;
    report.n_translates = m;
    report.trials = trials;
    report.seed = seed;
    report.min_lower_bound = std::numeric_limits<double>::infinity();
    report.max_upper_bound = 0.0;
    CMatrix gram(m, m);
    for (const auto& c : choices) {
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t l = 0; l <= k; ++l) {
                const long d = static_cast<long>(k) - static_cast<long>(l);
                const CScalar v = moments[2 * c[k] + c[l]][d + span];
                gram(k, l) = v;
                gram(l, k) = std::conj(v);
            }
        for (std::size_t k = 0; k < m; ++k) gram(k, k) = gram(k, k).real();
        const EigenRange e = hermitian_eigen_range(gram);
        report.per_trial.emplace_back(e.lambda_min, e.lambda_max);
        report.min_lower_bound = std::min(report.min_lower_bound, e.lambda_min);
        report.max_upper_bound = std::max(report.max_upper_bound, e.lambda_max);
    }
    if (trials == 0) report.min_lower_bound = 0.0;
    return report;
}

} // namespace woven::sis
