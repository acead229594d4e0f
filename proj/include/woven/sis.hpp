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
#include <functional>
#include <optional>
#include <vector>

#include "woven/matrix.hpp"

// Shift-invariant spaces in one dimension. A generator is described by
// samples of its Fourier transform on shelves phi^(zeta + k), |k| <= K, with
// zeta on the uniform half-open grid zeta_g = -1/2 + g / G. Doubling G keeps
// every old grid point, so grid extrema are monotone under refinement.

namespace woven::sis {

inline constexpr std::size_t kDefaultGrid = 4096;
inline constexpr std::size_t kDefaultShelves = 64;

class SpectrumSamples {
public:
    SpectrumSamples() = default;
    /// values holds shelf k = -K..K in order, each with G samples.
    SpectrumSamples(std::size_t grid_size, std::size_t k_max, std::vector<CScalar> values);

    /// Zero spectrum.
    static SpectrumSamples zeros(std::size_t grid_size, std::size_t k_max);
    /// values[k][g] = f(zeta_g + k).
    static SpectrumSamples from_function(std::size_t grid_size, std::size_t k_max,
                                         const std::function<CScalar(double)>& f);
    /// Indicator of [-1/2, 1/2): the transform of sinc.
    static SpectrumSamples sinc(std::size_t grid_size = kDefaultGrid, std::size_t k_max = kDefaultShelves);
    /// Only the base shelf is nonzero, with values f(zeta_g).
    static SpectrumSamples base_shelf(std::size_t grid_size, std::size_t k_max,
                                      const std::function<CScalar(double)>& f);

    std::size_t grid_size() const noexcept { return grid_; }
    std::size_t k_max() const noexcept { return k_max_; }
    std::size_t shelves() const noexcept { return 2 * k_max_ + 1; }
    double zeta(std::size_t g) const noexcept { return -0.5 + static_cast<double>(g) / static_cast<double>(grid_); }

    /// Samples of shelf k in [-K, K].
    const CScalar* shelf(long k) const noexcept { return values_.data() + (k + static_cast<long>(k_max_)) * grid_; }
    CScalar* shelf(long k) noexcept { return values_.data() + (k + static_cast<long>(k_max_)) * grid_; }
    CScalar at(long k, std::size_t g) const noexcept { return shelf(k)[g]; }
    CScalar& at(long k, std::size_t g) noexcept { return shelf(k)[g]; }

    const std::vector<CScalar>& values() const noexcept { return values_; }

    /// Throws unless G >= 2, the value count matches and every value is finite.
    void validate() const;

    friend bool operator==(const SpectrumSamples&, const SpectrumSamples&) = default;

private:
    std::size_t grid_ = 0;
    std::size_t k_max_ = 0;
    std::vector<CScalar> values_;
};

struct BracketSamples {
    std::size_t grid_size = 0;
    std::vector<double> values;
};

struct GramField {
    std::size_t grid_size = 0;
    std::size_t n_gen = 0;
    std::vector<CMatrix> matrices;
};

struct RieszBounds {
    double A_est = 0.0;
    double B_est = 0.0;
};

enum class SISStatus { CertifiedWoven, NotCertified };

std::string_view to_string(SISStatus status) noexcept;

/// Grid evidence for weaving of translation bases; certified means
/// certified at this grid resolution and shelf truncation.
struct SISCertificate {
    SISStatus status = SISStatus::NotCertified;
    double A_est = 0.0;
    double B_est = 0.0;
    double mu_est = 0.0;
    double margin = 0.0;
    std::size_t grid_size = 0;
    std::size_t k_max = 0;
    /// Largest boundary-shelf mass |f^(zeta - K)|^2 + |f^(zeta + K)|^2 over the grid
    /// and the inputs: how much the truncation may have cut off.
    double tail_mass = 0.0;
    /// Paley-Wiener corollary only: bounds of |psi^|^2 and whether
    /// max(B - 1, 1 - A) < 1.
    std::optional<bool> second_clause;
    std::optional<double> psi_A;
    std::optional<double> psi_B;
};

BracketSamples bracket(const SpectrumSamples& s);

RieszBounds riesz_bounds(const BracketSamples& b);

/// Sufficient test: max bracket(phi - psi) < min bracket(phi).
SISCertificate perturbation_certify(const SpectrumSamples& phi, const SpectrumSamples& psi);

/// Perturbation test against sinc for psi supported on the base shelf.
SISCertificate pw_corollary_certify(const SpectrumSamples& psi);

GramField gram_field(const std::vector<SpectrumSamples>& gens);

/// Sufficient test: max lambda_max(G_{Phi - Psi}) < min lambda_min(G_Phi).
SISCertificate multi_perturbation_certify(const std::vector<SpectrumSamples>& phi,
                                          const std::vector<SpectrumSamples>& psi);

struct FiniteSectionReport {
    /// Extreme Gram eigenvalues (squared singular values of the synthesis map)
    /// over all trials.
    double min_lower_bound = 0.0;
    double max_upper_bound = 0.0;
    std::size_t n_translates = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    /// Per trial: (lower, upper).
    std::vector<std::pair<double, double>> per_trial;
};

/// Random weavings {t_k psi}_{k in J} u {t_k phi}_{k not in J}, |k| <= N, with
/// Gram entries from quadrature of the cross brackets on the grid.
FiniteSectionReport finite_section_validate(const SpectrumSamples& phi, const SpectrumSamples& psi, std::size_t N,
                                            std::size_t trials, std::uint64_t seed);

} // namespace woven::sis
