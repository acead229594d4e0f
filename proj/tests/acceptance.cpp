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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "woven/fourier.hpp"
#include "woven/reconstruct.hpp"
#include "woven/sis.hpp"
#include "woven/weaving.hpp"

using namespace woven;
using woven::testing::bits_of;
using woven::testing::pick;
using woven::testing::random_gaussian;
using woven::testing::random_vector;

namespace {

using LComplex = std::complex<long double>;

// Gaussian elimination with partial pivoting in long double.
LComplex det_oracle(const CMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<LComplex> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i * n + j] = LComplex(a(i, j).real(), a(i, j).imag());
    LComplex d = 1.0L;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(m[r * n + c]) > std::abs(m[p * n + c])) p = r;
        if (m[p * n + c] == LComplex(0.0L)) return 0.0L;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m[p * n + j], m[c * n + j]);
            d = -d;
        }
        d *= m[c * n + c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const LComplex f = m[r * n + c] / m[c * n + c];
            for (std::size_t j = c; j < n; ++j) m[r * n + j] -= f * m[c * n + j];
        }
    }
    return d;
}

bool square_free_oracle(std::size_t n) {
    for (std::size_t p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

bool prime_oracle(std::size_t n) {
    if (n < 2) return false;
    for (std::size_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

double rel_err(const CVector& got, const CVector& want) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) {
        num += std::norm(got[i] - want[i]);
        den += std::norm(want[i]);
    }
    return std::sqrt(num / den);
}

CMatrix permute_columns(const CMatrix& w, const std::vector<std::size_t>& sigma) {
    CMatrix out(w.rows(), w.cols());
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j) out(i, j) = w(i, sigma[j]);
    return out;
}

CMatrix in_w_matrix(std::size_t n, std::mt19937_64& rng, const PrecisionConfig& cfg) {
    for (;;) {
        CMatrix a = random_gaussian(n, rng);
        if (classify_class_w(a, cfg).status == ClassW::InW) return a;
    }
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    double limit_seconds;
    std::function<Outcome()> body;
};

const PrecisionConfig kDouble = PrecisionConfig::double_mode();

Outcome example_regression() {
    const CMatrix v = CMatrix::identity(3);
    const CMatrix w{{1.0, 0.0, 1.0}, {1.0, 1.0, 1.0}, {0.0, 1.0, 1.0}};
    std::vector<std::size_t> sigma{0, 1, 2};
    int rejected = 0;
    double worst = 0.0;
    do {
        const CMatrix ws = permute_columns(w, sigma);
        const WeavingCertificate c = are_woven(BasisPair{v, ws}, kDouble);
        if (c.status != ClassW::NotInW || !c.worst_J) continue;
        const double d = static_cast<double>(std::abs(det_oracle(central_submatrix(ws, *c.worst_J))));
        worst = std::max(worst, d);
        if (d <= 1e-12) ++rejected;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    const PermutationSearch s = woven_up_to_permutation(BasisPair{v, w}, kDouble);
    std::ostringstream os;
    os << rejected << "/6 permutations singular, max |det| " << worst << ", search found=" << s.found;
    return {rejected == 6 && !s.found && !s.any_inconclusive, os.str()};
}

Outcome determinant_identity() {
    std::mt19937_64 rng(20260101);
    double worst = 0.0;
    std::size_t pairs = 0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
        const CMatrix a = random_gaussian(n, rng);
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            const IndexSet j = IndexSet::from_mask(n, mask);
            const CScalar lhs = det(weaving_operator(a, j), kDouble).value;
            const auto idx = bits_of(mask);
            const LComplex rhs = det_oracle(pick(a, idx, idx));
            const double err = static_cast<double>(std::abs(LComplex(lhs.real(), lhs.imag()) - rhs));
            worst = std::max(worst, err / std::max(1.0, static_cast<double>(std::abs(rhs))));
            ++pairs;
        }
    }
    std::ostringstream os;
    os << pairs << " (A, J) pairs, max scaled difference " << worst;
    return {worst <= 1e-10, os.str()};
}

Outcome recovery_roundtrip() {
    std::mt19937_64 rng(20260102);
    double worst = 0.0;
    std::size_t solves = 0;
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
        const CMatrix a = in_w_matrix(n, rng, kDouble);
        for (int r = 0; r < 20; ++r) {
            const CVector x = random_vector(n, rng);
            const CVector ax = a * x;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
                CVector y = x;
                for (std::size_t i : bits_of(mask)) y[i] = ax[i];
                const CVector got = recover(a, MixedSamples{IndexSet::from_mask(n, mask), y}, kDouble);
                worst = std::max(worst, rel_err(got, x));
                ++solves;
            }
        }
    }
    std::ostringstream os;
    os << solves << " recoveries, max relative error " << worst;
    return {worst <= 1e-8, os.str()};
}

Outcome fourier_scan() {
    const PrecisionConfig cfg = PrecisionConfig::extended(192);
    const ScanReport r = scan(2, 18, cfg);
    std::size_t matches = 0;
    std::ostringstream os;
    for (const auto& row : r.rows) {
        bool ok = row.in_W == (square_free_oracle(row.n) ? ClassW::InW : ClassW::NotInW);
        if (ok && row.in_W == ClassW::NotInW) {
            // {0, n/p} with p^2 | n: the block [[1, 1], [1, zeta^((n/p)^2)]] has a zero determinant.
            ok = false;
            if (row.witness_J && row.witness_J->size() == 2 && row.witness_J->contains(0)) {
                const std::size_t j = row.witness_J->members()[1];
                for (std::size_t p = 2; p <= row.n; ++p)
                    if (prime_oracle(p) && row.n % (p * p) == 0 && j == row.n / p) ok = (j * j) % row.n == 0;
            }
            if (ok) os << "n=" << row.n << " {0," << row.witness_J->members()[1] << "} ";
        }
        if (ok) ++matches;
    }
    os << "| " << matches << "/" << r.rows.size() << " rows match, inconclusive " << r.inconclusive.size();
    return {matches == 17 && r.rows.size() == 17 && r.inconclusive.empty() && r.clean(), os.str()};
}

Outcome reduction_soundness() {
    const PrecisionConfig cfg = PrecisionConfig::extended(192);
    FourierOptions full;
    full.reduce_to_zero = false;
    full.square_free_fast_path = false;
    FourierOptions reduced = full;
    reduced.reduce_to_zero = true;
    int agree = 0;
    for (std::size_t n = 2; n <= 10; ++n) {
        const FourierScanRow a = classify_fourier(n, cfg, full);
        const FourierScanRow b = classify_fourier(n, cfg, reduced);
        if (a.in_W == b.in_W && a.in_W != ClassW::Inconclusive) ++agree;
    }
    std::ostringstream os;
    os << agree << "/9 sizes agree";
    return {agree == 9, os.str()};
}

Outcome minor_exhaustion() {
    const PrecisionConfig cfg = PrecisionConfig::extended(192);
    std::ostringstream os;
    bool ok = true;
    for (std::size_t p : {2, 3, 5, 7, 11}) {
        const MinorsReport m = minors_exhaustive(p, cfg);
        os << "p=" << p << ":" << m.count << " ";
        ok = ok && m.all_nonzero && !m.inconclusive;
    }
    const MinorsReport four = minors_exhaustive(4, cfg);
    os << "n=4:" << (four.all_nonzero ? "all nonzero" : "singular minor");
    return {ok && !four.all_nonzero && four.witness.has_value(), os.str()};
}

Outcome closure_fuzz() {
    std::mt19937_64 rng(20260107);
    std::normal_distribution<double> g(0.0, 1.0);
    WeavingOptions exhaustive;
    exhaustive.fast_paths = false;
    std::size_t checks = 0, failures = 0;
    auto expect_in_w = [&](const CMatrix& m) {
        ++checks;
        if (classify_class_w(m, kDouble, exhaustive).status != ClassW::InW) ++failures;
    };
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + static_cast<std::size_t>(t % 6);
        const CMatrix a = in_w_matrix(n, rng, kDouble);
        const CMatrix inv = apply_symmetry(a, symmetry::Inverse{}, kDouble);
        if (max_abs_diff(a * inv, CMatrix::identity(n)) > 1e-8) ++failures;
        expect_in_w(inv);
        CMatrix t_oracle(n, n), h_oracle(n, n), d_oracle(n, n), p_oracle(n, n);
        CVector d(n);
        for (auto& z : d) z = {g(rng), g(rng)};
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                t_oracle(i, j) = a(j, i);
                h_oracle(i, j) = std::conj(a(j, i));
                d_oracle(i, j) = std::conj(d[i]) * a(i, j) * d[j];
                p_oracle(i, j) = a(perm[i], perm[j]);
            }
        expect_in_w(t_oracle);
        expect_in_w(h_oracle);
        expect_in_w(d_oracle);
        expect_in_w(p_oracle);
        if (apply_symmetry(a, symmetry::Transpose{}) != t_oracle) ++failures;
        if (apply_symmetry(a, symmetry::Adjoint{}) != h_oracle) ++failures;
        if (max_abs_diff(apply_symmetry(a, symmetry::ConjDiag{d}), d_oracle) > 1e-12) ++failures;
        if (apply_symmetry(a, symmetry::ConjPerm{perm}) != p_oracle) ++failures;

        CMatrix tri(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            tri(i, i) = std::polar(0.5 + std::abs(g(rng)), g(rng));
            for (std::size_t j = i + 1; j < n; ++j) tri(i, j) = {g(rng), g(rng)};
        }
        expect_in_w(tri);
        expect_in_w(tri.transpose());
        const CMatrix b = random_gaussian(n, rng);
        CMatrix pd = b * b.adjoint();
        for (std::size_t i = 0; i < n; ++i) pd(i, i) += 0.1;
        expect_in_w(pd);
    }
    std::ostringstream os;
    os << checks << " certifications, " << failures << " failures";
    return {failures == 0, os.str()};
}

Outcome l2_example() {
    const FinitePerturbation fp{{0, 1}, CMatrix{{0.0, 2.0}, {2.0, 0.0}}};
    const WeavingCertificate c = classify_finite_perturbation(fp, kDouble);
    // [[1, 2], [2, 1]] has eigenvalues 3 and -1; the singletons are 1.
    const double sigma_oracle = std::min(1.0, std::min(std::abs(1.0 + 2.0), std::abs(1.0 - 2.0)));
    const DiagonalDominance dr = dr_criterion(fp);
    std::ostringstream os;
    os << "status " << to_string(c.status) << ", min_sigma " << c.min_sigma << ", ||R|| " << dr.norm_r
       << ", sup|d| " << dr.sup_d;
    const bool ok = c.status == ClassW::InW && std::abs(c.min_sigma - sigma_oracle) <= 1e-10 &&
                    std::abs(dr.norm_r - 2.0) <= 1e-10 && std::abs(dr.sup_d - 1.0) <= 1e-10 && !dr.satisfied &&
                    dr.norm_r > 0.5 * dr.sup_d;
    return {ok, os.str()};
}

Outcome sis_certificates() {
    double bracket_dev = 0.0;
    for (std::size_t grid : {64, 1000, 4096})
        for (double v : sis::bracket(sis::SpectrumSamples::sinc(grid, 16)).values)
            bracket_dev = std::max(bracket_dev, std::abs(v - 1.0));
    const auto phi = sis::SpectrumSamples::sinc();
    const auto psi = sis::SpectrumSamples::base_shelf(sis::kDefaultGrid, sis::kDefaultShelves, [](double z) {
        return 1.0 - 0.4 * std::polar(1.0, 2.0 * std::numbers::pi * z);
    });
    const sis::SISCertificate c = sis::perturbation_certify(phi, psi);
    const sis::FiniteSectionReport r = sis::finite_section_validate(phi, psi, 32, 50, 20260109);
    // sup |1 - psi^|^2 = 0.4^2.
    const double mu_oracle = 0.4 * 0.4;
    const double bound = (1.0 - 0.4) * (1.0 - 0.4) - 0.05;
    std::ostringstream os;
    os << "bracket deviation " << bracket_dev << ", mu_est " << c.mu_est << ", A_est " << c.A_est
       << ", min_lower_bound " << r.min_lower_bound;
    const bool ok = bracket_dev <= 1e-12 && c.status == sis::SISStatus::CertifiedWoven &&
                    std::abs(c.mu_est - mu_oracle) <= 1e-10 && std::abs(c.A_est - 1.0) <= 1e-12 &&
                    r.trials == 50 && r.min_lower_bound >= bound;
    return {ok, os.str()};
}

Outcome prime_dft_sampling() {
    std::mt19937_64 rng(20260110);
    double worst = 0.0;
    std::size_t solves = 0;
    for (std::size_t p : {3, 5, 7}) {
        const CMatrix f = fourier_matrix(p);
        for (int r = 0; r < 10; ++r) {
            const CVector x = random_vector(p, rng);
            // x^(j) = sum_k e^{2 pi i jk / p} x(k), in long double.
            CVector xhat(p);
            for (std::size_t j = 0; j < p; ++j) {
                LComplex s = 0.0L;
                for (std::size_t k = 0; k < p; ++k) {
                    const long double t = 2.0L * std::numbers::pi_v<long double> *
                                          static_cast<long double>((j * k) % p) / static_cast<long double>(p);
                    s += std::polar(1.0L, t) * LComplex(x[k].real(), x[k].imag());
                }
                xhat[j] = {static_cast<double>(s.real()), static_cast<double>(s.imag())};
            }
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p); ++mask) {
                CVector y = x;
                for (std::size_t i : bits_of(mask)) y[i] = xhat[i];
                const CVector got = recover(f, MixedSamples{IndexSet::from_mask(p, mask), y}, kDouble);
                worst = std::max(worst, rel_err(got, x));
                ++solves;
            }
        }
    }
    std::ostringstream os;
    os << solves << " recoveries, max relative error " << worst;
    return {worst <= 1e-8, os.str()};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, 1.0, example_regression},    {2, 30.0, determinant_identity}, {3, 120.0, recovery_roundtrip},
        {4, 300.0, fourier_scan},        {5, 60.0, reduction_soundness},  {6, 180.0, minor_exhaustion},
        {7, 60.0, closure_fuzz},         {8, 1.0, l2_example},            {9, 60.0, sis_certificates},
        {10, 60.0, prime_dft_sampling},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.limit_seconds;
        const bool pass = o.pass && in_time;
        if (!pass) ++failed;
        std::printf("%s criterion %d (%.2f s, limit %.0f s): %s%s\n", pass ? "PASS" : "FAIL", c.id, secs,
                    c.limit_seconds, o.detail.c_str(), in_time ? "" : " [over time limit]");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
