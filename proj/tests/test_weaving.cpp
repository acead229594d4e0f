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
#include <numeric>
#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "woven/reconstruct.hpp"
#include "woven/weaving.hpp"

using namespace woven;
using woven::testing::random_gaussian;

namespace {

const PrecisionConfig kDouble = PrecisionConfig::double_mode();

// Columns e1+e2, e2+e3, e1+e2+e3 in the canonical basis.
CMatrix three_dim_example() { return CMatrix{{1.0, 0.0, 1.0}, {1.0, 1.0, 1.0}, {0.0, 1.0, 1.0}}; }

CMatrix permutation_matrix(const std::vector<std::size_t>& pi) {
    // Column i is e_{pi[i]}.
    CMatrix p(pi.size(), pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i) p(pi[i], i) = 1.0;
    return p;
}

CMatrix random_in_w(std::size_t n, std::mt19937_64& rng) {
    for (;;) {
        CMatrix a = random_gaussian(n, rng);
        if (classify_class_w(a, kDouble).status == ClassW::InW) return a;
    }
}

} // namespace

TEST_CASE("central_submatrix examples") {
    CMatrix a(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) a(i, j) = 10.0 * i + j;
    CHECK(central_submatrix(a, IndexSet(3, {0, 2})) == CMatrix{{0.0, 2.0}, {20.0, 22.0}});
    CHECK(central_submatrix(a, IndexSet::full(3)) == a);
    CHECK(central_submatrix(CMatrix{{1.0, 2.0}, {2.0, 1.0}}, IndexSet(2, {1})) == CMatrix{{1.0}});
    CHECK_THROWS_AS(central_submatrix(a, IndexSet::none(3)), ArgumentError);
    CHECK_THROWS_AS(central_submatrix(a, IndexSet(2, {0})), DimensionError);
}

TEST_CASE("index set validation") {
    CHECK_THROWS_AS(IndexSet(3, {2, 1}), ArgumentError);
    CHECK_THROWS_AS(IndexSet(3, {3}), ArgumentError);
    CHECK(IndexSet::from_mask(4, 0b1010) == IndexSet(4, {1, 3}));
    CHECK(IndexSet(4, {1, 3}).complement() == IndexSet(4, {0, 2}));
    CHECK(IndexSet(4, {1, 3}).to_string() == "{1, 3}");
}

TEST_CASE("classify_class_w examples") {
    SUBCASE("[[1,-1],[1,1]] is in W with minors {1,1,2}") {
        const auto c = classify_class_w(CMatrix{{1.0, -1.0}, {1.0, 1.0}}, kDouble);
        CHECK(c.status == ClassW::InW);
        CHECK(c.fast_path == FastPath::None);
        CHECK(c.subsets_checked == 3);
        CHECK(c.min_abs_det == doctest::Approx(1.0));
    }
    SUBCASE("its square is not") {
        const auto c = classify_class_w(CMatrix{{0.0, -2.0}, {2.0, 0.0}}, kDouble);
        CHECK(c.status == ClassW::NotInW);
        REQUIRE(c.worst_J);
        CHECK(*c.worst_J == IndexSet(2, {0}));
        CHECK(c.subsets_checked == 1);
    }
    SUBCASE("three-dimensional example") {
        // Masks 1..5 have determinant 1; mask 6 = {1,2} gives [[1,1],[1,1]].
        const auto c = classify_class_w(three_dim_example(), kDouble);
        CHECK(c.status == ClassW::NotInW);
        REQUIRE(c.worst_J);
        CHECK(*c.worst_J == IndexSet(3, {1, 2}));
        CHECK(c.subsets_checked == 6);
    }
    SUBCASE("size limit") {
        WeavingOptions opts;
        opts.max_n = 3;
        CHECK_THROWS_AS(classify_class_w(CMatrix::identity(4), kDouble, opts), SizeLimitError);
    }
    SUBCASE("extended mode agrees") {
        const auto c = classify_class_w(three_dim_example(), PrecisionConfig::extended(128));
        CHECK(c.status == ClassW::NotInW);
        CHECK(*c.worst_J == IndexSet(3, {1, 2}));
    }
}

TEST_CASE("change_of_basis and are_woven examples") {
    std::mt19937_64 rng(1);
    const CMatrix w = random_gaussian(4, rng);
    CHECK(max_abs_diff(change_of_basis({CMatrix::identity(4), w}, kDouble), w) < 1e-15);
    CHECK(max_abs_diff(change_of_basis({w, w}, kDouble), CMatrix::identity(4)) < 1e-12);
    CHECK(change_of_basis({CMatrix::identity(3), three_dim_example()}, kDouble) == three_dim_example());
    CHECK_THROWS_AS(change_of_basis({CMatrix{{1.0, 1.0}, {1.0, 1.0}}, CMatrix::identity(2)}, kDouble), BasisError);

    CHECK(are_woven({w, w}, kDouble).status == ClassW::InW);
    const auto swapped = are_woven({CMatrix::identity(3), permutation_matrix({1, 0, 2})}, kDouble);
    CHECK(swapped.status == ClassW::NotInW);
    CHECK(swapped.worst_J->size() == 1);
    // Central determinants 1, 1, -3.
    const auto sym = are_woven({CMatrix::identity(2), CMatrix{{1.0, 2.0}, {2.0, 1.0}}}, kDouble);
    CHECK(sym.status == ClassW::InW);
    CHECK(sym.min_abs_det == doctest::Approx(1.0));
}

TEST_CASE("woven_up_to_permutation examples") {
    SUBCASE("permuted identity needs the inverse permutation") {
        const std::vector<std::size_t> pi{2, 0, 3, 1};
        const auto r = woven_up_to_permutation({CMatrix::identity(4), permutation_matrix(pi)}, kDouble);
        REQUIRE(r.found);
        std::vector<std::size_t> inv(pi.size());
        for (std::size_t i = 0; i < pi.size(); ++i) inv[pi[i]] = i;
        CHECK(*r.sigma == inv);
    }
    SUBCASE("three-dimensional example has no permutation") {
        const auto r = woven_up_to_permutation({CMatrix::identity(3), three_dim_example()}, kDouble);
        CHECK_FALSE(r.found);
        CHECK_FALSE(r.any_inconclusive);
    }
    SUBCASE("identity pair") {
        const auto r = woven_up_to_permutation({CMatrix::identity(3), CMatrix::identity(3)}, kDouble);
        REQUIRE(r.found);
        CHECK(*r.sigma == std::vector<std::size_t>{0, 1, 2});
    }
    SUBCASE("size limit") {
        CHECK_THROWS_AS(woven_up_to_permutation({CMatrix::identity(9), CMatrix::identity(9)}, kDouble),
                        SizeLimitError);
    }
}

TEST_CASE("pruned permutation search matches brute force") {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 15; ++t) {
        const std::size_t n = 3 + t % 2;
        CMatrix w = random_gaussian(n, rng);
        // Sparsify so that many permutations fail.
        for (auto& z : w.data())
            if (rng() % 2) z = 0.0;
        const BasisPair pair{CMatrix::identity(n), w};
        if (!certify_invertibility(w, kDouble).invertible()) continue;
        std::vector<std::size_t> sigma(n);
        std::iota(sigma.begin(), sigma.end(), 0);
        std::optional<std::vector<std::size_t>> first;
        do {
            CMatrix ws(n, n);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) ws(r, c) = w(r, sigma[c]);
            if (are_woven({CMatrix::identity(n), ws}, kDouble).status == ClassW::InW) {
                first = sigma;
                break;
            }
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        const auto r = woven_up_to_permutation(pair, kDouble);
        CHECK(r.found == first.has_value());
        if (first) CHECK(*r.sigma == *first);
    }
}

TEST_CASE("all_minors_nonzero examples") {
    const CMatrix f2{{1.0, 1.0}, {1.0, -1.0}};
    CHECK(all_minors_nonzero(f2, kDouble).holds);
    CHECK(all_minors_nonzero(f2, kDouble).minors_checked == 5);
    const auto z = all_minors_nonzero(CMatrix{{1.0, 2.0}, {0.0, 3.0}}, kDouble);
    CHECK_FALSE(z.holds);
    REQUIRE(z.witness);
    CHECK(z.witness->rows == IndexSet(2, {1}));
    CHECK(z.witness->cols == IndexSet(2, {0}));
    const CScalar i1(0.0, 1.0);
    const CMatrix f4{{1.0, 1.0, 1.0, 1.0}, {1.0, i1, -1.0, -i1}, {1.0, -1.0, 1.0, -1.0}, {1.0, -i1, -1.0, i1}};
    const auto s4 = all_minors_nonzero(f4, kDouble);
    CHECK_FALSE(s4.holds);
    REQUIRE(s4.witness);
    CHECK(s4.witness->rows.size() == 2);
    CHECK_THROWS_AS(all_minors_nonzero(CMatrix::identity(13), kDouble), SizeLimitError);
}

TEST_CASE("all minors nonzero iff every column permutation is in W") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 6; ++t) {
        CMatrix a = random_gaussian(3, rng);
        if (t % 2) a(0, 1) = a(1, 1) * a(0, 2) / a(1, 2);  // rows {0,1} x cols {1,2} singular
        bool all_perm = true;
        std::vector<std::size_t> sigma{0, 1, 2};
        do {
            CMatrix ap(3, 3);
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t c = 0; c < 3; ++c) ap(r, c) = a(r, sigma[c]);
            all_perm = all_perm && classify_class_w(ap, kDouble).status == ClassW::InW;
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        CHECK(all_minors_nonzero(a, kDouble).holds == all_perm);
    }
}

TEST_CASE("apply_symmetry examples") {
    CHECK(apply_symmetry(CMatrix{{1.0, 2.0}, {3.0, 4.0}}, symmetry::Transpose{}) == CMatrix{{1.0, 3.0}, {2.0, 4.0}});
    // D* I D = diag(|d|^2).
    CHECK(apply_symmetry(CMatrix::identity(2), symmetry::ConjDiag{{1.0, 2.0}}) == CMatrix{{1.0, 0.0}, {0.0, 4.0}});
    CHECK(apply_symmetry(CMatrix::identity(2), symmetry::ConjDiag{{1.0, CScalar(0.0, 1.0)}}) == CMatrix::identity(2));
    const CMatrix inv = apply_symmetry(CMatrix{{1.0, -1.0}, {1.0, 1.0}}, symmetry::Inverse{});
    CHECK(max_abs_diff(inv, CMatrix{{0.5, 0.5}, {-0.5, 0.5}}) < 1e-15);
    CHECK(apply_symmetry(CMatrix{{1.0, CScalar(0, 2)}, {3.0, 4.0}}, symmetry::Adjoint{}) ==
          CMatrix{{1.0, 3.0}, {CScalar(0, -2), 4.0}});
    CHECK(apply_symmetry(CMatrix{{1.0, 2.0}, {3.0, 4.0}}, symmetry::ConjPerm{{1, 0}}) ==
          CMatrix{{4.0, 3.0}, {2.0, 1.0}});
    CHECK_THROWS_AS(apply_symmetry(CMatrix::identity(2), symmetry::ConjDiag{{1.0, 0.0}}), ArgumentError);
    CHECK_THROWS_AS(apply_symmetry(CMatrix::identity(2), symmetry::ConjPerm{{1, 1}}), ArgumentError);
    CHECK_THROWS_AS(apply_symmetry(CMatrix{{1.0, 1.0}, {1.0, 1.0}}, symmetry::Inverse{}), SingularSystemError);
}

TEST_CASE("finite perturbation examples") {
    SUBCASE("identity plus antidiagonal 2") {
        const FinitePerturbation fp{{0, 1}, CMatrix{{0.0, 2.0}, {2.0, 0.0}}};
        const auto c = classify_finite_perturbation(fp, kDouble);
        CHECK(c.status == ClassW::InW);
        CHECK(c.subsets_checked == 3);
        CHECK(c.min_sigma == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c.min_abs_det == doctest::Approx(1.0));
        const auto dr = dr_criterion(fp);
        CHECK_FALSE(dr.satisfied);
        CHECK(dr.norm_r == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(dr.sup_d == 1.0);
    }
    SUBCASE("empty support") {
        const FinitePerturbation fp{{}, CMatrix()};
        const auto c = classify_finite_perturbation(fp, kDouble);
        CHECK(c.status == ClassW::InW);
        CHECK(c.min_sigma == 1.0);
        CHECK(dr_criterion(fp).satisfied);
    }
    SUBCASE("diagonal -1 kills the first entry") {
        const FinitePerturbation fp{{0}, CMatrix{{-1.0}}};
        const auto c = classify_finite_perturbation(fp, kDouble);
        CHECK(c.status == ClassW::NotInW);
        CHECK(*c.worst_J == IndexSet(1, {0}));
    }
    SUBCASE("small antidiagonal satisfies the dominance criterion") {
        const FinitePerturbation fp{{3, 7}, CMatrix{{0.0, 0.1}, {0.1, 0.0}}};
        const auto dr = dr_criterion(fp);
        CHECK(dr.satisfied);
        CHECK(dr.norm_r == doctest::Approx(0.1));
        const auto c = classify_finite_perturbation(fp, kDouble);
        CHECK(c.status == ClassW::InW);
    }
    SUBCASE("witness is reported in ambient indices") {
        const FinitePerturbation fp{{2, 5}, CMatrix{{0.0, 1.0}, {1.0, 0.0}}};
        const auto c = classify_finite_perturbation(fp, kDouble);
        CHECK(c.status == ClassW::NotInW);
        CHECK(*c.worst_J == IndexSet(6, {2, 5}));
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(classify_finite_perturbation({{1, 0}, CMatrix::identity(2)}, kDouble), ArgumentError);
        CHECK_THROWS_AS(classify_finite_perturbation({{0, 1}, CMatrix::identity(3)}, kDouble), DimensionError);
    }
}

TEST_CASE("finite perturbation agrees with corner truncations") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 20; ++t) {
        const std::vector<std::size_t> support{1, 3, 4};
        CMatrix block = random_gaussian(3, rng);
        if (t % 3 == 0) block(1, 1) = -1.0;  // forces a singular 1x1 block
        const FinitePerturbation fp{support, block};
        const auto c = classify_finite_perturbation(fp, kDouble);
        const std::size_t m = 6;
        CMatrix corner = CMatrix::identity(m);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) corner(support[i], support[j]) += block(i, j);
        const auto full = classify_class_w(corner, kDouble);
        CHECK(full.status == c.status);
        if (c.status == ClassW::InW) CHECK(full.min_sigma == doctest::Approx(c.min_sigma).epsilon(1e-9));
    }
}

TEST_CASE("expansion identity det A(J) = det A_J") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 1 + t % 8;
        const CMatrix a = random_gaussian(n, rng);
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            const IndexSet j = IndexSet::from_mask(n, mask);
            const DetResult op = det(weaving_operator(a, j), kDouble);
            const DetResult block = det(central_submatrix(a, j), kDouble);
            CHECK(std::abs(op.value - block.value) <= op.error_bound + block.error_bound);
        }
    }
}

TEST_CASE("closure of W under its symmetries") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + t % 5;
        const CMatrix a = random_in_w(n, rng);
        CVector d(n);
        for (auto& z : d) z = std::polar(u(rng), u(rng));
        std::vector<std::size_t> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        for (const Symmetry& s : std::vector<Symmetry>{symmetry::Inverse{}, symmetry::Transpose{},
                                                       symmetry::Adjoint{}, symmetry::ConjDiag{d},
                                                       symmetry::ConjPerm{p}})
            CHECK(classify_class_w(apply_symmetry(a, s), kDouble).status == ClassW::InW);
    }
}

TEST_CASE("heredity: central submatrices of W members are in W") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 3 + t % 4;
        const CMatrix a = random_in_w(n, rng);
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask)
            CHECK(classify_class_w(central_submatrix(a, IndexSet::from_mask(n, mask)), kDouble).status ==
                  ClassW::InW);
    }
}

TEST_CASE("structural fast paths are sound lower bounds") {
    std::mt19937_64 rng(14);
    WeavingOptions exhaustive;
    exhaustive.fast_paths = false;
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + t % 6;
        CMatrix tri = random_gaussian(n, rng);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) (t % 2 ? tri(i, j) : tri(j, i)) = 0.0;
        const auto fast = classify_class_w(tri, kDouble);
        CHECK(fast.status == ClassW::InW);
        CHECK(fast.fast_path == FastPath::Triangular);
        CHECK(fast.subsets_checked == 0);
        const auto slow = classify_class_w(tri, kDouble, exhaustive);
        CHECK(slow.status == ClassW::InW);
        CHECK(fast.min_sigma <= slow.min_sigma * (1.0 + 1e-12));
        CHECK(fast.min_abs_det == doctest::Approx(slow.min_abs_det).epsilon(1e-10));

        const CMatrix f = random_gaussian(n + 2, n, rng);
        const CMatrix pd = f.adjoint() * f;
        const auto hp = classify_class_w(pd, kDouble);
        CHECK(hp.status == ClassW::InW);
        CHECK(hp.fast_path == FastPath::HermitianDefinite);
        const auto hs = classify_class_w(pd, kDouble, exhaustive);
        CHECK(hs.status == ClassW::InW);
        CHECK(hp.min_sigma == doctest::Approx(hs.min_sigma).epsilon(1e-9));
        CHECK(hp.min_abs_det <= hs.min_abs_det * (1.0 + 1e-12));

        CMatrix nd = pd;
        for (auto& z : nd.data()) z = -z;
        CHECK(classify_class_w(nd, kDouble).fast_path == FastPath::HermitianDefinite);
    }
    // A singular diagonal entry disables the triangular path.
    const auto c = classify_class_w(CMatrix{{1.0, 5.0}, {0.0, 0.0}}, kDouble);
    CHECK(c.status == ClassW::NotInW);
}

TEST_CASE("generic Gaussian matrices are in W") {
    std::mt19937_64 rng(2026);
    int in_w = 0;
    for (int t = 0; t < 1000; ++t)
        if (classify_class_w(random_gaussian(6, rng), kDouble).status == ClassW::InW) ++in_w;
    CHECK(in_w >= 995);
}

TEST_CASE("certificates do not depend on the worker count") {
    std::mt19937_64 rng(15);
    for (int t = 0; t < 6; ++t) {
        CMatrix a = random_gaussian(9, rng);
        if (t % 2) a(5, 5) = 0.0;
        WeavingOptions one;
        one.threads = 1;
        WeavingOptions many;
        many.threads = 4;
        const auto c1 = classify_class_w(a, kDouble, one);
        const auto c4 = classify_class_w(a, kDouble, many);
        CHECK(c1.status == c4.status);
        CHECK(c1.worst_J == c4.worst_J);
        CHECK(c1.subsets_checked == c4.subsets_checked);
        CHECK(c1.min_sigma == c4.min_sigma);
        CHECK(c1.min_abs_det == c4.min_abs_det);
    }
}
