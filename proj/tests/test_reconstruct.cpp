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

#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "woven/reconstruct.hpp"
#include "woven/weaving.hpp"

using namespace woven;
using woven::testing::random_gaussian;
using woven::testing::random_vector;

namespace {

const PrecisionConfig kDouble = PrecisionConfig::double_mode();
const CMatrix kRot{{1.0, -1.0}, {1.0, 1.0}};

double rel_err(const CVector& got, const CVector& want) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        num += std::norm(got[i] - want[i]);
        den += std::norm(want[i]);
    }
    return std::sqrt(num / den);
}

} // namespace

TEST_CASE("weaving_operator examples") {
    CHECK(weaving_operator(kRot, IndexSet::full(2)) == kRot);
    CHECK(weaving_operator(kRot, IndexSet::none(2)) == CMatrix::identity(2));
    CHECK(weaving_operator(kRot, IndexSet(2, {0})) == CMatrix{{1.0, -1.0}, {0.0, 1.0}});
    CHECK_THROWS_AS(weaving_operator(kRot, IndexSet(3, {0})), DimensionError);
}

TEST_CASE("sample examples") {
    const CVector x{1.0, 2.0};
    CHECK(sample(kRot, IndexSet(2, {0}), x).values == CVector{-1.0, 2.0});
    CHECK(sample(kRot, IndexSet::none(2), x).values == x);
    CHECK(sample(kRot, IndexSet::full(2), x).values == CVector{-1.0, 3.0});
    CHECK_THROWS_AS(sample(kRot, IndexSet(2, {0}), CVector{1.0}), DimensionError);
}

TEST_CASE("recover examples") {
    const CVector x{1.0, 2.0};
    const CVector got = recover(kRot, MixedSamples{IndexSet(2, {0}), {-1.0, 2.0}}, kDouble);
    CHECK(rel_err(got, x) < 1e-15);
    CHECK(recover(kRot, MixedSamples{IndexSet::none(2), x}, kDouble) == x);
    try {
        recover(CMatrix{{0.0, -2.0}, {2.0, 0.0}}, MixedSamples{IndexSet(2, {0}), {1.0, 1.0}}, kDouble);
        FAIL("expected RecoveryImpossible");
    } catch (const RecoveryImpossible& e) {
        CHECK(e.witness() == IndexSet(2, {0}));
        CHECK(e.verdict().status == Invertibility::Singular);
    }
    const CVector ext = recover(kRot, MixedSamples{IndexSet(2, {0}), {-1.0, 2.0}}, PrecisionConfig::extended(128));
    CHECK(rel_err(ext, x) < 1e-15);
}

TEST_CASE("two_matrix_recover examples") {
    std::mt19937_64 rng(5);
    const CMatrix a = random_gaussian(4, rng);
    const CVector x = random_vector(4, rng);
    for (std::uint64_t mask = 0; mask < 16; ++mask) {
        const IndexSet j = IndexSet::from_mask(4, mask);
        const CMatrix inner = weaving_operator(a, j);
        if (!certify_invertibility(inner, kDouble).invertible()) continue;
        const CVector mixed = inner * x;
        CHECK(rel_err(two_matrix_recover(a, CMatrix::identity(4), j, mixed, kDouble),
                      recover(a, MixedSamples{j, mixed}, kDouble)) < 1e-12);
        const CVector ax = a * x;
        CHECK(rel_err(two_matrix_recover(a, a, j, ax, kDouble), x) < 1e-10);
    }
    const CMatrix f2{{1.0, 1.0}, {1.0, -1.0}};
    const CMatrix b = CMatrix::diagonal(CVector{2.0, 2.0});
    CHECK(rel_err(two_matrix_recover(f2, b, IndexSet(2, {0}), CVector{2.0, 2.0}, kDouble), CVector{1.0, 1.0}) <
          1e-15);
    CHECK_THROWS_AS(two_matrix_recover(f2, CMatrix{{1.0, 1.0}, {1.0, 1.0}}, IndexSet(2, {0}), CVector{2.0, 2.0},
                                       kDouble),
                    ArgumentError);
    // Rows (1,1) from A and (1,1) from B collide.
    CHECK_THROWS_AS(two_matrix_recover(f2, CMatrix{{1.0, -1.0}, {1.0, 1.0}}, IndexSet(2, {0}), CVector{2.0, 2.0},
                                       kDouble),
                    RecoveryImpossible);
}

TEST_CASE("roundtrip over every subset for class-W matrices") {
    std::mt19937_64 rng(6);
    for (std::size_t n = 1; n <= 10; ++n) {
        CMatrix a;
        do a = random_gaussian(n, rng);
        while (classify_class_w(a, kDouble).status != ClassW::InW);
        const int trials = n <= 6 ? 100 : 3;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            const IndexSet j = IndexSet::from_mask(n, mask);
            for (int t = 0; t < trials; ++t) {
                const CVector x = random_vector(n, rng);
                CHECK(rel_err(recover(a, sample(a, j, x), kDouble), x) <= 1e-8);
            }
        }
    }
}

TEST_CASE("failed recovery implies a singular central witness inside J") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 3 + t % 4;
        CMatrix a = random_gaussian(n, rng);
        // Make the central block on {0, n-1} singular.
        a(0, n - 1) = a(0, 0) * a(n - 1, n - 1) / a(n - 1, 0);
        const IndexSet j(n, {0, n - 1});
        const CVector x = random_vector(n, rng);
        CHECK_THROWS_AS(recover(a, sample(a, j, x), kDouble), RecoveryImpossible);
        CHECK(classify_class_w(a, kDouble).status == ClassW::NotInW);
        const auto sub = classify_class_w(central_submatrix(a, j), kDouble);
        REQUIRE(sub.status == ClassW::NotInW);
        std::vector<std::size_t> ambient;
        for (std::size_t k : *sub.worst_J) ambient.push_back(j.members()[k]);
        CHECK(IndexSet(n, ambient).is_subset_of(j));
    }
}
