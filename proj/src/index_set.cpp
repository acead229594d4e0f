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

#include "woven/index_set.hpp"

#include <algorithm>

#include "woven/errors.hpp"

namespace woven {

IndexSet::IndexSet(std::size_t n, std::vector<std::size_t> members) : n_(n), members_(std::move(members)) {
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i] >= n_)
            throw ArgumentError("index " + std::to_string(members_[i]) + " out of range for n = " + std::to_string(n_));
        if (i > 0 && members_[i] <= members_[i - 1]) throw ArgumentError("index set must be strictly increasing");
    }
}

IndexSet IndexSet::from_mask(std::size_t n, std::uint64_t mask) {
    std::vector<std::size_t> m;
    for (std::size_t i = 0; i < n && i < 64; ++i)
        if ((mask >> i) & 1U) m.push_back(i);
    if (n < 64 && (mask >> n) != 0) throw ArgumentError("mask has bits beyond n");
    return IndexSet(n, std::move(m));
}

IndexSet IndexSet::full(std::size_t n) {
    std::vector<std::size_t> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = i;
    return IndexSet(n, std::move(m));
}

bool IndexSet::contains(std::size_t i) const noexcept {
    return std::binary_search(members_.begin(), members_.end(), i);
}

bool IndexSet::is_subset_of(const IndexSet& other) const noexcept {
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

IndexSet IndexSet::complement() const {
    std::vector<std::size_t> m;
    for (std::size_t i = 0; i < n_; ++i)
        if (!contains(i)) m.push_back(i);
    return IndexSet(n_, std::move(m));
}

std::uint64_t IndexSet::mask() const {
    if (n_ > 64) throw SizeLimitError("mask() needs n <= 64");
    std::uint64_t m = 0;
    for (std::size_t i : members_) m |= std::uint64_t{1} << i;
    return m;
}

std::string IndexSet::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(members_[i]);
    }
    return s + "}";
}

} // namespace woven
