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

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace woven {

/// Subset of {0, ..., n-1}, members strictly increasing.
class IndexSet {
public:
    IndexSet() = default;
    /// Throws ArgumentError unless members are sorted, unique and < n.
    IndexSet(std::size_t n, std::vector<std::size_t> members);
    IndexSet(std::size_t n, std::initializer_list<std::size_t> members)
        : IndexSet(n, std::vector<std::size_t>(members)) {}

    static IndexSet from_mask(std::size_t n, std::uint64_t mask);
    static IndexSet full(std::size_t n);
    static IndexSet none(std::size_t n) { return IndexSet(n, std::vector<std::size_t>{}); }

    std::size_t ambient() const noexcept { return n_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const std::vector<std::size_t>& members() const noexcept { return members_; }
    std::size_t operator[](std::size_t i) const noexcept { return members_[i]; }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    bool contains(std::size_t i) const noexcept;
    bool is_subset_of(const IndexSet& other) const noexcept;
    IndexSet complement() const;

    /// Bit i set iff i is a member; requires n <= 64.
    std::uint64_t mask() const;

    /// "{0, 2}"
    std::string to_string() const;

    friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> members_;
};

} // namespace woven
