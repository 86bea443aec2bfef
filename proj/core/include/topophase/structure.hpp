// Copyright 2026 The Topophase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TOPOPHASE_STRUCTURE_HPP
#define TOPOPHASE_STRUCTURE_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace topophase {

/// Positions (0-based) into a multiset whose values sum to the target Z.
using Pattern = std::vector<std::size_t>;

/// One multiset {c_1 ≥ … ≥ c_n}, a target sum Z and one membership pattern
/// per qubit. Pattern k lists the positions j with bit k set in term j+1 of
/// the representative state.
struct CombinatorialStructure {
    std::vector<int64_t> multiset;
    int64_t Z = 0;
    std::vector<Pattern> patterns;

    std::size_t n() const noexcept {
        return multiset.size();
    }
    int64_t total() const noexcept {
        int64_t s = 0;
        for (auto v : multiset) {
            s += v;
        }
        return s;
    }
    /// Coefficient of the all-ones row, Σc_j − 2Z.
    int64_t c0() const noexcept {
        return total() - 2 * Z;
    }
    /// χ_min = π / denominator().
    int64_t denominator() const noexcept {
        return total() - Z;
    }

    bool operator==(const CombinatorialStructure &) const = default;
};

/// Table key: the multiset (c_0 excluded), Z and the χ_min denominator.
struct SearchRecord {
    std::vector<int64_t> multiset;
    int64_t Z = 0;
    int64_t denominator = 0;

    bool operator==(const SearchRecord &) const = default;
    /// Orders by (denominator, multiset, Z).
    std::strong_ordering operator<=>(const SearchRecord &other) const;

    std::string str() const;
};

SearchRecord record_of(const CombinatorialStructure &s);

}  // namespace topophase

#endif
