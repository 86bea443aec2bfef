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

#ifndef TOPOPHASE_SEARCH_ENGINE_HPP
#define TOPOPHASE_SEARCH_ENGINE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "topophase/structure.hpp"

namespace topophase {

/// Every position subset of `multiset` whose values sum to Z, excluding the
/// full set. Sorted lexicographically by position list.
std::vector<Pattern> equal_sum_submultisets(std::span<const int64_t> multiset, int64_t Z);

/// Sign matrix (+1 at members) nonsingular, and the column system
/// S·x = −c0·(1…1) solves back to the multiset. False on malformed input.
bool uniqueness_check(const CombinatorialStructure &s);

/// ⌊isqrt(n^n) / 2^(n−1)⌋. Every coefficient of a primitive dependence of
/// n+1 rows in {±1}^n, c0 included, is at most this: each is an n×n ±1 minor
/// (bounded by n^(n/2)) divided by the gcd of all of them (a multiple of
/// 2^(n−1)).
int64_t max_coefficient(std::size_t n);

/// (n+1)·⌊n^(n/2)⌋, an upper bound on Σ_{j=0..n} c_j.
int64_t completeness_bound(std::size_t n);

/// max(2n, 40).
int64_t default_sum_bound(std::size_t n);

struct SearchOptions {
    std::size_t n = 3;
    int64_t sum_bound = 0;  // 0 selects default_sum_bound(n)
    std::size_t workers = 1;
    /// Also list every inequivalent pattern selection per record.
    bool a_classes = false;
    /// Cap on candidate selections examined per record when listing A-classes.
    std::size_t a_class_budget = 5'000'000;
};

struct SearchEntry {
    SearchRecord record;
    /// One valid selection (the greedy witness).
    CombinatorialStructure witness;
    /// Canonical sign matrices (rows = patterns as ±1 over positions), only
    /// filled when SearchOptions::a_classes is set.
    std::vector<std::vector<std::vector<int>>> a_classes;
};

struct SearchResult {
    std::size_t n = 0;
    int64_t sum_bound = 0;
    /// Sorted by (denominator, multiset, Z).
    std::vector<SearchEntry> entries;
    /// Sorted, deduplicated χ_min denominators.
    std::vector<int64_t> denominators;

    std::vector<SearchRecord> records() const;
};

/// Every valid structure with Σc_j ≤ sum_bound, one witness per (multiset, Z),
/// ordered by (Σc_j, multiset descending, Z). n ≥ 3.
std::vector<CombinatorialStructure> enumerate_structures(std::size_t n, int64_t sum_bound, std::size_t workers = 1);

SearchResult search_tables(const SearchOptions &options);

/// Union of the χ_min denominators of maximal-length structures at
/// k = 3..n, plus 1 for the two-qubit π.
std::vector<int64_t> table_one_row(std::size_t n, int64_t sum_bound = 0, std::size_t workers = 1);

/// Enumerates supports made of the all-ones row plus n other distinct ±1
/// rows, keeps the irreducible c-states of maximal length and returns their
/// records. Rejects n > 5 unless allow_large is set.
std::vector<SearchRecord> brute_force_oracle(std::size_t n, std::size_t workers = 1, bool allow_large = false);

/// Record for a maximal-length nonnegative dependence: c0 = largest entry,
/// multiset = the rest sorted descending, Z = (Σmultiset − c0)/2.
SearchRecord record_from_certificate(std::span<const int64_t> coefficients);

}  // namespace topophase

#endif
