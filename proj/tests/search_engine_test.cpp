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

#include "topophase/search_engine.hpp"

#include <gtest/gtest.h>

#include <set>

#include "reference_data.hpp"
#include "topophase/balance_analysis.hpp"

using namespace topophase;

namespace {

std::set<SearchRecord> records_for(std::size_t n, int64_t bound = 0, std::size_t workers = 1) {
    SearchOptions o;
    o.n = n;
    o.sum_bound = bound;
    o.workers = workers;
    const auto r = search_tables(o).records();
    return {r.begin(), r.end()};
}

}  // namespace

TEST(EqualSumSubmultisets, Examples) {
    const std::vector<int64_t> ms{4, 3, 3, 1, 1, 1, 1};
    const auto p = equal_sum_submultisets(ms, 4);
    ASSERT_EQ(p.size(), 10u);
    EXPECT_EQ(p.front(), (Pattern{0}));
    EXPECT_EQ(p.back(), (Pattern{3, 4, 5, 6}));
    int three_one = 0;
    for (const auto &x : p) {
        three_one += x.size() == 2;
    }
    EXPECT_EQ(three_one, 8);

    const std::vector<int64_t> ones{1, 1, 1};
    EXPECT_EQ(equal_sum_submultisets(ones, 1).size(), 3u);
    const std::vector<int64_t> twos{2, 2};
    EXPECT_TRUE(equal_sum_submultisets(twos, 3).empty());
    // The full set is never a pattern.
    EXPECT_TRUE(equal_sum_submultisets(twos, 4).empty());
}

TEST(UniquenessCheck, Examples) {
    EXPECT_TRUE(uniqueness_check(reference::worked_selection()));
    // Drop {4} and {1,1,1,1} for two more {3,1} patterns.
    auto s = reference::worked_selection();
    s.patterns[0] = {2, 3};
    s.patterns[6] = {2, 4};
    EXPECT_FALSE(uniqueness_check(s));
    // Two equal-value positions with identical membership: singular.
    const CombinatorialStructure twin{{2, 1, 1}, 2, {{0}, {1, 2}, {1, 2}}};
    EXPECT_FALSE(uniqueness_check(twin));
}

TEST(Bounds, Arithmetic) {
    // (n+1)·⌊n^(n/2)⌋: 4·⌊5.196⌋, 6·⌊55.9⌋, 8·⌊907.49⌋.
    EXPECT_EQ(completeness_bound(3), 20);
    EXPECT_EQ(completeness_bound(5), 330);
    EXPECT_EQ(completeness_bound(7), 7256);
    EXPECT_EQ(max_coefficient(3), 1);
    EXPECT_EQ(max_coefficient(5), 3);
    EXPECT_EQ(max_coefficient(6), 6);
    EXPECT_EQ(max_coefficient(7), 14);
    EXPECT_EQ(default_sum_bound(3), 40);
}

TEST(EnumerateStructures, SmallN) {
    const auto s3 = enumerate_structures(3, 6);
    ASSERT_EQ(s3.size(), 1u);
    EXPECT_EQ(s3[0].multiset, (std::vector<int64_t>{1, 1, 1}));
    EXPECT_EQ(s3[0].Z, 1);

    const auto s4 = enumerate_structures(4, 8);
    ASSERT_EQ(s4.size(), 1u);
    EXPECT_EQ(s4[0].multiset, (std::vector<int64_t>{1, 1, 1, 1}));

    std::set<SearchRecord> got;
    for (const auto &s : enumerate_structures(5, 12)) {
        got.insert(record_of(s));
    }
    EXPECT_EQ(got, reference::structure_tables().at(5));
}

TEST(EnumerateStructures, EveryEmissionIsValid) {
    for (std::size_t n = 3; n <= 7; ++n) {
        for (const auto &s : enumerate_structures(n, default_sum_bound(n))) {
            EXPECT_NO_THROW(validate_structure(s));
            EXPECT_TRUE(uniqueness_check(s));
            EXPECT_EQ(s.c0(), s.total() - 2 * s.Z);
            EXPECT_EQ((s.total() + s.c0()) % 2, 0);
        }
    }
}

TEST(SearchTables, SevenQubitSpotChecks) {
    const auto got = records_for(7);
    for (const auto &r : reference::seven_qubit_spot_checks()) {
        EXPECT_TRUE(got.contains(r)) << r.str();
    }
}

TEST(SearchTables, DeterministicAcrossWorkers) {
    EXPECT_EQ(records_for(6, 0, 1), records_for(6, 0, 3));
    SearchOptions a, b;
    a.n = b.n = 7;
    a.workers = 1;
    b.workers = 4;
    const auto ra = search_tables(a), rb = search_tables(b);
    EXPECT_EQ(ra.records(), rb.records());
    for (std::size_t i = 0; i < ra.entries.size(); ++i) {
        EXPECT_EQ(ra.entries[i].witness, rb.entries[i].witness);
    }
}

TEST(SearchTables, CompleteBoundAddsNothingUpToSeven) {
    for (std::size_t n = 3; n <= 7; ++n) {
        EXPECT_EQ(records_for(n), records_for(n, completeness_bound(n))) << "n=" << n;
    }
}

TEST(SearchTables, AllDistinctMultisetsAbsentUpToSix) {
    for (std::size_t n = 3; n <= 6; ++n) {
        for (const auto &r : records_for(n)) {
            const std::set<int64_t> values(r.multiset.begin(), r.multiset.end());
            EXPECT_LT(values.size(), r.multiset.size()) << r.str();
        }
    }
}

TEST(SearchTables, EachRecordExtendsByOneMultiplicity) {
    for (std::size_t n = 3; n <= 5; ++n) {
        const auto next = records_for(n + 1);
        for (const auto &r : records_for(n)) {
            bool found = false;
            for (const auto &s : next) {
                for (std::size_t j = 0; j < r.multiset.size() && !found; ++j) {
                    auto grown = r.multiset;
                    grown.insert(grown.begin() + static_cast<std::ptrdiff_t>(j), r.multiset[j]);
                    found = s.multiset == grown;
                }
            }
            EXPECT_TRUE(found) << r.str();
        }
    }
}

TEST(SearchTables, AClassListing) {
    SearchOptions o;
    o.n = 5;
    o.a_classes = true;
    const auto r = search_tables(o);
    for (const auto &e : r.entries) {
        EXPECT_FALSE(e.a_classes.empty()) << e.record.str();
        for (const auto &m : e.a_classes) {
            EXPECT_EQ(m.size(), 5u);
            EXPECT_TRUE(std::is_sorted(m.begin(), m.end()));
        }
    }
    // {1,1,1,1,1} with Z = 1: the five singletons are the only selection.
    for (const auto &e : r.entries) {
        if (e.record.Z == 1) {
            EXPECT_EQ(e.a_classes.size(), 1u);
        }
    }
}

TEST(BruteForceOracle, SmallN) {
    const auto t = reference::structure_tables();
    for (std::size_t n = 3; n <= 5; ++n) {
        const auto b = brute_force_oracle(n, 2);
        EXPECT_EQ(std::set<SearchRecord>(b.begin(), b.end()), t.at(n)) << "n=" << n;
    }
    EXPECT_THROW(brute_force_oracle(6), std::invalid_argument);
}

TEST(RecordFromCertificate, Examples) {
    const std::vector<int64_t> c{1, 1, 1, 1};
    const auto r = record_from_certificate(c);
    EXPECT_EQ(r.multiset, (std::vector<int64_t>{1, 1, 1}));
    EXPECT_EQ(r.Z, 1);
    EXPECT_EQ(r.denominator, 2);
    const std::vector<int64_t> odd{2, 1, 1, 1};
    EXPECT_THROW(record_from_certificate(odd), std::invalid_argument);
}
