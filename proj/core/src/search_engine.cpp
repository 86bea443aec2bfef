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

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "topophase/balance_analysis.hpp"
#include "topophase/exact_linalg.hpp"

namespace topophase {

std::strong_ordering SearchRecord::operator<=>(const SearchRecord &other) const {
    if (auto c = denominator <=> other.denominator; c != 0) {
        return c;
    }
    if (auto c = multiset <=> other.multiset; c != 0) {
        return c;
    }
    return Z <=> other.Z;
}

std::string SearchRecord::str() const {
    std::ostringstream out;
    out << '{';
    for (std::size_t j = 0; j < multiset.size(); ++j) {
        out << (j ? "," : "") << multiset[j];
    }
    out << "} Z=" << Z << " pi/" << denominator;
    return out.str();
}

SearchRecord record_of(const CombinatorialStructure &s) {
    return SearchRecord{s.multiset, s.Z, s.denominator()};
}

namespace {

// Rank over GF(p). For ±1 vectors of length ≤ 9 every minor is below the
// Hadamard bound 9^4.5 < p, so the rank equals the rank over ℚ.
constexpr uint64_t kPrime = 2147483647ULL;

uint64_t mod_pow(uint64_t b, uint64_t e) {
    uint64_t r = 1;
    b %= kPrime;
    while (e) {
        if (e & 1) {
            r = r * b % kPrime;
        }
        b = b * b % kPrime;
        e >>= 1;
    }
    return r;
}

class ModBasis {
   public:
    explicit ModBasis(std::size_t n) : n_(n) {
    }
    std::size_t size() const {
        return rows_.size();
    }
    /// Adds the ±1 vector of `mask` (bit j set = +1) if independent.
    bool insert(uint32_t mask) {
        std::vector<uint64_t> v(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            v[j] = ((mask >> j) & 1U) ? 1 : kPrime - 1;
        }
        return insert(std::move(v));
    }
    bool insert(std::vector<uint64_t> v) {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const uint64_t f = v[pivots_[r]];
            if (f == 0) {
                continue;
            }
            for (std::size_t j = 0; j < n_; ++j) {
                v[j] = (v[j] + (kPrime - f) * rows_[r][j]) % kPrime;
            }
        }
        std::size_t p = 0;
        while (p < n_ && v[p] == 0) {
            ++p;
        }
        if (p == n_) {
            return false;
        }
        const uint64_t inv = mod_pow(v[p], kPrime - 2);
        for (auto &x : v) {
            x = x * inv % kPrime;
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

   private:
    std::size_t n_;
    std::vector<std::vector<uint64_t>> rows_;
    std::vector<std::size_t> pivots_;
};

std::size_t rank_of(std::span<const uint32_t> masks, std::size_t n, std::size_t skip = SIZE_MAX) {
    ModBasis b(n);
    for (std::size_t i = 0; i < masks.size() && b.size() < n; ++i) {
        if (i != skip) {
            b.insert(masks[i]);
        }
    }
    return b.size();
}

Pattern positions_of(uint32_t mask) {
    Pattern p;
    for (std::size_t j = 0; mask; ++j, mask >>= 1) {
        if (mask & 1U) {
            p.push_back(j);
        }
    }
    return p;
}

// Masks sorted by their position lists, lexicographically.
std::vector<uint32_t> pattern_masks(std::span<const int64_t> multiset, int64_t Z) {
    const std::size_t n = multiset.size();
    if (n > 20) {
        throw std::invalid_argument("equal_sum_submultisets: multiset too large");
    }
    const uint32_t full = (n == 32) ? ~0U : ((1U << n) - 1U);
    std::vector<uint32_t> out;
    for (uint32_t mask = 1; mask < full; ++mask) {
        int64_t s = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if ((mask >> j) & 1U) {
                s += multiset[j];
            }
        }
        if (s == Z) {
            out.push_back(mask);
        }
    }
    std::sort(out.begin(), out.end(),
              [](uint32_t a, uint32_t b) { return positions_of(a) < positions_of(b); });
    return out;
}

int64_t isqrt(int64_t v) {
    int64_t r = static_cast<int64_t>(std::sqrt(static_cast<double>(v)));
    while (r * r > v) {
        --r;
    }
    while ((r + 1) * (r + 1) <= v) {
        ++r;
    }
    return r;
}

int64_t int_pow(int64_t b, std::size_t e) {
    int64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        r *= b;
    }
    return r;
}

struct Candidate {
    std::vector<int64_t> multiset;
    int64_t Z;
    std::vector<uint32_t> masks;
};

// Mandatory patterns (those every spanning selection needs) first, then the
// rest; greedy independence then yields a basis.
std::vector<uint32_t> greedy_witness(const std::vector<uint32_t> &masks, std::size_t n) {
    std::vector<uint32_t> order;
    std::vector<uint32_t> optional;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        (rank_of(masks, n, i) < n ? order : optional).push_back(masks[i]);
    }
    order.insert(order.end(), optional.begin(), optional.end());
    ModBasis b(n);
    std::vector<uint32_t> chosen;
    for (uint32_t m : order) {
        if (b.insert(m)) {
            chosen.push_back(m);
        }
        if (chosen.size() == n) {
            break;
        }
    }
    return chosen;
}

std::vector<std::vector<std::size_t>> value_preserving_permutations(std::span<const int64_t> multiset) {
    const std::size_t n = multiset.size();
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    // Groups of equal values are contiguous because the multiset is sorted.
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && multiset[j] == multiset[i]) {
            ++j;
        }
        groups.emplace_back(i, j);
        i = j;
    }
    auto rec = [&](auto &&self, std::size_t g) -> void {
        if (g == groups.size()) {
            out.push_back(perm);
            return;
        }
        auto [lo, hi] = groups[g];
        std::sort(perm.begin() + static_cast<std::ptrdiff_t>(lo), perm.begin() + static_cast<std::ptrdiff_t>(hi));
        do {
            self(self, g + 1);
        } while (std::next_permutation(perm.begin() + static_cast<std::ptrdiff_t>(lo),
                                       perm.begin() + static_cast<std::ptrdiff_t>(hi)));
    };
    rec(rec, 0);
    return out;
}

using SignMatrix = std::vector<std::vector<int>>;

SignMatrix canonical_sign_matrix(std::span<const uint32_t> selection, std::size_t n,
                                 const std::vector<std::vector<std::size_t>> &perms) {
    SignMatrix best;
    for (const auto &perm : perms) {
        SignMatrix m;
        for (uint32_t mask : selection) {
            std::vector<int> row(n);
            for (std::size_t j = 0; j < n; ++j) {
                row[j] = ((mask >> perm[j]) & 1U) ? 1 : -1;
            }
            m.push_back(std::move(row));
        }
        std::sort(m.begin(), m.end());
        if (best.empty() || m < best) {
            best = std::move(m);
        }
    }
    return best;
}

std::vector<SignMatrix> list_a_classes(const std::vector<uint32_t> &masks, std::span<const int64_t> multiset,
                                       std::size_t budget) {
    const std::size_t n = multiset.size();
    std::vector<uint32_t> mandatory, rest;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        (rank_of(masks, n, i) < n ? mandatory : rest).push_back(masks[i]);
    }
    const auto perms = value_preserving_permutations(multiset);
    std::set<SignMatrix> classes;
    std::size_t examined = 0;
    std::vector<uint32_t> chosen = mandatory;

    auto rec = [&](auto &&self, std::size_t start) -> void {
        if (chosen.size() == n) {
            classes.insert(canonical_sign_matrix(chosen, n, perms));
            return;
        }
        for (std::size_t i = start; i < rest.size(); ++i) {
            if (rest.size() - i < n - chosen.size()) {
                return;
            }
            if (++examined > budget) {
                throw std::runtime_error("A-class listing exceeded its budget of " + std::to_string(budget) +
                                         " selections");
            }
            chosen.push_back(rest[i]);
            if (rank_of(chosen, n) == chosen.size()) {
                self(self, i + 1);
            }
            chosen.pop_back();
        }
    };
    if (rank_of(chosen, n) == chosen.size()) {
        rec(rec, 0);
    }
    return {classes.begin(), classes.end()};
}

// All nonincreasing n-tuples with first entry `first`, entries ≤ cap and
// total ≤ bound.
void multisets_with_first(std::size_t n, int64_t first, int64_t bound, std::vector<std::vector<int64_t>> &out) {
    std::vector<int64_t> cur{first};
    auto rec = [&](auto &&self, int64_t sum) -> void {
        if (cur.size() == n) {
            out.push_back(cur);
            return;
        }
        const auto remaining = static_cast<int64_t>(n - cur.size());
        for (int64_t v = std::min(cur.back(), bound - sum - (remaining - 1)); v >= 1; --v) {
            cur.push_back(v);
            self(self, sum + v);
            cur.pop_back();
        }
    };
    rec(rec, first);
}

struct Found {
    CombinatorialStructure witness;
    std::vector<SignMatrix> a_classes;
};

std::vector<Found> search_first_values(std::size_t n, int64_t bound, std::span<const int64_t> firsts, bool a_classes,
                                       std::size_t a_class_budget) {
    const int64_t cap = max_coefficient(n);
    std::vector<Found> found;
    std::vector<std::vector<int64_t>> multisets;
    for (int64_t first : firsts) {
        multisets.clear();
        multisets_with_first(n, first, bound, multisets);
        for (const auto &ms : multisets) {
            int64_t g = 0, total = 0;
            for (auto v : ms) {
                g = std::gcd(g, v);
                total += v;
            }
            if (g != 1) {
                continue;
            }
            // Subset sums of all positions, bucketed by value.
            std::map<int64_t, std::vector<uint32_t>> by_sum;
            const uint32_t full = (1U << n) - 1U;
            for (uint32_t mask = 1; mask < full; ++mask) {
                int64_t s = 0;
                for (std::size_t j = 0; j < n; ++j) {
                    if ((mask >> j) & 1U) {
                        s += ms[j];
                    }
                }
                by_sum[s].push_back(mask);
            }
            for (int64_t Z = 1; 2 * Z < total; ++Z) {
                const int64_t c0 = total - 2 * Z;
                if (c0 < ms[0] || c0 > cap) {
                    continue;
                }
                auto it = by_sum.find(Z);
                if (it == by_sum.end() || it->second.size() < n) {
                    continue;
                }
                auto masks = it->second;
                std::sort(masks.begin(), masks.end(),
                          [](uint32_t a, uint32_t b) { return positions_of(a) < positions_of(b); });
                if (rank_of(masks, n) < n) {
                    continue;
                }
                Found f;
                f.witness.multiset = ms;
                f.witness.Z = Z;
                for (uint32_t m : greedy_witness(masks, n)) {
                    f.witness.patterns.push_back(positions_of(m));
                }
                validate_structure(f.witness);
                if (a_classes) {
                    f.a_classes = list_a_classes(masks, ms, a_class_budget);
                }
                found.push_back(std::move(f));
            }
        }
    }
    return found;
}

bool structure_order(const CombinatorialStructure &a, const CombinatorialStructure &b) {
    const auto ta = a.total(), tb = b.total();
    if (ta != tb) {
        return ta < tb;
    }
    if (a.multiset != b.multiset) {
        return a.multiset > b.multiset;
    }
    return a.Z < b.Z;
}

std::vector<Found> run_search(std::size_t n, int64_t bound, std::size_t workers, bool a_classes,
                              std::size_t a_class_budget) {
    if (n < 3) {
        throw std::invalid_argument("search needs n >= 3");
    }
    if (n > 9) {
        throw std::invalid_argument("search supports n <= 9");
    }
    if (bound < static_cast<int64_t>(n)) {
        throw std::invalid_argument("sum bound must be at least n");
    }
    workers = std::max<std::size_t>(1, workers);
    const int64_t top = std::min(max_coefficient(n), bound - static_cast<int64_t>(n) + 1);
    // Round-robin over the largest value; each worker owns a fixed slice.
    std::vector<std::vector<int64_t>> slices(workers);
    for (int64_t first = 1; first <= top; ++first) {
        slices[static_cast<std::size_t>(first - 1) % workers].push_back(first);
    }
    std::vector<std::vector<Found>> parts(workers);
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> threads;
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                try {
                    parts[w] = search_first_values(n, bound, slices[w], a_classes, a_class_budget);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    std::vector<Found> all;
    for (auto &p : parts) {
        std::move(p.begin(), p.end(), std::back_inserter(all));
    }
    std::sort(all.begin(), all.end(),
              [](const Found &a, const Found &b) { return structure_order(a.witness, b.witness); });
    return all;
}

int64_t bareiss_det(std::array<std::array<int64_t, 10>, 10> a, std::size_t n) {
    int64_t sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) {
                ++r;
            }
            if (r == n) {
                return 0;
            }
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

}  // namespace

std::vector<Pattern> equal_sum_submultisets(std::span<const int64_t> multiset, int64_t Z) {
    std::vector<Pattern> out;
    for (uint32_t m : pattern_masks(multiset, Z)) {
        out.push_back(positions_of(m));
    }
    return out;
}

bool uniqueness_check(const CombinatorialStructure &s) {
    const std::size_t n = s.n();
    if (n == 0 || s.patterns.size() != n) {
        return false;
    }
    IntMatrix sign(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            sign(k, j) = -1;
        }
        for (std::size_t j : s.patterns[k]) {
            if (j >= n) {
                return false;
            }
            sign(k, j) = 1;
        }
    }
    if (determinant(sign) == 0) {
        return false;
    }
    RationalVector rhs(n, Rational(-s.c0()));
    const auto sol = solve_rational(sign, rhs);
    if (!sol) {
        return false;
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (sol->x[j] != Rational(s.multiset[j])) {
            return false;
        }
    }
    return true;
}

int64_t max_coefficient(std::size_t n) {
    if (n < 1 || n > 12) {
        throw std::invalid_argument("max_coefficient: n out of range");
    }
    return isqrt(int_pow(static_cast<int64_t>(n), n)) / (int64_t{1} << (n - 1));
}

int64_t completeness_bound(std::size_t n) {
    if (n < 1 || n > 12) {
        throw std::invalid_argument("completeness_bound: n out of range");
    }
    return static_cast<int64_t>(n + 1) * isqrt(int_pow(static_cast<int64_t>(n), n));
}

int64_t default_sum_bound(std::size_t n) {
    return std::max<int64_t>(2 * static_cast<int64_t>(n), 40);
}

std::vector<SearchRecord> SearchResult::records() const {
    std::vector<SearchRecord> out;
    out.reserve(entries.size());
    for (const auto &e : entries) {
        out.push_back(e.record);
    }
    return out;
}

std::vector<CombinatorialStructure> enumerate_structures(std::size_t n, int64_t sum_bound, std::size_t workers) {
    std::vector<CombinatorialStructure> out;
    for (auto &f : run_search(n, sum_bound, workers, false, 0)) {
        out.push_back(std::move(f.witness));
    }
    return out;
}

SearchResult search_tables(const SearchOptions &options) {
    SearchResult result;
    result.n = options.n;
    result.sum_bound = options.sum_bound > 0 ? options.sum_bound : default_sum_bound(options.n);
    auto found = run_search(options.n, result.sum_bound, options.workers, options.a_classes, options.a_class_budget);
    for (auto &f : found) {
        SearchEntry e{record_of(f.witness), std::move(f.witness), std::move(f.a_classes)};
        result.entries.push_back(std::move(e));
    }
    std::sort(result.entries.begin(), result.entries.end(),
              [](const SearchEntry &a, const SearchEntry &b) { return a.record < b.record; });
    std::set<int64_t> dens;
    for (const auto &e : result.entries) {
        dens.insert(e.record.denominator);
    }
    result.denominators.assign(dens.begin(), dens.end());
    return result;
}

std::vector<int64_t> table_one_row(std::size_t n, int64_t sum_bound, std::size_t workers) {
    std::set<int64_t> dens{1};
    for (std::size_t k = 3; k <= n; ++k) {
        SearchOptions o;
        o.n = k;
        o.sum_bound = sum_bound;
        o.workers = workers;
        for (auto d : search_tables(o).denominators) {
            dens.insert(d);
        }
    }
    return {dens.begin(), dens.end()};
}

SearchRecord record_from_certificate(std::span<const int64_t> coefficients) {
    if (coefficients.size() < 2) {
        throw std::invalid_argument("record_from_certificate: need at least two coefficients");
    }
    std::vector<int64_t> c(coefficients.begin(), coefficients.end());
    std::sort(c.begin(), c.end(), std::greater<>());
    const int64_t c0 = c.front();
    SearchRecord r;
    r.multiset.assign(c.begin() + 1, c.end());
    const int64_t s = std::accumulate(r.multiset.begin(), r.multiset.end(), int64_t{0});
    if ((s - c0) % 2 != 0) {
        throw std::invalid_argument("record_from_certificate: coefficient total is odd");
    }
    r.Z = (s - c0) / 2;
    r.denominator = s - r.Z;
    return r;
}

std::vector<SearchRecord> brute_force_oracle(std::size_t n, std::size_t workers, bool allow_large) {
    if (n < 2) {
        throw std::invalid_argument("brute_force_oracle: n must be at least 2");
    }
    if (n > 5 && !allow_large) {
        throw std::invalid_argument("brute_force_oracle: n = " + std::to_string(n) +
                                    " is too large (limit 5 unless explicitly allowed)");
    }
    if (n > 7) {
        throw std::invalid_argument("brute_force_oracle: n > 7 is not supported");
    }
    const std::size_t rows = (std::size_t{1} << n) - 1;  // candidates besides all-ones
    const uint32_t ones = static_cast<uint32_t>(rows);
    workers = std::max<std::size_t>(1, workers);

    std::vector<std::map<SearchRecord, std::vector<uint32_t>>> parts(workers);
    {
        std::vector<std::jthread> threads;
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                auto &found = parts[w];
                std::vector<uint32_t> pick(n);
                std::array<std::array<int64_t, 10>, 10> a{};
                std::array<std::array<int64_t, 10>, 10> minor{};
                std::vector<uint32_t> support(n + 1);
                std::vector<int64_t> c(n + 1);
                for (std::size_t first = w; first + n <= rows; first += workers) {
                    std::iota(pick.begin(), pick.end(), static_cast<uint32_t>(first));
                    do {
                        support[0] = ones;
                        for (std::size_t i = 0; i < n; ++i) {
                            support[i + 1] = pick[i];
                        }
                        for (std::size_t r = 0; r <= n; ++r) {
                            for (std::size_t k = 0; k < n; ++k) {
                                a[r][k] = ((support[r] >> (n - 1 - k)) & 1U) ? 1 : -1;
                            }
                            a[r][n] = -1;
                        }
                        if (bareiss_det(a, n + 1) == 0) {
                            continue;
                        }
                        // c_j = (−1)^j · det(W without row j).
                        bool ok = true;
                        int sign = 0;
                        for (std::size_t j = 0; j <= n && ok; ++j) {
                            for (std::size_t r = 0, rr = 0; r <= n; ++r) {
                                if (r == j) {
                                    continue;
                                }
                                for (std::size_t k = 0; k < n; ++k) {
                                    minor[rr][k] = a[r][k];
                                }
                                ++rr;
                            }
                            const int64_t det = bareiss_det(minor, n) * ((j % 2) ? -1 : 1);
                            const int s = det > 0 ? 1 : (det < 0 ? -1 : 0);
                            if (s == 0 || (sign != 0 && s != sign)) {
                                ok = false;
                            }
                            sign = s;
                            c[j] = det < 0 ? -det : det;
                        }
                        if (!ok) {
                            continue;
                        }
                        int64_t g = 0;
                        for (auto v : c) {
                            g = std::gcd(g, v);
                        }
                        for (auto &v : c) {
                            v /= g;
                        }
                        auto rec = record_from_certificate(c);
                        if (!found.contains(rec)) {
                            found.emplace(std::move(rec), support);
                        }
                        // Advance the tail of the combination only; `first`
                        // stays fixed for this worker slice.
                    } while ([&] {
                        for (std::size_t i = n; i-- > 1;) {
                            if (pick[i] < rows - n + i) {
                                ++pick[i];
                                for (std::size_t j = i + 1; j < n; ++j) {
                                    pick[j] = pick[j - 1] + 1;
                                }
                                return true;
                            }
                        }
                        return false;
                    }());
                }
            });
        }
    }
    std::map<SearchRecord, std::vector<uint32_t>> merged;
    for (auto &p : parts) {
        for (auto &[rec, support] : p) {
            merged.emplace(rec, support);
        }
    }
    // Cross-check one witness support per record with the exact analysis.
    std::vector<SearchRecord> out;
    for (const auto &[rec, support] : merged) {
        std::vector<std::string> bits;
        for (uint32_t s : support) {
            std::string b(n, '0');
            for (std::size_t k = 0; k < n; ++k) {
                if ((s >> (n - 1 - k)) & 1U) {
                    b[k] = '1';
                }
            }
            bits.push_back(std::move(b));
        }
        const auto w = weight_matrix(SparseState::from_bits(n, bits));
        if (!is_irreducible_maximal_length(w) || !convex_certificate(w)) {
            throw std::logic_error("brute_force_oracle: fast filter disagrees with exact analysis for " + rec.str());
        }
        out.push_back(rec);
    }
    return out;
}

}  // namespace topophase
