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

#include "topophase/exact_linalg.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace topophase;

namespace {

// Signed sum over permutations; independent of the elimination code.
Integer permutation_determinant(const IntMatrix &m) {
    std::vector<std::size_t> p(m.rows());
    std::iota(p.begin(), p.end(), 0);
    Integer total = 0;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            for (std::size_t j = i + 1; j < p.size(); ++j) {
                inversions += p[i] > p[j];
            }
        }
        Integer term = inversions % 2 ? -1 : 1;
        for (std::size_t i = 0; i < p.size(); ++i) {
            term *= m(i, p[i]);
        }
        total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

IntMatrix random_matrix(std::mt19937_64 &rng, std::size_t r, std::size_t c, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            m(i, j) = d(rng);
        }
    }
    return m;
}

void expect_in_kernel(const IntMatrix &m, const std::vector<IntVector> &basis) {
    for (const auto &v : basis) {
        for (const auto &x : left_multiply(v, m)) {
            EXPECT_EQ(x, 0);
        }
        EXPECT_EQ(gcd_of(v), 1);
    }
}

}  // namespace

TEST(Rational, CanonicalForm) {
    const Rational q = make_rational(6, -4);
    EXPECT_EQ(q.get_num(), -3);
    EXPECT_EQ(q.get_den(), 2);
    const Rational z = make_rational(0, 7);
    EXPECT_EQ(z.get_num(), 0);
    EXPECT_EQ(z.get_den(), 1);
    EXPECT_THROW(make_rational(1, 0), std::domain_error);
}

TEST(KernelLattice, AntipodalRows) {
    const IntMatrix m{{1, 1, 1}, {-1, -1, -1}};
    const auto basis = kernel_lattice(m);
    ASSERT_EQ(basis.size(), 1u);
    EXPECT_EQ(basis[0], (IntVector{1, 1}));
}

TEST(KernelLattice, FullRankIsEmpty) {
    EXPECT_TRUE(kernel_lattice(IntMatrix{{1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}).empty());
    EXPECT_TRUE(kernel_lattice(IntMatrix{{1, 0}, {0, 1}}).empty());
}

TEST(KernelLattice, SpansFullLatticeNotSublattice) {
    // Rows 2 and 4 force c = (2t, −t, ...) style dependences; a rational
    // basis scaled carelessly would miss primitive vectors.
    const IntMatrix m{{2}, {4}, {6}};
    const auto basis = kernel_lattice(m);
    ASSERT_EQ(basis.size(), 2u);
    expect_in_kernel(m, basis);
    // (1, 1, −1) is in the lattice; it must be an integer combination.
    // With a 2-element basis, solve the 3×2 system exactly.
    IntMatrix b(3, 2);
    for (std::size_t i = 0; i < 3; ++i) {
        b(i, 0) = basis[0][i];
        b(i, 1) = basis[1][i];
    }
    const RationalVector target{1, 1, -1};
    const auto sol = solve_rational(b, target);
    ASSERT_TRUE(sol.has_value());
    for (const auto &x : sol->x) {
        EXPECT_EQ(x.get_den(), 1);
    }
}

TEST(KernelLattice, RandomMatricesProperties) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = 1 + rng() % 8, c = 1 + rng() % 6;
        const auto m = random_matrix(rng, r, c, -3, 3);
        const auto basis = kernel_lattice(m);
        expect_in_kernel(m, basis);
        EXPECT_EQ(basis.size(), r - rank(m));
    }
}

TEST(Determinant, Examples) {
    EXPECT_EQ(determinant(IntMatrix{{5}}), 5);
    // Cofactor expansion by hand: 1·(1−1) − (−1)·(−1−1) + (−1)·(1+1) = −4.
    EXPECT_EQ(determinant(IntMatrix{{1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}), -4);
    EXPECT_EQ(determinant(IntMatrix{{1, 2, 3}, {4, 5, 6}, {1, 2, 3}}), 0);
    EXPECT_THROW(determinant(IntMatrix{{1, 2}}), std::invalid_argument);
}

TEST(Determinant, MatchesPermutationSum) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 4;
        const auto m = random_matrix(rng, n, n, -5, 5);
        EXPECT_EQ(determinant(m), permutation_determinant(m)) << m.str();
    }
}

TEST(SolveRational, Examples) {
    const RationalVector b{3};
    const auto s = solve_rational(IntMatrix{{2}}, b);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s->x[0], make_rational(3, 2));
    EXPECT_EQ(s->free_parameters, 0u);

    const RationalVector b2{0, 1};
    EXPECT_FALSE(solve_rational(IntMatrix{{1}, {1}}, b2).has_value());

    // Three-qubit GHZ rows with a = (0, 1), phases in units of π.
    const IntMatrix a{{1, 1, 1, -1}, {-1, -1, -1, -1}};
    const RationalVector rhs{0, 2};
    const auto g = solve_rational(a, rhs);
    ASSERT_TRUE(g.has_value());
    EXPECT_EQ(g->free_parameters, 2u);
    EXPECT_EQ(g->x[3], -1);
    EXPECT_TRUE(g->determined[3]);
    EXPECT_FALSE(g->determined[0]);
}

TEST(SolveRational, RandomSubstitution) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        const auto m = random_matrix(rng, r, c, -2, 2);
        // Consistent right side: M·x0 for an integer x0.
        RationalVector b(r);
        IntVector x0(c);
        for (auto &x : x0) {
            x = static_cast<long>(rng() % 7) - 3;
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer s = 0;
            for (std::size_t j = 0; j < c; ++j) {
                s += m(i, j) * x0[j];
            }
            b[i] = s;
        }
        const auto sol = solve_rational(m, b);
        ASSERT_TRUE(sol.has_value());
        for (std::size_t i = 0; i < r; ++i) {
            Rational s = 0;
            for (std::size_t j = 0; j < c; ++j) {
                s += Rational(m(i, j)) * sol->x[j];
            }
            EXPECT_EQ(s, b[i]);
        }
        EXPECT_EQ(sol->free_parameters, c - rank(m));
    }
}

TEST(ConvexFeasible, Examples) {
    const std::vector<IntVector> pair{{1, 1, 1}, {-1, -1, -1}};
    const auto l = convex_feasible(pair);
    ASSERT_TRUE(l.has_value());
    EXPECT_EQ((*l)[0], make_rational(1, 2));
    EXPECT_EQ((*l)[1], make_rational(1, 2));

    const std::vector<IntVector> w3{{1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    EXPECT_FALSE(convex_feasible(w3).has_value());

    // Even-parity corners of the cube average to zero.
    const std::vector<IntVector> even{{-1, -1, -1}, {-1, 1, 1}, {1, -1, 1}, {1, 1, -1}};
    const auto q = convex_feasible(even);
    ASSERT_TRUE(q.has_value());
    for (const auto &x : *q) {
        EXPECT_EQ(x, make_rational(1, 4));
    }
}

TEST(ConvexFeasible, CertificatesVerifyBySubstitution) {
    std::mt19937_64 rng(5);
    int feasible = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t m = 1 + rng() % 8, n = 1 + rng() % 4;
        std::vector<IntVector> rows(m, IntVector(n));
        for (auto &r : rows) {
            for (auto &x : r) {
                x = (rng() & 1) ? 1 : -1;
            }
        }
        const auto l = convex_feasible(rows);
        if (!l) {
            continue;
        }
        ++feasible;
        Rational total = 0;
        for (const auto &x : *l) {
            EXPECT_GE(x, 0);
            total += x;
        }
        EXPECT_EQ(total, 1);
        for (std::size_t k = 0; k < n; ++k) {
            Rational s = 0;
            for (std::size_t j = 0; j < m; ++j) {
                s += (*l)[j] * Rational(rows[j][k]);
            }
            EXPECT_EQ(s, 0);
        }
    }
    EXPECT_GT(feasible, 10);
}

TEST(ConvexFeasible, RaggedRowsRejected) {
    const std::vector<IntVector> rows{{1, 1}, {1}};
    EXPECT_THROW(convex_feasible(rows), std::invalid_argument);
}
