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

#ifndef TOPOPHASE_EXACT_LINALG_HPP
#define TOPOPHASE_EXACT_LINALG_HPP

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace topophase {

/// Arbitrary-precision integer.
using Integer = mpz_class;

/// Arbitrary-precision rational. GMP keeps every value canonical: the
/// denominator is positive, gcd(|num|, den) = 1 and zero is 0/1, as long as
/// values are built through `make_rational` or arithmetic on canonical values.
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Builds the canonical rational num/den. Throws std::domain_error on den == 0.
Rational make_rational(const Integer &num, const Integer &den = 1);

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
   public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix from_rows(std::span<const IntVector> rows, std::size_t cols);

    std::size_t rows() const noexcept {
        return rows_;
    }
    std::size_t cols() const noexcept {
        return cols_;
    }
    bool square() const noexcept {
        return rows_ == cols_;
    }

    Integer &operator()(std::size_t r, std::size_t c) {
        return entries_[r * cols_ + c];
    }
    const Integer &operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }

    IntVector row(std::size_t r) const;
    IntVector column(std::size_t c) const;
    IntMatrix transposed() const;
    /// Keeps only the listed rows, in the listed order.
    IntMatrix select_rows(std::span<const std::size_t> which) const;
    /// Appends a column whose entries all equal `value`.
    IntMatrix with_constant_column(long value) const;

    bool operator==(const IntMatrix &other) const = default;

    std::string str() const;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> entries_;
};

Integer gcd_of(std::span<const Integer> values);
Integer sum_of(std::span<const Integer> values);
/// Divides by the gcd of the entries. The zero vector is returned unchanged.
IntVector make_primitive(IntVector v);
/// Computes vᵀM (a length-cols vector).
IntVector left_multiply(std::span<const Integer> v, const IntMatrix &m);

/// Basis of the integer left kernel { c ∈ ℤ^rows : cᵀM = 0 }.
///
/// The basis is read off a unimodular transform that brings M to echelon form
/// with extended-gcd row operations, so it spans the full lattice (not just a
/// sublattice of finite index) and every vector is primitive. Each vector is
/// sign-normalized so its first nonzero entry is positive. Empty when M has
/// full row rank.
std::vector<IntVector> kernel_lattice(const IntMatrix &m);

/// Rank over the rationals.
std::size_t rank(const IntMatrix &m);

/// Exact determinant via fraction-free (Bareiss) elimination.
/// Throws std::invalid_argument when M is not square.
Integer determinant(const IntMatrix &m);

struct RationalSolution {
    /// One solution; free variables are set to zero.
    RationalVector x;
    /// Dimension of the solution space, cols − rank(M).
    std::size_t free_parameters = 0;
    std::size_t rank = 0;
    /// determined[c] is true when variable c takes the same value in every
    /// solution (it does not move along any kernel direction).
    std::vector<bool> determined;
};

/// Solves M·x = b exactly. Empty when the system is inconsistent.
/// Throws std::invalid_argument when b.size() != M.rows().
std::optional<RationalSolution> solve_rational(const IntMatrix &m, std::span<const Rational> b);

/// Finds λ ≥ 0 with Σλ_j = 1 and Σ_j λ_j·rows[j] = 0, i.e. a certificate that
/// the origin lies in the convex hull of the rows. The result is a vertex of
/// that feasible polytope; it is exact (rational simplex, Bland's rule).
/// Throws std::invalid_argument when the rows have different lengths.
std::optional<RationalVector> convex_feasible(std::span<const IntVector> rows);

}  // namespace topophase

#endif
