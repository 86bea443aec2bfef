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

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace topophase {

Rational make_rational(const Integer &num, const Integer &den) {
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw std::invalid_argument("IntMatrix: entry count does not match rows*cols");
    }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto &r : rows) {
        if (r.size() != cols_) {
            throw std::invalid_argument("IntMatrix: ragged initializer");
        }
        for (long v : r) {
            entries_.emplace_back(v);
        }
    }
}

IntMatrix IntMatrix::from_rows(std::span<const IntVector> rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw std::invalid_argument("IntMatrix::from_rows: row length mismatch");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

IntVector IntMatrix::row(std::size_t r) const {
    return IntVector(entries_.begin() + r * cols_, entries_.begin() + (r + 1) * cols_);
}

IntVector IntMatrix::column(std::size_t c) const {
    IntVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        out[r] = (*this)(r, c);
    }
    return out;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> which) const {
    IntMatrix out(which.size(), cols_);
    for (std::size_t i = 0; i < which.size(); ++i) {
        if (which[i] >= rows_) {
            throw std::out_of_range("IntMatrix::select_rows: row index out of range");
        }
        for (std::size_t c = 0; c < cols_; ++c) {
            out(i, c) = (*this)(which[i], c);
        }
    }
    return out;
}

IntMatrix IntMatrix::with_constant_column(long value) const {
    IntMatrix out(rows_, cols_ + 1);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(r, c) = (*this)(r, c);
        }
        out(r, cols_) = value;
    }
    return out;
}

std::string IntMatrix::str() const {
    std::ostringstream out;
    for (std::size_t r = 0; r < rows_; ++r) {
        out << (r == 0 ? "[" : " ") << "[";
        for (std::size_t c = 0; c < cols_; ++c) {
            out << (c ? ", " : "") << (*this)(r, c);
        }
        out << "]" << (r + 1 == rows_ ? "]" : "\n");
    }
    if (rows_ == 0) {
        out << "[]";
    }
    return out.str();
}

Integer gcd_of(std::span<const Integer> values) {
    Integer g = 0;
    for (const auto &v : values) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    return g;
}

Integer sum_of(std::span<const Integer> values) {
    Integer s = 0;
    for (const auto &v : values) {
        s += v;
    }
    return s;
}

IntVector make_primitive(IntVector v) {
    Integer g = gcd_of(v);
    if (g > 1) {
        for (auto &x : v) {
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        }
    }
    return v;
}

IntVector left_multiply(std::span<const Integer> v, const IntMatrix &m) {
    if (v.size() != m.rows()) {
        throw std::invalid_argument("left_multiply: dimension mismatch");
    }
    IntVector out(m.cols(), Integer(0));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (v[r] == 0) {
            continue;
        }
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out[c] += v[r] * m(r, c);
        }
    }
    return out;
}

namespace {

using Rows = std::vector<IntVector>;

// Replaces rows p and i by a unimodular combination so that row i gets a zero
// in column `col` and row p holds gcd of the two entries.
void combine_rows(Rows &rows, std::size_t p, std::size_t i, std::size_t col) {
    const Integer a = rows[p][col];
    const Integer b = rows[i][col];
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const Integer ag = a / g;
    const Integer bg = b / g;
    for (std::size_t c = 0; c < rows[p].size(); ++c) {
        Integer rp = s * rows[p][c] + t * rows[i][c];
        Integer ri = ag * rows[i][c] - bg * rows[p][c];
        rows[p][c] = std::move(rp);
        rows[i][c] = std::move(ri);
    }
}

// Integer echelon form over the first `width` columns. Returns the number of
// pivot rows; rows past that are zero on those columns. Pivots are positive
// and, when `reduce_above` is set, entries above each pivot are reduced into
// [0, pivot), giving the Hermite normal form.
std::size_t integer_echelon(Rows &rows, std::size_t width, bool reduce_above) {
    std::size_t p = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    for (std::size_t col = 0; col < width && p < rows.size(); ++col) {
        for (std::size_t i = p + 1; i < rows.size(); ++i) {
            if (rows[i][col] != 0) {
                combine_rows(rows, p, i, col);
            }
        }
        if (rows[p][col] == 0) {
            continue;
        }
        if (rows[p][col] < 0) {
            for (auto &x : rows[p]) {
                x = -x;
            }
        }
        pivots.emplace_back(p, col);
        ++p;
    }
    if (reduce_above) {
        for (auto [pr, pc] : pivots) {
            const Integer &pivot = rows[pr][pc];
            for (std::size_t i = 0; i < pr; ++i) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][pc].get_mpz_t(), pivot.get_mpz_t());
                if (q != 0) {
                    for (std::size_t c = 0; c < rows[i].size(); ++c) {
                        rows[i][c] -= q * rows[pr][c];
                    }
                }
            }
        }
    }
    return p;
}

}  // namespace

std::vector<IntVector> kernel_lattice(const IntMatrix &m) {
    const std::size_t r = m.rows();
    const std::size_t c = m.cols();
    Rows aug(r, IntVector(c + r, Integer(0)));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            aug[i][j] = m(i, j);
        }
        aug[i][c + i] = 1;
    }
    const std::size_t pivots = integer_echelon(aug, c, false);

    Rows basis;
    for (std::size_t i = pivots; i < r; ++i) {
        basis.emplace_back(aug[i].begin() + static_cast<std::ptrdiff_t>(c), aug[i].end());
    }
    if (basis.empty()) {
        return basis;
    }
    // Canonical (Hermite) basis of the same lattice.
    const std::size_t k = integer_echelon(basis, r, true);
    basis.resize(k);
    for (auto &v : basis) {
        v = make_primitive(std::move(v));
    }
    return basis;
}

namespace {

// Fraction-free elimination; returns rank and (for square input) the
// determinant.
std::pair<std::size_t, Integer> bareiss(std::vector<Integer> a, std::size_t rows, std::size_t cols) {
    auto at = [&](std::size_t r, std::size_t c) -> Integer & { return a[r * cols + c]; };
    Integer prev = 1;
    int sign = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && at(piv, col) == 0) {
            ++piv;
        }
        if (piv == rows) {
            continue;
        }
        if (piv != rank) {
            for (std::size_t c = 0; c < cols; ++c) {
                std::swap(at(piv, c), at(rank, c));
            }
            sign = -sign;
        }
        const Integer pivot = at(rank, col);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const Integer factor = at(r, col);
            for (std::size_t c = col + 1; c < cols; ++c) {
                Integer v = pivot * at(r, c) - factor * at(rank, c);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                at(r, c) = std::move(v);
            }
            at(r, col) = 0;
        }
        prev = pivot;
        ++rank;
    }
    Integer det = 0;
    if (rows == cols && rank == rows) {
        det = rows == 0 ? Integer(1) : Integer(sign * at(rows - 1, cols - 1));
    } else if (rows == 0 && cols == 0) {
        det = 1;
    }
    return {rank, det};
}

std::vector<Integer> entries_of(const IntMatrix &m) {
    std::vector<Integer> e;
    e.reserve(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            e.push_back(m(r, c));
        }
    }
    return e;
}

}  // namespace

std::size_t rank(const IntMatrix &m) {
    return bareiss(entries_of(m), m.rows(), m.cols()).first;
}

Integer determinant(const IntMatrix &m) {
    if (!m.square()) {
        throw std::invalid_argument("determinant: matrix is " + std::to_string(m.rows()) + "x" +
                                    std::to_string(m.cols()) + ", not square");
    }
    return bareiss(entries_of(m), m.rows(), m.cols()).second;
}

std::optional<RationalSolution> solve_rational(const IntMatrix &m, std::span<const Rational> b) {
    if (b.size() != m.rows()) {
        throw std::invalid_argument("solve_rational: right-hand side has " + std::to_string(b.size()) +
                                    " entries, matrix has " + std::to_string(m.rows()) + " rows");
    }
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<RationalVector> a(rows, RationalVector(cols + 1));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            a[r][c] = Rational(m(r, c));
        }
        a[r][cols] = b[r];
    }

    // Reduced row echelon form.
    std::vector<std::size_t> pivot_cols;
    std::size_t p = 0;
    for (std::size_t col = 0; col < cols && p < rows; ++col) {
        std::size_t piv = p;
        while (piv < rows && a[piv][col] == 0) {
            ++piv;
        }
        if (piv == rows) {
            continue;
        }
        std::swap(a[piv], a[p]);
        const Rational inv = 1 / a[p][col];
        for (auto &x : a[p]) {
            x *= inv;
        }
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == p || a[r][col] == 0) {
                continue;
            }
            const Rational f = a[r][col];
            for (std::size_t c = col; c <= cols; ++c) {
                a[r][c] -= f * a[p][c];
            }
        }
        pivot_cols.push_back(col);
        ++p;
    }
    for (std::size_t r = p; r < rows; ++r) {
        if (a[r][cols] != 0) {
            return std::nullopt;
        }
    }

    RationalSolution sol;
    sol.rank = p;
    sol.free_parameters = cols - p;
    sol.x.assign(cols, Rational(0));
    sol.determined.assign(cols, false);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
        sol.x[pivot_cols[i]] = a[i][cols];
        is_pivot[pivot_cols[i]] = true;
    }
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
        bool fixed = true;
        for (std::size_t c = 0; c < cols && fixed; ++c) {
            if (!is_pivot[c] && a[i][c] != 0) {
                fixed = false;
            }
        }
        sol.determined[pivot_cols[i]] = fixed;
    }
    return sol;
}

std::optional<RationalVector> convex_feasible(std::span<const IntVector> rows) {
    const std::size_t m = rows.size();
    if (m == 0) {
        return std::nullopt;
    }
    const std::size_t n = rows[0].size();
    for (const auto &r : rows) {
        if (r.size() != n) {
            throw std::invalid_argument("convex_feasible: rows have different lengths");
        }
    }

    // Phase-one tableau: n zero-combination constraints plus Σλ = 1, one
    // artificial variable per constraint. Columns: λ_0..λ_{m-1}, artificials,
    // right-hand side.
    const std::size_t k = n + 1;
    const std::size_t width = m + k + 1;
    const std::size_t rhs = width - 1;
    std::vector<RationalVector> t(k, RationalVector(width));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            t[i][j] = Rational(rows[j][i]);
        }
    }
    for (std::size_t j = 0; j < m; ++j) {
        t[n][j] = 1;
    }
    t[n][rhs] = 1;
    // Constraint rows with a zero right-hand side may be negated freely; keep
    // every rhs nonnegative (already true) and install the artificial basis.
    std::vector<std::size_t> basis(k);
    for (std::size_t i = 0; i < k; ++i) {
        t[i][m + i] = 1;
        basis[i] = m + i;
    }
    // Objective row: minimize Σ artificials  ⇔  reduced costs Σ_i t[i][j].
    RationalVector obj(width);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
            obj[j] += t[i][j];
        }
    }
    obj[rhs] = 1;

    while (true) {
        std::size_t enter = width;
        for (std::size_t j = 0; j < m; ++j) {
            if (obj[j] > 0) {
                enter = j;
                break;
            }
        }
        if (enter == width) {
            break;
        }
        std::size_t leave = k;
        Rational best;
        for (std::size_t i = 0; i < k; ++i) {
            if (t[i][enter] <= 0) {
                continue;
            }
            Rational ratio = t[i][rhs] / t[i][enter];
            if (leave == k || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = std::move(ratio);
            }
        }
        if (leave == k) {
            break;  // unbounded direction; cannot occur for phase one
        }
        const Rational inv = 1 / t[leave][enter];
        for (auto &x : t[leave]) {
            x *= inv;
        }
        for (std::size_t i = 0; i < k; ++i) {
            if (i == leave || t[i][enter] == 0) {
                continue;
            }
            const Rational f = t[i][enter];
            for (std::size_t c = 0; c < width; ++c) {
                t[i][c] -= f * t[leave][c];
            }
        }
        if (obj[enter] != 0) {
            const Rational f = obj[enter];
            for (std::size_t c = 0; c < width; ++c) {
                obj[c] -= f * t[leave][c];
            }
        }
        basis[leave] = enter;
    }

    if (obj[rhs] != 0) {
        return std::nullopt;
    }
    RationalVector lambda(m, Rational(0));
    for (std::size_t i = 0; i < k; ++i) {
        if (basis[i] < m) {
            lambda[basis[i]] = t[i][rhs];
        }
    }
    return lambda;
}

}  // namespace topophase
