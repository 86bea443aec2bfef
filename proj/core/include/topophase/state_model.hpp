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

#ifndef TOPOPHASE_STATE_MODEL_HPP
#define TOPOPHASE_STATE_MODEL_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "topophase/exact_linalg.hpp"

namespace topophase {

/// A computational-basis product vector. Character k of `bits` is qubit k
/// (qubit 0 leftmost).
struct BasisTerm {
    std::string bits;
    std::complex<double> amp{1.0, 0.0};

    bool operator==(const BasisTerm &) const = default;
};

/// Pure n-qubit state given by its nonzero expansion coefficients.
///
/// Invariants (checked by the constructor): n ≥ 1, 1 ≤ terms ≤ 2^n, every
/// bitstring has length n and only '0'/'1', bitstrings are pairwise distinct,
/// amplitudes are nonzero.
class SparseState {
   public:
    SparseState(std::size_t n, std::vector<BasisTerm> terms);
    /// All amplitudes 1.
    static SparseState from_bits(std::size_t n, std::span<const std::string> bits);
    static SparseState from_bits(std::size_t n, std::initializer_list<const char *> bits);

    std::size_t n() const noexcept {
        return n_;
    }
    std::size_t size() const noexcept {
        return terms_.size();
    }
    const std::vector<BasisTerm> &terms() const noexcept {
        return terms_;
    }

    /// Tensor product |this⟩ ⊗ |other⟩ (this state's qubits first).
    SparseState tensor(const SparseState &other) const;
    /// Dense amplitude vector of length 2^n; index bit (n-1-k) is qubit k.
    std::vector<std::complex<double>> dense() const;

    bool operator==(const SparseState &) const = default;

   private:
    std::size_t n_;
    std::vector<BasisTerm> terms_;
};

/// Raised for malformed state files. `term_index` is -1 when the problem is
/// not tied to one term.
class StateFormatError : public std::invalid_argument {
   public:
    StateFormatError(const std::string &what, long term_index = -1);
    long term_index() const noexcept {
        return term_index_;
    }

   private:
    long term_index_;
};

/// Rows are the ±1 weight vectors of a state's support: entry (j, k) is +1
/// when qubit k of term j is |1⟩ and −1 when it is |0⟩. Rows are pairwise
/// distinct.
class WeightMatrix {
   public:
    WeightMatrix(std::size_t m, std::size_t n, std::vector<int8_t> entries);
    static WeightMatrix from_rows(std::span<const std::vector<int>> rows);

    std::size_t m() const noexcept {
        return m_;
    }
    std::size_t n() const noexcept {
        return n_;
    }
    int operator()(std::size_t j, std::size_t k) const {
        return entries_[j * n_ + k];
    }
    std::vector<int> row(std::size_t j) const;
    std::vector<int> column(std::size_t k) const;

    /// Same entries as an integer matrix.
    IntMatrix to_int_matrix() const;
    /// The m×(n+1) system matrix: this matrix with a trailing column of −1.
    IntMatrix augmented() const;
    std::vector<IntVector> int_rows() const;

    WeightMatrix permute_rows(std::span<const std::size_t> order) const;
    WeightMatrix permute_columns(std::span<const std::size_t> order) const;
    WeightMatrix negate_column(std::size_t k) const;
    WeightMatrix append_column(std::span<const int> column) const;

    /// Support bitstrings in row order, amplitudes 1.
    SparseState to_state() const;

    bool operator==(const WeightMatrix &) const = default;

   private:
    std::size_t m_;
    std::size_t n_;
    std::vector<int8_t> entries_;
};

/// Parses the JSON state format:
///   {"n": 3, "terms": [{"bits": "000"}, {"bits": "111", "amp": [1.0, 0.0]}]}
/// Throws StateFormatError naming the offending term on any violation.
SparseState parse_state(std::string_view text);
std::string serialize_state(const SparseState &state);

WeightMatrix weight_matrix(const SparseState &state);

/// True when the state factorizes across (subset, complement): the coefficient
/// matrix with rows indexed by the subset's bit patterns and columns by the
/// complement's has numerical rank 1 (σ₂/σ₁ ≤ tolerance).
/// Throws std::invalid_argument unless the subset is proper and nonempty.
bool bipartition_product_check(const SparseState &state, std::span<const std::size_t> subset,
                               double tolerance = 1e-9);

/// Largest state that dense routines accept.
inline constexpr std::size_t kMaxDenseQubits = 20;

}  // namespace topophase

#endif
