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

#ifndef TOPOPHASE_BALANCE_ANALYSIS_HPP
#define TOPOPHASE_BALANCE_ANALYSIS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "topophase/exact_linalg.hpp"
#include "topophase/state_model.hpp"
#include "topophase/structure.hpp"

namespace topophase {

enum class CertificateKind { affine, convex };

/// Integer dependence c with cᵀW = 0. Primitive, with positive sum.
/// Convex certificates additionally have no negative entries.
struct KernelCertificate {
    IntVector coefficients;
    Integer sum;
    CertificateKind kind = CertificateKind::affine;

    /// Rows with a nonzero coefficient.
    std::vector<std::size_t> support() const;
};

/// The global phases reachable inside one Cartan subgroup: all multiples of
/// 2π/d, or a continuum when d = 0.
struct PhaseSet {
    Integer d = 0;
    /// Single-term (product) input. d is 0 in that case too.
    bool trivial = false;

    bool continuous() const {
        return d == 0;
    }
    /// 2/d, i.e. χ_min in units of π. Throws std::logic_error when continuous.
    Rational chi_min() const;
    /// Whether χ = value·π belongs to the set.
    bool contains(const Rational &value) const;
};

/// Angles and phase in units of π. For every row j,
/// Σ_k l_jk φ_k = χ + 2 a_j.
struct StabilizerSolution {
    IntVector winding;
    RationalVector phi;
    Rational chi;
    std::size_t free_parameters = 0;
    /// False when χ itself moves with the free parameters; χ then belongs
    /// to a continuous family and the reported value is one member.
    bool chi_determined = true;
};

PhaseSet phase_set(const WeightMatrix &w);

/// A dependence whose coefficient sum equals d (the generator of the sum
/// ideal). Empty when no dependence has a nonzero sum.
std::optional<KernelCertificate> affine_certificate(const WeightMatrix &w);

/// A nonnegative dependence (origin in the convex hull of the rows).
std::optional<KernelCertificate> convex_certificate(const WeightMatrix &w);

class NotAffineError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct Irreducibility {
    bool irreducible = false;
    /// A smallest row subset carrying a dependence with nonzero sum.
    std::vector<std::size_t> support;
    /// That dependence, indexed over all rows (zero off the support).
    KernelCertificate certificate;
};

/// Throws NotAffineError if W has no dependence with nonzero sum, and
/// std::runtime_error if the subset search needs more than `budget` kernel
/// evaluations.
Irreducibility irreducibility(const WeightMatrix &w, std::size_t budget = 2'000'000);

/// m = n+1, [W | −1] nonsingular, and the (unique up to scale) dependence has
/// no zero entry.
bool is_irreducible_maximal_length(const WeightMatrix &w);

/// Solves [W | −1]·(φ, χ) = 2a in units of π. χ is shifted into (−1, 1] and
/// the winding numbers are adjusted to match. Empty when inconsistent.
/// Throws std::invalid_argument when a.size() != m.
std::optional<StabilizerSolution> solve_stabilizer(const WeightMatrix &w, std::span<const Integer> a);

/// Checks the structure invariants. Throws std::invalid_argument naming the
/// first violated one.
void validate_structure(const CombinatorialStructure &s);

/// The all-ones term followed by one term per multiset position; bit k of
/// term j+1 is set when position j belongs to pattern k. Validates first.
SparseState construct_state(const CombinatorialStructure &s);

/// Appends one qubit whose bit in term j is set when column[j] = +1.
/// Throws std::invalid_argument when the column is not ±1 of length m or is
/// outside the rational column span of W.
SparseState telescope(const SparseState &state, std::span<const int> column);

/// True when the combined minimal phase π/lcm(d1, d2) is not a multiple of
/// π/d for any d in `allowed`, i.e. lcm(d1, d2) divides no allowed d.
bool bezout_inequivalence(long d1, long d2, std::span<const long> allowed);

struct Classification {
    /// Not a product across any bipartition.
    bool genuinely_entangled = false;
    /// The remaining flags refer to the computational basis only.
    bool a_state = false;
    bool c_state = false;
    bool irreducible_maximal_length = false;
    /// Irreducible c-state of maximal length; this implies semistability.
    bool semistable_certified = false;
    bool trivial = false;
};

/// Throws std::invalid_argument when n exceeds kMaxDenseQubits.
Classification classify(const SparseState &state);

}  // namespace topophase

#endif
