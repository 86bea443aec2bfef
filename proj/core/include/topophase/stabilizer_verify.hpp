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

#ifndef TOPOPHASE_STABILIZER_VERIFY_HPP
#define TOPOPHASE_STABILIZER_VERIFY_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "topophase/exact_linalg.hpp"
#include "topophase/state_model.hpp"

namespace topophase {

/// Row-major 2×2 matrix in the (|0⟩, |1⟩) basis: {u00, u01, u10, u11}.
using Matrix2 = std::array<std::complex<double>, 4>;

/// One special unitary per qubit. The constructor rejects matrices that are
/// not unitary with determinant 1 (both to 1e-12).
class LocalUnitaryList {
   public:
    explicit LocalUnitaryList(std::vector<Matrix2> ops);

    std::size_t size() const noexcept {
        return ops_.size();
    }
    const Matrix2 &operator[](std::size_t k) const {
        return ops_[k];
    }
    const std::vector<Matrix2> &ops() const noexcept {
        return ops_;
    }
    /// U ⊗ V: this list's qubits first.
    LocalUnitaryList tensor(const LocalUnitaryList &other) const;

   private:
    std::vector<Matrix2> ops_;
};

/// diag(e^{−iφ_k π}, e^{iφ_k π}): |1⟩ picks up e^{+iφ}. Angles in units of π.
LocalUnitaryList diagonal_stabilizer(std::span<const Rational> phis);
/// Same in radians.
LocalUnitaryList diagonal_stabilizer_radians(std::span<const double> phis);

/// e^{iθσz} = diag(e^{iθ}, e^{−iθ}) per qubit, θ in radians.
LocalUnitaryList sigma_z_rotations(std::span<const double> thetas);

/// [[0, e^{iδ_k}], [−e^{−iδ_k}, 0]] per qubit, δ in radians.
LocalUnitaryList antidiagonal_stabilizer(std::span<const double> deltas);

/// A random element of SU(2) from a uniformly random unit quaternion; the
/// four inputs need not be normalized.
Matrix2 su2_from_quaternion(double a, double b, double c, double d);

struct VerificationResult {
    bool matched = false;
    /// Radians in (−π, π].
    double chi = 0.0;
    /// max_i |(Uψ)_i − e^{iχ} ψ_i| on the unit-normalized state.
    double residual = 0.0;
};

/// Applies U qubit by qubit to the dense vector and compares with e^{iχ}ψ,
/// χ read off the largest-magnitude amplitude.
/// Throws std::invalid_argument for n > kMaxDenseQubits, a size mismatch or
/// a nonpositive tolerance.
VerificationResult verify(const SparseState &state, const LocalUnitaryList &u, double tolerance = 1e-9);

/// Maps an angle into (−π, π].
double wrap_angle(double radians);

/// Integer and angle (radian) parameters of a known family; see known_family.
struct FamilyParams {
    std::vector<long> integers;
    std::vector<double> angles;
};

struct FamilyInstance {
    SparseState state;
    LocalUnitaryList stabilizer;
    /// Expected χ in radians, wrapped into (−π, π].
    double expected_chi = 0.0;
    /// Exact χ/π for the discrete families; empty for `w`.
    std::optional<Rational> expected_chi_exact;
    /// True for families whose χ varies continuously with the angles.
    bool continuous = false;
};

/// Closed-form stabilizer families; σz rotations use e^{iθσz}:
///   ghz           integers {p}, angles α_1..α_{n−1}; α_n = pπ − Σα. χ = pπ.
///   ghz_antidiag  integers {q}, angles δ_1..δ_{n−1}; δ_n completes
///                 Σδ = π/2 + qπ (odd n) or qπ (even n). χ = Σδ.
///   ones_plus_w   integers q_0..q_n on |1…1⟩ + |Wⁿ⟩; θ_k = (t + q_k)π with
///                 t = (q_0 − Σ_{k≥1} q_k)/(n−1).
///                 χ = ((n−2)q_0 + Σ_{k≥1} q_k)π/(n−1).
///   w             angles {α}, optional integers q_1..q_n on |Wⁿ⟩;
///                 θ_k = α + q_kπ. χ = (n−2)α + Σq_kπ.
///   zeros_plus_w  integers p_1..p_n on |0…0⟩ + |Wⁿ⟩; θ_k = p_kπ. χ = Σp_kπ.
/// Throws std::invalid_argument for an unknown name or wrong parameter count.
FamilyInstance known_family(std::string_view name, std::size_t n, const FamilyParams &params);

/// Named states used by the families: "ghz", "w", "ones_plus_w", "zeros_plus_w".
SparseState named_state(std::string_view name, std::size_t n);

}  // namespace topophase

#endif
