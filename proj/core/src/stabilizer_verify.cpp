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

#include "topophase/stabilizer_verify.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace topophase {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kUnitaryTolerance = 1e-12;

void require_su2(const Matrix2 &u, std::size_t k) {
    const cd a = u[0], b = u[1], c = u[2], d = u[3];
    // U†U = I entrywise.
    const cd g00 = std::conj(a) * a + std::conj(c) * c;
    const cd g01 = std::conj(a) * b + std::conj(c) * d;
    const cd g11 = std::conj(b) * b + std::conj(d) * d;
    const double err = std::max({std::abs(g00 - 1.0), std::abs(g01), std::abs(g11 - 1.0)});
    if (err > kUnitaryTolerance) {
        throw std::invalid_argument("operator on qubit " + std::to_string(k) + " is not unitary");
    }
    if (std::abs(a * d - b * c - 1.0) > kUnitaryTolerance) {
        throw std::invalid_argument("operator on qubit " + std::to_string(k) + " does not have determinant 1");
    }
}

Matrix2 diag(double phi_radians) {
    return {std::polar(1.0, -phi_radians), cd{0.0}, cd{0.0}, std::polar(1.0, phi_radians)};
}

std::vector<std::string> w_bits(std::size_t n) {
    std::vector<std::string> bits;
    for (std::size_t r = 0; r < n; ++r) {
        std::string b(n, '0');
        b[r] = '1';
        bits.push_back(std::move(b));
    }
    return bits;
}

void expect_counts(std::string_view name, const FamilyParams &p, std::size_t ints, std::size_t angles) {
    if (p.integers.size() != ints || p.angles.size() != angles) {
        throw std::invalid_argument("family '" + std::string(name) + "' expects " + std::to_string(ints) +
                                    " integer and " + std::to_string(angles) + " angle parameters, got " +
                                    std::to_string(p.integers.size()) + " and " + std::to_string(p.angles.size()));
    }
}

double wrap_exact(const Rational &chi_over_pi) {
    return wrap_angle(chi_over_pi.get_d() * kPi);
}

}  // namespace

LocalUnitaryList::LocalUnitaryList(std::vector<Matrix2> ops) : ops_(std::move(ops)) {
    for (std::size_t k = 0; k < ops_.size(); ++k) {
        require_su2(ops_[k], k);
    }
}

LocalUnitaryList LocalUnitaryList::tensor(const LocalUnitaryList &other) const {
    auto ops = ops_;
    ops.insert(ops.end(), other.ops_.begin(), other.ops_.end());
    return LocalUnitaryList(std::move(ops));
}

LocalUnitaryList diagonal_stabilizer(std::span<const Rational> phis) {
    std::vector<Matrix2> ops;
    for (const auto &phi : phis) {
        // Reduce mod 2 first so large angles keep full precision.
        Rational r = phi;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
        q -= q % 2 == 0 ? 0 : 1;  // even floor keeps the matrix unchanged
        r -= Rational(q);
        ops.push_back(diag(r.get_d() * kPi));
    }
    return LocalUnitaryList(std::move(ops));
}

LocalUnitaryList diagonal_stabilizer_radians(std::span<const double> phis) {
    std::vector<Matrix2> ops;
    for (double phi : phis) {
        ops.push_back(diag(phi));
    }
    return LocalUnitaryList(std::move(ops));
}

LocalUnitaryList sigma_z_rotations(std::span<const double> thetas) {
    std::vector<Matrix2> ops;
    for (double t : thetas) {
        ops.push_back(diag(-t));
    }
    return LocalUnitaryList(std::move(ops));
}

LocalUnitaryList antidiagonal_stabilizer(std::span<const double> deltas) {
    std::vector<Matrix2> ops;
    for (double d : deltas) {
        ops.push_back({cd{0.0}, std::polar(1.0, d), -std::polar(1.0, -d), cd{0.0}});
    }
    return LocalUnitaryList(std::move(ops));
}

Matrix2 su2_from_quaternion(double a, double b, double c, double d) {
    const double norm = std::sqrt(a * a + b * b + c * c + d * d);
    if (norm == 0.0) {
        throw std::invalid_argument("su2_from_quaternion: zero quaternion");
    }
    const cd alpha{a / norm, b / norm};
    const cd beta{c / norm, d / norm};
    return {alpha, -std::conj(beta), beta, std::conj(alpha)};
}

double wrap_angle(double radians) {
    double r = std::remainder(radians, 2.0 * kPi);  // [−π, π]
    if (r <= -kPi) {
        r += 2.0 * kPi;
    }
    return r;
}

VerificationResult verify(const SparseState &state, const LocalUnitaryList &u, double tolerance) {
    if (!(tolerance > 0.0)) {
        throw std::invalid_argument("verify: tolerance must be positive");
    }
    const std::size_t n = state.n();
    if (u.size() != n) {
        throw std::invalid_argument("verify: " + std::to_string(u.size()) + " operators for " + std::to_string(n) +
                                    " qubits");
    }
    auto psi = state.dense();  // rejects n > kMaxDenseQubits
    double norm = 0.0;
    for (const auto &x : psi) {
        norm += std::norm(x);
    }
    norm = std::sqrt(norm);
    for (auto &x : psi) {
        x /= norm;
    }

    auto out = psi;
    const std::size_t dim = psi.size();
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t bit = std::size_t{1} << (n - 1 - k);
        const Matrix2 &m = u[k];
        for (std::size_t i = 0; i < dim; ++i) {
            if (i & bit) {
                continue;
            }
            const cd x0 = out[i], x1 = out[i | bit];
            out[i] = m[0] * x0 + m[1] * x1;
            out[i | bit] = m[2] * x0 + m[3] * x1;
        }
    }

    std::size_t anchor = 0;
    for (std::size_t i = 1; i < dim; ++i) {
        if (std::abs(psi[i]) > std::abs(psi[anchor])) {
            anchor = i;
        }
    }
    VerificationResult r;
    r.chi = wrap_angle(std::arg(out[anchor] / psi[anchor]));
    const cd phase = std::polar(1.0, r.chi);
    for (std::size_t i = 0; i < dim; ++i) {
        r.residual = std::max(r.residual, std::abs(out[i] - phase * psi[i]));
    }
    r.matched = r.residual <= tolerance;
    return r;
}

SparseState named_state(std::string_view name, std::size_t n) {
    if (n < 1) {
        throw std::invalid_argument("named_state: n must be at least 1");
    }
    std::vector<std::string> bits;
    if (name == "ghz") {
        bits = {std::string(n, '0'), std::string(n, '1')};
    } else if (name == "w") {
        bits = w_bits(n);
    } else if (name == "ones_plus_w") {
        bits = w_bits(n);
        bits.insert(bits.begin(), std::string(n, '1'));
    } else if (name == "zeros_plus_w") {
        bits = w_bits(n);
        bits.insert(bits.begin(), std::string(n, '0'));
    } else {
        throw std::invalid_argument("unknown state name '" + std::string(name) + "'");
    }
    return SparseState::from_bits(n, bits);
}

FamilyInstance known_family(std::string_view name, std::size_t n, const FamilyParams &params) {
    if (n < 2) {
        throw std::invalid_argument("known_family: n must be at least 2");
    }
    const auto nl = static_cast<long>(n);
    if (name == "ghz") {
        expect_counts(name, params, 1, n - 1);
        const long p = params.integers[0];
        std::vector<double> a = params.angles;
        double s = 0.0;
        for (double x : a) {
            s += x;
        }
        a.push_back(static_cast<double>(p) * kPi - s);
        const Rational chi(p);
        return {named_state("ghz", n), sigma_z_rotations(a), wrap_exact(chi), chi, false};
    }
    if (name == "ghz_antidiag") {
        expect_counts(name, params, 1, n - 1);
        const long q = params.integers[0];
        const Rational total = n % 2 == 1 ? Rational(1, 2) + Rational(q) : Rational(q);
        std::vector<double> d = params.angles;
        double s = 0.0;
        for (double x : d) {
            s += x;
        }
        d.push_back(total.get_d() * kPi - s);
        return {named_state("ghz", n), antidiagonal_stabilizer(d), wrap_exact(total), total, false};
    }
    if (name == "ones_plus_w") {
        expect_counts(name, params, n + 1, 0);
        const long q0 = params.integers[0];
        long rest = 0;
        for (std::size_t k = 1; k <= n; ++k) {
            rest += params.integers[k];
        }
        const Rational t = make_rational(q0 - rest, nl - 1);
        std::vector<double> theta;
        for (std::size_t k = 1; k <= n; ++k) {
            theta.push_back(Rational(t + Rational(params.integers[k])).get_d() * kPi);
        }
        const Rational chi = make_rational((nl - 2) * q0 + rest, nl - 1);
        return {named_state("ones_plus_w", n), sigma_z_rotations(theta), wrap_exact(chi), chi, false};
    }
    if (name == "w") {
        if (params.angles.size() != 1 || (!params.integers.empty() && params.integers.size() != n)) {
            throw std::invalid_argument("family 'w' expects one angle and either no or n integer parameters");
        }
        const double alpha = params.angles[0];
        std::vector<double> theta(n, alpha);
        long qsum = 0;
        for (std::size_t k = 0; k < params.integers.size(); ++k) {
            theta[k] += static_cast<double>(params.integers[k]) * kPi;
            qsum += params.integers[k];
        }
        const double chi = static_cast<double>(nl - 2) * alpha + static_cast<double>(qsum) * kPi;
        return {named_state("w", n), sigma_z_rotations(theta), wrap_angle(chi), std::nullopt, true};
    }
    if (name == "zeros_plus_w") {
        expect_counts(name, params, n, 0);
        std::vector<double> theta;
        long psum = 0;
        for (long p : params.integers) {
            theta.push_back(static_cast<double>(p) * kPi);
            psum += p;
        }
        const Rational chi(psum);
        return {named_state("zeros_plus_w", n), sigma_z_rotations(theta), wrap_exact(chi), chi, false};
    }
    throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

}  // namespace topophase
