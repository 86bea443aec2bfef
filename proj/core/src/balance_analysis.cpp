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

#include "topophase/balance_analysis.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace topophase {

namespace {

Integer abs_of(const Integer &x) {
    return x < 0 ? Integer(-x) : x;
}

KernelCertificate certificate_from(IntVector c, CertificateKind kind) {
    c = make_primitive(std::move(c));
    Integer s = sum_of(c);
    if (s < 0) {
        for (auto &v : c) {
            v = -v;
        }
        s = -s;
    }
    return KernelCertificate{std::move(c), std::move(s), kind};
}

// Generator of the sum ideal together with a lattice vector reaching it.
std::optional<IntVector> generator_vector(const std::vector<IntVector> &basis) {
    std::optional<IntVector> acc;
    Integer acc_sum = 0;
    for (const auto &b : basis) {
        const Integer s = sum_of(b);
        if (s == 0) {
            continue;
        }
        if (!acc) {
            acc = b;
            acc_sum = s;
            continue;
        }
        if (s % acc_sum == 0) {
            continue;
        }
        Integer g, x, y;
        mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), acc_sum.get_mpz_t(), s.get_mpz_t());
        for (std::size_t i = 0; i < b.size(); ++i) {
            (*acc)[i] = x * (*acc)[i] + y * b[i];
        }
        acc_sum = g;
    }
    return acc;
}

IntMatrix rows_matrix(const WeightMatrix &w, std::span<const std::size_t> which) {
    IntMatrix m(which.size(), w.n());
    for (std::size_t r = 0; r < which.size(); ++r) {
        for (std::size_t k = 0; k < w.n(); ++k) {
            m(r, k) = w(which[r], k);
        }
    }
    return m;
}

// Dependence with nonzero sum among the selected rows, if any.
std::optional<IntVector> affine_dependence(const WeightMatrix &w, std::span<const std::size_t> which) {
    return generator_vector(kernel_lattice(rows_matrix(w, which)));
}

bool next_combination(std::vector<std::size_t> &idx, std::size_t m) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < m - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<std::size_t> KernelCertificate::support() const {
    std::vector<std::size_t> s;
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
        if (coefficients[j] != 0) {
            s.push_back(j);
        }
    }
    return s;
}

Rational PhaseSet::chi_min() const {
    if (continuous()) {
        throw std::logic_error("continuous phase set has no minimal phase");
    }
    return make_rational(2, d);
}

bool PhaseSet::contains(const Rational &value) const {
    if (continuous()) {
        return true;
    }
    // value·π = k·2π/d  ⇔  value·d/2 ∈ ℤ.
    const Rational t = value * Rational(d) / 2;
    return t.get_den() == 1;
}

PhaseSet phase_set(const WeightMatrix &w) {
    PhaseSet ps;
    ps.trivial = w.m() == 1;
    Integer g = 0;
    for (const auto &v : kernel_lattice(w.to_int_matrix())) {
        const Integer s = sum_of(v);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_mpz_t());
    }
    ps.d = abs_of(g);
    return ps;
}

std::optional<KernelCertificate> affine_certificate(const WeightMatrix &w) {
    auto v = generator_vector(kernel_lattice(w.to_int_matrix()));
    if (!v) {
        return std::nullopt;
    }
    return certificate_from(std::move(*v), CertificateKind::affine);
}

std::optional<KernelCertificate> convex_certificate(const WeightMatrix &w) {
    const auto rows = w.int_rows();
    const auto lambda = convex_feasible(rows);
    if (!lambda) {
        return std::nullopt;
    }
    Integer l = 1;
    for (const auto &q : *lambda) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    }
    IntVector c(lambda->size());
    for (std::size_t j = 0; j < c.size(); ++j) {
        const Rational scaled = (*lambda)[j] * Rational(l);
        c[j] = scaled.get_num();
    }
    return certificate_from(std::move(c), CertificateKind::convex);
}

Irreducibility irreducibility(const WeightMatrix &w, std::size_t budget) {
    const std::size_t m = w.m();
    std::vector<std::size_t> all(m);
    std::iota(all.begin(), all.end(), 0);
    auto full = affine_dependence(w, all);
    if (!full) {
        throw NotAffineError("irreducibility: no dependence with nonzero coefficient sum (not an a-state)");
    }
    std::size_t spent = 1;

    auto widen = [&](const std::vector<std::size_t> &which, IntVector local) {
        IntVector c(m);
        for (std::size_t r = 0; r < which.size(); ++r) {
            c[which[r]] = std::move(local[r]);
        }
        return certificate_from(std::move(c), CertificateKind::affine);
    };

    // Every superset of a working subset also works, so the full set is
    // needed iff no (m-1)-subset works.
    bool proper_exists = false;
    for (std::size_t drop = 0; drop < m && !proper_exists; ++drop) {
        std::vector<std::size_t> which;
        for (std::size_t j = 0; j < m; ++j) {
            if (j != drop) {
                which.push_back(j);
            }
        }
        proper_exists = affine_dependence(w, which).has_value();
        ++spent;
    }
    if (!proper_exists) {
        return Irreducibility{true, all, widen(all, std::move(*full))};
    }

    for (std::size_t k = 2; k < m; ++k) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        do {
            if (++spent > budget) {
                throw std::runtime_error("irreducibility: subset search exceeded budget of " +
                                         std::to_string(budget) + " kernel evaluations");
            }
            if (auto v = affine_dependence(w, idx)) {
                return Irreducibility{false, idx, widen(idx, std::move(*v))};
            }
        } while (next_combination(idx, m));
    }
    throw std::logic_error("irreducibility: proper dependent subset vanished");
}

bool is_irreducible_maximal_length(const WeightMatrix &w) {
    if (w.m() != w.n() + 1) {
        return false;
    }
    if (determinant(w.augmented()) == 0) {
        return false;
    }
    const auto basis = kernel_lattice(w.to_int_matrix());
    if (basis.size() != 1) {
        return false;
    }
    return std::none_of(basis[0].begin(), basis[0].end(), [](const Integer &v) { return v == 0; });
}

std::optional<StabilizerSolution> solve_stabilizer(const WeightMatrix &w, std::span<const Integer> a) {
    if (a.size() != w.m()) {
        throw std::invalid_argument("solve_stabilizer: expected " + std::to_string(w.m()) +
                                    " winding numbers, got " + std::to_string(a.size()));
    }
    RationalVector rhs(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        rhs[j] = Rational(2 * a[j]);
    }
    auto sol = solve_rational(w.augmented(), rhs);
    if (!sol) {
        return std::nullopt;
    }
    const std::size_t n = w.n();
    StabilizerSolution out;
    out.phi.assign(sol->x.begin(), sol->x.begin() + static_cast<std::ptrdiff_t>(n));
    out.chi = sol->x[n];
    out.free_parameters = sol->free_parameters;
    out.chi_determined = sol->determined[n];
    out.winding.assign(a.begin(), a.end());

    // χ − 2s lands in (−1, 1]; each a_j grows by s to keep the rows exact.
    Integer s;
    const Rational shifted = (out.chi + 1) / 2;
    mpz_cdiv_q(s.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    s -= 1;
    out.chi -= Rational(2 * s);
    for (auto &aj : out.winding) {
        aj += s;
    }
    return out;
}

void validate_structure(const CombinatorialStructure &s) {
    const std::size_t n = s.n();
    if (n < 2) {
        throw std::invalid_argument("structure needs at least two multiset values");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (s.multiset[j] <= 0) {
            throw std::invalid_argument("multiset values must be positive");
        }
        if (j > 0 && s.multiset[j] > s.multiset[j - 1]) {
            throw std::invalid_argument("multiset must be nonincreasing");
        }
    }
    int64_t g = 0;
    for (auto v : s.multiset) {
        g = std::gcd(g, v);
    }
    if (g != 1) {
        throw std::invalid_argument("multiset gcd must be 1");
    }
    if (s.Z < 1 || 2 * s.Z >= s.total()) {
        throw std::invalid_argument("Z must satisfy 1 <= Z < sum/2 (c0 must be positive)");
    }
    if (s.c0() < s.multiset[0]) {
        throw std::invalid_argument("c0 = sum - 2Z must be at least the largest multiset value");
    }
    if (s.patterns.size() != n) {
        throw std::invalid_argument("expected one pattern per multiset value (" + std::to_string(n) + "), got " +
                                    std::to_string(s.patterns.size()));
    }
    IntMatrix sign(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto &p = s.patterns[k];
        int64_t sum = 0;
        std::vector<bool> member(n, false);
        for (std::size_t j : p) {
            if (j >= n) {
                throw std::invalid_argument("pattern " + std::to_string(k + 1) + " has position out of range");
            }
            if (member[j]) {
                throw std::invalid_argument("pattern " + std::to_string(k + 1) + " repeats a position");
            }
            member[j] = true;
            sum += s.multiset[j];
        }
        if (sum != s.Z) {
            throw std::invalid_argument("pattern " + std::to_string(k + 1) + " sums to " + std::to_string(sum) +
                                        ", not Z = " + std::to_string(s.Z));
        }
        for (std::size_t j = 0; j < n; ++j) {
            sign(k, j) = member[j] ? 1 : -1;
        }
    }
    if (determinant(sign) == 0) {
        throw std::invalid_argument("selection does not uniquely define integers (singular sign matrix)");
    }
}

SparseState construct_state(const CombinatorialStructure &s) {
    validate_structure(s);
    const std::size_t n = s.n();
    std::vector<std::string> bits;
    bits.emplace_back(n, '1');
    for (std::size_t j = 0; j < n; ++j) {
        std::string b(n, '0');
        for (std::size_t k = 0; k < n; ++k) {
            if (std::find(s.patterns[k].begin(), s.patterns[k].end(), j) != s.patterns[k].end()) {
                b[k] = '1';
            }
        }
        bits.push_back(std::move(b));
    }
    return SparseState::from_bits(n, bits);
}

SparseState telescope(const SparseState &state, std::span<const int> column) {
    const auto w = weight_matrix(state);
    if (column.size() != w.m()) {
        throw std::invalid_argument("telescope: column length " + std::to_string(column.size()) +
                                    " does not match " + std::to_string(w.m()) + " terms");
    }
    RationalVector rhs(column.size());
    for (std::size_t j = 0; j < column.size(); ++j) {
        if (column[j] != 1 && column[j] != -1) {
            throw std::invalid_argument("telescope: column entries must be +1 or -1");
        }
        rhs[j] = column[j];
    }
    if (!solve_rational(w.to_int_matrix(), rhs)) {
        throw std::invalid_argument("telescope: column is not in the rational span of the weight matrix columns");
    }
    std::vector<BasisTerm> terms = state.terms();
    for (std::size_t j = 0; j < terms.size(); ++j) {
        terms[j].bits.push_back(column[j] > 0 ? '1' : '0');
    }
    return SparseState(state.n() + 1, std::move(terms));
}

bool bezout_inequivalence(long d1, long d2, std::span<const long> allowed) {
    if (d1 < 1 || d2 < 1) {
        throw std::invalid_argument("bezout_inequivalence: denominators must be positive");
    }
    const long l = std::lcm(d1, d2);
    return std::none_of(allowed.begin(), allowed.end(), [l](long d) { return d != 0 && d % l == 0; });
}

Classification classify(const SparseState &state) {
    Classification c;
    const std::size_t n = state.n();
    const auto w = weight_matrix(state);
    c.trivial = w.m() == 1;

    c.genuinely_entangled = n >= 2;
    // Subsets containing qubit 0 cover every bipartition once.
    const std::size_t count = n >= 2 ? (std::size_t{1} << (n - 1)) : 0;
    for (std::size_t mask = 0; mask + 1 < count && c.genuinely_entangled; ++mask) {
        std::vector<std::size_t> subset{0};
        for (std::size_t k = 1; k < n; ++k) {
            if ((mask >> (k - 1)) & 1U) {
                subset.push_back(k);
            }
        }
        if (bipartition_product_check(state, subset)) {
            c.genuinely_entangled = false;
        }
    }

    c.a_state = !phase_set(w).continuous();
    c.c_state = convex_certificate(w).has_value();
    c.irreducible_maximal_length = is_irreducible_maximal_length(w);
    c.semistable_certified = c.c_state && c.irreducible_maximal_length;
    return c;
}

}  // namespace topophase
