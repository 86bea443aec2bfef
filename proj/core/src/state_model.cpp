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

#include "topophase/state_model.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <set>
#include <unordered_set>

#include "json.hpp"

namespace topophase {

using nlohmann::json;

StateFormatError::StateFormatError(const std::string &what, long term_index)
    : std::invalid_argument(term_index < 0 ? what : "term " + std::to_string(term_index) + ": " + what),
      term_index_(term_index) {
}

SparseState::SparseState(std::size_t n, std::vector<BasisTerm> terms) : n_(n), terms_(std::move(terms)) {
    if (n_ == 0) {
        throw StateFormatError("qubit count must be at least 1");
    }
    if (terms_.empty()) {
        throw StateFormatError("state has no terms");
    }
    if (n_ < 63 && terms_.size() > (std::size_t{1} << n_)) {
        throw StateFormatError("more terms than basis vectors");
    }
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const auto &t = terms_[i];
        const long idx = static_cast<long>(i);
        if (t.bits.size() != n_) {
            throw StateFormatError(
                "bitstring '" + t.bits + "' has length " + std::to_string(t.bits.size()) + ", expected n = " +
                    std::to_string(n_),
                idx);
        }
        if (t.bits.find_first_not_of("01") != std::string::npos) {
            throw StateFormatError("bitstring '" + t.bits + "' contains characters other than 0/1", idx);
        }
        if (t.amp == std::complex<double>(0.0, 0.0)) {
            throw StateFormatError("zero amplitude for '" + t.bits + "'", idx);
        }
        if (!seen.insert(t.bits).second) {
            throw StateFormatError("duplicate bitstring '" + t.bits + "'", idx);
        }
    }
}

SparseState SparseState::from_bits(std::size_t n, std::span<const std::string> bits) {
    std::vector<BasisTerm> terms;
    terms.reserve(bits.size());
    for (const auto &b : bits) {
        terms.push_back({b, {1.0, 0.0}});
    }
    return SparseState(n, std::move(terms));
}

SparseState SparseState::from_bits(std::size_t n, std::initializer_list<const char *> bits) {
    std::vector<std::string> owned(bits.begin(), bits.end());
    return from_bits(n, owned);
}

SparseState SparseState::tensor(const SparseState &other) const {
    std::vector<BasisTerm> terms;
    terms.reserve(terms_.size() * other.terms_.size());
    for (const auto &a : terms_) {
        for (const auto &b : other.terms_) {
            terms.push_back({a.bits + b.bits, a.amp * b.amp});
        }
    }
    return SparseState(n_ + other.n_, std::move(terms));
}

std::vector<std::complex<double>> SparseState::dense() const {
    if (n_ > kMaxDenseQubits) {
        throw std::invalid_argument("dense vector requested for " + std::to_string(n_) + " qubits (limit " +
                                    std::to_string(kMaxDenseQubits) + ")");
    }
    std::vector<std::complex<double>> v(std::size_t{1} << n_);
    for (const auto &t : terms_) {
        std::size_t idx = 0;
        for (char ch : t.bits) {
            idx = (idx << 1) | static_cast<std::size_t>(ch == '1');
        }
        v[idx] = t.amp;
    }
    return v;
}

WeightMatrix::WeightMatrix(std::size_t m, std::size_t n, std::vector<int8_t> entries)
    : m_(m), n_(n), entries_(std::move(entries)) {
    if (entries_.size() != m_ * n_) {
        throw std::invalid_argument("WeightMatrix: entry count does not match m*n");
    }
    for (int8_t e : entries_) {
        if (e != 1 && e != -1) {
            throw std::invalid_argument("WeightMatrix: entries must be +1 or -1");
        }
    }
    std::set<std::vector<int8_t>> rows;
    for (std::size_t j = 0; j < m_; ++j) {
        std::vector<int8_t> r(entries_.begin() + static_cast<std::ptrdiff_t>(j * n_),
                              entries_.begin() + static_cast<std::ptrdiff_t>((j + 1) * n_));
        if (!rows.insert(std::move(r)).second) {
            throw std::invalid_argument("WeightMatrix: row " + std::to_string(j) + " repeats an earlier row");
        }
    }
}

WeightMatrix WeightMatrix::from_rows(std::span<const std::vector<int>> rows) {
    const std::size_t n = rows.empty() ? 0 : rows[0].size();
    std::vector<int8_t> e;
    e.reserve(rows.size() * n);
    for (const auto &r : rows) {
        if (r.size() != n) {
            throw std::invalid_argument("WeightMatrix::from_rows: ragged rows");
        }
        for (int v : r) {
            e.push_back(static_cast<int8_t>(v));
        }
    }
    return WeightMatrix(rows.size(), n, std::move(e));
}

std::vector<int> WeightMatrix::row(std::size_t j) const {
    std::vector<int> r(n_);
    for (std::size_t k = 0; k < n_; ++k) {
        r[k] = (*this)(j, k);
    }
    return r;
}

std::vector<int> WeightMatrix::column(std::size_t k) const {
    std::vector<int> c(m_);
    for (std::size_t j = 0; j < m_; ++j) {
        c[j] = (*this)(j, k);
    }
    return c;
}

IntMatrix WeightMatrix::to_int_matrix() const {
    IntMatrix out(m_, n_);
    for (std::size_t j = 0; j < m_; ++j) {
        for (std::size_t k = 0; k < n_; ++k) {
            out(j, k) = (*this)(j, k);
        }
    }
    return out;
}

IntMatrix WeightMatrix::augmented() const {
    return to_int_matrix().with_constant_column(-1);
}

std::vector<IntVector> WeightMatrix::int_rows() const {
    std::vector<IntVector> rows(m_, IntVector(n_));
    for (std::size_t j = 0; j < m_; ++j) {
        for (std::size_t k = 0; k < n_; ++k) {
            rows[j][k] = (*this)(j, k);
        }
    }
    return rows;
}

WeightMatrix WeightMatrix::permute_rows(std::span<const std::size_t> order) const {
    if (order.size() != m_) {
        throw std::invalid_argument("permute_rows: order has wrong length");
    }
    std::vector<int8_t> e;
    e.reserve(entries_.size());
    for (std::size_t j : order) {
        for (std::size_t k = 0; k < n_; ++k) {
            e.push_back(entries_.at(j * n_ + k));
        }
    }
    return WeightMatrix(m_, n_, std::move(e));
}

WeightMatrix WeightMatrix::permute_columns(std::span<const std::size_t> order) const {
    if (order.size() != n_) {
        throw std::invalid_argument("permute_columns: order has wrong length");
    }
    std::vector<int8_t> e;
    e.reserve(entries_.size());
    for (std::size_t j = 0; j < m_; ++j) {
        for (std::size_t k : order) {
            e.push_back(entries_.at(j * n_ + k));
        }
    }
    return WeightMatrix(m_, n_, std::move(e));
}

WeightMatrix WeightMatrix::negate_column(std::size_t k) const {
    if (k >= n_) {
        throw std::out_of_range("negate_column: column out of range");
    }
    auto e = entries_;
    for (std::size_t j = 0; j < m_; ++j) {
        e[j * n_ + k] = static_cast<int8_t>(-e[j * n_ + k]);
    }
    return WeightMatrix(m_, n_, std::move(e));
}

WeightMatrix WeightMatrix::append_column(std::span<const int> column) const {
    if (column.size() != m_) {
        throw std::invalid_argument("append_column: column length " + std::to_string(column.size()) +
                                    " does not match " + std::to_string(m_) + " rows");
    }
    std::vector<int8_t> e;
    e.reserve(m_ * (n_ + 1));
    for (std::size_t j = 0; j < m_; ++j) {
        for (std::size_t k = 0; k < n_; ++k) {
            e.push_back(entries_[j * n_ + k]);
        }
        e.push_back(static_cast<int8_t>(column[j]));
    }
    return WeightMatrix(m_, n_ + 1, std::move(e));
}

SparseState WeightMatrix::to_state() const {
    std::vector<std::string> bits;
    bits.reserve(m_);
    for (std::size_t j = 0; j < m_; ++j) {
        std::string b(n_, '0');
        for (std::size_t k = 0; k < n_; ++k) {
            if ((*this)(j, k) > 0) {
                b[k] = '1';
            }
        }
        bits.push_back(std::move(b));
    }
    return SparseState::from_bits(n_, bits);
}

SparseState parse_state(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw StateFormatError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw StateFormatError("state file must be a JSON object");
    }
    if (!doc.contains("n") || !doc["n"].is_number_integer()) {
        throw StateFormatError("missing integer field 'n'");
    }
    const auto n_signed = doc["n"].get<long long>();
    if (n_signed < 1) {
        throw StateFormatError("'n' must be at least 1");
    }
    if (!doc.contains("terms") || !doc["terms"].is_array()) {
        throw StateFormatError("missing array field 'terms'");
    }
    std::vector<BasisTerm> terms;
    long idx = 0;
    for (const auto &t : doc["terms"]) {
        if (!t.is_object() || !t.contains("bits") || !t["bits"].is_string()) {
            throw StateFormatError("term must be an object with string field 'bits'", idx);
        }
        BasisTerm term{t["bits"].get<std::string>(), {1.0, 0.0}};
        if (t.contains("amp")) {
            const auto &a = t["amp"];
            if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
                throw StateFormatError("'amp' must be [re, im]", idx);
            }
            term.amp = {a[0].get<double>(), a[1].get<double>()};
        }
        terms.push_back(std::move(term));
        ++idx;
    }
    return SparseState(static_cast<std::size_t>(n_signed), std::move(terms));
}

std::string serialize_state(const SparseState &state) {
    json terms = json::array();
    for (const auto &t : state.terms()) {
        json term = {{"bits", t.bits}};
        if (t.amp != std::complex<double>(1.0, 0.0)) {
            term["amp"] = {t.amp.real(), t.amp.imag()};
        }
        terms.push_back(std::move(term));
    }
    json doc = {{"n", state.n()}, {"terms", std::move(terms)}};
    return doc.dump(2) + "\n";
}

WeightMatrix weight_matrix(const SparseState &state) {
    const std::size_t n = state.n();
    std::vector<int8_t> e;
    e.reserve(state.size() * n);
    for (const auto &t : state.terms()) {
        for (char ch : t.bits) {
            e.push_back(ch == '1' ? int8_t{1} : int8_t{-1});
        }
    }
    return WeightMatrix(state.size(), n, std::move(e));
}

bool bipartition_product_check(const SparseState &state, std::span<const std::size_t> subset, double tolerance) {
    const std::size_t n = state.n();
    std::vector<bool> in_subset(n, false);
    for (std::size_t q : subset) {
        if (q >= n) {
            throw std::invalid_argument("bipartition_product_check: qubit " + std::to_string(q) + " out of range");
        }
        in_subset[q] = true;
    }
    const auto a = static_cast<std::size_t>(std::count(in_subset.begin(), in_subset.end(), true));
    if (a == 0 || a == n) {
        throw std::invalid_argument("bipartition_product_check: subset must be proper and nonempty");
    }
    if (n > kMaxDenseQubits) {
        throw std::invalid_argument("bipartition_product_check: too many qubits for a dense check");
    }
    Eigen::MatrixXcd coeff = Eigen::MatrixXcd::Zero(Eigen::Index{1} << a, Eigen::Index{1} << (n - a));
    for (const auto &t : state.terms()) {
        Eigen::Index r = 0, c = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const Eigen::Index bit = t.bits[k] == '1' ? 1 : 0;
            if (in_subset[k]) {
                r = (r << 1) | bit;
            } else {
                c = (c << 1) | bit;
            }
        }
        coeff(r, c) = t.amp;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(coeff);
    const auto &s = svd.singularValues();
    if (s.size() < 2 || s(0) == 0.0) {
        return true;
    }
    return s(1) / s(0) <= tolerance;
}

}  // namespace topophase
