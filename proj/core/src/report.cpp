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

#include "topophase/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace topophase {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Integers that fit a machine word stay JSON numbers; anything larger is
// emitted as a decimal string so no precision is lost.
ordered_json integer_json(const Integer &v) {
    if (v.fits_slong_p()) {
        return v.get_si();
    }
    return v.get_str();
}

ordered_json vector_json(const IntVector &v) {
    ordered_json out = ordered_json::array();
    for (const auto &x : v) {
        out.push_back(integer_json(x));
    }
    return out;
}

ordered_json rational_json(const Rational &q) {
    return {{"num", integer_json(q.get_num())}, {"den", integer_json(q.get_den())}};
}

ordered_json patterns_json(const std::vector<Pattern> &patterns) {
    ordered_json out = ordered_json::array();
    for (const auto &p : patterns) {
        ordered_json row = ordered_json::array();
        for (auto j : p) {
            row.push_back(j + 1);
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::string multiset_str(const std::vector<int64_t> &ms) {
    std::string out;
    for (std::size_t j = 0; j < ms.size(); ++j) {
        out += (j ? ";" : "") + std::to_string(ms[j]);
    }
    return out;
}

}  // namespace

std::string rational_str(const Rational &q) {
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

std::string analysis_report(const SparseState &state) {
    const auto w = weight_matrix(state);
    const auto ps = phase_set(w);
    const auto affine = affine_certificate(w);
    const auto convex = convex_certificate(w);
    const auto cls = classify(state);

    ordered_json doc;
    doc["n"] = state.n();
    doc["m"] = state.size();
    doc["d"] = integer_json(ps.d);
    doc["chi_min"] = ps.continuous() ? ordered_json("continuous") : rational_json(ps.chi_min());
    doc["certificate"] = affine ? vector_json(affine->coefficients) : ordered_json(nullptr);
    doc["convex_certificate"] = convex ? vector_json(convex->coefficients) : ordered_json(nullptr);
    if (affine) {
        try {
            const auto irr = irreducibility(w);
            doc["irreducible"] = irr.irreducible;
            ordered_json rows = ordered_json::array();
            for (auto j : irr.support) {
                rows.push_back(j);
            }
            doc["minimal_support"] = std::move(rows);
        } catch (const std::runtime_error &) {
            doc["irreducible"] = nullptr;
            doc["minimal_support"] = nullptr;
        }
    } else {
        doc["irreducible"] = nullptr;
        doc["minimal_support"] = nullptr;
    }
    doc["maximal_length"] = cls.irreducible_maximal_length;
    doc["flags"] = {
        {"genuinely_entangled", cls.genuinely_entangled},
        {"a_state_computational_basis", cls.a_state},
        {"c_state_computational_basis", cls.c_state},
        {"irreducible_maximal_length_computational_basis", cls.irreducible_maximal_length},
        {"semistable_certified", cls.semistable_certified},
        {"trivial", cls.trivial},
    };
    return doc.dump(2) + "\n";
}

std::string table_csv(const SearchResult &result) {
    std::ostringstream out;
    out << "multiset,Z,chi_min_denominator\n";
    for (const auto &e : result.entries) {
        out << multiset_str(e.record.multiset) << ',' << e.record.Z << ',' << e.record.denominator << '\n';
    }
    return out.str();
}

std::string table_json(const SearchResult &result, bool include_a_classes) {
    ordered_json records = ordered_json::array();
    for (const auto &e : result.entries) {
        ordered_json r;
        r["multiset"] = e.record.multiset;
        r["Z"] = e.record.Z;
        r["chi_min_denominator"] = e.record.denominator;
        r["patterns"] = patterns_json(e.witness.patterns);
        if (include_a_classes) {
            r["a_class_matrices"] = e.a_classes;
        }
        records.push_back(std::move(r));
    }
    ordered_json doc;
    doc["n"] = result.n;
    doc["sum_bound"] = result.sum_bound;
    doc["records"] = std::move(records);
    doc["chi_min_denominators"] = result.denominators;
    return doc.dump(2) + "\n";
}

CombinatorialStructure parse_structure(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(std::string("structure: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("multiset") || !doc["multiset"].is_array()) {
        throw std::invalid_argument("structure: missing array field 'multiset'");
    }
    if (!doc.contains("Z") || !doc["Z"].is_number_integer()) {
        throw std::invalid_argument("structure: missing integer field 'Z'");
    }
    if (!doc.contains("patterns") || !doc["patterns"].is_array()) {
        throw std::invalid_argument("structure: missing array field 'patterns'");
    }
    CombinatorialStructure s;
    for (const auto &v : doc["multiset"]) {
        if (!v.is_number_integer()) {
            throw std::invalid_argument("structure: multiset entries must be integers");
        }
        s.multiset.push_back(v.get<int64_t>());
    }
    s.Z = doc["Z"].get<int64_t>();
    std::size_t k = 0;
    for (const auto &p : doc["patterns"]) {
        ++k;
        if (!p.is_array()) {
            throw std::invalid_argument("structure: pattern " + std::to_string(k) + " is not an array");
        }
        Pattern pat;
        for (const auto &v : p) {
            if (!v.is_number_integer() || v.get<int64_t>() < 1) {
                throw std::invalid_argument("structure: pattern " + std::to_string(k) +
                                            " positions must be integers >= 1");
            }
            pat.push_back(static_cast<std::size_t>(v.get<int64_t>() - 1));
        }
        s.patterns.push_back(std::move(pat));
    }
    return s;
}

std::string serialize_structure(const CombinatorialStructure &s) {
    ordered_json doc;
    doc["multiset"] = s.multiset;
    doc["Z"] = s.Z;
    doc["patterns"] = patterns_json(s.patterns);
    return doc.dump(2) + "\n";
}

std::string verification_report(const StabilizerSolution &solution, const VerificationResult &result) {
    ordered_json doc;
    doc["matched"] = result.matched;
    doc["chi"] = rational_json(solution.chi);
    doc["chi_str"] = rational_str(solution.chi) + " pi";
    doc["chi_determined"] = solution.chi_determined;
    ordered_json phi = ordered_json::array();
    for (const auto &p : solution.phi) {
        phi.push_back(rational_json(p));
    }
    doc["phi"] = std::move(phi);
    doc["winding"] = vector_json(solution.winding);
    doc["free_parameters"] = solution.free_parameters;
    doc["measured_chi_radians"] = result.chi;
    doc["residual"] = result.residual;
    return doc.dump(2) + "\n";
}

std::string verification_report(const VerificationResult &result) {
    ordered_json doc;
    doc["matched"] = result.matched;
    doc["measured_chi_radians"] = result.chi;
    doc["residual"] = result.residual;
    return doc.dump(2) + "\n";
}

}  // namespace topophase
