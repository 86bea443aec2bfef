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

#ifndef TOPOPHASE_REPORT_HPP
#define TOPOPHASE_REPORT_HPP

#include <optional>
#include <string>
#include <string_view>

#include "topophase/balance_analysis.hpp"
#include "topophase/search_engine.hpp"
#include "topophase/stabilizer_verify.hpp"
#include "topophase/structure.hpp"

namespace topophase {

/// Analysis report for one state:
///   {"n", "m", "d", "chi_min": {"num","den"} | "continuous",
///    "certificate": [c_j] | null, "convex_certificate": [c_j] | null,
///    "irreducible": bool | null, "minimal_support": [rows] | null,
///    "maximal_length": bool, "flags": {...}}
/// Phases are in units of π. Basis-relative flags carry a
/// "_computational_basis" suffix.
std::string analysis_report(const SparseState &state);

/// CSV with header `multiset,Z,chi_min_denominator`, multiset values joined by
/// ';' in descending order, rows sorted by (denominator, multiset).
std::string table_csv(const SearchResult &result);

/// {"n", "sum_bound", "records": [{"multiset", "Z", "chi_min_denominator",
/// "patterns", "a_class_matrices"?}], "chi_min_denominators": [...]}.
/// Pattern positions are 1-based.
std::string table_json(const SearchResult &result, bool include_a_classes);

/// Parses {"multiset": [...], "Z": z, "patterns": [[positions...], ...]} with
/// 1-based positions. Throws std::invalid_argument on malformed input; does
/// not check the structure invariants.
CombinatorialStructure parse_structure(std::string_view text);
std::string serialize_structure(const CombinatorialStructure &s);

/// Report of a derived stabilizer check; exact values in units of π.
std::string verification_report(const StabilizerSolution &solution, const VerificationResult &result);
/// Report of a check against explicitly supplied operators.
std::string verification_report(const VerificationResult &result);

/// "p/q" for a rational, "p" when q = 1.
std::string rational_str(const Rational &q);

}  // namespace topophase

#endif
