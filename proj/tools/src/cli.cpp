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

#include "topophase/cli.hpp"

#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "topophase/balance_analysis.hpp"
#include "topophase/report.hpp"
#include "topophase/search_engine.hpp"
#include "topophase/stabilizer_verify.hpp"
#include "topophase/state_model.hpp"

namespace topophase::cli {

namespace {

using nlohmann::json;

// Input problems that map to exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open '" + path + "'");
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_output(const std::string &path, const std::string &content, std::ostream &out) {
    if (path.empty()) {
        out << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot write '" + path + "'");
    }
    f << content;
}

SparseState load_state(const std::string &path) {
    try {
        return parse_state(read_file(path));
    } catch (const StateFormatError &e) {
        throw UsageError(path + ": " + e.what());
    }
}

Rational parse_rational(const json &v) {
    if (v.is_number_integer()) {
        return Rational(v.get<long>());
    }
    if (v.is_string()) {
        Rational q;
        if (q.set_str(v.get<std::string>(), 10) != 0 || q.get_den() == 0) {
            throw UsageError("not a rational: '" + v.get<std::string>() + "'");
        }
        q.canonicalize();
        return q;
    }
    throw UsageError("expected an integer or a \"p/q\" string");
}

struct OpsSpec {
    std::unique_ptr<LocalUnitaryList> ops;
    std::optional<Rational> expected_chi;
};

OpsSpec load_ops(const std::string &path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error &e) {
        throw UsageError(path + ": invalid JSON: " + e.what());
    }
    OpsSpec spec;
    auto doubles = [&](const char *key) {
        std::vector<double> v;
        for (const auto &x : doc[key]) {
            if (!x.is_number()) {
                throw UsageError(std::string("'") + key + "' entries must be numbers");
            }
            v.push_back(x.get<double>());
        }
        return v;
    };
    if (doc.contains("diagonal")) {
        RationalVector phis;
        for (const auto &x : doc["diagonal"]) {
            phis.push_back(parse_rational(x));
        }
        spec.ops = std::make_unique<LocalUnitaryList>(diagonal_stabilizer(phis));
    } else if (doc.contains("antidiagonal")) {
        spec.ops = std::make_unique<LocalUnitaryList>(antidiagonal_stabilizer(doubles("antidiagonal")));
    } else if (doc.contains("sigma_z")) {
        spec.ops = std::make_unique<LocalUnitaryList>(sigma_z_rotations(doubles("sigma_z")));
    } else if (doc.contains("matrices")) {
        std::vector<Matrix2> ms;
        for (const auto &m : doc["matrices"]) {
            if (!m.is_array() || m.size() != 4) {
                throw UsageError("each matrix must list 4 entries [re, im] in row-major order");
            }
            Matrix2 u;
            for (std::size_t i = 0; i < 4; ++i) {
                if (!m[i].is_array() || m[i].size() != 2) {
                    throw UsageError("matrix entries must be [re, im]");
                }
                u[i] = {m[i][0].get<double>(), m[i][1].get<double>()};
            }
            ms.push_back(u);
        }
        spec.ops = std::make_unique<LocalUnitaryList>(std::move(ms));
    } else {
        throw UsageError(path + ": expected one of 'diagonal', 'antidiagonal', 'sigma_z', 'matrices'");
    }
    if (doc.contains("expected_chi")) {
        spec.expected_chi = parse_rational(doc["expected_chi"]);
    }
    return spec;
}

double pi_units_to_radians(const Rational &q) {
    return wrap_angle(q.get_d() * 3.14159265358979323846);
}

bool same_angle(double a, double b, double tol) {
    return std::abs(wrap_angle(a - b)) <= tol;
}

std::string denominators_line(const std::vector<int64_t> &dens) {
    std::string s = "chi_min:";
    for (auto d : dens) {
        s += d == 1 ? " pi" : " pi/" + std::to_string(d);
    }
    return s + "\n";
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Topological phases of multi-qubit states under cyclic local SU(2) evolution", "topophase"};
    app.require_subcommand(1);

    std::string state_path, out_path, structure_path, ops_path, format = "csv";
    std::size_t n = 0, workers = 1;
    int64_t bound = 0;
    bool complete = false, a_classes = false, derive = false, allow_large = false;
    double tolerance = 1e-9;
    std::vector<long> winding;

    auto *analyze = app.add_subcommand("analyze", "Exact phase-set analysis of a state file");
    analyze->add_option("state", state_path, "State file (JSON)")->required()->check(CLI::ExistingFile);
    analyze->add_option("--out", out_path, "Write the report here instead of stdout")->envname("TOPOPHASE_OUT");

    auto *search = app.add_subcommand("search", "Enumerate maximal-length structures for n qubits");
    search->add_option("--n", n, "Qubit count")->required()->check(CLI::Range(3, 9))->envname("TOPOPHASE_N");
    auto *bound_opt =
        search->add_option("--bound", bound, "Upper bound on the multiset sum")->envname("TOPOPHASE_BOUND");
    search->add_flag("--complete", complete, "Use the provable completeness bound")
        ->excludes(bound_opt)
        ->envname("TOPOPHASE_COMPLETE");
    search->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber)->envname(
        "TOPOPHASE_WORKERS");
    search->add_option("--format", format, "Table format on stdout")
        ->check(CLI::IsMember({"csv", "json"}))
        ->envname("TOPOPHASE_FORMAT");
    search->add_option("--out", out_path, "Write <out>.csv and <out>.json")->envname("TOPOPHASE_OUT");
    search->add_flag("--a-classes", a_classes, "List canonical sign matrices of every selection (JSON)");

    auto *construct = app.add_subcommand("construct", "Build the representative state of a structure");
    construct->add_option("structure", structure_path, "Structure file (JSON, 1-based positions)")
        ->required()
        ->check(CLI::ExistingFile);
    construct->add_option("--out", out_path, "Write the state here instead of stdout")->envname("TOPOPHASE_OUT");

    auto *verify_cmd = app.add_subcommand("verify", "Check U|psi> = e^{i chi}|psi> numerically");
    verify_cmd->add_option("state", state_path, "State file (JSON)")->required()->check(CLI::ExistingFile);
    auto *derive_opt = verify_cmd->add_flag("--derive", derive, "Solve for a diagonal stabilizer");
    verify_cmd->add_option("--winding", winding, "Winding numbers a_j, comma separated (default e_1)")
        ->delimiter(',')
        ->needs(derive_opt);
    verify_cmd->add_option("--ops", ops_path, "Operator file (JSON)")->excludes(derive_opt)->check(CLI::ExistingFile);
    verify_cmd->add_option("--tolerance", tolerance, "Residual tolerance")
        ->check(CLI::PositiveNumber)
        ->envname("TOPOPHASE_TOLERANCE");
    verify_cmd->add_option("--out", out_path, "Write the report here instead of stdout")->envname("TOPOPHASE_OUT");

    auto *oracle = app.add_subcommand("oracle-check", "Compare brute force with the structured search");
    oracle->add_option("--n", n, "Qubit count")->required()->check(CLI::Range(2, 7))->envname("TOPOPHASE_N");
    oracle->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber)->envname(
        "TOPOPHASE_WORKERS");
    oracle->add_flag("--allow-large", allow_large, "Permit n = 6 and 7 (long running)");

    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    try {
        if (*analyze) {
            write_output(out_path, analysis_report(load_state(state_path)), out);
            return kSuccess;
        }

        if (*search) {
            SearchOptions o;
            o.n = n;
            o.sum_bound = complete ? completeness_bound(n) : bound;
            o.workers = workers;
            o.a_classes = a_classes;
            const auto result = search_tables(o);
            if (out_path.empty()) {
                out << (format == "json" ? table_json(result, a_classes) : table_csv(result));
                err << denominators_line(result.denominators);
            } else {
                write_output(out_path + ".csv", table_csv(result), out);
                write_output(out_path + ".json", table_json(result, a_classes), out);
                out << denominators_line(result.denominators);
            }
            return kSuccess;
        }

        if (*construct) {
            CombinatorialStructure s;
            try {
                s = parse_structure(read_file(structure_path));
            } catch (const std::invalid_argument &e) {
                throw UsageError(structure_path + ": " + e.what());
            }
            try {
                validate_structure(s);
            } catch (const std::invalid_argument &e) {
                err << "error: invalid structure: " << e.what() << "\n";
                return kInvariantViolation;
            }
            if (!uniqueness_check(s)) {
                err << "error: invalid structure: selection does not uniquely define integers\n";
                return kInvariantViolation;
            }
            write_output(out_path, serialize_state(construct_state(s)), out);
            return kSuccess;
        }

        if (*verify_cmd) {
            const auto state = load_state(state_path);
            if (derive) {
                const auto w = weight_matrix(state);
                if (phase_set(w).continuous()) {
                    err << "continuous phase family; no topological phase in this basis\n";
                    return kInvariantViolation;
                }
                IntVector a(w.m());
                if (winding.empty()) {
                    a[0] = 1;
                } else if (winding.size() != w.m()) {
                    throw UsageError("--winding needs " + std::to_string(w.m()) + " values, got " +
                                     std::to_string(winding.size()));
                } else {
                    for (std::size_t j = 0; j < w.m(); ++j) {
                        a[j] = winding[j];
                    }
                }
                const auto sol = solve_stabilizer(w, a);
                if (!sol) {
                    err << "no diagonal stabilizer satisfies these winding numbers\n";
                    return kInvariantViolation;
                }
                auto result = verify(state, diagonal_stabilizer(sol->phi), tolerance);
                result.matched = result.matched && same_angle(result.chi, pi_units_to_radians(sol->chi), tolerance);
                write_output(out_path, verification_report(*sol, result), out);
                return result.matched ? kSuccess : kVerificationMismatch;
            }
            if (ops_path.empty()) {
                throw UsageError("verify needs --derive or --ops");
            }
            const auto spec = load_ops(ops_path);
            auto result = verify(state, *spec.ops, tolerance);
            if (spec.expected_chi) {
                result.matched =
                    result.matched && same_angle(result.chi, pi_units_to_radians(*spec.expected_chi), tolerance);
            }
            write_output(out_path, verification_report(result), out);
            return result.matched ? kSuccess : kVerificationMismatch;
        }

        if (*oracle) {
            const auto brute = brute_force_oracle(n, workers, allow_large);
            std::vector<SearchRecord> searched;
            if (n >= 3) {
                SearchOptions o;
                o.n = n;
                o.sum_bound = completeness_bound(n);
                o.workers = workers;
                searched = search_tables(o).records();
            }
            const std::set<SearchRecord> a(brute.begin(), brute.end()), b(searched.begin(), searched.end());
            bool same = true;
            for (const auto &r : a) {
                if (!b.contains(r)) {
                    err << "only in brute force: " << r.str() << "\n";
                    same = false;
                }
            }
            for (const auto &r : b) {
                if (!a.contains(r)) {
                    err << "only in search: " << r.str() << "\n";
                    same = false;
                }
            }
            out << (same ? "PASS" : "FAIL") << " oracle-check n=" << n << ": brute force " << a.size()
                << " records, search " << b.size() << " records\n";
            return same ? kSuccess : kVerificationMismatch;
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kInvariantViolation;
    }
    return kUsageError;
}

}  // namespace topophase::cli
