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

// Acceptance run: one PASS/FAIL line per criterion, with detail lines for
// anything that does not match. Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "properties.hpp"
#include "reference_data.hpp"
#include "topophase/balance_analysis.hpp"
#include "topophase/search_engine.hpp"
#include "topophase/stabilizer_verify.hpp"

using namespace topophase;

namespace {

// Pinned tolerances and limits.
constexpr double kResidualTolerance = 1e-9;
constexpr double kPhaseTolerance = 1e-9;
constexpr double kTableOneSeconds = 120.0;
constexpr double kOracleSeconds = 600.0;
constexpr std::size_t kFamilyDraws = 20;
constexpr std::size_t kRandomSupports = 1000;
constexpr std::size_t kTelescopeDraws = 100;
constexpr uint64_t kSeed = 20260101;

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void fail(const std::string &why) {
        pass = false;
        details.push_back(why);
    }
    void note(const std::string &what) {
        details.push_back("info: " + what);
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class Range>
std::string set_str(const Range &r) {
    std::ostringstream s;
    s << '{';
    bool first = true;
    for (const auto &x : r) {
        s << (first ? "" : ",") << x;
        first = false;
    }
    s << '}';
    return s.str();
}

Outcome table_one() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto expected = reference::phase_denominators();
    for (std::size_t n = 2; n <= 6; ++n) {
        const auto got = table_one_row(n);
        const std::set<int64_t> gs(got.begin(), got.end());
        if (gs != expected.at(n)) {
            o.fail("n=" + std::to_string(n) + " got " + set_str(gs) + " expected " + set_str(expected.at(n)));
        }
    }
    const double s = seconds_since(t0);
    if (s > kTableOneSeconds) {
        o.fail("took " + std::to_string(s) + " s");
    }
    return o;
}

Outcome structure_records() {
    Outcome o;
    for (const auto &[n, expected] : reference::structure_tables()) {
        SearchOptions opt;
        opt.n = n;
        const auto recs = search_tables(opt).records();
        const std::set<SearchRecord> got(recs.begin(), recs.end());
        if (got == expected) {
            continue;
        }
        std::vector<SearchRecord> missing, extra;
        std::set_difference(expected.begin(), expected.end(), got.begin(), got.end(), std::back_inserter(missing));
        std::set_difference(got.begin(), got.end(), expected.begin(), expected.end(), std::back_inserter(extra));
        std::ostringstream s;
        s << "n=" << n << ": " << got.size() << " records found, " << expected.size() << " listed";
        for (const auto &r : missing) {
            s << "\n    listed only: " << r.str();
        }
        for (const auto &r : extra) {
            s << "\n    found only: " << r.str();
        }
        o.fail(s.str());
    }
    return o;
}

Outcome seven_qubits() {
    Outcome o;
    SearchOptions opt;
    opt.n = 7;
    const auto result = search_tables(opt);
    const auto recs = result.records();
    const std::set<SearchRecord> got(recs.begin(), recs.end());
    for (const auto &r : reference::seven_qubit_spot_checks()) {
        if (!got.contains(r)) {
            o.fail("missing " + r.str());
        }
    }
    const auto row = table_one_row(7);
    const std::set<int64_t> dens(row.begin(), row.end());
    for (int64_t d = 1; d <= 18; ++d) {
        if (!dens.contains(d)) {
            o.fail("denominator " + std::to_string(d) + " not reached");
        }
    }
    o.note(std::to_string(recs.size()) + " seven-qubit records at sum bound " + std::to_string(result.sum_bound));
    return o;
}

Outcome oracle() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t n = 3; n <= 5; ++n) {
        const auto brute = brute_force_oracle(n);
        SearchOptions opt;
        opt.n = n;
        const auto recs = search_tables(opt).records();
        const std::set<SearchRecord> a(brute.begin(), brute.end()), b(recs.begin(), recs.end());
        if (a != b) {
            o.fail("n=" + std::to_string(n) + ": oracle " + std::to_string(a.size()) + " records, search " +
                   std::to_string(b.size()));
        }
    }
    const double s = seconds_since(t0);
    if (s > kOracleSeconds) {
        o.fail("took " + std::to_string(s) + " s");
    }
    return o;
}

// Checks one family instance: the stabilizer holds and the phase is the
// expected one.
void check_instance(Outcome &o, const std::string &label, const FamilyInstance &f) {
    const auto r = verify(f.state, f.stabilizer, kResidualTolerance);
    if (!r.matched) {
        o.fail(label + ": residual " + std::to_string(r.residual));
        return;
    }
    if (std::abs(wrap_angle(r.chi - f.expected_chi)) > kPhaseTolerance) {
        o.fail(label + ": chi " + std::to_string(r.chi) + " expected " + std::to_string(f.expected_chi));
    }
}

Outcome families() {
    Outcome o;
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    std::uniform_int_distribution<long> small(-4, 4);
    auto angles = [&](std::size_t k) {
        std::vector<double> a(k);
        for (auto &x : a) {
            x = angle(rng);
        }
        return a;
    };

    // GHZ3: diagonal phases 0 and π, antidiagonal ±π/2.
    std::set<long> diag_phases;
    for (long p : {0L, 1L, 2L, 3L}) {
        const auto f = known_family("ghz", 3, {{p}, angles(2)});
        check_instance(o, "ghz3 diagonal p=" + std::to_string(p), f);
        diag_phases.insert(std::lround(verify(f.state, f.stabilizer).chi / M_PI));
    }
    if (diag_phases != std::set<long>{0, 1}) {
        o.fail("ghz3 diagonal phases " + set_str(diag_phases));
    }
    for (long q : {0L, -1L}) {
        const auto f = known_family("ghz_antidiag", 3, {{q}, angles(2)});
        check_instance(o, "ghz3 antidiagonal q=" + std::to_string(q), f);
        if (std::abs(std::abs(f.expected_chi) - M_PI / 2) > kPhaseTolerance) {
            o.fail("ghz3 antidiagonal phase is not ±π/2");
        }
    }

    // GHZ_n antidiagonal rule, and a violating angle sum must not stabilize.
    for (std::size_t n = 2; n <= 8; ++n) {
        for (std::size_t t = 0; t < kFamilyDraws; ++t) {
            check_instance(o, "ghz_antidiag n=" + std::to_string(n),
                           known_family("ghz_antidiag", n, {{small(rng)}, angles(n - 1)}));
        }
        auto bad = angles(n - 1);
        double sum = 0;
        for (double x : bad) {
            sum += x;
        }
        bad.push_back((n % 2 == 1 ? 0.0 : M_PI / 2) - sum);
        if (verify(named_state("ghz", n), antidiagonal_stabilizer(bad), kResidualTolerance).matched) {
            o.fail("ghz_antidiag n=" + std::to_string(n) + " accepted an angle sum off the rule");
        }
    }

    // |1…1⟩ + Wⁿ. The reference closed form (Σq_k)π/(n−1) is checked on the
    // q0 = 0 subfamily, where it coincides with the stabilizer's actual phase;
    // general draws are checked against the actual phase, and the set of
    // reachable phases must be the multiples of π/(n−1).
    std::size_t differing = 0, general = 0;
    for (std::size_t n = 3; n <= 6; ++n) {
        std::set<Rational> reached;
        for (std::size_t t = 0; t < kFamilyDraws; ++t) {
            std::vector<long> q(n + 1);
            for (auto &x : q) {
                x = small(rng);
            }
            const auto f = known_family("ones_plus_w", n, {q, {}});
            check_instance(o, "ones_plus_w n=" + std::to_string(n), f);
            long qsum = 0;
            for (auto x : q) {
                qsum += x;
            }
            const double reference_chi = wrap_angle(qsum * M_PI / static_cast<double>(n - 1));
            ++general;
            if (std::abs(wrap_angle(reference_chi - f.expected_chi)) > kPhaseTolerance) {
                ++differing;
            }

            q[0] = 0;
            const auto g = known_family("ones_plus_w", n, {q, {}});
            qsum = 0;
            for (auto x : q) {
                qsum += x;
            }
            const auto r = verify(g.state, g.stabilizer, kResidualTolerance);
            if (!r.matched ||
                std::abs(wrap_angle(r.chi - qsum * M_PI / static_cast<double>(n - 1))) > kPhaseTolerance) {
                o.fail("ones_plus_w n=" + std::to_string(n) + " q0=0: reference phase not reproduced");
            }
        }
        for (long k = 0; k < static_cast<long>(2 * (n - 1)); ++k) {
            std::vector<long> q(n + 1, 0);
            q[1] = k;
            const auto f = known_family("ones_plus_w", n, {q, {}});
            check_instance(o, "ones_plus_w n=" + std::to_string(n) + " sweep", f);
            reached.insert(*f.expected_chi_exact);
        }
        std::set<Rational> multiples;
        for (long k = 0; k < static_cast<long>(2 * (n - 1)); ++k) {
            multiples.insert(make_rational(k, n - 1));
        }
        std::set<Rational> reached_mod;
        for (const auto &c : reached) {
            Rational v = c;
            while (v < 0) {
                v += 2;
            }
            while (v >= 2) {
                v -= 2;
            }
            reached_mod.insert(v);
        }
        if (reached_mod != multiples) {
            o.fail("ones_plus_w n=" + std::to_string(n) + ": reachable phases are not the multiples of pi/" +
                   std::to_string(n - 1));
        }
    }
    o.note("reference ones_plus_w closed form differs from the stabilizer phase in " + std::to_string(differing) +
           "/" + std::to_string(general) + " general draws (q0 != 0)");

    // |0…0⟩ + Wⁿ: both 0 and π, nothing else.
    for (std::size_t n = 3; n <= 8; ++n) {
        std::set<long> phases;
        for (std::size_t t = 0; t < kFamilyDraws; ++t) {
            std::vector<long> p(n);
            for (auto &x : p) {
                x = small(rng);
            }
            const auto f = known_family("zeros_plus_w", n, {p, {}});
            check_instance(o, "zeros_plus_w n=" + std::to_string(n), f);
            phases.insert(std::lround(std::abs(f.expected_chi) / M_PI));
        }
        if (!std::includes(std::set<long>{0, 1}.begin(), std::set<long>{0, 1}.end(), phases.begin(), phases.end()) ||
            phases.size() != 2) {
            o.fail("zeros_plus_w n=" + std::to_string(n) + " phases " + set_str(phases));
        }
    }

    // Wⁿ: continuous in α.
    for (std::size_t n = 3; n <= 6; ++n) {
        for (std::size_t t = 0; t < kFamilyDraws; ++t) {
            check_instance(o, "w n=" + std::to_string(n), known_family("w", n, {{}, angles(1)}));
        }
    }
    return o;
}

Outcome property_suites() {
    Outcome o;
    std::mt19937_64 rng(kSeed);
    auto take = [&](const std::string &label, const properties::Failures &f) {
        if (!f.empty()) {
            o.fail(label + ": " + std::to_string(f.size()) + " failures, first: " + f.front());
        }
    };
    for (std::size_t n = 3; n <= 6; ++n) {
        take("random supports n=" + std::to_string(n), properties::check_random_supports(n, kRandomSupports, rng));
    }
    for (std::size_t n = 3; n <= 7; ++n) {
        take("construct round trip n=" + std::to_string(n), properties::check_construct_round_trip(n));
    }
    take("telescope", properties::check_telescope(kTelescopeDraws, rng));
    return o;
}

Outcome worked_states() {
    Outcome o;
    for (const auto &ws : reference::worked_states()) {
        const auto st = SparseState::from_bits(ws.bits.front().size(), ws.bits);
        const auto ps = phase_set(weight_matrix(st));
        if (ps.continuous() || ps.chi_min() != make_rational(1, ws.denominator)) {
            o.fail(ws.name + ": expected pi/" + std::to_string(ws.denominator) + ", computed " +
                   (ps.continuous() ? std::string("continuous") : "pi*" + ps.chi_min().get_str()) +
                   " (d=" + ps.d.get_str() + ")");
        }
    }
    return o;
}

Outcome bezout() {
    Outcome o;
    std::vector<long> allowed7, allowed5{1, 2, 3, 4, 5};
    for (long d = 1; d <= 18; ++d) {
        allowed7.push_back(d);
    }
    for (long a = 10; a <= 18; ++a) {
        for (long b = a + 1; b <= 18; ++b) {
            if (!bezout_inequivalence(a, b, allowed7)) {
                o.fail("n=7 pair (" + std::to_string(a) + "," + std::to_string(b) + ") not certified");
            }
        }
    }
    if (!bezout_inequivalence(3, 4, allowed5)) {
        o.fail("n=5 (3,4) not certified");
    }
    if (!bezout_inequivalence(3, 5, allowed5)) {
        o.fail("n=5 (3,5) not certified");
    }
    if (bezout_inequivalence(1, 2, allowed5)) {
        o.fail("n=5 (1,2) certified");
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 phase denominators n=2..6", table_one},
        {"2 structure records n=3..6", structure_records},
        {"3 seven-qubit spot checks and denominators 1..18", seven_qubits},
        {"4 brute-force oracle equals search n=3..5", oracle},
        {"5 stabilizer families", families},
        {"6 property suites", property_suites},
        {"7 worked states", worked_states},
        {"8 Bezout inequivalence", bezout},
    };
    int failed = 0;
    for (const auto &[name, run] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = run();
        } catch (const std::exception &e) {
            out.fail(std::string("exception: ") + e.what());
        }
        std::printf("%s criterion %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", name.c_str(), seconds_since(t0));
        for (const auto &d : out.details) {
            std::printf("    %s\n", d.c_str());
        }
        std::fflush(stdout);
        failed += out.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
