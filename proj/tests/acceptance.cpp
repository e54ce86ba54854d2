// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <array>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sepvar/combinatorics.hpp"
#include "sepvar/poset.hpp"
#include "sepvar/report.hpp"
#include "sepvar/verify.hpp"

#ifndef SEPVAR_CLI_PATH
#error "SEPVAR_CLI_PATH must point at the sepvar executable"
#endif

using namespace sepvar;

namespace {

constexpr double kTol = 1e-8;

struct Outcome {
    bool ok = true;
    std::vector<std::string> notes;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }
    void expect(const VerificationRecord& r) {
        std::ostringstream s;
        s << r.check << ' ' << r.params.dump() << " failures=" << r.failures << '/' << r.trials;
        expect(r.passed(), s.str());
    }
};

Outcome counting_sequences() {
    Outcome o;
    const std::vector<Count> t{1, 1, 3, 11, 53, 309};
    const std::vector<Count> u{1, 0, 0, 2, 14, 90};
    for (int k = 1; k <= 6; ++k) {
        o.expect(t_count(k) == t[static_cast<std::size_t>(k - 1)], "t_count(" + std::to_string(k) + ")");
        o.expect(hertzsprung(k) == u[static_cast<std::size_t>(k - 1)], "hertzsprung(" + std::to_string(k) + ")");
    }
    for (int k = 1; k <= 9; ++k)
        o.expect(t_count(k) == t_count_closed_form(k) && t_count(k) == brute_force_t_count(k),
                 "T_k agreement at k=" + std::to_string(k));
    for (int p = 1; p <= 8; ++p)
        o.expect(hertzsprung(p) == brute_force_hertzsprung(p), "hertzsprung agreement at p=" + std::to_string(p));
    return o;
}

Outcome figure_fixtures() {
    Outcome o;
    int checked = 0;
    for (const auto& f : builtin_fixtures()) {
        if (f.p > 3) continue;
        ++checked;
        o.expect(f.maximal.has_value() && f.edge_list.has_value(), f.name + " lacks exact sets");
        o.expect(check_fixture(f));
    }
    o.expect(checked == 4, "expected four small fixtures");
    return o;
}

Outcome component_tables() {
    Outcome o;
    const auto three = component_report(4, 3);
    o.expect(three.counts_by_codim == std::map<int, Count>{{0, 1}, {1, 3}, {2, 9}, {3, 11}}, "p=4 n=3 codim counts");
    const auto two = component_report(4, 2);
    std::map<std::int64_t, int> dims;
    for (const auto& c : two.components) ++dims[c.dim];
    o.expect(dims == std::map<std::int64_t, int>{{47, 1}, {46, 3}, {45, 5}, {44, 2}}, "p=4 n=2 dimensions");
    for (int p = 1; p <= 6; ++p) o.expect(check_count_formulas(Poset::build(p, Regime::ThreeOrMore)));
    return o;
}

Outcome dimension_bounds() {
    Outcome o;
    for (int p = 2; p <= 6; ++p)
        for (int n : {2, 3, 4, 5}) {
            const auto r = component_report(p, n);
            const std::int64_t pp = std::int64_t{p} * p;
            const std::string tag = " at p=" + std::to_string(p) + " n=" + std::to_string(n);
            o.expect(r.total_dim == (n + 1) * pp - 1, "total dim" + tag);
            if (r.sdim == (n + 1) * pp - p)
                o.expect(r.separating_lower_bound == (n - 1) * pp + p, "separating bound" + tag);
            if (n >= 3) {
                o.expect(r.semi_invariant_lower_bound == (n - 2) * pp + p, "semi-invariant bound" + tag);
                o.expect(r.semi_invariant_dim == (n - 2) * pp + 2, "semi-invariant dim" + tag);
                o.expect((*r.semi_invariant_lower_bound > *r.semi_invariant_dim + 1) == (p >= 4),
                         "semi-invariant comparison" + tag);
            }
        }
    const std::vector<std::array<int, 2>> generic_sdim_cases{{3, 2}, {3, 3}, {3, 4}, {4, 2}, {2, 4}, {2, 5}};
    for (const auto& [n, p] : generic_sdim_cases)
        o.expect(component_report(p, n).sdim == (n + 1) * p * p - p,
                 "sdim at n=" + std::to_string(n) + " p=" + std::to_string(p));
    o.expect(component_report(3, 2).sdim == 25, "sdim at n=2 p=3");
    o.expect(component_report(2, 2).sdim == 11, "sdim at n=2 p=2");
    return o;
}

Outcome poset_properties() {
    Outcome o;
    for (int p = 1; p <= 5; ++p)
        for (Regime regime : {Regime::ThreeOrMore, Regime::TwoMatrices}) {
            const auto poset = Poset::build(p, regime);
            o.expect(check_gradedness(poset));
            o.expect(check_criterion_equivalence(poset));
            o.expect(check_order_axioms(poset));
            o.expect(p <= 4 ? check_compatibility(poset) : check_compatibility(poset, 4000, 1));
        }
    return o;
}

Outcome numeric_certificates() {
    Outcome o;
    const auto vacuous = check_rank_condition_vacuous(100, 1, kTol);
    o.expect(vacuous.failures == 0, "rank condition vacuous for n=2");
    o.expect(check_rank_condition_generic(100, 1, kTol));  // at most 1 of 100 may hold
    const auto dependent = check_rank_condition_dependent(3, 3, 100, 1, kTol);
    o.expect(dependent.failures == 0, "rank condition on dependent data");
    o.expect(check_trace_pairs(3, 4, 50, 6, 1, kTol));
    o.expect(check_trace_independent(2, 2, 100, 2, 1));  // at most 1 of 100 may stay below 0.1
    o.expect(check_degeneration(3, 3, 20, 1, kTol));
    return o;
}

std::pair<int, std::string> run_cli(const std::string& args) {
    const std::string cmd = std::string(SEPVAR_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    return {pclose(pipe), out};
}

Outcome determinism() {
    Outcome o;
    const std::vector<std::string> commands{
        "counts --tk 9",
        "counts --hertzsprung 9",
        "components --p 4 --n 2",
        "components --p 5 --n 3 --json -",
        "bounds --p 4 --n 3",
        "poset --p 4 --n 2 --dot -",
        "poset --p 3 --n 3 --json -",
        "verify poset --max-p 5",
        "verify numeric --seed 7 --trials 50 --json -",
    };
    for (const auto& c : commands) {
        const auto first = run_cli(c), second = run_cli(c);
        o.expect(first.first == 0, "'" + c + "' exit status");
        o.expect(!first.second.empty() && first == second, "'" + c + "' output differs between runs");
    }
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"counting sequences", counting_sequences},
        {"figure fixtures", figure_fixtures},
        {"component tables", component_tables},
        {"dimension and bound formulas", dimension_bounds},
        {"poset properties", poset_properties},
        {"numeric certificates", numeric_certificates},
        {"CLI determinism", determinism},
    };
    int failed = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << index << ": " << c.name << '\n';
        for (const auto& note : o.notes) std::cout << "      " << note << '\n';
        if (!o.ok) ++failed;
    }
    std::cout << (failed == 0 ? "all 7 criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
    return failed == 0 ? 0 : 1;
}
