#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sepvar/combinatorics.hpp"
#include "sepvar/error.hpp"
#include "sepvar/poset.hpp"
#include "sepvar/report.hpp"
#include "sepvar/verify.hpp"

namespace sepvar::cli {

namespace {

// Output paths are resolved by the command; "-" means the command's stdout.
void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ParameterError("cannot open " + path + " for writing");
    file << text;
    if (!file) throw ParameterError("failed writing " + path);
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

nlohmann::ordered_json poset_json(const Poset& poset) {
    nlohmann::ordered_json j;
    j["p"] = poset.p();
    j["regime"] = to_string(poset.regime());
    auto elements = nlohmann::ordered_json::array();
    auto edges = nlohmann::ordered_json::array();
    auto maximal = nlohmann::ordered_json::array();
    for (Poset::Index i = 0; i < poset.size(); ++i) {
        const auto& e = poset.at(i);
        nlohmann::ordered_json node;
        node["id"] = i;
        node["pi"] = std::vector<int>(e.pi.parts().begin(), e.pi.parts().end());
        node["sigma"] = std::vector<int>(e.sigma.images().begin(), e.sigma.images().end());
        node["rank"] = e.rank();
        node["label"] = e.label();
        elements.push_back(std::move(node));
        for (Poset::Index c : poset.children(i)) edges.push_back({i, c});
        if (poset.parents(i).empty()) maximal.push_back(i);
    }
    j["elements"] = std::move(elements);
    j["edges"] = std::move(edges);
    j["maximal"] = std::move(maximal);
    return j;
}

std::string poset_summary(const Poset& poset) {
    std::ostringstream s;
    s << "P_" << poset.p() << " (" << to_string(poset.regime()) << "): " << poset.size() << " elements, "
      << poset.edge_count() << " covering edges\n";
    s << "rank sizes:";
    for (auto r : poset.rank_sizes()) s << ' ' << r;
    const auto maximal = maximal_elements(poset);
    s << "\nmaximal elements: " << maximal.size() << '\n';
    for (const auto& e : maximal) s << "  " << e.label() << '\n';
    return s.str();
}

std::string record_line(const VerificationRecord& r) {
    std::ostringstream s;
    s << (r.passed() ? "PASS " : "FAIL ") << r.check << ' ' << r.params.dump();
    if (r.seed != 0) s << " seed=" << r.seed;
    s << " failures=" << r.failures << '/' << r.trials;
    if (r.allowed_failures > 0) s << " (allowed " << r.allowed_failures << ')';
    s << " max_residual=" << format_double(r.max_residual) << '\n';
    return s.str();
}

int report_records(const std::string& suite, const std::vector<VerificationRecord>& records,
                   const std::string& json_path, std::ostream& out) {
    int failed = 0;
    for (const auto& r : records) {
        if (!r.passed()) ++failed;
        if (json_path != "-") out << record_line(r);
    }
    if (!json_path.empty()) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : records) arr.push_back(to_json(r));
        write_output(json_path, arr.dump(2) + "\n", out);
    }
    if (json_path != "-")
        out << "verify " << suite << ": " << records.size() << " checks, " << failed << " failed\n";
    return failed == 0 ? kExitOk : kExitFailure;
}

std::string sequence_line(int upto, Count (*formula)(int), Count (*other)(int), Count (*brute)(int), int brute_max,
                          bool& ok) {
    std::ostringstream s;
    ok = true;
    for (int k = 1; k <= upto; ++k) {
        const Count v = formula(k);
        if (other && other(k) != v) ok = false;
        if (k <= brute_max && brute(k) != v) ok = false;
        s << (k > 1 ? " " : "") << v;
    }
    s << (ok ? " OK" : " MISMATCH") << '\n';
    return s.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Separating-variety poset toolkit for simultaneous conjugation of matrix tuples", "sepvar"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("sepvar 0.1.0"));

    int p = 0, n = 0;
    std::string dot_path, json_path;
    bool allow_large = false;

    auto* poset_cmd = app.add_subcommand("poset", "Build the poset and write its Hasse diagram");
    poset_cmd->add_option("--p", p, "Matrix size")->required()->check(CLI::PositiveNumber);
    poset_cmd->add_option("--n", n, "Number of matrices (>= 2)")->required();
    poset_cmd->add_option("--dot", dot_path, "Write DOT to FILE ('-' for stdout)");
    poset_cmd->add_option("--json", json_path, "Write JSON to FILE ('-' for stdout)");
    poset_cmd->add_flag("--allow-large", allow_large, "Lift the size guard from p <= 7 to p <= 8");

    auto* comp_cmd = app.add_subcommand("components", "Irreducible components with dimensions and bounds");
    comp_cmd->add_option("--p", p, "Matrix size (>= 2)")->required();
    comp_cmd->add_option("--n", n, "Number of matrices (>= 2)")->required();
    comp_cmd->add_option("--json", json_path, "Also write the JSON report to FILE ('-' for stdout only)");

    int tk = 0, hz = 0;
    auto* counts_cmd = app.add_subcommand("counts", "Counting sequences checked against brute force");
    auto* tk_opt = counts_cmd->add_option("--tk", tk, "T_1 .. T_K")->check(CLI::Range(1, 20));
    auto* hz_opt = counts_cmd->add_option("--hertzsprung", hz, "u_1 .. u_P")->check(CLI::Range(1, 20));
    tk_opt->excludes(hz_opt);
    counts_cmd->require_option(1);

    auto* bounds_cmd = app.add_subcommand("bounds", "Dimension and separating-set bounds");
    bounds_cmd->add_option("--p", p, "Matrix size (>= 2)")->required();
    bounds_cmd->add_option("--n", n, "Number of matrices (>= 2)")->required();

    auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
    verify_cmd->require_subcommand(1);

    int max_p = 5;
    std::vector<std::string> fixture_paths;
    auto* vposet_cmd = verify_cmd->add_subcommand("poset", "Poset properties and figure fixtures");
    vposet_cmd->add_option("--max-p", max_p, "Largest p to check")->check(CLI::Range(1, kDefaultMaxP));
    vposet_cmd->add_option("--fixture", fixture_paths, "Additional JSON figure fixture")->check(CLI::ExistingFile);
    vposet_cmd->add_option("--json", json_path, "Write JSON records to FILE ('-' for stdout only)");

    NumericOptions numeric;
    auto* vnum_cmd = verify_cmd->add_subcommand("numeric", "Seeded numeric certificates");
    vnum_cmd->add_option("--p", numeric.p, "Largest block size")->check(CLI::Range(1, 6));
    vnum_cmd->add_option("--n", numeric.n, "Number of matrices")->check(CLI::Range(2, 8));
    vnum_cmd->add_option("--trials", numeric.trials, "Trials per check")->check(CLI::Range(1, 100000));
    vnum_cmd->add_option("--seed", numeric.seed, "Base seed");
    vnum_cmd->add_option("--tol", numeric.tol, "Relative singular-value threshold")
        ->check(CLI::Range(1e-15, 1e-2));
    vnum_cmd->add_option("--max-word-len", numeric.max_word_len, "Trace word length")->check(CLI::Range(1, 12));
    vnum_cmd->add_option("--json", json_path, "Write JSON records to FILE ('-' for stdout only)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*poset_cmd) {
            const Poset poset = Poset::build(p, regime_for(n), allow_large ? kDefaultMaxP + 1 : kDefaultMaxP);
            if (!dot_path.empty()) write_output(dot_path, hasse_dot(poset, n), out);
            if (!json_path.empty()) write_output(json_path, poset_json(poset).dump(2) + "\n", out);
            if (dot_path != "-" && json_path != "-") out << poset_summary(poset);
            return kExitOk;
        }
        if (*comp_cmd) {
            const auto report = component_report(p, n);
            if (!json_path.empty()) write_output(json_path, to_json(report).dump(2) + "\n", out);
            if (json_path != "-") out << render_table(report);
            return kExitOk;
        }
        if (*bounds_cmd) {
            out << render_bounds(component_report(p, n));
            return kExitOk;
        }
        if (*counts_cmd) {
            bool ok = false;
            if (*tk_opt)
                out << sequence_line(tk, t_count, t_count_closed_form, brute_force_t_count, kMaxBruteForceT, ok);
            else
                out << sequence_line(hz, hertzsprung, nullptr, brute_force_hertzsprung, kMaxBruteForceHertzsprung,
                                     ok);
            return ok ? kExitOk : kExitFailure;
        }
        if (*vposet_cmd) {
            PosetSuiteOptions options;
            options.max_p = max_p;
            for (const auto& path : fixture_paths) {
                std::ifstream in(path);
                nlohmann::json j;
                try {
                    j = nlohmann::json::parse(in);
                } catch (const nlohmann::json::parse_error& e) {
                    throw ParameterError(path + ": " + e.what());
                }
                if (j.is_array())
                    for (const auto& f : j) options.extra_fixtures.push_back(fixture_from_json(f));
                else
                    options.extra_fixtures.push_back(fixture_from_json(j));
            }
            return report_records("poset", run_poset_suite(options), json_path, out);
        }
        if (*vnum_cmd) return report_records("numeric", run_numeric_suite(numeric), json_path, out);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ResamplingError& e) {
        err << "error: " << e.what() << " (seed " << e.seed() << ")\n";
        return kExitFailure;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"sepvar"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace sepvar::cli
