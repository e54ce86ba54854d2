#include "sepvar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>

#include "sepvar/error.hpp"
#include "sepvar/report.hpp"

namespace sepvar {

namespace {

double round_significant(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

// Independent stream per (check, trial) so checks do not shift each other's draws.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint32_t tag, int trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), tag,
                      static_cast<std::uint32_t>(trial)};
    return std::mt19937_64(seq);
}

std::uint64_t trial_seed(std::mt19937_64& rng) { return rng(); }

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::complex<double> random_scalar(std::mt19937_64& rng) { return random_matrix(1, 1, rng)(0, 0); }

template <class T>
const T& pick(const std::vector<T>& items, std::mt19937_64& rng) {
    return items[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(items.size()) - 1))];
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw ParameterError(msg);
}

VerificationRecord make_record(std::string check, nlohmann::ordered_json params, std::uint64_t seed, int trials,
                               int allowed = 0) {
    VerificationRecord r;
    r.check = std::move(check);
    r.params = std::move(params);
    r.seed = seed;
    r.trials = trials;
    r.allowed_failures = allowed;
    return r;
}

VerificationRecord make_poset_record(std::string check, const Poset& poset) {
    nlohmann::ordered_json params;
    params["p"] = poset.p();
    params["regime"] = to_string(poset.regime());
    return make_record(std::move(check), std::move(params), 0, 0);
}

// Random data is simple almost surely; the retries only guard against a degenerate draw.
MatrixTuple random_simple(int n, int p, std::mt19937_64& rng, double tol) {
    for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
        auto t = random_tuple(n, p, rng);
        if (is_simple(t, tol)) return t;
    }
    throw ResamplingError("no simple tuple found", 0);
}

std::pair<Composition, Permutation> random_shape(int max_p, std::mt19937_64& rng) {
    const int p = uniform(rng, 1, max_p);
    const int k = uniform(rng, 1, p);
    const auto pi = pick(enumerate_compositions(p, k), rng);
    const auto sigma = pick(enumerate_permutations(k), rng);
    return {pi, sigma};
}

std::vector<Matrix> to_vector(std::span<const Matrix> ms) { return {ms.begin(), ms.end()}; }

std::vector<Matrix> random_blocks(int n, int rows, int cols, std::mt19937_64& rng) {
    std::vector<Matrix> out;
    for (int i = 0; i < n; ++i) out.push_back(random_matrix(rows, cols, rng));
    return out;
}

PosetElement E(std::vector<int> pi, std::vector<int> sigma) {
    return PosetElement::make(Composition::make(std::move(pi)), Permutation::make(std::move(sigma)));
}

PosetElement element_from_json(const nlohmann::json& j) {
    require(j.is_object() && j.contains("pi") && j.contains("sigma"), "fixture element needs pi and sigma");
    return E(j.at("pi").get<std::vector<int>>(), j.at("sigma").get<std::vector<int>>());
}

}  // namespace

nlohmann::ordered_json to_json(const VerificationRecord& r) {
    nlohmann::ordered_json j;
    j["check"] = r.check;
    j["params"] = r.params;
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    j["failures"] = r.failures;
    j["allowed_failures"] = r.allowed_failures;
    j["max_residual"] = round_significant(r.max_residual);
    j["passed"] = r.passed();
    return j;
}

bool all_passed(const std::vector<VerificationRecord>& records) {
    return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.passed(); });
}

// ---------------------------------------------------------------------------

std::vector<FigureFixture> builtin_fixtures() {
    std::vector<FigureFixture> out;

    FigureFixture f;
    f.name = "P_2_n3plus";
    f.p = 2;
    f.regime = Regime::ThreeOrMore;
    f.nodes = 3;
    f.edges = 1;
    f.maximal = std::vector{E({2}, {1}), E({1, 1}, {1, 2})};
    f.edge_list = {{{E({2}, {1}), E({1, 1}, {2, 1})}}};
    out.push_back(f);

    f = {};
    f.name = "P_2_n2";
    f.p = 2;
    f.regime = Regime::TwoMatrices;
    f.nodes = 3;
    f.edges = 2;
    f.maximal = std::vector{E({2}, {1})};
    f.edge_list = {{{E({2}, {1}), E({1, 1}, {1, 2})}, {E({2}, {1}), E({1, 1}, {2, 1})}}};
    out.push_back(f);

    f = {};
    f.name = "P_3_n3plus";
    f.p = 3;
    f.regime = Regime::ThreeOrMore;
    f.nodes = 11;
    f.edges = 6;
    f.maximal = std::vector{E({3}, {1}),          E({2, 1}, {1, 2}),    E({1, 2}, {1, 2}),
                            E({1, 1, 1}, {1, 2, 3}), E({1, 1, 1}, {2, 3, 1}), E({1, 1, 1}, {3, 1, 2})};
    f.edge_list = {{
        {E({3}, {1}), E({1, 2}, {2, 1})},
        {E({3}, {1}), E({2, 1}, {2, 1})},
        {E({1, 2}, {1, 2}), E({1, 1, 1}, {1, 3, 2})},
        {E({1, 2}, {2, 1}), E({1, 1, 1}, {3, 2, 1})},
        {E({2, 1}, {1, 2}), E({1, 1, 1}, {2, 1, 3})},
        {E({2, 1}, {2, 1}), E({1, 1, 1}, {3, 2, 1})},
    }};
    out.push_back(f);

    f = {};
    f.name = "P_3_n2";
    f.p = 3;
    f.regime = Regime::TwoMatrices;
    f.nodes = 11;
    f.edges = 10;
    f.maximal = std::vector{E({3}, {1}), E({2, 1}, {1, 2}), E({1, 2}, {1, 2})};
    f.edge_list = {{
        {E({3}, {1}), E({1, 2}, {2, 1})},
        {E({3}, {1}), E({2, 1}, {2, 1})},
        {E({1, 2}, {1, 2}), E({1, 1, 1}, {1, 2, 3})},
        {E({1, 2}, {1, 2}), E({1, 1, 1}, {1, 3, 2})},
        {E({1, 2}, {2, 1}), E({1, 1, 1}, {3, 1, 2})},
        {E({1, 2}, {2, 1}), E({1, 1, 1}, {3, 2, 1})},
        {E({2, 1}, {1, 2}), E({1, 1, 1}, {1, 2, 3})},
        {E({2, 1}, {1, 2}), E({1, 1, 1}, {2, 1, 3})},
        {E({2, 1}, {2, 1}), E({1, 1, 1}, {2, 3, 1})},
        {E({2, 1}, {2, 1}), E({1, 1, 1}, {3, 2, 1})},
    }};
    out.push_back(f);

    // The drawn rank-4 cycle labels are read in the opposite orientation.
    f = {};
    f.name = "P_4_n3plus";
    f.p = 4;
    f.regime = Regime::ThreeOrMore;
    f.nodes = 49;
    f.edges = 33;
    f.maximal_by_rank = std::vector<std::size_t>{1, 3, 9, 11};
    f.edge_list = {{
        {E({2, 1, 1}, {1, 2, 3}), E({1, 1, 1, 1}, {2, 1, 3, 4})},
        {E({1, 2, 1}, {1, 2, 3}), E({1, 1, 1, 1}, {1, 3, 2, 4})},
        {E({3, 1}, {1, 2}), E({2, 1, 1}, {2, 1, 3})},
        {E({3, 1}, {1, 2}), E({1, 2, 1}, {2, 1, 3})},
        {E({2, 1, 1}, {2, 1, 3}), E({1, 1, 1, 1}, {3, 2, 1, 4})},
        {E({1, 2, 1}, {2, 1, 3}), E({1, 1, 1, 1}, {3, 2, 1, 4})},
        {E({1, 1, 2}, {1, 2, 3}), E({1, 1, 1, 1}, {1, 2, 4, 3})},
        {E({1, 3}, {1, 2}), E({1, 2, 1}, {1, 3, 2})},
        {E({1, 3}, {1, 2}), E({1, 1, 2}, {1, 3, 2})},
        {E({1, 2, 1}, {1, 3, 2}), E({1, 1, 1, 1}, {1, 4, 3, 2})},
        {E({1, 1, 2}, {1, 3, 2}), E({1, 1, 1, 1}, {1, 4, 3, 2})},
        {E({2, 2}, {1, 2}), E({2, 1, 1}, {1, 3, 2})},
        {E({2, 2}, {1, 2}), E({1, 1, 2}, {2, 1, 3})},
        {E({2, 1, 1}, {1, 3, 2}), E({1, 1, 1, 1}, {2, 1, 4, 3})},
        {E({1, 1, 2}, {2, 1, 3}), E({1, 1, 1, 1}, {2, 1, 4, 3})},
        {E({4}, {1}), E({2, 2}, {2, 1})},
        {E({4}, {1}), E({3, 1}, {2, 1})},
        {E({4}, {1}), E({1, 3}, {2, 1})},
        {E({3, 1}, {2, 1}), E({2, 1, 1}, {3, 2, 1})},
        {E({2, 2}, {2, 1}), E({2, 1, 1}, {3, 2, 1})},
        {E({1, 3}, {2, 1}), E({1, 1, 2}, {3, 2, 1})},
        {E({2, 2}, {2, 1}), E({1, 1, 2}, {3, 2, 1})},
        {E({2, 1, 1}, {3, 2, 1}), E({1, 1, 1, 1}, {4, 3, 2, 1})},
        {E({1, 1, 2}, {3, 2, 1}), E({1, 1, 1, 1}, {4, 3, 2, 1})},
        {E({1, 2, 1}, {3, 2, 1}), E({1, 1, 1, 1}, {4, 3, 2, 1})},
        {E({3, 1}, {2, 1}), E({1, 2, 1}, {3, 2, 1})},
        {E({1, 3}, {2, 1}), E({1, 2, 1}, {3, 2, 1})},
        {E({2, 1, 1}, {2, 3, 1}), E({1, 1, 1, 1}, {3, 2, 4, 1})},
        {E({1, 2, 1}, {2, 3, 1}), E({1, 1, 1, 1}, {2, 4, 3, 1})},
        {E({1, 1, 2}, {2, 3, 1}), E({1, 1, 1, 1}, {3, 4, 2, 1})},
        {E({2, 1, 1}, {3, 1, 2}), E({1, 1, 1, 1}, {4, 3, 1, 2})},
        {E({1, 2, 1}, {3, 1, 2}), E({1, 1, 1, 1}, {4, 2, 1, 3})},
        {E({1, 1, 2}, {3, 1, 2}), E({1, 1, 1, 1}, {4, 1, 3, 2})},
    }};
    out.push_back(f);

    f = {};
    f.name = "P_4_n2";
    f.p = 4;
    f.regime = Regime::TwoMatrices;
    f.nodes = 49;
    f.edges = 55;
    f.maximal_by_rank = std::vector<std::size_t>{1, 3, 5, 2};
    out.push_back(f);

    return out;
}

FigureFixture fixture_from_json(const nlohmann::json& j) {
    try {
        require(j.is_object(), "fixture must be a JSON object");
        FigureFixture f;
        f.name = j.value("name", std::string("fixture"));
        f.p = j.at("p").get<int>();
        f.regime = regime_for(j.at("n").get<int>());
        f.nodes = j.at("nodes").get<std::size_t>();
        f.edges = j.at("edges").get<std::size_t>();
        if (j.contains("maximal")) {
            std::vector<PosetElement> m;
            for (const auto& e : j.at("maximal")) m.push_back(element_from_json(e));
            f.maximal = std::move(m);
        }
        if (j.contains("maximal_by_rank")) f.maximal_by_rank = j.at("maximal_by_rank").get<std::vector<std::size_t>>();
        if (j.contains("edge_list")) {
            std::vector<std::pair<PosetElement, PosetElement>> edges;
            for (const auto& e : j.at("edge_list")) {
                require(e.is_array() && e.size() == 2, "fixture edges are [parent, child] pairs");
                edges.emplace_back(element_from_json(e[0]), element_from_json(e[1]));
            }
            f.edge_list = std::move(edges);
        }
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("malformed fixture: ") + e.what());
    }
}

VerificationRecord check_fixture(const FigureFixture& fixture) {
    nlohmann::ordered_json params;
    params["fixture"] = fixture.name;
    params["p"] = fixture.p;
    params["regime"] = to_string(fixture.regime);
    auto r = make_record("figure_fixture", std::move(params), 0, 0);

    const Poset poset = Poset::build(fixture.p, fixture.regime);
    const auto fail = [&r] { ++r.failures; };
    ++r.trials;
    if (poset.size() != fixture.nodes) fail();
    ++r.trials;
    if (poset.edge_count() != fixture.edges) fail();

    const auto maximal = maximal_elements(poset);
    if (fixture.maximal) {
        ++r.trials;
        const std::set<PosetElement> want(fixture.maximal->begin(), fixture.maximal->end());
        const std::set<PosetElement> got(maximal.begin(), maximal.end());
        if (want != got || want.size() != fixture.maximal->size()) fail();
    }
    if (fixture.maximal_by_rank) {
        ++r.trials;
        std::vector<std::size_t> got(static_cast<std::size_t>(fixture.p), 0);
        for (const auto& e : maximal) ++got[static_cast<std::size_t>(e.rank() - 1)];
        if (got != *fixture.maximal_by_rank) fail();
    }
    if (fixture.edge_list) {
        ++r.trials;
        std::set<std::pair<PosetElement, PosetElement>> got;
        for (Poset::Index i = 0; i < poset.size(); ++i)
            for (Poset::Index c : poset.children(i)) got.emplace(poset.at(i), poset.at(c));
        const std::set<std::pair<PosetElement, PosetElement>> want(fixture.edge_list->begin(),
                                                                   fixture.edge_list->end());
        if (want != got || want.size() != fixture.edge_list->size()) fail();
    }
    return r;
}

// ---------------------------------------------------------------------------

VerificationRecord check_gradedness(const Poset& poset) {
    auto r = make_poset_record("gradedness", poset);
    for (Poset::Index i = 0; i < poset.size(); ++i)
        for (Poset::Index c : poset.children(i)) {
            ++r.trials;
            if (poset.at(c).rank() != poset.at(i).rank() + 1) ++r.failures;
        }
    for (Poset::Index a = 0; a < poset.size(); ++a)
        for (Poset::Index b = 0; b < poset.size(); ++b) {
            if (a == b || !poset.leq(a, b)) continue;
            ++r.trials;
            const auto parents = poset.parents(a);
            const bool chain = std::any_of(parents.begin(), parents.end(), [&](auto c) { return poset.leq(c, b); });
            if (poset.at(a).rank() <= poset.at(b).rank() || !chain) ++r.failures;
        }
    return r;
}

VerificationRecord check_criterion_equivalence(const Poset& poset) {
    auto r = make_poset_record("criterion_equivalence", poset);
    for (Poset::Index i = 0; i < poset.size(); ++i) {
        ++r.trials;
        if (poset.parents(i).empty() != is_maximal_by_criterion(poset.at(i), poset.regime())) ++r.failures;
    }
    return r;
}

VerificationRecord check_order_axioms(const Poset& poset) {
    auto r = make_poset_record("order_axioms", poset);
    const auto n = poset.size();
    for (Poset::Index a = 0; a < n; ++a) {
        ++r.trials;
        if (!poset.leq(a, a)) ++r.failures;
        for (Poset::Index b = 0; b < n; ++b) {
            if (a == b || !poset.leq(a, b)) continue;
            ++r.trials;
            if (poset.leq(b, a)) ++r.failures;
            for (Poset::Index c = 0; c < n; ++c)
                if (poset.leq(b, c) && !poset.leq(a, c)) ++r.failures;
        }
    }
    return r;
}

VerificationRecord check_compatibility(const Poset& poset, std::optional<int> sample_pairs, std::uint64_t seed) {
    auto r = make_poset_record("compatibility_vs_closure", poset);
    r.params["mode"] = sample_pairs ? "sampled" : "exhaustive";
    r.seed = sample_pairs ? seed : 0;
    const auto test = [&](Poset::Index a, Poset::Index b) {
        if (poset.at(a).rank() < poset.at(b).rank()) return;
        ++r.trials;
        if (compatibility_check(poset.at(a), poset.at(b), poset) != poset.leq(a, b)) ++r.failures;
    };
    if (!sample_pairs) {
        for (Poset::Index a = 0; a < poset.size(); ++a)
            for (Poset::Index b = 0; b < poset.size(); ++b) test(a, b);
        return r;
    }
    // Half the samples are related pairs so both verdicts get exercised.
    auto rng = trial_rng(seed, 0xC0, 0);
    const int last = static_cast<int>(poset.size()) - 1;
    for (int s = 0; s < *sample_pairs; ++s) {
        const auto a = static_cast<Poset::Index>(uniform(rng, 0, last));
        Poset::Index b = static_cast<Poset::Index>(uniform(rng, 0, last));
        if (s % 2 == 0) {
            b = a;
            while (!poset.parents(b).empty() && uniform(rng, 0, 3) != 0) b = pick(std::vector<Poset::Index>(
                poset.parents(b).begin(), poset.parents(b).end()), rng);
        }
        test(a, b);
    }
    return r;
}

VerificationRecord check_count_formulas(const Poset& poset) {
    auto r = make_poset_record("count_formulas", poset);
    const int p = poset.p();
    std::vector<Count> got(static_cast<std::size_t>(p) + 1, 0);
    for (const auto& e : maximal_elements(poset)) ++got[static_cast<std::size_t>(e.rank())];
    if (poset.regime() == Regime::ThreeOrMore) {
        for (int k = 1; k <= p; ++k) {
            ++r.trials;
            if (got[static_cast<std::size_t>(k)] != binomial(p - 1, k - 1) * t_count(k)) ++r.failures;
        }
    } else {
        ++r.trials;
        if (got[static_cast<std::size_t>(p)] != hertzsprung(p)) ++r.failures;
    }
    return r;
}

VerificationRecord check_report(const Poset& poset, int n) {
    auto r = make_poset_record("report_invariants", poset);
    r.params["n"] = n;
    const int p = poset.p();
    const auto rep = component_report(poset, n);
    const auto fail_if = [&r](bool bad) {
        ++r.trials;
        if (bad) ++r.failures;
    };
    const std::int64_t pp = std::int64_t{p} * p;

    const auto zero = rep.counts_by_codim.find(0);
    fail_if(zero == rep.counts_by_codim.end() || zero->second != 1 || rep.components.empty() ||
            rep.components.front().element != PosetElement::top(p));
    fail_if(rep.total_dim != (n + 1) * pp - 1);

    std::int64_t expected_sdim = (n + 1) * pp - p;
    if (n == 2 && p == 3) expected_sdim = 25;
    if (n == 2 && p == 2) expected_sdim = 11;
    fail_if(rep.sdim != expected_sdim);
    if (rep.sdim == (n + 1) * pp - p) fail_if(rep.separating_lower_bound != (n - 1) * pp + p);
    fail_if(rep.separating_lower_bound != 2 * n * pp - rep.sdim);
    fail_if(rep.invariant_ring_dim != (n - 1) * pp + 1);
    if (n >= 3) {
        fail_if(!rep.semi_invariant_dim || *rep.semi_invariant_dim != (n - 2) * pp + 2);
        fail_if(!rep.semi_invariant_lower_bound || *rep.semi_invariant_lower_bound != (n - 2) * pp + p);
        if (rep.semi_invariant_dim && rep.semi_invariant_lower_bound)
            fail_if((*rep.semi_invariant_lower_bound > *rep.semi_invariant_dim + 1) != (p >= 4));
    } else {
        fail_if(rep.semi_invariant_dim.has_value() || rep.semi_invariant_lower_bound.has_value());
    }
    return r;
}

std::vector<VerificationRecord> run_poset_suite(const PosetSuiteOptions& options) {
    require(options.max_p >= 1 && options.max_p <= kDefaultMaxP,
            "max-p must lie in 1.." + std::to_string(kDefaultMaxP));
    std::vector<VerificationRecord> out;
    for (int p = 1; p <= options.max_p; ++p)
        for (Regime regime : {Regime::ThreeOrMore, Regime::TwoMatrices}) {
            const Poset poset = Poset::build(p, regime);
            if (p <= 5) out.push_back(check_gradedness(poset));
            if (p <= 6) out.push_back(check_criterion_equivalence(poset));
            if (p <= 6) out.push_back(check_count_formulas(poset));
            if (p <= 5) out.push_back(check_order_axioms(poset));
            if (p <= 4) out.push_back(check_compatibility(poset));
            else if (p <= 6) out.push_back(check_compatibility(poset, 4000, 1));
            if (p >= 2 && p <= 6) {
                if (regime == Regime::TwoMatrices) {
                    out.push_back(check_report(poset, 2));
                } else {
                    out.push_back(check_report(poset, 3));
                    out.push_back(check_report(poset, 4));
                }
            }
        }
    for (const auto& f : builtin_fixtures())
        if (f.p <= options.max_p) out.push_back(check_fixture(f));
    for (const auto& f : options.extra_fixtures) out.push_back(check_fixture(f));
    return out;
}

// ---------------------------------------------------------------------------

VerificationRecord check_random_simple(int n, int p, int trials, std::uint64_t seed, double tol) {
    auto r = make_record("random_simple", {{"n", n}, {"p", p}, {"tol", tol}}, seed, trials, trials / 100);
    for (int t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, 1, t);
        if (!is_simple(random_tuple(n, p, rng), tol)) ++r.failures;
    }
    return r;
}

VerificationRecord check_conjugation_invariance(int n, int p, int trials, std::uint64_t seed, double tol) {
    auto r = make_record("conjugation_invariance", {{"n", n}, {"p", p}, {"tol", tol}}, seed, trials);
    for (int t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, 2, t);
        // Odd trials use a reducible tuple so both verdicts are exercised.
        MatrixTuple a = random_tuple(n, p, rng);
        if (t % 2 == 1 && p >= 2) {
            const auto top = random_tuple(n, 1, rng), bottom = random_tuple(n, p - 1, rng);
            a = assemble(Composition::make({1, p - 1}), n,
                         {{to_vector(top.matrices()), random_blocks(n, 1, p - 1, rng)},
                          {{}, to_vector(bottom.matrices())}})
                    .tuple();
        }
        const Matrix g = random_matrix(p, p, rng);
        if (is_simple(a, tol) != is_simple(a.conjugated(g), tol)) ++r.failures;
    }
    return r;
}

VerificationRecord check_schur(int max_n, int max_p, int trials, std::uint64_t seed, double tol) {
    auto r = make_record("schur_hom_dims", {{"max_n", max_n}, {"max_p", max_p}, {"tol", tol}}, seed, trials);
    for (int t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, 3, t);
        const int n = uniform(rng, 2, std::max(2, max_n));
        const int p1 = uniform(rng, 1, max_p), p2 = uniform(rng, 1, max_p);
        const auto b = random_simple(n, p1, rng, tol);
        const auto bp = random_simple(n, p2, rng, tol);
        if (d_matrix(b, b, tol).hom_dim != 1 || d_matrix(b, bp, tol).hom_dim != 0) ++r.failures;
    }
    return r;
}

VerificationRecord check_rank_nullity(int max_n, int max_p, int trials, std::uint64_t seed, double tol) {
    auto r = make_record("rank_nullity", {{"max_n", max_n}, {"max_p", max_p}, {"tol", tol}}, seed, trials);
    for (int t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, 4, t);
        const int n = uniform(rng, 1, max_n);
        const int p1 = uniform(rng, 1, max_p), p2 = uniform(rng, 1, max_p);
        const auto b = random_tuple(n, p1, rng);
        // Every third trial compares a tuple with itself to get a nonzero kernel.
        const auto bp = (t % 3 == 0 && p1 == p2) ? b : random_tuple(n, p2, rng);
        const auto d = d_matrix(b, bp, tol);
        const int cells = b.p() * bp.p();
        if (d.ext_dim + d.rank != n * cells || d.ext_dim - d.hom_dim != (n - 1) * cells) ++r.failures;
    }
    return r;
}

VerificationRecord check_rank_condition_vacuous(int trials, std::uint64_t seed, double tol) {
    auto r = make_record("rank_condition_vacuous", {{"n", 2}, {"p1", 1}, {"p2", 1}, {"tol", tol}}, seed, trials);
    for (int t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, 5, t);
        const auto b11 = random_tuple(2, 1, rng), b22 = random_tuple(2, 1, rng);
        const auto c = random_tuple(2, 1, rng), cp = random_tuple(2, 1, rng);
        if (!rank_condition(b11, b22, c.matrices(), cp.matrices(), tol)) ++r.failures;
    }
    return r;
}

VerificationRecord check_rank_condition_generic(int trials, std::uint64_t seed, double tol) {
    auto r = make_record("rank_condition_generic", {{"n", 3}, {"p1", 1}, {"p2", 1}, {"tol", tol}}, seed, trials,
                         trials / 100);
    for (int t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, 6, t);
        const auto b11 = random_tuple(3, 1, rng), b22 = random_tuple(3, 1, rng);
        const auto c = random_tuple(3, 1, rng), cp = random_tuple(3, 1, rng);
        if (rank_condition(b11, b22, c.matrices(), cp.matrices(), tol)) ++r.failures;
    }
    return r;
}

namespace {

// Blocks with w C + C' = X B22 - B11 X for random X and w.
std::vector<Matrix> dependent_partner(const MatrixTuple& b11, const MatrixTuple& b22, std::span<const Matrix> c,
                                      std::mt19937_64& rng) {
    const Matrix x = random_matrix(b11.p(), b22.p(), rng);
    const auto w = random_scalar(rng);
    std::vector<Matrix> cp;
    for (int i = 0; i < b11.n(); ++i) cp.push_back(x * b22[i] - b11[i] * x - w * c[static_cast<std::size_t>(i)]);
    return cp;
}

}  // namespace

VerificationRecord check_rank_condition_dependent(int n, int max_p, int trials, std::uint64_t seed, double tol) {
    auto r = make_record("rank_condition_dependent", {{"n", n}, {"max_p", max_p}, {"tol", tol}}, seed, trials);
    for (int t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, 7, t);
        const int p1 = uniform(rng, 1, max_p), p2 = uniform(rng, 1, max_p);
        const auto b11 = random_tuple(n, p1, rng), b22 = random_tuple(n, p2, rng);
        const auto c = random_blocks(n, p1, p2, rng);
        const auto cp = dependent_partner(b11, b22, c, rng);
        if (!rank_condition(b11, b22, c, cp, tol)) ++r.failures;
    }
    return r;
}

VerificationRecord check_rank_condition_symmetry(int n, int max_p, int trials, std::uint64_t seed, double tol) {
    auto r = make_record("rank_condition_symmetry", {{"n", n}, {"max_p", max_p}, {"tol", tol}}, seed, trials);
    for (int t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, 8, t);
        const int p1 = uniform(rng, 1, max_p), p2 = uniform(rng, 1, max_p);
        const auto b11 = random_tuple(n, p1, rng), b22 = random_tuple(n, p2, rng);
        const auto c = random_blocks(n, p1, p2, rng);
        const auto cp = (t % 2 == 0) ? dependent_partner(b11, b22, c, rng) : random_blocks(n, p1, p2, rng);
        const auto alpha = 1e3 * random_scalar(rng), beta = 1e-3 * random_scalar(rng);
        std::vector<Matrix> c_scaled, cp_scaled;
        for (const auto& m : c) c_scaled.push_back(alpha * m);
        for (const auto& m : cp) cp_scaled.push_back(beta * m);
        const bool base = rank_condition(b11, b22, c, cp, tol);
        if (rank_condition(b11, b22, cp, c, tol) != base ||
            rank_condition(b11, b22, c_scaled, cp_scaled, tol) != base)
            ++r.failures;
    }
    return r;
}

VerificationRecord check_trace_pairs(int n, int max_p, int cases, int max_word_len, std::uint64_t seed,
                                     double tol) {
    auto r = make_record("trace_pairs",
                         {{"n", n}, {"max_p", max_p}, {"max_word_len", max_word_len}, {"tol", tol}}, seed, cases);
    for (int t = 0; t < cases; ++t) {
        auto rng = trial_rng(seed, 9, t);
        const auto [pi, sigma] = random_shape(max_p, rng);
        const auto [a, ap] = construct_pair(pi, sigma, n, trial_seed(rng), false, tol);
        const double scaled = trace_discrepancy(a.tuple(), ap.tuple(), max_word_len) /
                              trace_scale(a.tuple(), ap.tuple(), max_word_len);
        r.max_residual = std::max(r.max_residual, scaled);
        if (!(scaled < tol)) ++r.failures;
    }
    return r;
}

VerificationRecord check_trace_independent(int n, int p, int trials, int max_word_len, std::uint64_t seed) {
    auto r = make_record("trace_independent", {{"n", n}, {"p", p}, {"max_word_len", max_word_len}}, seed, trials,
                         trials / 100);
    r.max_residual = 0;
    for (int t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, 10, t);
        const auto a = random_tuple(n, p, rng), b = random_tuple(n, p, rng);
        if (!(trace_discrepancy(a, b, max_word_len) > 0.1)) ++r.failures;
    }
    return r;
}

VerificationRecord check_degeneration(int n, int max_p, int cases, std::uint64_t seed, double tol) {
    auto r = make_record("degeneration", {{"n", n}, {"max_p", max_p}, {"tol", tol}}, seed, cases);
    const std::vector<double> ts{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    for (int t = 0; t < cases; ++t) {
        auto rng = trial_rng(seed, 11, t);
        const auto pi = Composition::make({uniform(rng, 1, max_p), uniform(rng, 1, max_p)});
        const auto [a, ap] = construct_pair(pi, Permutation::make({2, 1}), n, trial_seed(rng), false, tol);
        const auto res = degeneration_check(a, ap, ts, tol);
        double lo = INFINITY, hi = 0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            lo = std::min(lo, res[i] / ts[i]);
            hi = std::max(hi, res[i] / ts[i]);
        }
        const double spread = lo > 0 ? hi / lo : INFINITY;
        r.max_residual = std::max(r.max_residual, spread);
        if (!(spread <= 10.0)) ++r.failures;
    }
    return r;
}

VerificationRecord check_generic_constructions(int n, int max_p, int cases, std::uint64_t seed, double tol) {
    auto r = make_record("generic_constructions", {{"n", n}, {"max_p", max_p}, {"tol", tol}}, seed, cases);
    for (int t = 0; t < cases; ++t) {
        auto rng = trial_rng(seed, 12, t);
        const auto [pi, sigma] = random_shape(max_p, rng);
        try {
            const auto a = construct_max_general(pi, n, trial_seed(rng), tol);
            const auto [b, bp] = construct_pair(pi, sigma, n, trial_seed(rng), true, tol);
            if (!is_maximally_general(a, tol) || !is_supermaximally_general(b, bp, sigma, tol)) ++r.failures;
        } catch (const ResamplingError&) {
            ++r.failures;
        }
    }
    return r;
}

std::vector<VerificationRecord> run_numeric_suite(const NumericOptions& o) {
    require(o.n >= 2, "n must be at least 2");
    require(o.p >= 1, "p must be positive");
    require(o.trials >= 1, "trials must be positive");
    require(o.tol > 0 && o.tol < 1, "tol must lie in (0, 1)");
    require(o.max_word_len >= 1, "max-word-len must be positive");
    const int cases = std::max(1, o.trials / 2);
    return {
        check_random_simple(o.n, o.p, o.trials, o.seed, o.tol),
        check_conjugation_invariance(o.n, o.p, o.trials, o.seed, o.tol),
        check_schur(o.n, o.p, o.trials, o.seed, o.tol),
        check_rank_nullity(o.n, o.p, o.trials, o.seed, o.tol),
        check_rank_condition_vacuous(o.trials, o.seed, o.tol),
        check_rank_condition_generic(o.trials, o.seed, o.tol),
        check_rank_condition_dependent(o.n, o.p, o.trials, o.seed, o.tol),
        check_rank_condition_symmetry(o.n, o.p, o.trials, o.seed, o.tol),
        check_trace_pairs(o.n, o.p, cases, o.max_word_len, o.seed, o.tol),
        check_trace_independent(o.n, o.p, o.trials, o.max_word_len, o.seed),
        check_degeneration(o.n, o.p, std::max(1, o.trials / 5), o.seed, o.tol),
        check_generic_constructions(o.n, o.p, std::max(1, o.trials / 10), o.seed, o.tol),
    };
}

}  // namespace sepvar
