#include <doctest.h>

#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sepvar/error.hpp"
#include "sepvar/poset.hpp"
#include "sepvar/report.hpp"
#include "sepvar/verify.hpp"

using namespace sepvar;

namespace {

PosetElement E(std::vector<int> pi, std::vector<int> sigma) {
    return PosetElement::make(Composition::make(std::move(pi)), Permutation::make(std::move(sigma)));
}

// Upward closure computed by walking covering_parents, without the poset's bitsets.
std::set<PosetElement> ancestors_by_walk(const PosetElement& e, Regime regime) {
    std::set<PosetElement> seen{e};
    std::vector<PosetElement> stack{e};
    while (!stack.empty()) {
        const auto cur = stack.back();
        stack.pop_back();
        for (const auto& up : covering_parents(cur, regime))
            if (seen.insert(up).second) stack.push_back(up);
    }
    return seen;
}

std::size_t expected_size(int p) {
    std::size_t total = 0;
    for (int k = 1; k <= p; ++k) total += binomial(p - 1, k - 1) * factorial(k);
    return total;
}

}  // namespace

TEST_CASE("regime is derived from n") {
    CHECK(regime_for(2) == Regime::TwoMatrices);
    CHECK(regime_for(3) == Regime::ThreeOrMore);
    CHECK(regime_for(100) == Regime::ThreeOrMore);
    CHECK_THROWS_AS(regime_for(1), ParameterError);
}

TEST_CASE("covering parents follow the merge rule") {
    // [3,2,1] has descents at 1 and 2; both merges land on [2,1] over different shapes.
    const auto parents = covering_parents(E({1, 1, 1}, {3, 2, 1}), Regime::ThreeOrMore);
    CHECK(parents == std::vector{E({1, 2}, {2, 1}), E({2, 1}, {2, 1})});

    CHECK(covering_parents(E({1, 1}, {2, 1}), Regime::ThreeOrMore) == std::vector{E({2}, {1})});
    CHECK(covering_parents(E({1, 1}, {1, 2}), Regime::ThreeOrMore).empty());
    CHECK(covering_parents(E({1, 1}, {1, 2}), Regime::TwoMatrices) == std::vector{E({2}, {1})});
    // Ascending pairs only merge over two 1x1 blocks.
    CHECK(covering_parents(E({2, 1}, {1, 2}), Regime::TwoMatrices).empty());

    // Values above the merged pair shift down by one.
    CHECK(covering_parents(E({1, 1, 2, 1}, {4, 2, 1, 3}), Regime::ThreeOrMore) ==
          std::vector{E({1, 3, 1}, {3, 1, 2})});
}

TEST_CASE("poset sizes and edge counts") {
    for (int p = 1; p <= 6; ++p) {
        const auto a = Poset::build(p, Regime::ThreeOrMore);
        const auto b = Poset::build(p, Regime::TwoMatrices);
        CHECK(a.size() == expected_size(p));
        CHECK(b.size() == expected_size(p));
    }
    CHECK(Poset::build(2, Regime::ThreeOrMore).edge_count() == 1);
    CHECK(Poset::build(2, Regime::TwoMatrices).edge_count() == 2);
    CHECK(Poset::build(3, Regime::ThreeOrMore).edge_count() == 6);
    CHECK(Poset::build(3, Regime::TwoMatrices).edge_count() == 10);
    CHECK(Poset::build(4, Regime::ThreeOrMore).edge_count() == 33);
    CHECK(Poset::build(4, Regime::TwoMatrices).edge_count() == 55);
    CHECK(Poset::build(7, Regime::ThreeOrMore).size() == 11743);
}

TEST_CASE("size guard") {
    CHECK_THROWS_AS(Poset::build(8, Regime::ThreeOrMore), ParameterError);
    CHECK_THROWS_AS(Poset::build(0, Regime::ThreeOrMore), ParameterError);
    CHECK_NOTHROW(Poset::build(3, Regime::ThreeOrMore, 3));
    CHECK_THROWS_AS(Poset::build(4, Regime::ThreeOrMore, 3), ParameterError);
}

TEST_CASE("maximal elements for p = 3 match the listed decompositions") {
    const auto three = maximal_elements(Poset::build(3, Regime::ThreeOrMore));
    CHECK(std::set(three.begin(), three.end()) ==
          std::set{E({3}, {1}), E({2, 1}, {1, 2}), E({1, 2}, {1, 2}), E({1, 1, 1}, {1, 2, 3}),
                   E({1, 1, 1}, {2, 3, 1}), E({1, 1, 1}, {3, 1, 2})});
    const auto two = maximal_elements(Poset::build(3, Regime::TwoMatrices));
    CHECK(std::set(two.begin(), two.end()) == std::set{E({3}, {1}), E({2, 1}, {1, 2}), E({1, 2}, {1, 2})});
    CHECK(maximal_elements(Poset::build(2, Regime::TwoMatrices)) == std::vector{E({2}, {1})});
}

TEST_CASE("built-in figure fixtures pass") {
    for (const auto& f : builtin_fixtures()) {
        CAPTURE(f.name);
        const auto r = check_fixture(f);
        CHECK(r.failures == 0);
        CHECK(r.trials >= 3);
    }
}

TEST_CASE("a wrong fixture is reported") {
    auto f = builtin_fixtures().front();
    f.edges += 1;
    CHECK_FALSE(check_fixture(f).passed());
}

TEST_CASE("fixture JSON round trip") {
    const auto j = nlohmann::json::parse(R"({
        "name": "tiny", "p": 2, "n": 2, "nodes": 3, "edges": 2,
        "maximal": [{"pi": [2], "sigma": [1]}],
        "maximal_by_rank": [1, 0],
        "edge_list": [[{"pi": [2], "sigma": [1]}, {"pi": [1, 1], "sigma": [1, 2]}],
                      [{"pi": [2], "sigma": [1]}, {"pi": [1, 1], "sigma": [2, 1]}]]
    })");
    const auto f = fixture_from_json(j);
    CHECK(f.regime == Regime::TwoMatrices);
    CHECK(check_fixture(f).passed());
    CHECK_THROWS_AS(fixture_from_json(nlohmann::json::parse(R"({"p": 2})")), ParameterError);
    CHECK_THROWS_AS(fixture_from_json(nlohmann::json::parse(R"({"p": 2, "n": 1, "nodes": 3, "edges": 1})")),
                    ParameterError);
}

TEST_CASE("closure order matches an independent walk over covers") {
    for (int p = 1; p <= 4; ++p)
        for (Regime regime : {Regime::ThreeOrMore, Regime::TwoMatrices}) {
            const auto poset = Poset::build(p, regime);
            for (const auto& a : poset.elements()) {
                const auto up = ancestors_by_walk(a, regime);
                for (const auto& b : poset.elements()) CHECK(poset.leq(a, b) == (up.count(b) == 1));
            }
        }
}

TEST_CASE("compatibility check agrees with the closure for p <= 4") {
    for (int p = 1; p <= 4; ++p)
        for (Regime regime : {Regime::ThreeOrMore, Regime::TwoMatrices}) {
            const auto poset = Poset::build(p, regime);
            CHECK(check_compatibility(poset).failures == 0);
        }
    const auto poset = Poset::build(3, Regime::ThreeOrMore);
    CHECK(compatibility_check(E({1, 1, 1}, {3, 2, 1}), E({3}, {1}), poset));
    CHECK_FALSE(compatibility_check(E({1, 1, 1}, {1, 2, 3}), E({3}, {1}), poset));
    CHECK_THROWS_AS(compatibility_check(E({3}, {1}), E({1, 2}, {2, 1}), poset), ParameterError);
}

TEST_CASE("poset properties hold for p <= 5") {
    for (int p = 1; p <= 5; ++p)
        for (Regime regime : {Regime::ThreeOrMore, Regime::TwoMatrices}) {
            CAPTURE(p);
            const auto poset = Poset::build(p, regime);
            CHECK(check_gradedness(poset).passed());
            CHECK(check_criterion_equivalence(poset).passed());
            CHECK(check_order_axioms(poset).passed());
            CHECK(check_count_formulas(poset).passed());
        }
}

TEST_CASE("below_top answers for smaller sizes") {
    const auto poset = Poset::build(4, Regime::ThreeOrMore);
    CHECK(poset.below_top(E({1, 1}, {2, 1})));
    CHECK_FALSE(poset.below_top(E({1, 1}, {1, 2})));
    CHECK(poset.below_top(E({1}, {1})));
    CHECK(poset.below_top(E({1, 1, 1, 1}, {4, 3, 2, 1})));
}

TEST_CASE("DOT output") {
    const auto dot = hasse_dot(Poset::build(2, Regime::TwoMatrices), 2);
    CHECK(dot ==
          "digraph \"P_2_n2\" {\n"
          "  node [shape=box];\n"
          "  e0 [label=\"2|[1]\"];\n"
          "  e1 [label=\"1·1|[1,2]\"];\n"
          "  e2 [label=\"1·1|[2,1]\"];\n"
          "  e0 -> e1;\n"
          "  e0 -> e2;\n"
          "}\n");
    CHECK(hasse_dot(Poset::build(3, Regime::ThreeOrMore)).find("digraph \"P_3_n3plus\"") == 0);
}

TEST_CASE("component report for p = 4") {
    const auto three = component_report(4, 3);
    CHECK(three.counts_by_codim == std::map<int, Count>{{0, 1}, {1, 3}, {2, 9}, {3, 11}});
    CHECK(three.total_dim == 63);
    CHECK(three.sdim == 60);
    CHECK(three.semi_invariant_dim == 18);
    CHECK(three.semi_invariant_lower_bound == 20);

    const auto two = component_report(4, 2);
    std::map<std::int64_t, int> dims;
    for (const auto& c : two.components) ++dims[c.dim];
    CHECK(dims == std::map<std::int64_t, int>{{44, 2}, {45, 5}, {46, 3}, {47, 1}});
    CHECK(two.sdim == 44);
    CHECK(two.separating_lower_bound == 20);
    CHECK_FALSE(two.semi_invariant_dim.has_value());
    CHECK(render_table(two).ends_with("sdim=44, separating lower bound=20\n"));
}

TEST_CASE("component report edge cases") {
    const auto r = component_report(2, 2);
    CHECK(r.components.size() == 1);
    CHECK(r.sdim == 11);
    CHECK(component_report(3, 2).sdim == 25);
    CHECK_THROWS_AS(component_report(1, 3), ParameterError);
    CHECK_THROWS_AS(component_report(3, 1), ParameterError);
    const auto poset = Poset::build(3, Regime::TwoMatrices);
    CHECK_THROWS_AS(component_report(poset, 3), ParameterError);
}

TEST_CASE("report JSON has a fixed key order") {
    const auto j = to_json(component_report(3, 3));
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"p", "n", "total_dim", "sdim", "separating_lower_bound",
                                           "invariant_ring_dim", "semi_invariant_dim",
                                           "semi_invariant_lower_bound", "components", "counts_by_codim"});
    CHECK(j["components"][0]["pi"] == nlohmann::ordered_json::array({3}));
    CHECK(j["counts_by_codim"]["2"] == 3);
    CHECK(to_json(component_report(3, 2))["semi_invariant_dim"].is_null());
}

TEST_CASE("report invariants across sizes") {
    for (int p = 2; p <= 6; ++p) {
        CHECK(check_report(Poset::build(p, Regime::TwoMatrices), 2).passed());
        const auto poset = Poset::build(p, Regime::ThreeOrMore);
        for (int n : {3, 4, 7}) CHECK(check_report(poset, n).passed());
    }
}
