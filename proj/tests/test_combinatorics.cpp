#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sepvar/combinatorics.hpp"
#include "sepvar/error.hpp"

using namespace sepvar;

namespace {

// Values frozen from an exhaustive count over S_k, independent of the library.
const std::vector<Count> kTValues{1, 1, 3, 11, 53, 309, 2119, 16687, 148329};
const std::vector<Count> kHertzsprungValues{1, 0, 0, 2, 14, 90, 646, 5242, 47622};

std::vector<int> perm_images(const Permutation& s) { return {s.images().begin(), s.images().end()}; }

}  // namespace

TEST_CASE("compositions are validated and labelled") {
    const auto c = Composition::make({2, 1, 1});
    CHECK(c.rank() == 3);
    CHECK(c.total() == 4);
    CHECK(c.part(1) == 2);
    CHECK(c.offset(1) == 0);
    CHECK(c.offset(3) == 3);
    CHECK(c.boundaries() == std::vector<int>{2, 3, 4});
    CHECK(c.label() == "2·1·1");
    CHECK(Composition::whole(3) == Composition::make({3}));
    CHECK(Composition::ones(3) == Composition::make({1, 1, 1}));
    CHECK_THROWS_AS(Composition::make({}), ParameterError);
    CHECK_THROWS_AS(Composition::make({2, 0}), ParameterError);
}

TEST_CASE("composition enumeration is lexicographic and complete") {
    const auto c = enumerate_compositions(4, 2);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == Composition::make({1, 3}));
    CHECK(c[1] == Composition::make({2, 2}));
    CHECK(c[2] == Composition::make({3, 1}));
    for (int p = 1; p <= 8; ++p)
        for (int k = 1; k <= p; ++k) {
            const auto all = enumerate_compositions(p, k);
            CHECK(all.size() == binomial(p - 1, k - 1));
            CHECK(std::is_sorted(all.begin(), all.end()));
        }
}

TEST_CASE("permutations: construction, cycles and inverse") {
    const auto s = Permutation::from_cycles(4, {{1, 4, 3}});
    CHECK(perm_images(s) == std::vector<int>{4, 2, 1, 3});
    CHECK(s.one_line() == "[4,2,1,3]");
    CHECK(s.cycles() == "(143)");
    CHECK(Permutation::identity(3).cycles() == "id");
    CHECK(Permutation::from_cycles(4, {{1, 2}, {3, 4}}).cycles() == "(12)(34)");
    CHECK(s.inverse().inverse() == s);
    CHECK(perm_images(s.inverse()) == std::vector<int>{3, 2, 4, 1});
    CHECK_THROWS_AS(Permutation::make({1, 1}), ParameterError);
    CHECK_THROWS_AS(Permutation::make({0, 1}), ParameterError);
    CHECK_THROWS_AS(Permutation::from_cycles(3, {{1, 2}, {2, 3}}), ParameterError);
}

TEST_CASE("permutation enumeration matches std::next_permutation") {
    for (int k = 1; k <= 6; ++k) {
        const auto all = enumerate_permutations(k);
        std::vector<int> v(static_cast<std::size_t>(k));
        std::iota(v.begin(), v.end(), 1);
        std::size_t i = 0;
        do {
            REQUIRE(i < all.size());
            CHECK(perm_images(all[i++]) == v);
        } while (std::next_permutation(v.begin(), v.end()));
        CHECK(i == all.size());
    }
}

TEST_CASE("merging, refinement and group sizes") {
    const auto pi = Composition::make({1, 2, 1, 1});
    CHECK(merge_blocks(pi, 2) == Composition::make({1, 3, 1}));
    CHECK_THROWS_AS(merge_blocks(pi, 4), ParameterError);
    CHECK(refines(pi, Composition::make({3, 2})));
    CHECK(refines(pi, pi));
    CHECK_FALSE(refines(pi, Composition::make({2, 3})));
    CHECK_FALSE(refines(Composition::make({3, 2}), pi));
    CHECK(group_sizes(pi, Composition::make({3, 2})) == std::vector<int>{2, 2});
    CHECK(group_sizes(pi, Composition::make({5})) == std::vector<int>{4});
}

TEST_CASE("apply_sigma permutes parts by position") {
    const auto pi = Composition::make({3, 1, 2});
    CHECK(apply_sigma(Permutation::make({2, 3, 1}), pi) == Composition::make({1, 2, 3}));
    CHECK(apply_sigma(Permutation::identity(3), pi) == pi);
}

TEST_CASE("descending and ascending unit positions") {
    const auto s = Permutation::make({3, 2, 1, 4});
    CHECK(descending_positions(s) == std::vector<int>{1, 2});
    CHECK(is_partial_reversal(s));
    CHECK(is_partial_reversal(Permutation::make({1, 3, 2})));
    CHECK_FALSE(is_partial_reversal(Permutation::make({2, 3, 1})));
    const auto up = Permutation::make({1, 2, 4, 3});
    CHECK(ascending_unit_positions(up, Composition::ones(4)) == std::vector<int>{1});
    CHECK(ascending_unit_positions(up, Composition::make({2, 1, 1, 1})).empty());
}

TEST_CASE("T_k: recurrence, closed form and brute force agree with frozen values") {
    for (int k = 1; k <= 9; ++k) {
        const Count want = kTValues[static_cast<std::size_t>(k - 1)];
        CHECK(t_count(k) == want);
        CHECK(t_count_closed_form(k) == want);
        CHECK(brute_force_t_count(k) == want);
    }
    for (int k = 10; k <= 20; ++k) CHECK(t_count(k) == t_count_closed_form(k));
    CHECK_THROWS_AS(brute_force_t_count(kMaxBruteForceT + 1), ParameterError);
    CHECK_THROWS_AS(t_count(0), ParameterError);
}

TEST_CASE("Hertzsprung numbers agree with frozen values and brute force") {
    for (int p = 1; p <= 9; ++p) {
        const Count want = kHertzsprungValues[static_cast<std::size_t>(p - 1)];
        CHECK(hertzsprung(p) == want);
        CHECK(brute_force_hertzsprung(p) == want);
    }
    CHECK(hertzsprung(10) == brute_force_hertzsprung(10));
}

TEST_CASE("counts report overflow instead of wrapping") {
    CHECK(factorial(20) == 2432902008176640000ULL);
    CHECK_THROWS_AS(factorial(21), std::overflow_error);
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(5, 7) == 0);
}

TEST_CASE("standardize and star_compose") {
    const std::vector<int> vals{7, 2, 5};
    CHECK(perm_images(standardize(vals)) == std::vector<int>{3, 1, 2});

    // Two groups of sizes 2 and 1; group 1 takes the upper range, group 2 the lower one.
    const std::vector<int> sizes{2, 1};
    const std::vector<Permutation> taus{Permutation::make({2, 1}), Permutation::identity(1)};
    CHECK(perm_images(star_compose(sizes, Permutation::make({2, 1}), taus)) == std::vector<int>{3, 2, 1});
    CHECK(perm_images(star_compose(sizes, Permutation::identity(2), taus)) == std::vector<int>{2, 1, 3});

    // Decomposing any permutation into its groups and recomposing is the identity map.
    for (const auto& s : enumerate_permutations(5)) {
        const std::vector<int> cut{2, 1, 2};
        std::vector<Permutation> parts;
        std::vector<int> mins;
        int start = 0;
        for (int size : cut) {
            const auto span = s.images().subspan(static_cast<std::size_t>(start), static_cast<std::size_t>(size));
            parts.push_back(standardize(span));
            mins.push_back(*std::min_element(span.begin(), span.end()));
            start += size;
        }
        const auto hat = standardize(mins);
        const auto back = star_compose(cut, hat, parts);
        // Only permutations whose groups occupy consecutive value ranges round-trip.
        bool consecutive = true;
        start = 0;
        for (int size : cut) {
            const auto span = s.images().subspan(static_cast<std::size_t>(start), static_cast<std::size_t>(size));
            const auto [lo, hi] = std::minmax_element(span.begin(), span.end());
            consecutive = consecutive && (*hi - *lo + 1 == size);
            start += size;
        }
        CHECK((back == s) == consecutive);
    }
}
