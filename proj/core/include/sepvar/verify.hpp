#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sepvar/matrixlab.hpp"
#include "sepvar/poset.hpp"

namespace sepvar {

/// Outcome of one property check; serialised with a fixed key order.
struct VerificationRecord {
    std::string check;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::uint64_t seed = 0;
    int trials = 0;
    int failures = 0;
    double max_residual = 0.0;
    int allowed_failures = 0;

    bool passed() const noexcept { return failures <= allowed_failures; }
};

/// max_residual is rounded to 12 significant digits so reruns print identically.
nlohmann::ordered_json to_json(const VerificationRecord& record);
bool all_passed(const std::vector<VerificationRecord>& records);

// --- figure fixtures ------------------------------------------------------

/// Expected shape of one drawn poset. Optional parts are checked only when present.
struct FigureFixture {
    std::string name;
    int p = 0;
    Regime regime = Regime::ThreeOrMore;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::optional<std::vector<PosetElement>> maximal;                             // exact set
    std::optional<std::vector<std::size_t>> maximal_by_rank;                      // ranks 1..p
    std::optional<std::vector<std::pair<PosetElement, PosetElement>>> edge_list;  // parent, child
};

/// P_2, P_3 and P_4 in both regimes.
std::vector<FigureFixture> builtin_fixtures();

/**
 * Reads {"name", "p", "n", "nodes", "edges", "maximal"?, "maximal_by_rank"?, "edge_list"?}
 * where elements are {"pi": [...], "sigma": [...]} and edges are [parent, child] pairs.
 * Throws ParameterError on malformed input.
 */
FigureFixture fixture_from_json(const nlohmann::json& j);

VerificationRecord check_fixture(const FigureFixture& fixture);

// --- poset properties ------------------------------------------------------

/// Covers drop rank by one; every strict relation starts with a cover that stays below.
VerificationRecord check_gradedness(const Poset& poset);
/// No covering parent <=> the permutation-pattern criterion.
VerificationRecord check_criterion_equivalence(const Poset& poset);
/// Reflexivity, antisymmetry and transitivity of the closure.
VerificationRecord check_order_axioms(const Poset& poset);
/// compatibility_check agrees with leq; exhaustive unless sample_pairs is set.
VerificationRecord check_compatibility(const Poset& poset, std::optional<int> sample_pairs = std::nullopt,
                                       std::uint64_t seed = 1);
/// Per-rank maximal counts against binomial * T_k (n >= 3) or the Hertzsprung number at rank p (n = 2).
VerificationRecord check_count_formulas(const Poset& poset);
/// Report invariants for one (p, n): unique codimension-0 component and the sdim rule.
VerificationRecord check_report(const Poset& poset, int n);

struct PosetSuiteOptions {
    int max_p = 5;
    std::vector<FigureFixture> extra_fixtures;
};

std::vector<VerificationRecord> run_poset_suite(const PosetSuiteOptions& options);

// --- numeric certificates --------------------------------------------------

struct NumericOptions {
    int p = 3;            // largest block or tuple size
    int n = 3;            // number of matrices
    int trials = 100;
    std::uint64_t seed = 1;
    double tol = kDefaultRankTol;
    int max_word_len = 6;
};

/// Random (n, p) tuples are simple; one failure per hundred allowed.
VerificationRecord check_random_simple(int n, int p, int trials, std::uint64_t seed, double tol);
/// is_simple verdict survives conjugation by a random invertible matrix.
VerificationRecord check_conjugation_invariance(int n, int p, int trials, std::uint64_t seed, double tol);
/// Schur: hom_dim(B, B) = 1 for simple B, 0 for a pair of distinct simples.
VerificationRecord check_schur(int max_n, int max_p, int trials, std::uint64_t seed, double tol);
/// ext_dim + rank = n p1 p2 and ext_dim - hom_dim = (n - 1) p1 p2.
VerificationRecord check_rank_nullity(int max_n, int max_p, int trials, std::uint64_t seed, double tol);
/// Scalar data with two matrices always satisfies the rank condition.
VerificationRecord check_rank_condition_vacuous(int trials, std::uint64_t seed, double tol);
/// Random scalar data with three matrices fails the rank condition.
VerificationRecord check_rank_condition_generic(int trials, std::uint64_t seed, double tol);
/// C' = X B22 - B11 X - w C always satisfies the rank condition.
VerificationRecord check_rank_condition_dependent(int n, int max_p, int trials, std::uint64_t seed, double tol);
/// The verdict ignores the order of (C, C') and nonzero rescaling.
VerificationRecord check_rank_condition_symmetry(int n, int max_p, int trials, std::uint64_t seed, double tol);
/// construct_pair outputs agree on every necklace trace up to tol * scale.
VerificationRecord check_trace_pairs(int n, int max_p, int cases, int max_word_len, std::uint64_t seed,
                                     double tol);
/// Independent random tuples differ on some trace word by more than 0.1.
VerificationRecord check_trace_independent(int n, int p, int trials, int max_word_len, std::uint64_t seed);
/// Residual over t stays within a factor 10 across t = 1e-1 .. 1e-6.
VerificationRecord check_degeneration(int n, int max_p, int cases, std::uint64_t seed, double tol);
/// Supermaximal pairs pass is_supermaximally_general; maximally general tuples pass their predicate.
VerificationRecord check_generic_constructions(int n, int max_p, int cases, std::uint64_t seed, double tol);

std::vector<VerificationRecord> run_numeric_suite(const NumericOptions& options);

}  // namespace sepvar
