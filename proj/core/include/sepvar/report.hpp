#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sepvar/combinatorics.hpp"
#include "sepvar/poset.hpp"

namespace sepvar {

/// One irreducible component: a maximal element with its dimension data.
struct Component {
    PosetElement element;
    std::int64_t dim = 0;
    int codim = 0;
};

/**
 * Dimension data for the separating variety of n-tuples of p x p matrices.
 *
 * dim(V) = n p^2, dim(S) = (n+1) p^2 - 1, a rank-k component has dimension
 * (n+1) p^2 - k. separating_lower_bound = 2 dim(V) - sdim. The two
 * semi-invariant fields are only defined for n >= 3.
 */
struct ComponentReport {
    int p = 0;
    int n = 0;
    std::vector<Component> components;  // sorted by (codim, pi, sigma)
    std::int64_t total_dim = 0;
    std::int64_t sdim = 0;
    std::int64_t separating_lower_bound = 0;
    std::int64_t invariant_ring_dim = 0;
    std::optional<std::int64_t> semi_invariant_dim;
    std::optional<std::int64_t> semi_invariant_lower_bound;
    std::map<int, Count> counts_by_codim;
};

inline constexpr int kMaxReportN = 1'000'000;

/// p >= 2 and 2 <= n <= kMaxReportN; builds the poset internally.
ComponentReport component_report(int p, int n);
/// Reuses a built poset; its regime must match n.
ComponentReport component_report(const Poset& poset, int n);

/// Fixed key order; components sorted by (codim, pi lex, sigma lex).
nlohmann::ordered_json to_json(const ComponentReport& report);

/// codim / count / dimension table followed by the bound fields.
std::string render_table(const ComponentReport& report);
/// key=value lines for the bound fields only.
std::string render_bounds(const ComponentReport& report);

}  // namespace sepvar
