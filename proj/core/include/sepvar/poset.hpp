#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sepvar/combinatorics.hpp"

namespace sepvar {

/// The poset depends on the number of matrices n only through this flag.
enum class Regime { TwoMatrices, ThreeOrMore };

/// n = 2 -> TwoMatrices, n >= 3 -> ThreeOrMore. n < 2 is rejected.
Regime regime_for(int n);
std::string to_string(Regime regime);

/// Index pair (pi, sigma) of one piece of the separating variety.
struct PosetElement {
    Composition pi;
    Permutation sigma;

    static PosetElement make(Composition pi, Permutation sigma);
    /// The graph-closure element ((p), id).
    static PosetElement top(int p);

    int rank() const noexcept { return pi.rank(); }
    /// "2·1|[2,1]".
    std::string label() const;

    friend auto operator<=>(const PosetElement& a, const PosetElement& b) {
        if (auto c = a.rank() <=> b.rank(); c != 0) return c;
        if (auto c = a.pi <=> b.pi; c != 0) return c;
        return a.sigma <=> b.sigma;
    }
    friend bool operator==(const PosetElement&, const PosetElement&) = default;
};

/**
 * Elements of rank one lower that cover e.
 *
 * Every position l with sigma(l) = sigma(l+1) + 1 merges blocks l and l+1;
 * the new permutation drops position l+1, writes the smaller merged value m
 * at position l and closes the gap above m+1. With two matrices, ascending
 * pairs sigma(l) + 1 = sigma(l+1) over two 1x1 blocks merge the same way
 * with m = sigma(l). Output is sorted and duplicate-free.
 */
std::vector<PosetElement> covering_parents(const PosetElement& e, Regime regime);

/// Maximality read off the permutation directly, without building the poset.
bool is_maximal_by_criterion(const PosetElement& e, Regime regime);

inline constexpr int kDefaultMaxP = 7;

/**
 * The full poset P_{p,n} for one regime.
 *
 * Elements are stored sorted by (rank, pi, sigma), so every covering parent
 * has a smaller index than its child. Reachability is kept as one bitset
 * per element over the indices of strictly lower rank. Immutable once built.
 */
class Poset {
public:
    using Index = std::size_t;

    /// Throws ParameterError if p < 1 or p > max_p.
    static Poset build(int p, Regime regime, int max_p = kDefaultMaxP);

    int p() const noexcept { return p_; }
    Regime regime() const noexcept { return regime_; }

    std::span<const PosetElement> elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    const PosetElement& at(Index i) const { return elements_.at(i); }

    std::optional<Index> index_of(const PosetElement& e) const;
    /// Same as index_of but throws ParameterError for foreign elements.
    Index require_index(const PosetElement& e) const;

    std::span<const Index> parents(Index i) const { return parents_.at(i); }
    std::span<const Index> children(Index i) const { return children_.at(i); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    /// Number of elements of each rank 1..p.
    std::vector<std::size_t> rank_sizes() const;

    /// a below-or-equal b: b reachable from a along covering edges.
    bool leq(Index a, Index b) const;
    bool leq(const PosetElement& a, const PosetElement& b) const;

    /**
     * (kappa, tau) below ((q), id) in P_{q} of the same regime, q = total of kappa <= p.
     * Smaller sizes are answered from tables built alongside this poset.
     */
    bool below_top(const PosetElement& e) const;

private:
    Poset() = default;
    static Poset build_bare(int p, Regime regime);

    int p_ = 0;
    Regime regime_ = Regime::ThreeOrMore;
    std::vector<PosetElement> elements_;
    std::vector<std::size_t> rank_start_;  // rank_start_[k] = first index of rank k (k = 1..p+1)
    std::vector<std::vector<Index>> parents_;
    std::vector<std::vector<Index>> children_;
    std::vector<std::vector<std::uint64_t>> ancestors_;
    std::size_t edge_count_ = 0;
    std::vector<std::vector<PosetElement>> below_top_by_size_;  // index q, for q < p; sorted
};

inline bool leq(const PosetElement& a, const PosetElement& b, const Poset& poset) { return poset.leq(a, b); }

/**
 * Structural test for a below-or-equal b: pi refines pihat, and sigma is
 * the block placement of some within-group permutations tau_i under
 * sigma_hat, with every (kappa_i, tau_i) below the top of its own poset.
 * Requires rank(a) >= rank(b).
 */
bool compatibility_check(const PosetElement& a, const PosetElement& b, const Poset& poset);

/// Elements without a covering parent, in storage order.
std::vector<PosetElement> maximal_elements(const Poset& poset);

/// Graphviz DOT text; parent -> child edges, deterministic node and edge order.
std::string hasse_dot(const Poset& poset, std::optional<int> n_label = std::nullopt);

}  // namespace sepvar
