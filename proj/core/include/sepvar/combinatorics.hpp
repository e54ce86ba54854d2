#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sepvar {

/**
 * Ordered partition of p into k nonzero parts.
 *
 * Parts are the block sizes p_1..p_k of a block-upper-triangular shape;
 * the rank is the number of parts. Instances are always valid: the only
 * way to build one is through make(), which checks positivity.
 */
class Composition {
public:
    static Composition make(std::vector<int> parts);
    /// The single-block composition (p).
    static Composition whole(int p);
    /// The all-ones composition (1,...,1) of p.
    static Composition ones(int p);

    std::span<const int> parts() const noexcept { return parts_; }
    int part(int i) const { return parts_.at(static_cast<std::size_t>(i - 1)); }  // 1-based
    int rank() const noexcept { return static_cast<int>(parts_.size()); }
    int total() const noexcept { return total_; }

    /// Partial sums p_1, p_1+p_2, ..., p (the block boundaries).
    std::vector<int> boundaries() const;
    /// Offset of block i (1-based) inside the p x p matrix.
    int offset(int i) const;

    /// "2·1·1" style label (UTF-8 middle dot).
    std::string label() const;

    friend auto operator<=>(const Composition& a, const Composition& b) { return a.parts_ <=> b.parts_; }
    friend bool operator==(const Composition& a, const Composition& b) = default;

private:
    explicit Composition(std::vector<int> parts, int total) : parts_(std::move(parts)), total_(total) {}

    std::vector<int> parts_;
    int total_ = 0;
};

/// Permutation of {1..k} in one-line notation [sigma(1), ..., sigma(k)].
class Permutation {
public:
    static Permutation make(std::vector<int> images);
    static Permutation identity(int k);
    /// Cycle notation input, e.g. {{1,4,3}} -> [4,2,1,3]. Cycles must be disjoint.
    static Permutation from_cycles(int k, const std::vector<std::vector<int>>& cycles);

    int size() const noexcept { return static_cast<int>(images_.size()); }
    int operator()(int position) const { return images_.at(static_cast<std::size_t>(position - 1)); }
    std::span<const int> images() const noexcept { return images_; }

    bool is_identity() const noexcept;
    Permutation inverse() const;

    /// "[2,1,3]".
    std::string one_line() const;
    /// "(12)(34)" with fixed points dropped, "id" for the identity. Display only.
    std::string cycles() const;

    friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images_ <=> b.images_; }
    friend bool operator==(const Permutation& a, const Permutation& b) = default;

private:
    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {}

    std::vector<int> images_;
};

/// All compositions of p with exactly k parts, lexicographic by parts.
std::vector<Composition> enumerate_compositions(int p, int k);

/// All permutations of S_k, lexicographic in one-line notation.
std::vector<Permutation> enumerate_permutations(int k);

/// Merge blocks l and l+1 (1-based).
Composition merge_blocks(const Composition& pi, int l);

/// True iff pihat is obtained from pi by merging adjacent blocks zero or more times.
bool refines(const Composition& pi, const Composition& pihat);

/// Number of blocks of pi merged into each block of pihat. Requires refines(pi, pihat).
std::vector<int> group_sizes(const Composition& pi, const Composition& pihat);

/// (p_{sigma(1)}, ..., p_{sigma(k)}).
Composition apply_sigma(const Permutation& sigma, const Composition& pi);

/// Positions l with sigma(l) = sigma(l+1) + 1. Nonempty iff sigma is a partial reversal.
std::vector<int> descending_positions(const Permutation& sigma);

/// Positions l with sigma(l) + 1 = sigma(l+1) and p_l = p_{l+1} = 1.
std::vector<int> ascending_unit_positions(const Permutation& sigma, const Composition& pi);

inline bool is_partial_reversal(const Permutation& sigma) { return !descending_positions(sigma).empty(); }

/// Exact integer counts. Computed in checked 128-bit arithmetic;
/// std::overflow_error when the result does not fit in 64 bits.
using Count = std::uint64_t;

Count binomial(int n, int k);
Count factorial(int n);

/// Number of permutations of S_k that are not partial reversals, by recurrence.
Count t_count(int k);
/// Same quantity from the alternating sum over q = 0..k-1.
Count t_count_closed_form(int k);
/// Exhaustive count; k <= 9.
Count brute_force_t_count(int k);

/// Permutations of S_p with no adjacent pair differing by one in either direction.
Count hertzsprung(int p);
/// Exhaustive count; p <= 10.
Count brute_force_hertzsprung(int p);

inline constexpr int kMaxBruteForceT = 9;
inline constexpr int kMaxBruteForceHertzsprung = 10;

/**
 * Block-placement composition of within-group permutations.
 *
 * Positions are cut into consecutive groups of the given sizes. Group i is
 * sent onto a consecutive range of values; the ranges are stacked in the
 * order sigma_hat prescribes (group i gets the sigma_hat(i)-th range from
 * the bottom), and inside its range group i follows taus[i].
 */
Permutation star_compose(std::span<const int> group_sizes, const Permutation& sigma_hat,
                         std::span<const Permutation> taus);

/// Order-preserving relabelling of distinct integers onto 1..m.
Permutation standardize(std::span<const int> values);

}  // namespace sepvar
