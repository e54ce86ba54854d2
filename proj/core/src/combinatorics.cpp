#include "sepvar/combinatorics.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sepvar/error.hpp"

namespace sepvar {

namespace {

__extension__ typedef __int128 Wide;

Wide checked_mul(Wide a, Wide b) {
    Wide r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("count overflows 128-bit arithmetic");
    return r;
}

Wide checked_add(Wide a, Wide b) {
    Wide r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("count overflows 128-bit arithmetic");
    return r;
}

Count narrow(Wide v) {
    if (v < 0 || v > static_cast<Wide>(std::numeric_limits<Count>::max()))
        throw std::overflow_error("count does not fit in 64 bits");
    return static_cast<Count>(v);
}

Wide wide_binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    Wide r = 1;
    for (int i = 0; i < k; ++i) r = checked_mul(r, n - i) / (i + 1);
    return r;
}

Wide wide_factorial(int n) {
    Wide r = 1;
    for (int i = 2; i <= n; ++i) r = checked_mul(r, i);
    return r;
}

void require(bool ok, const char* msg) {
    if (!ok) throw ParameterError(msg);
}

}  // namespace

// ---------------------------------------------------------------------------
// Composition

Composition Composition::make(std::vector<int> parts) {
    require(!parts.empty(), "composition needs at least one part");
    int total = 0;
    for (int v : parts) {
        require(v >= 1, "composition parts must be positive");
        total += v;
    }
    return Composition(std::move(parts), total);
}

Composition Composition::whole(int p) {
    require(p >= 1, "p must be positive");
    return Composition({p}, p);
}

Composition Composition::ones(int p) {
    require(p >= 1, "p must be positive");
    return Composition(std::vector<int>(static_cast<std::size_t>(p), 1), p);
}

std::vector<int> Composition::boundaries() const {
    std::vector<int> out(parts_.size());
    std::partial_sum(parts_.begin(), parts_.end(), out.begin());
    return out;
}

int Composition::offset(int i) const {
    require(i >= 1 && i <= rank(), "block index out of range");
    return std::accumulate(parts_.begin(), parts_.begin() + (i - 1), 0);
}

std::string Composition::label() const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += "·";
        s += std::to_string(parts_[i]);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Permutation

Permutation Permutation::make(std::vector<int> images) {
    const int k = static_cast<int>(images.size());
    require(k >= 1, "permutation must be nonempty");
    std::vector<bool> seen(static_cast<std::size_t>(k) + 1, false);
    for (int v : images) {
        require(v >= 1 && v <= k && !seen[static_cast<std::size_t>(v)], "not a permutation of 1..k");
        seen[static_cast<std::size_t>(v)] = true;
    }
    return Permutation(std::move(images));
}

Permutation Permutation::identity(int k) {
    require(k >= 1, "permutation size must be positive");
    std::vector<int> v(static_cast<std::size_t>(k));
    std::iota(v.begin(), v.end(), 1);
    return Permutation(std::move(v));
}

Permutation Permutation::from_cycles(int k, const std::vector<std::vector<int>>& cycles) {
    auto images = identity(k).images_;
    std::vector<bool> used(static_cast<std::size_t>(k) + 1, false);
    for (const auto& cycle : cycles) {
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            const int from = cycle[i];
            require(from >= 1 && from <= k && !used[static_cast<std::size_t>(from)], "bad cycle entry");
            used[static_cast<std::size_t>(from)] = true;
            images[static_cast<std::size_t>(from - 1)] = cycle[(i + 1) % cycle.size()];
        }
    }
    return make(std::move(images));
}

bool Permutation::is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != static_cast<int>(i) + 1) return false;
    return true;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[static_cast<std::size_t>(images_[i] - 1)] = static_cast<int>(i) + 1;
    return Permutation(std::move(inv));
}

std::string Permutation::one_line() const {
    std::string s = "[";
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(images_[i]);
    }
    return s + "]";
}

std::string Permutation::cycles() const {
    if (is_identity()) return "id";
    std::string s;
    std::vector<bool> seen(images_.size() + 1, false);
    for (int start = 1; start <= size(); ++start) {
        if (seen[static_cast<std::size_t>(start)] || (*this)(start) == start) continue;
        s += "(";
        for (int j = start; !seen[static_cast<std::size_t>(j)]; j = (*this)(j)) {
            seen[static_cast<std::size_t>(j)] = true;
            s += std::to_string(j);
        }
        s += ")";
    }
    return s;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<Composition> enumerate_compositions(int p, int k) {
    require(p >= 1 && k >= 1 && k <= p, "need 1 <= k <= p");
    std::vector<Composition> out;
    std::vector<int> parts(static_cast<std::size_t>(k));
    // Depth-first in increasing part order gives lexicographic output.
    auto fill = [&](auto&& self, int idx, int remaining) -> void {
        const int slots_left = k - idx - 1;
        if (slots_left == 0) {
            parts[static_cast<std::size_t>(idx)] = remaining;
            out.push_back(Composition::make(parts));
            return;
        }
        for (int v = 1; v <= remaining - slots_left; ++v) {
            parts[static_cast<std::size_t>(idx)] = v;
            self(self, idx + 1, remaining - v);
        }
    };
    fill(fill, 0, p);
    return out;
}

std::vector<Permutation> enumerate_permutations(int k) {
    require(k >= 1, "permutation size must be positive");
    std::vector<Permutation> out;
    auto v = Permutation::identity(k);
    std::vector<int> images(v.images().begin(), v.images().end());
    do {
        out.push_back(Permutation::make(images));
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
}

Composition merge_blocks(const Composition& pi, int l) {
    require(l >= 1 && l < pi.rank(), "merge position out of range");
    std::vector<int> parts(pi.parts().begin(), pi.parts().end());
    const auto at = static_cast<std::size_t>(l - 1);
    parts[at] += parts[at + 1];
    parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(at) + 1);
    return Composition::make(std::move(parts));
}

bool refines(const Composition& pi, const Composition& pihat) {
    require(pi.total() == pihat.total(), "compositions of different totals");
    const auto fine = pi.boundaries();
    for (int b : pihat.boundaries())
        if (!std::binary_search(fine.begin(), fine.end(), b)) return false;
    return true;
}

std::vector<int> group_sizes(const Composition& pi, const Composition& pihat) {
    require(refines(pi, pihat), "pi does not refine pihat");
    std::vector<int> sizes;
    const auto fine = pi.boundaries();
    std::size_t j = 0;
    for (int b : pihat.boundaries()) {
        int count = 0;
        while (fine[j] != b) {
            ++j;
            ++count;
        }
        ++j;
        sizes.push_back(count + 1);
    }
    return sizes;
}

Composition apply_sigma(const Permutation& sigma, const Composition& pi) {
    require(sigma.size() == pi.rank(), "permutation size differs from composition rank");
    std::vector<int> parts;
    parts.reserve(static_cast<std::size_t>(pi.rank()));
    for (int i = 1; i <= pi.rank(); ++i) parts.push_back(pi.part(sigma(i)));
    return Composition::make(std::move(parts));
}

std::vector<int> descending_positions(const Permutation& sigma) {
    std::vector<int> out;
    for (int l = 1; l < sigma.size(); ++l)
        if (sigma(l) == sigma(l + 1) + 1) out.push_back(l);
    return out;
}

std::vector<int> ascending_unit_positions(const Permutation& sigma, const Composition& pi) {
    require(sigma.size() == pi.rank(), "permutation size differs from composition rank");
    std::vector<int> out;
    for (int l = 1; l < sigma.size(); ++l)
        if (sigma(l) + 1 == sigma(l + 1) && pi.part(l) == 1 && pi.part(l + 1) == 1) out.push_back(l);
    return out;
}

// ---------------------------------------------------------------------------
// Counting

Count binomial(int n, int k) { return narrow(wide_binomial(n, k)); }

Count factorial(int n) {
    require(n >= 0, "factorial of a negative number");
    return narrow(wide_factorial(n));
}

Count t_count(int k) {
    require(k >= 1, "k must be positive");
    Wide prev2 = 1, prev1 = 1;  // |T_1|, |T_2|
    if (k <= 2) return 1;
    for (int j = 3; j <= k; ++j) {
        const Wide next = checked_add(checked_mul(j - 1, prev1), checked_mul(j - 2, prev2));
        prev2 = prev1;
        prev1 = next;
    }
    return narrow(prev1);
}

Count t_count_closed_form(int k) {
    require(k >= 1, "k must be positive");
    Wide sum = 0;
    for (int q = 0; q <= k - 1; ++q) {
        const Wide term = checked_mul(wide_binomial(k - 1, q), wide_factorial(k - q));
        sum = checked_add(sum, (q % 2 == 0) ? term : -term);
    }
    return narrow(sum);
}

Count brute_force_t_count(int k) {
    require(k >= 1 && k <= kMaxBruteForceT, "brute-force T_k limited to 1 <= k <= 9");
    std::vector<int> v(static_cast<std::size_t>(k));
    std::iota(v.begin(), v.end(), 1);
    Count n = 0;
    do {
        bool reversal = false;
        for (std::size_t l = 0; l + 1 < v.size() && !reversal; ++l) reversal = v[l] == v[l + 1] + 1;
        n += reversal ? 0 : 1;
    } while (std::next_permutation(v.begin(), v.end()));
    return n;
}

Count hertzsprung(int p) {
    require(p >= 1, "p must be positive");
    Wide sum = 0;
    for (int k = 0; k <= p - 1; ++k) {
        Wide inner = 0;
        for (int i = 0; i <= k; ++i)
            inner = checked_add(inner, checked_mul(wide_binomial(p - k, i), wide_binomial(p - 1 - i, k - i)));
        const Wide term = checked_mul(wide_factorial(p - k), inner);
        sum = checked_add(sum, (k % 2 == 0) ? term : -term);
    }
    return narrow(sum);
}

Count brute_force_hertzsprung(int p) {
    require(p >= 1 && p <= kMaxBruteForceHertzsprung, "brute-force Hertzsprung limited to 1 <= p <= 10");
    std::vector<int> v(static_cast<std::size_t>(p));
    std::iota(v.begin(), v.end(), 1);
    Count n = 0;
    do {
        bool adjacent = false;
        for (std::size_t l = 0; l + 1 < v.size() && !adjacent; ++l) adjacent = std::abs(v[l] - v[l + 1]) == 1;
        n += adjacent ? 0 : 1;
    } while (std::next_permutation(v.begin(), v.end()));
    return n;
}

// ---------------------------------------------------------------------------
// Block placement

Permutation standardize(std::span<const int> values) {
    std::vector<int> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "values must be distinct");
    std::vector<int> out;
    out.reserve(values.size());
    for (int v : values)
        out.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()) + 1);
    return Permutation::make(std::move(out));
}

Permutation star_compose(std::span<const int> group_sizes, const Permutation& sigma_hat,
                         std::span<const Permutation> taus) {
    const int groups = static_cast<int>(group_sizes.size());
    require(groups == sigma_hat.size() && groups == static_cast<int>(taus.size()),
            "group sizes, sigma_hat and taus must have the same length");
    for (int i = 0; i < groups; ++i)
        require(group_sizes[static_cast<std::size_t>(i)] >= 1 &&
                    taus[static_cast<std::size_t>(i)].size() == group_sizes[static_cast<std::size_t>(i)],
                "tau size differs from its group size");

    // value_base[r] = number of values below the r-th range (ranges ordered by sigma_hat rank)
    std::vector<int> size_of_range(static_cast<std::size_t>(groups));
    for (int i = 1; i <= groups; ++i)
        size_of_range[static_cast<std::size_t>(sigma_hat(i) - 1)] = group_sizes[static_cast<std::size_t>(i - 1)];
    std::vector<int> value_base(static_cast<std::size_t>(groups), 0);
    for (std::size_t r = 1; r < value_base.size(); ++r) value_base[r] = value_base[r - 1] + size_of_range[r - 1];

    std::vector<int> images;
    for (int i = 1; i <= groups; ++i) {
        const auto& tau = taus[static_cast<std::size_t>(i - 1)];
        const int base = value_base[static_cast<std::size_t>(sigma_hat(i) - 1)];
        for (int j = 1; j <= tau.size(); ++j) images.push_back(base + tau(j));
    }
    return Permutation::make(std::move(images));
}

}  // namespace sepvar
