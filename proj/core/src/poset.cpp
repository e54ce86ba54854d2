#include "sepvar/poset.hpp"

#include <algorithm>
#include <bit>

#include "sepvar/error.hpp"

namespace sepvar {

Regime regime_for(int n) {
    if (n < 2) throw ParameterError("n must be at least 2");
    return n == 2 ? Regime::TwoMatrices : Regime::ThreeOrMore;
}

std::string to_string(Regime regime) { return regime == Regime::TwoMatrices ? "n=2" : "n>=3"; }

PosetElement PosetElement::make(Composition pi, Permutation sigma) {
    if (pi.rank() != sigma.size()) throw ParameterError("permutation size differs from composition rank");
    return PosetElement{std::move(pi), std::move(sigma)};
}

PosetElement PosetElement::top(int p) { return PosetElement{Composition::whole(p), Permutation::identity(1)}; }

std::string PosetElement::label() const { return pi.label() + "|" + sigma.one_line(); }

namespace {

PosetElement merge_at(const PosetElement& e, int l, int m) {
    std::vector<int> images;
    images.reserve(static_cast<std::size_t>(e.sigma.size() - 1));
    for (int j = 1; j <= e.sigma.size(); ++j) {
        if (j == l + 1) continue;
        int v = (j == l) ? m : e.sigma(j);
        if (v > m + 1) --v;
        images.push_back(v);
    }
    return PosetElement{merge_blocks(e.pi, l), Permutation::make(std::move(images))};
}

}  // namespace

std::vector<PosetElement> covering_parents(const PosetElement& e, Regime regime) {
    std::vector<PosetElement> out;
    for (int l : descending_positions(e.sigma)) out.push_back(merge_at(e, l, e.sigma(l + 1)));
    if (regime == Regime::TwoMatrices)
        for (int l : ascending_unit_positions(e.sigma, e.pi)) out.push_back(merge_at(e, l, e.sigma(l)));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_maximal_by_criterion(const PosetElement& e, Regime regime) {
    if (!descending_positions(e.sigma).empty()) return false;
    return regime == Regime::ThreeOrMore || ascending_unit_positions(e.sigma, e.pi).empty();
}

// ---------------------------------------------------------------------------

Poset Poset::build_bare(int p, Regime regime) {
    Poset poset;
    poset.p_ = p;
    poset.regime_ = regime;
    poset.rank_start_.assign(static_cast<std::size_t>(p) + 2, 0);
    for (int k = 1; k <= p; ++k) {
        poset.rank_start_[static_cast<std::size_t>(k)] = poset.elements_.size();
        const auto perms = enumerate_permutations(k);
        for (const auto& pi : enumerate_compositions(p, k))
            for (const auto& sigma : perms) poset.elements_.push_back(PosetElement{pi, sigma});
    }
    poset.rank_start_[static_cast<std::size_t>(p) + 1] = poset.elements_.size();

    const std::size_t count = poset.elements_.size();
    poset.parents_.resize(count);
    poset.children_.resize(count);
    poset.ancestors_.resize(count);
    for (Index i = 0; i < count; ++i) {
        for (const auto& parent : covering_parents(poset.elements_[i], regime)) {
            const Index j = *poset.index_of(parent);
            poset.parents_[i].push_back(j);
            poset.children_[j].push_back(i);
            ++poset.edge_count_;
        }
        // Parents precede i, so their ancestor sets are final already.
        const std::size_t bits = poset.rank_start_[static_cast<std::size_t>(poset.elements_[i].rank())];
        auto& anc = poset.ancestors_[i];
        anc.assign((bits + 63) / 64, 0);
        for (Index j : poset.parents_[i]) {
            anc[j / 64] |= std::uint64_t{1} << (j % 64);
            const auto& up = poset.ancestors_[j];
            for (std::size_t w = 0; w < up.size(); ++w) anc[w] |= up[w];
        }
    }
    for (auto& c : poset.children_) std::sort(c.begin(), c.end());
    return poset;
}

Poset Poset::build(int p, Regime regime, int max_p) {
    if (p < 1) throw ParameterError("p must be positive");
    if (p > max_p)
        throw ParameterError("p = " + std::to_string(p) + " exceeds the size guard " + std::to_string(max_p) +
                             " (element count grows factorially)");
    Poset poset = build_bare(p, regime);
    poset.below_top_by_size_.resize(static_cast<std::size_t>(p));
    for (int q = 1; q < p; ++q) {
        const Poset small = build_bare(q, regime);
        auto& list = poset.below_top_by_size_[static_cast<std::size_t>(q)];
        // ((q), id) is the only rank-1 element, index 0.
        for (Index i = 0; i < small.size(); ++i)
            if (small.leq(i, 0)) list.push_back(small.elements_[i]);
    }
    return poset;
}

std::optional<Poset::Index> Poset::index_of(const PosetElement& e) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), e);
    if (it == elements_.end() || *it != e) return std::nullopt;
    return static_cast<Index>(it - elements_.begin());
}

Poset::Index Poset::require_index(const PosetElement& e) const {
    if (auto i = index_of(e)) return *i;
    throw ParameterError("element " + e.label() + " is not in P_" + std::to_string(p_));
}

std::vector<std::size_t> Poset::rank_sizes() const {
    std::vector<std::size_t> out;
    for (int k = 1; k <= p_; ++k)
        out.push_back(rank_start_[static_cast<std::size_t>(k) + 1] - rank_start_[static_cast<std::size_t>(k)]);
    return out;
}

bool Poset::leq(Index a, Index b) const {
    if (a == b) return true;
    const auto& anc = ancestors_.at(a);
    if (b / 64 >= anc.size()) return false;
    return (anc[b / 64] >> (b % 64)) & 1U;
}

bool Poset::leq(const PosetElement& a, const PosetElement& b) const { return leq(require_index(a), require_index(b)); }

bool Poset::below_top(const PosetElement& e) const {
    const int q = e.pi.total();
    if (q == p_) return leq(require_index(e), 0);
    if (q < 1 || q > p_) throw ParameterError("element size outside 1..p");
    const auto& list = below_top_by_size_[static_cast<std::size_t>(q)];
    return std::binary_search(list.begin(), list.end(), e);
}

// ---------------------------------------------------------------------------

bool compatibility_check(const PosetElement& a, const PosetElement& b, const Poset& poset) {
    if (a.rank() < b.rank()) throw ParameterError("compatibility_check needs rank(a) >= rank(b)");
    if (a.pi.total() != b.pi.total()) throw ParameterError("elements of different size");
    if (!refines(a.pi, b.pi)) return false;

    const auto sizes = group_sizes(a.pi, b.pi);
    std::vector<Permutation> taus;
    std::vector<Composition> kappas;
    int start = 0;
    for (int size : sizes) {
        const auto span = a.sigma.images().subspan(static_cast<std::size_t>(start), static_cast<std::size_t>(size));
        taus.push_back(standardize(span));
        kappas.push_back(Composition::make(
            {a.pi.parts().begin() + start, a.pi.parts().begin() + start + size}));
        start += size;
    }
    // taus are the only candidates: sigma must be their placement under sigma_hat.
    if (star_compose(sizes, b.sigma, taus) != a.sigma) return false;
    for (std::size_t i = 0; i < sizes.size(); ++i)
        if (!poset.below_top(PosetElement{kappas[i], taus[i]})) return false;
    return true;
}

std::vector<PosetElement> maximal_elements(const Poset& poset) {
    std::vector<PosetElement> out;
    for (Poset::Index i = 0; i < poset.size(); ++i)
        if (poset.parents(i).empty()) out.push_back(poset.at(i));
    return out;
}

std::string hasse_dot(const Poset& poset, std::optional<int> n_label) {
    std::string name = "P_" + std::to_string(poset.p()) + "_";
    name += n_label ? "n" + std::to_string(*n_label) : (poset.regime() == Regime::TwoMatrices ? "n2" : "n3plus");
    std::string out = "digraph \"" + name + "\" {\n";
    out += "  node [shape=box];\n";
    for (Poset::Index i = 0; i < poset.size(); ++i)
        out += "  e" + std::to_string(i) + " [label=\"" + poset.at(i).label() + "\"];\n";
    for (Poset::Index i = 0; i < poset.size(); ++i)
        for (Poset::Index c : poset.children(i)) out += "  e" + std::to_string(i) + " -> e" + std::to_string(c) + ";\n";
    out += "}\n";
    return out;
}

}  // namespace sepvar
