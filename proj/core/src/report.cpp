#include "sepvar/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "sepvar/error.hpp"

namespace sepvar {

namespace {

void check_range(int p, int n) {
    if (p < 2) throw ParameterError("component report needs p >= 2");
    if (n < 2) throw ParameterError("component report needs n >= 2");
    if (n > kMaxReportN) throw ParameterError("n too large");
}

std::string optional_text(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : "n/a"; }

}  // namespace

ComponentReport component_report(int p, int n) {
    check_range(p, n);
    return component_report(Poset::build(p, regime_for(n)), n);
}

ComponentReport component_report(const Poset& poset, int n) {
    check_range(poset.p(), n);
    if (regime_for(n) != poset.regime()) throw ParameterError("poset regime does not match n");

    const std::int64_t p = poset.p();
    const std::int64_t p2 = p * p;
    ComponentReport r;
    r.p = poset.p();
    r.n = n;
    const std::int64_t full = (n + 1) * p2;

    for (const auto& e : maximal_elements(poset)) {
        r.components.push_back(Component{e, full - e.rank(), e.rank() - 1});
        ++r.counts_by_codim[e.rank() - 1];
    }
    // Storage order is (rank, pi, sigma), which is already (codim, pi, sigma).
    if (!std::is_sorted(r.components.begin(), r.components.end(),
                        [](const Component& a, const Component& b) { return a.element < b.element; }))
        throw std::logic_error("components out of order");

    if (r.components.empty() || r.components.front().element != PosetElement::top(poset.p()))
        throw std::logic_error("graph closure missing from the maximal elements");
    if (poset.regime() == Regime::ThreeOrMore)
        for (int k = 1; k <= poset.p(); ++k) {
            const Count expected = binomial(poset.p() - 1, k - 1) * t_count(k);
            const auto it = r.counts_by_codim.find(k - 1);
            if ((it == r.counts_by_codim.end() ? 0 : it->second) != expected)
                throw std::logic_error("maximal element count disagrees with binomial * T_k");
        }

    r.total_dim = full - 1;
    r.sdim = r.components.front().dim;
    for (const auto& c : r.components) r.sdim = std::min(r.sdim, c.dim);
    r.separating_lower_bound = 2 * n * p2 - r.sdim;
    r.invariant_ring_dim = (n - 1) * p2 + 1;
    if (n >= 3) {
        r.semi_invariant_dim = (n - 2) * p2 + 2;
        r.semi_invariant_lower_bound = (n - 2) * p2 + p;
    }
    return r;
}

nlohmann::ordered_json to_json(const ComponentReport& r) {
    nlohmann::ordered_json j;
    j["p"] = r.p;
    j["n"] = r.n;
    j["total_dim"] = r.total_dim;
    j["sdim"] = r.sdim;
    j["separating_lower_bound"] = r.separating_lower_bound;
    j["invariant_ring_dim"] = r.invariant_ring_dim;
    j["semi_invariant_dim"] = r.semi_invariant_dim ? nlohmann::ordered_json(*r.semi_invariant_dim) : nlohmann::ordered_json(nullptr);
    j["semi_invariant_lower_bound"] =
        r.semi_invariant_lower_bound ? nlohmann::ordered_json(*r.semi_invariant_lower_bound) : nlohmann::ordered_json(nullptr);
    auto comps = nlohmann::ordered_json::array();
    for (const auto& c : r.components) {
        nlohmann::ordered_json item;
        item["pi"] = std::vector<int>(c.element.pi.parts().begin(), c.element.pi.parts().end());
        item["sigma"] = std::vector<int>(c.element.sigma.images().begin(), c.element.sigma.images().end());
        item["dim"] = c.dim;
        item["codim"] = c.codim;
        comps.push_back(std::move(item));
    }
    j["components"] = std::move(comps);
    auto counts = nlohmann::ordered_json::object();
    for (const auto& [codim, count] : r.counts_by_codim) counts[std::to_string(codim)] = count;
    j["counts_by_codim"] = std::move(counts);
    return j;
}

std::string render_bounds(const ComponentReport& r) {
    std::ostringstream os;
    os << "dim=" << r.total_dim << "\n"
       << "sdim=" << r.sdim << "\n"
       << "separating_lower_bound=" << r.separating_lower_bound << "\n"
       << "invariant_ring_dim=" << r.invariant_ring_dim << "\n"
       << "semi_invariant_dim=" << optional_text(r.semi_invariant_dim) << "\n"
       << "semi_invariant_lower_bound=" << optional_text(r.semi_invariant_lower_bound) << "\n";
    return os.str();
}

std::string render_table(const ComponentReport& r) {
    std::ostringstream os;
    os << "components of the separating variety, p=" << r.p << " n=" << r.n << " (dim " << r.total_dim << ")\n";
    os << "codim  count  dimension\n";
    for (const auto& [codim, count] : r.counts_by_codim) {
        std::string c = std::to_string(codim), k = std::to_string(count);
        os << c << std::string(7 - std::min<std::size_t>(6, c.size()), ' ') << k
           << std::string(7 - std::min<std::size_t>(6, k.size()), ' ')
           << (static_cast<std::int64_t>(r.n + 1) * r.p * r.p - (codim + 1)) << "\n";
    }
    os << "invariant ring dim=" << r.invariant_ring_dim << ", semi-invariant dim=" << optional_text(r.semi_invariant_dim)
       << ", semi-invariant lower bound=" << optional_text(r.semi_invariant_lower_bound) << "\n";
    os << "sdim=" << r.sdim << ", separating lower bound=" << r.separating_lower_bound << "\n";
    return os.str();
}

}  // namespace sepvar
