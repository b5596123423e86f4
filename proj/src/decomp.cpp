#include "pgd/decomp.hpp"

#include <algorithm>
#include <stdexcept>

#include "pgd/guards.hpp"
#include "pgd/linalg.hpp"

namespace pgd {

namespace {

struct TransversalSearcher {
    const Geometry& geo;
    const std::vector<std::vector<std::uint32_t>>& classes;
    int b;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool exhausted = false;
    std::vector<std::uint32_t> chosen;
    std::vector<std::uint32_t> witness;

    TransversalSearcher(const Geometry& g, const std::vector<std::vector<std::uint32_t>>& cl,
                        int b_, std::uint64_t bud)
        : geo(g), classes(cl), b(b_), budget(bud) {}

    template <class Basis>
    bool dfs(std::size_t i, Basis basis) {
        if (++nodes > budget) {
            exhausted = true;
            return false;
        }
        int s = static_cast<int>(chosen.size());
        int r = basis.rank();
        if (s > b * r) {
            witness = chosen;
            return true;
        }
        if (i == classes.size()) return false;
        // even if the rank never grows again, the remaining classes cannot
        // push |X| past b*r(X)
        int rem = static_cast<int>(classes.size() - i);
        if (s + rem <= b * r) return false;

        for (std::uint32_t pt : classes[i]) {
            Basis next = basis;
            if constexpr (std::is_same_v<Basis, MaskBasis>)
                next.add(geo.mask(pt));
            else
                next.add(geo.point(pt).coords);
            chosen.push_back(pt);
            if (dfs(i + 1, std::move(next))) return true;
            chosen.pop_back();
            if (exhausted) return false;
        }
        return dfs(i + 1, std::move(basis));  // skip class i
    }

    TransversalSearchResult run() {
        TransversalSearchResult res;
        bool found;
        if (geo.q() == 2)
            found = dfs(0, MaskBasis{});
        else
            found = dfs(0, RowBasis{geo.field(), geo.n()});
        res.nodes = nodes;
        if (found) {
            res.status = SearchStatus::Found;
            res.witness = std::move(witness);
        } else if (exhausted) {
            res.status = SearchStatus::BudgetExhausted;
        } else {
            res.status = SearchStatus::NoneExists;
        }
        return res;
    }
};

void check_classes(const SubMatroid& m, const std::vector<std::vector<std::uint32_t>>& classes,
                   bool require_partition) {
    std::vector<std::uint32_t> all;
    for (const auto& cl : classes) {
        for (std::uint32_t pt : cl) {
            if (pt >= m.geo->num_points() || !m.contains(pt))
                throw std::invalid_argument("class element outside the ground set");
            all.push_back(pt);
        }
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw std::invalid_argument("classes are not disjoint");
    if (require_partition && all != m.ground)
        throw std::invalid_argument("classes do not cover the ground set");
}

}  // namespace

TransversalSearchResult find_violating_partial_transversal(
    const SubMatroid& m, const std::vector<std::vector<std::uint32_t>>& classes, int b,
    std::uint64_t budget) {
    if (b < 1) throw std::invalid_argument("b must be >= 1");
    check_classes(m, classes, /*require_partition=*/false);
    TransversalSearcher s(*m.geo, classes, b, budget);
    return s.run();
}

Verdict verify_decomposition(const SubMatroid& m,
                             const std::vector<std::vector<std::uint32_t>>& classes, int b,
                             double c, std::uint64_t budget) {
    check_classes(m, classes, /*require_partition=*/true);
    for (const auto& cl : classes)
        if (cl.empty()) throw std::invalid_argument("decomposition classes must be nonempty");

    Verdict v;
    v.k = m.ground.empty() ? 0 : colouring_number(m).k;
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (static_cast<double>(classes[i].size()) > c * v.k) {
            v.kind = Verdict::Kind::SizeViolation;
            v.class_index = static_cast<int>(i);
            return v;
        }
    TransversalSearchResult t = find_violating_partial_transversal(m, classes, b, budget);
    v.nodes = t.nodes;
    switch (t.status) {
        case SearchStatus::Found:
            v.kind = Verdict::Kind::TransversalViolation;
            v.witness = std::move(t.witness);
            break;
        case SearchStatus::BudgetExhausted:
            v.kind = Verdict::Kind::BudgetExhausted;
            break;
        case SearchStatus::NoneExists:
            v.kind = Verdict::Kind::Valid;
            break;
    }
    return v;
}

bool naive_transversal_oracle(const SubMatroid& m,
                              const std::vector<std::vector<std::uint32_t>>& classes, int b) {
    if (b < 1) throw std::invalid_argument("b must be >= 1");
    check_classes(m, classes, /*require_partition=*/false);
    std::uint64_t product = 1;
    for (const auto& cl : classes) {
        if (cl.empty()) return true;  // no full transversal exists
        product *= cl.size();
        if (product > max_naive_product())
            throw std::invalid_argument("transversal product above guard (PGD_MAX_NAIVE_PRODUCT)");
    }
    if (classes.empty()) return true;

    std::vector<std::size_t> pick(classes.size(), 0);
    std::vector<std::uint32_t> transversal(classes.size());
    while (true) {
        for (std::size_t i = 0; i < classes.size(); ++i) transversal[i] = classes[i][pick[i]];
        SubMatroid sub = restrict(*m.geo, transversal);
        if (colouring_number(sub).k > b) return false;
        std::size_t i = 0;
        while (i < classes.size() && pick[i] + 1 == classes[i].size()) pick[i++] = 0;
        if (i == classes.size()) break;
        ++pick[i];
    }
    return true;
}

DecompSearchResult search_decomposition(const SubMatroid& m, int b, double c,
                                        std::uint64_t budget) {
    if (m.ground.size() > max_search_ground())
        throw std::invalid_argument("ground set above search guard (PGD_MAX_SEARCH_GROUND)");
    DecompSearchResult res;
    if (m.ground.empty()) {
        res.status = SearchStatus::Found;
        return res;
    }
    res.k = colouring_number(m).k;
    const double cap = c * res.k;

    std::vector<std::vector<std::uint32_t>> classes;
    std::uint64_t nodes = 0;
    bool exhausted = false;

    // assigns element index t and recurses; pruning via the violation search
    // is sound because classes only grow
    auto assign = [&](auto&& self, std::size_t t) -> bool {
        if (++nodes > budget) {
            exhausted = true;
            return false;
        }
        if (t == m.ground.size()) {
            Verdict v = verify_decomposition(m, classes, b, c, budget);
            return v.kind == Verdict::Kind::Valid;
        }
        std::uint32_t pt = m.ground[t];
        std::size_t options = std::min(classes.size() + 1, m.ground.size());
        for (std::size_t ci = 0; ci < options; ++ci) {
            bool fresh = ci == classes.size();
            if (fresh)
                classes.push_back({pt});
            else {
                if (static_cast<double>(classes[ci].size()) + 1 > cap) continue;
                classes[ci].push_back(pt);
            }
            TransversalSearchResult probe =
                find_violating_partial_transversal(m, classes, b, budget - std::min(budget, nodes));
            nodes += probe.nodes;
            bool viable = probe.status == SearchStatus::NoneExists;
            if (probe.status == SearchStatus::BudgetExhausted) exhausted = true;
            if (viable && self(self, t + 1)) return true;
            if (fresh)
                classes.pop_back();
            else
                classes[ci].pop_back();
            if (exhausted || nodes > budget) {
                exhausted = true;
                return false;
            }
        }
        return false;
    };

    bool found = assign(assign, 0);
    res.nodes = nodes;
    if (found) {
        res.status = SearchStatus::Found;
        res.classes = classes;
    } else {
        res.status = exhausted ? SearchStatus::BudgetExhausted : SearchStatus::NoneExists;
    }
    return res;
}

nlohmann::json decomposition_to_json(const SubMatroid& m,
                                     const std::vector<std::vector<std::uint32_t>>& classes,
                                     int b, double c) {
    nlohmann::json j;
    j["n"] = m.geo->n();
    j["q"] = m.geo->q();
    j["ground"] = m.ground;
    j["classes"] = classes;
    j["b"] = b;
    j["c"] = c;
    return j;
}

DecompFile decomposition_from_json(const nlohmann::json& j) {
    DecompFile f;
    f.n = j.at("n").get<int>();
    f.q = j.at("q").get<int>();
    f.b = j.at("b").get<int>();
    f.c = j.at("c").get<double>();
    f.ground = j.at("ground").get<std::vector<std::uint32_t>>();
    f.classes = j.at("classes").get<std::vector<std::vector<std::uint32_t>>>();
    return f;
}

}  // namespace pgd
