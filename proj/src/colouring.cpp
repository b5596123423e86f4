#include "pgd/colouring.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "pgd/linalg.hpp"

namespace pgd {

namespace {

// Per-class state for the GF(2) fast path: reduced basis rows packed into
// words, with a companion combination mask over member positions so that
// fundamental circuits fall out of the reduction.
struct Gf2Class {
    std::vector<std::uint32_t> members;           // point indices
    std::vector<std::uint64_t> rows, combos;      // parallel arrays

    void rebuild(const Geometry& geo) {
        rows.clear();
        combos.clear();
        for (std::size_t t = 0; t < members.size(); ++t) {
            std::uint64_t v = geo.mask(members[t]);
            std::uint64_t c = std::uint64_t{1} << t;
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (v & (rows[i] & (~rows[i] + 1))) {
                    v ^= rows[i];
                    c ^= combos[i];
                }
            rows.push_back(v);  // members stay independent, v != 0
            combos.push_back(c);
        }
    }

    bool independent_with(std::uint64_t v) const {
        for (std::uint64_t r : rows)
            if (v & (r & (~r + 1))) v ^= r;
        return v != 0;
    }

    // circuit member positions of v (v must be in the span)
    std::uint64_t circuit_combo(std::uint64_t v) const {
        std::uint64_t c = 0;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (v & (rows[i] & (~rows[i] + 1))) {
                v ^= rows[i];
                c ^= combos[i];
            }
        return v == 0 ? c : 0;
    }

    void push(const Geometry& geo, std::uint32_t pt) {
        members.push_back(pt);
        std::uint64_t v = geo.mask(pt);
        std::uint64_t c = std::uint64_t{1} << (members.size() - 1);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (v & (rows[i] & (~rows[i] + 1))) {
                v ^= rows[i];
                c ^= combos[i];
            }
        rows.push_back(v);
        combos.push_back(c);
    }

    void remove(const Geometry& geo, std::uint32_t pt) {
        members.erase(std::find(members.begin(), members.end(), pt));
        rebuild(geo);
    }
};

// Generic-field counterpart; combination vectors carry field coefficients
// over member positions.
struct GenClass {
    std::vector<std::uint32_t> members;
    std::vector<std::vector<std::uint16_t>> rows;    // length n each
    std::vector<std::vector<std::uint16_t>> combos;  // length members.size() each
    std::vector<int> pivots;

    void reduce(const Geometry& geo, std::vector<std::uint16_t>& v,
                std::vector<std::uint16_t>& c) const {
        const Field& f = geo.field();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            int coef = v[pivots[i]];
            if (coef == 0) continue;
            for (int j = 0; j < geo.n(); ++j)
                v[j] = static_cast<std::uint16_t>(f.sub(v[j], f.mul(coef, rows[i][j])));
            for (std::size_t j = 0; j < combos[i].size(); ++j)
                c[j] = static_cast<std::uint16_t>(f.sub(c[j], f.mul(coef, combos[i][j])));
        }
    }

    void rebuild(const Geometry& geo) {
        rows.clear();
        combos.clear();
        pivots.clear();
        for (std::size_t t = 0; t < members.size(); ++t) append(geo, t);
    }

    void append(const Geometry& geo, std::size_t t) {
        std::vector<std::uint16_t> v = geo.point(members[t]).coords;
        std::vector<std::uint16_t> c(members.size(), 0);
        c[t] = 1;
        for (auto& cb : combos) cb.resize(members.size(), 0);
        reduce(geo, v, c);
        int piv = 0;
        while (v[piv] == 0) ++piv;
        // normalize the pivot to 1; reduce() relies on unit pivots
        const Field& f = geo.field();
        int scale = f.inv(v[piv]);
        for (auto& x : v) x = static_cast<std::uint16_t>(f.mul(scale, x));
        for (auto& x : c) x = static_cast<std::uint16_t>(f.mul(scale, x));
        rows.push_back(std::move(v));
        combos.push_back(std::move(c));
        pivots.push_back(piv);
    }

    bool independent_with(const Geometry& geo, const std::vector<std::uint16_t>& coords) const {
        std::vector<std::uint16_t> v = coords;
        std::vector<std::uint16_t> c(members.size(), 0);
        reduce(geo, v, c);
        for (int j = 0; j < geo.n(); ++j)
            if (v[j]) return true;
        return false;
    }

    // member positions with nonzero circuit coefficient; empty if independent
    std::vector<std::size_t> circuit_positions(const Geometry& geo,
                                               const std::vector<std::uint16_t>& coords) const {
        std::vector<std::uint16_t> v = coords;
        std::vector<std::uint16_t> c(members.size(), 0);
        reduce(geo, v, c);
        for (int j = 0; j < geo.n(); ++j)
            if (v[j]) return {};
        std::vector<std::size_t> out;
        for (std::size_t t = 0; t < c.size(); ++t)
            if (c[t]) out.push_back(t);
        return out;
    }

    void push(const Geometry& geo, std::uint32_t pt) {
        members.push_back(pt);
        append(geo, members.size() - 1);
    }

    void remove(const Geometry& geo, std::uint32_t pt) {
        members.erase(std::find(members.begin(), members.end(), pt));
        rebuild(geo);
    }
};

template <class Class>
struct Partitioner {
    const Geometry& geo;
    std::vector<Class> classes;
    std::unordered_map<std::uint32_t, int> class_of;

    explicit Partitioner(const Geometry& g, int k0) : geo(g), classes(k0) {}

    bool accepts(const Class& cl, std::uint32_t pt) const {
        if constexpr (std::is_same_v<Class, Gf2Class>)
            return cl.independent_with(geo.mask(pt));
        else
            return cl.independent_with(geo, geo.point(pt).coords);
    }

    std::vector<std::uint32_t> circuit(const Class& cl, std::uint32_t pt) const {
        std::vector<std::uint32_t> out;
        if constexpr (std::is_same_v<Class, Gf2Class>) {
            std::uint64_t combo = cl.circuit_combo(geo.mask(pt));
            for (std::size_t t = 0; t < cl.members.size(); ++t)
                if (combo & (std::uint64_t{1} << t)) out.push_back(cl.members[t]);
        } else {
            for (std::size_t t : cl.circuit_positions(geo, geo.point(pt).coords))
                out.push_back(cl.members[t]);
        }
        return out;
    }

    void place(int c, std::uint32_t pt) {
        classes[c].push(geo, pt);
        class_of[pt] = c;
    }

    bool insert_direct(std::uint32_t pt) {
        for (int c = 0; c < static_cast<int>(classes.size()); ++c)
            if (accepts(classes[c], pt)) {
                place(c, pt);
                return true;
            }
        return false;
    }

    // Breadth-first augmenting-path search from `start`.  Arcs y -> x exist
    // when x lies on the fundamental circuit of y in x's class; a node is
    // terminal when some class accepts it directly.  Shortest paths keep
    // all classes independent after the swap cascade.
    bool augment(std::uint32_t start) {
        std::unordered_map<std::uint32_t, std::uint32_t> parent;
        std::deque<std::uint32_t> queue{start};
        parent[start] = start;
        while (!queue.empty()) {
            std::uint32_t y = queue.front();
            queue.pop_front();
            for (int c = 0; c < static_cast<int>(classes.size()); ++c) {
                if (accepts(classes[c], y)) {
                    apply_path(y, c, parent);
                    return true;
                }
                for (std::uint32_t x : circuit(classes[c], y)) {
                    if (parent.count(x)) continue;
                    parent[x] = y;
                    queue.push_back(x);
                }
            }
        }
        return false;
    }

    void apply_path(std::uint32_t terminal, int target,
                    const std::unordered_map<std::uint32_t, std::uint32_t>& parent) {
        // walk back to the start, shifting each node into its child's slot
        std::uint32_t y = terminal;
        int dest = target;
        while (true) {
            std::uint32_t p = parent.at(y);
            if (p == y) {  // start node: it has no current class
                classes[dest].push(geo, y);
                class_of[y] = dest;
                break;
            }
            int home = class_of.at(y);
            classes[home].remove(geo, y);
            classes[dest].push(geo, y);
            class_of[y] = dest;
            dest = home;
            y = p;
        }
    }
};

template <class Class>
ColouringResult run_partitioner(const SubMatroid& m, int k0) {
    Partitioner<Class> part(*m.geo, k0);
    for (std::uint32_t pt : m.ground) {
        if (part.insert_direct(pt)) continue;
        if (part.augment(pt)) continue;
        part.classes.emplace_back();
        part.place(static_cast<int>(part.classes.size()) - 1, pt);
    }
    ColouringResult res;
    res.k = static_cast<int>(part.classes.size());
    for (auto& cl : part.classes) res.witness.classes.push_back(cl.members);
    return res;
}

}  // namespace

ColouringResult colouring_number(const SubMatroid& m) {
    if (m.ground.empty()) return {};
    int r = rank(m);
    int k0 = static_cast<int>((m.ground.size() + r - 1) / r);
    ColouringResult res = m.geo->q() == 2 ? run_partitioner<Gf2Class>(m, k0)
                                          : run_partitioner<GenClass>(m, k0);
    if (!verify_colouring(m, res.witness)) throw std::logic_error("partitioner produced an invalid witness");
    return res;
}

bool verify_colouring(const SubMatroid& m, const Colouring& col) {
    std::vector<std::uint32_t> all;
    for (const auto& cl : col.classes) {
        if (rank_of(*m.geo, cl) != static_cast<int>(cl.size())) return false;
        all.insert(all.end(), cl.begin(), cl.end());
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) return false;
    return all == m.ground;
}

}  // namespace pgd
