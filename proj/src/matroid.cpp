#include "pgd/matroid.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pgd/guards.hpp"
#include "pgd/linalg.hpp"

namespace pgd {

SubMatroid restrict(const Geometry& geo, std::span<const std::uint32_t> pts) {
    SubMatroid m;
    m.geo = &geo;
    m.ground.assign(pts.begin(), pts.end());
    std::sort(m.ground.begin(), m.ground.end());
    m.ground.erase(std::unique(m.ground.begin(), m.ground.end()), m.ground.end());
    if (!m.ground.empty() && m.ground.back() >= geo.num_points())
        throw std::out_of_range("point index outside the geometry");
    m.bitmap.assign((geo.num_points() + 63) / 64, 0);
    for (std::uint32_t i : m.ground) m.bitmap[i >> 6] |= std::uint64_t{1} << (i & 63);
    return m;
}

int rank(const SubMatroid& m, std::span<const std::uint32_t> subset) {
    for (std::uint32_t i : subset)
        if (i >= m.geo->num_points() || !m.contains(i))
            throw std::invalid_argument("subset not contained in the ground set");
    return rank_of(*m.geo, subset);
}

int rank(const SubMatroid& m) { return rank_of(*m.geo, m.ground); }

bool is_independent(const SubMatroid& m, std::span<const std::uint32_t> subset) {
    return rank(m, subset) == static_cast<int>(subset.size());
}

int edmonds_bruteforce(const SubMatroid& m) {
    if (m.ground.empty()) throw std::invalid_argument("Edmonds maximum of an empty ground set");
    const Geometry& geo = *m.geo;
    BigInt total = 0;
    for (int d = 1; d <= geo.n(); ++d) total += qbinom(geo.n(), d, geo.q());
    if (total > BigInt(max_enum_flats()))
        throw std::invalid_argument("instance above the flat enumeration guard");

    int best = 0;
    std::vector<std::uint32_t> trace;
    for (int d = 1; d <= geo.n(); ++d) {
        for_each_flat(geo.n(), geo.q(), d, [&](const Flat& f) {
            trace.clear();
            for (std::uint32_t i : flat_points(geo, f))
                if (m.contains(i)) trace.push_back(i);
            if (trace.empty()) return;
            int r = rank_of(geo, trace);
            int v = static_cast<int>((trace.size() + r - 1) / r);
            best = std::max(best, v);
        });
    }
    return best;
}

void write_matroid(std::ostream& os, const SubMatroid& m) {
    os << m.geo->n() << ' ' << m.geo->q() << '\n';
    for (std::uint32_t i : m.ground) os << i << '\n';
}

MatroidFile read_matroid(std::istream& is) {
    MatroidFile f;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("matroid file: missing header");
    std::istringstream hdr(line);
    if (!(hdr >> f.n >> f.q)) throw std::runtime_error("matroid file: bad \"n q\" header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        f.points.push_back(static_cast<std::uint32_t>(std::stoul(line)));
    }
    return f;
}

}  // namespace pgd
