#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "pgd/projgeom.hpp"

namespace pgd {

/// A restriction PG(n-1,q)|S: ground set as a sorted index list plus a
/// membership bitmap over the ambient point table.  Independence is linear
/// independence of the points' coordinate vectors.  Immutable; rank queries
/// are pure.
struct SubMatroid {
    const Geometry* geo = nullptr;
    std::vector<std::uint32_t> ground;  // sorted, unique
    std::vector<std::uint64_t> bitmap;  // one bit per ambient point

    bool contains(std::uint32_t i) const { return (bitmap[i >> 6] >> (i & 63)) & 1; }
    std::size_t size() const { return ground.size(); }
};

SubMatroid restrict(const Geometry& geo, std::span<const std::uint32_t> pts);

/// Rank of a subset of the ground set.
int rank(const SubMatroid& m, std::span<const std::uint32_t> subset);
int rank(const SubMatroid& m);
bool is_independent(const SubMatroid& m, std::span<const std::uint32_t> subset);

/// The Edmonds maximum max_{r(X)>0} ceil(|X|/r(X)), searched over traces of
/// ambient flats of every rank.  Guarded: the total ambient flat count must
/// stay below the enumeration cap.
int edmonds_bruteforce(const SubMatroid& m);

/// Plain-text interchange: "n q" header, then one point index per line.
void write_matroid(std::ostream& os, const SubMatroid& m);

struct MatroidFile {
    int n = 0;
    int q = 0;
    std::vector<std::uint32_t> points;
};
MatroidFile read_matroid(std::istream& is);

}  // namespace pgd
