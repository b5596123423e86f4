#pragma once

#include <cstdint>
#include <vector>

#include "pgd/matroid.hpp"

namespace pgd {

/// A partition of the ground set into independent classes.
struct Colouring {
    std::vector<std::vector<std::uint32_t>> classes;

    int k() const { return static_cast<int>(classes.size()); }
};

struct ColouringResult {
    int k = 0;
    Colouring witness;
};

/// Exact colouring number with an explicit witness partition, by incremental
/// matroid partitioning: elements are inserted one at a time (ascending
/// point index) into k independent classes, using breadth-first search on
/// the exchange digraph when no class accepts an element directly.  A new
/// class is opened only when no augmenting path exists.  k starts at the
/// Edmonds lower bound ceil(|E|/r(E)).
ColouringResult colouring_number(const SubMatroid& m);

/// True iff the classes are pairwise disjoint, cover the ground set, and
/// each is independent in m.
bool verify_colouring(const SubMatroid& m, const Colouring& col);

}  // namespace pgd
