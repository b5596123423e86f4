#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pgd/gf.hpp"

namespace pgd {

using BigInt = boost::multiprecision::cpp_int;

/// A canonical projective point of PG(n-1,q): a nonzero coordinate vector
/// whose first nonzero entry is 1, plus its position in the lexicographic
/// enumeration of all canonical points.
struct Point {
    std::vector<std::uint16_t> coords;
    std::uint32_t index = 0;
};

/// A rank-d flat, represented by its reduced row-echelon basis.  Two flats
/// are the same subspace iff their RREF matrices are identical.
struct Flat {
    int d = 0;
    std::vector<std::vector<std::uint16_t>> rows;

    bool operator==(const Flat&) const = default;
};

/// PG(n-1,q): the field, the full canonical point table, and an index for
/// point lookup.  Immutable after construction.
class Geometry {
public:
    Geometry(int n, Field field);

    int n() const { return n_; }
    int q() const { return field_.q(); }
    const Field& field() const { return field_; }
    std::size_t num_points() const { return pts_.size(); }
    const Point& point(std::uint32_t i) const { return pts_[i]; }
    const std::vector<Point>& points() const { return pts_; }

    /// Index of the projective point spanned by a nonzero vector.
    std::uint32_t index_of(std::span<const std::uint16_t> coords) const;

    /// GF(2) only: coordinates packed into a word, bit j = coords[j].
    std::uint64_t mask(std::uint32_t i) const { return masks_[i]; }

private:
    int n_;
    Field field_;
    std::vector<Point> pts_;
    std::vector<std::uint64_t> masks_;
    std::vector<std::uint32_t> lookup_;  // keyed by base-q coordinate encoding
};

/// Rank of the linear span of a set of points, by elimination over GF(q).
int rank_of(const Geometry& geo, std::span<const std::uint32_t> pts);

/// RREF basis of the span of a nonempty point set.
Flat closure(const Geometry& geo, std::span<const std::uint32_t> pts);

/// All canonical points inside a flat, ordered by the lexicographic
/// enumeration of canonical coefficient vectors over the flat's basis.
/// Size (q^d - 1)/(q - 1).
std::vector<std::uint32_t> flat_points(const Geometry& geo, const Flat& f);

/// Streams every rank-d flat of PG(n-1,q) exactly once, by RREF pivot
/// profile and free-entry filling.  The Flat reference passed to the
/// callback is reused between calls; copy it if you keep it.
void for_each_flat(int n, int q, int d, const std::function<void(const Flat&)>& fn);

/// Same stream restricted to one pivot profile (strictly increasing column
/// indices).  Profiles partition the stream, which census consumers use to
/// split work across threads.
void for_each_flat_in_profile(int n, int q, const std::vector<int>& pivots,
                              const std::function<void(const Flat&)>& fn);

/// All strictly increasing d-subsets of {0..n-1}, in lexicographic order.
std::vector<std::vector<int>> pivot_profiles(int n, int d);

std::vector<Flat> enumerate_flats(const Geometry& geo, int d);

/// Exact q-binomial coefficient, via the recurrence
/// qbinom(n,d) = qbinom(n-1,d-1) + q^d * qbinom(n-1,d).
BigInt qbinom(int n, int d, int q);

/// Number of points of a rank-d flat, (q^d - 1)/(q - 1).
BigInt flat_size(int d, int q);

/// Enumerates canonical vectors (first nonzero entry 1) of length n over
/// GF(q) in lexicographic order; used for both point tables and the
/// in-flat combination order.
void for_each_canonical_vector(int n, int q,
                               const std::function<void(const std::vector<std::uint16_t>&)>& fn);

}  // namespace pgd
