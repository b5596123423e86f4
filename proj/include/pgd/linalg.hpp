#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pgd/gf.hpp"

namespace pgd {

/// Incremental fully-reduced row basis over GF(q).  Rows are kept in RREF:
/// pivots strictly increasing, pivot entries 1, pivot columns cleared in all
/// other rows.
class RowBasis {
public:
    RowBasis(const Field& f, int n) : f_(&f), n_(n) {}

    int rank() const { return static_cast<int>(rows_.size()); }

    /// Reduces v against the basis in place.  Returns true if v vanished
    /// (v was in the span).
    bool reduce(std::vector<std::uint16_t>& v) const;

    bool contains(std::span<const std::uint16_t> v) const;

    /// Adds v to the basis; returns true if the rank grew.
    bool add(std::span<const std::uint16_t> v);

    const std::vector<std::vector<std::uint16_t>>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

private:
    const Field* f_;
    int n_;
    std::vector<std::vector<std::uint16_t>> rows_;
    std::vector<int> pivots_;
};

/// GF(2) specialization: rows are packed words, bit j = coordinate j.
class MaskBasis {
public:
    int rank() const { return rank_; }

    std::uint64_t reduce(std::uint64_t v) const {
        for (std::uint64_t r : rows_)
            if (v & (r & (~r + 1))) v ^= r;  // r's lowest set bit is its pivot
        return v;
    }

    bool contains(std::uint64_t v) const { return reduce(v) == 0; }

    bool add(std::uint64_t v) {
        v = reduce(v);
        if (v == 0) return false;
        rows_.push_back(v);
        ++rank_;
        return true;
    }

private:
    std::vector<std::uint64_t> rows_;
    int rank_ = 0;
};

}  // namespace pgd
