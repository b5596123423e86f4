#include "pgd/projgeom.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "pgd/guards.hpp"
#include "pgd/linalg.hpp"

namespace pgd {

bool RowBasis::reduce(std::vector<std::uint16_t>& v) const {
    bool zero = true;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        int c = v[pivots_[i]];
        if (c == 0) continue;
        for (int j = 0; j < n_; ++j)
            v[j] = static_cast<std::uint16_t>(f_->sub(v[j], f_->mul(c, rows_[i][j])));
    }
    for (int j = 0; j < n_; ++j)
        if (v[j] != 0) {
            zero = false;
            break;
        }
    return zero;
}

bool RowBasis::contains(std::span<const std::uint16_t> v) const {
    std::vector<std::uint16_t> w(v.begin(), v.end());
    return reduce(w);
}

bool RowBasis::add(std::span<const std::uint16_t> v) {
    std::vector<std::uint16_t> w(v.begin(), v.end());
    if (reduce(w)) return false;
    int piv = 0;
    while (w[piv] == 0) ++piv;
    // normalize pivot to 1
    int s = f_->inv(w[piv]);
    for (int j = 0; j < n_; ++j) w[j] = static_cast<std::uint16_t>(f_->mul(s, w[j]));
    // clear the new pivot column in existing rows
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        int c = rows_[i][piv];
        if (c == 0) continue;
        for (int j = 0; j < n_; ++j)
            rows_[i][j] = static_cast<std::uint16_t>(f_->sub(rows_[i][j], f_->mul(c, w[j])));
    }
    // insert keeping pivots increasing
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(w));
    pivots_.insert(pivots_.begin() + pos, piv);
    return true;
}

void for_each_canonical_vector(int n, int q,
                               const std::function<void(const std::vector<std::uint16_t>&)>& fn) {
    std::vector<std::uint16_t> v(n, 0);
    // lexicographic odometer, coords[0] most significant
    while (true) {
        bool canonical = false;
        for (int j = 0; j < n; ++j) {
            if (v[j] != 0) {
                canonical = (v[j] == 1);
                break;
            }
        }
        if (canonical) fn(v);
        int j = n - 1;
        while (j >= 0 && v[j] == q - 1) v[j--] = 0;
        if (j < 0) break;
        ++v[j];
    }
}

namespace {

std::uint64_t encode(std::span<const std::uint16_t> v, int q) {
    std::uint64_t r = 0;
    for (std::uint16_t c : v) r = r * q + c;
    return r;
}

}  // namespace

Geometry::Geometry(int n, Field field) : n_(n), field_(std::move(field)) {
    if (n < 1) throw std::invalid_argument("geometry rank must be >= 1");
    const int q = field_.q();
    BigInt npts = flat_size(n, q);
    if (npts > BigInt(max_enum_flats()))
        throw std::invalid_argument("point table too large (PGD_MAX_ENUM_FLATS)");

    std::uint64_t enc_space = 1;
    for (int i = 0; i < n; ++i) enc_space *= q;
    lookup_.assign(enc_space, UINT32_MAX);

    std::uint32_t idx = 0;
    for_each_canonical_vector(n, q, [&](const std::vector<std::uint16_t>& v) {
        Point pt;
        pt.coords = v;
        pt.index = idx;
        lookup_[encode(v, q)] = idx;
        if (q == 2) {
            std::uint64_t m = 0;
            for (int j = 0; j < n; ++j)
                if (v[j]) m |= std::uint64_t{1} << j;
            masks_.push_back(m);
        }
        pts_.push_back(std::move(pt));
        ++idx;
    });
}

std::uint32_t Geometry::index_of(std::span<const std::uint16_t> coords) const {
    int first = -1;
    for (int j = 0; j < n_; ++j)
        if (coords[j] != 0) {
            first = j;
            break;
        }
    if (first < 0) throw std::invalid_argument("zero vector is not a projective point");
    if (coords[first] == 1) return lookup_[encode(coords, field_.q())];
    int s = field_.inv(coords[first]);
    std::vector<std::uint16_t> w(coords.begin(), coords.end());
    for (int j = first; j < n_; ++j) w[j] = static_cast<std::uint16_t>(field_.mul(s, w[j]));
    return lookup_[encode(w, field_.q())];
}

int rank_of(const Geometry& geo, std::span<const std::uint32_t> pts) {
    if (geo.q() == 2) {
        MaskBasis b;
        for (std::uint32_t i : pts) b.add(geo.mask(i));
        return b.rank();
    }
    RowBasis b(geo.field(), geo.n());
    for (std::uint32_t i : pts) b.add(geo.point(i).coords);
    return b.rank();
}

Flat closure(const Geometry& geo, std::span<const std::uint32_t> pts) {
    if (pts.empty()) throw std::invalid_argument("closure of the empty set");
    RowBasis b(geo.field(), geo.n());
    for (std::uint32_t i : pts) b.add(geo.point(i).coords);
    Flat f;
    f.d = b.rank();
    f.rows = b.rows();
    return f;
}

std::vector<std::uint32_t> flat_points(const Geometry& geo, const Flat& f) {
    const Field& fld = geo.field();
    std::vector<std::uint32_t> out;
    std::vector<std::uint16_t> v(geo.n());
    for_each_canonical_vector(f.d, geo.q(), [&](const std::vector<std::uint16_t>& lambda) {
        std::fill(v.begin(), v.end(), 0);
        for (int i = 0; i < f.d; ++i) {
            if (lambda[i] == 0) continue;
            for (int j = 0; j < geo.n(); ++j)
                v[j] = static_cast<std::uint16_t>(fld.add(v[j], fld.mul(lambda[i], f.rows[i][j])));
        }
        out.push_back(geo.index_of(v));
    });
    return out;
}

std::vector<std::vector<int>> pivot_profiles(int n, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(d);
    for (int i = 0; i < d; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = d - 1;
        while (i >= 0 && cur[i] == n - d + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < d; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

void for_each_flat_in_profile(int n, int q, const std::vector<int>& pivots,
                              const std::function<void(const Flat&)>& fn) {
    const int d = static_cast<int>(pivots.size());
    Flat f;
    f.d = d;
    f.rows.assign(d, std::vector<std::uint16_t>(n, 0));
    std::vector<bool> is_pivot(n, false);
    for (int i = 0; i < d; ++i) {
        f.rows[i][pivots[i]] = 1;
        is_pivot[pivots[i]] = true;
    }
    std::vector<std::pair<int, int>> free_cells;
    for (int i = 0; i < d; ++i)
        for (int j = pivots[i] + 1; j < n; ++j)
            if (!is_pivot[j]) free_cells.emplace_back(i, j);

    const std::size_t nf = free_cells.size();
    while (true) {
        fn(f);
        std::size_t c = 0;
        while (c < nf) {
            auto [i, j] = free_cells[c];
            if (f.rows[i][j] == q - 1) {
                f.rows[i][j] = 0;
                ++c;
            } else {
                ++f.rows[i][j];
                break;
            }
        }
        if (c == nf) break;
    }
}

void for_each_flat(int n, int q, int d, const std::function<void(const Flat&)>& fn) {
    if (d < 1 || d > n) throw std::invalid_argument("flat rank out of range");
    for (const auto& prof : pivot_profiles(n, d)) for_each_flat_in_profile(n, q, prof, fn);
}

std::vector<Flat> enumerate_flats(const Geometry& geo, int d) {
    if (qbinom(geo.n(), d, geo.q()) > BigInt(max_enum_flats()))
        throw std::invalid_argument("flat enumeration too large (PGD_MAX_ENUM_FLATS)");
    std::vector<Flat> out;
    for_each_flat(geo.n(), geo.q(), d, [&](const Flat& f) { out.push_back(f); });
    return out;
}

BigInt qbinom(int n, int d, int q) {
    if (q < 2) throw std::invalid_argument("qbinom requires q >= 2");
    if (d < 0 || d > n) throw std::invalid_argument("qbinom requires 0 <= d <= n");
    // recurrence over n, integers throughout
    std::vector<BigInt> qpow(d + 1);
    qpow[0] = 1;
    for (int j = 1; j <= d; ++j) qpow[j] = qpow[j - 1] * q;
    std::vector<BigInt> row(d + 1, 0);
    row[0] = 1;
    for (int m = 1; m <= n; ++m) {
        for (int j = std::min(m, d); j >= 1; --j) row[j] = row[j - 1] + qpow[j] * row[j];
    }
    return row[d];
}

BigInt flat_size(int d, int q) {
    BigInt r = 0, p = 1;
    for (int i = 0; i < d; ++i) {
        r += p;
        p *= q;
    }
    return r;
}

}  // namespace pgd
