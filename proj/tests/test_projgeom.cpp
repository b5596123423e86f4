#include <doctest.h>

#include <set>

#include "pgd/projgeom.hpp"
#include "pgd/randmodel.hpp"

using namespace pgd;

namespace {

// independent oracle: product formula prod_j (q^(n-j)-1)/(q^(d-j)-1)
BigInt qbinom_product(int n, int d, int q) {
    BigInt num = 1, den = 1;
    for (int j = 0; j < d; ++j) {
        num *= pow(BigInt(q), n - j) - 1;
        den *= pow(BigInt(q), d - j) - 1;
    }
    return num / den;
}

}  // namespace

TEST_CASE("point tables") {
    Geometry fano(3, field_from_order(2));
    REQUIRE(fano.num_points() == 7);
    CHECK(fano.point(0).coords == std::vector<std::uint16_t>{0, 0, 1});
    CHECK(fano.point(3).coords == std::vector<std::uint16_t>{1, 0, 0});
    CHECK(fano.point(6).coords == std::vector<std::uint16_t>{1, 1, 1});

    Geometry g33(3, field_from_order(3));
    CHECK(g33.num_points() == 13);
    Geometry g25(2, field_from_order(5));
    CHECK(g25.num_points() == 6);
    Geometry g34(3, field_from_order(4));
    CHECK(g34.num_points() == 21);
}

TEST_CASE("index_of normalizes scalar multiples") {
    Geometry g(3, field_from_order(3));
    std::vector<std::uint16_t> v{2, 1, 0};
    std::vector<std::uint16_t> canon{1, 2, 0};  // (2,1,0) * inv(2)
    CHECK(g.index_of(v) == g.index_of(canon));
    CHECK(g.point(g.index_of(v)).coords == canon);

    Geometry f(3, field_from_order(2));
    for (std::uint32_t i = 0; i < f.num_points(); ++i)
        CHECK(f.index_of(f.point(i).coords) == i);
}

TEST_CASE("rank and closure") {
    Geometry fano(3, field_from_order(2));
    std::uint32_t e3 = fano.index_of(std::vector<std::uint16_t>{0, 0, 1});
    std::uint32_t e2 = fano.index_of(std::vector<std::uint16_t>{0, 1, 0});
    std::uint32_t e23 = fano.index_of(std::vector<std::uint16_t>{0, 1, 1});
    std::uint32_t e1 = fano.index_of(std::vector<std::uint16_t>{1, 0, 0});

    CHECK(rank_of(fano, std::vector<std::uint32_t>{e3}) == 1);
    CHECK(rank_of(fano, std::vector<std::uint32_t>{e3, e2, e23}) == 2);
    CHECK(rank_of(fano, std::vector<std::uint32_t>{e3, e2, e1}) == 3);

    Flat line = closure(fano, std::vector<std::uint32_t>{e2, e23});
    CHECK(line.d == 2);
    CHECK(line.rows == std::vector<std::vector<std::uint16_t>>{{0, 1, 0}, {0, 0, 1}});
    auto pts = flat_points(fano, line);
    CHECK(pts == std::vector<std::uint32_t>{e3, e2, e23});
}

TEST_CASE("flat_points of the whole geometry is the identity") {
    for (int q : {2, 3, 4}) {
        Geometry g(3, field_from_order(q));
        std::vector<std::uint32_t> all(g.num_points());
        for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
        Flat top = closure(g, all);
        REQUIRE(top.d == 3);
        CHECK(flat_points(g, top) == all);
    }
}

TEST_CASE("qbinom matches the product formula") {
    for (int q : {2, 3, 4, 5}) {
        for (int n = 0; n <= 12; ++n)
            for (int d = 0; d <= n; ++d) CHECK(qbinom(n, d, q) == qbinom_product(n, d, q));
    }
    CHECK(qbinom(4, 2, 2) == 35);
    CHECK(qbinom(10, 3, 2) == 6347715);
    CHECK(qbinom(5, 2, 3) == 1210);
}

TEST_CASE("qbinom edges and symmetry") {
    CHECK(qbinom(7, 0, 3) == 1);
    CHECK(qbinom(7, 7, 3) == 1);
    CHECK_THROWS(qbinom(3, 4, 2));
    CHECK_THROWS(qbinom(3, -1, 2));
    CHECK_THROWS(qbinom(3, 1, 1));
    for (int n = 0; n <= 10; ++n)
        for (int d = 0; d <= n; ++d) CHECK(qbinom(n, d, 2) == qbinom(n, n - d, 2));
}

TEST_CASE("qbinom power bounds") {
    for (int q : {2, 3, 5}) {
        for (int n = 1; n <= 20; ++n)
            for (int d = 1; d < n; ++d) {
                BigInt v = qbinom(n, d, q);
                CHECK(pow(BigInt(q), d * (n - d)) <= v);
                CHECK(v <= pow(BigInt(q), d * (n - d + 1)));
            }
    }
}

TEST_CASE("flat enumeration counts and uniqueness") {
    for (int n = 2; n <= 6; ++n) {
        Geometry g(n, field_from_order(2));
        for (int d = 1; d <= n; ++d) {
            auto flats = enumerate_flats(g, d);
            CHECK(BigInt(flats.size()) == qbinom(n, d, 2));
            std::set<std::vector<std::vector<std::uint16_t>>> seen;
            for (const auto& f : flats) {
                CHECK(f.d == d);
                seen.insert(f.rows);
            }
            CHECK(seen.size() == flats.size());
        }
    }
    Geometry g3(4, field_from_order(3));
    CHECK(BigInt(enumerate_flats(g3, 2).size()) == qbinom(4, 2, 3));
}

TEST_CASE("profiles partition the flat stream") {
    int n = 5, q = 2, d = 3;
    auto profiles = pivot_profiles(n, d);
    CHECK(profiles.size() == 10);  // C(5,3)
    std::set<std::vector<std::vector<std::uint16_t>>> seen;
    std::size_t total = 0;
    for (const auto& prof : profiles)
        for_each_flat_in_profile(n, q, prof, [&](const Flat& f) {
            ++total;
            seen.insert(f.rows);
        });
    CHECK(BigInt(total) == qbinom(n, d, q));
    CHECK(seen.size() == total);
}

TEST_CASE("every flat's points have the right span") {
    Geometry g(4, field_from_order(3));
    for_each_flat(4, 3, 2, [&](const Flat& f) {
        auto pts = flat_points(g, f);
        REQUIRE(BigInt(pts.size()) == flat_size(2, 3));
        CHECK(rank_of(g, pts) == 2);
        CHECK(closure(g, pts).rows == f.rows);
    });
}

TEST_CASE("flat_size") {
    CHECK(flat_size(3, 2) == 7);
    CHECK(flat_size(2, 9) == 10);
    CHECK(flat_size(1, 7) == 1);
    CHECK(flat_size(0, 2) == 0);
}
