#include <doctest.h>

#include "pgd/gf.hpp"

using pgd::Field;

namespace {

void check_field_laws(int p, int e) {
    Field f = Field::make(p, e);
    const int q = f.q();
    REQUIRE(q > 1);
    for (int a = 0; a < q; ++a) {
        CHECK(f.add(a, 0) == a);
        CHECK(f.mul(a, 1) == a);
        CHECK(f.mul(a, 0) == 0);
        CHECK(f.add(a, f.neg(a)) == 0);
        CHECK(f.pow(a, q) == a);  // x^q = x holds exactly in GF(q)
        if (a != 0) {
            CHECK(f.mul(a, f.inv(a)) == 1);
            CHECK(f.pow(a, q - 1) == 1);
        }
    }
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            CHECK(f.add(a, b) == f.add(b, a));
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.sub(a, b) == f.add(a, f.neg(b)));
            if (a != 0 && b != 0) CHECK(f.mul(a, b) != 0);
            for (int c = 0; c < q; ++c) {
                CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
}

}  // namespace

TEST_CASE("prime field laws") {
    check_field_laws(2, 1);
    check_field_laws(3, 1);
    check_field_laws(5, 1);
    check_field_laws(7, 1);
    check_field_laws(11, 1);
}

TEST_CASE("extension field laws") {
    check_field_laws(2, 2);
    check_field_laws(2, 3);
    check_field_laws(2, 4);
    check_field_laws(3, 2);
    check_field_laws(3, 3);
    check_field_laws(5, 2);
}

TEST_CASE("canonical moduli") {
    // coefficients c_0..c_e, constant term first
    CHECK(Field::make(2, 1).modulus() == std::vector<int>{0, 1});
    CHECK(Field::make(2, 2).modulus() == std::vector<int>{1, 1, 1});     // x^2+x+1
    CHECK(Field::make(2, 3).modulus() == std::vector<int>{1, 1, 0, 1});  // x^3+x+1
    CHECK(Field::make(2, 4).modulus() == std::vector<int>{1, 1, 0, 0, 1});  // x^4+x+1
    CHECK(Field::make(3, 2).modulus() == std::vector<int>{1, 0, 1});     // x^2+1
    CHECK(Field::make(3, 3).modulus() == std::vector<int>{1, 2, 0, 1});  // x^3+2x+1
}

TEST_CASE("GF(4) multiplication table") {
    // elements 0,1,w,w+1 encoded 0,1,2,3 with w^2 = w+1
    Field f = Field::make(2, 2);
    CHECK(f.mul(2, 2) == 3);
    CHECK(f.mul(2, 3) == 1);
    CHECK(f.mul(3, 3) == 2);
    CHECK(f.inv(2) == 3);
}

TEST_CASE("GF(9) sample products") {
    // modulus x^2+1, so w^2 = -1 = 2; elements a+bw encoded a+3b
    Field f = Field::make(3, 2);
    CHECK(f.mul(3, 3) == 2);  // w*w = 2
    CHECK(f.add(4, 8) == 0);  // (1+w)+(2+2w) = 0
    CHECK(f.mul(4, 4) == 6);  // (1+w)^2 = 1+2w+w^2 = 2w
}

TEST_CASE("characteristic addition") {
    Field f8 = Field::make(2, 3);
    for (int a = 0; a < 8; ++a) CHECK(f8.add(a, a) == 0);
    Field f9 = Field::make(3, 2);
    for (int a = 0; a < 9; ++a) CHECK(f9.add(f9.add(a, a), a) == 0);
}

TEST_CASE("primality helper") {
    CHECK(pgd::is_prime(2));
    CHECK(pgd::is_prime(3));
    CHECK(pgd::is_prime(31));
    CHECK(!pgd::is_prime(1));
    CHECK(!pgd::is_prime(4));
    CHECK(!pgd::is_prime(9));
    CHECK(!pgd::is_prime(91));
}
